#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fva/curves.hpp"
#include "fva/errors.hpp"

using namespace fva;

namespace {

TermCurve random_curve(std::mt19937_64& rng, bool non_negative) {
    std::uniform_int_distribution<int> count(1, 6);
    std::uniform_real_distribution<double> gap(0.05, 3.0);
    std::uniform_real_distribution<double> value(non_negative ? 0.0 : -0.05, 0.1);
    std::vector<CurveNode> nodes{{0.0, value(rng)}};
    const int n = count(rng);
    for (int i = 1; i < n; ++i) nodes.push_back({nodes.back().time + gap(rng), value(rng)});
    return TermCurve(std::move(nodes));
}

}  // namespace

TEST(TermCurveTest, FlatIntegratedRate) {
    EXPECT_DOUBLE_EQ(integrated_rate(TermCurve::flat(0.02), 0.0, 1.0), 0.02);
}

TEST(TermCurveTest, EmptyIntervalIsZero) {
    const TermCurve c({{0.0, 0.01}, {0.5, 0.03}});
    for (double t : {0.0, 0.25, 0.5, 7.0}) EXPECT_EQ(integrated_rate(c, t, t), 0.0);
}

TEST(TermCurveTest, TwoSegmentIntegratedRate) {
    const TermCurve c({{0.0, 0.01}, {0.5, 0.03}});
    EXPECT_NEAR(integrated_rate(c, 0.0, 1.0), 0.005 + 0.015, 1e-16);
}

TEST(TermCurveTest, RightContinuousWithFlatExtrapolation) {
    const TermCurve c({{0.0, 0.01}, {0.5, 0.03}});
    EXPECT_EQ(c.value_at(0.0), 0.01);
    EXPECT_EQ(c.value_at(0.5), 0.03);
    EXPECT_EQ(c.value_before(0.5), 0.01);
    EXPECT_EQ(c.value_at(100.0), 0.03);
}

TEST(TermCurveTest, RejectsBadIntervals) {
    const auto c = TermCurve::flat(0.01);
    EXPECT_THROW(integrated_rate(c, 1.0, 0.5), DomainError);
    EXPECT_THROW(integrated_rate(c, -0.1, 0.5), DomainError);
    EXPECT_THROW(discount_factor(c, 2.0, 1.0), DomainError);
    EXPECT_THROW(c.value_at(-1.0), DomainError);
}

TEST(TermCurveTest, RejectsMalformedNodes) {
    EXPECT_THROW(TermCurve(std::vector<CurveNode>{}), DomainError);
    EXPECT_THROW(TermCurve({{0.5, 0.01}}), DomainError);
    EXPECT_THROW(TermCurve({{0.0, 0.01}, {1.0, 0.02}, {1.0, 0.03}}), DomainError);
    EXPECT_THROW(TermCurve({{0.0, NAN}}), DomainError);
}

TEST(TermCurveTest, DiscountFactorExamples) {
    EXPECT_EQ(discount_factor(TermCurve::flat(0.0), 0.3, 9.0), 1.0);
    EXPECT_DOUBLE_EQ(discount_factor(TermCurve::flat(0.02), 0.0, 1.0), std::exp(-0.02));
    const TermCurve c({{0.0, 0.01}, {0.7, 0.04}, {1.6, 0.02}});
    EXPECT_NEAR(discount_factor(c, 0, 2), discount_factor(c, 0, 1) * discount_factor(c, 1, 2), 1e-15);
}

TEST(TermCurveTest, PointwiseArithmeticOnUnionGrid) {
    const TermCurve a({{0.0, 0.01}, {1.0, 0.02}});
    const TermCurve b({{0.0, 0.03}, {2.0, 0.05}});
    const TermCurve sum = a + 0.5 * b;
    ASSERT_EQ(sum.nodes().size(), 3u);
    EXPECT_DOUBLE_EQ(sum.value_at(0.5), 0.025);
    EXPECT_DOUBLE_EQ(sum.value_at(1.5), 0.035);
    EXPECT_DOUBLE_EQ(sum.value_at(3.0), 0.045);
    EXPECT_DOUBLE_EQ((a - a).value_at(1.5), 0.0);
}

TEST(TermCurveTest, InverseIntegratedRoundTrip) {
    const TermCurve c({{0.0, 0.02}, {1.0, 0.0}, {2.0, 0.05}});
    for (double t : {0.3, 1.0, 2.5, 10.0}) {
        EXPECT_NEAR(c.inverse_integrated(integrated_rate(c, 0, t)), t, 1e-12) << t;
    }
    EXPECT_EQ(TermCurve::flat(0.0).inverse_integrated(0.1), INFINITY);
    EXPECT_EQ(TermCurve({{0.0, 0.02}, {1.0, 0.0}}).inverse_integrated(0.5), INFINITY);
    EXPECT_THROW(TermCurve::flat(-0.01).inverse_integrated(0.1), DomainError);
}

TEST(TermCurveProperty, IntegralIsAdditive) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> time(0.0, 12.0);
    for (int trial = 0; trial < 500; ++trial) {
        const auto c = random_curve(rng, false);
        double t[3] = {time(rng), time(rng), time(rng)};
        std::sort(t, t + 3);
        const double whole = integrated_rate(c, t[0], t[2]);
        const double parts = integrated_rate(c, t[0], t[1]) + integrated_rate(c, t[1], t[2]);
        EXPECT_LE(std::abs(whole - parts), 1e-14 * std::max(1.0, std::abs(whole)));
    }
}

TEST(TermCurveProperty, DiscountPositiveAndNonIncreasing) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        const auto c = random_curve(rng, true);
        double prev = 1.0;
        for (double t = 0.0; t <= 15.0; t += 0.25) {
            const double d = discount_factor(c, 0.0, t);
            EXPECT_GT(d, 0.0);
            EXPECT_LE(d, prev);
            prev = d;
        }
    }
}

TEST(TermCurveProperty, NodePerturbationShiftsIntegralBySegmentLength) {
    std::mt19937_64 rng(13);
    const double delta = 1e-3;
    for (int trial = 0; trial < 200; ++trial) {
        const auto c = random_curve(rng, false);
        const auto nodes = c.nodes();
        const std::size_t k = rng() % nodes.size();
        std::vector<CurveNode> bumped(nodes.begin(), nodes.end());
        bumped[k].value += delta;
        const double end = nodes.back().time + 1.0;
        const double seg_end = k + 1 < nodes.size() ? nodes[k + 1].time : end;
        const double shift = integrated_rate(TermCurve(bumped), 0, end) - integrated_rate(c, 0, end);
        EXPECT_NEAR(shift, delta * (seg_end - nodes[k].time), 1e-14);
    }
}
