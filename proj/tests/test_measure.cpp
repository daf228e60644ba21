#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fva/errors.hpp"
#include "fva/measure.hpp"

using namespace fva;

namespace {

MarketRates flat_market(double r, double r_x) { return {TermCurve::flat(r), TermCurve::flat(r_x)}; }

CreditCurve investor(double lambda) { return CreditCurve(Name::Investor, TermCurve::flat(lambda)); }

JointDefaultModel flat_model(double lambda_I, double lambda_C, double theta) {
    return JointDefaultModel(investor(lambda_I), CreditCurve(Name::Counterparty, TermCurve::flat(lambda_C)), theta);
}

}  // namespace

TEST(MeasureTest, FundingRate) {
    const auto market = flat_market(0.01, 0.005);
    EXPECT_NEAR(funding_rate(market, investor(0.02), 0.4).value_at(3.0), 0.022, 1e-17);
    EXPECT_EQ(funding_rate(market, investor(0.0), 0.4), market.risk_free);
    EXPECT_EQ(funding_rate(market, investor(0.02), 1.0).value_at(2.0), 0.01);
    EXPECT_THROW(funding_rate(market, investor(0.02), 1.2), DomainError);
    EXPECT_THROW(funding_rate(market, investor(0.02), -0.1), DomainError);
}

TEST(MeasureTest, FundingRateOnUnionGrid) {
    const MarketRates market{TermCurve({{0.0, 0.01}, {2.0, 0.015}}), TermCurve::flat(0.0)};
    const CreditCurve inv(Name::Investor, TermCurve({{0.0, 0.02}, {1.0, 0.03}}));
    const auto rf = funding_rate(market, inv, 0.5);
    EXPECT_EQ(rf.nodes().size(), 3u);
    EXPECT_DOUBLE_EQ(rf.value_at(0.5), 0.02);
    EXPECT_DOUBLE_EQ(rf.value_at(1.5), 0.025);
    EXPECT_DOUBLE_EQ(rf.value_at(2.5), 0.03);
}

TEST(MeasureTest, InternalRateExamples) {
    const auto market = flat_market(0.01, 0.005);
    const auto inv = investor(0.02);
    EXPECT_NEAR(internal_rate(market, inv, 0.4, TermCurve::flat(0.02)).value_at(1.0), 0.01, 1e-17);
    EXPECT_NEAR(internal_rate(market, inv, 0.4, TermCurve::flat(0.0)).value_at(1.0), 0.022, 1e-17);
    EXPECT_NEAR(internal_rate(market, inv, 0.4, TermCurve::flat(0.01)).value_at(1.0), 0.016, 1e-17);
    EXPECT_THROW(internal_rate(market, inv, 0.4, TermCurve::flat(-0.01)), DomainError);
}

TEST(MeasureTest, BondPriceExamples) {
    EXPECT_EQ(bond_price(flat_market(0.0, 0.0), investor(0.0), 0.4, 3.0), 1.0);
    EXPECT_NEAR(bond_price(flat_market(0.01, 0.0), investor(0.02), 0.4, 1.0), std::exp(-0.022), 1e-16);
    EXPECT_THROW(bond_price(flat_market(0.01, 0.0), investor(0.02), 0.4, 0.0), DomainError);
}

TEST(MeasureProperty, BondPriceInvariantAcrossCompletions) {
    const MarketRates market{TermCurve({{0.0, 0.01}, {3.0, 0.02}}), TermCurve::flat(0.005)};
    const CreditCurve inv(Name::Investor, TermCurve({{0.0, 0.02}, {4.0, 0.035}}));
    for (double R : {0.0, 0.4, 1.0}) {
        for (double scale : {0.0, 0.25, 0.5, 1.0, 2.0}) {
            const TermCurve lambda_bar = scale * inv.intensity();
            const auto r_bar = internal_rate(market, inv, R, lambda_bar);
            for (double T : {0.5, 1.0, 5.0, 10.0}) {
                const double ref = bond_price(market, inv, R, T);
                EXPECT_NEAR(bond_price_internal(r_bar, lambda_bar, R, T), ref, 1e-12 * ref);
            }
        }
    }
}

TEST(MeasureTest, PreDefaultRate) {
    const auto market = flat_market(0.01, 0.0);
    const auto ind = pre_default_rate(market, flat_model(0.02, 0.03, 0.0));
    EXPECT_NEAR(ind(2.0), 0.03, 1e-17);

    // 0.01 + 2 * 0.02 e^0.1 / (2 e^0.1 - 1) - 0.02
    const auto corr = pre_default_rate(market, flat_model(0.02, 0.02, 1.0));
    EXPECT_NEAR(corr(5.0), 0.0265242573648424711291, 1e-16);
}

TEST(MeasureTest, PreDefaultRateIsLogSlopeOfSurvivingBranch) {
    const MarketRates market{TermCurve({{0.0, 0.01}, {2.0, 0.02}}), TermCurve::flat(0.0)};
    for (double theta : {0.0, 0.5, 2.0}) {
        const JointDefaultModel m(CreditCurve(Name::Investor, TermCurve({{0.0, 0.02}, {3.0, 0.04}})),
                                  CreditCurve(Name::Counterparty, TermCurve::flat(0.03)), theta);
        const auto rate = pre_default_rate(market, m);
        const double h = 1e-5;
        for (double t : {0.5, 1.5, 2.5, 4.0}) {
            const double fd = -(std::log(conditional_discount(market, m, t + h, std::nullopt)) -
                                std::log(conditional_discount(market, m, t - h, std::nullopt))) /
                              (2 * h);
            EXPECT_NEAR(rate(t), fd, 1e-6);
            EXPECT_NEAR(rate.integrated(0.0, t), -std::log(conditional_discount(market, m, t, std::nullopt)), 1e-14);
        }
    }
}

TEST(MeasureTest, ConditionalDiscountIndependentIsDeterministic) {
    const auto market = flat_market(0.01, 0.0);
    const auto m = flat_model(0.02, 0.02, 0.0);
    const double expected = std::exp(-0.01) * std::exp(-0.02);
    double lo = INFINITY, hi = -INFINITY;
    for (double tC : {0.0, 0.1, 0.5, 0.99, 1.0, 3.0}) {
        const double d = conditional_discount(market, m, 1.0, tC);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
        EXPECT_NEAR(d, expected, 1e-15);
    }
    EXPECT_NEAR(conditional_discount(market, m, 1.0, std::nullopt), expected, 1e-15);
    EXPECT_LE(hi - lo, 1e-12);
}

TEST(MeasureTest, ConditionalDiscountClaytonValue) {
    const auto market = flat_market(0.01, 0.0);
    const auto m = flat_model(0.02, 0.02, 1.0);
    // e^-0.01 * S^-2 v^-2, S = e^0.02 + e^0.01 - 1, v = e^-0.01
    EXPECT_NEAR(conditional_discount(market, m, 1.0, 0.5), 0.951604370102705869181, 1e-15);
    // Same value by differentiating the joint survival numerically.
    const double h = 1e-5;
    const double fd = (joint_survival(m, 1.0, 0.5 + h) - joint_survival(m, 1.0, 0.5 - h)) / (2 * h);
    EXPECT_NEAR(conditional_discount(market, m, 1.0, 0.5),
                std::exp(-0.01) * fd / (-0.02 * survival(m.counterparty(), 0.5)), 1e-9);
}

TEST(MeasureTest, ConditionalDiscountBranchAtMaturity) {
    const auto market = flat_market(0.01, 0.0);
    const auto m = flat_model(0.02, 0.03, 2.0);
    EXPECT_EQ(conditional_discount(market, m, 1.0, 1.0), conditional_discount(market, m, 1.0, std::nullopt));
    EXPECT_EQ(conditional_discount(market, m, 1.0, 7.0), conditional_discount(market, m, 1.0, std::nullopt));
    EXPECT_GT(conditional_discount(market, m, 1.0, 0.2), 0.0);
}

TEST(MeasureTest, ConditionalDiscountSingularWhereCounterpartyIsRiskless) {
    const auto market = flat_market(0.01, 0.0);
    const JointDefaultModel m(investor(0.02), CreditCurve(Name::Counterparty, TermCurve({{0.0, 0.0}, {1.0, 0.02}})),
                              1.0);
    EXPECT_THROW(conditional_discount(market, m, 2.0, 0.5), NumericError);
    EXPECT_NO_THROW(conditional_discount(market, m, 2.0, 1.5));
}

TEST(MeasureProperty, ConditionalDiscountExpectationRepricesBond) {
    const auto market = flat_market(0.01, 0.0);
    for (double theta : {0.0, 0.5, 1.0, 3.0}) {
        const auto m = flat_model(0.02, 0.02, theta);
        const double expected = std::exp(-0.01) * survival(m.investor(), 1.0);
        EXPECT_NEAR(expected_conditional_discount(market, m, 1.0), expected, 1e-8) << theta;
    }
}

TEST(MeasureTest, ContingentBondRepricing) {
    const auto market = flat_market(0.01, 0.0);
    const auto plain = reprice_contingent_bond(market, flat_model(0.02, 0.02, 1.0), {1.0, 0.0, 0.0});
    EXPECT_NEAR(plain.external, std::exp(-0.01 - 0.02), 1e-15);
    EXPECT_NEAR(plain.internal, plain.external, 1e-8);

    const auto ind = reprice_contingent_bond(market, flat_model(0.02, 0.03, 0.0), {2.0, 0.5, 0.0});
    EXPECT_NEAR(ind.external, std::exp(-0.02) * std::exp(-0.04) * std::exp(-0.015), 1e-15);

    // D(0,1) / (e^0.02 + e^0.01 - 1)
    const auto clayton = reprice_contingent_bond(market, flat_model(0.02, 0.02, 1.0), {1.0, 0.5, 0.0});
    EXPECT_NEAR(clayton.external, 0.960978777430288748708, 1e-15);
    EXPECT_NEAR(clayton.internal, clayton.external, 1e-8);

    EXPECT_THROW(reprice_contingent_bond(market, flat_model(0.02, 0.02, 1.0), {1.0, 0.5, 0.4}), DomainError);
    EXPECT_THROW(reprice_contingent_bond(market, flat_model(0.02, 0.02, 1.0), {1.0, 1.0, 0.0}), DomainError);
}

TEST(MeasureTest, ContingentBondWithSteppedCurves) {
    const MarketRates market{TermCurve({{0.0, 0.01}, {0.8, 0.02}}), TermCurve::flat(0.0)};
    const JointDefaultModel m(CreditCurve(Name::Investor, TermCurve({{0.0, 0.02}, {1.3, 0.05}})),
                              CreditCurve(Name::Counterparty, TermCurve({{0.0, 0.03}, {0.6, 0.01}, {1.1, 0.04}})), 2.0);
    for (double T_C : {0.0, 0.3, 1.2}) EXPECT_NO_THROW(reprice_contingent_bond(market, m, {2.0, T_C, 0.0}));
}

TEST(InternalMeasureTest, RiskFreeCounterpartyMode) {
    const auto market = flat_market(0.01, 0.005);
    const CreditCurve inv(Name::Investor, TermCurve({{0.0, 0.02}, {2.0, 0.03}}));
    const TermCurve lambda_bar({{0.0, 0.01}, {1.0, 0.0}});
    const auto q = InternalMeasure::riskfree_counterparty(market, inv, 0.4, lambda_bar);
    EXPECT_FALSE(q.is_correlated());
    for (double t : {0.0, 0.5, 1.5, 3.0}) {
        EXPECT_NEAR(q.short_rate(t) + 0.6 * lambda_bar.value_at(t), 0.01 + 0.6 * inv.intensity().value_at(t), 1e-16);
        EXPECT_EQ(q.counterparty_survival(t), 1.0);
    }
}

TEST(InternalMeasureTest, CorrelatedMode) {
    const auto market = flat_market(0.01, 0.005);
    const auto m = flat_model(0.02, 0.03, 1.0);
    const auto q = InternalMeasure::correlated_zero_recovery(market, m);
    EXPECT_TRUE(q.is_correlated());
    EXPECT_TRUE(q.investor_intensity().is_zero());
    for (double t : {0.0, 1.0, 4.0}) {
        EXPECT_EQ(q.counterparty_survival(t), survival(m.counterparty(), t));
        EXPECT_DOUBLE_EQ(q.short_rate(t), pre_default_rate(market, m)(t));
    }
    const auto indep = InternalMeasure::independent_defaults(market, investor(0.02), m.counterparty(), 0.4,
                                                             TermCurve::flat(0.0));
    EXPECT_EQ(indep.counterparty_survival(2.0), survival(m.counterparty(), 2.0));
}
