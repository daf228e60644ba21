#include "fva/curves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fva/errors.hpp"

namespace fva {

namespace {

template <typename Op>
TermCurve combine(const TermCurve& a, const TermCurve& b, Op op) {
    std::vector<double> times;
    for (const auto& n : a.nodes()) times.push_back(n.time);
    for (const auto& n : b.nodes()) times.push_back(n.time);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    std::vector<CurveNode> nodes;
    nodes.reserve(times.size());
    for (double t : times) nodes.push_back({t, op(a.value_at(t), b.value_at(t))});
    return TermCurve(std::move(nodes));
}

void check_interval(double t0, double t1) {
    if (!(t0 >= 0.0) || !(t1 >= t0)) {
        throw DomainError("invalid interval [" + std::to_string(t0) + ", " +
                          std::to_string(t1) + "]: need 0 <= t0 <= t1");
    }
}

}  // namespace

TermCurve::TermCurve() : nodes_{{0.0, 0.0}} {}

TermCurve::TermCurve(std::vector<CurveNode> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.empty()) throw DomainError("term curve needs at least one node");
    if (nodes_.front().time != 0.0) throw DomainError("first curve node must be at time 0");
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!std::isfinite(nodes_[i].value) || !std::isfinite(nodes_[i].time)) {
            throw DomainError("curve node " + std::to_string(i) + " is not finite");
        }
        if (i > 0 && !(nodes_[i].time > nodes_[i - 1].time)) {
            throw DomainError("curve node times must be strictly increasing");
        }
    }
}

TermCurve TermCurve::flat(double value) { return TermCurve({{0.0, value}}); }

std::size_t TermCurve::segment_index(double t) const {
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t,
                               [](double x, const CurveNode& n) { return x < n.time; });
    return static_cast<std::size_t>(std::distance(nodes_.begin(), it)) - 1;
}

double TermCurve::value_at(double t) const {
    detail::require_domain(t >= 0.0, "curve queried at negative time");
    return nodes_[segment_index(t)].value;
}

double TermCurve::value_before(double t) const {
    detail::require_domain(t >= 0.0, "curve queried at negative time");
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t,
                               [](const CurveNode& n, double x) { return n.time < x; });
    if (it == nodes_.begin()) return nodes_.front().value;
    return std::prev(it)->value;
}

std::vector<double> TermCurve::breakpoints(double t0, double t1) const {
    std::vector<double> out;
    for (const auto& n : nodes_) {
        if (n.time > t0 && n.time < t1) out.push_back(n.time);
    }
    return out;
}

bool TermCurve::is_zero() const {
    return std::all_of(nodes_.begin(), nodes_.end(), [](const CurveNode& n) { return n.value == 0.0; });
}

bool TermCurve::is_non_negative() const {
    return std::all_of(nodes_.begin(), nodes_.end(), [](const CurveNode& n) { return n.value >= 0.0; });
}

double TermCurve::inverse_integrated(double target) const {
    detail::require_domain(target >= 0.0, "inverse accumulation target must be non-negative");
    detail::require_domain(is_non_negative(), "inverse accumulation needs a non-negative curve");
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const double v = nodes_[i].value;
        const bool last = i + 1 == nodes_.size();
        const double len = last ? std::numeric_limits<double>::infinity()
                                : nodes_[i + 1].time - nodes_[i].time;
        if (v > 0.0) {
            const double need = target - acc;
            if (need <= v * len) return nodes_[i].time + need / v;
            acc += v * len;
        } else if (target == acc) {
            return nodes_[i].time;
        }
    }
    return std::numeric_limits<double>::infinity();
}

TermCurve operator+(const TermCurve& a, const TermCurve& b) {
    return combine(a, b, [](double x, double y) { return x + y; });
}

TermCurve operator-(const TermCurve& a, const TermCurve& b) {
    return combine(a, b, [](double x, double y) { return x - y; });
}

TermCurve operator*(double k, const TermCurve& c) {
    std::vector<CurveNode> nodes(c.nodes().begin(), c.nodes().end());
    for (auto& n : nodes) n.value *= k;
    return TermCurve(std::move(nodes));
}

double integrated_rate(const TermCurve& curve, double t0, double t1) {
    check_interval(t0, t1);
    if (t0 == t1) return 0.0;
    const auto nodes = curve.nodes();
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double lo = std::max(t0, nodes[i].time);
        const double hi = i + 1 < nodes.size() ? std::min(t1, nodes[i + 1].time) : t1;
        if (hi > lo) sum += nodes[i].value * (hi - lo);
        if (i + 1 < nodes.size() && nodes[i + 1].time >= t1) break;
    }
    return sum;
}

double discount_factor(const TermCurve& curve, double t0, double t1) {
    return std::exp(-integrated_rate(curve, t0, t1));
}

}  // namespace fva
