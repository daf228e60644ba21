#pragma once

#include <span>
#include <vector>

namespace fva {

/// Node of a piecewise-constant term structure: the curve takes `value`
/// on [time, next node time).
struct CurveNode {
    double time;   // years from valuation date
    double value;  // per annum, continuous compounding

    bool operator==(const CurveNode&) const = default;
};

/// Piecewise-constant, right-continuous deterministic term structure with
/// flat extrapolation beyond the last node. Used for rates and default
/// intensities alike. Immutable after construction.
class TermCurve {
public:
    /// Flat zero curve.
    TermCurve();

    /// Throws DomainError unless node times are strictly increasing, start
    /// at 0, and all values are finite.
    explicit TermCurve(std::vector<CurveNode> nodes);

    static TermCurve flat(double value);

    /// Right-continuous value at t >= 0.
    double value_at(double t) const;

    /// Left limit at t > 0 (equals value_at(0) at t = 0).
    double value_before(double t) const;

    std::span<const CurveNode> nodes() const { return nodes_; }

    /// Node times strictly inside (t0, t1).
    std::vector<double> breakpoints(double t0, double t1) const;

    bool is_zero() const;
    bool is_non_negative() const;

    /// Smallest t with integral_0^t value = target, or +infinity if the
    /// accumulation never reaches it. Requires a non-negative curve.
    double inverse_integrated(double target) const;

    bool operator==(const TermCurve&) const = default;

private:
    std::size_t segment_index(double t) const;

    std::vector<CurveNode> nodes_;
};

/// Pointwise a + b on the union of node grids.
TermCurve operator+(const TermCurve& a, const TermCurve& b);
/// Pointwise a - b on the union of node grids.
TermCurve operator-(const TermCurve& a, const TermCurve& b);
/// Pointwise scaling.
TermCurve operator*(double k, const TermCurve& c);

/// Exact integral of the curve over [t0, t1]; 0 <= t0 <= t1.
double integrated_rate(const TermCurve& curve, double t0, double t1);

/// exp(-integrated_rate(curve, t0, t1)).
double discount_factor(const TermCurve& curve, double t0, double t1);

/// Risk-free funded rate r and collateral rate r_X.
struct MarketRates {
    TermCurve risk_free;
    TermCurve collateral;

    bool operator==(const MarketRates&) const = default;
};

}  // namespace fva
