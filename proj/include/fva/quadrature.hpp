#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace fva {

/// Largest double below t; evaluating a right-continuous integrand there
/// gives its left limit at t.
inline double left_of(double t) { return std::nextafter(t, -std::numeric_limits<double>::infinity()); }

/// Sorted, de-duplicated panel boundaries covering [t0, t1]: every break in
/// (t0, t1) is kept and each resulting piece is split uniformly so that no
/// panel is wider than 1/panels_per_unit.
std::vector<double> panel_grid(double t0, double t1, std::span<const double> breaks, int panels_per_unit);

/// Composite Simpson rule of f over consecutive panels of `grid`. f is taken
/// as smooth inside each panel; right endpoints are evaluated at their left
/// limit so jumps located on grid points are handled exactly.
double composite_simpson(const std::function<double(double)>& f, std::span<const double> grid);

}  // namespace fva
