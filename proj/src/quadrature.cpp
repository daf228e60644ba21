#include "fva/quadrature.hpp"

#include <algorithm>

#include "fva/errors.hpp"

namespace fva {

std::vector<double> panel_grid(double t0, double t1, std::span<const double> breaks, int panels_per_unit) {
    detail::require_domain(t1 > t0, "panel grid needs a non-empty interval");
    detail::require_domain(panels_per_unit >= 1, "panel density must be positive");

    std::vector<double> knots{t0, t1};
    for (double b : breaks) {
        if (b > t0 && b < t1) knots.push_back(b);
    }
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

    std::vector<double> grid{knots.front()};
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
        const double a = knots[k];
        const double b = knots[k + 1];
        const auto n = std::max<long>(1, static_cast<long>(std::ceil((b - a) * panels_per_unit - 1e-9)));
        for (long j = 1; j < n; ++j) grid.push_back(a + (b - a) * static_cast<double>(j) / static_cast<double>(n));
        grid.push_back(b);
    }
    return grid;
}

double composite_simpson(const std::function<double(double)>& f, std::span<const double> grid) {
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        const double a = grid[k];
        const double b = grid[k + 1];
        sum += (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(left_of(b)));
    }
    return sum;
}

}  // namespace fva
