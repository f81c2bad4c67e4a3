#pragma once

#include <span>

namespace symdyn {

struct LinearFit {
    double slope;
    double intercept;
    /// 1 - SS_res / SS_tot; reported as 1 when y is constant and fitted exactly.
    double r_squared;
};

/// Ordinary least-squares line y = slope * x + intercept.
/// Throws BadParameter on length mismatch or fewer than two points,
/// DegenerateRegression when every x coincides.
[[nodiscard]] LinearFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace symdyn
