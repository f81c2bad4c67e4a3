#include "symdyn/regression.hpp"

#include <cmath>

#include "symdyn/error.hpp"

namespace symdyn {

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw Error(Errc::BadParameter, "line fit needs two or more paired points");
    }
    const auto n = static_cast<long double>(x.size());
    long double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    long double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const long double dx = x[i] - mx;
        const long double dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0) {
        throw Error(Errc::DegenerateRegression, "all scale points coincide");
    }
    const long double slope = sxy / sxx;
    const long double intercept = my - slope * mx;
    long double ss_res = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const long double e = y[i] - (slope * x[i] + intercept);
        ss_res += e * e;
    }
    double r2 = 1.0;
    if (syy > 0) {
        r2 = static_cast<double>(1 - ss_res / syy);
    } else if (ss_res > 0) {
        r2 = 0.0;
    }
    return {static_cast<double>(slope), static_cast<double>(intercept), r2};
}

}  // namespace symdyn
