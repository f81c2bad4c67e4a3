#include "symdyn/multifractal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "symdyn/error.hpp"

namespace symdyn {

namespace {

// ln mu_i(q) for every support cell.
std::vector<long double> log_weights(std::span<const double> support, double q) {
    const long double lse = log_partition_sum(support, q);
    std::vector<long double> out(support.size());
    for (std::size_t i = 0; i < support.size(); ++i) {
        out[i] = static_cast<long double>(q) * std::log(static_cast<long double>(support[i])) - lse;
    }
    return out;
}

}  // namespace

ChhabraWeights chhabra_weights(const WordDistribution& dist, double q) {
    const auto support = dist.support();
    const auto logs = log_weights(support, q);
    ChhabraWeights out{q, dist.support_codes(), std::vector<double>(support.size())};
    for (std::size_t i = 0; i < logs.size(); ++i) {
        out.weights[i] = static_cast<double>(std::exp(logs[i]));
    }
    return out;
}

MultifractalSpectrum chhabra_spectrum(std::span<const WordDistribution> dists, const QGrid& grid) {
    if (dists.size() < 3) {
        throw Error(Errc::TooFewScales, "scaling fits need at least three word lengths");
    }
    MultifractalSpectrum spectrum;
    std::vector<double> x;
    std::vector<std::vector<double>> supports;
    for (const auto& d : dists) {
        spectrum.scale_range.push_back(d.length());
        x.push_back(-static_cast<double>(d.length()) * std::numbers::ln2);
        supports.push_back(d.support());
    }
    const auto dims = dimension_curve(dists, grid);
    const auto tau = tau_curve(dims);

    std::vector<double> y_f(dists.size());
    std::vector<double> y_alpha(dists.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double q = grid.effective(grid[k]);
        long double widest = 0.0L;
        for (std::size_t s = 0; s < supports.size(); ++s) {
            const auto& support = supports[s];
            const auto logs = log_weights(support, q);
            long double entropy = 0.0L;
            long double singularity = 0.0L;
            for (std::size_t i = 0; i < support.size(); ++i) {
                const long double mu = std::exp(logs[i]);
                entropy += mu * logs[i];
                singularity += mu * std::log(static_cast<long double>(support[i]));
            }
            const auto [lo, hi] = std::minmax_element(logs.begin(), logs.end());
            widest = std::max(widest, *hi - *lo);
            y_f[s] = static_cast<double>(entropy);
            y_alpha[s] = static_cast<double>(singularity);
        }
        const auto f_fit = fit_line(x, y_f);
        const auto a_fit = fit_line(x, y_alpha);
        spectrum.points.push_back({grid[k], a_fit.slope, f_fit.slope, tau[k], a_fit.r_squared, f_fit.r_squared,
                                   static_cast<double>(std::exp(widest))});
    }
    return spectrum;
}

std::vector<double> tau_curve(const DimensionCurve& dims) {
    std::vector<double> tau(dims.q.size());
    for (std::size_t i = 0; i < tau.size(); ++i) {
        tau[i] = dims.q[i] == 1.0 ? 0.0 : dims.dq[i] * (dims.q[i] - 1.0);
    }
    return tau;
}

LegendreReport legendre_check(const MultifractalSpectrum& spectrum, const DimensionCurve& dims) {
    if (spectrum.points.size() != dims.q.size()) {
        throw Error(Errc::GridMismatch, "spectrum and dimension curve have different q grids");
    }
    LegendreReport report{{}, {}, 0.0, 0.0};
    for (std::size_t i = 0; i < dims.q.size(); ++i) {
        const auto& pt = spectrum.points[i];
        if (pt.q != dims.q[i]) {
            throw Error(Errc::GridMismatch, "spectrum and dimension curve have different q grids");
        }
        const double residual = std::abs(pt.f - (dims.dq[i] * (1.0 - pt.q) + pt.q * pt.alpha));
        report.q.push_back(pt.q);
        report.residuals.push_back(residual);
        report.max_residual = std::max(report.max_residual, residual);
        report.mean_residual += residual;
    }
    if (!report.residuals.empty()) {
        report.mean_residual /= static_cast<double>(report.residuals.size());
    }
    return report;
}

}  // namespace symdyn
