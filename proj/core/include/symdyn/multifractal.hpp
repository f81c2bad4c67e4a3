#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "symdyn/probdist.hpp"
#include "symdyn/renyi.hpp"

namespace symdyn {

/// Escort weights mu_i(q) = p_i^q / sum_j p_j^q over the support of a distribution.
struct ChhabraWeights {
    double q;
    std::vector<std::uint32_t> codes;  ///< support cells, ascending
    std::vector<double> weights;
};

/// Throws EmptyDistribution.
[[nodiscard]] ChhabraWeights chhabra_weights(const WordDistribution& dist, double q);

struct SpectrumPoint {
    double q;
    double alpha;
    double f;
    double tau;  ///< D_q (q - 1) from the fitted dimension
    double r2_alpha;
    double r2_f;
    /// max mu / min mu across all scales; large values flag noise amplification.
    double condition_number;
};

struct MultifractalSpectrum {
    std::vector<SpectrumPoint> points;  ///< one per grid value, ascending q
    std::vector<int> scale_range;       ///< word lengths entering the regressions
};

/// Direct f(alpha) estimate: f(q) is the slope of sum mu ln mu and alpha(q) the slope
/// of sum mu ln p against ln r = -L ln 2. Throws TooFewScales with fewer than three
/// distributions and DegenerateRegression when every L is equal.
[[nodiscard]] MultifractalSpectrum chhabra_spectrum(std::span<const WordDistribution> dists, const QGrid& grid);

/// tau(q) = D_q (q - 1); tau(1) is exactly zero.
[[nodiscard]] std::vector<double> tau_curve(const DimensionCurve& dims);

struct LegendreReport {
    std::vector<double> q;
    std::vector<double> residuals;  ///< |f - (D_q (1 - q) + q alpha)|
    double max_residual;
    double mean_residual;
};

/// Throws GridMismatch unless both inputs share the same q values.
[[nodiscard]] LegendreReport legendre_check(const MultifractalSpectrum& spectrum, const DimensionCurve& dims);

}  // namespace symdyn
