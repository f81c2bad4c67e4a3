#pragma once

#include <span>
#include <string>
#include <vector>

#include "symdyn/probdist.hpp"
#include "symdyn/regression.hpp"

namespace symdyn {

/// How the q = 1 point is evaluated: by the Shannon limit, or at 1 + epsilon (only
/// useful to probe the limit).
enum class Q1Handling { AnalyticLimit, EpsilonOffset };

/// Strictly increasing grid of order parameters q.
class QGrid {
public:
    /// Throws EmptyGrid for no values, BadParameter if not strictly increasing or
    /// epsilon is not positive in EpsilonOffset mode.
    explicit QGrid(std::vector<double> values, Q1Handling handling = Q1Handling::AnalyticLimit,
                   double epsilon = 1e-4);

    /// min, min + step, ... up to max (inclusive within half a step). Grid points are
    /// min + i * step, so q = 0 and q = 1 land exactly when the step divides them.
    [[nodiscard]] static QGrid range(double min, double max, double step);

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }
    [[nodiscard]] Q1Handling q1_handling() const noexcept { return handling_; }
    [[nodiscard]] double epsilon() const noexcept { return epsilon_; }

    /// The q actually evaluated for grid value q.
    [[nodiscard]] double effective(double q) const noexcept {
        return (handling_ == Q1Handling::EpsilonOffset && q == 1.0) ? 1.0 + epsilon_ : q;
    }

    friend bool operator==(const QGrid&, const QGrid&) = default;

private:
    std::vector<double> values_;
    Q1Handling handling_ = Q1Handling::AnalyticLimit;
    double epsilon_ = 1e-4;
};

// Kernels over the support probabilities of a distribution (zero cells excluded).
// All results are in nats.

/// ln sum_i p_i^q over the given probabilities, by log-sum-exp in extended precision.
[[nodiscard]] long double log_partition_sum(std::span<const double> support, double q);

/// sum p ln p (<= 0).
[[nodiscard]] double shannon_information(std::span<const double> support);
/// ln(sum p^q) / (q - 1); q == 1 dispatches to shannon_information.
[[nodiscard]] double renyi_information(std::span<const double> support, double q);

[[nodiscard]] double shannon_information(const WordDistribution& dist);
[[nodiscard]] double renyi_information(const WordDistribution& dist, double q);
/// Finite-L entropy rate -I_q / L, nats per symbol.
[[nodiscard]] double renyi_entropy_rate(const WordDistribution& dist, double q);
/// Finite-L dimension I_q / ln(2^-L) = S_q / ln 2.
[[nodiscard]] double renyi_dimension(const WordDistribution& dist, double q);

/// Least-squares slope of I_q(L) against ln r = -L ln 2 over the given scales.
/// Throws TooFewScales with fewer than three distributions, DegenerateRegression when
/// fewer than two distinct L are present.
[[nodiscard]] LinearFit dimension_fit(std::span<const WordDistribution> dists, double q);

/// Fitted D_q on a q grid, the input of tau_curve and legendre_check.
struct DimensionCurve {
    std::vector<double> q;
    std::vector<double> dq;
    std::vector<double> r_squared;
};

[[nodiscard]] DimensionCurve dimension_curve(std::span<const WordDistribution> dists, const QGrid& grid);

struct SpectrumCell {
    int length;
    double q;
    double information;   ///< I_q
    double entropy_rate;  ///< S_q
    double dimension;     ///< D_q
};

struct ScaleInfo {
    int length;
    std::uint64_t windows;  ///< R
    std::size_t support_size;
};

struct SpectrumResult {
    std::vector<SpectrumCell> cells;  ///< L-major, q-minor
    std::size_t n;  ///< sequence length; 0 when built from distributions directly
    int stride;
    std::string scale_label;
    std::vector<ScaleInfo> scales;
};

/// Full (L, q) grid. Throws SequenceTooShort / BadParameter from the inner steps.
[[nodiscard]] SpectrumResult entropy_spectrum(const SymbolSequence& seq, std::span<const int> lengths,
                                              const QGrid& grid, int stride = 1);
[[nodiscard]] SpectrumResult entropy_spectrum(std::span<const WordDistribution> dists, const QGrid& grid);

}  // namespace symdyn
