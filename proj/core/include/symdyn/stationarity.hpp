#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "symdyn/symbolize.hpp"

namespace symdyn {

enum class RegressionKind {
    Constant,       ///< c
    ConstantTrend,  ///< ct
};

[[nodiscard]] std::string_view to_string(RegressionKind kind) noexcept;

/// Critical values at 1%, 5% and 10%; more negative is more extreme.
struct CriticalValues {
    double pct1;
    double pct5;
    double pct10;
};

struct AdfReport {
    double t_stat;
    std::size_t lags_used;
    RegressionKind regression_kind;
    CriticalValues critical_values;
    std::size_t n_obs;  ///< rows in the test regression
};

/// MacKinnon (2010) response-surface critical values for n regression rows.
[[nodiscard]] CriticalValues mackinnon_critical_values(RegressionKind kind, std::size_t n_obs);

/// floor(12 * (n / 100)^(1/4)).
[[nodiscard]] std::size_t schwert_lags(std::size_t n);

/// Augmented Dickey-Fuller regression
///   dy_t = c (+ b t) + gamma y_{t-1} + sum_i delta_i dy_{t-i} + e_t
/// fitted by OLS; the statistic is gamma / se(gamma). Without `lags` the Schwert rule
/// is used. Throws TooShort (length < lags + 10), ConstantSeries, SingularDesignMatrix.
[[nodiscard]] AdfReport adf_test(std::span<const double> series, std::optional<std::size_t> lags = std::nullopt,
                                 RegressionKind kind = RegressionKind::Constant);

/// Series fed to the test for a symbol stream: the fractional code of each sliding
/// window (pi-encoding), or the +/-1 centred symbols themselves.
enum class AdfInput { WordFraction, CenteredBinary };

[[nodiscard]] std::vector<double> adf_series(const SymbolSequence& seq, int length, int stride, AdfInput input);

/// Full OLS fit used by adf_test, exposed for diagnostics.
struct AdfRegression {
    std::vector<double> coefficients;  ///< deterministic terms, then gamma, then deltas
    std::vector<double> residuals;
    std::vector<std::vector<double>> design;  ///< row-major regressors
    std::size_t gamma_index;
    double t_stat;
};

[[nodiscard]] AdfRegression adf_regression(std::span<const double> series, std::size_t lags, RegressionKind kind);

}  // namespace symdyn
