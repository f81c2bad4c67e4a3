#include "symdyn/stationarity.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "symdyn/error.hpp"

namespace symdyn {

namespace {

// MacKinnon (2010), "Critical Values for Cointegration Tests", Table 1, single
// series (N = 1). cv(T) = b_inf + b1/T + b2/T^2 + b3/T^3.
constexpr double kTauConstant[3][4] = {
    {-3.43035, -6.5393, -16.786, -79.433},
    {-2.86154, -2.8903, -4.234, -40.040},
    {-2.56677, -1.5384, -2.809, 0.0},
};
constexpr double kTauConstantTrend[3][4] = {
    {-3.95877, -9.0531, -28.428, -134.155},
    {-3.41049, -4.3904, -9.036, -45.374},
    {-3.12705, -2.5856, -3.925, -22.380},
};

double response_surface(const double (&b)[4], double n) {
    return b[0] + b[1] / n + b[2] / (n * n) + b[3] / (n * n * n);
}

}  // namespace

std::string_view to_string(RegressionKind kind) noexcept {
    return kind == RegressionKind::Constant ? "c" : "ct";
}

CriticalValues mackinnon_critical_values(RegressionKind kind, std::size_t n_obs) {
    const auto& table = kind == RegressionKind::Constant ? kTauConstant : kTauConstantTrend;
    const auto n = static_cast<double>(n_obs);
    return {response_surface(table[0], n), response_surface(table[1], n), response_surface(table[2], n)};
}

std::size_t schwert_lags(std::size_t n) {
    return static_cast<std::size_t>(std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
}

AdfRegression adf_regression(std::span<const double> series, std::size_t lags, RegressionKind kind) {
    const std::size_t n = series.size();
    if (n < lags + 10) {
        throw Error(Errc::TooShort, "series of length " + std::to_string(n) + " is too short for " +
                                        std::to_string(lags) + " lags");
    }
    const auto [lo, hi] = std::minmax_element(series.begin(), series.end());
    if (*lo == *hi) {
        throw Error(Errc::ConstantSeries, "series is constant");
    }

    std::vector<double> diff(n - 1);
    for (std::size_t t = 1; t < n; ++t) {
        diff[t - 1] = series[t] - series[t - 1];
    }
    const std::size_t rows = n - 1 - lags;
    const std::size_t deterministic = kind == RegressionKind::Constant ? 1 : 2;
    const std::size_t cols = deterministic + 1 + lags;
    if (rows <= cols) {
        throw Error(Errc::TooShort, "fewer regression rows than regressors");
    }

    Eigen::MatrixXd x(rows, cols);
    Eigen::VectorXd y(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        // Row r explains diff[t] with t = r + lags, i.e. dy between series[t] and series[t+1].
        const std::size_t t = r + lags;
        y(static_cast<Eigen::Index>(r)) = diff[t];
        Eigen::Index c = 0;
        x(static_cast<Eigen::Index>(r), c++) = 1.0;
        if (kind == RegressionKind::ConstantTrend) {
            x(static_cast<Eigen::Index>(r), c++) = static_cast<double>(r + 1);
        }
        x(static_cast<Eigen::Index>(r), c++) = series[t];
        for (std::size_t i = 1; i <= lags; ++i) {
            x(static_cast<Eigen::Index>(r), c++) = diff[t - i];
        }
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    if (qr.rank() < static_cast<Eigen::Index>(cols)) {
        throw Error(Errc::SingularDesignMatrix, "ADF design matrix is rank deficient");
    }
    const Eigen::VectorXd beta = qr.solve(y);
    const Eigen::VectorXd resid = y - x * beta;
    const double sigma2 = resid.squaredNorm() / static_cast<double>(rows - cols);

    // (X'X)^-1 = P R^-1 R^-T P'
    const Eigen::Index k = static_cast<Eigen::Index>(cols);
    const Eigen::MatrixXd r_upper = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
    const Eigen::MatrixXd r_inv =
        r_upper.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
    const Eigen::MatrixXd perm = qr.colsPermutation();
    const Eigen::MatrixXd cov_unscaled = perm * (r_inv * r_inv.transpose()) * perm.transpose();

    AdfRegression out;
    out.gamma_index = deterministic;
    const double se = std::sqrt(sigma2 * cov_unscaled(static_cast<Eigen::Index>(deterministic),
                                                      static_cast<Eigen::Index>(deterministic)));
    if (!(se > 0.0) || !std::isfinite(se)) {
        throw Error(Errc::SingularDesignMatrix, "zero or non-finite standard error");
    }
    out.t_stat = beta(static_cast<Eigen::Index>(deterministic)) / se;
    out.coefficients.assign(beta.data(), beta.data() + beta.size());
    out.residuals.assign(resid.data(), resid.data() + resid.size());
    out.design.resize(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        out.design[r].resize(cols);
        for (std::size_t c = 0; c < cols; ++c) {
            out.design[r][c] = x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
    }
    return out;
}

AdfReport adf_test(std::span<const double> series, std::optional<std::size_t> lags, RegressionKind kind) {
    const std::size_t used = lags.value_or(schwert_lags(series.size()));
    const auto reg = adf_regression(series, used, kind);
    const std::size_t n_obs = reg.residuals.size();
    return {reg.t_stat, used, kind, mackinnon_critical_values(kind, n_obs), n_obs};
}

std::vector<double> adf_series(const SymbolSequence& seq, int length, int stride, AdfInput input) {
    if (input == AdfInput::CenteredBinary) {
        std::vector<double> out(seq.size());
        for (std::size_t i = 0; i < seq.size(); ++i) {
            out[i] = seq[i] == 1 ? 1.0 : -1.0;
        }
        return out;
    }
    const auto codes = window_codes(seq, length, stride);
    std::vector<double> out(codes.size());
    for (std::size_t j = 0; j < codes.size(); ++j) {
        out[j] = WordCode(codes[j], length).value();
    }
    return out;
}

}  // namespace symdyn
