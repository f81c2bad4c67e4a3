#include "symdyn/renyi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "symdyn/error.hpp"

namespace symdyn {

namespace {

// Terms whose exponent falls this far below the largest are flushed to zero.
constexpr long double kUnderflowExponent = -700.0L;

void require_support(std::span<const double> support) {
    if (support.empty()) {
        throw Error(Errc::EmptyDistribution, "distribution has empty support");
    }
}

double log_scale(int length) { return -static_cast<double>(length) * std::numbers::ln2; }

std::vector<double> scale_axis(std::span<const WordDistribution> dists) {
    if (dists.size() < 3) {
        throw Error(Errc::TooFewScales, "scaling fits need at least three word lengths");
    }
    std::vector<double> x;
    x.reserve(dists.size());
    for (const auto& d : dists) {
        x.push_back(log_scale(d.length()));
    }
    return x;
}

}  // namespace

QGrid::QGrid(std::vector<double> values, Q1Handling handling, double epsilon)
    : values_(std::move(values)), handling_(handling), epsilon_(epsilon) {
    if (values_.empty()) {
        throw Error(Errc::EmptyGrid, "q grid is empty");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw Error(Errc::BadParameter, "q values must be finite");
        }
        if (i > 0 && !(values_[i - 1] < values_[i])) {
            throw Error(Errc::BadParameter, "q grid must be strictly increasing");
        }
    }
    if (handling_ == Q1Handling::EpsilonOffset && !(epsilon_ > 0.0)) {
        throw Error(Errc::BadParameter, "epsilon must be positive");
    }
}

QGrid QGrid::range(double min, double max, double step) {
    if (!(step > 0.0) || !std::isfinite(step) || !std::isfinite(min) || !std::isfinite(max)) {
        throw Error(Errc::BadParameter, "q range needs finite bounds and a positive step");
    }
    if (max < min) {
        throw Error(Errc::EmptyGrid, "q range is empty");
    }
    const auto count = static_cast<std::size_t>(std::floor((max - min) / step + 0.5)) + 1;
    std::vector<double> values(count);
    for (std::size_t i = 0; i < count; ++i) {
        values[i] = min + static_cast<double>(i) * step;
    }
    return QGrid(std::move(values));
}

long double log_partition_sum(std::span<const double> support, double q) {
    require_support(support);
    long double top = -std::numeric_limits<long double>::infinity();
    for (double p : support) {
        top = std::max(top, static_cast<long double>(q) * std::log(static_cast<long double>(p)));
    }
    long double sum = 0.0L;
    for (double p : support) {
        const long double e = static_cast<long double>(q) * std::log(static_cast<long double>(p)) - top;
        if (e >= kUnderflowExponent) {
            sum += std::exp(e);
        }
    }
    return top + std::log(sum);
}

double shannon_information(std::span<const double> support) {
    long double acc = 0.0L;
    for (double p : support) {
        if (p > 0.0) {
            acc += static_cast<long double>(p) * std::log(static_cast<long double>(p));
        }
    }
    return static_cast<double>(acc);
}

double renyi_information(std::span<const double> support, double q) {
    require_support(support);
    if (q == 1.0) {
        return shannon_information(support);
    }
    return static_cast<double>(log_partition_sum(support, q) / (static_cast<long double>(q) - 1.0L));
}

double shannon_information(const WordDistribution& dist) { return shannon_information(dist.support()); }

double renyi_information(const WordDistribution& dist, double q) {
    return renyi_information(dist.support(), q);
}

double renyi_entropy_rate(const WordDistribution& dist, double q) {
    return -renyi_information(dist, q) / static_cast<double>(dist.length());
}

double renyi_dimension(const WordDistribution& dist, double q) {
    return renyi_information(dist, q) / log_scale(dist.length());
}

LinearFit dimension_fit(std::span<const WordDistribution> dists, double q) {
    const auto x = scale_axis(dists);
    std::vector<double> y;
    y.reserve(dists.size());
    for (const auto& d : dists) {
        y.push_back(renyi_information(d, q));
    }
    return fit_line(x, y);
}

DimensionCurve dimension_curve(std::span<const WordDistribution> dists, const QGrid& grid) {
    const auto x = scale_axis(dists);
    std::vector<std::vector<double>> supports;
    supports.reserve(dists.size());
    for (const auto& d : dists) {
        supports.push_back(d.support());
    }
    DimensionCurve curve;
    std::vector<double> y(dists.size());
    for (double q : grid.values()) {
        const double qe = grid.effective(q);
        for (std::size_t i = 0; i < supports.size(); ++i) {
            y[i] = renyi_information(supports[i], qe);
        }
        const auto fit = fit_line(x, y);
        curve.q.push_back(q);
        curve.dq.push_back(fit.slope);
        curve.r_squared.push_back(fit.r_squared);
    }
    return curve;
}

SpectrumResult entropy_spectrum(std::span<const WordDistribution> dists, const QGrid& grid) {
    SpectrumResult result{{}, 0, dists.empty() ? 1 : dists.front().stride(),
                          dists.empty() ? std::string{} : dists.front().scale_label(), {}};
    result.cells.reserve(dists.size() * grid.size());
    for (const auto& d : dists) {
        const auto support = d.support();
        const auto length = static_cast<double>(d.length());
        for (double q : grid.values()) {
            const double info = renyi_information(support, grid.effective(q));
            result.cells.push_back({d.length(), q, info, -info / length, info / log_scale(d.length())});
        }
        result.scales.push_back({d.length(), d.total(), d.support_size()});
    }
    return result;
}

SpectrumResult entropy_spectrum(const SymbolSequence& seq, std::span<const int> lengths, const QGrid& grid,
                                int stride) {
    if (lengths.empty()) {
        throw Error(Errc::BadParameter, "no word lengths requested");
    }
    std::vector<WordDistribution> dists;
    dists.reserve(lengths.size());
    for (int l : lengths) {
        dists.push_back(word_distribution(seq, l, stride));
    }
    auto result = entropy_spectrum(dists, grid);
    result.n = seq.size();
    result.stride = stride;
    result.scale_label = seq.provenance();
    return result;
}

}  // namespace symdyn
