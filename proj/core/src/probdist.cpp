#include "symdyn/probdist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "symdyn/error.hpp"

namespace symdyn {

WordDistribution::WordDistribution(int length, int stride, std::vector<std::uint64_t> counts,
                                   std::string scale_label)
    : length_(length), stride_(stride), counts_(std::move(counts)), scale_label_(std::move(scale_label)) {
    check_word_length(length);
    if (stride < 1) {
        throw Error(Errc::BadParameter, "stride must be positive");
    }
    if (counts_.size() != (std::size_t{1} << length)) {
        throw Error(Errc::BadParameter, "count array must have 2^L cells");
    }
    for (auto c : counts_) {
        if (c > std::numeric_limits<std::uint64_t>::max() - total_) {
            throw Error(Errc::BadParameter, "total count overflows");
        }
        total_ += c;
        support_size_ += c > 0 ? 1 : 0;
    }
    if (total_ == 0) {
        throw Error(Errc::EmptyDistribution, "distribution has no mass");
    }
}

std::vector<double> WordDistribution::probabilities() const {
    std::vector<double> p(counts_.size());
    for (std::size_t k = 0; k < counts_.size(); ++k) {
        p[k] = probability(static_cast<std::uint32_t>(k));
    }
    return p;
}

std::vector<double> WordDistribution::support() const {
    std::vector<double> p;
    p.reserve(support_size_);
    for (std::size_t k = 0; k < counts_.size(); ++k) {
        if (counts_[k] > 0) {
            p.push_back(probability(static_cast<std::uint32_t>(k)));
        }
    }
    return p;
}

std::vector<std::uint32_t> WordDistribution::support_codes() const {
    std::vector<std::uint32_t> codes;
    codes.reserve(support_size_);
    for (std::size_t k = 0; k < counts_.size(); ++k) {
        if (counts_[k] > 0) {
            codes.push_back(static_cast<std::uint32_t>(k));
        }
    }
    return codes;
}

WordDistribution word_distribution(const SymbolSequence& seq, int length, int stride) {
    const auto codes = window_codes(seq, length, stride);
    std::vector<std::uint64_t> counts(std::size_t{1} << length, 0);
    for (auto c : codes) {
        ++counts[c];
    }
    return WordDistribution(length, stride, std::move(counts), seq.provenance());
}

ConditionalTable conditional_table(const WordDistribution& dist) {
    const int length = dist.length();
    if (length < 2) {
        throw Error(Errc::BadParameter, "conditional tables need L >= 2");
    }
    const auto counts = dist.counts();
    const double total = static_cast<double>(dist.total());
    const std::uint32_t contexts = std::uint32_t{1} << (length - 1);

    ConditionalTable table{length - 1, dist.stride(), dist.total(), {}, {}};
    table.joint.resize(contexts);
    for (std::uint32_t c = 0; c < contexts; ++c) {
        const auto n0 = counts[c << 1];
        const auto n1 = counts[(c << 1) | 1U];
        table.joint[c] = {static_cast<double>(n0) / total, static_cast<double>(n1) / total};
        const auto n = n0 + n1;
        if (n == 0) {
            continue;
        }
        const double p1 = static_cast<double>(n1) / static_cast<double>(n);
        table.rows.push_back({Word::from_code(c, length - 1), 1.0 - p1, p1, n});
    }
    return table;
}

ConditionalTable conditional_table(const SymbolSequence& seq, int length, int stride) {
    if (length < 2) {
        throw Error(Errc::BadParameter, "conditional tables need L >= 2");
    }
    return conditional_table(word_distribution(seq, length, stride));
}

MarkovTestReport markov_order_test(const SymbolSequence& seq, int length, int stride, std::uint64_t min_count) {
    if (length < 3) {
        throw Error(Errc::BadParameter, "Markov order test needs L >= 3");
    }
    const auto dist = word_distribution(seq, length, stride);
    const auto counts = dist.counts();
    const int context_length = length - 1;
    const std::uint32_t contexts = std::uint32_t{1} << context_length;

    for (std::uint32_t c = 0; c < contexts; ++c) {
        const auto n = counts[c << 1] + counts[(c << 1) | 1U];
        if (n > 0 && n < min_count) {
            throw Error(Errc::InsufficientCounts, "context " + Word::from_code(c, context_length).to_string() +
                                                      " occurs " + std::to_string(n) + " times");
        }
    }

    MarkovTestReport report{context_length, {}, 0.0, 0, {}};
    for (int k = 1; k < context_length; ++k) {
        // The k most recent symbols of a context are its k lowest bits.
        const std::uint32_t groups = std::uint32_t{1} << k;
        SuffixOrderStats stats{k, 0.0, 0.0, 0.0, 0};
        for (std::uint32_t g = 0; g < groups; ++g) {
            std::uint64_t pooled[2] = {0, 0};
            double lo = 1.0;
            double hi = 0.0;
            int members = 0;
            for (std::uint32_t c = g; c < contexts; c += groups) {
                const auto n0 = counts[c << 1];
                const auto n1 = counts[(c << 1) | 1U];
                if (n0 + n1 == 0) {
                    continue;
                }
                const double p1 = static_cast<double>(n1) / static_cast<double>(n0 + n1);
                lo = std::min(lo, p1);
                hi = std::max(hi, p1);
                pooled[0] += n0;
                pooled[1] += n1;
                ++members;
            }
            if (members == 0) {
                continue;
            }
            const auto group_total = static_cast<double>(pooled[0] + pooled[1]);
            const double pooled_p1 = static_cast<double>(pooled[1]) / group_total;
            stats.max_discrepancy = std::max(stats.max_discrepancy, hi - lo);
            stats.max_pooled_deviation =
                std::max({stats.max_pooled_deviation, hi - pooled_p1, pooled_p1 - lo});

            const int live_columns = (pooled[0] > 0 ? 1 : 0) + (pooled[1] > 0 ? 1 : 0);
            stats.degrees_of_freedom += (members - 1) * (live_columns - 1);
            for (std::uint32_t c = g; c < contexts; c += groups) {
                const std::uint64_t observed[2] = {counts[c << 1], counts[(c << 1) | 1U]};
                const auto n = static_cast<double>(observed[0] + observed[1]);
                if (n == 0.0) {
                    continue;
                }
                for (int s = 0; s < 2; ++s) {
                    const double expected = n * static_cast<double>(pooled[s]) / group_total;
                    if (expected > 0.0) {
                        const double d = static_cast<double>(observed[s]) - expected;
                        stats.chi_square += d * d / expected;
                    }
                }
            }
        }
        report.orders.push_back(stats);
    }

    const auto& first = report.orders.front();
    report.chi_square = first.chi_square;
    report.degrees_of_freedom = first.degrees_of_freedom;

    std::ostringstream notes;
    notes << "R=" << dist.total() << "; smallest suffix with max discrepancy <= 0.01: ";
    const auto it = std::find_if(report.orders.begin(), report.orders.end(),
                                 [](const SuffixOrderStats& s) { return s.max_discrepancy <= 0.01; });
    if (it == report.orders.end()) {
        notes << "none up to k=" << context_length - 1;
    } else {
        notes << "k=" << it->suffix_length;
    }
    report.verdict_notes = notes.str();
    return report;
}

namespace {

double median_of(std::span<const double> sorted) {
    const std::size_t n = sorted.size();
    return n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

}  // namespace

BoxStats dispersion_summary(std::span<const double> values) {
    if (values.size() < 4) {
        throw Error(Errc::TooFewValues, "quartiles need at least four values");
    }
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    const std::size_t half = n / 2;
    const std::span<const double> all(v);
    BoxStats box{};
    box.min = v.front();
    box.max = v.back();
    box.median = median_of(all);
    box.q1 = median_of(all.first(half));
    box.q3 = median_of(all.last(half));
    box.iqr = box.q3 - box.q1;
    return box;
}

double iqr_ratio(const BoxStats& a, const BoxStats& b) {
    if (!(b.iqr > 0.0)) {
        throw Error(Errc::ZeroBaselineIQR, "baseline IQR is zero");
    }
    return a.iqr / b.iqr;
}

}  // namespace symdyn
