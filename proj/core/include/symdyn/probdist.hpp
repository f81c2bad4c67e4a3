#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "symdyn/symbolize.hpp"

namespace symdyn {

/// Counts of every length-L word, indexed by the word's integer code.
class WordDistribution {
public:
    /// counts must have exactly 2^length cells. Throws BadParameter otherwise,
    /// EmptyDistribution when every cell is zero.
    WordDistribution(int length, int stride, std::vector<std::uint64_t> counts, std::string scale_label = {});

    [[nodiscard]] int length() const noexcept { return length_; }
    [[nodiscard]] int stride() const noexcept { return stride_; }
    [[nodiscard]] std::span<const std::uint64_t> counts() const noexcept { return counts_; }
    /// Total window count R.
    [[nodiscard]] std::uint64_t total() const noexcept { return total_; }
    [[nodiscard]] const std::string& scale_label() const noexcept { return scale_label_; }

    [[nodiscard]] double probability(std::uint32_t code) const noexcept {
        return static_cast<double>(counts_[code]) / static_cast<double>(total_);
    }
    /// Dense vector of all 2^L probabilities.
    [[nodiscard]] std::vector<double> probabilities() const;
    /// Probabilities of cells with non-zero count, in code order.
    [[nodiscard]] std::vector<double> support() const;
    [[nodiscard]] std::vector<std::uint32_t> support_codes() const;
    [[nodiscard]] std::size_t support_size() const noexcept { return support_size_; }

private:
    int length_;
    int stride_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
    std::size_t support_size_ = 0;
    std::string scale_label_;
};

/// Throws SequenceTooShort when N < L.
[[nodiscard]] WordDistribution word_distribution(const SymbolSequence& seq, int length, int stride = 1);

/// One observed context of length L-1 and its next-symbol conditionals.
struct ContextRow {
    Word context;
    double next0;
    double next1;
    std::uint64_t count;
};

/// Row-stochastic next-symbol conditionals plus the joint L-word matrix laid out as
/// context x next symbol.
struct ConditionalTable {
    int context_length;
    int stride;
    std::uint64_t total;
    /// Observed contexts only, ascending code order.
    std::vector<ContextRow> rows;
    /// 2^(L-1) rows of {P(c.0), P(c.1)}, zero rows included.
    std::vector<std::array<double, 2>> joint;
};

/// Throws SequenceTooShort, BadParameter when L < 2.
[[nodiscard]] ConditionalTable conditional_table(const SymbolSequence& seq, int length, int stride = 1);
[[nodiscard]] ConditionalTable conditional_table(const WordDistribution& dist);

/// Evidence for one suffix length k: contexts are grouped by their k most recent symbols.
struct SuffixOrderStats {
    int suffix_length;
    /// max |P(1|a) - P(1|b)| over context pairs sharing the suffix.
    double max_discrepancy;
    /// max |P(1|c) - P(1|suffix(c))| where the suffix conditional pools the group's counts.
    double max_pooled_deviation;
    /// Pearson chi-square for homogeneity of next-symbol counts within each group, summed.
    double chi_square;
    int degrees_of_freedom;
};

struct MarkovTestReport {
    int context_length;
    std::vector<SuffixOrderStats> orders;  ///< k = 1 .. context_length - 1
    double chi_square;                     ///< k = 1 entry
    int degrees_of_freedom;
    std::string verdict_notes;
};

/// Throws BadParameter for L < 3, InsufficientCounts when an observed context has
/// fewer than min_count occurrences. Unobserved contexts are skipped.
[[nodiscard]] MarkovTestReport markov_order_test(const SymbolSequence& seq, int length, int stride = 1,
                                                 std::uint64_t min_count = 5);

struct BoxStats {
    double min;
    double q1;
    double median;
    double q3;
    double max;
    double iqr;
};

/// Quartiles by Tukey's midpoint-exclusive hinges: for odd n the median is left out of
/// both halves. Throws TooFewValues below four values.
[[nodiscard]] BoxStats dispersion_summary(std::span<const double> values);

/// a.iqr / b.iqr. Throws ZeroBaselineIQR when b.iqr is not positive.
[[nodiscard]] double iqr_ratio(const BoxStats& a, const BoxStats& b);

}  // namespace symdyn
