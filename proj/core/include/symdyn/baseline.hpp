#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "symdyn/probdist.hpp"
#include "symdyn/symbolize.hpp"

namespace symdyn {

namespace baseline {

/// Fair i.i.d. coin.
struct IidCoin {};

/// Random permutation of an existing sequence.
struct ShuffleOf {
    SymbolSequence source;
};

/// First-order chain with P(1|1) = p11 and P(1|0) = p10, started from its stationary law.
struct Markov1 {
    double p11;
    double p10;
};

/// Binomial multiplicative cascade: each dyadic refinement sends mass m to the 0-half
/// and 1 - m to the 1-half. The stream concatenates independent depth-bit cells drawn
/// from the cascade measure, so every word length up to depth sees the cascade law.
struct Cascade {
    double m;
    int depth;
};

}  // namespace baseline

using BaselineKind = std::variant<baseline::IidCoin, baseline::ShuffleOf, baseline::Markov1, baseline::Cascade>;

inline constexpr const char* kBaselineGenerator = "mt19937_64";

/// Deterministic for a fixed seed on a given build. Throws BadParameter.
[[nodiscard]] SymbolSequence random_baseline(std::size_t length, std::uint64_t seed, const BaselineKind& kind);

/// Exact depth-L cascade measure with m = numerator / denominator, as integer counts
/// numerator^(#0) * (denominator - numerator)^(#1) summing to denominator^L.
/// Throws BadParameter when denominator^L overflows 64 bits.
[[nodiscard]] WordDistribution cascade_distribution(std::uint64_t numerator, std::uint64_t denominator, int length);

}  // namespace symdyn
