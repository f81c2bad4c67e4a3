#include "symdyn/baseline.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <random>
#include <sstream>

#include "symdyn/error.hpp"

namespace symdyn {

namespace {

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Uniform double in [0, 1) from the top 53 bits; avoids the library-specific
// behaviour of std::bernoulli_distribution.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::string provenance(std::string_view kind, std::uint64_t seed) {
    std::ostringstream out;
    out << "baseline:" << kind << " seed=" << seed << " rng=" << kBaselineGenerator;
    return out.str();
}

}  // namespace

SymbolSequence random_baseline(std::size_t length, std::uint64_t seed, const BaselineKind& kind) {
    std::mt19937_64 rng(seed);
    std::vector<Symbol> out;

    const std::string label = std::visit(
        overloaded{
            [&](const baseline::IidCoin&) -> std::string {
                if (length < 1) {
                    throw Error(Errc::BadParameter, "baseline length must be positive");
                }
                out.resize(length);
                for (auto& s : out) {
                    s = static_cast<Symbol>(rng() >> 63);
                }
                return "iid_coin";
            },
            [&](const baseline::ShuffleOf& k) -> std::string {
                if (k.source.empty()) {
                    throw Error(Errc::BadParameter, "cannot shuffle an empty sequence");
                }
                const auto src = k.source.symbols();
                out.assign(src.begin(), src.end());
                // Fisher-Yates with an explicit index draw so the permutation does not
                // depend on the standard library's shuffle.
                for (std::size_t i = out.size(); i > 1; --i) {
                    const auto j = static_cast<std::size_t>(unit(rng) * static_cast<double>(i));
                    std::swap(out[i - 1], out[std::min(j, i - 1)]);
                }
                return "shuffle";
            },
            [&](const baseline::Markov1& k) -> std::string {
                if (length < 1) {
                    throw Error(Errc::BadParameter, "baseline length must be positive");
                }
                if (!is_probability(k.p11) || !is_probability(k.p10)) {
                    throw Error(Errc::BadParameter, "transition probabilities must lie in [0,1]");
                }
                const double denom = 1.0 - k.p11 + k.p10;
                const double stationary1 = denom > 0.0 ? k.p10 / denom : 0.5;
                out.resize(length);
                Symbol state = unit(rng) < stationary1 ? 1 : 0;
                out[0] = state;
                for (std::size_t i = 1; i < length; ++i) {
                    const double p1 = state == 1 ? k.p11 : k.p10;
                    state = unit(rng) < p1 ? 1 : 0;
                    out[i] = state;
                }
                return "markov1";
            },
            [&](const baseline::Cascade& k) -> std::string {
                if (length < 1) {
                    throw Error(Errc::BadParameter, "baseline length must be positive");
                }
                if (!(k.m > 0.0 && k.m < 1.0)) {
                    throw Error(Errc::BadParameter, "cascade weight m must lie in (0,1)");
                }
                check_word_length(k.depth);
                out.resize(length);
                // A depth-bit cell picks the 0-half with weight m at every level, so
                // concatenated cells are i.i.d. bits with P(0) = m.
                for (std::size_t i = 0; i < length; ++i) {
                    out[i] = unit(rng) < k.m ? 0 : 1;
                }
                return "cascade";
            },
        },
        kind);

    return SymbolSequence(std::move(out), provenance(label, seed));
}

WordDistribution cascade_distribution(std::uint64_t numerator, std::uint64_t denominator, int length) {
    check_word_length(length);
    if (numerator == 0 || numerator >= denominator) {
        throw Error(Errc::BadParameter, "cascade weight must lie strictly between 0 and 1");
    }
    const std::uint64_t other = denominator - numerator;
    const auto power = [](std::uint64_t base, int exp) {
        std::uint64_t r = 1;
        for (int i = 0; i < exp; ++i) {
            if (r > std::numeric_limits<std::uint64_t>::max() / base) {
                throw Error(Errc::BadParameter, "cascade counts overflow 64 bits");
            }
            r *= base;
        }
        return r;
    };
    power(denominator, length);  // total mass must fit
    std::vector<std::uint64_t> counts(std::size_t{1} << length);
    for (std::size_t code = 0; code < counts.size(); ++code) {
        const int ones = std::popcount(code);
        counts[code] = power(numerator, length - ones) * power(other, ones);
    }
    std::ostringstream label;
    label << "cascade:" << numerator << "/" << denominator;
    return WordDistribution(length, 1, std::move(counts), label.str());
}

}  // namespace symdyn
