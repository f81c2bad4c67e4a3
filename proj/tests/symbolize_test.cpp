#include <random>
#include <set>

#include "test_support.hpp"

using namespace symdyn;

namespace {

// Independent evaluation of the fractional code: sum_l bit_l 2^-l.
double naive_fraction(const std::vector<Symbol>& bits) {
    double v = 0.0;
    double w = 0.5;
    for (Symbol b : bits) {
        v += b * w;
        w /= 2.0;
    }
    return v;
}

Word word(std::initializer_list<int> bits) {
    std::vector<Symbol> b;
    for (int x : bits) {
        b.push_back(static_cast<Symbol>(x));
    }
    return Word(b);
}

}  // namespace

TEST(Binarize, SignMapping) {
    const std::vector<double> r{-0.1, 0.2, -0.3};
    EXPECT_EQ(binarize(r).to_string(), "010");
}

TEST(Binarize, TiePolicy) {
    const std::vector<double> zero{0.0};
    EXPECT_EQ(binarize(zero, TiePolicy::ZeroAsZero).to_string(), "0");
    EXPECT_EQ(binarize(zero, TiePolicy::ZeroAsOne).to_string(), "1");
    EXPECT_EQ(binarize(zero).to_string(), "0");
}

TEST(Binarize, EmptyInput) {
    EXPECT_SYMDYN_ERROR(binarize(std::span<const double>{}), Errc::EmptyInput);
}

TEST(Binarize, GaussianSymmetry) {
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> normal;
    std::vector<double> r(100'000);
    for (auto& x : r) {
        x = normal(rng);
    }
    const auto seq = binarize(r);
    ASSERT_EQ(seq.size(), r.size());
    std::size_t ones = 0;
    for (Symbol s : seq.symbols()) {
        ASSERT_LE(s, 1);
        ones += s;
    }
    EXPECT_NEAR(static_cast<double>(ones) / static_cast<double>(r.size()), 0.5, 0.01);
}

TEST(SymbolSequence, TextRoundTrip) {
    const auto seq = SymbolSequence::from_string("0110\n10 1");
    EXPECT_EQ(seq.to_string(), "0110101");
    EXPECT_EQ(seq.provenance(), "empirical");
    EXPECT_SYMDYN_ERROR(SymbolSequence::from_string("012"), Errc::ParseError);
}

TEST(Windows, SingleWindow) {
    const auto w = windows(SymbolSequence::from_string("011"), 3);
    ASSERT_EQ(w.size(), 1U);
    EXPECT_EQ(w[0], word({0, 1, 1}));
}

TEST(Windows, Enumeration) {
    const auto w = windows(SymbolSequence::from_string("0110"), 2);
    ASSERT_EQ(w.size(), 3U);
    EXPECT_EQ(w[0], word({0, 1}));
    EXPECT_EQ(w[1], word({1, 1}));
    EXPECT_EQ(w[2], word({1, 0}));
}

TEST(Windows, CountMatchesNaiveLoop) {
    const auto seq = random_baseline(10'000, 3, baseline::IidCoin{});
    for (int stride : {1, 2, 5, 7}) {
        std::size_t naive = 0;
        for (std::size_t start = 0; start + 6 <= seq.size(); start += static_cast<std::size_t>(stride)) {
            ++naive;
        }
        EXPECT_EQ(windows(seq, 6, stride).size(), naive);
        EXPECT_EQ(window_count(seq.size(), 6, stride), naive);
    }
    EXPECT_EQ(windows(seq, 6).size(), 9995U);
}

TEST(Windows, OverlapAndCodes) {
    const auto seq = random_baseline(500, 8, baseline::IidCoin{});
    const int l = 7;
    const auto w = windows(seq, l);
    const auto codes = window_codes(seq, l);
    ASSERT_EQ(w.size(), seq.size() - l + 1);
    for (std::size_t j = 0; j < w.size(); ++j) {
        EXPECT_EQ(w[j].code(), codes[j]);
        for (int i = 0; i < l; ++i) {
            ASSERT_EQ(w[j][i], seq[j + static_cast<std::size_t>(i)]);
        }
        if (j > 0) {
            for (int i = 0; i + 1 < l; ++i) {
                ASSERT_EQ(w[j - 1][i + 1], w[j][i]);
            }
        }
    }
    const auto strided = window_codes(seq, l, 3);
    for (std::size_t j = 0; j < strided.size(); ++j) {
        EXPECT_EQ(strided[j], codes[3 * j]);
    }
}

TEST(Windows, Errors) {
    EXPECT_SYMDYN_ERROR(windows(SymbolSequence::from_string("01"), 3), Errc::SequenceTooShort);
    EXPECT_SYMDYN_ERROR(windows(SymbolSequence::from_string("0101"), 2, 0), Errc::BadParameter);
    EXPECT_SYMDYN_ERROR(windows(SymbolSequence::from_string("0101"), 25), Errc::LTooLarge);
}

TEST(EncodeFraction, LengthThreeList) {
    EXPECT_EQ(encode_fraction(word({0, 0, 1})).value(), 0.125);
    EXPECT_EQ(encode_fraction(word({0, 1, 1})).value(), 0.375);
    EXPECT_EQ(encode_fraction(word({1, 0, 1})).value(), 0.625);
    for (int l = 1; l <= 24; ++l) {
        EXPECT_EQ(encode_fraction(Word(std::vector<Symbol>(static_cast<std::size_t>(l), 0))).value(), 0.0);
    }
}

TEST(EncodeFraction, ExhaustiveLength8) {
    std::set<double> seen;
    for (const auto& w : enumerate_words(8)) {
        const double v = encode_fraction(w).value();
        EXPECT_EQ(v, naive_fraction(w.bits()));
        EXPECT_EQ(v * 256.0, std::floor(v * 256.0));
        seen.insert(v);
    }
    EXPECT_EQ(seen.size(), 256U);
}

TEST(DecodeFraction, Examples) {
    EXPECT_EQ(decode_fraction(WordCode::from_fraction(0.125, 3)), word({0, 0, 1}));
    EXPECT_EQ(decode_fraction(WordCode::from_fraction(0.0, 5)), word({0, 0, 0, 0, 0}));
    EXPECT_SYMDYN_ERROR(WordCode::from_fraction(0.1, 3), Errc::InvalidCode);
    EXPECT_SYMDYN_ERROR(WordCode::from_fraction(1.0, 3), Errc::InvalidCode);
    EXPECT_SYMDYN_ERROR(WordCode::from_fraction(-0.125, 3), Errc::InvalidCode);
    EXPECT_SYMDYN_ERROR(WordCode(8, 3), Errc::InvalidCode);
    EXPECT_SYMDYN_ERROR(Word::from_code(4, 2), Errc::InvalidCode);
}

TEST(DecodeFraction, ExhaustiveRoundTrip) {
    for (int l = 1; l <= 16; ++l) {
        const std::uint32_t n = std::uint32_t{1} << l;
        for (std::uint32_t k = 0; k < n; ++k) {
            const auto w = Word::from_code(k, l);
            const auto c = encode_fraction(w);
            ASSERT_EQ(decode_fraction(c), w);
            ASSERT_EQ(WordCode::from_fraction(c.value(), l).numerator(), k);
        }
    }
}

TEST(EnumerateWords, Counts) {
    EXPECT_EQ(enumerate_words(3).size(), 8U);
    const auto one = enumerate_words(1);
    ASSERT_EQ(one.size(), 2U);
    EXPECT_EQ(one[0], word({0}));
    EXPECT_EQ(one[1], word({1}));
    const auto ten = enumerate_words(10);
    std::set<std::uint32_t> codes;
    for (std::size_t i = 0; i < ten.size(); ++i) {
        EXPECT_EQ(ten[i].code(), i);
        codes.insert(ten[i].code());
    }
    EXPECT_EQ(codes.size(), 1024U);
    EXPECT_SYMDYN_ERROR(enumerate_words(25), Errc::LTooLarge);
}

TEST(Word, Rendering) {
    const auto w = word({1, 0, 1});
    EXPECT_EQ(w.to_string(), "1,0,1");
    EXPECT_EQ(w.to_string(""), "101");
    EXPECT_EQ(w.code(), 5U);
    EXPECT_EQ(w.length(), 3);
}
