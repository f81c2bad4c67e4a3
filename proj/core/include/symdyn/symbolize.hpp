#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "symdyn/ingest.hpp"

namespace symdyn {

/// Word lengths are capped so a dense count array of 2^L cells stays tractable.
inline constexpr int kMaxWordLength = 24;

using Symbol = std::uint8_t;

/// Binary coarse-graining of a return series.
class SymbolSequence {
public:
    SymbolSequence() = default;
    /// Throws BadParameter if any element is outside {0,1}.
    explicit SymbolSequence(std::vector<Symbol> symbols, std::string provenance = "empirical");

    [[nodiscard]] std::span<const Symbol> symbols() const noexcept { return symbols_; }
    [[nodiscard]] std::size_t size() const noexcept { return symbols_.size(); }
    [[nodiscard]] bool empty() const noexcept { return symbols_.empty(); }
    [[nodiscard]] Symbol operator[](std::size_t i) const noexcept { return symbols_[i]; }
    [[nodiscard]] const std::string& provenance() const noexcept { return provenance_; }

    /// '0'/'1' characters, one per symbol.
    [[nodiscard]] std::string to_string() const;
    /// Inverse of to_string; whitespace is ignored, anything else throws ParseError.
    [[nodiscard]] static SymbolSequence from_string(std::string_view text, std::string provenance = "empirical");

    friend bool operator==(const SymbolSequence& a, const SymbolSequence& b) noexcept {
        return a.symbols_ == b.symbols_;
    }

private:
    std::vector<Symbol> symbols_;
    std::string provenance_ = "empirical";
};

/// A length-L block of symbols. Bit l = 1 is the most significant position, so the
/// integer code of a word is its bits read as a big-endian binary number.
class Word {
public:
    /// Throws LTooLarge / BadParameter on an invalid length or non-binary bit.
    explicit Word(std::span<const Symbol> bits);
    /// Word whose big-endian integer reading is `code`. Throws InvalidCode if code >= 2^L.
    [[nodiscard]] static Word from_code(std::uint32_t code, int length);

    [[nodiscard]] int length() const noexcept { return length_; }
    [[nodiscard]] std::uint32_t code() const noexcept { return code_; }
    /// Symbol at 0-based position i (position 0 carries weight 1/2).
    [[nodiscard]] Symbol operator[](int i) const noexcept {
        return static_cast<Symbol>((code_ >> (length_ - 1 - i)) & 1U);
    }
    [[nodiscard]] std::vector<Symbol> bits() const;
    /// "0,1,1" by default; an empty separator gives "011".
    [[nodiscard]] std::string to_string(std::string_view separator = ",") const;

    friend bool operator==(const Word&, const Word&) = default;

private:
    Word(std::uint32_t code, int length) noexcept : code_(code), length_(length) {}

    std::uint32_t code_ = 0;
    int length_ = 0;
};

/// The dyadic fraction numerator / 2^L labelling a word.
class WordCode {
public:
    /// Throws InvalidCode unless numerator < 2^length.
    WordCode(std::uint32_t numerator, int length);
    /// Throws InvalidCode unless value * 2^length is an integer in [0, 2^length).
    [[nodiscard]] static WordCode from_fraction(double value, int length);

    [[nodiscard]] std::uint32_t numerator() const noexcept { return numerator_; }
    [[nodiscard]] int length() const noexcept { return length_; }
    [[nodiscard]] double value() const noexcept;

    friend bool operator==(const WordCode&, const WordCode&) = default;

private:
    std::uint32_t numerator_;
    int length_;
};

enum class TiePolicy { ZeroAsZero, ZeroAsOne };

/// r > 0 maps to 1, r < 0 to 0, r == 0 per policy. Throws EmptyInput.
[[nodiscard]] SymbolSequence binarize(const ReturnSeries& returns, TiePolicy policy = TiePolicy::ZeroAsZero);
[[nodiscard]] SymbolSequence binarize(std::span<const double> returns, TiePolicy policy = TiePolicy::ZeroAsZero);

/// Number of windows R = floor((N - L) / stride) + 1, or 0 when N < L.
[[nodiscard]] std::size_t window_count(std::size_t n, int length, int stride) noexcept;

/// Sliding windows starting at 0, stride, 2*stride, ... Throws SequenceTooShort when N < L.
[[nodiscard]] std::vector<Word> windows(const SymbolSequence& seq, int length, int stride = 1);

/// Integer codes of the sliding windows, without materializing Word objects.
[[nodiscard]] std::vector<std::uint32_t> window_codes(const SymbolSequence& seq, int length, int stride = 1);

[[nodiscard]] WordCode encode_fraction(const Word& word) noexcept;
[[nodiscard]] Word decode_fraction(const WordCode& code);

/// All 2^L words in ascending code order. Throws LTooLarge above kMaxWordLength.
[[nodiscard]] std::vector<Word> enumerate_words(int length);

/// Throws LTooLarge / BadParameter unless 1 <= length <= kMaxWordLength.
void check_word_length(int length);

}  // namespace symdyn
