#include "symdyn/symbolize.hpp"

#include <cmath>

#include "symdyn/error.hpp"

namespace symdyn {

void check_word_length(int length) {
    if (length > kMaxWordLength) {
        throw Error(Errc::LTooLarge, "word length " + std::to_string(length) + " exceeds " +
                                         std::to_string(kMaxWordLength));
    }
    if (length < 1) {
        throw Error(Errc::BadParameter, "word length must be at least 1");
    }
}

SymbolSequence::SymbolSequence(std::vector<Symbol> symbols, std::string provenance)
    : symbols_(std::move(symbols)), provenance_(std::move(provenance)) {
    for (Symbol s : symbols_) {
        if (s > 1) {
            throw Error(Errc::BadParameter, "symbol outside {0,1}");
        }
    }
}

std::string SymbolSequence::to_string() const {
    std::string out(symbols_.size(), '0');
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        out[i] = static_cast<char>('0' + symbols_[i]);
    }
    return out;
}

SymbolSequence SymbolSequence::from_string(std::string_view text, std::string provenance) {
    std::vector<Symbol> symbols;
    symbols.reserve(text.size());
    std::size_t line = 1;
    for (char c : text) {
        if (c == '0' || c == '1') {
            symbols.push_back(static_cast<Symbol>(c - '0'));
        } else if (c == '\n') {
            ++line;
        } else if (c != ' ' && c != '\r' && c != '\t') {
            throw Error(Errc::ParseError, line, std::string("unexpected character '") + c + "' in symbol stream");
        }
    }
    return SymbolSequence(std::move(symbols), std::move(provenance));
}

Word::Word(std::span<const Symbol> bits) : length_(static_cast<int>(bits.size())) {
    check_word_length(length_);
    for (Symbol b : bits) {
        if (b > 1) {
            throw Error(Errc::BadParameter, "word bit outside {0,1}");
        }
        code_ = (code_ << 1) | b;
    }
}

Word Word::from_code(std::uint32_t code, int length) {
    check_word_length(length);
    if (code >= (std::uint32_t{1} << length)) {
        throw Error(Errc::InvalidCode, "code does not fit in " + std::to_string(length) + " bits");
    }
    return Word(code, length);
}

std::vector<Symbol> Word::bits() const {
    std::vector<Symbol> out(static_cast<std::size_t>(length_));
    for (int i = 0; i < length_; ++i) {
        out[static_cast<std::size_t>(i)] = (*this)[i];
    }
    return out;
}

std::string Word::to_string(std::string_view separator) const {
    std::string out;
    for (int i = 0; i < length_; ++i) {
        if (i > 0) {
            out.append(separator);
        }
        out.push_back(static_cast<char>('0' + (*this)[i]));
    }
    return out;
}

WordCode::WordCode(std::uint32_t numerator, int length) : numerator_(numerator), length_(length) {
    check_word_length(length);
    if (numerator >= (std::uint32_t{1} << length)) {
        throw Error(Errc::InvalidCode, "numerator must be below 2^L");
    }
}

WordCode WordCode::from_fraction(double value, int length) {
    check_word_length(length);
    const double scaled = std::ldexp(value, length);
    if (!(scaled >= 0.0) || scaled >= std::ldexp(1.0, length) || scaled != std::floor(scaled)) {
        throw Error(Errc::InvalidCode, "value * 2^L is not an integer in [0, 2^L)");
    }
    return WordCode(static_cast<std::uint32_t>(scaled), length);
}

double WordCode::value() const noexcept {
    return std::ldexp(static_cast<double>(numerator_), -length_);
}

SymbolSequence binarize(std::span<const double> returns, TiePolicy policy) {
    if (returns.empty()) {
        throw Error(Errc::EmptyInput, "no returns to binarize");
    }
    const Symbol tie = policy == TiePolicy::ZeroAsOne ? 1 : 0;
    std::vector<Symbol> symbols(returns.size());
    for (std::size_t i = 0; i < returns.size(); ++i) {
        const double r = returns[i];
        symbols[i] = r > 0.0 ? 1 : (r < 0.0 ? 0 : tie);
    }
    return SymbolSequence(std::move(symbols));
}

SymbolSequence binarize(const ReturnSeries& returns, TiePolicy policy) {
    return binarize(returns.returns(), policy);
}

std::size_t window_count(std::size_t n, int length, int stride) noexcept {
    const auto l = static_cast<std::size_t>(length);
    if (length < 1 || stride < 1 || n < l) {
        return 0;
    }
    return (n - l) / static_cast<std::size_t>(stride) + 1;
}

namespace {

void check_window_args(const SymbolSequence& seq, int length, int stride) {
    check_word_length(length);
    if (stride < 1) {
        throw Error(Errc::BadParameter, "stride must be positive");
    }
    if (seq.size() < static_cast<std::size_t>(length)) {
        throw Error(Errc::SequenceTooShort, "sequence of " + std::to_string(seq.size()) +
                                                " symbols is shorter than L=" + std::to_string(length));
    }
}

}  // namespace

std::vector<std::uint32_t> window_codes(const SymbolSequence& seq, int length, int stride) {
    check_window_args(seq, length, stride);
    const auto s = seq.symbols();
    const std::size_t r = window_count(s.size(), length, stride);
    std::vector<std::uint32_t> codes(r);
    const std::uint32_t mask = (std::uint32_t{1} << length) - 1;
    if (stride == 1) {
        std::uint32_t code = 0;
        for (int i = 0; i < length - 1; ++i) {
            code = (code << 1) | s[static_cast<std::size_t>(i)];
        }
        for (std::size_t j = 0; j < r; ++j) {
            code = ((code << 1) | s[j + static_cast<std::size_t>(length) - 1]) & mask;
            codes[j] = code;
        }
        return codes;
    }
    for (std::size_t j = 0; j < r; ++j) {
        const std::size_t start = j * static_cast<std::size_t>(stride);
        std::uint32_t code = 0;
        for (int i = 0; i < length; ++i) {
            code = (code << 1) | s[start + static_cast<std::size_t>(i)];
        }
        codes[j] = code;
    }
    return codes;
}

std::vector<Word> windows(const SymbolSequence& seq, int length, int stride) {
    const auto codes = window_codes(seq, length, stride);
    std::vector<Word> out;
    out.reserve(codes.size());
    for (auto c : codes) {
        out.push_back(Word::from_code(c, length));
    }
    return out;
}

WordCode encode_fraction(const Word& word) noexcept {
    return WordCode(word.code(), word.length());
}

Word decode_fraction(const WordCode& code) {
    return Word::from_code(code.numerator(), code.length());
}

std::vector<Word> enumerate_words(int length) {
    check_word_length(length);
    const std::uint32_t count = std::uint32_t{1} << length;
    std::vector<Word> out;
    out.reserve(count);
    for (std::uint32_t c = 0; c < count; ++c) {
        out.push_back(Word::from_code(c, length));
    }
    return out;
}

}  // namespace symdyn
