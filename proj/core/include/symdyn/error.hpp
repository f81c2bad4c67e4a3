#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace symdyn {

/// Failure kinds raised by the library. The CLI maps each kind onto an exit code
/// through error_category().
enum class Errc {
    FileNotFound,
    ParseError,
    NonMonotonicTimestamps,
    EmptyInput,
    TooShort,
    SequenceTooShort,
    BucketTooSmall,
    InvalidCode,
    LTooLarge,
    BadParameter,
    InsufficientCounts,
    TooFewValues,
    ZeroBaselineIQR,
    ConstantSeries,
    SingularDesignMatrix,
    EmptyDistribution,
    EmptyGrid,
    TooFewScales,
    DegenerateRegression,
    GridMismatch,
};

enum class ErrorCategory { Input, Parameter, Numerical };

[[nodiscard]] std::string_view to_string(Errc code) noexcept;
[[nodiscard]] ErrorCategory error_category(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message);
    /// ParseError carries the 1-based file line of the offending row.
    Error(Errc code, std::size_t line, const std::string& message);

    [[nodiscard]] Errc code() const noexcept { return code_; }
    [[nodiscard]] std::optional<std::size_t> line() const noexcept { return line_; }

private:
    Errc code_;
    std::optional<std::size_t> line_;
};

}  // namespace symdyn
