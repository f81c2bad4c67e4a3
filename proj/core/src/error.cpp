#include "symdyn/error.hpp"

namespace symdyn {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::FileNotFound: return "FileNotFound";
        case Errc::ParseError: return "ParseError";
        case Errc::NonMonotonicTimestamps: return "NonMonotonicTimestamps";
        case Errc::EmptyInput: return "EmptyInput";
        case Errc::TooShort: return "TooShort";
        case Errc::SequenceTooShort: return "SequenceTooShort";
        case Errc::BucketTooSmall: return "BucketTooSmall";
        case Errc::InvalidCode: return "InvalidCode";
        case Errc::LTooLarge: return "LTooLarge";
        case Errc::BadParameter: return "BadParameter";
        case Errc::InsufficientCounts: return "InsufficientCounts";
        case Errc::TooFewValues: return "TooFewValues";
        case Errc::ZeroBaselineIQR: return "ZeroBaselineIQR";
        case Errc::ConstantSeries: return "ConstantSeries";
        case Errc::SingularDesignMatrix: return "SingularDesignMatrix";
        case Errc::EmptyDistribution: return "EmptyDistribution";
        case Errc::EmptyGrid: return "EmptyGrid";
        case Errc::TooFewScales: return "TooFewScales";
        case Errc::DegenerateRegression: return "DegenerateRegression";
        case Errc::GridMismatch: return "GridMismatch";
    }
    return "Unknown";
}

ErrorCategory error_category(Errc code) noexcept {
    switch (code) {
        case Errc::FileNotFound:
        case Errc::ParseError:
        case Errc::NonMonotonicTimestamps:
        case Errc::EmptyInput:
        case Errc::TooShort:
        case Errc::SequenceTooShort:
            return ErrorCategory::Input;
        case Errc::BucketTooSmall:
        case Errc::InvalidCode:
        case Errc::LTooLarge:
        case Errc::BadParameter:
        case Errc::EmptyGrid:
        case Errc::TooFewScales:
        case Errc::GridMismatch:
        case Errc::TooFewValues:
            return ErrorCategory::Parameter;
        case Errc::InsufficientCounts:
        case Errc::ZeroBaselineIQR:
        case Errc::ConstantSeries:
        case Errc::SingularDesignMatrix:
        case Errc::EmptyDistribution:
        case Errc::DegenerateRegression:
            return ErrorCategory::Numerical;
    }
    return ErrorCategory::Numerical;
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

Error::Error(Errc code, std::size_t line, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + " (line " + std::to_string(line) +
                         "): " + message),
      code_(code),
      line_(line) {}

}  // namespace symdyn
