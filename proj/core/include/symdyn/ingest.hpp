#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace symdyn {

/// Epoch instants are kept at millisecond resolution in UTC.
using Duration = std::chrono::milliseconds;
using Instant = std::chrono::sys_time<Duration>;

/// Price levels on a strictly increasing time axis.
class PriceSeries {
public:
    PriceSeries() = default;
    /// Throws NonMonotonicTimestamps, BadParameter (non-positive price) or
    /// BadParameter (length mismatch).
    PriceSeries(std::vector<Instant> timestamps, std::vector<double> prices,
                std::string scale_label = {});

    [[nodiscard]] std::span<const Instant> timestamps() const noexcept { return timestamps_; }
    [[nodiscard]] std::span<const double> prices() const noexcept { return prices_; }
    [[nodiscard]] const std::string& scale_label() const noexcept { return scale_label_; }
    [[nodiscard]] std::size_t size() const noexcept { return prices_.size(); }
    [[nodiscard]] bool empty() const noexcept { return prices_.empty(); }

    friend bool operator==(const PriceSeries&, const PriceSeries&) = default;

private:
    std::vector<Instant> timestamps_;
    std::vector<double> prices_;
    std::string scale_label_;
};

/// Natural-log differences of a PriceSeries, stamped at the later leg.
class ReturnSeries {
public:
    ReturnSeries() = default;
    ReturnSeries(std::vector<Instant> timestamps, std::vector<double> returns,
                 std::string source_scale = {});

    [[nodiscard]] std::span<const Instant> timestamps() const noexcept { return timestamps_; }
    [[nodiscard]] std::span<const double> returns() const noexcept { return returns_; }
    [[nodiscard]] const std::string& source_scale() const noexcept { return source_scale_; }
    [[nodiscard]] std::size_t size() const noexcept { return returns_.size(); }
    [[nodiscard]] bool empty() const noexcept { return returns_.empty(); }

private:
    std::vector<Instant> timestamps_;
    std::vector<double> returns_;
    std::string source_scale_;
};

enum class TimestampFormat {
    Auto,          ///< integers below 1e11 are seconds, larger integers millis, else ISO-8601
    EpochSeconds,
    EpochMillis,
    Iso8601,
};

struct FormatConfig {
    std::string time_column = "t";
    std::string price_column = "p";
    char delimiter = ',';
    TimestampFormat timestamp_format = TimestampFormat::Auto;
    /// Applied to ISO-8601 stamps that carry no zone designator: UTC = local - offset.
    std::chrono::minutes tz_offset{0};
    /// Sort rows by timestamp before validating order. Duplicate stamps still fail.
    bool sort = false;
    std::string scale_label;
};

/// Reads a delimited file with a header row. Errors: FileNotFound,
/// ParseError(line, reason) with 1-based file lines, NonMonotonicTimestamps.
[[nodiscard]] PriceSeries load_price_series(const std::filesystem::path& path,
                                            const FormatConfig& config = {});

/// Parses delimited text already in memory; same contract as load_price_series.
[[nodiscard]] PriceSeries parse_price_series(std::string_view text, const FormatConfig& config = {});

/// Parses "2021-03-01T14:30:00Z", "2021-03-01 14:30:00+01:00", "2021-03-01".
/// Throws BadParameter on malformed input.
[[nodiscard]] Instant parse_iso8601(std::string_view text, std::chrono::minutes default_offset = {});

/// Parses a bucket length such as "60", "90s", "5m", "4h", "1d", "250ms".
/// Bare integers are seconds.
[[nodiscard]] Duration parse_duration(std::string_view text);

/// Smallest gap between consecutive timestamps; zero for series shorter than two.
[[nodiscard]] Duration native_spacing(const PriceSeries& series);

/// Close-price resampling. Buckets are the half-open intervals (k*bucket, (k+1)*bucket]
/// aligned to the epoch; each non-empty bucket yields its last price stamped with the
/// bucket end. Empty buckets produce nothing.
[[nodiscard]] PriceSeries resample(const PriceSeries& series, Duration bucket);

[[nodiscard]] ReturnSeries log_returns(const PriceSeries& series);

}  // namespace symdyn
