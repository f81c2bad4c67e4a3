#include "symdyn/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "symdyn/error.hpp"

namespace symdyn {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
        s = s.substr(1, s.size() - 2);
    }
    return s;
}

std::vector<std::string_view> split(std::string_view line, char delimiter) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(delimiter, start);
        if (pos == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            break;
        }
        fields.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return fields;
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc{} && ptr == end && !text.empty();
}

bool is_integer_literal(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        s.remove_prefix(1);
    }
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

Instant parse_timestamp(std::string_view field, const FormatConfig& config) {
    TimestampFormat format = config.timestamp_format;
    if (format == TimestampFormat::Auto) {
        format = TimestampFormat::Iso8601;
        if (is_integer_literal(field)) {
            std::int64_t v = 0;
            if (!parse_number(field, v)) {
                throw Error(Errc::BadParameter, "integer timestamp out of range");
            }
            format = std::llabs(v) < 100'000'000'000LL ? TimestampFormat::EpochSeconds
                                                       : TimestampFormat::EpochMillis;
        }
    }
    switch (format) {
        case TimestampFormat::EpochSeconds:
        case TimestampFormat::EpochMillis: {
            std::int64_t v = 0;
            if (!parse_number(field, v)) {
                throw Error(Errc::BadParameter, "unparsable epoch timestamp '" + std::string(field) + "'");
            }
            if (format == TimestampFormat::EpochSeconds) {
                return Instant{std::chrono::seconds{v}};
            }
            return Instant{Duration{v}};
        }
        case TimestampFormat::Iso8601:
        case TimestampFormat::Auto:
            break;
    }
    return parse_iso8601(field, config.tz_offset);
}

// Reads exactly `width` digits from the front of s.
bool take_digits(std::string_view& s, std::size_t width, int& out) {
    if (s.size() < width) {
        return false;
    }
    out = 0;
    for (std::size_t i = 0; i < width; ++i) {
        if (s[i] < '0' || s[i] > '9') {
            return false;
        }
        out = out * 10 + (s[i] - '0');
    }
    s.remove_prefix(width);
    return true;
}

bool take_char(std::string_view& s, char c) {
    if (!s.empty() && s.front() == c) {
        s.remove_prefix(1);
        return true;
    }
    return false;
}

}  // namespace

PriceSeries::PriceSeries(std::vector<Instant> timestamps, std::vector<double> prices,
                         std::string scale_label)
    : timestamps_(std::move(timestamps)), prices_(std::move(prices)), scale_label_(std::move(scale_label)) {
    if (timestamps_.size() != prices_.size()) {
        throw Error(Errc::BadParameter, "timestamps and prices differ in length");
    }
    for (std::size_t i = 0; i < prices_.size(); ++i) {
        if (!(prices_[i] > 0.0) || !std::isfinite(prices_[i])) {
            throw Error(Errc::BadParameter, "price at index " + std::to_string(i) + " is not a positive real");
        }
        if (i > 0 && !(timestamps_[i - 1] < timestamps_[i])) {
            throw Error(Errc::NonMonotonicTimestamps,
                        "timestamp at index " + std::to_string(i) + " does not increase");
        }
    }
}

ReturnSeries::ReturnSeries(std::vector<Instant> timestamps, std::vector<double> returns,
                           std::string source_scale)
    : timestamps_(std::move(timestamps)), returns_(std::move(returns)), source_scale_(std::move(source_scale)) {
    if (timestamps_.size() != returns_.size()) {
        throw Error(Errc::BadParameter, "timestamps and returns differ in length");
    }
    for (double r : returns_) {
        if (!std::isfinite(r)) {
            throw Error(Errc::BadParameter, "non-finite return");
        }
    }
}

Instant parse_iso8601(std::string_view text, std::chrono::minutes default_offset) {
    using namespace std::chrono;
    std::string_view s = text;
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0, millis = 0;
    const auto fail = [&]() -> Error {
        return Error(Errc::BadParameter, "malformed ISO-8601 timestamp '" + std::string(text) + "'");
    };
    if (!take_digits(s, 4, y) || !take_char(s, '-') || !take_digits(s, 2, mo) || !take_char(s, '-') ||
        !take_digits(s, 2, d)) {
        throw fail();
    }
    const year_month_day date{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!date.ok()) {
        throw fail();
    }
    if (take_char(s, 'T') || take_char(s, ' ')) {
        if (!take_digits(s, 2, h) || !take_char(s, ':') || !take_digits(s, 2, mi)) {
            throw fail();
        }
        if (take_char(s, ':')) {
            if (!take_digits(s, 2, sec)) {
                throw fail();
            }
            if (take_char(s, '.')) {
                // Fractional seconds: keep millisecond precision, ignore the rest.
                int scale = 100;
                if (s.empty() || s.front() < '0' || s.front() > '9') {
                    throw fail();
                }
                while (!s.empty() && s.front() >= '0' && s.front() <= '9') {
                    millis += (s.front() - '0') * scale;
                    scale /= 10;
                    s.remove_prefix(1);
                }
            }
        }
        if (h > 23 || mi > 59 || sec > 60) {
            throw fail();
        }
    }
    minutes offset = default_offset;
    if (take_char(s, 'Z')) {
        offset = minutes{0};
    } else if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        const int sign = s.front() == '-' ? -1 : 1;
        s.remove_prefix(1);
        int oh = 0, om = 0;
        if (!take_digits(s, 2, oh)) {
            throw fail();
        }
        take_char(s, ':');
        if (!s.empty() && !take_digits(s, 2, om)) {
            throw fail();
        }
        offset = minutes{sign * (oh * 60 + om)};
    }
    if (!s.empty()) {
        throw fail();
    }
    const auto local = sys_days{date} + hours{h} + minutes{mi} + seconds{sec} + milliseconds{millis};
    return time_point_cast<Duration>(local - offset);
}

Duration parse_duration(std::string_view text) {
    using namespace std::chrono;
    text = trim(text);
    std::size_t digits = 0;
    while (digits < text.size() && text[digits] >= '0' && text[digits] <= '9') {
        ++digits;
    }
    std::int64_t amount = 0;
    if (digits == 0 || !parse_number(text.substr(0, digits), amount)) {
        throw Error(Errc::BadParameter, "malformed duration '" + std::string(text) + "'");
    }
    const auto unit = text.substr(digits);
    Duration result{};
    if (unit.empty() || unit == "s") {
        result = seconds{amount};
    } else if (unit == "ms") {
        result = milliseconds{amount};
    } else if (unit == "m" || unit == "min") {
        result = minutes{amount};
    } else if (unit == "h") {
        result = hours{amount};
    } else if (unit == "d") {
        result = days{amount};
    } else {
        throw Error(Errc::BadParameter, "unknown duration unit '" + std::string(unit) + "'");
    }
    if (result <= Duration::zero()) {
        throw Error(Errc::BadParameter, "duration must be positive");
    }
    return result;
}

PriceSeries parse_price_series(std::string_view text, const FormatConfig& config) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    const auto next_line = [&](std::string_view& line) {
        if (pos >= text.size()) {
            return false;
        }
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        return true;
    };

    std::string_view line;
    if (!next_line(line)) {
        throw Error(Errc::ParseError, 1, "missing header row");
    }
    const auto header = split(line, config.delimiter);
    const auto column = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            throw Error(Errc::ParseError, 1, "header has no column '" + name + "'");
        }
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t time_idx = column(config.time_column);
    const std::size_t price_idx = column(config.price_column);

    struct Row {
        Instant t;
        double p;
        std::size_t line;
    };
    std::vector<Row> rows;
    while (next_line(line)) {
        if (trim(line).empty()) {
            continue;
        }
        const auto fields = split(line, config.delimiter);
        if (fields.size() <= std::max(time_idx, price_idx)) {
            throw Error(Errc::ParseError, line_no, "too few fields");
        }
        double price = 0.0;
        if (!parse_number(fields[price_idx], price) || !std::isfinite(price)) {
            throw Error(Errc::ParseError, line_no, "unparsable price '" + std::string(fields[price_idx]) + "'");
        }
        if (!(price > 0.0)) {
            throw Error(Errc::ParseError, line_no, "non-positive price");
        }
        Instant t;
        try {
            t = parse_timestamp(fields[time_idx], config);
        } catch (const Error& e) {
            throw Error(Errc::ParseError, line_no, e.what());
        }
        rows.push_back({t, price, line_no});
    }

    if (config.sort) {
        std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.t < b.t; });
    }
    std::vector<Instant> timestamps;
    std::vector<double> prices;
    timestamps.reserve(rows.size());
    prices.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0 && !(rows[i - 1].t < rows[i].t)) {
            throw Error(Errc::NonMonotonicTimestamps,
                        "timestamp on line " + std::to_string(rows[i].line) + " does not increase");
        }
        timestamps.push_back(rows[i].t);
        prices.push_back(rows[i].p);
    }
    return PriceSeries(std::move(timestamps), std::move(prices), config.scale_label);
}

PriceSeries load_price_series(const std::filesystem::path& path, const FormatConfig& config) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::FileNotFound, path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_price_series(buffer.str(), config);
}

Duration native_spacing(const PriceSeries& series) {
    const auto ts = series.timestamps();
    if (ts.size() < 2) {
        return Duration::zero();
    }
    Duration spacing = Duration::max();
    for (std::size_t i = 1; i < ts.size(); ++i) {
        spacing = std::min(spacing, ts[i] - ts[i - 1]);
    }
    return spacing;
}

PriceSeries resample(const PriceSeries& series, Duration bucket) {
    if (series.empty()) {
        throw Error(Errc::EmptyInput, "cannot resample an empty series");
    }
    if (bucket <= Duration::zero()) {
        throw Error(Errc::BadParameter, "bucket must be positive");
    }
    if (bucket < native_spacing(series)) {
        throw Error(Errc::BucketTooSmall, "bucket is shorter than the native spacing");
    }
    const auto ts = series.timestamps();
    const auto ps = series.prices();
    const auto width = bucket.count();
    // Bucket k covers (k*width - width, k*width]: index is the ceiling of t/width.
    const auto bucket_of = [width](Instant t) {
        const auto v = t.time_since_epoch().count();
        auto q = v / width;
        if (v % width != 0 && v > 0) {
            ++q;
        }
        return q;
    };
    std::vector<Instant> out_t;
    std::vector<double> out_p;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const auto k = bucket_of(ts[i]);
        const bool last_in_bucket = i + 1 == ts.size() || bucket_of(ts[i + 1]) != k;
        if (last_in_bucket) {
            out_t.emplace_back(Duration{k * width});
            out_p.push_back(ps[i]);
        }
    }
    return PriceSeries(std::move(out_t), std::move(out_p), series.scale_label());
}

ReturnSeries log_returns(const PriceSeries& series) {
    if (series.size() < 2) {
        throw Error(Errc::TooShort, "log returns need at least two prices");
    }
    const auto ts = series.timestamps();
    const auto ps = series.prices();
    std::vector<Instant> out_t(ts.begin() + 1, ts.end());
    std::vector<double> returns(ps.size() - 1);
    for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
        returns[i] = std::log(ps[i + 1]) - std::log(ps[i]);
    }
    return ReturnSeries(std::move(out_t), std::move(returns), series.scale_label());
}

}  // namespace symdyn
