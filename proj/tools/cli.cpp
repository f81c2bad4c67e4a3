#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "manifest.hpp"
#include "symdyn/symdyn.hpp"

#ifndef SYMDYN_VERSION
#define SYMDYN_VERSION "0.0.0"
#endif

namespace symdyn::cli {

namespace fs = std::filesystem;

namespace {

int parse_int(std::string_view text, std::string_view what) {
    int v = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        throw Error(Errc::BadParameter, "malformed " + std::string(what) + " '" + std::string(text) + "'");
    }
    return v;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::FileNotFound, path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct InputOptions {
    std::string input;
    std::string symbols;
    std::string price_col = "p";
    std::string time_col = "t";
    std::string delimiter = ",";
    std::string time_format = "auto";
    std::string bucket;
    std::string tz_offset = "0";
    bool sort = false;
    std::string tie_policy = "zero_as_0";
};

struct OutputOptions {
    std::string output_dir = ".";
    std::string format = "csv";
};

void add_input_options(CLI::App* sub, InputOptions& o) {
    sub->add_option("--input", o.input, "Delimited price file with a header row");
    sub->add_option("--symbols", o.symbols, "Symbol stream file of '0'/'1' characters (instead of --input)");
    sub->add_option("--price-col", o.price_col, "Price column name");
    sub->add_option("--time-col", o.time_col, "Timestamp column name");
    sub->add_option("--delimiter", o.delimiter, "Field delimiter (single character)");
    sub->add_option("--time-format", o.time_format, "Timestamp format")
        ->check(CLI::IsMember({"auto", "epoch_s", "epoch_ms", "iso8601"}));
    sub->add_option("--bucket", o.bucket, "Resample to close prices per bucket, e.g. 4h, 1d, 300s");
    sub->add_option("--tz-offset", o.tz_offset, "Offset of zone-less ISO timestamps: minutes or +HH:MM");
    sub->add_flag("--sort", o.sort, "Sort rows by timestamp before validation");
    sub->add_option("--tie-policy", o.tie_policy, "Symbol for zero returns")
        ->check(CLI::IsMember({"zero_as_0", "zero_as_1"}));
}

void add_output_options(CLI::App* sub, OutputOptions& o, bool with_format = true) {
    sub->add_option("--output-dir", o.output_dir, "Directory for outputs and the run manifest");
    if (with_format) {
        sub->add_option("--format", o.format, "csv writes CSV plus a JSON sidecar; json writes JSON only")
            ->check(CLI::IsMember({"csv", "json"}));
    }
}

std::chrono::minutes parse_tz_offset(std::string_view text) {
    if (text.empty()) {
        return std::chrono::minutes{0};
    }
    if (text.find(':') == std::string_view::npos) {
        return std::chrono::minutes{parse_int(text, "tz offset")};
    }
    const int sign = text.front() == '-' ? -1 : 1;
    if (text.front() == '+' || text.front() == '-') {
        text.remove_prefix(1);
    }
    const auto colon = text.find(':');
    const int h = parse_int(text.substr(0, colon), "tz offset");
    const int m = parse_int(text.substr(colon + 1), "tz offset");
    return std::chrono::minutes{sign * (h * 60 + m)};
}

TimestampFormat parse_time_format(const std::string& s) {
    if (s == "epoch_s") return TimestampFormat::EpochSeconds;
    if (s == "epoch_ms") return TimestampFormat::EpochMillis;
    if (s == "iso8601") return TimestampFormat::Iso8601;
    return TimestampFormat::Auto;
}

struct LoadedInput {
    SymbolSequence sequence;
    std::string path;
};

LoadedInput load_input(const InputOptions& o) {
    if (o.input.empty() == o.symbols.empty()) {
        throw Error(Errc::BadParameter, "exactly one of --input or --symbols is required");
    }
    if (!o.symbols.empty()) {
        const fs::path path(o.symbols);
        return {SymbolSequence::from_string(read_file(path), "symbols:" + path.filename().string()), o.symbols};
    }
    if (o.delimiter.size() != 1) {
        throw Error(Errc::BadParameter, "--delimiter must be a single character");
    }
    FormatConfig config;
    config.time_column = o.time_col;
    config.price_column = o.price_col;
    config.delimiter = o.delimiter.front();
    config.timestamp_format = parse_time_format(o.time_format);
    config.tz_offset = parse_tz_offset(o.tz_offset);
    config.sort = o.sort;
    config.scale_label = o.bucket.empty() ? "native" : o.bucket;
    auto prices = load_price_series(o.input, config);
    if (!o.bucket.empty()) {
        prices = resample(prices, parse_duration(o.bucket));
    }
    const auto policy = o.tie_policy == "zero_as_1" ? TiePolicy::ZeroAsOne : TiePolicy::ZeroAsZero;
    const auto returns = log_returns(prices);
    const auto binary = binarize(returns, policy);
    const auto label = "prices:" + fs::path(o.input).filename().string() + "@" + config.scale_label;
    return {SymbolSequence(std::vector<Symbol>(binary.symbols().begin(), binary.symbols().end()), label), o.input};
}

/// Collects written files for the manifest.
class OutputSink {
public:
    explicit OutputSink(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

    void write(const std::string& name, const std::string& content) {
        std::ofstream f(dir_ / name, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw Error(Errc::FileNotFound, "cannot write " + (dir_ / name).string());
        }
        f << content;
        if (!f.flush()) {
            throw Error(Errc::FileNotFound, "cannot write " + (dir_ / name).string());
        }
        files_.push_back({name, sha256_hex(content)});
    }

    [[nodiscard]] const fs::path& dir() const noexcept { return dir_; }
    [[nodiscard]] const std::vector<OutputFile>& files() const noexcept { return files_; }

private:
    fs::path dir_;
    std::vector<OutputFile> files_;
};

std::vector<std::pair<std::string, std::string>> resolved_parameters(const CLI::App* sub) {
    std::vector<std::pair<std::string, std::string>> params;
    for (const CLI::Option* opt : sub->get_options()) {
        const auto& name = opt->get_single_name();
        if (name == "help") {
            continue;
        }
        std::string value;
        if (opt->get_expected_max() == 0) {
            value = opt->count() > 0 ? "true" : "false";
        } else if (opt->count() > 0) {
            const auto& results = opt->results();
            for (std::size_t i = 0; i < results.size(); ++i) {
                value += (i > 0 ? "," : "") + results[i];
            }
        } else {
            value = opt->get_default_str();
        }
        params.emplace_back(name, value);
    }
    return params;
}

void write_data(OutputSink& sink, const OutputOptions& o, const std::string& stem, const std::string& csv,
                const std::string& json) {
    if (o.format == "csv") {
        sink.write(stem + ".csv", csv);
    }
    sink.write(stem + ".json", json);
}

emit::Metadata metadata_for(const SymbolSequence& seq, int stride, std::optional<std::uint64_t> seed = {}) {
    return {seq.size(), stride, seed, seq.provenance()};
}

std::vector<WordDistribution> distributions(const SymbolSequence& seq, const std::vector<int>& lengths,
                                            int stride) {
    std::vector<WordDistribution> dists;
    dists.reserve(lengths.size());
    for (int l : lengths) {
        dists.push_back(word_distribution(seq, l, stride));
    }
    return dists;
}

}  // namespace

std::vector<int> parse_word_lengths(std::string_view text) {
    std::vector<int> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find(',', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        const auto item = text.substr(start, end - start);
        const auto dots = item.find("..");
        if (dots != std::string_view::npos) {
            const int lo = parse_int(item.substr(0, dots), "word length range");
            const int hi = parse_int(item.substr(dots + 2), "word length range");
            if (hi < lo) {
                throw Error(Errc::BadParameter, "empty word length range");
            }
            for (int l = lo; l <= hi; ++l) {
                out.push_back(l);
            }
        } else {
            out.push_back(parse_int(item, "word length"));
        }
        start = end + 1;
    }
    for (int l : out) {
        check_word_length(l);
    }
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Symbolic-dynamics memory, entropy and multifractal analysis of price series", "symdyn"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    // symbolize
    InputOptions sym_in;
    OutputOptions sym_out;
    int sym_word_len = 0;
    int sym_stride = 1;
    auto* symbolize = app.add_subcommand("symbolize", "Write the binary symbol stream of the log-returns");
    add_input_options(symbolize, sym_in);
    add_output_options(symbolize, sym_out, false);
    symbolize->add_option("--word-len", sym_word_len, "Also list sliding windows of this length (0: none)");
    symbolize->add_option("--stride", sym_stride, "Window stride")->check(CLI::PositiveNumber);

    // tables
    InputOptions tab_in;
    OutputOptions tab_out;
    std::string tab_lengths = "2,4,6";
    int tab_stride = 1;
    bool tab_conditional = false;
    auto* tables = app.add_subcommand("tables", "Joint or conditional next-symbol tables, one file per L");
    add_input_options(tables, tab_in);
    add_output_options(tables, tab_out);
    tables->add_option("--word-lens", tab_lengths, "Word lengths, e.g. 2,4,6 or 2..6");
    tables->add_option("--stride", tab_stride, "Window stride")->check(CLI::PositiveNumber);
    tables->add_flag("--conditional", tab_conditional, "Row-normalised conditionals instead of joint cells");

    // spectrum
    InputOptions spec_in;
    OutputOptions spec_out;
    std::string spec_lengths = "2,4,6,8";
    double spec_qmin = -40.0, spec_qmax = 40.0, spec_qstep = 0.5;
    int spec_stride = 1;
    auto* spectrum = app.add_subcommand("spectrum", "Renyi information, entropy rate and dimension on an (L, q) grid");
    add_input_options(spectrum, spec_in);
    add_output_options(spectrum, spec_out);
    spectrum->add_option("--word-lens", spec_lengths, "Word lengths");
    spectrum->add_option("--q-min", spec_qmin, "Smallest q");
    spectrum->add_option("--q-max", spec_qmax, "Largest q");
    spectrum->add_option("--q-step", spec_qstep, "q spacing");
    spectrum->add_option("--stride", spec_stride, "Window stride")->check(CLI::PositiveNumber);

    // mfspectrum
    InputOptions mf_in;
    OutputOptions mf_out;
    std::string mf_lengths = "2..9";
    double mf_qmin = -30.0, mf_qmax = 30.0, mf_qstep = 0.5;
    int mf_stride = 1;
    auto* mfspectrum = app.add_subcommand("mfspectrum", "Singularity spectrum f(alpha) by escort-weight regressions");
    add_input_options(mfspectrum, mf_in);
    add_output_options(mfspectrum, mf_out);
    mfspectrum->add_option("--word-lens", mf_lengths, "Word lengths forming the scale range");
    mfspectrum->add_option("--q-min", mf_qmin, "Smallest q");
    mfspectrum->add_option("--q-max", mf_qmax, "Largest q");
    mfspectrum->add_option("--q-step", mf_qstep, "q spacing");
    mfspectrum->add_option("--stride", mf_stride, "Window stride")->check(CLI::PositiveNumber);

    // adf
    InputOptions adf_in;
    OutputOptions adf_out;
    int adf_length = 2;
    int adf_stride = 1;
    std::string adf_lags = "auto";
    std::string adf_regression = "c";
    std::string adf_series_kind = "pi";
    auto* adf = app.add_subcommand("adf", "Augmented Dickey-Fuller test on the word-fraction series");
    add_input_options(adf, adf_in);
    add_output_options(adf, adf_out, false);
    adf->add_option("--word-len", adf_length, "Word length of the fraction series");
    adf->add_option("--stride", adf_stride, "Window stride")->check(CLI::PositiveNumber);
    adf->add_option("--lags", adf_lags, "Lagged differences, or auto for floor(12 (n/100)^(1/4))");
    adf->add_option("--regression", adf_regression, "Deterministic terms")->check(CLI::IsMember({"c", "ct"}));
    adf->add_option("--series", adf_series_kind, "pi: word fractions; binary: +/-1 symbols")
        ->check(CLI::IsMember({"pi", "binary"}));

    // baseline
    InputOptions base_in;
    OutputOptions base_out;
    std::string base_kind;
    std::size_t base_length = 0;
    std::uint64_t base_seed = 0;
    double base_p11 = 0.5, base_p10 = 0.5, base_m = 0.5;
    int base_depth = 12;
    auto* baseline_cmd = app.add_subcommand("baseline", "Generate a seeded surrogate symbol stream");
    add_input_options(baseline_cmd, base_in);
    add_output_options(baseline_cmd, base_out, false);
    baseline_cmd->add_option("--kind", base_kind, "Surrogate family")
        ->required()
        ->check(CLI::IsMember({"iid_coin", "shuffle", "markov1", "cascade"}));
    baseline_cmd->add_option("--length", base_length, "Symbols to generate (ignored by shuffle)");
    baseline_cmd->add_option("--seed", base_seed, "Generator seed")->required();
    baseline_cmd->add_option("--p11", base_p11, "markov1: P(1|1)");
    baseline_cmd->add_option("--p10", base_p10, "markov1: P(1|0)");
    baseline_cmd->add_option("--m", base_m, "cascade: weight of the 0-half");
    baseline_cmd->add_option("--depth", base_depth, "cascade: cell depth");

    // boxstats
    InputOptions box_in;
    OutputOptions box_out;
    std::string box_lengths = "2,4,6,8";
    std::uint64_t box_seed = 0;
    std::string box_values = "joint";
    int box_stride = 1;
    auto* boxstats = app.add_subcommand("boxstats", "Quartiles of word probabilities against an i.i.d. baseline");
    add_input_options(boxstats, box_in);
    add_output_options(boxstats, box_out, false);
    boxstats->add_option("--word-lens", box_lengths, "Word lengths");
    boxstats->add_option("--seed", box_seed, "Seed of the i.i.d. coin baseline")->required();
    boxstats->add_option("--values", box_values, "joint: all 2^L word probabilities; conditional: next-symbol conditionals")
        ->check(CLI::IsMember({"joint", "conditional"}));
    boxstats->add_option("--stride", box_stride, "Window stride")->check(CLI::PositiveNumber);

    // replay
    std::string replay_manifest;
    auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a run manifest");
    replay->add_option("--manifest", replay_manifest, "Path to a *.manifest.json")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kParameterError;
    }

    try {
        if (replay->parsed()) {
            const auto manifest = RunManifest::from_json(read_file(replay_manifest));
            return run(manifest.replay_args(), out, err);
        }

        CLI::App* active = app.get_subcommands().front();
        RunManifest manifest;
        manifest.command = active->get_name();
        manifest.version = SYMDYN_VERSION;
        manifest.parameters = resolved_parameters(active);

        const auto record_input = [&](const std::string& path) {
            manifest.input_path = path;
            manifest.input_sha256 = sha256_file(path);
        };
        std::unique_ptr<OutputSink> sink;
        const auto open_sink = [&](const OutputOptions& o) {
            sink = std::make_unique<OutputSink>(o.output_dir);
            return sink.get();
        };

        if (symbolize->parsed()) {
            const auto in = load_input(sym_in);
            record_input(in.path);
            auto* s = open_sink(sym_out);
            s->write("symbols.txt", in.sequence.to_string());
            if (sym_word_len > 0) {
                const auto codes = window_codes(in.sequence, sym_word_len, sym_stride);
                std::ostringstream words;
                words << "index,word,fraction\n";
                for (std::size_t j = 0; j < codes.size(); ++j) {
                    const WordCode code(codes[j], sym_word_len);
                    words << j * static_cast<std::size_t>(sym_stride) << ','
                          << decode_fraction(code).to_string("") << ',' << emit::format_number(code.value())
                          << '\n';
                }
                s->write("words_L" + std::to_string(sym_word_len) + ".csv", words.str());
            }
        } else if (tables->parsed()) {
            const auto lengths = parse_word_lengths(tab_lengths);
            const auto in = load_input(tab_in);
            record_input(in.path);
            auto* s = open_sink(tab_out);
            const auto meta = metadata_for(in.sequence, tab_stride);
            const auto mode = tab_conditional ? emit::TableMode::Conditional : emit::TableMode::Joint;
            for (int l : lengths) {
                if (l < 2) {
                    throw Error(Errc::BadParameter, "tables need L >= 2");
                }
                const auto dist = word_distribution(in.sequence, l, tab_stride);
                const auto csv = tab_conditional ? emit::conditional_csv(conditional_table(dist)) : emit::joint_csv(dist);
                write_data(*s, tab_out, "table_L" + std::to_string(l), csv, emit::table_json(dist, mode, meta));
            }
        } else if (spectrum->parsed()) {
            const auto lengths = parse_word_lengths(spec_lengths);
            const auto grid = QGrid::range(spec_qmin, spec_qmax, spec_qstep);
            const auto in = load_input(spec_in);
            record_input(in.path);
            auto* s = open_sink(spec_out);
            const auto result = entropy_spectrum(in.sequence, lengths, grid, spec_stride);
            write_data(*s, spec_out, "spectrum", emit::spectrum_csv(result),
                       emit::spectrum_json(result, metadata_for(in.sequence, spec_stride)));
        } else if (mfspectrum->parsed()) {
            const auto lengths = parse_word_lengths(mf_lengths);
            const auto grid = QGrid::range(mf_qmin, mf_qmax, mf_qstep);
            const auto in = load_input(mf_in);
            record_input(in.path);
            auto* s = open_sink(mf_out);
            const auto dists = distributions(in.sequence, lengths, mf_stride);
            const auto result = chhabra_spectrum(dists, grid);
            write_data(*s, mf_out, "mfspectrum", emit::mfspectrum_csv(result),
                       emit::mfspectrum_json(result, metadata_for(in.sequence, mf_stride)));
        } else if (adf->parsed()) {
            std::optional<std::size_t> lags;
            if (adf_lags != "auto") {
                const int k = parse_int(adf_lags, "lag count");
                if (k < 0) {
                    throw Error(Errc::BadParameter, "lag count must be non-negative");
                }
                lags = static_cast<std::size_t>(k);
            }
            const auto in = load_input(adf_in);
            record_input(in.path);
            auto* s = open_sink(adf_out);
            const auto input_kind = adf_series_kind == "binary" ? AdfInput::CenteredBinary : AdfInput::WordFraction;
            const auto series = adf_series(in.sequence, adf_length, adf_stride, input_kind);
            const auto kind = adf_regression == "ct" ? RegressionKind::ConstantTrend : RegressionKind::Constant;
            const auto report = adf_test(series, lags, kind);
            s->write("adf.json", emit::adf_json(report, adf_length, metadata_for(in.sequence, adf_stride)));
        } else if (baseline_cmd->parsed()) {
            BaselineKind kind = baseline::IidCoin{};
            if (base_kind == "shuffle") {
                const auto in = load_input(base_in);
                record_input(in.path);
                kind = baseline::ShuffleOf{in.sequence};
            } else if (base_length == 0) {
                throw Error(Errc::BadParameter, "--length must be positive");
            } else if (base_kind == "markov1") {
                kind = baseline::Markov1{base_p11, base_p10};
            } else if (base_kind == "cascade") {
                kind = baseline::Cascade{base_m, base_depth};
            }
            const auto seq = random_baseline(base_length, base_seed, kind);
            manifest.seeds.push_back(base_seed);
            auto* s = open_sink(base_out);
            s->write("symbols.txt", seq.to_string());
        } else if (boxstats->parsed()) {
            const auto lengths = parse_word_lengths(box_lengths);
            const auto in = load_input(box_in);
            record_input(in.path);
            manifest.seeds.push_back(box_seed);
            const auto random = random_baseline(in.sequence.size(), box_seed, baseline::IidCoin{});
            const auto values_of = [&](const WordDistribution& dist) {
                if (box_values == "joint") {
                    return dist.probabilities();
                }
                std::vector<double> v;
                for (const auto& row : conditional_table(dist).rows) {
                    v.push_back(row.next0);
                    v.push_back(row.next1);
                }
                return v;
            };
            std::ostringstream csv;
            csv << "L,source,min,q1,median,q3,max,iqr,iqr_ratio\n";
            const auto line = [&](int l, const char* source, const BoxStats& b, double ratio) {
                csv << l << ',' << source << ',' << emit::format_number(b.min) << ','
                    << emit::format_number(b.q1) << ',' << emit::format_number(b.median) << ','
                    << emit::format_number(b.q3) << ',' << emit::format_number(b.max) << ','
                    << emit::format_number(b.iqr) << ',' << emit::format_number(ratio) << '\n';
            };
            for (int l : lengths) {
                const auto emp = dispersion_summary(values_of(word_distribution(in.sequence, l, box_stride)));
                const auto base = dispersion_summary(values_of(word_distribution(random, l, box_stride)));
                line(l, "empirical", emp, iqr_ratio(emp, base));
                line(l, "baseline", base, 1.0);
            }
            auto* s = open_sink(box_out);
            s->write("boxstats.csv", csv.str());
        }

        manifest.outputs = sink->files();
        const auto manifest_path = sink->dir() / manifest.file_name();
        {
            std::ofstream f(manifest_path, std::ios::binary | std::ios::trunc);
            f << manifest.to_json();
        }
        for (const auto& file : manifest.outputs) {
            out << (sink->dir() / file.name).string() << '\n';
        }
        out << manifest_path.string() << '\n';
        return kOk;
    } catch (const Error& e) {
        err << "symdyn: " << e.what() << '\n';
        switch (error_category(e.code())) {
            case ErrorCategory::Input: return kInputError;
            case ErrorCategory::Parameter: return kParameterError;
            case ErrorCategory::Numerical: return kNumericalError;
        }
        return kNumericalError;
    } catch (const fs::filesystem_error& e) {
        err << "symdyn: " << e.what() << '\n';
        return kInputError;
    }
}

}  // namespace symdyn::cli
