#include <cmath>
#include <numbers>

#include "cli.hpp"
#include "json.hpp"
#include "manifest.hpp"
#include "test_support.hpp"

using namespace symdyn;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(test::slurp(path));
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> fields;
        std::istringstream ls(line);
        for (std::string f; std::getline(ls, f, ',');) {
            fields.push_back(f);
        }
        rows.push_back(fields);
    }
    return rows;
}

std::string prices() { return test::fixture("prices_10k.csv").string(); }

}  // namespace

TEST(CliSymbolize, LengthIsRowsMinusOneAndMatchesGolden) {
    const auto dir = test::scratch_dir("symbolize");
    const auto r = run_cli({"symbolize", "--input", prices(), "--output-dir", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto symbols = test::slurp(dir / "symbols.txt");
    EXPECT_EQ(symbols.size(), 9999U);
    EXPECT_EQ(symbols, test::slurp(test::fixture("prices_10k.symbols.txt")));

    const auto again = test::scratch_dir("symbolize_again");
    ASSERT_EQ(run_cli({"symbolize", "--input", prices(), "--output-dir", again.string()}).code, 0);
    EXPECT_EQ(test::slurp(again / "symbols.txt"), symbols);
}

TEST(CliSymbolize, WordListing) {
    const auto dir = test::scratch_dir("symbolize_words");
    ASSERT_EQ(run_cli({"symbolize", "--input", prices(), "--output-dir", dir.string(), "--word-len", "3",
                       "--stride", "2"})
                  .code,
              0);
    const auto rows = read_csv(dir / "words_L3.csv");
    ASSERT_EQ(rows.size(), 1U + 4999U);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"index", "word", "fraction"}));
    const auto symbols = test::slurp(dir / "symbols.txt");
    EXPECT_EQ(rows[2][0], "2");
    EXPECT_EQ(rows[2][1], symbols.substr(2, 3));
    EXPECT_EQ(std::stod(rows[2][2]) * 8, std::stoi(rows[2][1], nullptr, 2));
}

TEST(CliSymbolize, TiePolicyFlipsOnlyZeroReturns) {
    const auto dir = test::scratch_dir("ties");
    {
        std::ofstream f(dir / "ties.csv");
        f << "t,p\n1,100\n2,100\n3,101\n4,100\n5,100\n6,100\n7,99\n";
    }
    const auto input = (dir / "ties.csv").string();
    ASSERT_EQ(run_cli({"symbolize", "--input", input, "--output-dir", (dir / "a").string()}).code, 0);
    ASSERT_EQ(run_cli({"symbolize", "--input", input, "--output-dir", (dir / "b").string(), "--tie-policy",
                       "zero_as_1"})
                  .code,
              0);
    EXPECT_EQ(test::slurp(dir / "a" / "symbols.txt"), "010000");
    EXPECT_EQ(test::slurp(dir / "b" / "symbols.txt"), "110110");
}

TEST(CliSymbolize, BucketedInput) {
    const auto dir = test::scratch_dir("bucket");
    ASSERT_EQ(run_cli({"symbolize", "--input", test::fixture("week_minutes.csv").string(), "--time-col", "time",
                       "--price-col", "close", "--bucket", "1d", "--output-dir", dir.string()})
                  .code,
              0);
    EXPECT_EQ(test::slurp(dir / "symbols.txt").size(), 4U);
}

TEST(CliTables, MarkovFixtureRowsAreStochastic) {
    const auto dir = test::scratch_dir("tables_markov");
    ASSERT_EQ(run_cli({"baseline", "--kind", "markov1", "--length", "200000", "--seed", "5", "--p11", "0.7",
                       "--p10", "0.4", "--output-dir", dir.string()})
                  .code,
              0);
    const auto symbols = (dir / "symbols.txt").string();
    ASSERT_EQ(run_cli({"tables", "--symbols", symbols, "--word-lens", "2..5", "--conditional", "--output-dir",
                       (dir / "cond").string()})
                  .code,
              0);
    for (int l = 2; l <= 5; ++l) {
        const auto rows = read_csv(dir / "cond" / ("table_L" + std::to_string(l) + ".csv"));
        ASSERT_EQ(rows[0], (std::vector<std::string>{"context", "next0", "next1", "count"}));
        ASSERT_EQ(rows.size(), 1U + (1U << (l - 1)));
        for (std::size_t i = 1; i < rows.size(); ++i) {
            EXPECT_NEAR(std::stod(rows[i][1]) + std::stod(rows[i][2]), 1.0, 1e-12);
            EXPECT_EQ(rows[i][0].size(), static_cast<std::size_t>(l - 1));
        }
        EXPECT_TRUE(fs::exists(dir / "cond" / ("table_L" + std::to_string(l) + ".json")));
    }
    ASSERT_EQ(run_cli({"tables", "--symbols", symbols, "--word-lens", "2,4,6", "--output-dir",
                       (dir / "joint").string()})
                  .code,
              0);
    for (int l : {2, 4, 6}) {
        const auto rows = read_csv(dir / "joint" / ("table_L" + std::to_string(l) + ".csv"));
        double total = 0.0;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            for (std::size_t k = 1; k < 5; ++k) {
                total += std::stod(rows[i][k]);
            }
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
    }
}

TEST(CliTables, GoldenFixture) {
    const auto dir = test::scratch_dir("tables_golden");
    ASSERT_EQ(run_cli({"tables", "--input", prices(), "--word-lens", "4", "--output-dir", dir.string()}).code, 0);
    const auto table = test::slurp(dir / "table_L4.csv");

    // Values against counts computed independently from the fixture.
    const auto oracle = json::parse(test::slurp(test::fixture("prices_10k.words_L4.json")));
    const auto counts = oracle["counts"].get<std::vector<double>>();
    const double total = 9999.0 - 3.0;
    const auto rows = read_csv(dir / "table_L4.csv");
    ASSERT_EQ(rows.size(), 5U);
    for (std::uint32_t older = 0; older < 4; ++older) {
        int column = 1;
        for (std::uint32_t next = 0; next < 2; ++next) {
            for (std::uint32_t last = 0; last < 2; ++last) {
                const auto code = (older << 2) | (last << 1) | next;
                EXPECT_EQ(std::stod(rows[older + 1][static_cast<std::size_t>(column++)]), counts[code] / total);
            }
        }
    }
    EXPECT_EQ(table, test::slurp(test::fixture("golden/prices_10k.table_L4.csv")));
    EXPECT_EQ(cli::sha256_hex(table), cli::sha256_file(test::fixture("golden/prices_10k.table_L4.csv")));
}

TEST(CliBaseline, DeterministicAndFlatSpectrum) {
    const auto a = test::scratch_dir("baseline_a");
    const auto b = test::scratch_dir("baseline_b");
    for (const auto& dir : {a, b}) {
        ASSERT_EQ(run_cli({"baseline", "--kind", "iid_coin", "--length", "1048576", "--seed", "7", "--output-dir",
                           dir.string()})
                      .code,
                  0);
    }
    EXPECT_EQ(test::slurp(a / "symbols.txt"), test::slurp(b / "symbols.txt"));
    EXPECT_EQ(test::slurp(a / "symbols.txt").size(), 1048576U);

    const auto r = run_cli({"spectrum", "--symbols", (a / "symbols.txt").string(), "--q-min", "-5", "--q-max", "5",
                            "--q-step", "0.5", "--output-dir", (a / "spec").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = read_csv(a / "spec" / "spectrum.csv");
    ASSERT_EQ(rows[0], (std::vector<std::string>{"L", "q", "I_q", "S_q", "D_q"}));
    ASSERT_EQ(rows.size(), 1U + 4U * 21U);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_NEAR(std::stod(rows[i][3]), std::numbers::ln2, 0.02);
    }
    const auto manifest = json::parse(test::slurp(a / "baseline.manifest.json"));
    EXPECT_EQ(manifest["seeds"], json::array({7}));
}

TEST(CliMfSpectrum, CascadeFixtureMatchesOracle) {
    const auto dir = test::scratch_dir("mf_cascade");
    ASSERT_EQ(run_cli({"baseline", "--kind", "cascade", "--m", "0.7", "--depth", "12", "--length", "2097152",
                       "--seed", "11", "--output-dir", dir.string()})
                  .code,
              0);
    const auto r = run_cli({"mfspectrum", "--symbols", (dir / "symbols.txt").string(), "--q-min", "-3", "--q-max",
                            "3", "--q-step", "0.5", "--output-dir", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto got = read_csv(dir / "mfspectrum.csv");
    const auto want = read_csv(test::fixture("cascade_oracle.csv"));
    ASSERT_EQ(got[0], (std::vector<std::string>{"q", "alpha", "f", "tau", "r2_alpha", "r2_f"}));
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 1; i < got.size(); ++i) {
        EXPECT_EQ(std::stod(got[i][0]), std::stod(want[i][0]));
        EXPECT_NEAR(std::stod(got[i][1]), std::stod(want[i][1]), 0.05) << "alpha at q=" << got[i][0];
        EXPECT_NEAR(std::stod(got[i][2]), std::stod(want[i][2]), 0.05) << "f at q=" << got[i][0];
    }
    const auto j = json::parse(test::slurp(dir / "mfspectrum.json"));
    EXPECT_EQ(j["metadata"]["scale_range"], json::array({2, 3, 4, 5, 6, 7, 8, 9}));
}

TEST(CliAdf, ReportFields) {
    const auto dir = test::scratch_dir("adf");
    const auto r = run_cli({"adf", "--input", prices(), "--word-len", "3", "--lags", "4", "--regression", "ct",
                            "--output-dir", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(test::slurp(dir / "adf.json"));
    EXPECT_EQ(j["lags"], 4);
    EXPECT_EQ(j["regression"], "ct");
    EXPECT_EQ(j["n_obs"], 9997 - 1 - 4);
    EXPECT_LT(j["critical_values"]["1%"].get<double>(), j["critical_values"]["5%"].get<double>());
    const auto direct = adf_test(
        adf_series(SymbolSequence::from_string(test::slurp(test::fixture("prices_10k.symbols.txt"))), 3, 1,
                   AdfInput::WordFraction),
        4, RegressionKind::ConstantTrend);
    EXPECT_EQ(j["t_stat"].get<double>(), direct.t_stat);
}

TEST(CliBoxstats, EmpiricalAgainstBaseline) {
    const auto dir = test::scratch_dir("boxstats");
    const auto r = run_cli({"boxstats", "--input", prices(), "--seed", "3", "--word-lens", "2,4", "--output-dir",
                            dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = read_csv(dir / "boxstats.csv");
    ASSERT_EQ(rows.size(), 5U);
    EXPECT_EQ(rows[0].back(), "iqr_ratio");
    EXPECT_EQ(rows[1][1], "empirical");
    EXPECT_EQ(rows[2][1], "baseline");
    EXPECT_NEAR(std::stod(rows[1][8]), std::stod(rows[1][7]) / std::stod(rows[2][7]), 1e-12);
}

TEST(CliManifest, ListsOutputsAndReplays) {
    const auto dir = test::scratch_dir("manifest");
    const auto input_digest = cli::sha256_file(prices());
    ASSERT_EQ(run_cli({"tables", "--input", prices(), "--word-lens", "2,3", "--output-dir", dir.string()}).code, 0);
    const auto manifest_path = dir / "tables.manifest.json";
    const auto m = cli::RunManifest::from_json(test::slurp(manifest_path));
    EXPECT_EQ(m.command, "tables");
    EXPECT_EQ(m.input_sha256.value_or(""), input_digest);
    EXPECT_EQ(cli::sha256_file(prices()), input_digest);
    ASSERT_EQ(m.outputs.size(), 4U);
    std::map<std::string, std::string> before;
    for (const auto& o : m.outputs) {
        EXPECT_EQ(cli::sha256_file(dir / o.name), o.sha256) << o.name;
        before[o.name] = test::slurp(dir / o.name);
    }
    std::map<std::string, std::string> params(m.parameters.begin(), m.parameters.end());
    for (const char* key : {"input", "price-col", "time-col", "delimiter", "time-format", "tie-policy",
                            "output-dir", "format", "word-lens", "stride", "conditional", "sort"}) {
        EXPECT_EQ(params.count(key), 1U) << key;
    }
    EXPECT_EQ(params["stride"], "1");
    EXPECT_EQ(params["conditional"], "false");
    EXPECT_EQ(params["word-lens"], "2,3");

    for (const auto& [name, _] : before) {
        fs::remove(dir / name);
    }
    ASSERT_EQ(run_cli({"replay", "--manifest", manifest_path.string()}).code, 0);
    for (const auto& [name, content] : before) {
        EXPECT_EQ(test::slurp(dir / name), content) << name;
    }
}

TEST(CliManifest, JsonFormatWritesOnlyJson) {
    const auto dir = test::scratch_dir("json_only");
    ASSERT_EQ(run_cli({"spectrum", "--input", prices(), "--format", "json", "--q-min", "0", "--q-max", "2",
                       "--output-dir", dir.string()})
                  .code,
              0);
    EXPECT_TRUE(fs::exists(dir / "spectrum.json"));
    EXPECT_FALSE(fs::exists(dir / "spectrum.csv"));
}

TEST(CliExitCodes, Scheme) {
    const auto dir = test::scratch_dir("exit_codes").string();
    EXPECT_EQ(run_cli({"--help"}).code, 0);
    EXPECT_EQ(run_cli({}).code, cli::kParameterError);
    EXPECT_EQ(run_cli({"symbolize", "--input", "/nonexistent/prices.csv"}).code, cli::kInputError);
    EXPECT_EQ(run_cli({"spectrum", "--input", prices(), "--word-lens", "30", "--output-dir", dir}).code,
              cli::kParameterError);
    EXPECT_EQ(run_cli({"baseline", "--kind", "iid_coin", "--length", "10", "--output-dir", dir}).code,
              cli::kParameterError);
    EXPECT_EQ(run_cli({"baseline", "--kind", "dice", "--length", "10", "--seed", "1"}).code, cli::kParameterError);
    EXPECT_EQ(run_cli({"spectrum", "--input", prices(), "--symbols", prices()}).code, cli::kParameterError);
    EXPECT_EQ(run_cli({"tables", "--format", "xml", "--input", prices()}).code, cli::kParameterError);

    {
        std::ofstream f(fs::path(dir) / "flat.txt");
        f << std::string(100, '0');
        std::ofstream g(fs::path(dir) / "bad.csv");
        g << "t,p\n1,100\n2,-1\n";
    }
    const auto r = run_cli({"adf", "--symbols", dir + "/flat.txt", "--output-dir", dir});
    EXPECT_EQ(r.code, cli::kNumericalError);
    EXPECT_NE(r.err.find("ConstantSeries"), std::string::npos);
    EXPECT_EQ(run_cli({"symbolize", "--input", dir + "/bad.csv", "--output-dir", dir}).code, cli::kInputError);
}

TEST(CliWordLengths, Parsing) {
    EXPECT_EQ(cli::parse_word_lengths("2,4,6,8"), (std::vector<int>{2, 4, 6, 8}));
    EXPECT_EQ(cli::parse_word_lengths("2..5"), (std::vector<int>{2, 3, 4, 5}));
    EXPECT_EQ(cli::parse_word_lengths("2..3,8"), (std::vector<int>{2, 3, 8}));
    EXPECT_SYMDYN_ERROR(cli::parse_word_lengths("5..2"), Errc::BadParameter);
    EXPECT_SYMDYN_ERROR(cli::parse_word_lengths("a"), Errc::BadParameter);
    EXPECT_SYMDYN_ERROR(cli::parse_word_lengths(""), Errc::BadParameter);
    EXPECT_SYMDYN_ERROR(cli::parse_word_lengths("0"), Errc::BadParameter);
}
