#include "symdyn/emit.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "symdyn/error.hpp"

namespace symdyn::emit {

namespace {

using nlohmann::ordered_json;

ordered_json number(double v) {
    if (!std::isfinite(v)) {
        return nullptr;
    }
    return v;
}

ordered_json metadata_json(const Metadata& meta) {
    ordered_json j;
    j["N"] = meta.n;
    j["stride"] = meta.stride;
    j["seed"] = meta.seed ? ordered_json(*meta.seed) : ordered_json(nullptr);
    j["provenance"] = meta.provenance;
    return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string older_label(std::uint32_t older, int older_length) {
    if (older_length == 0) {
        return ".";
    }
    std::string s;
    for (int i = older_length - 1; i >= 0; --i) {
        s.push_back(static_cast<char>('0' + ((older >> i) & 1U)));
    }
    return s;
}

}  // namespace

std::string format_number(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

std::string conditional_csv(const ConditionalTable& table) {
    std::ostringstream out;
    out << "context,next0,next1,count\n";
    for (const auto& row : table.rows) {
        out << row.context.to_string("") << ',' << format_number(row.next0) << ','
            << format_number(row.next1) << ',' << row.count << '\n';
    }
    return out.str();
}

void require_pairs(const WordDistribution& dist) {
    if (dist.length() < 2) {
        throw Error(Errc::BadParameter, "tables need L >= 2");
    }
}

std::string joint_csv(const WordDistribution& dist) {
    require_pairs(dist);
    const int length = dist.length();
    std::ostringstream out;
    out << "older,p0_given0,p0_given1,p1_given0,p1_given1\n";
    const int older_length = length - 2;
    const std::uint32_t rows = std::uint32_t{1} << older_length;
    for (std::uint32_t older = 0; older < rows; ++older) {
        out << older_label(older, older_length);
        // Column order (next, last) = (0,0), (0,1), (1,0), (1,1); word = older.last.next.
        for (std::uint32_t next = 0; next < 2; ++next) {
            for (std::uint32_t last = 0; last < 2; ++last) {
                const std::uint32_t code = (older << 2) | (last << 1) | next;
                out << ',' << format_number(dist.probability(code));
            }
        }
        out << '\n';
    }
    return out.str();
}

std::string table_json(const WordDistribution& dist, TableMode mode, const Metadata& meta) {
    require_pairs(dist);
    ordered_json j;
    auto m = metadata_json(meta);
    m["L"] = dist.length();
    m["R"] = dist.total();
    j["metadata"] = m;
    if (mode == TableMode::Conditional) {
        const auto table = conditional_table(dist);
        j["mode"] = "conditional";
        auto rows = ordered_json::array();
        for (const auto& row : table.rows) {
            rows.push_back({{"context", row.context.to_string("")},
                            {"next0", number(row.next0)},
                            {"next1", number(row.next1)},
                            {"count", row.count}});
        }
        j["rows"] = rows;
    } else {
        j["mode"] = "joint";
        const int older_length = dist.length() - 2;
        auto rows = ordered_json::array();
        for (std::uint32_t older = 0; older < (std::uint32_t{1} << older_length); ++older) {
            ordered_json row;
            row["older"] = older_label(older, older_length);
            const char* names[2][2] = {{"p0_given0", "p0_given1"}, {"p1_given0", "p1_given1"}};
            for (std::uint32_t next = 0; next < 2; ++next) {
                for (std::uint32_t last = 0; last < 2; ++last) {
                    const std::uint32_t code = (older << 2) | (last << 1) | next;
                    row[names[next][last]] = number(dist.probability(code));
                }
            }
            rows.push_back(row);
        }
        j["rows"] = rows;
    }
    return dump(j);
}

std::string spectrum_csv(const SpectrumResult& result) {
    std::ostringstream out;
    out << "L,q,I_q,S_q,D_q\n";
    for (const auto& c : result.cells) {
        out << c.length << ',' << format_number(c.q) << ',' << format_number(c.information) << ','
            << format_number(c.entropy_rate) << ',' << format_number(c.dimension) << '\n';
    }
    return out.str();
}

std::string spectrum_json(const SpectrumResult& result, const Metadata& meta) {
    ordered_json j;
    auto m = metadata_json(meta);
    m["scale_label"] = result.scale_label;
    auto scales = ordered_json::array();
    for (const auto& s : result.scales) {
        scales.push_back({{"L", s.length}, {"R", s.windows}, {"support_size", s.support_size}});
    }
    m["scales"] = scales;
    j["metadata"] = m;
    auto cells = ordered_json::array();
    for (const auto& c : result.cells) {
        cells.push_back({{"L", c.length},
                         {"q", number(c.q)},
                         {"I_q", number(c.information)},
                         {"S_q", number(c.entropy_rate)},
                         {"D_q", number(c.dimension)}});
    }
    j["cells"] = cells;
    return dump(j);
}

std::string mfspectrum_csv(const MultifractalSpectrum& spectrum) {
    std::ostringstream out;
    out << "q,alpha,f,tau,r2_alpha,r2_f\n";
    for (const auto& p : spectrum.points) {
        out << format_number(p.q) << ',' << format_number(p.alpha) << ',' << format_number(p.f) << ','
            << format_number(p.tau) << ',' << format_number(p.r2_alpha) << ',' << format_number(p.r2_f) << '\n';
    }
    return out.str();
}

std::string mfspectrum_json(const MultifractalSpectrum& spectrum, const Metadata& meta) {
    ordered_json j;
    auto m = metadata_json(meta);
    m["scale_range"] = spectrum.scale_range;
    j["metadata"] = m;
    auto points = ordered_json::array();
    for (const auto& p : spectrum.points) {
        points.push_back({{"q", number(p.q)},
                          {"alpha", number(p.alpha)},
                          {"f", number(p.f)},
                          {"tau", number(p.tau)},
                          {"r2_alpha", number(p.r2_alpha)},
                          {"r2_f", number(p.r2_f)},
                          {"condition_number", number(p.condition_number)}});
    }
    j["points"] = points;
    return dump(j);
}

std::string adf_decision_hint(const AdfReport& report) {
    const auto& cv = report.critical_values;
    if (report.t_stat < cv.pct1) {
        return "unit root rejected at 1%";
    }
    if (report.t_stat < cv.pct5) {
        return "unit root rejected at 5%";
    }
    if (report.t_stat < cv.pct10) {
        return "unit root rejected at 10%";
    }
    return "unit root not rejected at 10%";
}

std::string adf_json(const AdfReport& report, int length, const Metadata& meta) {
    ordered_json j;
    auto m = metadata_json(meta);
    m["L"] = length;
    j["metadata"] = m;
    j["t_stat"] = number(report.t_stat);
    j["lags"] = report.lags_used;
    j["n_obs"] = report.n_obs;
    j["regression"] = std::string(to_string(report.regression_kind));
    j["critical_values"] = {{"1%", number(report.critical_values.pct1)},
                            {"5%", number(report.critical_values.pct5)},
                            {"10%", number(report.critical_values.pct10)}};
    j["decision_hint"] = adf_decision_hint(report);
    return dump(j);
}

}  // namespace symdyn::emit
