#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "symdyn/multifractal.hpp"
#include "symdyn/probdist.hpp"
#include "symdyn/renyi.hpp"
#include "symdyn/stationarity.hpp"

namespace symdyn::emit {

/// Run metadata embedded in JSON outputs.
struct Metadata {
    std::size_t n = 0;  ///< symbols in the analysed sequence
    int stride = 1;
    std::optional<std::uint64_t> seed;
    std::string provenance;
};

/// Shortest round-trip decimal rendering; "nan"/"inf"/"-inf" for non-finite values.
[[nodiscard]] std::string format_number(double value);

/// Header `context,next0,next1,count`, one row per observed context.
[[nodiscard]] std::string conditional_csv(const ConditionalTable& table);

/// Joint L-word probabilities in the layout p(next | last, older): one row per older
/// context (L-2 symbols, "." when empty) and columns
/// `older,p0_given0,p0_given1,p1_given0,p1_given1`.
[[nodiscard]] std::string joint_csv(const WordDistribution& dist);

enum class TableMode { Joint, Conditional };

[[nodiscard]] std::string table_json(const WordDistribution& dist, TableMode mode, const Metadata& meta);

/// Header `L,q,I_q,S_q,D_q`.
[[nodiscard]] std::string spectrum_csv(const SpectrumResult& result);
[[nodiscard]] std::string spectrum_json(const SpectrumResult& result, const Metadata& meta);

/// Header `q,alpha,f,tau,r2_alpha,r2_f`.
[[nodiscard]] std::string mfspectrum_csv(const MultifractalSpectrum& spectrum);
[[nodiscard]] std::string mfspectrum_json(const MultifractalSpectrum& spectrum, const Metadata& meta);

/// Plain-language reading of the statistic against the critical values.
[[nodiscard]] std::string adf_decision_hint(const AdfReport& report);
/// {t_stat, lags, n_obs, regression, critical_values, decision_hint}.
[[nodiscard]] std::string adf_json(const AdfReport& report, int length, const Metadata& meta);

}  // namespace symdyn::emit
