#pragma once
// JSON serialization for reports, certificates and colourings. Wall-clock
// fields are emitted only when timings are requested, so a fixed (config,
// input) pair always produces byte-identical records. The record schemas are
// documented in docs/report-schema.md.

#include <json.hpp>

#include "cubiso/harness.hpp"
#include "cubiso/oracle.hpp"
#include "cubiso/reducers.hpp"

namespace cubiso {

// ---- building blocks ----

nlohmann::json graph_json(const CubicGraph& g);  // {n, m, graph6}
nlohmann::json forest_pair_json(const CubicGraph& g, const LinearForestPair& pair);
nlohmann::json coloring_json(const VertexColoring& c);  // {n, colors: "RB..."}
VertexColoring coloring_from_json(const nlohmann::json& j);

// component classes: {"path": t} | {"oversized": {n, m}} | {"bytes": hex}
nlohmann::json form_json(const CanonicalForm& form);
nlohmann::json census_pairs_json(const std::vector<std::pair<CanonicalForm, long>>& pairs);

// ---- certificates and reports ----

nlohmann::json reducer_json(const ReducerCertificate& cert);
ReducerCertificate reducer_from_json(const nlohmann::json& j);

nlohmann::json balance_step_json(const BalanceStep& step);
nlohmann::json bisection_check_json(const BisectionCheck& check);
nlohmann::json pipeline_report_json(const PipelineReport& rep, bool timings = false);
nlohmann::json experiment_record_json(const ExperimentRecord& rec, bool timings = false);
nlohmann::json experiment_summary_json(const ExperimentSummary& summary);
nlohmann::json stream_entry_json(const StreamEntry& entry, bool timings = false);
nlohmann::json verification_report_json(const VerificationReport& report, bool timings = false);

}  // namespace cubiso
