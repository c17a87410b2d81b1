#include "cubiso/json_io.hpp"

#include <stdexcept>

namespace cubiso {

namespace {

using nlohmann::json;

json disc_json(const std::array<long, 6>& d) {
    json out = json::array();
    for (long x : d) out.push_back(x);
    return out;
}

std::string hex_of(const std::string& bytes) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(2 * bytes.size());
    for (unsigned char b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

long sentinel_field(const std::string& bytes, int offset) {
    long v = 0;
    for (int i = 0; i < 4; ++i)
        v = v << 8 | static_cast<unsigned char>(bytes[offset + i]);
    return v;
}

std::string colors_string(const std::vector<Color>& colors) {
    std::string s;
    s.reserve(colors.size());
    for (Color c : colors) s.push_back(c == Color::Red ? 'R' : 'B');
    return s;
}

std::vector<Color> colors_from_string(const std::string& s) {
    std::vector<Color> out;
    out.reserve(s.size());
    for (char ch : s) {
        if (ch == 'R')
            out.push_back(Color::Red);
        else if (ch == 'B')
            out.push_back(Color::Blue);
        else
            throw std::invalid_argument("colour strings use only 'R' and 'B'");
    }
    return out;
}

}  // namespace

// ---- building blocks ----

json graph_json(const CubicGraph& g) {
    return json{{"n", g.n()}, {"m", g.edge_count()}, {"graph6", encode_graph6(g)}};
}

json forest_pair_json(const CubicGraph& g, const LinearForestPair& pair) {
    json forests = json::object();
    for (Forest f : {Forest::F1, Forest::F2}) {
        const char* name = f == Forest::F1 ? "f1" : "f2";
        json edges = json::array();
        for (int e = 0; e < g.edge_count(); ++e)
            if (pair.forest_of(e) == f) edges.push_back(json::array({g.edges()[e].u, g.edges()[e].v}));
        json paths = json::array();
        for (const auto& p : pair.paths_of(g, f)) paths.push_back(p);
        forests[name] = json{{"edges", std::move(edges)},
                             {"paths", std::move(paths)},
                             {"max_len", pair.max_len(g, f)}};
    }
    forests["l1"] = pair.l1;
    forests["l2"] = pair.l2;
    return forests;
}

json coloring_json(const VertexColoring& c) {
    return json{{"n", c.n()}, {"colors", colors_string(c.colors)}};
}

VertexColoring coloring_from_json(const json& j) {
    VertexColoring c;
    c.colors = colors_from_string(j.at("colors").get<std::string>());
    if (j.contains("n") && j.at("n").get<int>() != c.n())
        throw std::invalid_argument("colouring length disagrees with its declared n");
    return c;
}

json form_json(const CanonicalForm& form) {
    if (form.oversized())
        return json{{"oversized", json{{"n", sentinel_field(form.bytes, 1)},
                                       {"m", sentinel_field(form.bytes, 5)}}}};
    for (int t = 1; t <= SmallGraph::kMaxVertices; ++t)
        if (form == path_form(t)) return json{{"path", t}};
    return json{{"bytes", hex_of(form.bytes)}};
}

json census_pairs_json(const std::vector<std::pair<CanonicalForm, long>>& pairs) {
    json out = json::array();
    for (const auto& [form, count] : pairs)
        out.push_back(json{{"class", form_json(form)}, {"count", count}});
    return out;
}

// ---- certificates and reports ----

json reducer_json(const ReducerCertificate& cert) {
    return json{{"t", cert.t},
                {"kind", cert.kind == ReducerKind::Full ? "full" : "half"},
                {"r", cert.r},
                {"region", cert.region},
                {"psi1", colors_string(cert.psi1)},
                {"psi2", colors_string(cert.psi2)},
                {"provenance", cert.provenance}};
}

ReducerCertificate reducer_from_json(const json& j) {
    ReducerCertificate cert;
    cert.t = j.at("t").get<int>();
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "full")
        cert.kind = ReducerKind::Full;
    else if (kind == "half")
        cert.kind = ReducerKind::Half;
    else
        throw std::invalid_argument("reducer kind must be \"full\" or \"half\"");
    cert.r = j.at("r").get<std::vector<Vertex>>();
    cert.region = j.at("region").get<std::vector<Vertex>>();
    cert.psi1 = colors_from_string(j.at("psi1").get<std::string>());
    cert.psi2 = colors_from_string(j.at("psi2").get<std::string>());
    cert.provenance = j.value("provenance", std::string{});
    return cert;
}

json balance_step_json(const BalanceStep& step) {
    return json{{"t", step.t},
                {"u", step.u},
                {"w", step.w},
                {"provenance", step.provenance},
                {"disc_after", disc_json(step.disc_after)}};
}

json bisection_check_json(const BisectionCheck& check) {
    const char* verdict = check.verdict == BisectionVerdict::Certified  ? "certified"
                          : check.verdict == BisectionVerdict::Refuted ? "refuted"
                                                                       : "undecided";
    json out{{"verdict", verdict}};
    if (!check.detail.empty()) out["detail"] = check.detail;
    if (check.certified()) out["shared"] = census_pairs_json(check.shared);
    return out;
}

json pipeline_report_json(const PipelineReport& rep, bool timings) {
    json stages = json::array();
    for (const auto& st : rep.stages)
        stages.push_back(json{{"stage", st.stage}, {"ok", st.ok}, {"detail", st.detail}});
    json steps = json::array();
    for (const auto& st : rep.balance_steps) steps.push_back(balance_step_json(st));

    json out{{"schema", rep.schema},
             {"status", rep.status},
             {"stages", std::move(stages)},
             {"d", rep.d},
             {"delta_after_colouring", rep.delta_after_colouring},
             {"initial_discrepancies", disc_json(rep.initial_discrepancies)},
             {"final_discrepancies", disc_json(rep.final_discrepancies)},
             {"kappa", rep.kappa},
             {"pairing_size", rep.pairing_size},
             {"balance_steps", std::move(steps)},
             {"repair_steps", rep.repair_steps},
             {"certificate", bisection_check_json(rep.certificate)}};
    if (!rep.failure.empty()) out["failure"] = rep.failure;
    if (rep.coloring) out["coloring"] = coloring_json(*rep.coloring);
    if (timings) out["wall_ms"] = rep.wall_ms;
    return out;
}

json experiment_record_json(const ExperimentRecord& rec, bool timings) {
    json out{{"schema", rec.schema},
             {"n", rec.n},
             {"seed", rec.seed},
             {"outcome", rec.outcome},
             {"delta_before_bisection", rec.delta_before_bisection},
             {"disc_before_bisection", disc_json(rec.disc_before_bisection)},
             {"disc_after_bisection", disc_json(rec.disc_after_bisection)},
             {"kappa", rec.kappa},
             {"pairing_size", rec.pairing_size}};
    if (timings) out["wall_ms"] = rec.wall_ms;
    return out;
}

json experiment_summary_json(const ExperimentSummary& s) {
    return json{{"schema", s.schema},
                {"n", s.n},
                {"seeds", s.seeds},
                {"completed", s.completed},
                {"probe_d", s.probe_d},
                {"pre_envelope", s.pre_envelope},
                {"post_envelope", s.post_envelope},
                {"pre_violations", s.pre_violations},
                {"post_violations", s.post_violations},
                {"max_pre", s.max_pre},
                {"max_post", s.max_post},
                {"delta_bound", s.delta_bound},
                {"delta_within", s.delta_within},
                {"pairing_bound", s.pairing_bound},
                {"pairing_within", s.pairing_within},
                {"min_kappa", s.min_kappa},
                {"max_kappa", s.max_kappa}};
}

json stream_entry_json(const StreamEntry& entry, bool timings) {
    const char* outcome = entry.outcome == StreamEntry::Outcome::Found  ? "found"
                          : entry.outcome == StreamEntry::Outcome::None ? "none"
                                                                        : "error";
    json out{{"line", entry.line}, {"graph6", entry.graph6}, {"outcome", outcome}};
    if (entry.coloring) out["coloring"] = coloring_json(*entry.coloring);
    if (!entry.error.empty()) out["error"] = entry.error;
    if (timings) out["wall_ms"] = entry.millis;
    return out;
}

json verification_report_json(const VerificationReport& report, bool timings) {
    json entries = json::array();
    for (const auto& e : report.entries) entries.push_back(stream_entry_json(e, timings));
    return json{{"graphs", report.graphs},
                {"found", report.found},
                {"none", report.none},
                {"errors", report.errors},
                {"entries", std::move(entries)}};
}

}  // namespace cubiso
