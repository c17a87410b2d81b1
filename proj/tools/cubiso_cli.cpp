// Command-line front end: graph6 in, JSON-lines out. Subcommands cover the
// decomposition, colouring, full pipeline, certification, brute-force
// oracles, reducer search and the concentration experiment. Exit codes:
// 0 success with certificate, 2 verified nonexistence, 3 stage failure,
// 4 input error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cubiso/harness.hpp"
#include "cubiso/json_io.hpp"
#include "cubiso/oracle.hpp"

using namespace cubiso;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kNonexistence = 2;
constexpr int kStageFailure = 3;
constexpr int kInputError = 4;

struct InputOpts {
    std::vector<std::string> inputs;  // graph6 files; "-" reads stdin
    int random_n = 0;
    std::uint64_t seed = 1;
};

void attach_inputs(CLI::App* cmd, InputOpts& in) {
    cmd->add_option("inputs", in.inputs, "graph6 files (one graph per line; \"-\" for stdin)");
    cmd->add_option("--random", in.random_n, "generate one random cubic graph of this order");
    cmd->add_option("--seed", in.seed, "seed for every randomized step");
}

std::vector<CubicGraph> load_graphs(const InputOpts& in) {
    std::vector<CubicGraph> graphs;
    for (const auto& path : in.inputs) {
        std::vector<std::string> lines;
        if (path == "-") {
            std::string line;
            while (std::getline(std::cin, line))
                if (!line.empty()) lines.push_back(line);
        } else {
            lines = read_graph6_lines(path);
        }
        for (const auto& line : lines) graphs.push_back(parse_cubic_graph6(line));
    }
    if (in.random_n > 0) graphs.push_back(random_cubic(in.random_n, in.seed));
    if (graphs.empty()) throw std::invalid_argument("no input graphs (give files or --random)");
    return graphs;
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

void maybe_write_dot(const std::string& path, const CubicGraph& g, const VertexColoring* c) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open DOT output file " + path);
    if (c) {
        std::vector<int> ints(c->colors.size());
        for (std::size_t i = 0; i < ints.size(); ++i)
            ints[i] = (*c)[static_cast<Vertex>(i)] == Color::Red ? 0 : 1;
        out << to_dot(g, &ints);
    } else {
        out << to_dot(g, nullptr);
    }
}

VertexColoring load_coloring(const std::string& file, const std::string& inline_colors) {
    if (!file.empty() && !inline_colors.empty())
        throw std::invalid_argument("give --coloring or --colors, not both");
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw std::invalid_argument("cannot open colouring file " + file);
        json j;
        in >> j;
        return coloring_from_json(j);
    }
    if (!inline_colors.empty()) return coloring_from_json(json{{"colors", inline_colors}});
    throw std::invalid_argument("a colouring is required (--coloring FILE or --colors RB...)");
}

// ---- subcommand bodies ----

int run_decompose(const InputOpts& in, int l1, int l2, bool heuristic, long budget,
                  const std::string& dot) {
    auto graphs = load_graphs(in);
    bool any_unsettled = false, any_proven_none = false;
    for (const auto& g : graphs) {
        json rec{{"graph", graph_json(g)}, {"l1", l1}, {"l2", l2}};
        std::optional<LinearForestPair> pair;
        if (heuristic) {
            pair = heuristic_decompose(g, l1, l2, in.seed);
            rec["mode"] = "heuristic";
            rec["status"] = pair ? "found" : "miss";  // a miss proves nothing
            if (!pair) any_unsettled = true;
        } else {
            auto res = thomassen_decompose(g, l1, l2, budget);
            rec["mode"] = "exact";
            rec["nodes"] = res.nodes;
            rec["status"] = res.status == DecomposeStatus::Found        ? "found"
                            : res.status == DecomposeStatus::ProvenNone ? "none"
                                                                        : "budget";
            if (res.status == DecomposeStatus::ProvenNone) any_proven_none = true;
            if (res.status == DecomposeStatus::BudgetExhausted) any_unsettled = true;
            pair = res.pair;
        }
        if (pair) rec["forests"] = forest_pair_json(g, *pair);
        emit(rec);
    }
    maybe_write_dot(dot, graphs.front(), nullptr);
    if (any_unsettled) return kStageFailure;
    return any_proven_none ? kNonexistence : kOk;
}

int run_color(const InputOpts& in, int d, int l1, int l2, const std::string& dot) {
    auto graphs = load_graphs(in);
    bool ok = true;
    const VertexColoring* dot_colors = nullptr;
    VertexColoring first_coloring;
    for (const auto& g : graphs) {
        json rec{{"graph", graph_json(g)}, {"seed", in.seed}, {"d", d}};
        auto pair = heuristic_decompose(g, l1, l2, in.seed);
        if (!pair) {
            rec["status"] = "decompose-failed";
            emit(rec);
            ok = false;
            continue;
        }
        auto c = random_proper_coloring(g, *pair, in.seed);
        rec["delta_after_colouring"] = c.delta();
        json disc0 = json::array();
        for (long x : path_discrepancies(g, c)) disc0.push_back(x);
        rec["disc_before_bisection"] = std::move(disc0);
        VertexColoring b;
        try {
            b = make_bisection(g, c, *pair);
        } catch (const bisection_error& e) {
            rec["status"] = "bisect-failed";
            rec["detail"] = e.what();
            emit(rec);
            ok = false;
            continue;
        }
        json disc1 = json::array();
        for (long x : path_discrepancies(g, b)) disc1.push_back(x);
        rec["disc_after_bisection"] = std::move(disc1);
        rec["coloring"] = coloring_json(b);
        try {
            auto centres = select_separated_centres(g, d);
            auto balls = classify_balls(g, b, centres, d);
            auto pairing = pair_opposite_balls(g, b, balls);
            rec["centres"] = centres.size();
            rec["kappa"] = balls.kappa();
            json hist = json::array();
            for (long y : balls.counts) hist.push_back(y);
            rec["class_sizes"] = std::move(hist);
            rec["pairing_size"] = pairing.s();
            rec["unmatched"] = pairing.unmatched.size();
        } catch (const ball_size_error& e) {
            rec["classify_skipped"] = e.what();
        }
        rec["status"] = "ok";
        emit(rec);
        if (!dot_colors) {
            first_coloring = b;
            dot_colors = &first_coloring;
        }
    }
    maybe_write_dot(dot, graphs.front(), dot_colors);
    return ok ? kOk : kStageFailure;
}

int run_pipeline_cmd(const InputOpts& in, PipelineConfig cfg, bool timings,
                     const std::string& dot) {
    cfg.seed = in.seed;
    auto graphs = load_graphs(in);
    bool all_ok = true;
    const VertexColoring* dot_colors = nullptr;
    VertexColoring first_coloring;
    for (const auto& g : graphs) {
        auto rep = run_pipeline(g, cfg);
        json rec = pipeline_report_json(rep, timings);
        rec["graph"] = graph_json(g);
        emit(rec);
        if (!rep.success()) all_ok = false;
        else if (!dot_colors) {
            first_coloring = *rep.coloring;
            dot_colors = &first_coloring;
        }
    }
    maybe_write_dot(dot, graphs.front(), dot_colors);
    return all_ok ? kOk : kStageFailure;
}

int run_verify(const InputOpts& in, const std::string& coloring_file,
               const std::string& inline_colors, long budget, const std::string& dot) {
    auto graphs = load_graphs(in);
    auto c = load_coloring(coloring_file, inline_colors);
    bool any_refuted = false, any_undecided = false;
    for (const auto& g : graphs) {
        if (c.n() != g.n())
            throw std::invalid_argument("colouring length " + std::to_string(c.n()) +
                                        " does not match graph order " + std::to_string(g.n()));
        auto check = verify_isomorphic_bisection(g, c, budget);
        json rec{{"graph", graph_json(g)}, {"check", bisection_check_json(check)}};
        emit(rec);
        if (check.verdict == BisectionVerdict::Refuted) any_refuted = true;
        if (check.verdict == BisectionVerdict::Undecided) any_undecided = true;
    }
    maybe_write_dot(dot, graphs.front(), &c);
    // an Undecided budget stop is a stage failure; a Refuted verdict is a
    // verified negative, same family as brute-force nonexistence
    if (any_undecided) return kStageFailure;
    return any_refuted ? kNonexistence : kOk;
}

int run_bruteforce(const InputOpts& in, int limit, bool prune, const std::string& dot) {
    auto graphs = load_graphs(in);
    bool any_none = false;
    const VertexColoring* dot_colors = nullptr;
    VertexColoring first_coloring;
    for (const auto& g : graphs) {
        auto found = brute_force_bisection(g, limit, prune);
        json rec{{"graph", graph_json(g)}, {"outcome", found ? "found" : "none"}};
        if (found) {
            rec["coloring"] = coloring_json(*found);
            auto check = verify_isomorphic_bisection(g, *found);
            rec["check"] = bisection_check_json(check);
            if (!dot_colors) {
                first_coloring = *found;
                dot_colors = &first_coloring;
            }
        } else {
            any_none = true;
        }
        emit(rec);
    }
    maybe_write_dot(dot, graphs.front(), dot_colors);
    return any_none ? kNonexistence : kOk;
}

int run_verify_stream(const std::string& input, int limit, bool timings) {
    VerificationReport report;
    if (input == "-" || input.empty()) {
        report = verify_conjecture_stream(std::cin, limit);
    } else {
        std::ifstream f(input);
        if (!f) throw std::invalid_argument("cannot open " + input);
        report = verify_conjecture_stream(f, limit);
    }
    for (const auto& e : report.entries) emit(stream_entry_json(e, timings));
    json summary = verification_report_json(report, timings);
    summary.erase("entries");
    emit(summary);
    if (report.none > 0) return kNonexistence;
    if (report.errors > 0) return kInputError;
    return kOk;
}

int run_reducer_find(const InputOpts& in, int t, int radius, Vertex vertex,
                     const std::string& dot) {
    auto graphs = load_graphs(in);
    bool all_found = true;
    for (const auto& g : graphs) {
        if (vertex < 0 || vertex >= g.n())
            throw std::invalid_argument("--vertex out of range for a graph of order " +
                                        std::to_string(g.n()));
        auto res = find_reducer(g, vertex, t, radius);
        json rec{{"graph", graph_json(g)}, {"t", t}, {"radius", radius}, {"vertex", vertex}};
        if (res.reducer) {
            rec["outcome"] = "found";
            rec["reducer"] = reducer_json(*res.reducer);
            auto verdict = verify_reducer(g, *res.reducer);
            rec["verifier"] = json{{"certified", verdict.certified},
                                   {"violation", verdict.violation}};
        } else {
            rec["outcome"] = "none";
            rec["diagnostics"] = res.diagnostics;
            all_found = false;
        }
        emit(rec);
    }
    maybe_write_dot(dot, graphs.front(), nullptr);
    return all_found ? kOk : kStageFailure;
}

int run_reducer_verify(const InputOpts& in, const std::string& cert_file) {
    auto graphs = load_graphs(in);
    std::ifstream f(cert_file);
    if (!f) throw std::invalid_argument("cannot open certificate file " + cert_file);
    json j;
    f >> j;
    auto cert = reducer_from_json(j);
    bool all_certified = true;
    for (const auto& g : graphs) {
        auto verdict = verify_reducer(g, cert);
        emit(json{{"graph", graph_json(g)},
                  {"certified", verdict.certified},
                  {"violation", verdict.violation}});
        if (!verdict.certified) all_certified = false;
    }
    return all_certified ? kOk : kStageFailure;
}

int run_experiment(int n, int seeds, int l1, int l2, std::uint64_t base_seed, int threads,
                   bool timings) {
    auto result = concentration_experiment(n, seeds, l1, l2, base_seed, threads);
    for (const auto& rec : result.records) emit(experiment_record_json(rec, timings));
    emit(experiment_summary_json(result.summary));
    return result.summary.completed > 0 || seeds == 0 ? kOk : kStageFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"isomorphic bisections of cubic graphs: pipeline, oracles, experiments"};
    app.require_subcommand(1);
    bool timings = false;
    std::string dot;
    app.add_flag("--timings", timings, "include wall-clock fields in JSON output");
    app.add_option("--dot", dot, "write the first graph as DOT (coloured when available)");

    // decompose
    InputOpts dec_in;
    int dec_l1 = 5, dec_l2 = 5;
    bool dec_exact = false, dec_heur = false;
    long dec_budget = 200'000'000;
    auto* dec = app.add_subcommand("decompose", "split the edges into two linear forests");
    attach_inputs(dec, dec_in);
    dec->add_option("--l1", dec_l1, "max path length in the first forest");
    dec->add_option("--l2", dec_l2, "max path length in the second forest");
    dec->add_flag("--exact", dec_exact, "exact backtracking search (default)");
    dec->add_flag("--heuristic", dec_heur, "seeded greedy with conflict repair");
    dec->add_option("--budget", dec_budget, "node budget for the exact search");

    // color
    InputOpts col_in;
    int col_d = 1, col_l1 = 5, col_l2 = 5;
    auto* col = app.add_subcommand("color", "random proper colouring, bisection, ball classes");
    attach_inputs(col, col_in);
    col->add_option("--d", col_d, "ball radius for classification");
    col->add_option("--l1", col_l1, "max path length in the coloured forest");
    col->add_option("--l2", col_l2, "max path length in the complementary forest");

    // pipeline
    InputOpts pip_in;
    PipelineConfig pip_cfg;
    bool pip_no_fallback = false;
    auto* pip = app.add_subcommand("pipeline", "full run: decompose, colour, balance, certify");
    attach_inputs(pip, pip_in);
    pip->add_option("--d", pip_cfg.d, "ball radius (0 derives it from the reducer budget)");
    pip->add_option("--budget", pip_cfg.reducer_radius_budget, "reducer search radius");
    pip->add_option("--l1", pip_cfg.l1, "max path length in the coloured forest");
    pip->add_option("--l2", pip_cfg.l2, "max path length in the complementary forest");
    pip->add_option("--attempts", pip_cfg.colour_attempts, "colour/repair rounds");
    pip->add_option("--repair-budget", pip_cfg.repair_budget, "local-search move budget");
    pip->add_option("--iso-budget", pip_cfg.iso_node_budget, "verifier backtracking budget");
    pip->add_flag("--no-fallback", pip_no_fallback, "disable the local-search fallback");

    // verify
    InputOpts ver_in;
    std::string ver_file, ver_colors;
    long ver_budget = 200'000;
    auto* ver = app.add_subcommand("verify", "certify a given colouring as an isomorphic bisection");
    attach_inputs(ver, ver_in);
    ver->add_option("--coloring", ver_file, "JSON colouring file ({\"colors\": \"RB...\"})");
    ver->add_option("--colors", ver_colors, "inline colour string, R/B per vertex");
    ver->add_option("--iso-budget", ver_budget, "verifier backtracking budget");

    // bruteforce
    InputOpts bf_in;
    int bf_limit = 16;
    bool bf_no_prune = false;
    auto* bf = app.add_subcommand("bruteforce", "exhaustive isomorphic-bisection search");
    attach_inputs(bf, bf_in);
    bf->add_option("--limit", bf_limit, "largest order accepted");
    bf->add_flag("--no-prune", bf_no_prune, "drop the vertex-0 normalization");

    // verify-stream
    std::string vs_input = "-";
    int vs_limit = 16;
    auto* vs = app.add_subcommand("verify-stream", "brute-force every graph6 line of a stream");
    vs->add_option("input", vs_input, "graph6 stream (\"-\" for stdin)");
    vs->add_option("--limit", vs_limit, "largest order accepted");

    // reducer find | verify
    auto* red = app.add_subcommand("reducer", "search or check recolouring gadgets");
    red->require_subcommand(1);
    InputOpts rf_in;
    int rf_t = 3, rf_radius = 50;
    Vertex rf_vertex = 0;
    auto* rf = red->add_subcommand("find", "search for a reducer near a vertex");
    attach_inputs(rf, rf_in);
    rf->add_option("--t", rf_t, "target path order, 3..6")->required();
    rf->add_option("--radius", rf_radius, "search radius budget");
    rf->add_option("--vertex", rf_vertex, "centre vertex");
    InputOpts rv_in;
    std::string rv_cert;
    auto* rv = red->add_subcommand("verify", "check a certificate against each graph");
    attach_inputs(rv, rv_in);
    rv->add_option("--certificate", rv_cert, "reducer certificate JSON file")->required();

    // experiment
    int ex_n = 10'000, ex_seeds = 50, ex_l1 = 5, ex_l2 = 5, ex_threads = 0;
    std::uint64_t ex_base_seed = 1;
    auto* ex = app.add_subcommand("experiment", "discrepancy concentration over random graphs");
    ex->add_option("--n", ex_n, "graph order");
    ex->add_option("--seeds", ex_seeds, "number of seeds");
    ex->add_option("--l1", ex_l1, "max path length in the coloured forest");
    ex->add_option("--l2", ex_l2, "max path length in the complementary forest");
    ex->add_option("--base-seed", ex_base_seed, "first seed");
    ex->add_option("--threads", ex_threads, "worker threads (0 = hardware)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*dec) {
            if (dec_exact && dec_heur)
                throw std::invalid_argument("--exact and --heuristic are mutually exclusive");
            return run_decompose(dec_in, dec_l1, dec_l2, dec_heur, dec_budget, dot);
        }
        if (*col) return run_color(col_in, col_d, col_l1, col_l2, dot);
        if (*pip) {
            pip_cfg.fallback = !pip_no_fallback;
            return run_pipeline_cmd(pip_in, pip_cfg, timings, dot);
        }
        if (*ver) return run_verify(ver_in, ver_file, ver_colors, ver_budget, dot);
        if (*bf) return run_bruteforce(bf_in, bf_limit, !bf_no_prune, dot);
        if (*vs) return run_verify_stream(vs_input, vs_limit, timings);
        if (*rf) return run_reducer_find(rf_in, rf_t, rf_radius, rf_vertex, dot);
        if (*rv) return run_reducer_verify(rv_in, rv_cert);
        if (*ex)
            return run_experiment(ex_n, ex_seeds, ex_l1, ex_l2, ex_base_seed, ex_threads,
                                  timings);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const generation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kStageFailure;
    }
    return kInputError;
}
