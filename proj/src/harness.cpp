#include "cubiso/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <thread>

namespace cubiso {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t x = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    return x;
}

std::string disc_string(const std::array<long, 6>& d) {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < 6; ++i) os << (i ? " " : "") << d[i];
    os << "]";
    return os.str();
}

}  // namespace

// ---- adaptive radius ----

int adaptive_ball_radius(int reducer_radius_budget) {
    return std::max(reducer_radius_budget, 1);
}

// ---- random instances ----

CubicGraph random_cubic(int n, std::uint64_t seed, bool require_connected) {
    if (n < 4 || n % 2 != 0)
        throw std::invalid_argument("random_cubic needs an even order of at least 4");
    std::mt19937_64 rng(seed);
    std::vector<int> points(3 * static_cast<std::size_t>(n));
    constexpr int kAttempts = 5000;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        for (std::size_t i = 0; i < points.size(); ++i) points[i] = static_cast<int>(i);
        std::shuffle(points.begin(), points.end(), rng);
        std::vector<std::pair<Vertex, Vertex>> edges;
        edges.reserve(points.size() / 2);
        std::set<std::pair<Vertex, Vertex>> seen;
        bool simple = true;
        for (std::size_t i = 0; i + 1 < points.size(); i += 2) {
            Vertex u = points[i] / 3, v = points[i + 1] / 3;
            if (u == v || !seen.insert(std::minmax(u, v)).second) {
                simple = false;
                break;
            }
            edges.emplace_back(u, v);
        }
        if (!simple) continue;
        auto g = CubicGraph::from_edges(n, edges);
        if (require_connected && !is_connected(g)) continue;
        return g;
    }
    throw generation_error("pairing model produced no acceptable draw in " +
                           std::to_string(kAttempts) + " attempts (n = " + std::to_string(n) +
                           ")");
}

// ---- pipeline ----

namespace {

std::vector<std::vector<Vertex>> component_lists(const CubicGraph& g) {
    std::vector<std::vector<Vertex>> comps;
    std::vector<char> visited(g.n(), 0);
    for (Vertex s = 0; s < g.n(); ++s) {
        if (visited[s]) continue;
        std::vector<Vertex> comp{s};
        visited[s] = 1;
        for (std::size_t head = 0; head < comp.size(); ++head)
            for (Vertex w : g.neighbors(comp[head]))
                if (!visited[w]) {
                    visited[w] = 1;
                    comp.push_back(w);
                }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

PipelineReport run_connected(const CubicGraph& g, const PipelineConfig& cfg) {
    PipelineReport rep;
    rep.d = cfg.d > 0 ? cfg.d : adaptive_ball_radius(cfg.reducer_radius_budget);
    std::string last_failure = "no stage ran";
    auto stage = [&](const std::string& name, bool ok, const std::string& detail) {
        rep.stages.push_back(StageReport{name, ok, detail});
        if (!ok) last_failure = name + ": " + detail;
    };

    std::optional<LinearForestPair> pair;
    for (int k = 0; k < cfg.decompose_tries && !pair; ++k)
        pair = heuristic_decompose(g, cfg.l1, cfg.l2, mix_seed(cfg.seed, 100 + k));
    if (!pair) {
        stage("decompose", false,
              "heuristic decomposition failed after " + std::to_string(cfg.decompose_tries) +
                  " reseeds (l1 = " + std::to_string(cfg.l1) +
                  ", l2 = " + std::to_string(cfg.l2) + ")");
        rep.failure = last_failure;
        return rep;
    }
    stage("decompose", true,
          "max path lengths " + std::to_string(pair->max_len(g, Forest::F1)) + "/" +
              std::to_string(pair->max_len(g, Forest::F2)));

    for (int attempt = 0; attempt < cfg.colour_attempts; ++attempt) {
        const std::string tag = attempt ? "attempt " + std::to_string(attempt) + ": " : "";
        const std::uint64_t aseed = mix_seed(cfg.seed, 200 + attempt);

        auto coloured = random_proper_coloring(g, *pair, aseed);
        if (attempt == 0) rep.delta_after_colouring = coloured.delta();
        stage("colour", true, tag + "delta " + std::to_string(coloured.delta()));

        VertexColoring bisected;
        try {
            bisected = make_bisection(g, coloured, *pair);
        } catch (const bisection_error& e) {
            stage("bisect", false, tag + e.what());
            continue;
        }
        auto disc = path_discrepancies(g, bisected);
        if (attempt == 0) rep.initial_discrepancies = disc;
        stage("bisect", true, tag + "discrepancies " + disc_string(disc));

        bool structured_ok = false;
        VertexColoring finished;
        try {
            auto centres = select_separated_centres(g, rep.d);
            auto balls = classify_balls(g, bisected, centres, rep.d);
            rep.kappa = balls.kappa();
            auto pairing = pair_opposite_balls(g, bisected, balls);
            rep.pairing_size = pairing.s();
            stage("classify", true,
                  tag + std::to_string(centres.size()) + " centres, kappa " +
                      std::to_string(balls.kappa()) + ", " + std::to_string(pairing.s()) +
                      " opposite pairs");
            auto balanced = balance_all(g, bisected, pairing, cfg.reducer_radius_budget);
            if (balanced.ok()) {
                stage("balance", true,
                      tag + std::to_string(balanced.steps.size()) + " reducer steps");
                rep.balance_steps = balanced.steps;
                finished = *balanced.coloring;
                structured_ok = true;
            } else {
                stage("balance", false, tag + balanced.failure);
            }
        } catch (const ball_size_error& e) {
            stage("classify", false, tag + e.what());
        }

        std::string route = "structured";
        if (!structured_ok) {
            if (!cfg.fallback) continue;
            auto repaired = greedy_repair(g, bisected, *pair, cfg.repair_budget,
                                          mix_seed(aseed, 300));
            rep.repair_steps += repaired.steps;
            if (!repaired.ok()) {
                stage("repair", false,
                      tag + repaired.note + " after " + std::to_string(repaired.steps) +
                          " moves");
                continue;
            }
            stage("repair", true,
                  tag + std::to_string(repaired.steps) + " moves (" + repaired.note + ")");
            finished = *repaired.coloring;
            route = "repair";
        }

        auto check = verify_isomorphic_bisection(g, finished, cfg.iso_node_budget);
        if (!check.certified()) {
            stage("verify", false, tag + check.detail);
            continue;
        }
        stage("verify", true,
              tag + "certified, " + std::to_string(check.shared.size()) + " shared classes");
        rep.certificate = std::move(check);
        rep.coloring = std::move(finished);
        rep.final_discrepancies = path_discrepancies(g, *rep.coloring);
        rep.status = route;
        return rep;
    }

    rep.failure = last_failure;
    return rep;
}

}  // namespace

PipelineReport run_pipeline(const CubicGraph& g, const PipelineConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    auto comps = component_lists(g);

    if (comps.size() == 1) {
        auto rep = run_connected(g, cfg);
        rep.wall_ms = ms_since(t0);
        return rep;
    }

    PipelineReport rep;
    rep.d = cfg.d > 0 ? cfg.d : adaptive_ball_radius(cfg.reducer_radius_budget);
    VertexColoring merged;
    merged.colors.assign(g.n(), Color::Red);
    bool any_repair = false;

    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        const auto& verts = comps[ci];
        std::vector<Vertex> local_of(g.n(), -1);
        for (std::size_t i = 0; i < verts.size(); ++i) local_of[verts[i]] = static_cast<Vertex>(i);
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (Vertex v : verts)
            for (Vertex w : g.neighbors(v))
                if (v < w) edges.emplace_back(local_of[v], local_of[w]);
        auto sub = CubicGraph::from_edges(static_cast<int>(verts.size()), edges);

        PipelineConfig sub_cfg = cfg;
        sub_cfg.seed = mix_seed(cfg.seed, 1000 + ci);
        auto sub_rep = run_connected(sub, sub_cfg);

        const std::string prefix =
            "component " + std::to_string(ci) + " (n = " + std::to_string(sub.n()) + "): ";
        for (auto& st : sub_rep.stages)
            rep.stages.push_back(StageReport{prefix + st.stage, st.ok, st.detail});
        rep.delta_after_colouring += sub_rep.delta_after_colouring;
        for (int k = 0; k < 6; ++k) {
            rep.initial_discrepancies[k] += sub_rep.initial_discrepancies[k];
            rep.final_discrepancies[k] += sub_rep.final_discrepancies[k];
        }
        rep.kappa += sub_rep.kappa;
        rep.pairing_size += sub_rep.pairing_size;
        rep.repair_steps += sub_rep.repair_steps;
        for (const auto& step : sub_rep.balance_steps) rep.balance_steps.push_back(step);

        if (!sub_rep.success()) {
            rep.failure = prefix + sub_rep.failure;
            rep.wall_ms = ms_since(t0);
            return rep;
        }
        if (sub_rep.status == "repair") any_repair = true;
        for (std::size_t i = 0; i < verts.size(); ++i)
            merged.colors[verts[i]] = (*sub_rep.coloring)[static_cast<Vertex>(i)];
    }

    auto check = verify_isomorphic_bisection(g, merged, cfg.iso_node_budget);
    if (!check.certified()) {
        rep.stages.push_back(StageReport{"verify", false, "merged colouring: " + check.detail});
        rep.failure = "verify: merged colouring: " + check.detail;
        rep.wall_ms = ms_since(t0);
        return rep;
    }
    rep.stages.push_back(
        StageReport{"verify", true,
                    "merged colouring certified, " + std::to_string(check.shared.size()) +
                        " shared classes"});
    rep.certificate = std::move(check);
    rep.coloring = std::move(merged);
    rep.status = any_repair ? "repair" : "structured";
    rep.wall_ms = ms_since(t0);
    return rep;
}

// ---- concentration experiment ----

namespace {

constexpr int kProbeRadius = 1;

ExperimentRecord experiment_run(int n, std::uint64_t seed, int l1, int l2) {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentRecord rec;
    rec.n = n;
    rec.seed = seed;

    std::optional<CubicGraph> g;
    try {
        g = random_cubic(n, seed);
    } catch (const generation_error&) {
        rec.outcome = "generate";
        rec.wall_ms = ms_since(t0);
        return rec;
    }

    auto pair = heuristic_decompose(*g, l1, l2, seed);
    if (!pair) {
        rec.outcome = "decompose";
        rec.wall_ms = ms_since(t0);
        return rec;
    }

    auto coloured = random_proper_coloring(*g, *pair, seed);
    rec.delta_before_bisection = coloured.delta();
    rec.disc_before_bisection = path_discrepancies(*g, coloured);

    VertexColoring bisected;
    try {
        bisected = make_bisection(*g, coloured, *pair);
    } catch (const bisection_error&) {
        rec.outcome = "bisect";
        rec.wall_ms = ms_since(t0);
        return rec;
    }
    rec.disc_after_bisection = path_discrepancies(*g, bisected);

    try {
        auto centres = select_separated_centres(*g, kProbeRadius);
        auto balls = classify_balls(*g, bisected, centres, kProbeRadius);
        rec.kappa = balls.kappa();
        rec.pairing_size = pair_opposite_balls(*g, bisected, balls).s();
    } catch (const ball_size_error&) {
        // probe skipped; kappa stays 0
    }

    rec.outcome = "ok";
    rec.wall_ms = ms_since(t0);
    return rec;
}

ExperimentSummary summarize(const std::vector<ExperimentRecord>& records, int n, int seeds) {
    ExperimentSummary s;
    s.n = n;
    s.seeds = seeds;
    s.probe_d = kProbeRadius;
    const double root = std::sqrt(static_cast<double>(n) * std::log(static_cast<double>(n)));
    s.pre_envelope = 2.0 * root;
    s.post_envelope = 3.0 * root;
    s.delta_bound = root / 10.0;
    s.pairing_bound = std::ldexp(static_cast<double>(n), -2 * kProbeRadius - 5);

    bool first = true;
    for (const auto& rec : records) {
        if (rec.outcome != "ok") continue;
        ++s.completed;
        long pre = 0, post = 0;
        for (int t = 2; t <= 6; ++t) {
            pre = std::max(pre, std::labs(rec.disc_before_bisection[t - 1]));
            post = std::max(post, std::labs(rec.disc_after_bisection[t - 1]));
        }
        if (static_cast<double>(pre) > s.pre_envelope) ++s.pre_violations;
        if (static_cast<double>(post) > s.post_envelope) ++s.post_violations;
        s.max_pre = std::max(s.max_pre, pre);
        s.max_post = std::max(s.max_post, post);
        if (static_cast<double>(std::labs(rec.delta_before_bisection)) <= s.delta_bound)
            ++s.delta_within;
        if (static_cast<double>(rec.pairing_size) >= s.pairing_bound) ++s.pairing_within;
        s.min_kappa = first ? rec.kappa : std::min(s.min_kappa, rec.kappa);
        s.max_kappa = first ? rec.kappa : std::max(s.max_kappa, rec.kappa);
        first = false;
    }
    return s;
}

}  // namespace

ExperimentResult concentration_experiment(int n, int seeds, int l1, int l2,
                                          std::uint64_t base_seed, int threads) {
    if (seeds < 0) throw std::invalid_argument("seed count must be non-negative");
    ExperimentResult result;
    result.records.resize(seeds);

    int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::clamp(workers, 1, std::max(seeds, 1));

    std::atomic<int> next{0};
    auto work = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= seeds) return;
            result.records[i] = experiment_run(n, base_seed + static_cast<std::uint64_t>(i),
                                               l1, l2);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    result.summary = summarize(result.records, n, seeds);
    return result;
}

}  // namespace cubiso
