#pragma once
// End-to-end orchestration: random cubic instances via the pairing model, the
// staged pipeline (decompose, colour, bisect, classify/pair, balance, verify)
// with a local-search fallback, and the seed-parallel concentration
// experiment. Reports are plain structs; serialization lives in json_io.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubiso/balance.hpp"
#include "cubiso/coloring.hpp"
#include "cubiso/decompose.hpp"
#include "cubiso/graph.hpp"

namespace cubiso {

// ---- configuration ----

struct PipelineConfig {
    std::uint64_t seed = 1;
    int d = 0;                       // ball radius; 0 derives it from the reducer budget
    int l1 = 5;                      // path bound for the coloured forest
    int l2 = 5;                      // path bound for the complementary forest
    int reducer_radius_budget = 12;  // reducers are searched inside B(centre, budget)
    bool fallback = true;            // run local-search repair when a stage fails
    int colour_attempts = 3;         // fresh colour/repair rounds before giving up
    int decompose_tries = 8;         // heuristic reseeds before the stage fails
    long repair_budget = 200'000;    // local-search move budget per attempt
    long iso_node_budget = 200'000;  // verifier backtracking budget
};

// The dispatcher confines every region to B(centre, budget), so balls of that
// radius already contain the 2-ball of any reducer it can emit.
int adaptive_ball_radius(int reducer_radius_budget);

// ---- random instances ----

class generation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Pairing model: 3n half-edges shuffled and matched; draws with loops or
// parallel edges are rejected and redrawn, as are disconnected draws when
// require_connected. Deterministic given seed. Throws generation_error once
// the redraw cap is hit rather than looping forever.
CubicGraph random_cubic(int n, std::uint64_t seed, bool require_connected = true);

// ---- pipeline ----

struct StageReport {
    std::string stage;
    bool ok = false;
    std::string detail;
};

struct PipelineReport {
    int schema = 1;
    std::string status = "failure";  // "structured" | "repair" | "failure"
    std::string failure;             // stage and cause when status == "failure"
    std::vector<StageReport> stages;
    int d = 0;                       // ball radius used
    long delta_after_colouring = 0;  // colour imbalance before the bisection fix
    std::array<long, 6> initial_discrepancies{};  // right after bisection
    std::array<long, 6> final_discrepancies{};    // of the emitted colouring
    long kappa = 0;        // ball classes seen (0 when classification never ran)
    long pairing_size = 0;
    std::vector<BalanceStep> balance_steps;
    long repair_steps = 0;
    std::optional<VertexColoring> coloring;  // set only alongside a certificate
    BisectionCheck certificate;
    double wall_ms = 0;  // serialized only on request; reports stay reproducible

    bool success() const { return coloring.has_value() && certificate.certified(); }
};

// Connected input runs the stages directly; a disconnected input is split and
// each component (itself cubic, hence of even order) is processed on its own,
// the colourings merged and re-verified as a whole. Success always carries a
// certificate; "structured" means every component balanced via ball pairs,
// "repair" that at least one needed the fallback.
PipelineReport run_pipeline(const CubicGraph& g, const PipelineConfig& config);

// ---- concentration experiment ----

struct ExperimentRecord {
    int schema = 1;
    int n = 0;
    std::uint64_t seed = 0;
    std::string outcome;  // "ok" or the stage that failed
    long delta_before_bisection = 0;
    std::array<long, 6> disc_before_bisection{};
    std::array<long, 6> disc_after_bisection{};
    long kappa = 0;        // ball classes at the probe radius
    long pairing_size = 0;
    double wall_ms = 0;
};

struct ExperimentSummary {
    int schema = 1;
    int n = 0;
    int seeds = 0;
    int completed = 0;   // records with outcome "ok"
    int probe_d = 1;     // radius used for the kappa/pairing probe
    double pre_envelope = 0;     // 2 sqrt(n log n), against disc_before_bisection
    double post_envelope = 0;    // 3 sqrt(n log n), against disc_after_bisection
    int pre_violations = 0;      // completed seeds with some |d_t|, t=2..6, over it
    int post_violations = 0;
    long max_pre = 0;            // worst |d_t|, t=2..6, observed
    long max_post = 0;
    double delta_bound = 0;      // sqrt(n log n) / 10
    int delta_within = 0;        // completed seeds with |delta| <= delta_bound
    double pairing_bound = 0;    // 2^(-2 probe_d - 5) n
    int pairing_within = 0;      // completed seeds with s >= pairing_bound
    long min_kappa = 0, max_kappa = 0;
};

struct ExperimentResult {
    std::vector<ExperimentRecord> records;  // ordered by seed
    ExperimentSummary summary;
};

// One random graph per seed (seeds base_seed .. base_seed + seeds - 1):
// decompose, colour, bisect, probe ball classes at a small fixed radius.
// Decomposition failures are recorded and skipped. Workers run seed-parallel;
// the merged output and the summary depend only on the inputs.
ExperimentResult concentration_experiment(int n, int seeds, int l1, int l2,
                                          std::uint64_t base_seed = 1, int threads = 0);

}  // namespace cubiso
