// Stage 2 of the bisection pipeline: walk the path-count discrepancies to
// zero by recolouring reducer regions inside matched opposite balls, close
// P_2 through the degree identity, certify the result as an isomorphic
// bisection, and fall back to bounded local search when the matched-ball
// route runs out of material.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cubiso/coloring.hpp"
#include "cubiso/reducers.hpp"

namespace cubiso {

// A balancing step that cannot proceed or whose accounting fails afterwards.
// The driver converts these into failure reports so callers can fall back to
// repair instead of crashing.
class balance_step_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct BalanceStep {
    int t = 0;            // stage served
    Vertex u = 0, w = 0;  // ball pair consumed
    std::string provenance;
    std::array<long, 6> disc_after{};  // r_{P_k} - b_{P_k} at index k-1
};

struct BalanceState {
    VertexColoring coloring;
    BallPairing pairing;
    std::size_t next_pair = 0;  // pairs[0..next_pair) are consumed
    std::vector<BalanceStep> log;
    std::array<long, 6> discrepancies{};  // kept consistent with coloring
};

BalanceState make_balance_state(const CubicGraph& g, const VertexColoring& c,
                                const BallPairing& pairing);

// One unit step: recolour the certificate's region B_2(R) with psi2 and its
// image under the pair's colour-reversing map with the opposite of psi1;
// when the surplus colour is blue the roles are exchanged. Requires the
// region inside B_d(u) and the two balls still exactly opposite. The target
// discrepancy moves by exactly one and no census entry outside P_1..P_t
// changes; both are rechecked against a fresh census and violations throw
// balance_step_error. Queue bookkeeping stays with the caller.
BalanceState apply_reducer_pair(const CubicGraph& g, const BalanceState& state,
                                const BallPair& pair, const ReducerCertificate& cert,
                                Color surplus);

struct BalanceOutcome {
    std::optional<VertexColoring> coloring;  // set on success
    std::vector<BalanceStep> steps;
    std::string failure;  // names the stage and cause when coloring is empty

    bool ok() const { return coloring.has_value(); }
};

// Stages t = 6,5,4,3 in order; each unit of discrepancy consumes one fresh
// ball pair and one reducer found inside that ball. Exhausted pairs, a missed
// reducer search, or failed step accounting end the run with a report naming
// the stage. On success P_2 has closed and every path count matches.
BalanceOutcome balance_all(const CubicGraph& g, const VertexColoring& c,
                           const BallPairing& pairing, int reducer_budget);

struct P2ClosureResult {
    bool ok = false;
    std::string violation;  // first failed identity, empty when ok
    long red_edges = 0;     // monochromatic edge counts, directly tallied
    long blue_edges = 0;
    long cut = 0;  // bichromatic edges
};

// For a bisection whose censuses agree on every class except possibly P_2,
// the degree identity #{red edges} = (3 #red - cut)/2 and its blue twin force
// r_{P_2} = b_{P_2}. Recomputes both sides of each identity independently and
// flags any mismatch. claimed_red_edges substitutes for the direct tally so
// tests can inject a corrupt count; preconditions unmet throw
// std::invalid_argument.
P2ClosureResult p2_closure_check(const CubicGraph& g, const VertexColoring& c,
                                 std::optional<long> claimed_red_edges = std::nullopt);

enum class BisectionVerdict : std::uint8_t { Certified = 0, Refuted = 1, Undecided = 2 };

struct BisectionCheck {
    BisectionVerdict verdict = BisectionVerdict::Undecided;
    std::string detail;  // refutation reason or undecided cause
    // matched multiset on certification: canonical class with shared count
    std::vector<std::pair<CanonicalForm, long>> shared;

    bool certified() const { return verdict == BisectionVerdict::Certified; }
};

// Certifies iff the colour classes have equal size and equal component
// censuses as multisets of isomorphism classes. Components beyond the exact
// canonical-form limit are compared by a budgeted direct isomorphism search;
// when that budget runs out the verdict is Undecided, never a false
// certification.
BisectionCheck verify_isomorphic_bisection(const CubicGraph& g, const VertexColoring& c,
                                           long iso_node_budget = 200'000);

struct RepairOutcome {
    std::optional<VertexColoring> coloring;  // set only when certified
    VertexColoring best;                     // best state reached either way
    long steps = 0;
    std::string note;  // failure cause, or the certification route

    bool ok() const { return coloring.has_value(); }
};

// Bounded local search from a bisection: flips whole F1 paths (singly when
// colour-balanced, in compensating pairs otherwise) and, at local optima,
// swaps a red/blue vertex pair, greedily minimising
// (|d_6|, |d_5|, |d_4|, |d_3|, census distance off the paths) in lexicographic
// order. #red = #blue is preserved by every move; success is declared only
// when the certifier accepts the final colouring. budget bounds applied moves.
RepairOutcome greedy_repair(const CubicGraph& g, const VertexColoring& c,
                            const LinearForestPair& pair, long budget, std::uint64_t seed);

}  // namespace cubiso
