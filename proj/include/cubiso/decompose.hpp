// Edge partitions of a cubic graph into two linear forests F1, F2 with
// bounded path lengths. Exact backtracking (small n, can prove nonexistence)
// and a randomized repair heuristic (large n, relaxes the F1 bound only;
// downstream stages need F2 short but tolerate long F1 paths).

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubiso/graph.hpp"

namespace cubiso {

enum class Forest : std::uint8_t { F1 = 0, F2 = 1 };

inline Forest other(Forest f) { return f == Forest::F1 ? Forest::F2 : Forest::F1; }

struct LinearForestPair {
    // one entry per edge id of the host graph; an edge lies in exactly one
    // forest by construction, so partition violations reduce to a size or
    // value mismatch
    std::vector<Forest> assignment;
    // bounds this assignment satisfies; a relaxed heuristic run reports the
    // F1 bound it actually used
    int l1 = 5;
    int l2 = 5;

    Forest forest_of(int edge_id) const { return assignment[edge_id]; }

    // Maximal paths of the forest, each as a vertex sequence; isolated
    // vertices appear as single-vertex (length-0) paths. Deterministic:
    // ordered by smallest endpoint, traversed from that endpoint.
    std::vector<std::vector<Vertex>> paths_of(const CubicGraph& g, Forest f) const;
    int max_len(const CubicGraph& g, Forest f) const;  // edges, 0 if f is empty
};

enum class DecomposeStatus { Found, ProvenNone, BudgetExhausted };

struct DecomposeResult {
    DecomposeStatus status = DecomposeStatus::BudgetExhausted;
    std::optional<LinearForestPair> pair;  // set iff status == Found
    long nodes = 0;                        // search nodes expanded
};

// Exact search: branches on edges in BFS order with degree/cycle/length
// propagation via rollback DSU. ProvenNone is claimed only after the whole
// space is exhausted within budget.
DecomposeResult thomassen_decompose(const CubicGraph& g, int l1, int l2,
                                    long budget = 200'000'000);

// Greedy seeded assignment plus conflict repair (eject blocking edges and
// re-queue). Tries the requested bounds first, then retries with l1 relaxed
// through a fixed ladder; l2 is never relaxed. Returns nullopt only if every
// rung fails.
std::optional<LinearForestPair> heuristic_decompose(const CubicGraph& g, int l1, int l2,
                                                    std::uint64_t seed);

// nullopt = ok; otherwise a description of the first violated constraint, in
// check order: partition, degree, acyclicity, length bounds.
std::optional<std::string> validate(const CubicGraph& g, const LinearForestPair& pair);

}  // namespace cubiso
