// Stage 1 of the bisection pipeline: random proper colourings of F1, path
// discrepancy tracking, exact rebalancing by even-path flips, separated
// centre selection, ball classification and opposite-pair matching.

#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cubiso/canonical.hpp"
#include "cubiso/census.hpp"
#include "cubiso/decompose.hpp"
#include "cubiso/graph.hpp"

namespace cubiso {

struct VertexColoring {
    std::vector<Color> colors;

    long delta() const;  // #red - #blue
    Color operator[](Vertex v) const { return colors[v]; }
    long n() const { return static_cast<long>(colors.size()); }
    friend bool operator==(const VertexColoring&, const VertexColoring&) = default;
};

// One bit per F1 path (in paths_of order): 0 starts the path red at its
// smallest endpoint, 1 starts it blue. The two proper colourings of a path.
VertexColoring proper_coloring_from_choices(const CubicGraph& g, const LinearForestPair& pair,
                                            const std::vector<std::uint8_t>& choices);

// Uniform independent choice per F1 path.
VertexColoring random_proper_coloring(const CubicGraph& g, const LinearForestPair& pair,
                                      std::uint64_t seed);

// No F1 edge monochromatic.
bool proper_on_f1(const CubicGraph& g, const LinearForestPair& pair, const VertexColoring& c);

// r_{P_t} - b_{P_t} for t = 1..6 (index t-1).
std::array<long, 6> path_discrepancies(const CubicGraph& g, const VertexColoring& c);

class bisection_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Flip even-length F1 paths (surplus exactly 1 each) of the majority colour,
// in path order, until #red == #blue. Input must be proper on F1; flips
// |delta|/2 paths, so at most (l1+1)*|delta|/2 vertices are recoloured.
// Throws bisection_error if the precondition fails or paths run out.
VertexColoring make_bisection(const CubicGraph& g, const VertexColoring& c,
                              const LinearForestPair& pair);

// Greedy by vertex id; selected centres are pairwise at distance >= 2d+1.
// Ball growth gives size >= n / (3 * 2^(2d+1)).
std::vector<Vertex> select_separated_centres(const CubicGraph& g, int d);

class ball_size_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Balls keyed by coloured canonical form (colour pattern quotiented by ball
// automorphisms). kappa = number of distinct keys.
struct BallClassCensus {
    int d = 0;
    std::vector<Vertex> centres;
    std::vector<CanonicalForm> keys;          // ascending
    std::vector<long> counts;                 // Y_j, aligned with keys
    std::vector<int> opposite;                // index of the colour-reversed key, -1 if absent
    std::vector<std::vector<int>> members;    // centre indices per class, ascending

    long kappa() const { return static_cast<long>(keys.size()); }
};

// Throws ball_size_error when some B_d(centre) exceeds the SmallGraph limit.
BallClassCensus classify_balls(const CubicGraph& g, const VertexColoring& c,
                               const std::vector<Vertex>& centres, int d);

struct BallPair {
    Vertex u, w;
    // x in B_d(u) -> f(x) in B_d(w); a graph isomorphism reversing colours
    std::vector<std::pair<Vertex, Vertex>> iso;
};

struct BallPairing {
    int d = 0;
    std::vector<BallPair> pairs;
    std::vector<Vertex> unmatched;  // centres with no opposite partner

    long s() const { return static_cast<long>(pairs.size()); }
};

// Match each class against its colour-reversed class, lowest centre first;
// self-opposite classes pair internally. Every stored map is rechecked
// pointwise (adjacency preserved, colours reversed); a failure there throws
// std::logic_error since it would falsify the canonical-form machinery.
BallPairing pair_opposite_balls(const CubicGraph& g, const VertexColoring& c,
                                const BallClassCensus& census);

// 2 * exp(-2 m^2 / (c^2 n)): bounded-differences tail bound with Lipschitz
// constant c over n independent coordinates, deviation m.
double mcdiarmid_bound(double c, double n, double m);

}  // namespace cubiso
