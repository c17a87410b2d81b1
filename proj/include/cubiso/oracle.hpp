// Brute-force ground truth: exhaustive isomorphic-bisection search, stream
// verification over graph6 input, and exhaustive reducer enumeration on small
// regions.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cubiso/census.hpp"
#include "cubiso/coloring.hpp"
#include "cubiso/graph.hpp"
#include "cubiso/reducers.hpp"

namespace cubiso {

// First balanced colouring (ascending over red sets, vertex 0 fixed red)
// whose red and blue induced censuses agree; nullopt proves nonexistence.
// prune=false drops the vertex-0 normalization (soundness cross-check).
std::optional<VertexColoring> brute_force_bisection(const CubicGraph& g, int limit = 16,
                                                    bool prune = true);

// ---- stream verification ----

struct StreamEntry {
    enum class Outcome { Found, None, Error };
    long line = 0;  // 1-based position in the input stream
    std::string graph6;
    Outcome outcome = Outcome::Error;
    std::optional<VertexColoring> coloring;
    std::string error;
    long millis = 0;  // wall clock; excluded from canonical reports
};

struct VerificationReport {
    std::vector<StreamEntry> entries;  // input order
    long graphs = 0, found = 0, none = 0, errors = 0;
};

// One graph6 line per graph; blank lines skipped; malformed, disconnected, or
// oversized lines become Error entries and the stream continues.
VerificationReport verify_conjecture_stream(std::istream& in, int limit = 16);

// ---- exhaustive reducer enumeration ----

// Every certified pair over every induced connected R inside region (at most
// 12 vertices), in ascending subset-then-mask order.
std::vector<ReducerCertificate> exhaustive_reducer_search(const CubicGraph& g,
                                                          const std::vector<Vertex>& region,
                                                          int t,
                                                          ReducerKind kind = ReducerKind::Full);

}  // namespace cubiso
