// Multisets of monochromatic components keyed by canonical form, with path
// counts r_{P_t}/b_{P_t} derived. Components above the SmallGraph limit are
// recorded under an oversized sentinel and their vertex sets retained so
// callers can still compare them exactly.

#pragma once

#include <map>

#include "cubiso/canonical.hpp"
#include "cubiso/graph.hpp"

namespace cubiso {

enum class Color : std::uint8_t { Red = 0, Blue = 1 };

inline Color opposite(Color c) { return c == Color::Red ? Color::Blue : Color::Red; }

struct ComponentCensus {
    std::map<CanonicalForm, long> counts;
    std::vector<std::vector<Vertex>> oversized_sets;  // sorted vertex lists

    long components() const;
    long path_count(int t) const;  // number of P_t components, t >= 1
    bool has_oversized() const { return !oversized_sets.empty(); }
    long vertices() const;  // total vertices across components
    long edges() const;     // total edges across components

    friend bool operator==(const ComponentCensus&, const ComponentCensus&) = default;
};

// Census of one colour class of the whole graph.
ComponentCensus census(const CubicGraph& g, const std::vector<Color>& colors, Color side);

// Census of one colour class inside the induced subgraph on `region`.
// region must be sorted; region_colors is aligned with it.
ComponentCensus region_census(const CubicGraph& g, const std::vector<Vertex>& region,
                              const std::vector<Color>& region_colors, Color side);

}  // namespace cubiso
