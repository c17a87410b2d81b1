#include "cubiso/census.hpp"

#include <algorithm>
#include <queue>

namespace cubiso {

long ComponentCensus::components() const {
    long total = 0;
    for (const auto& [form, c] : counts) total += c;
    return total;
}

long ComponentCensus::path_count(int t) const {
    auto it = counts.find(path_form(t));
    return it == counts.end() ? 0 : it->second;
}

long ComponentCensus::vertices() const {
    long total = 0;
    for (const auto& [form, c] : counts) {
        if (form.oversized()) continue;
        int n = static_cast<unsigned char>(form.bytes[1]) << 8 | static_cast<unsigned char>(form.bytes[2]);
        total += static_cast<long>(n) * c;
    }
    for (const auto& s : oversized_sets) total += static_cast<long>(s.size());
    return total;
}

long ComponentCensus::edges() const {
    long total = 0;
    for (const auto& [form, c] : counts) {
        if (form.oversized()) {
            long m = 0;
            for (int i = 5; i <= 8; ++i) m = m << 8 | static_cast<unsigned char>(form.bytes[i]);
            total += m * c;
            continue;
        }
        // count bits of the packed adjacency
        int n = static_cast<unsigned char>(form.bytes[1]) << 8 | static_cast<unsigned char>(form.bytes[2]);
        long bits = static_cast<long>(n) * (n - 1) / 2;
        long m = 0;
        for (long b = 0; b < bits; ++b) {
            unsigned char byte = form.bytes[4 + b / 8];
            m += byte >> (7 - b % 8) & 1;
        }
        total += m * c;
    }
    return total;
}

namespace {

// Shared walker: `vertices` are the candidate vertices of the chosen colour,
// adjacency restricted by the membership test.
template <typename NeighborFn>
ComponentCensus census_impl(const std::vector<Vertex>& members, NeighborFn neighbors_of) {
    ComponentCensus out;
    if (members.empty()) return out;
    std::map<Vertex, int> state;  // 0 unvisited
    for (Vertex v : members) state[v] = 0;
    for (Vertex start : members) {
        if (state[start]) continue;
        std::vector<Vertex> comp;
        std::queue<Vertex> q;
        state[start] = 1;
        q.push(start);
        while (!q.empty()) {
            Vertex v = q.front();
            q.pop();
            comp.push_back(v);
            for (Vertex w : neighbors_of(v)) {
                auto it = state.find(w);
                if (it != state.end() && it->second == 0) {
                    it->second = 1;
                    q.push(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        if (static_cast<int>(comp.size()) <= SmallGraph::kMaxVertices) {
            std::vector<std::vector<Vertex>> adj(comp.size());
            for (int i = 0; i < static_cast<int>(comp.size()); ++i) {
                for (Vertex w : neighbors_of(comp[i])) {
                    auto it = std::lower_bound(comp.begin(), comp.end(), w);
                    if (it != comp.end() && *it == w)
                        adj[i].push_back(static_cast<int>(it - comp.begin()));
                }
            }
            ++out.counts[canonical_form(SmallGraph::from_adjacency(adj))];
        } else {
            long m = 0;
            for (Vertex v : comp)
                for (Vertex w : neighbors_of(v))
                    if (v < w && std::binary_search(comp.begin(), comp.end(), w)) ++m;
            ++out.counts[CanonicalForm::oversized_sentinel(static_cast<long>(comp.size()), m)];
            out.oversized_sets.push_back(std::move(comp));
        }
    }
    std::sort(out.oversized_sets.begin(), out.oversized_sets.end());
    return out;
}

}  // namespace

ComponentCensus census(const CubicGraph& g, const std::vector<Color>& colors, Color side) {
    if (static_cast<int>(colors.size()) != g.n()) throw std::invalid_argument("census: colour vector size mismatch");
    std::vector<Vertex> members;
    for (Vertex v = 0; v < g.n(); ++v)
        if (colors[v] == side) members.push_back(v);
    auto neighbors_of = [&](Vertex v) {
        std::vector<Vertex> out;
        for (Vertex w : g.neighbors(v))
            if (colors[w] == side) out.push_back(w);
        return out;
    };
    return census_impl(members, neighbors_of);
}

ComponentCensus region_census(const CubicGraph& g, const std::vector<Vertex>& region,
                              const std::vector<Color>& region_colors, Color side) {
    if (region.size() != region_colors.size())
        throw std::invalid_argument("region_census: colour vector size mismatch");
    if (!std::is_sorted(region.begin(), region.end()))
        throw std::invalid_argument("region_census: region must be sorted");
    std::map<Vertex, Color> color_of;
    for (std::size_t i = 0; i < region.size(); ++i) color_of[region[i]] = region_colors[i];
    std::vector<Vertex> members;
    for (std::size_t i = 0; i < region.size(); ++i)
        if (region_colors[i] == side) members.push_back(region[i]);
    auto neighbors_of = [&](Vertex v) {
        std::vector<Vertex> out;
        for (Vertex w : g.neighbors(v)) {
            auto it = color_of.find(w);
            if (it != color_of.end() && it->second == side) out.push_back(w);
        }
        return out;
    };
    return census_impl(members, neighbors_of);
}

}  // namespace cubiso
