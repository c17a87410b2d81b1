// Core graph types and breadth-first machinery for cubic-graph bisection work.
// CubicGraph is an immutable validated 3-regular simple graph; SmallGraph is a
// bitmask graph on at most 64 vertices used for balls, components and gadget
// regions.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubiso {

using Vertex = int;

struct Edge {
    Vertex u, v;  // always u < v
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

class invalid_graph : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// -------------------- CubicGraph --------------------

class CubicGraph {
public:
    // Validates: n even and >= 4, every degree exactly 3, no loops or parallel
    // edges, symmetric adjacency.
    static CubicGraph from_adjacency(const std::vector<std::vector<Vertex>>& adj);
    static CubicGraph from_edges(int n, const std::vector<std::pair<Vertex, Vertex>>& edges);

    int n() const { return static_cast<int>(adj_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    // Neighbours in increasing order.
    const std::array<Vertex, 3>& neighbors(Vertex v) const { return adj_[v]; }
    bool has_edge(Vertex u, Vertex v) const;

    // Edges sorted by (u, v); index into this list is the edge id used by the
    // decomposition machinery.
    const std::vector<Edge>& edges() const { return edges_; }
    const std::array<int, 3>& incident_edges(Vertex v) const { return incident_[v]; }
    int edge_index(Vertex u, Vertex v) const;  // -1 if absent

    std::vector<std::vector<Vertex>> adjacency() const;

private:
    CubicGraph() = default;
    std::vector<std::array<Vertex, 3>> adj_;
    std::vector<Edge> edges_;
    std::vector<std::array<int, 3>> incident_;
};

// -------------------- SmallGraph --------------------

// General simple graph on up to 64 vertices, adjacency rows as bitmasks.
// Canonical forms are guaranteed only up to this size; callers must treat a
// larger component via the oversized path in ComponentCensus.
class SmallGraph {
public:
    static constexpr int kMaxVertices = 64;

    SmallGraph() = default;
    explicit SmallGraph(int n);
    static SmallGraph from_adjacency(const std::vector<std::vector<Vertex>>& adj);

    // Induced subgraph of g on verts; vertex i of the result is verts[i].
    static SmallGraph induced(const CubicGraph& g, const std::vector<Vertex>& verts);
    static SmallGraph induced(const SmallGraph& g, const std::vector<Vertex>& verts);

    int n() const { return n_; }
    int edge_count() const;
    void add_edge(Vertex u, Vertex v);
    bool has_edge(Vertex u, Vertex v) const { return adj_[u] >> v & 1; }
    std::uint64_t neighbors_mask(Vertex v) const { return adj_[v]; }
    int degree(Vertex v) const;
    std::vector<Vertex> neighbors(Vertex v) const;

    friend bool operator==(const SmallGraph&, const SmallGraph&) = default;

private:
    int n_ = 0;
    std::array<std::uint64_t, kMaxVertices> adj_{};
};

// -------------------- breadth-first queries --------------------

// Distances from source; unreachable = -1.
std::vector<int> bfs_distances(const CubicGraph& g, Vertex source);
std::vector<int> bfs_distances(const CubicGraph& g, const std::vector<Vertex>& sources);

// Closed ball of radius d, in BFS (distance, id) order.
std::vector<Vertex> ball(const CubicGraph& g, Vertex v, int d);
std::vector<Vertex> ball_of_set(const CubicGraph& g, const std::vector<Vertex>& xs, int d);

// Vertices at distance exactly d from the set, increasing id.
std::vector<Vertex> sphere(const CubicGraph& g, const std::vector<Vertex>& xs, int d);

// Lexicographically smallest shortest path u..w; empty if disconnected.
std::vector<Vertex> geodesic(const CubicGraph& g, Vertex u, Vertex w);

// Shortest path of length exactly len starting at v and ending at the smallest
// eligible endpoint within distance `within` of v; nullopt if none exists.
std::optional<std::vector<Vertex>> find_geodesic_of_length(const CubicGraph& g, Vertex v,
                                                           int len, int within);

// Length of a shortest cycle. Always finite for a cubic graph.
int girth(const CubicGraph& g);

bool is_connected(const CubicGraph& g);
std::vector<std::vector<Vertex>> connected_components(const CubicGraph& g);

// -------------------- graph6 --------------------

// Standard graph6 codec (McKay). parse accepts an optional >>graph6<< header.
std::vector<std::vector<Vertex>> parse_graph6_adjacency(const std::string& line);
std::string encode_graph6(const std::vector<std::vector<Vertex>>& adj);

CubicGraph parse_cubic_graph6(const std::string& line);
SmallGraph parse_small_graph6(const std::string& line);
std::string encode_graph6(const CubicGraph& g);
std::string encode_graph6(const SmallGraph& g);

// Reads one graph6 line per graph. Blank lines are skipped.
std::vector<std::string> read_graph6_lines(const std::string& path);

// DOT export for eyeballing; colors, if given, paint vertices red/blue.
std::string to_dot(const CubicGraph& g, const std::vector<int>* colors = nullptr);

}  // namespace cubiso
