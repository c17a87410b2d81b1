#include "cubiso/graph.hpp"

#include <algorithm>
#include <bit>
#include <queue>
#include <sstream>

namespace cubiso {

// -------------------- CubicGraph --------------------

CubicGraph CubicGraph::from_adjacency(const std::vector<std::vector<Vertex>>& adj) {
    const int n = static_cast<int>(adj.size());
    if (n < 4 || n % 2 != 0) throw invalid_graph("cubic graph needs even n >= 4, got n=" + std::to_string(n));
    CubicGraph g;
    g.adj_.resize(n);
    for (Vertex v = 0; v < n; ++v) {
        if (adj[v].size() != 3) {
            throw invalid_graph("vertex " + std::to_string(v) + " has degree " +
                                std::to_string(adj[v].size()) + ", expected 3");
        }
        std::array<Vertex, 3> nb{adj[v][0], adj[v][1], adj[v][2]};
        std::sort(nb.begin(), nb.end());
        for (int i = 0; i < 3; ++i) {
            Vertex w = nb[i];
            if (w < 0 || w >= n) throw invalid_graph("neighbor out of range at vertex " + std::to_string(v));
            if (w == v) throw invalid_graph("loop at vertex " + std::to_string(v));
            if (i > 0 && nb[i - 1] == w) throw invalid_graph("parallel edge at vertex " + std::to_string(v));
        }
        g.adj_[v] = nb;
    }
    for (Vertex v = 0; v < n; ++v) {
        for (Vertex w : g.adj_[v]) {
            const auto& back = g.adj_[w];
            if (std::find(back.begin(), back.end(), v) == back.end()) {
                throw invalid_graph("asymmetric adjacency between " + std::to_string(v) + " and " +
                                    std::to_string(w));
            }
        }
    }
    for (Vertex v = 0; v < n; ++v)
        for (Vertex w : g.adj_[v])
            if (v < w) g.edges_.push_back({v, w});
    std::sort(g.edges_.begin(), g.edges_.end());
    g.incident_.assign(n, {-1, -1, -1});
    std::vector<int> fill(n, 0);
    for (int e = 0; e < static_cast<int>(g.edges_.size()); ++e) {
        auto [u, w] = g.edges_[e];
        g.incident_[u][fill[u]++] = e;
        g.incident_[w][fill[w]++] = e;
    }
    return g;
}

CubicGraph CubicGraph::from_edges(int n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
    std::vector<std::vector<Vertex>> adj(n);
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n) throw invalid_graph("edge endpoint out of range");
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return from_adjacency(adj);
}

bool CubicGraph::has_edge(Vertex u, Vertex v) const {
    const auto& nb = adj_[u];
    return nb[0] == v || nb[1] == v || nb[2] == v;
}

int CubicGraph::edge_index(Vertex u, Vertex v) const {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{u, v});
    if (it != edges_.end() && it->u == u && it->v == v) return static_cast<int>(it - edges_.begin());
    return -1;
}

std::vector<std::vector<Vertex>> CubicGraph::adjacency() const {
    std::vector<std::vector<Vertex>> adj(n());
    for (Vertex v = 0; v < n(); ++v) adj[v].assign(adj_[v].begin(), adj_[v].end());
    return adj;
}

// -------------------- SmallGraph --------------------

SmallGraph::SmallGraph(int n) : n_(n) {
    if (n < 0 || n > kMaxVertices)
        throw invalid_graph("SmallGraph supports 0..64 vertices, got " + std::to_string(n));
}

SmallGraph SmallGraph::from_adjacency(const std::vector<std::vector<Vertex>>& adj) {
    SmallGraph g(static_cast<int>(adj.size()));
    for (Vertex v = 0; v < g.n_; ++v) {
        for (Vertex w : adj[v]) {
            if (w < 0 || w >= g.n_) throw invalid_graph("neighbor out of range");
            if (w == v) throw invalid_graph("loop");
            g.adj_[v] |= std::uint64_t{1} << w;
        }
    }
    for (Vertex v = 0; v < g.n_; ++v)
        for (Vertex w : g.neighbors(v))
            if (!(g.adj_[w] >> v & 1)) throw invalid_graph("asymmetric adjacency");
    return g;
}

template <typename G>
static SmallGraph induced_impl(const G& g, const std::vector<Vertex>& verts) {
    SmallGraph s(static_cast<int>(verts.size()));
    for (int i = 0; i < static_cast<int>(verts.size()); ++i) {
        for (int j = i + 1; j < static_cast<int>(verts.size()); ++j) {
            if (g.has_edge(verts[i], verts[j])) s.add_edge(i, j);
        }
    }
    return s;
}

SmallGraph SmallGraph::induced(const CubicGraph& g, const std::vector<Vertex>& verts) {
    return induced_impl(g, verts);
}
SmallGraph SmallGraph::induced(const SmallGraph& g, const std::vector<Vertex>& verts) {
    return induced_impl(g, verts);
}

void SmallGraph::add_edge(Vertex u, Vertex v) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_ || u == v) throw invalid_graph("bad edge");
    adj_[u] |= std::uint64_t{1} << v;
    adj_[v] |= std::uint64_t{1} << u;
}

int SmallGraph::edge_count() const {
    int m = 0;
    for (int v = 0; v < n_; ++v) m += degree(v);
    return m / 2;
}

int SmallGraph::degree(Vertex v) const { return std::popcount(adj_[v]); }

std::vector<Vertex> SmallGraph::neighbors(Vertex v) const {
    std::vector<Vertex> out;
    std::uint64_t m = adj_[v];
    while (m) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

// -------------------- breadth-first queries --------------------

std::vector<int> bfs_distances(const CubicGraph& g, const std::vector<Vertex>& sources) {
    std::vector<int> dist(g.n(), -1);
    std::queue<Vertex> q;
    for (Vertex s : sources) {
        if (dist[s] == -1) {
            dist[s] = 0;
            q.push(s);
        }
    }
    while (!q.empty()) {
        Vertex v = q.front();
        q.pop();
        for (Vertex w : g.neighbors(v)) {
            if (dist[w] == -1) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
        }
    }
    return dist;
}

std::vector<int> bfs_distances(const CubicGraph& g, Vertex source) {
    return bfs_distances(g, std::vector<Vertex>{source});
}

std::vector<Vertex> ball_of_set(const CubicGraph& g, const std::vector<Vertex>& xs, int d) {
    // Truncated BFS; output is in (distance, id) discovery order, which is
    // deterministic because adjacency lists are sorted.
    std::vector<int> dist(g.n(), -1);
    std::vector<Vertex> order;
    std::vector<Vertex> frontier;
    for (Vertex s : xs) {
        if (dist[s] == -1) {
            dist[s] = 0;
            frontier.push_back(s);
        }
    }
    std::sort(frontier.begin(), frontier.end());
    for (int layer = 0; layer <= d && !frontier.empty(); ++layer) {
        order.insert(order.end(), frontier.begin(), frontier.end());
        std::vector<Vertex> next;
        for (Vertex v : frontier) {
            for (Vertex w : g.neighbors(v)) {
                if (dist[w] == -1) {
                    dist[w] = layer + 1;
                    next.push_back(w);
                }
            }
        }
        std::sort(next.begin(), next.end());
        frontier = std::move(next);
    }
    return order;
}

std::vector<Vertex> ball(const CubicGraph& g, Vertex v, int d) {
    return ball_of_set(g, std::vector<Vertex>{v}, d);
}

std::vector<Vertex> sphere(const CubicGraph& g, const std::vector<Vertex>& xs, int d) {
    std::vector<int> dist = bfs_distances(g, xs);
    std::vector<Vertex> out;
    for (Vertex v = 0; v < g.n(); ++v)
        if (dist[v] == d) out.push_back(v);
    return out;
}

std::vector<Vertex> geodesic(const CubicGraph& g, Vertex u, Vertex w) {
    std::vector<int> dist = bfs_distances(g, w);
    if (dist[u] == -1) return {};
    std::vector<Vertex> path{u};
    Vertex cur = u;
    while (cur != w) {
        // Sorted adjacency: picking the first descending neighbour yields the
        // lexicographically smallest vertex sequence.
        for (Vertex nb : g.neighbors(cur)) {
            if (dist[nb] == dist[cur] - 1) {
                cur = nb;
                break;
            }
        }
        path.push_back(cur);
    }
    return path;
}

std::optional<std::vector<Vertex>> find_geodesic_of_length(const CubicGraph& g, Vertex v, int len,
                                                           int within) {
    std::vector<int> dist = bfs_distances(g, v);
    if (len > within) return std::nullopt;
    for (Vertex w = 0; w < g.n(); ++w) {
        if (dist[w] == len) return geodesic(g, v, w);
    }
    return std::nullopt;
}

int girth(const CubicGraph& g) {
    // Truncated BFS from every root; a non-tree edge seen at depth k closes a
    // cycle of length <= 2k+1, and scanning all roots makes the bound exact.
    int best = g.n() + 1;
    std::vector<int> dist(g.n());
    std::vector<int> parent(g.n());
    for (Vertex root = 0; root < g.n() && best > 3; ++root) {
        std::fill(dist.begin(), dist.end(), -1);
        std::queue<Vertex> q;
        dist[root] = 0;
        parent[root] = -1;
        q.push(root);
        while (!q.empty()) {
            Vertex v = q.front();
            q.pop();
            if (2 * dist[v] + 1 >= best) continue;
            for (Vertex w : g.neighbors(v)) {
                if (w == parent[v]) continue;
                if (dist[w] == -1) {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    q.push(w);
                } else {
                    best = std::min(best, dist[v] + dist[w] + 1);
                }
            }
        }
    }
    return best;
}

std::vector<std::vector<Vertex>> connected_components(const CubicGraph& g) {
    std::vector<int> comp(g.n(), -1);
    std::vector<std::vector<Vertex>> out;
    for (Vertex s = 0; s < g.n(); ++s) {
        if (comp[s] != -1) continue;
        int id = static_cast<int>(out.size());
        out.emplace_back();
        std::queue<Vertex> q;
        comp[s] = id;
        q.push(s);
        while (!q.empty()) {
            Vertex v = q.front();
            q.pop();
            out[id].push_back(v);
            for (Vertex w : g.neighbors(v)) {
                if (comp[w] == -1) {
                    comp[w] = id;
                    q.push(w);
                }
            }
        }
        std::sort(out[id].begin(), out[id].end());
    }
    return out;
}

bool is_connected(const CubicGraph& g) { return connected_components(g).size() == 1; }

std::string to_dot(const CubicGraph& g, const std::vector<int>* colors) {
    std::ostringstream os;
    os << "graph g {\n  node [style=filled];\n";
    for (Vertex v = 0; v < g.n(); ++v) {
        os << "  " << v;
        if (colors) os << " [fillcolor=" << ((*colors)[v] == 0 ? "salmon" : "lightblue") << "]";
        os << ";\n";
    }
    for (const Edge& e : g.edges()) os << "  " << e.u << " -- " << e.v << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace cubiso
