#include "cubiso/decompose.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <queue>
#include <random>
#include <sstream>

namespace cubiso {

namespace {

// forest adjacency: up to two neighbours per vertex per forest
struct ForestAdj {
    std::vector<std::array<Vertex, 2>> nbr;
    std::vector<int> deg;

    explicit ForestAdj(int n) : nbr(n, {-1, -1}), deg(n, 0) {}

    void add(Vertex u, Vertex v) {
        nbr[u][deg[u]++] = v;
        nbr[v][deg[v]++] = u;
    }
    void remove(Vertex u, Vertex v) {
        auto drop = [&](Vertex a, Vertex b) {
            if (nbr[a][0] == b) nbr[a][0] = nbr[a][1];
            nbr[a][--deg[a]] = -1;
        };
        drop(u, v);
        drop(v, u);
    }
    // walk from endpoint u away along the path; saturates at cap+1 edges.
    // hit set if `target` is encountered on the way.
    std::pair<int, bool> tail(Vertex u, Vertex target, int cap) const {
        int len = 0;
        Vertex prev = -1, cur = u;
        while (len <= cap) {
            Vertex nxt = -1;
            for (int k = 0; k < deg[cur]; ++k)
                if (nbr[cur][k] != prev) {
                    nxt = nbr[cur][k];
                    break;
                }
            if (nxt < 0) return {len, false};
            prev = cur;
            cur = nxt;
            ++len;
            if (cur == target) return {len, true};
        }
        return {len, false};
    }
};

ForestAdj build_adj(const CubicGraph& g, const LinearForestPair& pair, Forest f) {
    ForestAdj adj(g.n());
    for (int e = 0; e < g.edge_count(); ++e)
        if (pair.assignment[e] == f) adj.add(g.edges()[e].u, g.edges()[e].v);
    return adj;
}

}  // namespace

// -------------------- LinearForestPair --------------------

std::vector<std::vector<Vertex>> LinearForestPair::paths_of(const CubicGraph& g, Forest f) const {
    ForestAdj adj = build_adj(g, *this, f);
    std::vector<char> done(g.n(), 0);
    std::vector<std::vector<Vertex>> paths;
    for (Vertex v = 0; v < g.n(); ++v) {
        if (done[v] || adj.deg[v] == 2) continue;  // start only at endpoints
        std::vector<Vertex> path = {v};
        done[v] = 1;
        Vertex prev = -1, cur = v;
        while (true) {
            Vertex nxt = -1;
            for (int k = 0; k < adj.deg[cur]; ++k)
                if (adj.nbr[cur][k] != prev) {
                    nxt = adj.nbr[cur][k];
                    break;
                }
            if (nxt < 0) break;
            path.push_back(nxt);
            done[nxt] = 1;
            prev = cur;
            cur = nxt;
        }
        paths.push_back(std::move(path));
    }
    return paths;  // cycle vertices never get emitted; validate() rejects those
}

int LinearForestPair::max_len(const CubicGraph& g, Forest f) const {
    int best = 0;
    for (const auto& p : paths_of(g, f)) best = std::max(best, static_cast<int>(p.size()) - 1);
    return best;
}

// -------------------- validate --------------------

std::optional<std::string> validate(const CubicGraph& g, const LinearForestPair& pair) {
    if (static_cast<int>(pair.assignment.size()) != g.edge_count())
        return "partition: assignment covers " + std::to_string(pair.assignment.size()) +
               " edges, graph has " + std::to_string(g.edge_count());
    for (Forest f : {Forest::F1, Forest::F2}) {
        const char* fname = f == Forest::F1 ? "F1" : "F2";
        std::vector<int> deg(g.n(), 0);
        for (int e = 0; e < g.edge_count(); ++e)
            if (pair.assignment[e] == f) {
                ++deg[g.edges()[e].u];
                ++deg[g.edges()[e].v];
            }
        for (Vertex v = 0; v < g.n(); ++v)
            if (deg[v] > 2)
                return std::string(fname) + ": vertex " + std::to_string(v) + " has degree " +
                       std::to_string(deg[v]);
        // acyclicity: vertices on paths are reachable from endpoints; a cycle
        // component has no endpoint
        ForestAdj adj = build_adj(g, pair, f);
        std::vector<char> seen(g.n(), 0);
        for (const auto& p : pair.paths_of(g, f))
            for (Vertex v : p) seen[v] = 1;
        for (Vertex v = 0; v < g.n(); ++v)
            if (!seen[v])
                return std::string(fname) + ": cycle through vertex " + std::to_string(v);
        int bound = f == Forest::F1 ? pair.l1 : pair.l2;
        for (const auto& p : pair.paths_of(g, f)) {
            int len = static_cast<int>(p.size()) - 1;
            if (len > bound) {
                std::ostringstream msg;
                msg << fname << ": path of length " << len << " exceeds bound " << bound << " (";
                for (size_t i = 0; i < p.size(); ++i) msg << (i ? "-" : "") << p[i];
                msg << ")";
                return msg.str();
            }
        }
    }
    return std::nullopt;
}

// -------------------- exact search --------------------

namespace {

// rollback DSU per forest; root carries the component's edge count
struct PathDsu {
    std::vector<int> parent, rank_, len;
    struct Undo {
        int child, root, old_len;
    };
    std::vector<Undo> trail;

    explicit PathDsu(int n) : parent(n), rank_(n, 0), len(n, 0) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int v) const {
        while (parent[v] != v) v = parent[v];
        return v;
    }
    // join components of u and v through one new edge; fails on cycle or when
    // the merged path would exceed `bound`. Returns whether applied.
    bool join(int u, int v, int bound) {
        int ru = find(u), rv = find(v);
        if (ru == rv) return false;
        int merged = len[ru] + len[rv] + 1;
        if (merged > bound) return false;
        if (rank_[ru] < rank_[rv]) std::swap(ru, rv);
        trail.push_back({rv, ru, len[ru]});
        parent[rv] = ru;
        if (rank_[ru] == rank_[rv]) ++rank_[ru];
        len[ru] = merged;
        return true;
    }
    size_t mark() const { return trail.size(); }
    void rollback(size_t m) {
        while (trail.size() > m) {
            Undo u = trail.back();
            trail.pop_back();
            parent[u.child] = u.child;
            len[u.root] = u.old_len;
        }
    }
};

struct ExactSearcher {
    const CubicGraph& g;
    int bound[2];
    long budget, nodes = 0;
    std::vector<int> order;                  // edge ids, BFS order
    std::array<std::vector<int>, 2> degree;  // per forest
    PathDsu dsu1, dsu2;
    std::vector<Forest> assignment;
    bool found = false, exhausted_budget = false;

    ExactSearcher(const CubicGraph& graph, int l1, int l2, long b)
        : g(graph), bound{l1, l2}, budget(b), dsu1(graph.n()), dsu2(graph.n()) {
        degree[0].assign(g.n(), 0);
        degree[1].assign(g.n(), 0);
        assignment.assign(g.edge_count(), Forest::F1);
        // BFS edge order from vertex 0 for propagation locality
        std::vector<char> listed(g.edge_count(), 0), visited(g.n(), 0);
        std::queue<Vertex> q;
        for (Vertex s = 0; s < g.n(); ++s) {
            if (visited[s]) continue;
            visited[s] = 1;
            q.push(s);
            while (!q.empty()) {
                Vertex v = q.front();
                q.pop();
                for (int e : g.incident_edges(v))
                    if (!listed[e]) {
                        listed[e] = 1;
                        order.push_back(e);
                    }
                for (Vertex w : g.neighbors(v))
                    if (!visited[w]) {
                        visited[w] = 1;
                        q.push(w);
                    }
            }
        }
    }

    bool place(size_t idx) {
        if (found) return true;
        if (++nodes > budget) {
            exhausted_budget = true;
            return false;
        }
        if (idx == order.size()) {
            found = true;
            return true;
        }
        int e = order[idx];
        Vertex u = g.edges()[e].u, v = g.edges()[e].v;
        for (Forest f : {Forest::F1, Forest::F2}) {
            int fi = static_cast<int>(f);
            if (degree[fi][u] >= 2 || degree[fi][v] >= 2) continue;
            PathDsu& dsu = fi == 0 ? dsu1 : dsu2;
            size_t m = dsu.mark();
            if (!dsu.join(u, v, bound[fi])) continue;
            degree[fi][u]++;
            degree[fi][v]++;
            assignment[e] = f;
            if (place(idx + 1)) return true;
            degree[fi][u]--;
            degree[fi][v]--;
            dsu.rollback(m);
            if (exhausted_budget) return false;
        }
        return false;
    }
};

}  // namespace

DecomposeResult thomassen_decompose(const CubicGraph& g, int l1, int l2, long budget) {
    ExactSearcher s(g, l1, l2, budget);
    s.place(0);
    DecomposeResult r;
    r.nodes = s.nodes;
    if (s.found) {
        r.status = DecomposeStatus::Found;
        LinearForestPair pair{std::move(s.assignment), l1, l2};
        assert(!validate(g, pair));
        r.pair = std::move(pair);
    } else if (s.exhausted_budget) {
        r.status = DecomposeStatus::BudgetExhausted;
    } else {
        r.status = DecomposeStatus::ProvenNone;
    }
    return r;
}

// -------------------- heuristic --------------------

namespace {

struct Repairer {
    const CubicGraph& g;
    int bound[2];
    std::mt19937_64& rng;
    std::array<ForestAdj, 2> adj;
    std::vector<signed char> asg;  // -1 unassigned, else forest index
    std::vector<int> pending;

    Repairer(const CubicGraph& graph, int l1, int l2, std::mt19937_64& r)
        : g(graph), bound{l1, l2}, rng(r), adj{ForestAdj(graph.n()), ForestAdj(graph.n())},
          asg(graph.edge_count(), -1) {}

    bool legal(int e, int fi) const {
        Vertex u = g.edges()[e].u, v = g.edges()[e].v;
        const ForestAdj& a = adj[fi];
        if (a.deg[u] >= 2 || a.deg[v] >= 2) return false;
        auto [lu, hit] = a.tail(u, v, bound[fi]);
        if (hit) return false;  // would close a cycle
        auto [lv, hit2] = a.tail(v, u, bound[fi]);
        (void)hit2;
        return lu + lv + 1 <= bound[fi];
    }

    void assign(int e, int fi) {
        adj[fi].add(g.edges()[e].u, g.edges()[e].v);
        asg[e] = static_cast<signed char>(fi);
    }

    void unassign(int e) {
        int fi = asg[e];
        adj[fi].remove(g.edges()[e].u, g.edges()[e].v);
        asg[e] = -1;
        pending.push_back(e);
    }

    // resulting path length if e joined forest fi (assumes degrees permit)
    int joined_len(int e, int fi) const {
        Vertex u = g.edges()[e].u, v = g.edges()[e].v;
        auto [lu, hit] = adj[fi].tail(u, v, bound[fi]);
        auto [lv, h2] = adj[fi].tail(v, u, bound[fi]);
        (void)hit;
        (void)h2;
        return lu + lv + 1;
    }

    // eject enough edges around e to make forest fi accept it, then assign
    void force(int e, int fi) {
        Vertex u = g.edges()[e].u, v = g.edges()[e].v;
        ForestAdj& a = adj[fi];
        for (Vertex x : {u, v})
            if (a.deg[x] >= 2) {
                Vertex y = a.nbr[x][rng() & 1];
                unassign(edge_id(x, y));
            }
        int guards = 2 * bound[fi] + 6;
        for (int guard = 0; guard < guards && !legal(e, fi); ++guard) {
            // length or cycle trouble: shear off the last edge of the longer tail
            auto [lu, hitu] = a.tail(u, v, bound[fi]);
            auto [lv, hitv] = a.tail(v, u, bound[fi]);
            (void)hitv;
            Vertex from = (hitu || lu >= lv) ? u : v;
            shear(from, fi);
        }
        if (legal(e, fi))
            assign(e, fi);
        else
            pending.push_back(e);  // never install an illegal edge
    }

    int edge_id(Vertex x, Vertex y) const {
        int id = g.edge_index(x, y);
        assert(id >= 0);
        return id;
    }

    // remove the edge at the far end of the path hanging off endpoint x
    void shear(Vertex x, int fi) {
        ForestAdj& a = adj[fi];
        assert(a.deg[x] >= 1);
        Vertex prev = -1, cur = x;
        while (true) {
            Vertex nxt = -1;
            for (int k = 0; k < a.deg[cur]; ++k)
                if (a.nbr[cur][k] != prev) {
                    nxt = a.nbr[cur][k];
                    break;
                }
            if (nxt < 0) break;
            prev = cur;
            cur = nxt;
            if (cur == x) break;  // walked a full cycle back to the start
        }
        unassign(edge_id(prev, cur));
    }

    bool run(long max_iters) {
        // greedy pass in random edge order
        std::vector<int> edges(g.edge_count());
        for (int e = 0; e < g.edge_count(); ++e) edges[e] = e;
        std::shuffle(edges.begin(), edges.end(), rng);
        for (int e : edges) {
            bool ok0 = legal(e, 0), ok1 = legal(e, 1);
            if (ok0 && ok1) {
                int l0 = joined_len(e, 0), l1j = joined_len(e, 1);
                assign(e, l0 == l1j ? static_cast<int>(rng() & 1) : (l0 < l1j ? 0 : 1));
            } else if (ok0 || ok1) {
                assign(e, ok0 ? 0 : 1);
            } else {
                pending.push_back(e);
            }
        }
        // conflict repair: eject blockers and re-queue them
        for (long it = 0; it < max_iters && !pending.empty(); ++it) {
            size_t pick = rng() % pending.size();
            std::swap(pending[pick], pending.back());
            int e = pending.back();
            pending.pop_back();
            bool ok0 = legal(e, 0), ok1 = legal(e, 1);
            if (ok0 || ok1) {
                assign(e, ok0 && ok1 ? static_cast<int>(rng() & 1) : (ok0 ? 0 : 1));
                continue;
            }
            force(e, static_cast<int>(rng() & 1));
        }
        return pending.empty();
    }
};

}  // namespace

std::optional<LinearForestPair> heuristic_decompose(const CubicGraph& g, int l1, int l2,
                                                    std::uint64_t seed) {
    const int ladder[] = {l1, 3 * l1 + 1, 12 * l1 + 4, 64 * l1 + 16, 256 * l1 + 64};
    int attempt = 0;
    for (int l1_eff : ladder) {
        for (int restart = 0; restart < 3; ++restart, ++attempt) {
            std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (attempt + 1));
            Repairer rep(g, l1_eff, l2, rng);
            if (!rep.run(40L * g.edge_count())) continue;
            LinearForestPair pair;
            pair.assignment.resize(g.edge_count());
            for (int e = 0; e < g.edge_count(); ++e)
                pair.assignment[e] = rep.asg[e] == 0 ? Forest::F1 : Forest::F2;
            pair.l1 = l1_eff;
            pair.l2 = l2;
            if (!validate(g, pair)) return pair;
        }
    }
    return std::nullopt;
}

}  // namespace cubiso
