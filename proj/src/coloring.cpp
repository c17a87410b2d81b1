#include "cubiso/coloring.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace cubiso {

long VertexColoring::delta() const {
    long d = 0;
    for (Color c : colors) d += c == Color::Red ? 1 : -1;
    return d;
}

VertexColoring proper_coloring_from_choices(const CubicGraph& g, const LinearForestPair& pair,
                                            const std::vector<std::uint8_t>& choices) {
    auto paths = pair.paths_of(g, Forest::F1);
    if (choices.size() != paths.size())
        throw std::invalid_argument("one choice bit per F1 path required");
    VertexColoring c;
    c.colors.assign(g.n(), Color::Red);
    for (size_t i = 0; i < paths.size(); ++i) {
        Color head = choices[i] ? Color::Blue : Color::Red;
        for (size_t k = 0; k < paths[i].size(); ++k)
            c.colors[paths[i][k]] = k % 2 ? opposite(head) : head;
    }
    return c;
}

VertexColoring random_proper_coloring(const CubicGraph& g, const LinearForestPair& pair,
                                      std::uint64_t seed) {
    auto paths = pair.paths_of(g, Forest::F1);
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> choices(paths.size());
    for (auto& b : choices) b = rng() & 1;
    return proper_coloring_from_choices(g, pair, choices);
}

bool proper_on_f1(const CubicGraph& g, const LinearForestPair& pair, const VertexColoring& c) {
    for (int e = 0; e < g.edge_count(); ++e)
        if (pair.assignment[e] == Forest::F1 &&
            c[g.edges()[e].u] == c[g.edges()[e].v])
            return false;
    return true;
}

std::array<long, 6> path_discrepancies(const CubicGraph& g, const VertexColoring& c) {
    ComponentCensus red = census(g, c.colors, Color::Red);
    ComponentCensus blue = census(g, c.colors, Color::Blue);
    std::array<long, 6> d{};
    for (int t = 1; t <= 6; ++t) d[t - 1] = red.path_count(t) - blue.path_count(t);
    return d;
}

VertexColoring make_bisection(const CubicGraph& g, const VertexColoring& c,
                              const LinearForestPair& pair) {
    if (!proper_on_f1(g, pair, c))
        throw bisection_error("input colouring is not proper on F1");
    long delta = c.delta();
    if (delta % 2) throw bisection_error("odd imbalance cannot be fixed by path flips");
    VertexColoring out = c;
    if (delta == 0) return out;
    int want = delta > 0 ? 1 : -1;  // surplus sign of the paths to flip
    long flips = std::abs(delta) / 2;
    for (const auto& path : pair.paths_of(g, Forest::F1)) {
        if (flips == 0) break;
        if (path.size() % 2 == 0) continue;  // odd edge count: surplus 0
        int surplus = out[path.front()] == Color::Red ? 1 : -1;
        if (surplus != want) continue;
        for (Vertex v : path) out.colors[v] = opposite(out.colors[v]);
        --flips;
    }
    if (flips != 0) throw bisection_error("not enough flippable even paths");
    if (out.delta() != 0) throw bisection_error("flips failed to balance");  // unreachable
    return out;
}

std::vector<Vertex> select_separated_centres(const CubicGraph& g, int d) {
    std::vector<char> excluded(g.n(), 0);
    std::vector<Vertex> centres;
    for (Vertex v = 0; v < g.n(); ++v) {
        if (excluded[v]) continue;
        centres.push_back(v);
        for (Vertex w : ball(g, v, 2 * d)) excluded[w] = 1;
    }
    return centres;
}

namespace {

std::vector<int> local_colors(const VertexColoring& c, const std::vector<Vertex>& verts,
                              bool reversed) {
    std::vector<int> out(verts.size());
    for (size_t i = 0; i < verts.size(); ++i) {
        bool red = c[verts[i]] == Color::Red;
        out[i] = (red != reversed) ? 0 : 1;
    }
    return out;
}

}  // namespace

BallClassCensus classify_balls(const CubicGraph& g, const VertexColoring& c,
                               const std::vector<Vertex>& centres, int d) {
    BallClassCensus out;
    out.d = d;
    out.centres = centres;
    std::map<CanonicalForm, int> index;
    std::vector<CanonicalForm> opposite_key;
    for (size_t i = 0; i < centres.size(); ++i) {
        std::vector<Vertex> b = ball(g, centres[i], d);
        if (static_cast<int>(b.size()) > SmallGraph::kMaxVertices)
            throw ball_size_error("B_" + std::to_string(d) + "(" + std::to_string(centres[i]) +
                                  ") has " + std::to_string(b.size()) +
                                  " vertices; reduce d");
        SmallGraph bg = SmallGraph::induced(g, b);
        std::vector<int> cols = local_colors(c, b, false);
        std::vector<int> rev = local_colors(c, b, true);
        CanonicalForm key = canonical_labeling(bg, &cols).form;
        CanonicalForm opp = canonical_labeling(bg, &rev).form;
        auto it = index.find(key);
        int j;
        if (it == index.end()) {
            j = static_cast<int>(out.keys.size());
            index.emplace(key, j);
            out.keys.push_back(key);
            out.counts.push_back(0);
            out.members.emplace_back();
            opposite_key.push_back(opp);
        } else {
            j = it->second;
        }
        ++out.counts[j];
        out.members[j].push_back(static_cast<int>(i));
    }
    out.opposite.assign(out.keys.size(), -1);
    for (size_t j = 0; j < out.keys.size(); ++j) {
        auto it = index.find(opposite_key[j]);
        if (it != index.end()) out.opposite[j] = it->second;
    }
    // classes are discovered in centre order; re-sort by key for determinism
    std::vector<int> order(out.keys.size());
    for (size_t j = 0; j < order.size(); ++j) order[j] = static_cast<int>(j);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return out.keys[a] < out.keys[b]; });
    std::vector<int> rank(order.size());
    for (size_t j = 0; j < order.size(); ++j) rank[order[j]] = static_cast<int>(j);
    BallClassCensus sorted;
    sorted.d = d;
    sorted.centres = centres;
    for (int j : order) {
        sorted.keys.push_back(out.keys[j]);
        sorted.counts.push_back(out.counts[j]);
        sorted.members.push_back(out.members[j]);
        sorted.opposite.push_back(out.opposite[j] < 0 ? -1 : rank[out.opposite[j]]);
    }
    return sorted;
}

namespace {

// colour-reversing isomorphism B_d(u) -> B_d(w) via coloured canonical
// labellings; the two forms must already agree
BallPair make_ball_pair(const CubicGraph& g, const VertexColoring& c, Vertex u, Vertex w, int d) {
    std::vector<Vertex> bu = ball(g, u, d), bw = ball(g, w, d);
    SmallGraph gu = SmallGraph::induced(g, bu), gw = SmallGraph::induced(g, bw);
    std::vector<int> cu = local_colors(c, bu, false);
    std::vector<int> cw = local_colors(c, bw, true);  // reversed on the target side
    CanonicalLabeling lu = canonical_labeling(gu, &cu);
    CanonicalLabeling lw = canonical_labeling(gw, &cw);
    if (lu.form != lw.form)
        throw std::logic_error("paired balls disagree after colour reversal");
    std::vector<int> at(bw.size());
    for (size_t i = 0; i < bw.size(); ++i) at[lw.position[i]] = static_cast<int>(i);
    BallPair pair;
    pair.u = u;
    pair.w = w;
    pair.iso.resize(bu.size());
    for (size_t i = 0; i < bu.size(); ++i)
        pair.iso[i] = {bu[i], bw[at[lu.position[i]]]};
    // recheck pointwise: isomorphism and colour reversal
    std::map<Vertex, Vertex> f(pair.iso.begin(), pair.iso.end());
    for (size_t i = 0; i < bu.size(); ++i) {
        if (c[pair.iso[i].second] != opposite(c[pair.iso[i].first]))
            throw std::logic_error("ball pairing map fails colour reversal");
        for (size_t j = i + 1; j < bu.size(); ++j) {
            bool e1 = gu.has_edge(static_cast<int>(i), static_cast<int>(j));
            bool e2 = g.has_edge(f.at(bu[i]), f.at(bu[j]));
            if (e1 != e2) throw std::logic_error("ball pairing map fails adjacency");
        }
    }
    return pair;
}

}  // namespace

BallPairing pair_opposite_balls(const CubicGraph& g, const VertexColoring& c,
                                const BallClassCensus& census) {
    BallPairing out;
    out.d = census.d;
    auto centre = [&](int member) { return census.centres[member]; };
    for (size_t j = 0; j < census.keys.size(); ++j) {
        int k = census.opposite[j];
        const auto& mj = census.members[j];
        if (k < 0) {
            for (int m : mj) out.unmatched.push_back(centre(m));
            continue;
        }
        if (static_cast<size_t>(k) == j) {
            // self-opposite: pair consecutive members
            size_t i = 0;
            for (; i + 1 < mj.size(); i += 2)
                out.pairs.push_back(
                    make_ball_pair(g, c, centre(mj[i]), centre(mj[i + 1]), census.d));
            if (i < mj.size()) out.unmatched.push_back(centre(mj[i]));
            continue;
        }
        if (static_cast<size_t>(k) < j) continue;  // handled from the smaller index
        const auto& mk = census.members[k];
        size_t s = std::min(mj.size(), mk.size());
        for (size_t i = 0; i < s; ++i)
            out.pairs.push_back(make_ball_pair(g, c, centre(mj[i]), centre(mk[i]), census.d));
        for (size_t i = s; i < mj.size(); ++i) out.unmatched.push_back(centre(mj[i]));
        for (size_t i = s; i < mk.size(); ++i) out.unmatched.push_back(centre(mk[i]));
    }
    return out;
}

double mcdiarmid_bound(double c, double n, double m) {
    return 2.0 * std::exp(-2.0 * m * m / (c * c * n));
}

}  // namespace cubiso
