#include "cubiso/canonical.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>

namespace cubiso {

CanonicalForm CanonicalForm::oversized_sentinel(long n, long m) {
    std::string b;
    b.push_back(2);
    for (int shift = 24; shift >= 0; shift -= 8) b.push_back(static_cast<char>(n >> shift & 0xff));
    for (int shift = 24; shift >= 0; shift -= 8) b.push_back(static_cast<char>(m >> shift & 0xff));
    return CanonicalForm{std::move(b)};
}

namespace {

// Re-ranks vertices so equal signatures share a class id and ids follow the
// signature order; signature order is isomorphism-invariant by construction.
template <typename Sig>
int rank_by_signature(const std::vector<Sig>& sig, std::vector<int>& out) {
    std::vector<int> idx(sig.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return sig[a] < sig[b]; });
    int classes = 0;
    out.resize(sig.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i > 0 && sig[idx[i - 1]] < sig[idx[i]]) ++classes;
        out[idx[i]] = classes;
    }
    return classes + 1;
}

struct Searcher {
    const SmallGraph& g;
    int n;
    long leaves_left;
    std::string best;
    std::vector<int> best_position;
    const std::vector<int>* given_colors;

    // Neighbour-colour multiset refinement to a fixed point.
    void refine(std::vector<int>& color) const {
        int classes = 0;
        for (int v = 0; v < n; ++v) classes = std::max(classes, color[v] + 1);
        while (true) {
            std::vector<std::vector<int>> sig(n);
            for (int v = 0; v < n; ++v) {
                sig[v].push_back(color[v]);
                std::vector<int> nb;
                for (Vertex w : g.neighbors(v)) nb.push_back(color[w]);
                std::sort(nb.begin(), nb.end());
                sig[v].insert(sig[v].end(), nb.begin(), nb.end());
            }
            std::vector<int> next;
            int next_classes = rank_by_signature(sig, next);
            if (next_classes == classes) return;
            classes = next_classes;
            color = std::move(next);
        }
    }

    std::string leaf_string(const std::vector<int>& position) const {
        std::vector<int> at(n);  // at[p] = vertex in position p
        for (int v = 0; v < n; ++v) at[position[v]] = v;
        std::string s;
        s.push_back(1);
        s.push_back(static_cast<char>(n >> 8 & 0xff));
        s.push_back(static_cast<char>(n & 0xff));
        s.push_back(given_colors ? 1 : 0);
        int acc = 0, nbits = 0;
        for (int j = 1; j < n; ++j) {
            for (int i = 0; i < j; ++i) {
                acc = acc << 1 | (g.has_edge(at[i], at[j]) ? 1 : 0);
                if (++nbits == 8) {
                    s.push_back(static_cast<char>(acc));
                    acc = nbits = 0;
                }
            }
        }
        if (nbits) s.push_back(static_cast<char>(acc << (8 - nbits)));
        if (given_colors)
            for (int p = 0; p < n; ++p) s.push_back(static_cast<char>((*given_colors)[at[p]]));
        return s;
    }

    void search(std::vector<int> color) {
        refine(color);
        int target = -1;
        std::array<int, SmallGraph::kMaxVertices> count{};
        for (int v = 0; v < n; ++v) ++count[color[v]];
        for (int v = 0; v < n; ++v) {
            if (count[color[v]] > 1 && (target == -1 || color[v] < target)) target = color[v];
        }
        if (target == -1) {
            if (--leaves_left < 0) throw canonical_budget_error("canonical labelling budget exhausted");
            std::string s = leaf_string(color);
            if (best.empty() || s < best) {
                best = std::move(s);
                best_position = color;
            }
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (color[v] != target) continue;
            std::vector<int> next(n);
            for (int w = 0; w < n; ++w) next[w] = color[w] * 2 + 1;
            next[v] = target * 2;  // v splits off below its old class
            std::vector<int> ranked;
            rank_by_signature(next, ranked);
            search(std::move(ranked));
        }
    }
};

}  // namespace

CanonicalLabeling canonical_labeling(const SmallGraph& g, const std::vector<int>* colors,
                                     long leaf_budget) {
    const int n = g.n();
    if (colors && static_cast<int>(colors->size()) != n)
        throw std::invalid_argument("color vector size mismatch");
    Searcher s{g, n, leaf_budget, {}, {}, colors};
    if (n == 0) {
        std::string empty;
        empty.push_back(1);
        empty.push_back(0);
        empty.push_back(0);
        empty.push_back(colors ? 1 : 0);
        return {CanonicalForm{std::move(empty)}, {}};
    }
    // Initial invariant: given colour, degree, then the distance histogram,
    // which splits most irregular graphs before any individualisation.
    std::vector<std::vector<int>> sig(n);
    for (int v = 0; v < n; ++v) {
        sig[v].push_back(colors ? (*colors)[v] : 0);
        sig[v].push_back(g.degree(v));
        std::vector<int> hist(n + 1, 0);
        // bitmask BFS
        std::uint64_t seen = std::uint64_t{1} << v;
        std::uint64_t frontier = seen;
        for (int d = 1; frontier; ++d) {
            std::uint64_t next = 0;
            while (frontier) {
                int w = std::countr_zero(frontier);
                frontier &= frontier - 1;
                next |= g.neighbors_mask(w);
            }
            next &= ~seen;
            seen |= next;
            frontier = next;
            hist[std::min(d, n)] += std::popcount(next);
        }
        int reached = 1;
        for (int d = 1; d <= n; ++d) reached += hist[d];
        hist[n] += n - reached;  // unreachable bucket
        sig[v].insert(sig[v].end(), hist.begin(), hist.end());
    }
    std::vector<int> init;
    rank_by_signature(sig, init);
    s.search(std::move(init));
    return {CanonicalForm{std::move(s.best)}, std::move(s.best_position)};
}

CanonicalForm canonical_form(const SmallGraph& g) { return canonical_labeling(g).form; }

const CanonicalForm& path_form(int t) {
    // built once under the thread-safe static initializer; safe to call from
    // parallel experiment workers afterwards
    static const std::vector<CanonicalForm> table = [] {
        std::vector<CanonicalForm> out(1);  // index 0 unused
        for (int k = 1; k <= SmallGraph::kMaxVertices; ++k) {
            SmallGraph p(k);
            for (int i = 0; i + 1 < k; ++i) p.add_edge(i, i + 1);
            out.push_back(canonical_form(p));
        }
        return out;
    }();
    if (t < 1 || t > SmallGraph::kMaxVertices)
        throw std::invalid_argument("path_form: t outside 1.." +
                                    std::to_string(SmallGraph::kMaxVertices));
    return table[t];
}

}  // namespace cubiso
