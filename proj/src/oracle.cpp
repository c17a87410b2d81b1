#include "cubiso/oracle.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <istream>
#include <stdexcept>

namespace cubiso {

namespace {

bool censuses_match(const CubicGraph& g, const VertexColoring& c) {
    return census(g, c.colors, Color::Red) == census(g, c.colors, Color::Blue);
}

}  // namespace

std::optional<VertexColoring> brute_force_bisection(const CubicGraph& g, int limit,
                                                    bool prune) {
    if (g.n() > limit)
        throw std::invalid_argument("brute force limited to " + std::to_string(limit) +
                                    " vertices, got " + std::to_string(g.n()));
    int n = g.n();
    int half = n / 2;
    // Ascending red-set masks = colex order over fixed-size subsets. With
    // pruning, vertex 0 is red and the mask ranges over the rest: the colour
    // swap maps any solution to one with vertex 0 red.
    int bits = prune ? n - 1 : n;
    int want = prune ? half - 1 : half;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
        if (std::popcount(mask) != want) continue;
        VertexColoring c;
        c.colors.assign(n, Color::Blue);
        if (prune) c.colors[0] = Color::Red;
        for (int k = 0; k < bits; ++k)
            if (mask >> k & 1) c.colors[k + (prune ? 1 : 0)] = Color::Red;
        if (censuses_match(g, c)) return c;
    }
    return std::nullopt;
}

VerificationReport verify_conjecture_stream(std::istream& in, int limit) {
    VerificationReport report;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        StreamEntry entry;
        entry.line = line_no;
        entry.graph6 = line;
        auto start = std::chrono::steady_clock::now();
        try {
            CubicGraph g = parse_cubic_graph6(line);
            if (!is_connected(g)) throw invalid_graph("not connected");
            auto found = brute_force_bisection(g, limit);
            ++report.graphs;
            if (found) {
                entry.outcome = StreamEntry::Outcome::Found;
                entry.coloring = std::move(found);
                ++report.found;
            } else {
                entry.outcome = StreamEntry::Outcome::None;
                ++report.none;
            }
        } catch (const std::exception& e) {
            entry.outcome = StreamEntry::Outcome::Error;
            entry.error = e.what();
            ++report.errors;
        }
        entry.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
        report.entries.push_back(std::move(entry));
    }
    return report;
}

std::vector<ReducerCertificate> exhaustive_reducer_search(const CubicGraph& g,
                                                          const std::vector<Vertex>& region,
                                                          int t, ReducerKind kind) {
    if (t < 3 || t > 6) throw std::invalid_argument("exhaustive search requires t in 3..6");
    auto verts = region;
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    for (Vertex v : verts)
        if (v < 0 || v >= g.n())
            throw std::invalid_argument("exhaustive search: vertex out of range");
    if (verts.size() > 12) throw std::invalid_argument("exhaustive search region too large");

    int k = static_cast<int>(verts.size());
    std::vector<ReducerCertificate> out;
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << k); ++mask) {
        std::vector<Vertex> r;
        for (int i = 0; i < k; ++i)
            if (mask >> i & 1) r.push_back(verts[i]);
        // connected subsets only: anything else is a union of smaller ones
        std::vector<char> seen(r.size(), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        size_t reached = 1;
        while (!stack.empty()) {
            Vertex x = r[stack.back()];
            stack.pop_back();
            for (Vertex w : g.neighbors(x)) {
                auto it = std::lower_bound(r.begin(), r.end(), w);
                if (it == r.end() || *it != w) continue;
                int p = static_cast<int>(it - r.begin());
                if (!seen[p]) {
                    seen[p] = 1;
                    ++reached;
                    stack.push_back(p);
                }
            }
        }
        if (reached != r.size()) continue;
        auto found = enumerate_reducers_on(g, r, t, kind);
        out.insert(out.end(), found.begin(), found.end());
    }
    return out;
}

}  // namespace cubiso
