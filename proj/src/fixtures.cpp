#include "cubiso/fixtures.hpp"

namespace cubiso {
namespace fixtures {

CubicGraph from_lcf(int n, const std::vector<int>& pattern) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    for (int i = 0; i < n; ++i) {
        int off = pattern[i % pattern.size()];
        int j = ((i + off) % n + n) % n;
        if (i < j) edges.emplace_back(i, j);
    }
    return CubicGraph::from_edges(n, edges);
}

CubicGraph k4() {
    return CubicGraph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

CubicGraph k33() {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex a = 0; a < 3; ++a)
        for (Vertex b = 3; b < 6; ++b) edges.emplace_back(a, b);
    return CubicGraph::from_edges(6, edges);
}

CubicGraph prism() {
    return CubicGraph::from_edges(
        6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}, {1, 4}, {2, 5}});
}

CubicGraph petersen() {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);        // outer 5-cycle
        edges.emplace_back(i, i + 5);              // spokes
        edges.emplace_back(i + 5, (i + 2) % 5 + 5);  // inner pentagram
    }
    return CubicGraph::from_edges(10, edges);
}

CubicGraph heawood() { return from_lcf(14, {5, -5}); }

CubicGraph mcgee() { return from_lcf(24, {12, 7, -7}); }

CubicGraph foster() { return from_lcf(90, {17, -9, 37, -37, 9, -17}); }

CubicGraph circular_ladder(int m) {
    if (m < 3) throw invalid_graph("circular ladder needs m >= 3");
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int i = 0; i < m; ++i) {
        edges.emplace_back(i, (i + 1) % m);
        edges.emplace_back(m + i, m + (i + 1) % m);
        edges.emplace_back(i, m + i);
    }
    return CubicGraph::from_edges(2 * m, edges);
}

CubicGraph generalized_petersen(int m, int k) {
    if (m < 3 || k < 1 || 2 * k == m)
        throw invalid_graph("generalized petersen needs m >= 3, k >= 1, 2k != m");
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int i = 0; i < m; ++i) {
        edges.emplace_back(i, (i + 1) % m);
        edges.emplace_back(i, m + i);
        edges.emplace_back(m + i, m + (i + k) % m);
    }
    return CubicGraph::from_edges(2 * m, edges);
}

CubicGraph apex_ladder(int m) {
    if (m < 4 || m % 2 != 0) throw invalid_graph("apex ladder needs even m >= 4");
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int c = 0; c < 2; ++c) {
        int base = c * 3 * m;
        for (int i = 0; i < 2 * m; ++i) edges.emplace_back(base + i, base + (i + 1) % (2 * m));
        for (int j = 0; j < m; ++j) {
            edges.emplace_back(base + 2 * m + j, base + 2 * j);
            edges.emplace_back(base + 2 * m + j, base + 2 * j + 1);
        }
    }
    for (int j = 0; j < m; ++j) edges.emplace_back(2 * m + j, 5 * m + j);
    return CubicGraph::from_edges(6 * m, edges);
}

CubicGraph by_name(const std::string& name) {
    if (name == "k4") return k4();
    if (name == "k33") return k33();
    if (name == "prism") return prism();
    if (name == "petersen") return petersen();
    if (name == "heawood") return heawood();
    if (name == "mcgee") return mcgee();
    if (name == "foster") return foster();
    if (name.rfind("gp", 0) == 0) {
        auto x = name.find('x', 2);
        if (x == std::string::npos) throw invalid_graph("unknown fixture: " + name);
        return generalized_petersen(std::stoi(name.substr(2, x - 2)),
                                    std::stoi(name.substr(x + 1)));
    }
    if (name.rfind("apex", 0) == 0) return apex_ladder(std::stoi(name.substr(4)));
    if (name.rfind("cl", 0) == 0) {
        int m = std::stoi(name.substr(2));
        return circular_ladder(m);
    }
    throw invalid_graph("unknown fixture: " + name);
}

}  // namespace fixtures
}  // namespace cubiso
