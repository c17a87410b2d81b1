#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "cubiso/decompose.hpp"
#include "cubiso/fixtures.hpp"
#include "cubiso/graph.hpp"

using namespace cubiso;

namespace {

std::vector<CubicGraph> load_bundle(int n) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s/cubic%02d.g6", CUBISO_DATA_DIR, n);
    std::vector<CubicGraph> out;
    for (const auto& line : read_graph6_lines(buf)) out.push_back(parse_cubic_graph6(line));
    return out;
}

LinearForestPair pair_from_edges(const CubicGraph& g,
                                 const std::vector<std::pair<Vertex, Vertex>>& f1_edges, int l1,
                                 int l2) {
    LinearForestPair p;
    p.assignment.assign(g.edge_count(), Forest::F2);
    for (auto [u, v] : f1_edges) p.assignment[g.edge_index(u, v)] = Forest::F1;
    p.l1 = l1;
    p.l2 = l2;
    return p;
}

// independent cross-check: enumerate every 2^m assignment
bool brute_force_exists(const CubicGraph& g, int l1, int l2) {
    int m = g.edge_count();
    for (long mask = 0; mask < (1L << m); ++mask) {
        LinearForestPair p;
        p.assignment.resize(m);
        for (int e = 0; e < m; ++e)
            p.assignment[e] = (mask >> e & 1) ? Forest::F2 : Forest::F1;
        p.l1 = l1;
        p.l2 = l2;
        if (!validate(g, p)) return true;
    }
    return false;
}

}  // namespace

// ---- validate ----

TEST_CASE("validate accepts the worked K4 pair") {
    CubicGraph g = fixtures::k4();
    // F1 = path 0-1-2-3, F2 = path 2-0-3-1
    LinearForestPair p = pair_from_edges(g, {{0, 1}, {1, 2}, {2, 3}}, 5, 5);
    CHECK(!validate(g, p));
    CHECK(p.max_len(g, Forest::F1) == 3);
    CHECK(p.max_len(g, Forest::F2) == 3);
    auto f1 = p.paths_of(g, Forest::F1);
    REQUIRE(f1.size() == 1);
    CHECK(f1[0] == std::vector<Vertex>{0, 1, 2, 3});
}

TEST_CASE("validate names the first violation") {
    CubicGraph g = fixtures::k4();
    LinearForestPair p = pair_from_edges(g, {{0, 1}, {1, 2}, {2, 3}}, 5, 5);
    p.assignment.pop_back();
    auto msg = validate(g, p);
    REQUIRE(msg.has_value());
    CHECK(msg->find("partition") != std::string::npos);

    // all three edges at vertex 0 into F1
    LinearForestPair q = pair_from_edges(g, {{0, 1}, {0, 2}, {0, 3}}, 5, 5);
    msg = validate(g, q);
    REQUIRE(msg.has_value());
    CHECK(msg->find("F1: vertex 0 has degree 3") != std::string::npos);

    // F1 = perfect matching leaves F2 = 4-cycle
    LinearForestPair c = pair_from_edges(g, {{0, 1}, {2, 3}}, 5, 5);
    msg = validate(g, c);
    REQUIRE(msg.has_value());
    CHECK(msg->find("F2: cycle") != std::string::npos);

    // length bound violation names the offending path
    CubicGraph pr = fixtures::prism();
    LinearForestPair lp =
        pair_from_edges(pr, {{0, 1}, {1, 2}, {2, 5}, {3, 4}}, 5, 1);
    auto lmsg = validate(pr, lp);
    REQUIRE(lmsg.has_value());
    CHECK(lmsg->find("F2") != std::string::npos);
    CHECK(lmsg->find("exceeds bound 1") != std::string::npos);
    CHECK(lmsg->find("-") != std::string::npos);  // the path itself is spelled out
}

TEST_CASE("isolated vertices are length-0 paths") {
    CubicGraph g = fixtures::k4();
    LinearForestPair p = pair_from_edges(g, {{0, 1}}, 5, 5);
    auto f1 = p.paths_of(g, Forest::F1);
    REQUIRE(f1.size() == 3);
    CHECK(f1[0] == std::vector<Vertex>{0, 1});
    CHECK(f1[1] == std::vector<Vertex>{2});
    CHECK(f1[2] == std::vector<Vertex>{3});
    CHECK(p.max_len(g, Forest::F1) == 1);
}

// ---- exact search ----

TEST_CASE("exact search on the six-vertex graphs") {
    for (const char* name : {"k33", "prism"}) {
        CubicGraph g = fixtures::by_name(name);
        auto r44 = thomassen_decompose(g, 4, 4, 1'000'000);
        CHECK(r44.status == DecomposeStatus::ProvenNone);
        CHECK(!r44.pair.has_value());
        auto r55 = thomassen_decompose(g, 5, 5, 1'000'000);
        REQUIRE(r55.status == DecomposeStatus::Found);
        CHECK(!validate(g, *r55.pair));
        CHECK(r55.pair->max_len(g, Forest::F1) <= 5);
        CHECK(r55.pair->max_len(g, Forest::F2) <= 5);
    }
}

TEST_CASE("exact search agrees with full enumeration on n <= 8") {
    for (int n : {4, 6, 8}) {
        for (const CubicGraph& g : load_bundle(n)) {
            for (auto [l1, l2] : std::vector<std::pair<int, int>>{
                     {2, 2}, {3, 3}, {4, 4}, {5, 5}, {2, 5}}) {
                auto r = thomassen_decompose(g, l1, l2, 10'000'000);
                REQUIRE(r.status != DecomposeStatus::BudgetExhausted);
                bool exists = brute_force_exists(g, l1, l2);
                CHECK((r.status == DecomposeStatus::Found) == exists);
                if (r.pair) CHECK(!validate(g, *r.pair));
            }
        }
    }
}

TEST_CASE("every cubic graph up to 10 vertices decomposes at bound five") {
    for (int n : {4, 6, 8, 10}) {
        for (const CubicGraph& g : load_bundle(n)) {
            auto r = thomassen_decompose(g, 5, 5, 10'000'000);
            REQUIRE(r.status == DecomposeStatus::Found);
            CHECK(!validate(g, *r.pair));
            // each forest spans with degrees in {1,2}
            int e1 = 0;
            for (Forest f : r.pair->assignment)
                if (f == Forest::F1) ++e1;
            int e2 = g.edge_count() - e1;
            CHECK(e1 >= g.n() / 2);
            CHECK(e1 <= g.n() - 1);
            CHECK(e2 >= g.n() / 2);
            CHECK(e2 <= g.n() - 1);
        }
    }
}

TEST_CASE("budget exhaustion is distinguished from impossibility") {
    CubicGraph g = load_bundle(14).front();
    auto r = thomassen_decompose(g, 2, 2, 40);
    CHECK(r.status == DecomposeStatus::BudgetExhausted);
    CHECK(!r.pair.has_value());
    CHECK(r.nodes >= 40);
}

// ---- heuristic ----

TEST_CASE("heuristic matches the validator on small graphs") {
    for (const char* name : {"k4", "k33", "prism", "petersen", "heawood", "mcgee"}) {
        CubicGraph g = fixtures::by_name(name);
        auto p = heuristic_decompose(g, 5, 5, 20260822);
        REQUIRE(p.has_value());
        CHECK(!validate(g, *p));
        CHECK(p->l2 == 5);
    }
}

TEST_CASE("alternating ladder pair and heuristic on circular ladders") {
    // even rungs + odd rail edges vs odd rungs + even rail edges: all paths
    // have exactly three edges
    int m = 8;
    CubicGraph g = fixtures::circular_ladder(m);
    std::vector<std::pair<Vertex, Vertex>> f1;
    for (int i = 0; i < m; i += 2) f1.emplace_back(i, m + i);            // even rungs
    for (int i = 1; i < m; i += 2) {
        f1.emplace_back(i, (i + 1) % m);                                 // odd outer rails
        f1.emplace_back(m + i, m + (i + 1) % m);                         // odd inner rails
    }
    LinearForestPair p = pair_from_edges(g, f1, 3, 3);
    CHECK(!validate(g, p));
    CHECK(p.max_len(g, Forest::F1) == 3);
    CHECK(p.max_len(g, Forest::F2) == 3);

    auto h = heuristic_decompose(fixtures::circular_ladder(50), 5, 5, 7);
    REQUIRE(h.has_value());
    CHECK(!validate(fixtures::circular_ladder(50), *h));
}

TEST_CASE("heuristic is reproducible for a fixed seed") {
    CubicGraph g = fixtures::mcgee();
    auto a = heuristic_decompose(g, 5, 5, 99);
    auto b = heuristic_decompose(g, 5, 5, 99);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(a->assignment == b->assignment);
}

TEST_CASE("heuristic handles a large ladder") {
    CubicGraph g = fixtures::circular_ladder(5000);
    auto p = heuristic_decompose(g, 5, 5, 1);
    REQUIRE(p.has_value());
    CHECK(!validate(g, *p));
    CHECK(p->max_len(g, Forest::F2) <= 5);
}
