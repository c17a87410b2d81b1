#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "cubiso/coloring.hpp"
#include "cubiso/decompose.hpp"
#include "cubiso/fixtures.hpp"
#include "cubiso/graph.hpp"

using namespace cubiso;

namespace {

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

// two or three disjoint Petersens, outer cycle one colour, inner the other
CubicGraph petersen_copies(int copies) {
    CubicGraph pet = fixtures::petersen();
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int c = 0; c < copies; ++c)
        for (const Edge& e : pet.edges()) edges.emplace_back(10 * c + e.u, 10 * c + e.v);
    return CubicGraph::from_edges(10 * copies, edges);
}

}  // namespace

// ---- proper colourings ----

TEST_CASE("a path has exactly two proper colourings") {
    CubicGraph g = fixtures::k4();
    LinearForestPair p = pair_from_edges(g, {{0, 1}, {1, 2}, {2, 3}}, 5, 5);
    VertexColoring a = proper_coloring_from_choices(g, p, {0});
    CHECK(a.colors == std::vector<Color>{Color::Red, Color::Blue, Color::Red, Color::Blue});
    VertexColoring b = proper_coloring_from_choices(g, p, {1});
    CHECK(b.colors == std::vector<Color>{Color::Blue, Color::Red, Color::Blue, Color::Red});
    int saw_a = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        VertexColoring c = random_proper_coloring(g, p, seed);
        CHECK((c == a || c == b));
        if (c == a) ++saw_a;
    }
    CHECK(saw_a > 60);
    CHECK(saw_a < 140);
}

TEST_CASE("random proper colouring is proper and its components live in F2") {
    CubicGraph g = fixtures::mcgee();
    auto r = thomassen_decompose(g, 5, 5, 10'000'000);
    REQUIRE(r.status == DecomposeStatus::Found);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        VertexColoring c = random_proper_coloring(g, *r.pair, seed);
        CHECK(proper_on_f1(g, *r.pair, c));
        for (Color side : {Color::Red, Color::Blue}) {
            ComponentCensus cen = census(g, c.colors, side);
            CHECK(!cen.has_oversized());
            long paths = 0;
            for (int t = 1; t <= 6; ++t) paths += cen.path_count(t);
            // with l2 = 5 every monochromatic component is a path on <= 6 vertices
            CHECK(paths == cen.components());
            // and each is contained in a single F2 path: mono edges are F2 edges
            for (int e = 0; e < g.edge_count(); ++e)
                if (c[g.edges()[e].u] == side && c[g.edges()[e].v] == side)
                    CHECK(r.pair->assignment[e] == Forest::F2);
        }
    }
}

TEST_CASE("reversing every path choice reverses the colouring") {
    CubicGraph g = fixtures::heawood();
    auto r = thomassen_decompose(g, 5, 5, 10'000'000);
    REQUIRE(r.status == DecomposeStatus::Found);
    size_t paths = r.pair->paths_of(g, Forest::F1).size();
    std::vector<std::uint8_t> choices(paths), flipped(paths);
    for (size_t i = 0; i < paths; ++i) {
        choices[i] = (i * 7 + 1) % 3 == 0;
        flipped[i] = 1 - choices[i];
    }
    VertexColoring a = proper_coloring_from_choices(g, *r.pair, choices);
    VertexColoring b = proper_coloring_from_choices(g, *r.pair, flipped);
    for (Vertex v = 0; v < g.n(); ++v) CHECK(b[v] == opposite(a[v]));
    CHECK(a.delta() == -b.delta());
}

// ---- discrepancies ----

TEST_CASE("path discrepancies") {
    CubicGraph g = fixtures::k4();
    VertexColoring half{{Color::Red, Color::Red, Color::Blue, Color::Blue}};
    auto d = path_discrepancies(g, half);
    for (long x : d) CHECK(x == 0);

    VertexColoring allred{std::vector<Color>(4, Color::Red)};
    d = path_discrepancies(g, allred);
    for (long x : d) CHECK(x == 0);  // K4 is not a path

    VertexColoring one{{Color::Red, Color::Blue, Color::Blue, Color::Blue}};
    d = path_discrepancies(g, one);
    CHECK(d[0] == 1);   // red P1, no blue P1
    CHECK(d[2] == 0);   // the blue triangle is K3, not P3
}

// ---- make_bisection ----

TEST_CASE("bisection flip mechanics") {
    CubicGraph g = fixtures::prism();
    // two even-length F1 paths 0-1-2 and 3-4-5
    LinearForestPair p = pair_from_edges(g, {{0, 1}, {1, 2}, {3, 4}, {4, 5}}, 5, 5);
    VertexColoring c{{Color::Red, Color::Blue, Color::Red,
                      Color::Red, Color::Blue, Color::Red}};
    CHECK(c.delta() == 2);
    VertexColoring out = make_bisection(g, c, p);
    CHECK(out.delta() == 0);
    CHECK(proper_on_f1(g, p, out));
    // exactly one path flipped: 3 vertices recoloured
    int changed = 0;
    for (Vertex v = 0; v < 6; ++v) changed += out[v] != c[v];
    CHECK(changed == 3);
    // delta 0 input returned unchanged
    CHECK(make_bisection(g, out, p) == out);
    // non-proper input rejected
    VertexColoring bad{std::vector<Color>(6, Color::Red)};
    CHECK_THROWS_AS(make_bisection(g, bad, p), bisection_error);
}

TEST_CASE("bisection across seeds on a bundled decomposition") {
    CubicGraph g = fixtures::mcgee();
    auto r = thomassen_decompose(g, 5, 5, 10'000'000);
    REQUIRE(r.status == DecomposeStatus::Found);
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        VertexColoring c = random_proper_coloring(g, *r.pair, seed);
        long delta_in = c.delta();
        VertexColoring out = make_bisection(g, c, *r.pair);
        CHECK(out.delta() == 0);
        CHECK(proper_on_f1(g, *r.pair, out));
        long changed = 0;
        for (Vertex v = 0; v < g.n(); ++v) changed += out[v] != c[v];
        CHECK(changed <= (r.pair->l1 + 1) * std::abs(delta_in) / 2);
    }
}

// ---- centres ----

TEST_CASE("separated centre selection") {
    CubicGraph pet = fixtures::petersen();
    // d = 0: everything
    auto all = select_separated_centres(pet, 0);
    CHECK(static_cast<int>(all.size()) == pet.n());
    // petersen has diameter 2, so d = 1 leaves a single centre
    auto one = select_separated_centres(pet, 1);
    CHECK(one == std::vector<Vertex>{0});

    CubicGraph g = fixtures::circular_ladder(40);
    for (int d : {1, 2, 3}) {
        auto centres = select_separated_centres(g, d);
        for (size_t i = 0; i < centres.size(); ++i) {
            auto dist = bfs_distances(g, centres[i]);
            for (size_t j = i + 1; j < centres.size(); ++j)
                CHECK(dist[centres[j]] >= 2 * d + 1);
        }
        // greedy guarantee from the ball-growth bound
        CHECK(static_cast<long>(centres.size()) * (3L << (2 * d + 1)) >= g.n());
    }
}

// ---- ball classification ----

TEST_CASE("classifying monochromatic balls") {
    CubicGraph g = fixtures::circular_ladder(40);
    VertexColoring allred{std::vector<Color>(80, Color::Red)};
    auto centres = select_separated_centres(g, 1);
    auto census = classify_balls(g, allred, centres, 1);
    CHECK(census.kappa() == 1);  // every B_1 is a red claw
    CHECK(census.counts[0] == static_cast<long>(centres.size()));
    CHECK(census.opposite[0] == -1);  // no all-blue balls anywhere
    auto pairing = pair_opposite_balls(g, allred, census);
    CHECK(pairing.s() == 0);
    CHECK(pairing.unmatched.size() == centres.size());
}

TEST_CASE("opposite classes pair up") {
    CubicGraph g = fixtures::circular_ladder(40);
    std::vector<Color> cols(80);
    for (Vertex v = 0; v < 80; ++v) cols[v] = v < 40 ? Color::Red : Color::Blue;
    VertexColoring c{cols};
    auto centres = select_separated_centres(g, 1);
    auto census = classify_balls(g, c, centres, 1);
    REQUIRE(census.kappa() == 2);  // red-centred and blue-centred claws
    CHECK(census.opposite[0] == 1);
    CHECK(census.opposite[1] == 0);
    CHECK(census.counts[0] + census.counts[1] == static_cast<long>(centres.size()));
    auto pairing = pair_opposite_balls(g, c, census);
    CHECK(pairing.s() == std::min(census.counts[0], census.counts[1]));
    CHECK(pairing.unmatched.size() + 2 * pairing.pairs.size() == centres.size());
    for (const BallPair& bp : pairing.pairs) {
        for (auto [x, y] : bp.iso) CHECK(c[y] == opposite(c[x]));
    }
    // balls across all pairs stay pairwise disjoint
    std::set<Vertex> used;
    for (const BallPair& bp : pairing.pairs)
        for (auto [x, y] : bp.iso) {
            CHECK(!used.count(x));
            CHECK(!used.count(y));
            used.insert(x);
            used.insert(y);
        }
}

TEST_CASE("self-opposite class pairs internally") {
    // Petersen with one 5-cycle red and the other blue is isomorphic to its
    // own colour reversal, so disjoint copies all land in one class
    CubicGraph g2 = petersen_copies(2);
    std::vector<Color> cols(20);
    for (Vertex v = 0; v < 20; ++v) cols[v] = v % 10 < 5 ? Color::Red : Color::Blue;
    VertexColoring c{cols};
    std::vector<Vertex> centres = {0, 10};
    auto census = classify_balls(g2, c, centres, 2);
    REQUIRE(census.kappa() == 1);
    CHECK(census.opposite[0] == 0);  // self-opposite
    auto pairing = pair_opposite_balls(g2, c, census);
    REQUIRE(pairing.s() == 1);
    CHECK(pairing.unmatched.empty());
    CHECK(pairing.pairs[0].u == 0);
    CHECK(pairing.pairs[0].w == 10);
    CHECK(pairing.pairs[0].iso.size() == 10);

    // odd member count leaves one unmatched
    CubicGraph g3 = petersen_copies(3);
    std::vector<Color> cols3(30);
    for (Vertex v = 0; v < 30; ++v) cols3[v] = v % 10 < 5 ? Color::Red : Color::Blue;
    VertexColoring c3{cols3};
    auto census3 = classify_balls(g3, c3, {0, 10, 20}, 2);
    REQUIRE(census3.kappa() == 1);
    auto pairing3 = pair_opposite_balls(g3, c3, census3);
    CHECK(pairing3.s() == 1);
    CHECK(pairing3.unmatched == std::vector<Vertex>{20});
}

TEST_CASE("oversized balls are refused") {
    CubicGraph g = fixtures::foster();
    VertexColoring c{std::vector<Color>(90, Color::Red)};
    CHECK_THROWS_AS(classify_balls(g, c, {0}, 8), ball_size_error);
}

// ---- tail bound ----

TEST_CASE("mcdiarmid bound closed forms") {
    CHECK(mcdiarmid_bound(12, 100, 0) == doctest::Approx(2.0));
    for (double n : {1e4, 65536.0, 123456.0}) {
        double m = std::sqrt(n * std::log(n));
        double want = 2.0 * std::pow(n, -1.0 / 72.0);
        CHECK(std::abs(mcdiarmid_bound(12, n, m) - want) <= 1e-12 * want);
    }
    // monotone: decreasing in m, increasing in c
    CHECK(mcdiarmid_bound(12, 100, 10) > mcdiarmid_bound(12, 100, 20));
    CHECK(mcdiarmid_bound(6, 100, 10) < mcdiarmid_bound(12, 100, 10));
}

TEST_CASE("observed tails respect the bound where it bites") {
    CubicGraph g = fixtures::circular_ladder(500);
    auto p = heuristic_decompose(g, 5, 5, 5);
    REQUIRE(p.has_value());
    long n_paths = static_cast<long>(p->paths_of(g, Forest::F1).size());
    const int runs = 40;
    for (double m : {200.0, 400.0}) {
        double bound = mcdiarmid_bound(12, static_cast<double>(n_paths), m);
        int exceed = 0;
        for (int seed = 0; seed < runs; ++seed) {
            VertexColoring c = random_proper_coloring(g, *p, seed);
            auto d = path_discrepancies(g, c);
            for (int t = 2; t <= 6; ++t)
                if (std::abs(d[t - 1]) > m) {
                    ++exceed;
                    break;
                }
        }
        CHECK(static_cast<double>(exceed) / runs <= bound);
    }
}
