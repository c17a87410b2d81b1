// Random instance generation, the staged pipeline with fallback, the
// concentration experiment, and JSON round trips.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "cubiso/fixtures.hpp"
#include "cubiso/harness.hpp"
#include "cubiso/json_io.hpp"

using namespace cubiso;
using namespace cubiso::fixtures;
using nlohmann::json;

TEST_CASE("adaptive radius mirrors the reducer confinement") {
    CHECK(adaptive_ball_radius(12) == 12);
    CHECK(adaptive_ball_radius(3) == 3);
    CHECK(adaptive_ball_radius(0) == 1);
}

TEST_CASE("random cubic generation") {
    SUBCASE("order four forces the complete graph") {
        for (std::uint64_t seed : {1ull, 2ull, 77ull}) {
            auto g = random_cubic(4, seed);
            REQUIRE(g.n() == 4);
            CHECK(g.edge_count() == 6);
            for (Vertex u = 0; u < 4; ++u)
                for (Vertex v = u + 1; v < 4; ++v) CHECK(g.has_edge(u, v));
        }
    }
    SUBCASE("deterministic per seed") {
        auto a = random_cubic(64, 5);
        auto b = random_cubic(64, 5);
        CHECK(a.edges() == b.edges());
    }
    SUBCASE("validated and connected") {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            auto g = random_cubic(128, seed);
            CHECK(g.n() == 128);
            CHECK(is_connected(g));
        }
    }
    SUBCASE("bad orders are rejected") {
        CHECK_THROWS_AS(random_cubic(7, 1), std::invalid_argument);
        CHECK_THROWS_AS(random_cubic(2, 1), std::invalid_argument);
    }
}

TEST_CASE("pipeline on fixtures") {
    PipelineConfig cfg;
    cfg.seed = 9;

    SUBCASE("complete graph") {
        auto rep = run_pipeline(k4(), cfg);
        REQUIRE(rep.success());
        CHECK(rep.certificate.certified());
        CHECK((rep.status == "structured" || rep.status == "repair"));
        for (long x : rep.final_discrepancies) CHECK(x == 0);
        CHECK(verify_isomorphic_bisection(k4(), *rep.coloring).certified());
    }
    SUBCASE("petersen graph") {
        auto rep = run_pipeline(petersen(), cfg);
        REQUIRE(rep.success());
        CHECK(verify_isomorphic_bisection(petersen(), *rep.coloring).certified());
    }
    SUBCASE("circular ladder keeps the ball machinery alive") {
        auto g = circular_ladder(100);
        auto rep = run_pipeline(g, cfg);
        REQUIRE(rep.success());
        bool classified = false;
        for (const auto& st : rep.stages)
            if (st.stage == "classify" && st.ok) classified = true;
        CHECK(classified);  // radius-12 ladder balls fit the canonical limit
        CHECK(verify_isomorphic_bisection(g, *rep.coloring).certified());
    }
    SUBCASE("random graph falls back when balls outgrow the canonical limit") {
        auto g = random_cubic(256, 3);
        auto rep = run_pipeline(g, cfg);
        REQUIRE(rep.success());
        CHECK(rep.status == "repair");
        bool classify_failed = false;
        for (const auto& st : rep.stages)
            if (st.stage == "classify" && !st.ok) classify_failed = true;
        CHECK(classify_failed);
        CHECK(verify_isomorphic_bisection(g, *rep.coloring).certified());
    }
    SUBCASE("no fallback means an honest failure on the same graph") {
        auto g = random_cubic(256, 3);
        PipelineConfig strict = cfg;
        strict.fallback = false;
        auto rep = run_pipeline(g, strict);
        CHECK(!rep.success());
        CHECK(rep.status == "failure");
        CHECK(!rep.failure.empty());
        CHECK(!rep.coloring.has_value());
    }
    SUBCASE("disconnected input is split, merged and re-verified") {
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (int base : {0, 4})
            for (Vertex u = 0; u < 4; ++u)
                for (Vertex v = u + 1; v < 4; ++v) edges.emplace_back(base + u, base + v);
        auto g = CubicGraph::from_edges(8, edges);
        auto rep = run_pipeline(g, cfg);
        REQUIRE(rep.success());
        bool split = false;
        for (const auto& st : rep.stages)
            if (st.stage.find("component 1") != std::string::npos) split = true;
        CHECK(split);
        CHECK(rep.coloring->delta() == 0);
        CHECK(verify_isomorphic_bisection(g, *rep.coloring).certified());
    }
    SUBCASE("reports are reproducible") {
        auto g = random_cubic(128, 4);
        auto a = run_pipeline(g, cfg);
        auto b = run_pipeline(g, cfg);
        CHECK(pipeline_report_json(a, false).dump() == pipeline_report_json(b, false).dump());
    }
}

TEST_CASE("concentration experiment") {
    auto result = concentration_experiment(64, 4, 5, 5, 1, 2);
    REQUIRE(result.records.size() == 4);
    for (int i = 0; i < 4; ++i) {
        CHECK(result.records[i].seed == static_cast<std::uint64_t>(1 + i));
        CHECK(result.records[i].n == 64);
    }
    const auto& s = result.summary;
    CHECK(s.n == 64);
    CHECK(s.seeds == 4);
    CHECK(s.completed >= 1);
    const double root = std::sqrt(64.0 * std::log(64.0));
    CHECK(s.pre_envelope == doctest::Approx(2 * root));
    CHECK(s.post_envelope == doctest::Approx(3 * root));
    CHECK(s.delta_bound == doctest::Approx(root / 10));
    CHECK(s.pairing_bound == doctest::Approx(64.0 / 128.0));
    for (const auto& rec : result.records) {
        if (rec.outcome != "ok") continue;
        // the bisection stage leaves no colour imbalance
        long max_disc = 0;
        for (long x : rec.disc_after_bisection) max_disc = std::max(max_disc, std::labs(x));
        CHECK(max_disc <= 64);
    }

    SUBCASE("thread count does not change the merged output") {
        auto serial = concentration_experiment(64, 4, 5, 5, 1, 1);
        REQUIRE(serial.records.size() == result.records.size());
        for (std::size_t i = 0; i < serial.records.size(); ++i)
            CHECK(experiment_record_json(serial.records[i], false).dump() ==
                  experiment_record_json(result.records[i], false).dump());
        CHECK(experiment_summary_json(serial.summary).dump() ==
              experiment_summary_json(result.summary).dump());
    }
}

TEST_CASE("json round trips") {
    SUBCASE("colouring") {
        VertexColoring c;
        c.colors = {Color::Red, Color::Blue, Color::Blue, Color::Red};
        auto j = coloring_json(c);
        CHECK(j["colors"] == "RBBR");
        auto back = coloring_from_json(j);
        CHECK(back == c);
        CHECK_THROWS_AS(coloring_from_json(json{{"colors", "RX"}}), std::invalid_argument);
    }
    SUBCASE("graph record") {
        auto g = petersen();
        auto j = graph_json(g);
        CHECK(j["n"] == 10);
        CHECK(j["m"] == 15);
        auto back = parse_cubic_graph6(j["graph6"].get<std::string>());
        CHECK(back.edges() == g.edges());
    }
    SUBCASE("component classes") {
        CHECK(form_json(path_form(3)) == json{{"path", 3}});
        auto sentinel = CanonicalForm::oversized_sentinel(100, 150);
        auto j = form_json(sentinel);
        CHECK(j["oversized"]["n"] == 100);
        CHECK(j["oversized"]["m"] == 150);
        SmallGraph k4s(4);
        for (int u = 0; u < 4; ++u)
            for (int v = u + 1; v < 4; ++v) k4s.add_edge(u, v);
        CHECK(form_json(canonical_form(k4s)).contains("bytes"));
    }
    SUBCASE("reducer certificate survives the trip and still verifies") {
        auto g = circular_ladder(40);
        auto found = find_reducer(g, 0, 4, 50);
        REQUIRE(found.reducer.has_value());
        auto j = reducer_json(*found.reducer);
        auto back = reducer_from_json(j);
        CHECK(back.t == found.reducer->t);
        CHECK(back.r == found.reducer->r);
        CHECK(back.region == found.reducer->region);
        CHECK(back.provenance == found.reducer->provenance);
        CHECK(verify_reducer(g, back).certified);
    }
    SUBCASE("forest pair serialization covers every edge once") {
        auto g = petersen();
        auto dec = thomassen_decompose(g, 5, 5);
        REQUIRE(dec.pair.has_value());
        auto j = forest_pair_json(g, *dec.pair);
        CHECK(j["f1"]["edges"].size() + j["f2"]["edges"].size() ==
              static_cast<std::size_t>(g.edge_count()));
        CHECK(j["l1"] == 5);
        CHECK(j["f1"]["max_len"].get<int>() <= 5);
        CHECK(j["f2"]["max_len"].get<int>() <= 5);
    }
}
