#include "oracles.hpp"

#include "slashtree/constructions.hpp"
#include "slashtree/errors.hpp"
#include "slashtree/graph.hpp"

#include <doctest.h>

using namespace slashtree;

namespace {

StGraph diamond_graph() { return build_cycle({Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}).graph; }

}  // namespace

TEST_CASE("constructor rejects malformed graphs") {
    CHECK_THROWS_AS(StGraph({"s", "t"}, {{0, 0, Rational(1)}}, 0, 1), GraphError);
    CHECK_THROWS_AS(StGraph({"s", "t"}, {{0, 1, Rational(1)}, {1, 0, Rational(1)}}, 0, 1), GraphError);
    CHECK_THROWS_AS(StGraph({"s", "t"}, {{0, 1, Rational(0)}}, 0, 1), GraphError);
    CHECK_THROWS_AS(StGraph({"s", "t"}, {{0, 2, Rational(1)}}, 0, 1), GraphError);
    CHECK_THROWS_AS(StGraph({}, {}, 0, 0), GraphError);
}

TEST_CASE("validate_st_graph") {
    StGraph single({"s", "t"}, {{0, 1, Rational(1)}}, 0, 1);
    CHECK(validate_st_graph(single).passed());
    CHECK(validate_st_graph(diamond_graph()).passed());
    CHECK(validate_st_graph(build_laakso_uniform({1, 2, 2, 1}).graph()).passed());

    // b -> s closes a directed cycle and lies on no s-t path
    StGraph tri({"s", "a", "b"}, {{0, 1, Rational(1)}, {1, 2, Rational(1)}, {2, 0, Rational(1)}}, 0, 2);
    auto report = validate_st_graph(tri);
    CHECK_FALSE(report.passed());
    CHECK(report.connected);
    CHECK(report.failing_edges() == std::vector<EdgeId>{2});

    StGraph split({"s", "t", "x", "y"}, {{0, 1, Rational(1)}, {2, 3, Rational(1)}}, 0, 1);
    CHECK_FALSE(validate_st_graph(split).connected);
    CHECK_FALSE(validate_st_graph(split).passed());

    // edge pointing backwards towards s
    StGraph back({"s", "a", "t"}, {{0, 2, Rational(1)}, {1, 0, Rational(1)}, {1, 2, Rational(1)}}, 0, 2);
    CHECK(validate_st_graph(back).failing_edges() == std::vector<EdgeId>{1, 2});
}

TEST_CASE("geodesic_metric examples") {
    auto path = build_path({Rational(1, 3), Rational(1, 3), Rational(1, 3)});
    CHECK(geodesic_metric(path.graph)(0, 3) == 1);
    auto d = geodesic_metric(diamond_graph());
    CHECK(d(1, 3) == 1);
    CHECK(d(0, 2) == 1);
    auto c4 = build_cycle({1, 1}, {1, 1});
    CHECK(geodesic_metric(c4.graph)(0, 2) == 2);
    StGraph split({"s", "t", "x", "y"}, {{0, 1, Rational(1)}, {2, 3, Rational(1)}}, 0, 1);
    CHECK_THROWS_AS(geodesic_metric(split), GraphError);
}

TEST_CASE("geodesic_metric agrees with all-paths brute force") {
    Engine rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 2 + uniform_below(rng, 7);
        auto g = oracle::random_graph(rng, n, uniform_below(rng, 2 * n));
        auto d = geodesic_metric(g);
        auto ref = oracle::all_paths_metric(g);
        for (VertexId u = 0; u < n; ++u) {
            for (VertexId v = 0; v < n; ++v) {
                REQUIRE(ref[u][v].has_value());
                CHECK(d(u, v) == *ref[u][v]);
            }
        }
    }
}

TEST_CASE("metric axioms on constructed graphs") {
    for (const auto& g : {diamond_graph(), build_laakso_uniform({1, 2, 2, 1}).graph(),
                          build_laakso_uniform({2, 3, 2, 1}).graph(), build_cycle({1, 2, 3}, {6}).graph}) {
        auto d = geodesic_metric(g);
        const auto n = static_cast<VertexId>(d.size());
        for (VertexId u = 0; u < n; ++u) {
            CHECK(d(u, u) == 0);
            for (VertexId v = 0; v < n; ++v) {
                CHECK(d(u, v) == d(v, u));
                if (u != v) CHECK(d(u, v) > 0);
                for (VertexId w = 0; w < n; ++w) CHECK(d(u, w) <= d(u, v) + d(v, w));
            }
        }
        for (const auto& e : g.edges()) CHECK(d(e.tail, e.head) <= e.weight);
    }
}

TEST_CASE("s-t paths are isometric") {
    for (const auto& g : {diamond_graph(), build_laakso_uniform({1, 2, 2, 1}).graph(),
                          build_laakso_uniform({0, 2, 3, 1}).graph()}) {
        auto d = geodesic_metric(g);
        for (const auto& p : enumerate_st_paths(g, 100)) {
            for (std::size_t i = 0; i < p.size(); ++i) {
                for (std::size_t j = i; j < p.size(); ++j) {
                    PathSeq piece(p.begin() + static_cast<long>(i), p.begin() + static_cast<long>(j) + 1);
                    CHECK(path_length(g, piece) == d(p[i], p[j]));
                }
            }
        }
    }
}

TEST_CASE("normalization") {
    CHECK(is_normalized_geodesic_st(diamond_graph()));
    CHECK(is_normalized_geodesic_st(build_laakso_uniform({1, 2, 2, 1}).graph()));
    auto skew = build_laakso({0, 2, 2, 0}, {{}, {Rational(1, 3), Rational(1, 3)}, {Rational(1, 3), Rational(1, 3)}, {}});
    CHECK_FALSE(is_normalized_geodesic_st(skew.graph()));
    // branches 1/2,1/2 and 1/3,1/3 as raw edges
    StGraph uneven({"s", "a", "t", "b"},
                   {{0, 1, Rational(1, 2)}, {1, 2, Rational(1, 2)}, {0, 3, Rational(1, 3)}, {3, 2, Rational(1, 3)}}, 0, 2);
    CHECK_FALSE(is_normalized_geodesic_st(uneven));
    CHECK_THROWS_AS(normalize(uneven), NotGeodesicStGraph);

    auto two = normalize(build_path({1, 1}).graph);
    CHECK(two.edge(0).weight == Rational(1, 2));
    CHECK(two.edge(1).weight == Rational(1, 2));
    auto unit_diamond = normalize(build_cycle({1, 1}, {1, 1}).graph);
    CHECK(unit_diamond == diamond_graph());
    CHECK(normalize(unit_diamond) == unit_diamond);
    CHECK(is_normalized_geodesic_st(unit_diamond));
}

TEST_CASE("path_length") {
    auto c4 = build_cycle({1, 1}, {1, 1}).graph;
    CHECK(path_length(c4, {0, 1, 2}) == 2);
    CHECK(path_length(diamond_graph(), {0, 3, 2}) == 1);
    CHECK(path_length(c4, {1}) == 0);
    CHECK_THROWS_AS(path_length(c4, {0, 2}), GraphError);
}

TEST_CASE("s-t path enumeration") {
    auto dia = enumerate_st_paths(diamond_graph(), 10);
    CHECK(dia == std::vector<PathSeq>{{0, 1, 2}, {0, 3, 2}});
    CHECK(enumerate_st_paths(build_laakso_uniform({1, 2, 2, 1}).graph(), 10).size() == 2);
    CHECK(enumerate_st_paths(build_path({1, 1, 1}).graph, 10).size() == 1);
    CHECK_THROWS_AS(enumerate_st_paths(diamond_graph(), 1), CapExceeded);
    CHECK(count_st_paths(diamond_graph()) == 2);
    CHECK(st_path_length_range(build_cycle({1, 2}, {3}).graph) == std::pair<Rational, Rational>{3, 3});
}

TEST_CASE("cycles") {
    auto g = diamond_graph();
    CHECK_NOTHROW(check_cycle(g, {0, 1, 2, 3}));
    CHECK_THROWS_AS(check_cycle(g, {0, 1, 3}), GraphError);
    CHECK(cycle_length(g, {0, 1, 2, 3}) == 2);
    CHECK(lex_shortest_path(g, 1, 3) == PathSeq{1, 0, 3});

    Engine rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t n = 3 + uniform_below(rng, 4);
        auto h = oracle::random_graph(rng, n, 2 + uniform_below(rng, n));
        auto found = enumerate_simple_cycles(h, 100000);
        std::multiset<std::pair<std::vector<VertexId>, Rational>> mine;
        for (const auto& c : found) {
            CHECK(c.front() == *std::min_element(c.begin(), c.end()));
            CHECK(c[1] < c.back());
            std::vector<VertexId> set(c.begin(), c.end());
            std::sort(set.begin(), set.end());
            mine.insert({set, cycle_length(h, c)});
        }
        CHECK(std::is_sorted(found.begin(), found.end()));
        CHECK(mine == oracle::all_cycles(h));
    }
}
