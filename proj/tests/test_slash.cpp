#include "oracles.hpp"

#include "slashtree/constructions.hpp"
#include "slashtree/errors.hpp"
#include "slashtree/slash.hpp"

#include <doctest.h>

#include <numeric>

using namespace slashtree;

namespace {

MeasuredGraph diamond() { return build_laakso_uniform({0, 2, 2, 0}).measured; }

MeasuredGraph single_edge() { return build_path({1}); }

std::vector<Rational> sorted_weights(const StGraph& g) {
    std::vector<Rational> w;
    for (const auto& e : g.edges()) w.push_back(e.weight);
    std::sort(w.begin(), w.end());
    return w;
}

}  // namespace

TEST_CASE("slash_product with a single edge") {
    auto g = build_laakso_uniform({1, 2, 2, 1}).measured;
    auto left = slash_product(single_edge(), g);
    CHECK(left.graph.vertex_count() == g.graph.vertex_count());
    CHECK(left.graph.edge_count() == g.graph.edge_count());
    for (EdgeId e = 0; e < g.graph.edge_count(); ++e) {
        CHECK(left.graph.edge(e).weight == g.graph.edge(e).weight);
        CHECK(left.nu[e] == g.nu[e]);
    }
    CHECK(geodesic_metric(left.graph)(left.graph.s(), left.graph.t()) == 1);

    auto right = slash_product(g, single_edge());
    CHECK(right.graph.edges() == g.graph.edges());
    CHECK(right.nu == g.nu);
    CHECK(right.graph.s() == g.graph.s());
    CHECK(right.graph.t() == g.graph.t());
}

TEST_CASE("diamond slash diamond") {
    auto dd = slash_product(diamond(), diamond());
    CHECK(dd.graph.vertex_count() == 12);
    CHECK(dd.graph.edge_count() == 16);
    for (EdgeId e = 0; e < 16; ++e) {
        CHECK(dd.graph.edge(e).weight == Rational(1, 4));
        CHECK(dd.nu[e] == Rational(1, 16));
    }
    CHECK(is_normalized_geodesic_st(dd.graph));
    auto skew = build_laakso({0, 2, 2, 0}, {{}, {Rational(1, 3), Rational(1, 3)}, {Rational(1, 3), Rational(1, 3)}, {}});
    CHECK_THROWS_AS(slash_product(skew.measured, diamond()), GraphError);
}

TEST_CASE("slash powers: sizes, measure and normalization") {
    SlashPower power(diamond(), 3);
    const std::size_t vertices[] = {4, 12, 44};
    for (unsigned j = 1; j <= 3; ++j) {
        const auto& level = power.level(j);
        CHECK(level.graph.vertex_count() == vertices[j - 1]);
        CHECK(level.graph.edge_count() == std::size_t{1} << (2 * j));
        CHECK(std::accumulate(level.nu.begin(), level.nu.end(), Rational(0)) == 1);
        CHECK(is_normalized_geodesic_st(level.graph));
    }
    CHECK(power.level(1).graph == diamond().graph);

    auto base = build_laakso_uniform({1, 2, 2, 1}).measured;
    SlashPower lp(base, 3);
    for (unsigned j = 1; j <= 3; ++j) {
        const auto& level = lp.level(j);
        std::size_t expected = 1;
        for (unsigned i = 0; i < j; ++i) expected *= 6;
        CHECK(level.graph.edge_count() == expected);
        CHECK(std::accumulate(level.nu.begin(), level.nu.end(), Rational(0)) == 1);
        CHECK(is_normalized_geodesic_st(level.graph));
        // weights and measure are products along the label
        for (EdgeId e = 0; e < level.graph.edge_count(); ++e) {
            auto label = lp.edge_label(j, e);
            CHECK(label.edges.size() == j);
            Rational w = 1, nu = 1;
            for (EdgeId f : label.edges) {
                w *= base.graph.edge(f).weight;
                nu *= base.nu[f];
            }
            CHECK(level.graph.edge(e).weight == w);
            CHECK(level.nu[e] == nu);
            CHECK(lp.edge_id(label) == e);
        }
    }
    CHECK_THROWS_AS(SlashPower(base, 8, 1000), CapExceeded);
}

TEST_CASE("labels round-trip through text") {
    SlashPower power(diamond(), 3);
    const auto& base = power.base().graph;
    for (EdgeId e = 0; e < power.top().graph.edge_count(); ++e) {
        auto label = power.edge_label(3, e);
        CHECK(parse_label(format_label(label, base), base, false) == label);
    }
    for (VertexId v = 0; v < power.top().graph.vertex_count(); ++v) {
        auto label = power.vertex_label(3, v);
        CHECK(power.vertex_id(label) == v);
        CHECK(parse_label(format_label(label, base), base, true) == label);
    }
    CHECK_THROWS_AS(parse_label("9/0", base, false), SchemaError);
    CHECK_THROWS_AS(parse_label("0/nope", base, true), SchemaError);
}

TEST_CASE("replace_edge") {
    auto dia = diamond().graph;
    auto two = build_path({1, 1}).graph;
    auto r = replace_edge(dia, 0, two);
    CHECK(r.vertex_count() == 5);
    CHECK(r.edge_count() == 5);
    CHECK(geodesic_metric(r)(r.s(), r.t()) == 1);
    CHECK(replace_edge(dia, 2, build_path({1}).graph) == dia);
    auto single = single_edge().graph;
    auto whole = replace_edge(single, 0, dia);
    CHECK(whole.vertex_count() == 4);
    CHECK(sorted_weights(whole) == sorted_weights(dia));
    CHECK_THROWS_AS(replace_edge(dia, 7, two), GraphError);
}

TEST_CASE("associativity isomorphism") {
    CHECK(associativity_isomorphism_check(single_edge()));
    CHECK(associativity_isomorphism_check(diamond()));
    CHECK(associativity_isomorphism_check(build_laakso_uniform({1, 2, 2, 1}).measured));
}

TEST_CASE("lifting paths and cycles") {
    auto l = build_laakso_uniform({0, 2, 2, 0});
    SlashPower power(l.measured, 2);
    auto branch1 = l.st_path(1), branch2 = l.st_path(2);
    auto one = power.lift_path(2, {0, 1}, {branch1});
    CHECK(one.size() == 3);
    CHECK(path_length(power.level(2).graph, one) == Rational(1, 2));
    auto cyc = power.lift_cycle(2, l.cycle(), {branch1, branch2, branch1, branch2});
    CHECK(cyc.size() == 8);
    CHECK_NOTHROW(check_cycle(power.level(2).graph, cyc));
    CHECK(cycle_length(power.level(2).graph, cyc) == 2);

    auto single = build_path({1});
    SlashPower trivial(single, 2);
    auto same = trivial.lift_path(2, {0, 1}, {{0, 1}});
    CHECK(same == PathSeq{0, 1});
    CHECK_THROWS_AS(power.lift_path(2, {0, 1}, {{0, 2}}), GraphError);
}

TEST_CASE("copies scale distances") {
    for (const auto& base : {diamond(), build_laakso_uniform({1, 2, 2, 1}).measured}) {
        SlashPower power(base, 2);
        auto d1 = geodesic_metric(base.graph);
        auto d2 = geodesic_metric(power.level(2).graph);
        const auto n = static_cast<VertexId>(base.graph.vertex_count());
        for (EdgeId e = 0; e < base.graph.edge_count(); ++e) {
            const Rational& w = base.graph.edge(e).weight;
            for (VertexId u = 0; u < n; ++u) {
                for (VertexId v = 0; v < n; ++v) {
                    CHECK(d2(power.copy_vertex(2, e, u), power.copy_vertex(2, e, v)) == w * d1(u, v));
                }
            }
        }
    }
}

TEST_CASE("lazy metric matches materialized powers") {
    for (const auto& base : {diamond(), build_laakso_uniform({1, 2, 2, 1}).measured,
                             build_laakso_uniform({0, 2, 3, 0}).measured}) {
        SlashPower power(base, 3, 20000);
        LazyPowerMetric lazy(base);
        for (unsigned j = 1; j <= 3; ++j) {
            auto d = geodesic_metric(power.level(j).graph);
            const auto n = static_cast<VertexId>(d.size());
            // all pairs up to level 2, a stride sample at level 3
            VertexId stride = j < 3 ? 1 : 7;
            for (VertexId u = 0; u < n; u += stride) {
                for (VertexId v = 0; v < n; ++v) {
                    CHECK(lazy.distance(power.vertex_label(j, u), power.vertex_label(j, v)) == d(u, v));
                }
            }
        }
    }
}

TEST_CASE("powers of an s-t subgraph embed isometrically") {
    // diamond plus a third s-t path s-c-t
    StGraph g({"s", "a", "t", "b", "c"},
              {{0, 1, Rational(1, 2)},
               {1, 2, Rational(1, 2)},
               {0, 3, Rational(1, 2)},
               {3, 2, Rational(1, 2)},
               {0, 4, Rational(1, 2)},
               {4, 2, Rational(1, 2)}},
              0, 2);
    MeasuredGraph big{g, std::vector<Rational>(6, Rational(1, 6))};
    std::vector<EdgeId> keep{0, 1, 2, 3};
    auto sub = edge_subgraph(g, keep, 0, 2);
    MeasuredGraph small{sub.graph, std::vector<Rational>(4, Rational(1, 4))};
    SlashPower pb(big, 2), ps(small, 2);
    auto db = geodesic_metric(pb.level(2).graph);
    auto ds = geodesic_metric(ps.level(2).graph);
    auto lift = [&](VertexId v) {
        auto label = ps.vertex_label(2, v);
        for (auto& e : label.edges) e = sub.to_parent_edge[e];
        if (label.vertex) label.vertex = sub.to_parent_vertex[*label.vertex];
        return pb.vertex_id(label);
    };
    const auto n = static_cast<VertexId>(ds.size());
    for (VertexId u = 0; u < n; ++u) {
        for (VertexId v = 0; v < n; ++v) CHECK(ds(u, v) == db(lift(u), lift(v)));
    }
    for (EdgeId e = 0; e < ps.level(2).graph.edge_count(); ++e) {
        const auto& edge = ps.level(2).graph.edge(e);
        auto found = pb.level(2).graph.find_edge(lift(edge.tail), lift(edge.head));
        REQUIRE(found.has_value());
        CHECK(pb.level(2).graph.edge(*found).weight == edge.weight);
    }
}
