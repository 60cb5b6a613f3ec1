#include "oracles.hpp"

#include "slashtree/constructions.hpp"
#include "slashtree/errors.hpp"
#include "slashtree/slash.hpp"

#include <doctest.h>

#include <numeric>

using namespace slashtree;

namespace {

Rational total(const std::vector<Rational>& v) { return std::accumulate(v.begin(), v.end(), Rational(0)); }

std::vector<Rational> random_weights(Engine& rng, std::size_t count) {
    std::vector<Rational> out;
    for (std::size_t i = 0; i < count; ++i) {
        Rational q(static_cast<long>(1 + uniform_below(rng, 9)), static_cast<long>(1 + uniform_below(rng, 9)));
        q.canonicalize();
        out.push_back(q);
    }
    return out;
}

// Rescales w so that it sums to `target`.
std::vector<Rational> rescaled(std::vector<Rational> w, const Rational& target) {
    Rational s = total(w);
    for (auto& x : w) x = x * target / s;
    return w;
}

}  // namespace

TEST_CASE("build_path") {
    auto one = build_path({1});
    CHECK(one.graph.edge_count() == 1);
    CHECK(one.nu == std::vector<Rational>{1});
    CHECK(build_path({1, 1}).nu == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
    CHECK(build_path({1, 2, 1}).nu == std::vector<Rational>{Rational(1, 4), Rational(1, 2), Rational(1, 4)});
    CHECK_THROWS_AS(build_path({}), GraphError);
}

TEST_CASE("build_cycle") {
    auto c4 = build_cycle({1, 1}, {1, 1});
    CHECK(c4.nu == std::vector<Rational>(4, Rational(1, 4)));
    CHECK(c4.graph.s() == 0);
    CHECK(c4.graph.t() == 2);
    auto c = build_cycle({1, 1, 1}, {3});
    CHECK(c.nu == std::vector<Rational>{Rational(1, 6), Rational(1, 6), Rational(1, 6), Rational(1, 2)});
    CHECK_THROWS_AS(build_cycle({1, 1}, {3}), NoBalancedSplit);
    CHECK_THROWS_AS(build_cycle({1}, {1}), GraphError);
    CHECK(validate_st_graph(c.graph).passed());
}

TEST_CASE("build_laakso") {
    auto dia = build_laakso_uniform({0, 2, 2, 0});
    CHECK(dia.graph().vertex_count() == 4);
    CHECK(dia.graph().edge_count() == 4);
    CHECK(dia.measured.nu == std::vector<Rational>(4, Rational(1, 4)));
    CHECK(dia.cycle_length() == 2);

    // (1,2,2,1): stem and tail edges plus two branches of two edges
    auto l = build_laakso_uniform({1, 2, 2, 1});
    CHECK(l.graph().edge_count() == 6);
    CHECK(l.graph().vertex_count() == 6);
    for (EdgeId e : l.stem) CHECK(l.measured.nu[e] == Rational(1, 4));
    for (EdgeId e : l.tail) CHECK(l.measured.nu[e] == Rational(1, 4));
    for (EdgeId e : l.branch1) CHECK(l.measured.nu[e] == Rational(1, 8));
    for (EdgeId e : l.branch2) CHECK(l.measured.nu[e] == Rational(1, 8));
    CHECK(is_normalized_geodesic_st(l.graph()));
    CHECK(l.graph().name(l.entry) == "x1");
    CHECK(l.graph().name(l.exit) == "z0");

    auto skew = build_laakso({0, 2, 3, 0}, {{}, {Rational(1, 2), Rational(1, 2)},
                                            {Rational(1, 3), Rational(1, 3), Rational(1, 3)}, {}});
    CHECK(total(skew.measured.nu) == 1);
    CHECK_NOTHROW(validate_measure(skew.measured));
    CHECK_THROWS_AS(build_laakso({0, 2, 2, 0}, {{}, {1, 1}, {1, 2}, {}}), GraphError);
    CHECK_THROWS_AS(build_laakso_uniform({0, 1, 1, 0}), GraphError);
    CHECK_THROWS_AS(build_laakso_uniform({0, 0, 3, 0}), GraphError);

    CHECK(parse_laakso_params("1,2,2,1") == LaaksoParams{1, 2, 2, 1});
    CHECK_THROWS_AS(parse_laakso_params("1,2,2"), SchemaError);
    CHECK_THROWS_AS(parse_laakso_params("a,2,2,1"), SchemaError);
}

TEST_CASE("measures sum to one on random inputs") {
    Engine rng(99);
    for (int trial = 0; trial < 120; ++trial) {
        auto path = build_path(random_weights(rng, 1 + uniform_below(rng, 5)));
        CHECK(total(path.nu) == 1);
        auto arc1 = random_weights(rng, 1 + uniform_below(rng, 4));
        auto arc2 = rescaled(random_weights(rng, 2 + uniform_below(rng, 3)), total(arc1));
        auto cycle = build_cycle(arc1, arc2);
        CHECK(total(cycle.nu) == 1);
        LaaksoParams p{uniform_below(rng, 3), 1 + uniform_below(rng, 3), 2 + uniform_below(rng, 3), uniform_below(rng, 3)};
        auto b1 = random_weights(rng, p.l1);
        LaaksoWeights w{random_weights(rng, p.k), b1, rescaled(random_weights(rng, p.l2), total(b1)),
                        random_weights(rng, p.m)};
        auto l = build_laakso(p, w);
        CHECK(total(l.measured.nu) == 1);
        CHECK(validate_st_graph(l.graph()).passed());
        CHECK(is_normalized_geodesic_st(normalize(l.graph())));
    }
}

TEST_CASE("laakso_from_cycle") {
    auto dia = build_laakso_uniform({0, 2, 2, 0});
    auto sub = laakso_from_cycle(dia.graph(), dia.cycle());
    CHECK(sub.laakso.params == LaaksoParams{0, 2, 2, 0});
    CHECK(sub.edge_map.size() == 4);

    auto l = build_laakso_uniform({1, 2, 2, 1});
    auto whole = laakso_from_cycle(l.graph(), l.cycle());
    CHECK(whole.laakso.params == LaaksoParams{1, 2, 2, 1});
    CHECK(whole.laakso.graph().s() == 0);

    // a 4-edge cycle inside one copy of diamond/diamond
    SlashPower power(dia.measured, 2);
    const auto& g = power.level(2).graph;
    auto d = geodesic_metric(g);
    std::size_t checked = 0;
    for (const auto& c : enumerate_simple_cycles(g, 1000)) {
        auto piece = laakso_from_cycle(g, c);
        const auto& lg = piece.laakso.graph();
        CHECK(lg.edge_count() == piece.edge_map.size());
        CHECK(g.name(piece.vertex_map[lg.s()]) == g.name(g.s()));
        CHECK(piece.vertex_map[lg.t()] == g.t());
        auto dl = geodesic_metric(lg);
        for (VertexId u = 0; u < lg.vertex_count(); ++u) {
            for (VertexId v = 0; v < lg.vertex_count(); ++v) {
                CHECK(dl(u, v) == d(piece.vertex_map[u], piece.vertex_map[v]));
            }
        }
        if (c.size() == 4) {
            CHECK(piece.laakso.params.k + piece.laakso.params.m > 0);
        }
        ++checked;
    }
    CHECK(checked > 4);
    CHECK_THROWS_AS(laakso_from_cycle(dia.graph(), {0, 1, 3}), GraphError);
}

TEST_CASE("find_any_cycle") {
    CHECK_FALSE(find_any_cycle(build_path({1, 1}).graph).has_value());
    auto dia = build_laakso_uniform({0, 2, 2, 0});
    auto c = find_any_cycle(dia.graph());
    REQUIRE(c.has_value());
    CHECK(c->size() == 4);
    CHECK_NOTHROW(check_cycle(dia.graph(), *c));
    SlashPower power(dia.measured, 2);
    auto c2 = find_any_cycle(power.level(2).graph);
    REQUIRE(c2.has_value());
    CHECK((c2->size() == 4 || c2->size() == 8));
    CHECK(c2 == find_any_cycle(power.level(2).graph));
}
