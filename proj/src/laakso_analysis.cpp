#include "slashtree/laakso_analysis.hpp"

#include "slashtree/errors.hpp"
#include "slashtree/random.hpp"

#include <algorithm>
#include <numeric>

namespace slashtree {

namespace {

void require_balanced(const LaaksoParams& p) {
    p.validate();
    if (!p.balanced()) throw GraphError("maximal-cycle counts need a balanced Laakso graph");
}

unsigned long to_exponent(const BigInt& e, std::uint64_t max_exponent) {
    if (e > BigInt(static_cast<unsigned long>(max_exponent))) {
        throw CapExceeded("exponent " + to_string(e) + " exceeds the cap of " + std::to_string(max_exponent));
    }
    return e.get_ui();
}

void require_matching_power(const LaaksoGraph& base, const SlashPower& power, unsigned n) {
    if (!(power.base().graph == base.graph())) throw GraphError("slash power is not built on this Laakso graph");
    if (n == 0 || n > power.n()) throw GraphError("level " + std::to_string(n) + " is not materialized");
}

PathSeq map_path(const PathSeq& p, const std::vector<VertexId>& map) {
    PathSeq out;
    out.reserve(p.size());
    for (VertexId v : p) out.push_back(map[v]);
    return out;
}

}  // namespace

BigInt max_cycle_edge_count(const LaaksoParams& p, unsigned n) {
    require_balanced(p);
    if (n == 0) throw GraphError("level must be at least 1");
    return BigInt(static_cast<unsigned long>(2 * p.l1)) * ipow(BigInt(static_cast<unsigned long>(p.edge_count() - p.l1)), n - 1);
}

BigInt count_max_cycles(const LaaksoParams& p, unsigned n, std::uint64_t max_exponent) {
    require_balanced(p);
    if (n == 0) throw GraphError("level must be at least 1");
    const BigInt big_k(static_cast<unsigned long>(p.k + p.l1 + p.m));
    BigInt exponent = BigInt(static_cast<unsigned long>(2 * p.l1)) * (ipow(big_k, n - 1) - 1) / (big_k - 1);
    return pow2(to_exponent(exponent, max_exponent));
}

BigInt count_max_cycles_through_edge(const SlashLabel& label, const LaaksoGraph& base) {
    require_balanced(base.params);
    if (label.vertex || label.edges.empty()) throw GraphError("expected an edge label");
    for (EdgeId e : label.edges) {
        if (e >= base.graph().edge_count()) throw GraphError("label entry out of range");
    }
    if (!base.on_cycle(label.edges.front())) return 0;
    const BigInt big_k(static_cast<unsigned long>(base.params.k + base.params.l1 + base.params.m));
    const BigInt two_l(static_cast<unsigned long>(2 * base.params.l1));
    BigInt count = 1;
    for (std::size_t j = 2; j <= label.edges.size(); ++j) {
        BigInt exponent = two_l * ipow(big_k, static_cast<unsigned long>(j - 2));
        if (base.on_cycle(label.edges[j - 1])) exponent -= 1;
        count *= pow2(to_exponent(exponent, std::uint64_t{1} << 24));
    }
    return count;
}

void for_each_max_cycle(const LaaksoGraph& base, const SlashPower& power, unsigned n, std::size_t cap,
                        const std::function<void(const MaxCycle&)>& visit) {
    require_balanced(base.params);
    require_matching_power(base, power, n);
    BigInt total = count_max_cycles(base.params, n);
    if (total > BigInt(static_cast<unsigned long>(cap))) {
        throw CapExceeded(to_string(total) + " maximal cycles exceed the cap of " + std::to_string(cap));
    }
    const PathSeq paths[2] = {base.st_path(1), base.st_path(2)};
    MaxCycle current;
    std::function<void(unsigned, const CycleSeq&)> descend = [&](unsigned level, const CycleSeq& c) {
        if (level == n) {
            current.vertices = c;
            current.edges = cycle_edges(power.level(n).graph, c);
            visit(current);
            return;
        }
        const std::size_t m = c.size();
        std::vector<int> choice(m, 1);
        std::vector<PathSeq> lifts(m);
        const std::uint64_t combos = std::uint64_t{1} << m;
        for (std::uint64_t code = 0; code < combos; ++code) {
            for (std::size_t i = 0; i < m; ++i) {
                choice[i] = ((code >> (m - 1 - i)) & 1) ? 2 : 1;
                lifts[i] = paths[choice[i] - 1];
            }
            current.choices.push_back(choice);
            descend(level + 1, power.lift_cycle(level + 1, c, lifts));
            current.choices.pop_back();
        }
    };
    descend(1, base.cycle());
}

std::vector<MaxCycle> enumerate_max_cycles(const LaaksoGraph& base, const SlashPower& power, unsigned n,
                                           std::size_t cap) {
    std::vector<MaxCycle> out;
    for_each_max_cycle(base, power, n, cap, [&](const MaxCycle& c) { out.push_back(c); });
    return out;
}

std::vector<BigInt> tally_cycles_through_edges(const LaaksoGraph& base, const SlashPower& power, unsigned n,
                                               std::size_t cap) {
    std::vector<BigInt> counts(power.level(n).graph.edge_count(), 0);
    for_each_max_cycle(base, power, n, cap, [&](const MaxCycle& c) {
        for (EdgeId e : c.edges) counts[e] += 1;
    });
    return counts;
}

CycleSelector first_edge_selector() {
    return [](const MaxCycle& c) { return c.edges.front(); };
}

CycleSelector smallest_edge_selector() {
    return [](const MaxCycle& c) { return *std::min_element(c.edges.begin(), c.edges.end()); };
}

CycleSelector random_edge_selector(std::uint64_t seed) {
    auto engine = std::make_shared<Engine>(seed);
    return [engine](const MaxCycle& c) { return c.edges[uniform_below(*engine, c.edges.size())]; };
}

Rational selector_identity_sum(const LaaksoGraph& base, const SlashPower& power, unsigned n, const CycleSelector& phi,
                               std::size_t cap) {
    auto counts = tally_cycles_through_edges(base, power, n, cap);
    const MeasuredGraph& level = power.level(n);
    Rational total(0);
    for_each_max_cycle(base, power, n, cap, [&](const MaxCycle& c) {
        EdgeId e = phi(c);
        if (std::find(c.edges.begin(), c.edges.end(), e) == c.edges.end()) {
            throw GraphError("selector picked an edge that is not on the cycle");
        }
        if (!base.on_cycle(power.edge_label(n, e).edges.front())) {
            throw GraphError("selector picked an edge outside the copies of the base cycle");
        }
        total += level.nu[e] / (level.graph.edge(e).weight * Rational(counts[e]));
    });
    return total;
}

unsigned balancing_level(const LaaksoParams& p) {
    p.validate();
    if (p.balanced()) return 1;
    const BigInt a(static_cast<unsigned long>(std::min(p.l1, p.l2)));
    const BigInt b(static_cast<unsigned long>(std::max(p.l1, p.l2)));
    const BigInt km(static_cast<unsigned long>(p.k + p.m));
    unsigned j = 0;
    while (ipow(km + b, j + 1) * a <= ipow(km + a, j + 1) * b) ++j;
    return j + 2;
}

BalancedLaaksoWitness find_balanced_laakso(const LaaksoGraph& l, std::size_t max_edges) {
    BalancedLaaksoWitness w;
    const auto& p = l.params;
    p.validate();
    if (p.balanced()) {
        w.n0 = 1;
        w.power = std::make_shared<SlashPower>(l.measured, 1, max_edges);
        w.q1 = l.branch_path(1);
        w.q2 = l.branch_path(2);
        w.m_prev = w.n_prev = w.m_n0 = w.n_n0 = w.m_mixed = BigInt(static_cast<unsigned long>(p.l1));
        w.subgraph.laakso = l;
        w.subgraph.vertex_map.resize(l.graph().vertex_count());
        std::iota(w.subgraph.vertex_map.begin(), w.subgraph.vertex_map.end(), 0);
        w.subgraph.edge_map.resize(l.graph().edge_count());
        std::iota(w.subgraph.edge_map.begin(), w.subgraph.edge_map.end(), 0);
        w.r1 = PathSeq(w.subgraph.vertex_map.begin(), w.subgraph.vertex_map.begin() + p.k + 1);
        w.r2 = l.st_path(1);
        w.r2.erase(w.r2.begin(), w.r2.end() - static_cast<std::ptrdiff_t>(p.m + 1));
        return w;
    }

    const int short_branch = p.l1 < p.l2 ? 1 : 2;
    const int long_branch = 3 - short_branch;
    const BigInt a(static_cast<unsigned long>(std::min(p.l1, p.l2)));
    const BigInt b(static_cast<unsigned long>(std::max(p.l1, p.l2)));
    const BigInt km(static_cast<unsigned long>(p.k + p.m));
    auto big_m = [&](unsigned n) -> BigInt { return ipow(km + b, n - 1) * a; };
    auto big_n = [&](unsigned n) -> BigInt { return ipow(km + a, n - 1) * b; };

    w.n0 = balancing_level(p);
    w.m_prev = big_m(w.n0 - 1);
    w.n_prev = big_n(w.n0 - 1);
    w.m_n0 = big_m(w.n0);
    w.n_n0 = big_n(w.n0);
    BigInt numerator = w.n_n0 - (km + a) * w.m_prev;
    if (numerator < 0 || numerator % (b - a) != 0 || numerator / (b - a) > w.m_prev) {
        throw AssertionFailure("no replacement count balances the branches at level " + std::to_string(w.n0));
    }
    w.i = static_cast<std::size_t>(BigInt(numerator / (b - a)).get_ui());
    w.m_mixed = km * w.m_prev + BigInt(static_cast<unsigned long>(w.i)) * b +
                (w.m_prev - BigInt(static_cast<unsigned long>(w.i))) * a;

    auto power = std::make_shared<SlashPower>(l.measured, w.n0, max_edges);
    w.power = power;
    const PathSeq short_path = l.st_path(short_branch);
    const PathSeq long_path = l.st_path(long_branch);

    PathSeq q1 = l.branch_path(short_branch);
    PathSeq q2 = l.branch_path(long_branch);
    for (unsigned level = 2; level < w.n0; ++level) {
        q1 = power->lift_path(level, q1, std::vector<PathSeq>(q1.size() - 1, long_path));
    }
    std::vector<PathSeq> mixed(q1.size() - 1, short_path);
    std::fill(mixed.begin(), mixed.begin() + static_cast<std::ptrdiff_t>(w.i), long_path);
    w.q1 = power->lift_path(w.n0, q1, mixed);
    for (unsigned level = 2; level <= w.n0; ++level) {
        q2 = power->lift_path(level, q2, std::vector<PathSeq>(q2.size() - 1, short_path));
    }
    w.q2 = q2;

    if (BigInt(static_cast<unsigned long>(w.q1.size() - 1)) != w.m_mixed ||
        BigInt(static_cast<unsigned long>(w.q2.size() - 1)) != w.n_n0 || w.m_mixed != w.n_n0) {
        throw AssertionFailure("lifted branch paths do not have the predicted graph lengths");
    }
    const StGraph& top = power->top().graph;
    if (path_length(top, w.q1) != path_length(top, w.q2)) {
        throw AssertionFailure("lifted branch paths differ in metric length");
    }

    CycleSeq cycle = w.q1;
    for (std::size_t j = w.q2.size() - 2; j >= 1; --j) cycle.push_back(w.q2[j]);
    w.subgraph = laakso_from_cycle(top, cycle);
    const LaaksoGraph& found = w.subgraph.laakso;
    const PathSeq through = found.st_path(1);
    w.r1 = map_path(PathSeq(through.begin(), through.begin() + static_cast<std::ptrdiff_t>(found.params.k + 1)),
                    w.subgraph.vertex_map);
    w.r2 = map_path(PathSeq(through.end() - static_cast<std::ptrdiff_t>(found.params.m + 1), through.end()),
                    w.subgraph.vertex_map);

    if (!found.balanced()) throw AssertionFailure("extracted Laakso subgraph is not balanced");
    if (found.cycle_length() != l.cycle_length()) throw AssertionFailure("balanced cycle length differs from the base");
    if (!validate_st_graph(found.graph()).passed()) throw AssertionFailure("balanced subgraph is not an s-t graph");
    if (w.subgraph.vertex_map[found.graph().s()] != top.s() || w.subgraph.vertex_map[found.graph().t()] != top.t()) {
        throw AssertionFailure("balanced subgraph does not share s and t with the power");
    }
    return w;
}

LaaksoSubgraph lift_laakso(const SlashPower& power, unsigned level, const LaaksoSubgraph& sub, const PathSeq& path) {
    CycleSeq parent = map_path(sub.laakso.cycle(), sub.vertex_map);
    CycleSeq lifted = power.lift_cycle(level, parent, std::vector<PathSeq>(parent.size(), path));
    return laakso_from_cycle(power.level(level).graph, lifted);
}

PipelineResult main_theorem_pipeline(const MeasuredGraph& g, const Limits& limits) {
    if (!is_normalized_geodesic_st(g.graph)) throw GraphError("input is not a normalized geodesic s-t graph");
    validate_measure(g);
    auto cycles = enumerate_simple_cycles(g.graph, limits.max_cycles);
    if (cycles.empty()) throw NoCycle("graph is a path; every slash power is a path");

    PipelineResult r;
    r.c0 = cycle_length(g.graph, cycles.front());
    r.c0_cycle = cycles.front();
    for (const auto& c : cycles) {
        Rational len = cycle_length(g.graph, c);
        if (len > r.c0) {
            r.c0 = len;
            r.c0_cycle = c;
        }
    }
    const Rational quarter = r.c0 / 4;
    auto within_quarter = [&](const LaaksoGraph& l) {
        return std::all_of(l.graph().edges().begin(), l.graph().edges().end(),
                           [&](const Edge& e) { return e.weight <= quarter; });
    };

    LaaksoSubgraph direct = laakso_from_cycle(g.graph, r.c0_cycle);
    if (direct.laakso.balanced() && within_quarter(direct.laakso)) {
        r.direct = true;
        r.N = 1;
        r.l1_params = direct.laakso.params;
        r.laakso = direct.laakso;
        for (EdgeId e : direct.edge_map) r.edge_labels.push_back({{e}, std::nullopt});
        return r;
    }

    // step 1: lift the maximal cycle through an s-t path with at least two edges
    auto paths = enumerate_st_paths(g.graph, limits.max_paths);
    auto longer = std::find_if(paths.begin(), paths.end(), [](const PathSeq& p) { return p.size() >= 3; });
    if (longer == paths.end()) throw AssertionFailure("graph with a cycle has no s-t path of two edges");
    r.p = *longer;
    SlashPower square(g, 2, limits.max_edges);
    CycleSeq c1 = square.lift_cycle(2, r.c0_cycle, std::vector<PathSeq>(r.c0_cycle.size(), r.p));
    LaaksoSubgraph l1 = laakso_from_cycle(square.top().graph, c1);
    r.l1_params = l1.laakso.params;

    // step 2: powers of L1 until every edge is at most c0/4
    r.delta = 0;
    for (const auto& e : l1.laakso.graph().edges()) r.delta = std::max(r.delta, e.weight);
    if (r.delta >= 1) throw AssertionFailure("lifted Laakso subgraph has an edge of length 1");
    r.n1 = 1;
    Rational scale = r.delta;
    while (scale > quarter) {
        scale *= r.delta;
        ++r.n1;
    }

    // step 3: balance inside a power of L1, then lift up to level n1 if needed
    BalancedLaaksoWitness w = find_balanced_laakso(l1.laakso, limits.max_edges);
    r.n0 = w.n0;
    r.n3 = std::max(r.n1, r.n0);
    LaaksoSubgraph final_sub = w.subgraph;
    std::shared_ptr<const SlashPower> l1_power = w.power;
    if (r.n3 > w.n0) {
        l1_power = std::make_shared<SlashPower>(l1.laakso.measured, r.n3, limits.max_edges);
        const PathSeq lift_by = enumerate_st_paths(l1.laakso.graph(), limits.max_paths).front();
        for (unsigned level = w.n0 + 1; level <= r.n3; ++level) {
            final_sub = lift_laakso(*l1_power, level, final_sub, lift_by);
        }
    }
    r.N = 2 * r.n3;
    r.laakso = final_sub.laakso;
    for (EdgeId e : final_sub.edge_map) {
        SlashLabel outer = l1_power->edge_label(r.n3, e);
        SlashLabel label;
        for (EdgeId f : outer.edges) {
            SlashLabel inner = square.edge_label(2, l1.edge_map[f]);
            label.edges.insert(label.edges.end(), inner.edges.begin(), inner.edges.end());
        }
        r.edge_labels.push_back(std::move(label));
    }
    return r;
}

PipelineCheck verify_pipeline(const MeasuredGraph& g, const PipelineResult& r, const Limits& limits) {
    PipelineCheck check;
    const LaaksoGraph& l = r.laakso;
    const StGraph& lg = l.graph();
    check.balanced = l.balanced();
    check.cycle_length = l.cycle_length() == r.c0;
    check.edge_bound = std::all_of(lg.edges().begin(), lg.edges().end(),
                                   [&](const Edge& e) { return e.weight <= r.c0 / 4; });
    try {
        validate_measure(l.measured);
        check.measure = true;
    } catch (const GraphError& e) {
        check.detail += std::string(e.what()) + "; ";
    }
    check.st_subgraph = validate_st_graph(lg).passed();
    check.label_weights = r.edge_labels.size() == lg.edge_count();
    for (EdgeId e = 0; check.label_weights && e < lg.edge_count(); ++e) {
        const auto& label = r.edge_labels[e];
        Rational product(1);
        for (EdgeId f : label.edges) {
            if (f >= g.graph.edge_count()) {
                check.label_weights = false;
                break;
            }
            product *= g.graph.edge(f).weight;
        }
        if (label.edges.size() != r.N || product != lg.edge(e).weight) check.label_weights = false;
    }
    if (!check.label_weights) check.detail += "edge labels do not match weights; ";

    std::size_t edges = 1;
    bool fits = true;
    for (unsigned i = 0; i < r.N && fits; ++i) {
        if (edges > limits.max_edges / g.graph.edge_count()) fits = false;
        edges *= g.graph.edge_count();
    }
    if (!fits || !check.label_weights) return check;

    check.materialized = true;
    SlashPower power(g, r.N, limits.max_edges);
    const MeasuredGraph& host = power.top();
    std::vector<std::optional<VertexId>> phi(lg.vertex_count());
    bool ok = true;
    std::vector<Rational> nu(host.graph.edge_count(), Rational(0));
    for (EdgeId e = 0; e < lg.edge_count() && ok; ++e) {
        EdgeId id = power.edge_id(r.edge_labels[e]);
        const auto& he = host.graph.edge(id);
        const auto& le = lg.edge(e);
        for (auto [from, to] : {std::pair{le.tail, he.tail}, std::pair{le.head, he.head}}) {
            if (!phi[from]) phi[from] = to;
            ok = ok && *phi[from] == to;
        }
        ok = ok && he.weight == le.weight && nu[id] == 0;
        nu[id] = l.measured.nu[e];
    }
    std::vector<bool> hit(host.graph.vertex_count(), false);
    for (const auto& v : phi) {
        ok = ok && v && !hit[*v];
        if (v) hit[*v] = true;
    }
    ok = ok && *phi[lg.s()] == host.graph.s() && *phi[lg.t()] == host.graph.t();
    if (!ok) {
        check.detail += "labels do not embed L in G^N; ";
        return check;
    }
    try {
        validate_measure(MeasuredGraph{host.graph, nu, true});
    } catch (const GraphError& e) {
        ok = false;
        check.detail += std::string(e.what()) + "; ";
    }
    GeodesicMetric inside = geodesic_metric(lg);
    for (VertexId u = 0; u < lg.vertex_count() && ok; ++u) {
        auto row = single_source_distances(host.graph, *phi[u]);
        for (VertexId v = 0; v < lg.vertex_count(); ++v) {
            if (*row[*phi[v]] != inside(u, v)) {
                ok = false;
                check.detail += "induced metric differs from the host metric; ";
                break;
            }
        }
    }
    check.embedding = ok;
    return check;
}

}  // namespace slashtree
