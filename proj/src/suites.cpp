#include "slashtree/suites.hpp"

#include "slashtree/embeddings.hpp"
#include "slashtree/errors.hpp"
#include "slashtree/laakso_analysis.hpp"
#include "slashtree/slash.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <numeric>

namespace slashtree {

namespace {

const std::vector<LaaksoParams> default_bases{{0, 2, 2, 0}, {1, 2, 2, 1}};

std::string graph_id(const LaaksoParams& p) {
    return "laakso(" + std::to_string(p.k) + "," + std::to_string(p.l1) + "," + std::to_string(p.l2) + "," +
           std::to_string(p.m) + ")";
}

template <class T>
std::vector<T> or_default(const std::vector<T>& given, std::vector<T> fallback) {
    return given.empty() ? fallback : given;
}

Rational big(const BigInt& z) { return Rational(z); }

}  // namespace

bool SuiteReport::passed() const {
    return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.passed; });
}

std::string report_json(const SuiteReport& r) {
    nlohmann::json doc;
    doc["suite"] = r.suite;
    doc["passed"] = r.passed();
    doc["rows"] = nlohmann::json::array();
    for (const auto& row : r.rows) {
        nlohmann::json values = nlohmann::json::array();
        for (const auto& [name, q] : row.values) {
            values.push_back({{"name", name}, {"exact", to_string(q)}, {"decimal", to_double(q)}});
        }
        doc["rows"].push_back({{"experiment", row.experiment},
                               {"graph", row.graph},
                               {"n", row.n},
                               {"values", values},
                               {"passed", row.passed},
                               {"note", row.note}});
    }
    return doc.dump(2) + "\n";
}

std::string report_text(const SuiteReport& r) {
    std::string out;
    for (const auto& row : r.rows) {
        out += row.passed ? "[PASS] " : "[FAIL] ";
        out += r.suite + " " + row.experiment + " " + row.graph + " n=" + std::to_string(row.n);
        for (const auto& [name, q] : row.values) {
            char decimal[32];
            std::snprintf(decimal, sizeof decimal, "%.6g", to_double(q));
            out += " " + name + "=" + to_string(q) + " (" + decimal + ")";
        }
        if (!row.note.empty()) out += "  # " + row.note;
        out += "\n";
    }
    out += r.suite + (r.passed() ? ": passed\n" : ": FAILED\n");
    return out;
}

MeasuredGraph unit_cycle_graph(std::size_t n) {
    if (n < 3) throw GraphError("a cycle needs at least three vertices");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
    const auto t = static_cast<VertexId>(n / 2);
    std::vector<Edge> edges;
    for (VertexId i = 0; i < t; ++i) edges.push_back({i, i + 1, Rational(1)});
    for (auto i = t; i < n; ++i) edges.push_back({static_cast<VertexId>((i + 1) % n), i, Rational(1)});
    MeasuredGraph g{StGraph(std::move(names), std::move(edges), 0, t), std::vector<Rational>(n, Rational(1, static_cast<unsigned long>(n)))};
    for (auto& x : g.nu) x.canonicalize();
    return g;
}

SuiteReport run_cor42_suite(const SuiteOptions& opt) {
    SuiteReport report{"cor42", {}};
    const std::size_t seeds = opt.seeds ? opt.seeds : 50;
    for (const auto& p : or_default(opt.bases, default_bases)) {
        auto base = build_laakso_uniform(p);
        if (!base.balanced()) throw GraphError(graph_id(p) + " is not balanced");
        for (unsigned n : or_default(opt.levels, {1u, 2u})) {
            SlashPower power(base.measured, n, opt.limits.max_edges);
            const Rational half(1, 2);
            ReportRow row{"selector_identity", graph_id(p), n, {}, true, ""};
            Rational first = selector_identity_sum(base, power, n, first_edge_selector(), opt.limits.max_cycles);
            Rational smallest = selector_identity_sum(base, power, n, smallest_edge_selector(), opt.limits.max_cycles);
            Rational lo = first, hi = first;
            std::size_t exact = (first == half) + (smallest == half);
            for (std::size_t seed = 0; seed < seeds; ++seed) {
                Rational s = selector_identity_sum(base, power, n, random_edge_selector(seed), opt.limits.max_cycles);
                lo = std::min(lo, s);
                hi = std::max(hi, s);
                exact += (s == half);
            }
            lo = std::min(lo, smallest);
            hi = std::max(hi, smallest);
            row.values = {{"first", first}, {"smallest", smallest}, {"min", lo}, {"max", hi}};
            row.passed = exact == seeds + 2;
            row.note = std::to_string(exact) + "/" + std::to_string(seeds + 2) + " selectors sum to 1/2";
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

SuiteReport run_prop41_suite(const SuiteOptions& opt) {
    SuiteReport report{"prop41", {}};
    for (const auto& p : or_default(opt.bases, default_bases)) {
        auto base = build_laakso_uniform(p);
        auto levels = or_default(opt.levels, {1u, 2u});
        SlashPower power(base.measured, *std::max_element(levels.begin(), levels.end()), opt.limits.max_edges);
        for (unsigned n : levels) {
            auto cycles = enumerate_max_cycles(base, power, n, opt.limits.max_cycles);
            BigInt closed = count_max_cycles(p, n);
            BigInt closed_edges = max_cycle_edge_count(p, n);
            bool lengths_ok = std::all_of(cycles.begin(), cycles.end(),
                                          [&](const MaxCycle& c) { return BigInt(c.edges.size()) == closed_edges; });
            ReportRow counts{"cycle_count", graph_id(p), n, {}, false, ""};
            counts.values = {{"closed_form", big(closed)},
                             {"enumerated", Rational(static_cast<unsigned long>(cycles.size()))},
                             {"edges_per_cycle", big(closed_edges)}};
            counts.passed = closed == BigInt(static_cast<unsigned long>(cycles.size())) && lengths_ok;
            if (!lengths_ok) counts.note = "some enumerated cycle has a different edge count";
            report.rows.push_back(std::move(counts));

            const auto& graph = power.level(n).graph;
            auto tally = tally_cycles_through_edges(base, power, n, opt.limits.max_cycles);
            std::size_t mismatches = 0;
            // classes by label: first entry off the base cycle; first on and
            // second off; first and second on
            std::vector<std::vector<BigInt>> by_class(3);
            for (EdgeId e = 0; e < graph.edge_count(); ++e) {
                auto label = power.edge_label(n, e);
                if (count_max_cycles_through_edge(label, base) != tally[e]) ++mismatches;
                if (n == 2) {
                    int cls = !base.on_cycle(label.edges[0]) ? 0 : (!base.on_cycle(label.edges[1]) ? 1 : 2);
                    by_class[cls].push_back(tally[e]);
                }
            }
            ReportRow per_edge{"per_edge_count", graph_id(p), n, {}, mismatches == 0, ""};
            per_edge.values = {{"edges", Rational(static_cast<unsigned long>(graph.edge_count()))},
                               {"mismatches", Rational(static_cast<unsigned long>(mismatches))}};
            report.rows.push_back(std::move(per_edge));

            if (n == 2 && p == LaaksoParams{1, 2, 2, 1}) {
                const BigInt expected[3] = {0, 16, 8};
                ReportRow fig{"edge_classes", graph_id(p), n, {}, true, "classes: off-cycle, cycle/off-cycle, cycle/cycle"};
                for (int cls = 0; cls < 3; ++cls) {
                    const auto& v = by_class[cls];
                    bool uniform = !v.empty() && std::all_of(v.begin(), v.end(), [&](const BigInt& x) { return x == v[0]; });
                    fig.passed = fig.passed && uniform && v[0] == expected[cls];
                    fig.values.push_back({"class" + std::to_string(cls), v.empty() ? Rational(-1) : big(v[0])});
                }
                report.rows.push_back(std::move(fig));
            }
        }
    }
    return report;
}

SuiteReport run_lemma31_suite(const SuiteOptions& opt) {
    SuiteReport report{"lemma31", {}};
    for (unsigned size : or_default(opt.levels, {4u, 5u, 6u})) {
        if (size > opt.limits.max_oracle_vertices) {
            throw CapExceeded("lemma31 limited to " + std::to_string(opt.limits.max_oracle_vertices) + " vertices");
        }
        auto g = unit_cycle_graph(size);
        auto d = geodesic_metric(g.graph);
        auto cost = distortion_pair_costs(g, d);
        CycleSeq cycle(size);
        std::iota(cycle.begin(), cycle.end(), VertexId{0});
        TreeMap identity(cycle.begin(), cycle.end());
        std::size_t topologies = 0, failures = 0, steiner_free = 0;
        Rational min_ratio = -1;
        for_each_tree_topology(size, [&](const std::vector<VertexId>&,
                                         const std::vector<std::pair<VertexId, VertexId>>& edges) {
            ++topologies;
            auto lp = solve_tree_lp(d, edges, cost);
            std::vector<Edge> tree_edges;
            for (std::size_t a = 0; a < edges.size(); ++a) {
                tree_edges.push_back({edges[a].first, edges[a].second, lp.weights[a]});
            }
            GeodesicTree tree(g.graph.names(), std::move(tree_edges));
            try {
                auto w = cycle_lower_bound_check(g.graph, cycle, tree, identity);
                Rational ratio = w.d_t / w.steiner_free_bound;
                if (min_ratio < 0 || ratio < min_ratio) min_ratio = ratio;
                steiner_free += ratio >= 1;
            } catch (const AssertionFailure&) {
                ++failures;
            }
        });
        ReportRow row{"cycle_witness", "unit_cycle(" + std::to_string(size) + ")", size, {}, failures == 0, ""};
        row.values = {{"topologies", Rational(static_cast<unsigned long>(topologies))},
                      {"failures", Rational(static_cast<unsigned long>(failures))},
                      {"min_ratio", min_ratio},
                      {"steiner_free_holds", Rational(static_cast<unsigned long>(steiner_free))}};
        row.note = "min_ratio is min over trees of d_T/(c0-d_C) at the witness; the bound needs 1/8";
        report.rows.push_back(std::move(row));
    }
    return report;
}

SuiteReport run_thm41_suite(const SuiteOptions& opt) {
    SuiteReport report{"thm41", {}};
    const std::size_t seeds = opt.seeds ? opt.seeds : 100;
    auto levels = or_default(opt.levels, {1u, 2u});
    for (const auto& p : or_default(opt.bases, default_bases)) {
        auto base = build_laakso_uniform(p);
        SlashPower power(base.measured, *std::max_element(levels.begin(), levels.end()), opt.limits.max_edges);
        for (unsigned n : levels) {
            auto record = [&](const std::string& experiment, const std::vector<Theorem41Report>& runs) {
                ReportRow row{experiment, graph_id(p), n, {}, true, ""};
                Rational min_value = runs.front().value, min_witness = runs.front().smallest_witness;
                std::size_t cycles = 0, failed = 0;
                for (const auto& r : runs) {
                    min_value = std::min(min_value, r.value);
                    min_witness = std::min(min_witness, r.smallest_witness);
                    cycles += r.cycles_checked;
                    failed += !r.passed();
                }
                row.passed = failed == 0;
                row.values = {{"min_F", min_value},
                              {"bound", runs.front().bound},
                              {"min_witness_dT", min_witness},
                              {"witness_bound", Rational(3, 32) * base.cycle_length()},
                              {"trees", Rational(static_cast<unsigned long>(runs.size()))},
                              {"cycles_checked", Rational(static_cast<unsigned long>(cycles))}};
                if (failed) row.note = std::to_string(failed) + " trees failed";
                report.rows.push_back(std::move(row));
            };
            if (n == 1) {
                auto oracle = oracle_min_expected_distortion(base.measured, opt.limits.max_oracle_vertices);
                record("oracle_tree",
                       {theorem41_assert(base, power, n, oracle.tree, oracle.map, opt.limits.max_cycles)});
            }
            auto d = geodesic_metric(power.level(n).graph);
            std::vector<Theorem41Report> runs;
            for (std::size_t seed = 0; seed < seeds; ++seed) {
                auto emb = frt_embed(d, seed, 1);
                const auto& c = emb.components.front();
                runs.push_back(theorem41_assert(base, power, n, c.tree, c.map, opt.limits.max_cycles));
            }
            record("frt_trees", runs);
        }
    }
    return report;
}

}  // namespace slashtree
