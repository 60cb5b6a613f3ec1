#include "slashtree/cli.hpp"

#include "slashtree/embeddings.hpp"
#include "slashtree/errors.hpp"
#include "slashtree/io.hpp"
#include "slashtree/laakso_analysis.hpp"
#include "slashtree/slash.hpp"
#include "slashtree/suites.hpp"

#include <json.hpp>

#include <ostream>

namespace slashtree {

namespace {

using nlohmann::json;

std::vector<Rational> parse_weight_list(std::string_view text) {
    std::vector<Rational> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        out.push_back(parse_rational(piece));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string params_text(const LaaksoParams& p) {
    return std::to_string(p.k) + "," + std::to_string(p.l1) + "," + std::to_string(p.l2) + "," + std::to_string(p.m);
}

json exact(const Rational& q) { return to_string(q); }

MeasuredGraph load(const ExperimentConfig& c) {
    if (c.input.empty()) throw SchemaError("--graph is required");
    return parse_graph_json(read_file(c.input));
}

// Writes an artifact to --out, or to stdout when no path is given.
void emit(const ExperimentConfig& c, std::ostream& out, const std::string& text) {
    if (c.output.empty()) {
        out << text;
    } else {
        write_file(c.output, text);
    }
}

void print(const ExperimentConfig& c, std::ostream& out, const json& doc, const std::string& text) {
    if (c.json) {
        out << doc.dump(2) << "\n";
    } else {
        out << text;
    }
}

int cmd_build(const ExperimentConfig& c, std::ostream& out) {
    int sources = c.params.has_value() + !c.cycle.empty() + !c.path.empty();
    if (sources != 1) throw SchemaError("build needs exactly one of --laakso, --cycle, --path");
    MeasuredGraph g;
    if (c.params) {
        if (c.uniform_weights) {
            g = build_laakso_uniform(*c.params).measured;
        } else {
            const auto& p = *c.params;
            LaaksoWeights w{std::vector<Rational>(p.k, Rational(1)), std::vector<Rational>(p.l1, Rational(1)),
                            std::vector<Rational>(p.l2, Rational(1)), std::vector<Rational>(p.m, Rational(1))};
            g = build_laakso(p, w).measured;
        }
    } else if (!c.cycle.empty()) {
        auto semi = c.cycle.find(';');
        if (semi == std::string::npos) throw SchemaError("--cycle expects two arcs separated by ';'");
        g = build_cycle(parse_weight_list(std::string_view(c.cycle).substr(0, semi)),
                        parse_weight_list(std::string_view(c.cycle).substr(semi + 1)));
    } else {
        g = build_path(parse_weight_list(c.path));
    }
    emit(c, out, graph_to_json(g));
    return 0;
}

int cmd_power(const ExperimentConfig& c, std::ostream& out) {
    auto g = load(c);
    SlashPower power(g, c.n, c.limits.max_edges);
    const auto& top = power.top();
    std::vector<std::string> labels;
    for (EdgeId e = 0; e < top.graph.edge_count(); ++e) labels.push_back(format_label(power.edge_label(c.n, e), g.graph));
    emit(c, out, graph_to_json(top, labels));
    if (!c.output.empty()) {
        json doc{{"n", c.n}, {"vertices", top.graph.vertex_count()}, {"edges", top.graph.edge_count()},
                 {"normalized", is_normalized_geodesic_st(top.graph)}};
        print(c, out, doc,
              "n=" + std::to_string(c.n) + " vertices=" + std::to_string(top.graph.vertex_count()) +
                  " edges=" + std::to_string(top.graph.edge_count()) + "\n");
    }
    return 0;
}

int cmd_count_cycles(const ExperimentConfig& c, std::ostream& out) {
    if (!c.params) throw SchemaError("--params is required");
    BigInt count = count_max_cycles(*c.params, c.n);
    BigInt edges = max_cycle_edge_count(*c.params, c.n);
    json doc{{"params", params_text(*c.params)}, {"n", c.n}, {"count", to_string(count)},
             {"edges_per_cycle", to_string(edges)}};
    print(c, out, doc, to_string(count) + "\n");
    return 0;
}

int cmd_find_balanced(const ExperimentConfig& c, std::ostream& out) {
    if (!c.params) throw SchemaError("--params is required");
    auto base = build_laakso_uniform(*c.params);
    auto w = find_balanced_laakso(base, c.limits.max_edges);
    const auto& sub = w.subgraph.laakso;
    std::vector<std::string> labels;
    for (EdgeId e : w.subgraph.edge_map) labels.push_back(format_label(w.power->edge_label(w.n0, e), base.graph()));
    json doc{{"params", params_text(*c.params)},
             {"n0", w.n0},
             {"i", w.i},
             {"M_prev", to_string(w.m_prev)},
             {"N_prev", to_string(w.n_prev)},
             {"M_n0", to_string(w.m_n0)},
             {"N_n0", to_string(w.n_n0)},
             {"M_mixed", to_string(w.m_mixed)},
             {"subgraph_params", params_text(sub.params)},
             {"cycle_length", exact(sub.cycle_length())},
             {"base_cycle_length", exact(base.cycle_length())},
             {"subgraph", json::parse(graph_to_json(sub.measured, labels))}};
    emit(c, out, doc.dump(2) + "\n");
    return 0;
}

int cmd_pipeline(const ExperimentConfig& c, std::ostream& out) {
    auto g = load(c);
    auto r = main_theorem_pipeline(g, c.limits);
    auto check = verify_pipeline(g, r, c.limits);
    std::vector<std::string> labels;
    for (const auto& l : r.edge_labels) labels.push_back(format_label(l, g.graph));
    json doc{{"N", r.N},
             {"c0", exact(r.c0)},
             {"direct", r.direct},
             {"n0", r.n0},
             {"n1", r.n1},
             {"n3", r.n3},
             {"delta", exact(r.delta)},
             {"laakso_params", params_text(r.laakso.params)},
             {"checks",
              {{"balanced", check.balanced},
               {"cycle_length", check.cycle_length},
               {"edge_bound", check.edge_bound},
               {"measure", check.measure},
               {"st_subgraph", check.st_subgraph},
               {"label_weights", check.label_weights},
               {"materialized", check.materialized},
               {"embedding", check.embedding}}},
             {"passed", check.passed()},
             {"detail", check.detail}};
    if (!c.output.empty()) write_file(c.output, graph_to_json(r.laakso.measured, labels));
    std::string text = "N=" + std::to_string(r.N) + " c0=" + to_string(r.c0) + (r.direct ? " direct" : "") +
                       " laakso=(" + params_text(r.laakso.params) + ")" + (check.materialized ? " materialized" : "") +
                       (check.passed() ? " passed\n" : " FAILED " + check.detail + "\n");
    print(c, out, doc, text);
    return check.passed() ? 0 : 2;
}

int cmd_embed_frt(const ExperimentConfig& c, std::ostream& out) {
    if (!c.seed) throw SchemaError("--seed is required for embed-frt");
    auto g = load(c);
    auto d = geodesic_metric(g.graph);
    auto emb = frt_embed(d, *c.seed, c.samples, g.graph.names());
    auto rep = stochastic_distortion_of(d, emb);
    Rational mean = mean_expected_distortion(g, d, emb);
    bool ok = rep.distortion >= mean && mean >= 1;
    json doc{{"seed", *c.seed},
             {"samples", c.samples},
             {"stochastic_distortion", exact(rep.distortion)},
             {"stochastic_distortion_decimal", to_double(rep.distortion)},
             {"worst_pair", g.graph.name(rep.worst.first) + ":" + g.graph.name(rep.worst.second)},
             {"mean_expected_distortion", exact(mean)}};
    std::string text = "stochastic_distortion=" + to_string(rep.distortion) + " worst_pair=" +
                       g.graph.name(rep.worst.first) + ":" + g.graph.name(rep.worst.second) +
                       " mean_expected_distortion=" + to_string(mean);
    if (g.graph.vertex_count() <= c.limits.max_oracle_vertices) {
        auto bound = lower_bound_c_nu(g, c.limits.max_oracle_vertices);
        ok = ok && mean >= bound.general;
        doc["oracle"] = exact(bound.steiner_free);
        doc["oracle_over_8"] = exact(bound.general);
        doc["mean_at_least_oracle"] = mean >= bound.steiner_free;
        text += " oracle=" + to_string(bound.steiner_free) + " oracle/8=" + to_string(bound.general);
    }
    doc["passed"] = ok;
    text += ok ? " passed\n" : " FAILED\n";
    if (!c.report.empty()) write_file(c.report, stretch_csv(rep, g.graph.names()));
    print(c, out, doc, text);
    return ok ? 0 : 2;
}

int cmd_oracle(const ExperimentConfig& c, std::ostream& out) {
    auto g = load(c);
    auto r = oracle_min_expected_distortion(g, c.limits.max_oracle_vertices);
    json edges = json::array();
    std::string tree;
    for (const auto& e : r.tree.edges()) {
        edges.push_back({r.tree.name(e.tail), r.tree.name(e.head), to_string(e.weight)});
        tree += " " + r.tree.name(e.tail) + "-" + r.tree.name(e.head) + ":" + to_string(e.weight);
    }
    json doc{{"value", exact(r.value)},     {"value_over_8", exact(r.value / 8)}, {"pruefer", r.pruefer},
             {"topologies", r.topologies}, {"pruned", r.pruned},                {"tree", edges}};
    print(c, out, doc,
          "value=" + to_string(r.value) + " value/8=" + to_string(Rational(r.value / 8)) +
              " topologies=" + std::to_string(r.topologies) + " tree" + tree + "\n");
    return 0;
}

int cmd_verify(const ExperimentConfig& c, std::ostream& out) {
    SuiteOptions opt;
    opt.limits = c.limits;
    opt.seeds = c.seeds;
    if (c.params) opt.bases = {*c.params};
    if (c.level) opt.levels = {*c.level};
    SuiteReport report;
    if (c.suite == "cor42") {
        report = run_cor42_suite(opt);
    } else if (c.suite == "prop41") {
        report = run_prop41_suite(opt);
    } else if (c.suite == "lemma31") {
        report = run_lemma31_suite(opt);
    } else if (c.suite == "thm41") {
        report = run_thm41_suite(opt);
    } else {
        throw SchemaError("unknown suite '" + c.suite + "'");
    }
    if (!c.output.empty()) write_file(c.output, report_json(report));
    out << (c.json ? report_json(report) : report_text(report));
    return report.passed() ? 0 : 2;
}

int cmd_export_dot(const ExperimentConfig& c, std::ostream& out) {
    emit(c, out, export_dot(load(c).graph));
    return 0;
}

}  // namespace

int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
    try {
        switch (config.command) {
            case Command::build: return cmd_build(config, out);
            case Command::power: return cmd_power(config, out);
            case Command::count_cycles: return cmd_count_cycles(config, out);
            case Command::find_balanced: return cmd_find_balanced(config, out);
            case Command::pipeline: return cmd_pipeline(config, out);
            case Command::embed_frt: return cmd_embed_frt(config, out);
            case Command::oracle: return cmd_oracle(config, out);
            case Command::verify: return cmd_verify(config, out);
            case Command::export_dot: return cmd_export_dot(config, out);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.exit_code();
    }
    return 0;
}

}  // namespace slashtree
