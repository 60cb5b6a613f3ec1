#include "slashtree/cli.hpp"
#include "slashtree/errors.hpp"
#include "slashtree/io.hpp"
#include "slashtree/slash.hpp"
#include "slashtree/suites.hpp"

#include <doctest.h>

#include <sstream>

using namespace slashtree;

namespace {

std::vector<MeasuredGraph> fixtures() {
    std::vector<MeasuredGraph> out{build_path({1, 2, 1}), build_cycle({1, 1, 1}, {3}),
                                   build_laakso_uniform({0, 2, 2, 0}).measured,
                                   build_laakso_uniform({1, 2, 2, 1}).measured,
                                   build_laakso_uniform({2, 3, 2, 1}).measured};
    out.push_back(SlashPower(out[2], 2).top());
    auto restricted = out[2];
    restricted.nu = {Rational(1, 2), Rational(1, 2), Rational(0), Rational(0)};
    restricted.restricted = true;
    out.push_back(restricted);
    return out;
}

}  // namespace

TEST_CASE("JSON round trip") {
    for (const auto& g : fixtures()) {
        auto text = graph_to_json(g);
        auto back = parse_graph_json(text);
        CHECK(back.graph == g.graph);
        CHECK(back.nu == g.nu);
        CHECK(back.restricted == g.restricted);
        CHECK(graph_to_json(back) == text);
    }
}

TEST_CASE("JSON schema handling") {
    const std::string plain = R"({"vertices":["s","a","t"],"edges":[["s","a","1/2"],["a","t","1/2"]],"s":"s","t":"t"})";
    auto g = parse_graph_json(plain);
    CHECK(g.graph.edge(0).tail == 0);
    CHECK(g.nu == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});

    const std::string flipped =
        R"({"vertices":["s","a","t"],"edges":[["a","s","1/3"],["a","t","2/3"]],"s":"s","t":"t","orientation":[["s","a"],["a","t"]]})";
    auto f = parse_graph_json(flipped);
    CHECK(f.graph.edge(0).tail == 0);
    CHECK(f.graph.edge(0).head == 1);
    CHECK(f.nu == std::vector<Rational>{Rational(1, 3), Rational(2, 3)});

    CHECK_THROWS_AS(parse_graph_json("{bad"), SchemaError);
    CHECK_THROWS_AS(parse_graph_json("[]"), SchemaError);
    CHECK_THROWS_AS(parse_graph_json(R"({"vertices":["s","t"],"edges":[["s","t",0.5]],"s":"s","t":"t"})"), SchemaError);
    CHECK_THROWS_AS(parse_graph_json(R"({"vertices":["s","t"],"edges":[["s","x","1"]],"s":"s","t":"t"})"), SchemaError);
    CHECK_THROWS_AS(parse_graph_json(R"({"vertices":["s","t"],"edges":[["s","t","1"]],"s":"s"})"), SchemaError);
    CHECK_THROWS_AS(parse_graph_json(R"({"vertices":["s","t"],"edges":[["s","t","1/0"]],"s":"s","t":"t"})"), SchemaError);
    CHECK_THROWS_AS(parse_graph_json(R"({"vertices":["s","t"],"edges":[["s","t","1"]],"s":"s","t":"t","extra":1})"),
                    SchemaError);
    CHECK_THROWS_AS(parse_graph_json(R"({"vertices":["s","t"],"edges":[["s","t","1"]],"s":"s","t":"t","nu":["1/2"]})"),
                    GraphError);
    // edge a -> s lies on no s-t path
    CHECK_THROWS_AS(
        parse_graph_json(R"({"vertices":["s","a","t"],"edges":[["s","t","1"],["a","s","1"],["a","t","1"]],"s":"s","t":"t"})"),
        GraphError);
}

TEST_CASE("DOT export") {
    auto single = export_dot(build_path({1}).graph);
    CHECK(single.find("digraph") == 0);
    CHECK(single.find("\"x0\" -> \"x1\" [label=\"1/1\"]") != std::string::npos);
    auto count = [](const std::string& text, const std::string& needle) {
        std::size_t n = 0;
        for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
        return n;
    };
    auto dia = build_laakso_uniform({0, 2, 2, 0}).measured;
    auto dot = export_dot(dia.graph);
    CHECK(count(dot, " -> ") == 4);
    CHECK(count(dot, ";\n") == 8);
    auto dot2 = export_dot(SlashPower(dia, 2).top().graph);
    CHECK(count(dot2, " -> ") == 16);
    CHECK(count(dot2, ";\n") == 28);
}

TEST_CASE("stretch CSV") {
    auto dia = build_laakso_uniform({0, 2, 2, 0}).measured;
    auto d = geodesic_metric(dia.graph);
    auto rep = stochastic_distortion_of(d, frt_embed(d, 3, 8));
    auto csv = stretch_csv(rep, dia.graph.names());
    CHECK(csv.rfind("pair,d_X,E[d_T],stretch\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
}

TEST_CASE("suite reports") {
    SuiteOptions opt;
    opt.seeds = 3;
    auto r = run_cor42_suite(opt);
    CHECK(r.passed());
    CHECK(report_text(r).find("first=1/2") != std::string::npos);
    CHECK(report_json(r).find("\"exact\": \"1/2\"") != std::string::npos);
    auto prop = run_prop41_suite();
    CHECK(prop.passed());
}

TEST_CASE("run() exit codes") {
    std::ostringstream out, err;
    ExperimentConfig count;
    count.command = Command::count_cycles;
    count.params = LaaksoParams{1, 2, 2, 1};
    count.n = 2;
    CHECK(run(count, out, err) == 0);
    CHECK(out.str() == "16\n");

    ExperimentConfig missing;
    missing.command = Command::oracle;
    missing.input = "/nonexistent/graph.json";
    CHECK(run(missing, out, err) == 3);

    ExperimentConfig unseeded;
    unseeded.command = Command::embed_frt;
    unseeded.input = "/nonexistent/graph.json";
    CHECK(run(unseeded, out, err) == 3);

    ExperimentConfig capped;
    capped.command = Command::count_cycles;
    capped.params = LaaksoParams{0, 2, 2, 0};
    capped.n = 30;
    CHECK(run(capped, out, err) == 4);

    ExperimentConfig suite;
    suite.command = Command::verify;
    suite.suite = "cor42";
    suite.params = LaaksoParams{0, 2, 2, 0};
    suite.level = 2;
    suite.seeds = 2;
    std::ostringstream report;
    CHECK(run(suite, report, err) == 0);
    CHECK(report.str().find("1/2") != std::string::npos);
}
