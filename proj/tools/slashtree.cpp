// Command-line front end; see README.md for the commands.
#include "slashtree/cli.hpp"
#include "slashtree/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace slashtree;

int main(int argc, char** argv) {
    CLI::App app{"slashtree: slash powers, Laakso graphs and tree embeddings with exact arithmetic"};
    app.require_subcommand(1);
    ExperimentConfig config;
    std::string params;
    app.add_flag("--json", config.json, "Structured JSON output");

    auto* build = app.add_subcommand("build", "Emit a graph as JSON");
    build->add_option("--laakso", params, "Laakso parameters k,l1,l2,m");
    build->add_flag("--uniform-weights", config.uniform_weights, "Normalized uniform Laakso weights (default: unit)");
    build->add_option("--cycle", config.cycle, "Cycle arcs 'w,w;w,w' from s to t");
    build->add_option("--path", config.path, "Path weights 'w,w,...'");
    build->add_option("--out", config.output, "Output file");

    auto* power = app.add_subcommand("power", "Slash power of a graph");
    power->add_option("--base", config.input, "Base graph JSON")->required();
    power->add_option("--n", config.n, "Exponent")->check(CLI::PositiveNumber);
    power->add_option("--out", config.output, "Output file");

    auto* count = app.add_subcommand("count-cycles", "Closed-form number of maximal cycles");
    count->add_option("--params", params, "Balanced Laakso parameters k,l,l,m")->required();
    count->add_option("--n", config.n, "Level")->check(CLI::PositiveNumber);

    auto* balanced = app.add_subcommand("find-balanced", "Balanced Laakso subgraph of a slash power");
    balanced->add_option("--params", params, "Laakso parameters k,l1,l2,m")->required();
    balanced->add_option("--out", config.output, "Output file");

    auto* pipeline = app.add_subcommand("pipeline", "Balanced Laakso subgraph with short edges in G^N");
    pipeline->add_option("--graph", config.input, "Graph JSON")->required();
    pipeline->add_option("--out", config.output, "Laakso subgraph JSON");

    auto* frt = app.add_subcommand("embed-frt", "Sampled stochastic tree embedding");
    frt->add_option("--graph", config.input, "Graph JSON")->required();
    frt->add_option("--seed", config.seed, "Random seed");
    frt->add_option("--samples", config.samples, "Number of trees")->check(CLI::PositiveNumber);
    frt->add_option("--report", config.report, "CSV report");

    auto* oracle = app.add_subcommand("oracle", "Exact minimum expected distortion over Steiner-free trees");
    oracle->add_option("--graph", config.input, "Graph JSON")->required();

    auto* verify = app.add_subcommand("verify", "Run a property suite");
    verify->add_option("--suite", config.suite, "cor42, prop41, lemma31 or thm41")->required();
    verify->add_option("--params", params, "Restrict to one Laakso base");
    verify->add_option("--n", config.level, "Restrict to one level (cycle size for lemma31)");
    verify->add_option("--seeds", config.seeds, "Number of seeds");
    verify->add_option("--out", config.output, "JSON report file");

    auto* dot = app.add_subcommand("export-dot", "Graph as a DOT digraph");
    dot->add_option("--graph", config.input, "Graph JSON")->required();
    dot->add_option("--out", config.output, "Output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    const std::pair<CLI::App*, Command> commands[] = {
        {build, Command::build},       {power, Command::power},         {count, Command::count_cycles},
        {balanced, Command::find_balanced}, {pipeline, Command::pipeline}, {frt, Command::embed_frt},
        {oracle, Command::oracle},     {verify, Command::verify},       {dot, Command::export_dot}};
    for (const auto& [sub, command] : commands) {
        if (sub->parsed()) config.command = command;
    }
    try {
        config.limits = Limits::from_environment();
        if (!params.empty()) config.params = parse_laakso_params(params);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    }
    return run(config, std::cout, std::cerr);
}
