#pragma once

#include "slashtree/constructions.hpp"
#include "slashtree/limits.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace slashtree {

enum class Command { build, power, count_cycles, find_balanced, pipeline, embed_frt, oracle, verify, export_dot };

struct ExperimentConfig {
    Command command = Command::build;
    std::string input;   // graph JSON
    std::string output;  // JSON or DOT artifact; stdout when empty
    std::string report;  // CSV for embed-frt
    std::optional<std::uint64_t> seed;
    std::size_t samples = 64;
    std::size_t seeds = 0;  // verify: 0 keeps the suite default
    unsigned n = 1;
    std::optional<unsigned> level;  // verify: restrict to one n
    std::optional<LaaksoParams> params;
    bool uniform_weights = false;
    std::string cycle;  // build: "w,w,...;w,w,..." arcs
    std::string path;   // build: "w,w,..."
    std::string suite;
    bool json = false;
    Limits limits;
};

/// Exit status: 0 pass, 2 assertion failure, 3 input error, 4 cap exceeded.
/// Errors are reported on err as a single "error: ..." line.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

}  // namespace slashtree
