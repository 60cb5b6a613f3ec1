#pragma once

#include <cstddef>

namespace slashtree {

/// Size caps shared by constructions and enumerations. Anything above a cap
/// raises CapExceeded instead of running.
struct Limits {
    std::size_t max_edges = 1'000'000;       // materialized graph edges
    std::size_t max_cycles = std::size_t{1} << 20;
    std::size_t max_paths = 1'000'000;       // enumerated s-t paths
    std::size_t max_oracle_vertices = 8;     // Cayley bound n^(n-2) topologies

    /// Defaults overridden by SLASHTREE_MAX_EDGES, SLASHTREE_MAX_CYCLES,
    /// SLASHTREE_MAX_PATHS and SLASHTREE_MAX_ORACLE_VERTICES when set.
    static Limits from_environment();
};

}  // namespace slashtree
