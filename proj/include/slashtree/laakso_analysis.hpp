#pragma once

#include "slashtree/constructions.hpp"
#include "slashtree/limits.hpp"
#include "slashtree/slash.hpp"

#include <cstdint>
#include <functional>
#include <memory>

namespace slashtree {

/// 2l(k+l+m)^(n-1). Requires balanced params and n >= 1.
BigInt max_cycle_edge_count(const LaaksoParams& p, unsigned n);

/// 2^(2l((k+l+m)^(n-1)-1)/(k+l+m-1)). Throws CapExceeded when the exponent
/// exceeds max_exponent bits.
BigInt count_max_cycles(const LaaksoParams& p, unsigned n, std::uint64_t max_exponent = std::uint64_t{1} << 24);

/// Closed-form number of maximal cycles through the edge with this label at
/// level = label length.
BigInt count_max_cycles_through_edge(const SlashLabel& label, const LaaksoGraph& base);

/// A cycle of maximal metric length at some level, with the branch choices
/// (1 or 2 per parent edge) made at each level 2..n.
struct MaxCycle {
    CycleSeq vertices;
    std::vector<EdgeId> edges;
    std::vector<std::vector<int>> choices;
};

/// Visits every maximal cycle at level n of `power` (whose base must be the
/// graph of `base`), in lexicographic order of the choice vectors. Throws
/// CapExceeded when their number exceeds cap.
void for_each_max_cycle(const LaaksoGraph& base, const SlashPower& power, unsigned n, std::size_t cap,
                        const std::function<void(const MaxCycle&)>& visit);

std::vector<MaxCycle> enumerate_max_cycles(const LaaksoGraph& base, const SlashPower& power, unsigned n,
                                           std::size_t cap);

/// Number of enumerated maximal cycles through each edge at level n.
std::vector<BigInt> tally_cycles_through_edges(const LaaksoGraph& base, const SlashPower& power, unsigned n,
                                               std::size_t cap);

/// Picks one edge (a level-n edge id) of a maximal cycle.
using CycleSelector = std::function<EdgeId(const MaxCycle&)>;

CycleSelector first_edge_selector();
CycleSelector smallest_edge_selector();
CycleSelector random_edge_selector(std::uint64_t seed);

/// Sum over maximal cycles C of nu(phi(C)) / (d(phi(C)) |cycles through
/// phi(C)|), with the counts taken from enumeration. Throws GraphError when
/// phi picks an edge off C or one whose first label entry is off the base
/// cycle.
Rational selector_identity_sum(const LaaksoGraph& base, const SlashPower& power, unsigned n, const CycleSelector& phi,
                               std::size_t cap);

/// Balanced generalized Laakso subgraph of L^n0 for a Laakso graph L.
/// Branch "short" is the one with fewer edges; q1 starts on it and q2 on the
/// other. m_* and n_* are the graph lengths of q1 and q2 at levels n0-1 and
/// n0 before the final mixing step; m_mixed is the length of q1.
struct BalancedLaaksoWitness {
    unsigned n0 = 1;
    std::size_t i = 0;
    BigInt m_prev, n_prev, m_n0, n_n0, m_mixed;
    std::shared_ptr<const SlashPower> power;
    PathSeq q1;
    PathSeq q2;
    PathSeq r1;
    PathSeq r2;
    LaaksoSubgraph subgraph;
};

/// The level n0 = 2 + max{j : (k+m+b)^j a <= (k+m+a)^j b} where a < b are
/// the branch edge counts.
unsigned balancing_level(const LaaksoParams& p);

/// Builds and checks the witness; a balanced input yields itself with n0 = 1.
/// L must be normalized. Throws AssertionFailure if a witness invariant fails.
BalancedLaaksoWitness find_balanced_laakso(const LaaksoGraph& l, std::size_t max_edges = Limits{}.max_edges);

/// Lifts a Laakso subgraph of level-1 of `power` to `level` by replacing each
/// edge with the base s-t path `path`.
LaaksoSubgraph lift_laakso(const SlashPower& power, unsigned level, const LaaksoSubgraph& sub, const PathSeq& path);

/// A balanced generalized Laakso subgraph L of G^N whose cycle has the
/// maximal cycle length c0 of G and whose edges all have length <= c0/4.
struct PipelineResult {
    unsigned N = 1;
    Rational c0;
    CycleSeq c0_cycle;
    bool direct = false;  // G itself already qualified
    PathSeq p;            // s-t path of G used to lift c0_cycle
    LaaksoParams l1_params;
    Rational delta;
    unsigned n1 = 0;
    unsigned n0 = 0;
    unsigned n3 = 0;
    LaaksoGraph laakso;
    /// Label in G^N of each edge of `laakso`.
    std::vector<SlashLabel> edge_labels;
};

/// Throws NoCycle when g is a path.
PipelineResult main_theorem_pipeline(const MeasuredGraph& g, const Limits& limits = Limits{});

struct PipelineCheck {
    bool balanced = false;
    bool cycle_length = false;
    bool edge_bound = false;
    bool measure = false;
    bool st_subgraph = false;
    bool label_weights = false;
    bool materialized = false;  // G^N was built and the embedding checked
    bool embedding = false;
    std::string detail;

    bool passed() const {
        return balanced && cycle_length && edge_bound && measure && st_subgraph && label_weights &&
               (!materialized || embedding);
    }
};

/// Re-checks the output conditions. When |E(G)|^N is within the edge cap it
/// also builds G^N, checks that the labels place L as an s-t subgraph with
/// matching weights and metric, and that the measure extended by zero is a
/// probability.
PipelineCheck verify_pipeline(const MeasuredGraph& g, const PipelineResult& r, const Limits& limits = Limits{});

}  // namespace slashtree
