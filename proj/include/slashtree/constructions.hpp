#pragma once

#include "slashtree/graph.hpp"

#include <optional>
#include <vector>

namespace slashtree {

/// A geodesic s-t graph with a probability measure on its edges, indexed by
/// edge id. `restricted` allows zero entries (a measure supported on a
/// subgraph); otherwise every entry must be positive.
struct MeasuredGraph {
    StGraph graph;
    std::vector<Rational> nu;
    bool restricted = false;
};

/// Throws GraphError unless nu has one entry per edge, sums to exactly 1 and
/// obeys the positivity rule above.
void validate_measure(const MeasuredGraph& g);

/// Branch 1 has l1 edges and branch 2 has l2. Either branch may be the longer
/// one.
struct LaaksoParams {
    std::size_t k = 0;
    std::size_t l1 = 2;
    std::size_t l2 = 2;
    std::size_t m = 0;

    /// Throws GraphError unless min(l1, l2) >= 1 and l1 + l2 >= 3.
    void validate() const;
    bool balanced() const { return l1 == l2; }
    std::size_t edge_count() const { return k + l1 + l2 + m; }
    std::size_t vertex_count() const { return k + l1 + l2 + m; }

    bool operator==(const LaaksoParams&) const = default;
};

/// Parses "k,l1,l2,m". Throws SchemaError on malformed text.
LaaksoParams parse_laakso_params(std::string_view text);

/// Per-segment weights, each listed in s-to-t order.
struct LaaksoWeights {
    std::vector<Rational> stem;
    std::vector<Rational> branch1;
    std::vector<Rational> branch2;
    std::vector<Rational> tail;

    /// Normalized weights: stem, tail and branch 1 edges get 1/(k+m+l1);
    /// branch 2 edges get l1/(l2(k+m+l1)).
    static LaaksoWeights uniform(const LaaksoParams& p);
};

/// A (k,l1,l2,m)-Laakso graph. Vertices are x0..xk, y1_1..y1_{l1-1},
/// y2_1..y2_{l2-1}, z0..zm in that id order (xk and z0 are the junctions);
/// edges are stem, branch 1, branch 2, tail, each in s-to-t order and
/// oriented towards t.
struct LaaksoGraph {
    LaaksoParams params;
    MeasuredGraph measured;
    std::vector<EdgeId> stem;
    std::vector<EdgeId> branch1;
    std::vector<EdgeId> branch2;
    std::vector<EdgeId> tail;
    VertexId entry = 0;  // xk
    VertexId exit = 0;   // z0

    const StGraph& graph() const { return measured.graph; }
    bool balanced() const { return params.balanced(); }

    /// Metric length of the cycle formed by the two branches.
    Rational cycle_length() const;
    /// The cycle entry, branch 1 ..., exit, branch 2 reversed.
    CycleSeq cycle() const;
    /// Vertex sequence of branch sigma (1 or 2) from entry to exit.
    PathSeq branch_path(int sigma) const;
    /// The s-t path through branch sigma.
    PathSeq st_path(int sigma) const;
    bool on_cycle(EdgeId e) const;
};

/// Path x0..xk with nu(e) = w(e)/sum(w). Weights are kept as given.
MeasuredGraph build_path(const std::vector<Rational>& weights);

/// Cycle with s = x0 and t = x_{|arc1|}. Both arcs are listed from s to t.
/// Edges are stored arc 1 then arc 2; nu(e) = w(e)/(2 d(s,t)).
/// Throws NoBalancedSplit when the arc sums differ.
MeasuredGraph build_cycle(const std::vector<Rational>& arc1, const std::vector<Rational>& arc2);

/// Throws GraphError when the branch sums differ or a segment has the wrong
/// length.
LaaksoGraph build_laakso(const LaaksoParams& p, const LaaksoWeights& w);

inline LaaksoGraph build_laakso_uniform(const LaaksoParams& p) {
    return build_laakso(p, LaaksoWeights::uniform(p));
}

/// Generalized Laakso subgraph of a host graph. The Laakso graph uses the
/// standard vertex names; the maps send its ids to host ids.
struct LaaksoSubgraph {
    LaaksoGraph laakso;
    std::vector<VertexId> vertex_map;
    std::vector<EdgeId> edge_map;
};

/// Extends cycle c of the geodesic s-t graph g by shortest paths from s to the
/// cycle vertex nearest s and from the vertex nearest t to t. Ties pick the
/// smaller vertex id; attachment paths are lexicographically smallest among
/// shortest paths. The longer branch (by edge count) becomes branch 1; equal
/// branches are ordered by their first vertex after the entry.
LaaksoSubgraph laakso_from_cycle(const StGraph& g, const CycleSeq& c);

/// First cycle closed by a depth-first search from vertex 0 visiting
/// neighbors in id order; nullopt iff g is a forest.
std::optional<CycleSeq> find_any_cycle(const StGraph& g);

}  // namespace slashtree
