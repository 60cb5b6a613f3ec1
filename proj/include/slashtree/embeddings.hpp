#pragma once

#include "slashtree/constructions.hpp"
#include "slashtree/laakso_analysis.hpp"
#include "slashtree/limits.hpp"
#include "slashtree/slash.hpp"

#include <cstdint>
#include <functional>

namespace slashtree {

/// Weighted tree. Vertices flagged as Steiner are not images of source
/// vertices by construction (the flag is informational).
class GeodesicTree {
public:
    GeodesicTree() = default;
    /// Edge orientation is ignored. Throws GraphError unless the edges form
    /// a spanning tree with positive weights.
    GeodesicTree(std::vector<std::string> names, std::vector<Edge> edges, std::vector<bool> steiner = {});

    std::size_t size() const { return graph_.vertex_count(); }
    const std::string& name(VertexId v) const { return graph_.name(v); }
    const std::vector<Edge>& edges() const { return graph_.edges(); }
    bool is_steiner(VertexId v) const { return steiner_[v]; }
    std::size_t steiner_count() const;
    const Rational& distance(VertexId u, VertexId v) const { return dist_[std::size_t{u} * size() + v]; }
    const StGraph& graph() const { return graph_; }

private:
    StGraph graph_;
    std::vector<bool> steiner_;
    std::vector<Rational> dist_;
};

/// Source vertex id -> tree vertex id.
using TreeMap = std::vector<VertexId>;

/// Sum over edges e of nu(e) d_T(f(e)) / d_G(e). Throws GraphError when nu
/// is not a probability or f is not a total map into the tree.
Rational expected_distortion(const MeasuredGraph& g, const GeodesicMetric& d, const GeodesicTree& t, const TreeMap& f);

struct ExpansiveCheck {
    bool expansive = true;
    /// Pair with the largest shortfall d_X - d_T, smallest pair on ties.
    std::optional<std::pair<VertexId, VertexId>> witness;
};

ExpansiveCheck check_expansive(const GeodesicMetric& d, const GeodesicTree& t, const TreeMap& f);

struct TreeComponent {
    GeodesicTree tree;
    TreeMap map;
    Rational probability;
};

struct StochasticTreeEmbedding {
    std::vector<TreeComponent> components;
};

/// Random hierarchical decompositions: radius factor beta = 1 + k/2^20 and
/// a random center order per sample, tree edges of length 2^(i+1) dmin below
/// level i+1, Steiner chains merged, then each tree scaled so that its
/// smallest ratio d_T/d is exactly 1. Samples have probability 1/samples.
/// Throws GraphError on a zero off-diagonal distance.
StochasticTreeEmbedding frt_embed(const GeodesicMetric& d, std::uint64_t seed, std::size_t samples,
                                  const std::vector<std::string>& names = {});

struct PairStretch {
    VertexId u;
    VertexId v;
    Rational d_x;
    Rational expected_d_t;
    Rational stretch;
};

struct StretchReport {
    Rational distortion;  // max stretch over pairs
    std::pair<VertexId, VertexId> worst{0, 0};
    std::vector<PairStretch> pairs;
};

/// Throws GraphError when a component is not expansive or the
/// probabilities do not sum to 1.
StretchReport stochastic_distortion_of(const GeodesicMetric& d, const StochasticTreeEmbedding& emb);

/// Sum_i p_i times the expected distortion of component i.
Rational mean_expected_distortion(const MeasuredGraph& g, const GeodesicMetric& d, const StochasticTreeEmbedding& emb);

/// Index of the pair u < v among the n(n-1)/2 pairs in row-major order.
std::size_t pair_index(std::size_t n, VertexId u, VertexId v);

/// Pair cost nu(e)/d(e) on graph edges, zero elsewhere: the linear form whose
/// value at d_T is the expected distortion.
std::vector<Rational> distortion_pair_costs(const MeasuredGraph& g, const GeodesicMetric& d);

/// Labeled tree on n vertices from its Pruefer sequence (length n-2).
std::vector<std::pair<VertexId, VertexId>> pruefer_decode(const std::vector<VertexId>& seq, std::size_t n);

struct TreeLpSolution {
    Rational value;
    std::vector<Rational> weights;  // per topology edge
};

/// Minimizes sum over pairs of cost(pair) d_T(pair) over nonnegative edge
/// weights of the given topology subject to d_T >= d on every pair. Solved
/// exactly by simplex on the dual packing problem with Bland's rule; the
/// primal weights are checked for feasibility and optimality before return.
TreeLpSolution solve_tree_lp(const GeodesicMetric& d, const std::vector<std::pair<VertexId, VertexId>>& topology,
                             const std::vector<Rational>& pair_cost);

/// Calls visit for every labeled topology in lexicographic Pruefer order.
void for_each_tree_topology(std::size_t n,
                            const std::function<void(const std::vector<VertexId>&,
                                                     const std::vector<std::pair<VertexId, VertexId>>&)>& visit);

struct OracleResult {
    Rational value;
    std::vector<VertexId> pruefer;
    GeodesicTree tree;
    TreeMap map;
    std::size_t topologies = 0;
    std::size_t pruned = 0;
};

/// Minimum expected distortion over trees on V(g) without Steiner points.
/// Ties go to the smaller Pruefer sequence. Throws GraphError below two
/// vertices and CapExceeded above max_vertices.
OracleResult oracle_min_expected_distortion(const MeasuredGraph& g,
                                            std::size_t max_vertices = Limits{}.max_oracle_vertices);

struct LowerBound {
    Rational steiner_free;  // oracle value
    Rational general;       // oracle value / 8
};

LowerBound lower_bound_c_nu(const MeasuredGraph& g, std::size_t max_vertices = Limits{}.max_oracle_vertices);

struct CycleWitness {
    std::size_t position = 0;  // edge c[position] -> c[position+1]
    VertexId u = 0;
    VertexId v = 0;
    Rational d_t;
    Rational d_c;
    Rational c0;
    Rational bound;              // (c0 - d_C(e)) / 8
    Rational steiner_free_bound;  // c0 - d_C(e)
};

/// For a cycle c of `host` and a map f of V(host) into t that is expansive on
/// the cycle's own metric, returns the cycle edge maximizing
/// d_T(f(e)) / (c0 - d_C(e)), first in cycle order on ties. Throws
/// GraphError when f is not expansive on the cycle and AssertionFailure when
/// the witness misses the (c0 - d_C)/8 bound.
CycleWitness cycle_lower_bound_check(const StGraph& host, const CycleSeq& c, const GeodesicTree& t, const TreeMap& f);

/// Mean over nu_n of min(d_T/d_n, (3/32) c0/d_n) at level n of a slash power
/// of a balanced Laakso graph. Throws GraphError when the branch edges of the
/// base exceed c0/4, c0/4 exceeds 1/2, or f is not expansive.
Rational truncated_distortion_F(const LaaksoGraph& base, const SlashPower& power, unsigned n, const GeodesicTree& t,
                                const TreeMap& f);

struct Theorem41Report {
    Rational value;
    Rational bound;  // (3/128) c0 n
    bool bound_holds = false;
    std::size_t cycles_checked = 0;
    bool witnesses_hold = false;  // every cycle has an edge with d_T >= 3 c0 / 32
    Rational smallest_witness;    // min over cycles of the witness d_T

    bool passed() const { return bound_holds && witnesses_hold; }
};

/// Evaluates the truncated functional against its bound and runs the cycle
/// witness check on every maximal cycle at level n.
Theorem41Report theorem41_assert(const LaaksoGraph& base, const SlashPower& power, unsigned n, const GeodesicTree& t,
                                 const TreeMap& f, std::size_t max_cycles = Limits{}.max_cycles);

}  // namespace slashtree
