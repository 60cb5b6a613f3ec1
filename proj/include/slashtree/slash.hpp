#pragma once

#include "slashtree/constructions.hpp"
#include "slashtree/limits.hpp"

#include <compare>
#include <functional>
#include <string>
#include <vector>

namespace slashtree {

/// Address e1/e2/.../ej of an edge, or e1/.../ej/v of a vertex, in a slash
/// power. Each entry is a base edge id; `vertex` is a base vertex id.
struct SlashLabel {
    std::vector<EdgeId> edges;
    std::optional<VertexId> vertex;

    auto operator<=>(const SlashLabel&) const = default;
    bool operator==(const SlashLabel&) const = default;
};

/// "3/0/1" for edges, "3/0/y1_1" for vertices (base vertex by name).
std::string format_label(const SlashLabel& label, const StGraph& base);

/// Inverse of format_label; `vertex` says whether the last entry is a vertex
/// name. Throws SchemaError.
SlashLabel parse_label(std::string_view text, const StGraph& base, bool vertex);

/// H with every edge e replaced by a copy of G scaled by d_H(e). Vertex ids:
/// V(H) first, then for each edge of H the interior vertices of G in id
/// order. Edge e/f gets id e*|E(G)| + f, weight w_H(e) w_G(f) and measure
/// nu_H(e) nu_G(f). Both inputs must be normalized geodesic s-t graphs.
/// `edge_name` names the copies in vertex names; defaults to the edge id.
MeasuredGraph slash_product(const MeasuredGraph& h, const MeasuredGraph& g, std::size_t max_edges = Limits{}.max_edges,
                            const std::function<std::string(EdgeId)>& edge_name = {});

/// Deletes edge e of h and splices in g with s(g) at the tail of e and t(g)
/// at its head; g's weights are scaled by w_h(e). The new edges take e's
/// place in the edge order.
StGraph replace_edge(const StGraph& h, EdgeId e, const StGraph& g);

/// Materialized powers G, G^2, ..., G^n with G^{j+1} = G^j / G, so the
/// vertex ids of each level are a prefix of the next and edge ids are the
/// mixed-radix values of their labels (first label entry most significant).
class SlashPower {
public:
    /// Throws CapExceeded when |E(G)|^n exceeds max_edges.
    SlashPower(MeasuredGraph base, unsigned n, std::size_t max_edges = Limits{}.max_edges);

    const MeasuredGraph& base() const { return levels_.front(); }
    unsigned n() const { return static_cast<unsigned>(levels_.size()); }
    /// Level j in 1..n.
    const MeasuredGraph& level(unsigned j) const { return levels_.at(j - 1); }
    const MeasuredGraph& top() const { return levels_.back(); }

    SlashLabel edge_label(unsigned level, EdgeId e) const;
    /// Edge id at level = label length.
    EdgeId edge_id(const SlashLabel& label) const;

    /// Lexicographically smallest label with level-1 edge entries.
    SlashLabel vertex_label(unsigned level, VertexId v) const;
    /// Vertex id of any label with at most n-1 edge entries.
    VertexId vertex_id(const SlashLabel& label) const;

    /// Vertex of level `level` (>= 2) that is base vertex u inside the copy
    /// of edge e of level-1.
    VertexId copy_vertex(unsigned level, EdgeId e, VertexId u) const;

    /// Replaces each edge of `parent` (a path at level-1) by the base s-t path
    /// choices[i], traversed in the direction of the walk.
    PathSeq lift_path(unsigned level, const PathSeq& parent, const std::vector<PathSeq>& choices) const;
    CycleSeq lift_cycle(unsigned level, const CycleSeq& parent, const std::vector<PathSeq>& choices) const;

private:
    std::vector<MeasuredGraph> levels_;
    std::vector<VertexId> interior_rank_;  // base vertex -> rank among interior vertices
    std::vector<VertexId> interior_;       // rank -> base vertex
};

/// Distances between vertex labels of any length, computed from the base
/// metric alone by scaling within copies. Agrees with the materialized metric
/// of every power containing both vertices.
class LazyPowerMetric {
public:
    explicit LazyPowerMetric(const MeasuredGraph& base);

    Rational distance(const SlashLabel& a, const SlashLabel& b) const;

private:
    /// Distances from the vertex to the two terminals of its outermost copy,
    /// expressed at the outermost scale.
    std::pair<Rational, Rational> terminal_distances(const SlashLabel& label, std::size_t from) const;

    StGraph base_;
    GeodesicMetric metric_;
};

/// Checks that relabeling (e/f)/g as e/(f/g) is an isomorphism from
/// (G/G)/G to G/(G/G) preserving orientation, s, t, weights, measure and the
/// geodesic metric.
bool associativity_isomorphism_check(const MeasuredGraph& g, std::size_t max_edges = Limits{}.max_edges);

}  // namespace slashtree
