#pragma once

#include "slashtree/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace slashtree {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

/// Vertex sequence with consecutive pairs joined by edges.
using PathSeq = std::vector<VertexId>;

/// Cycle in open form: x0, x1, ..., x_{k-1}, with the closing edge
/// {x_{k-1}, x0} implied. At least three vertices.
using CycleSeq = std::vector<VertexId>;

/// An oriented edge tail -> head. The orientation is part of the s-t structure.
struct Edge {
    VertexId tail;
    VertexId head;
    Rational weight;

    bool operator==(const Edge&) const = default;
};

struct Incidence {
    VertexId neighbor;
    EdgeId edge;
};

/// Simple weighted graph with distinguished vertices s, t and an orientation
/// per edge. Immutable once built; the constructor rejects loops, parallel
/// edges, non-positive weights and out-of-range ids. Connectivity and the
/// s-t property are checked separately by validate_st_graph.
class StGraph {
public:
    StGraph() = default;
    StGraph(std::vector<std::string> names, std::vector<Edge> edges, VertexId s, VertexId t);

    std::size_t vertex_count() const { return names_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const std::string& name(VertexId v) const { return names_[v]; }
    const std::vector<std::string>& names() const { return names_; }
    const Edge& edge(EdgeId e) const { return edges_[e]; }
    const std::vector<Edge>& edges() const { return edges_; }

    VertexId s() const { return s_; }
    VertexId t() const { return t_; }

    /// Incidences of v sorted by neighbor id.
    std::span<const Incidence> incident(VertexId v) const { return incident_[v]; }
    std::span<const EdgeId> out_edges(VertexId v) const { return out_[v]; }
    std::span<const EdgeId> in_edges(VertexId v) const { return in_[v]; }

    std::optional<EdgeId> find_edge(VertexId u, VertexId v) const;
    std::optional<VertexId> find_vertex(std::string_view name) const;
    VertexId other_end(EdgeId e, VertexId v) const;

    /// Same structure with the weights replaced.
    StGraph with_weights(std::vector<Rational> weights) const;

    bool operator==(const StGraph& other) const {
        return names_ == other.names_ && edges_ == other.edges_ && s_ == other.s_ && t_ == other.t_;
    }

private:
    std::vector<std::string> names_;
    std::vector<Edge> edges_;
    VertexId s_ = 0;
    VertexId t_ = 0;
    std::vector<std::vector<Incidence>> incident_;
    std::vector<std::vector<EdgeId>> out_;
    std::vector<std::vector<EdgeId>> in_;
    std::unordered_map<std::uint64_t, EdgeId> edge_index_;
};

/// Per-edge result of the s-t check.
struct ValidationReport {
    std::vector<bool> edge_on_st_path;
    bool connected = false;

    bool passed() const;
    std::vector<EdgeId> failing_edges() const;
};

/// An edge passes iff it lies on some directed path from s to t.
ValidationReport validate_st_graph(const StGraph& g);

/// Exact all-pairs shortest-path distances.
class GeodesicMetric {
public:
    GeodesicMetric() = default;
    /// Row-major n x n table; must be symmetric with a zero diagonal.
    GeodesicMetric(std::size_t n, std::vector<Rational> table);

    std::size_t size() const { return n_; }
    const Rational& operator()(VertexId u, VertexId v) const { return table_[std::size_t{u} * n_ + v]; }
    const std::vector<Rational>& table() const { return table_; }

    bool operator==(const GeodesicMetric&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<Rational> table_;
};

/// Dijkstra from one source; ties in the queue resolve by smaller vertex id.
/// Unreachable vertices are reported as nullopt.
std::vector<std::optional<Rational>> single_source_distances(const StGraph& g, VertexId source);

/// Throws GraphError when g is disconnected.
GeodesicMetric geodesic_metric(const StGraph& g);

/// Minimum and maximum metric length over directed s-t paths. Throws
/// GraphError when the orientation has a directed cycle or t is unreachable.
std::pair<Rational, Rational> st_path_length_range(const StGraph& g);

/// True iff g validates and every directed s-t path has length exactly 1.
bool is_normalized_geodesic_st(const StGraph& g);

/// Divides every weight by the common s-t path length. Throws
/// NotGeodesicStGraph when s-t path lengths differ.
StGraph normalize(const StGraph& g);

/// Sum of weights along p; a single vertex has length 0. Throws GraphError if
/// p is not a path of g.
Rational path_length(const StGraph& g, const PathSeq& p);

/// Edge ids along consecutive pairs of a vertex walk. Throws GraphError when
/// some pair is not an edge.
std::vector<EdgeId> walk_edges(const StGraph& g, const PathSeq& walk);

/// Exact number of directed s-t paths. Requires an acyclic orientation.
BigInt count_st_paths(const StGraph& g);

/// All directed s-t paths in lexicographic order of vertex sequences. Throws
/// CapExceeded naming the count when it exceeds cap.
std::vector<PathSeq> enumerate_st_paths(const StGraph& g, std::size_t cap);

/// Lexicographically smallest vertex sequence among shortest paths from
/// `from` to `to`.
PathSeq lex_shortest_path(const StGraph& g, VertexId from, VertexId to);

/// Throws GraphError unless c is a cycle of g.
void check_cycle(const StGraph& g, const CycleSeq& c);

/// Sum of weights over the cycle's edges.
Rational cycle_length(const StGraph& g, const CycleSeq& c);

std::vector<EdgeId> cycle_edges(const StGraph& g, const CycleSeq& c);

/// Every simple cycle, each listed once: it starts at its smallest vertex and
/// its second vertex is smaller than its last. Output is sorted
/// lexicographically. Throws CapExceeded above cap.
std::vector<CycleSeq> enumerate_simple_cycles(const StGraph& g, std::size_t cap);

/// Subgraph spanned by an edge subset, with maps back to the parent.
struct Subgraph {
    StGraph graph;
    std::vector<VertexId> to_parent_vertex;
    std::vector<EdgeId> to_parent_edge;
};

/// Keeps parent vertex order, orientation and weights. s and t are parent ids
/// and must be covered by the edge set.
Subgraph edge_subgraph(const StGraph& g, std::span<const EdgeId> edges, VertexId s, VertexId t);

}  // namespace slashtree
