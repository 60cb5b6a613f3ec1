#pragma once

#include "slashtree/constructions.hpp"
#include "slashtree/embeddings.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace slashtree {

/// Graph document:
///   {"vertices": [names], "edges": [[u, v, "num/den"], ...], "s": name,
///    "t": name, "orientation": [[u, v], ...], "nu": ["num/den", ...],
///    "restricted": bool, "edge_labels": [...]}
/// Endpoints are vertex names. "orientation" lists each edge once as
/// [tail, head]; when absent every edge is oriented as written. "nu" is one
/// entry per edge; when absent the measure is proportional to weight.
/// "edge_labels" is accepted and ignored. Throws SchemaError on malformed
/// documents and GraphError when the result is not a measured s-t graph.
MeasuredGraph parse_graph_json(std::string_view text);

/// Inverse of parse_graph_json; edges written as [tail, head, w] with a
/// matching orientation list.
std::string graph_to_json(const MeasuredGraph& g, const std::vector<std::string>& edge_labels = {});

/// Throws Error when the file cannot be read.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view text);

/// DOT digraph with arcs tail -> head labelled by "num/den" weights.
std::string export_dot(const StGraph& g);

/// Columns pair,d_X,E[d_T],stretch with exact rationals; pair is "u:v" by
/// vertex name.
std::string stretch_csv(const StretchReport& r, const std::vector<std::string>& names);

}  // namespace slashtree
