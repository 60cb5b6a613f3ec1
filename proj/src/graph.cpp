#include "slashtree/graph.hpp"

#include "slashtree/errors.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace slashtree {

namespace {

std::uint64_t pair_key(VertexId u, VertexId v) {
    if (u > v) std::swap(u, v);
    return (std::uint64_t{u} << 32) | v;
}

/// Topological order of the orientation, or nullopt when it has a directed cycle.
std::optional<std::vector<VertexId>> topological_order(const StGraph& g) {
    std::vector<std::size_t> indegree(g.vertex_count(), 0);
    for (const auto& e : g.edges()) ++indegree[e.head];
    // min-heap keeps the order deterministic
    std::priority_queue<VertexId, std::vector<VertexId>, std::greater<>> ready;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (indegree[v] == 0) ready.push(v);
    }
    std::vector<VertexId> order;
    order.reserve(g.vertex_count());
    while (!ready.empty()) {
        VertexId v = ready.top();
        ready.pop();
        order.push_back(v);
        for (EdgeId e : g.out_edges(v)) {
            if (--indegree[g.edge(e).head] == 0) ready.push(g.edge(e).head);
        }
    }
    if (order.size() != g.vertex_count()) return std::nullopt;
    return order;
}

std::vector<bool> forward_reach(const StGraph& g, VertexId from) {
    std::vector<bool> seen(g.vertex_count(), false);
    std::vector<VertexId> stack{from};
    seen[from] = true;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        for (EdgeId e : g.out_edges(v)) {
            VertexId w = g.edge(e).head;
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    return seen;
}

std::vector<bool> backward_reach(const StGraph& g, VertexId to) {
    std::vector<bool> seen(g.vertex_count(), false);
    std::vector<VertexId> stack{to};
    seen[to] = true;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        for (EdgeId e : g.in_edges(v)) {
            VertexId w = g.edge(e).tail;
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    return seen;
}

bool is_connected(const StGraph& g) {
    if (g.vertex_count() == 0) return true;
    std::vector<bool> seen(g.vertex_count(), false);
    std::vector<VertexId> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        for (const auto& inc : g.incident(v)) {
            if (!seen[inc.neighbor]) {
                seen[inc.neighbor] = true;
                ++count;
                stack.push_back(inc.neighbor);
            }
        }
    }
    return count == g.vertex_count();
}

}  // namespace

StGraph::StGraph(std::vector<std::string> names, std::vector<Edge> edges, VertexId s, VertexId t)
    : names_(std::move(names)), edges_(std::move(edges)), s_(s), t_(t) {
    const std::size_t n = names_.size();
    if (n == 0) throw GraphError("graph has no vertices");
    if (s_ >= n || t_ >= n) throw GraphError("s or t out of range");
    incident_.assign(n, {});
    out_.assign(n, {});
    in_.assign(n, {});
    edge_index_.reserve(edges_.size());
    for (EdgeId id = 0; id < edges_.size(); ++id) {
        auto& e = edges_[id];
        if (e.tail >= n || e.head >= n) throw GraphError("edge endpoint out of range");
        if (e.tail == e.head) throw GraphError("loop at vertex '" + names_[e.tail] + "'");
        if (e.weight <= 0) throw GraphError("non-positive weight on edge " + std::to_string(id));
        e.weight.canonicalize();
        if (!edge_index_.emplace(pair_key(e.tail, e.head), id).second) {
            throw GraphError("parallel edge between '" + names_[e.tail] + "' and '" + names_[e.head] + "'");
        }
        incident_[e.tail].push_back({e.head, id});
        incident_[e.head].push_back({e.tail, id});
        out_[e.tail].push_back(id);
        in_[e.head].push_back(id);
    }
    for (auto& list : incident_) {
        std::sort(list.begin(), list.end(),
                  [](const Incidence& a, const Incidence& b) { return a.neighbor < b.neighbor; });
    }
}

std::optional<EdgeId> StGraph::find_edge(VertexId u, VertexId v) const {
    auto it = edge_index_.find(pair_key(u, v));
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<VertexId> StGraph::find_vertex(std::string_view name) const {
    for (VertexId v = 0; v < names_.size(); ++v) {
        if (names_[v] == name) return v;
    }
    return std::nullopt;
}

VertexId StGraph::other_end(EdgeId e, VertexId v) const {
    const auto& edge = edges_[e];
    return edge.tail == v ? edge.head : edge.tail;
}

StGraph StGraph::with_weights(std::vector<Rational> weights) const {
    if (weights.size() != edges_.size()) throw GraphError("weight count mismatch");
    std::vector<Edge> edges = edges_;
    for (std::size_t i = 0; i < edges.size(); ++i) edges[i].weight = std::move(weights[i]);
    return StGraph(names_, std::move(edges), s_, t_);
}

bool ValidationReport::passed() const {
    return connected && std::all_of(edge_on_st_path.begin(), edge_on_st_path.end(), [](bool b) { return b; });
}

std::vector<EdgeId> ValidationReport::failing_edges() const {
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < edge_on_st_path.size(); ++e) {
        if (!edge_on_st_path[e]) out.push_back(e);
    }
    return out;
}

ValidationReport validate_st_graph(const StGraph& g) {
    ValidationReport report;
    report.connected = is_connected(g);
    auto from_s = forward_reach(g, g.s());
    auto to_t = backward_reach(g, g.t());
    // With a cyclic orientation a walk s ->* tail -> head ->* t need not be a
    // path, so reachability alone is not enough there.
    const bool acyclic = topological_order(g).has_value();
    report.edge_on_st_path.resize(g.edge_count());
    for (EdgeId id = 0; id < g.edge_count(); ++id) {
        const auto& e = g.edge(id);
        bool ok = from_s[e.tail] && to_t[e.head];
        if (ok && !acyclic) {
            // exhaustive search for a simple s-t path through e
            std::vector<bool> used(g.vertex_count(), false);
            std::function<bool(VertexId, VertexId, bool)> reach = [&](VertexId v, VertexId target,
                                                                      bool forward) -> bool {
                if (v == target) return true;
                used[v] = true;
                auto list = forward ? g.out_edges(v) : g.in_edges(v);
                for (EdgeId f : list) {
                    VertexId w = forward ? g.edge(f).head : g.edge(f).tail;
                    if (!used[w] && reach(w, target, forward)) return true;
                }
                used[v] = false;
                return false;
            };
            // search s ->* tail, then head ->* t avoiding the first half
            std::function<bool(VertexId)> first = [&](VertexId v) -> bool {
                used[v] = true;
                if (v == e.tail) {
                    if (!used[e.head]) {
                        std::vector<bool> saved = used;
                        if (reach(e.head, g.t(), true)) return true;
                        used = saved;
                    }
                    used[v] = false;
                    return false;
                }
                for (EdgeId f : g.out_edges(v)) {
                    VertexId w = g.edge(f).head;
                    if (!used[w] && first(w)) return true;
                }
                used[v] = false;
                return false;
            };
            ok = first(g.s());
        }
        report.edge_on_st_path[id] = ok;
    }
    return report;
}

GeodesicMetric::GeodesicMetric(std::size_t n, std::vector<Rational> table) : n_(n), table_(std::move(table)) {
    if (table_.size() != n_ * n_) throw GraphError("metric table size mismatch");
    for (std::size_t u = 0; u < n_; ++u) {
        if (table_[u * n_ + u] != 0) throw GraphError("metric diagonal must be zero");
        for (std::size_t v = u + 1; v < n_; ++v) {
            if (table_[u * n_ + v] != table_[v * n_ + u]) throw GraphError("metric table not symmetric");
        }
    }
}

std::vector<std::optional<Rational>> single_source_distances(const StGraph& g, VertexId source) {
    std::vector<std::optional<Rational>> dist(g.vertex_count());
    std::vector<bool> done(g.vertex_count(), false);
    using Item = std::pair<Rational, VertexId>;
    auto cmp = [](const Item& a, const Item& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second > b.second;
    };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> queue(cmp);
    dist[source] = Rational(0);
    queue.emplace(Rational(0), source);
    while (!queue.empty()) {
        auto [d, v] = queue.top();
        queue.pop();
        if (done[v]) continue;
        done[v] = true;
        for (const auto& inc : g.incident(v)) {
            if (done[inc.neighbor]) continue;
            Rational nd = d + g.edge(inc.edge).weight;
            auto& cur = dist[inc.neighbor];
            if (!cur || nd < *cur) {
                cur = nd;
                queue.emplace(std::move(nd), inc.neighbor);
            }
        }
    }
    return dist;
}

GeodesicMetric geodesic_metric(const StGraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<Rational> table(n * n);
    for (VertexId u = 0; u < n; ++u) {
        auto row = single_source_distances(g, u);
        for (VertexId v = 0; v < n; ++v) {
            if (!row[v]) throw GraphError("graph is disconnected");
            table[std::size_t{u} * n + v] = std::move(*row[v]);
        }
    }
    return GeodesicMetric(n, std::move(table));
}

std::pair<Rational, Rational> st_path_length_range(const StGraph& g) {
    auto order = topological_order(g);
    if (!order) throw GraphError("orientation contains a directed cycle");
    std::vector<std::optional<Rational>> lo(g.vertex_count()), hi(g.vertex_count());
    lo[g.s()] = Rational(0);
    hi[g.s()] = Rational(0);
    for (VertexId v : *order) {
        if (!lo[v]) continue;
        for (EdgeId e : g.out_edges(v)) {
            VertexId w = g.edge(e).head;
            Rational a = *lo[v] + g.edge(e).weight;
            Rational b = *hi[v] + g.edge(e).weight;
            if (!lo[w] || a < *lo[w]) lo[w] = a;
            if (!hi[w] || b > *hi[w]) hi[w] = b;
        }
    }
    if (!lo[g.t()]) throw GraphError("t is not reachable from s");
    return {*lo[g.t()], *hi[g.t()]};
}

bool is_normalized_geodesic_st(const StGraph& g) {
    if (!validate_st_graph(g).passed()) return false;
    if (!topological_order(g)) return false;
    auto [lo, hi] = st_path_length_range(g);
    return lo == 1 && hi == 1;
}

StGraph normalize(const StGraph& g) {
    auto report = validate_st_graph(g);
    if (!report.passed()) throw GraphError("not an s-t graph under the given orientation");
    auto [lo, hi] = st_path_length_range(g);
    if (lo != hi) {
        throw NotGeodesicStGraph("s-t path lengths differ: " + to_string(lo) + " vs " + to_string(hi));
    }
    std::vector<Rational> weights;
    weights.reserve(g.edge_count());
    for (const auto& e : g.edges()) weights.push_back(e.weight / lo);
    return g.with_weights(std::move(weights));
}

std::vector<EdgeId> walk_edges(const StGraph& g, const PathSeq& walk) {
    std::vector<EdgeId> out;
    if (walk.size() < 2) return out;
    out.reserve(walk.size() - 1);
    for (std::size_t i = 1; i < walk.size(); ++i) {
        if (walk[i - 1] >= g.vertex_count() || walk[i] >= g.vertex_count()) {
            throw GraphError("vertex id out of range in walk");
        }
        auto e = g.find_edge(walk[i - 1], walk[i]);
        if (!e) {
            throw GraphError("no edge between '" + g.name(walk[i - 1]) + "' and '" + g.name(walk[i]) + "'");
        }
        out.push_back(*e);
    }
    return out;
}

Rational path_length(const StGraph& g, const PathSeq& p) {
    if (p.empty()) throw GraphError("empty path");
    std::vector<bool> seen(g.vertex_count(), false);
    for (VertexId v : p) {
        if (v >= g.vertex_count()) throw GraphError("vertex id out of range in path");
        if (seen[v]) throw GraphError("path repeats vertex '" + g.name(v) + "'");
        seen[v] = true;
    }
    Rational total(0);
    for (EdgeId e : walk_edges(g, p)) total += g.edge(e).weight;
    return total;
}

BigInt count_st_paths(const StGraph& g) {
    auto order = topological_order(g);
    if (!order) throw GraphError("orientation contains a directed cycle");
    std::vector<BigInt> ways(g.vertex_count(), 0);
    ways[g.s()] = 1;
    for (VertexId v : *order) {
        if (ways[v] == 0) continue;
        for (EdgeId e : g.out_edges(v)) ways[g.edge(e).head] += ways[v];
    }
    return ways[g.t()];
}

std::vector<PathSeq> enumerate_st_paths(const StGraph& g, std::size_t cap) {
    BigInt total = count_st_paths(g);
    if (total > BigInt(static_cast<unsigned long>(cap))) {
        throw CapExceeded("graph has " + to_string(total) + " s-t paths, cap is " + std::to_string(cap));
    }
    std::vector<PathSeq> paths;
    auto to_t = backward_reach(g, g.t());
    PathSeq current{g.s()};
    std::function<void(VertexId)> walk = [&](VertexId v) {
        if (v == g.t()) {
            paths.push_back(current);
            return;
        }
        std::vector<VertexId> next;
        for (EdgeId e : g.out_edges(v)) {
            if (to_t[g.edge(e).head]) next.push_back(g.edge(e).head);
        }
        std::sort(next.begin(), next.end());
        for (VertexId w : next) {
            current.push_back(w);
            walk(w);
            current.pop_back();
        }
    };
    if (to_t[g.s()]) walk(g.s());
    return paths;
}

PathSeq lex_shortest_path(const StGraph& g, VertexId from, VertexId to) {
    auto dist = single_source_distances(g, to);
    if (!dist[from]) throw GraphError("no path between '" + g.name(from) + "' and '" + g.name(to) + "'");
    PathSeq path{from};
    VertexId cur = from;
    while (cur != to) {
        bool advanced = false;
        for (const auto& inc : g.incident(cur)) {
            const auto& d = dist[inc.neighbor];
            if (d && *d + g.edge(inc.edge).weight == *dist[cur]) {
                cur = inc.neighbor;
                path.push_back(cur);
                advanced = true;
                break;
            }
        }
        if (!advanced) throw GraphError("shortest path reconstruction failed");
    }
    return path;
}

std::vector<EdgeId> cycle_edges(const StGraph& g, const CycleSeq& c) {
    PathSeq closed = c;
    if (!c.empty()) closed.push_back(c.front());
    return walk_edges(g, closed);
}

void check_cycle(const StGraph& g, const CycleSeq& c) {
    if (c.size() < 3) throw GraphError("a cycle needs at least three vertices");
    std::vector<bool> seen(g.vertex_count(), false);
    for (VertexId v : c) {
        if (v >= g.vertex_count()) throw GraphError("vertex id out of range in cycle");
        if (seen[v]) throw GraphError("cycle repeats vertex '" + g.name(v) + "'");
        seen[v] = true;
    }
    cycle_edges(g, c);
}

Rational cycle_length(const StGraph& g, const CycleSeq& c) {
    check_cycle(g, c);
    Rational total(0);
    for (EdgeId e : cycle_edges(g, c)) total += g.edge(e).weight;
    return total;
}

std::vector<CycleSeq> enumerate_simple_cycles(const StGraph& g, std::size_t cap) {
    std::vector<CycleSeq> cycles;
    const std::size_t n = g.vertex_count();
    std::vector<bool> on_path(n, false);
    PathSeq path;
    for (VertexId start = 0; start < n; ++start) {
        std::function<void(VertexId)> extend = [&](VertexId v) {
            for (const auto& inc : g.incident(v)) {
                VertexId w = inc.neighbor;
                if (w == start && path.size() >= 3 && path[1] < path.back()) {
                    if (cycles.size() >= cap) {
                        throw CapExceeded("more than " + std::to_string(cap) + " simple cycles");
                    }
                    cycles.push_back(path);
                }
                if (w <= start || on_path[w]) continue;
                on_path[w] = true;
                path.push_back(w);
                extend(w);
                path.pop_back();
                on_path[w] = false;
            }
        };
        on_path[start] = true;
        path.assign(1, start);
        extend(start);
        on_path[start] = false;
    }
    std::sort(cycles.begin(), cycles.end());
    return cycles;
}

Subgraph edge_subgraph(const StGraph& g, std::span<const EdgeId> edges, VertexId s, VertexId t) {
    std::vector<bool> keep_vertex(g.vertex_count(), false);
    std::vector<bool> keep_edge(g.edge_count(), false);
    for (EdgeId e : edges) {
        if (e >= g.edge_count()) throw GraphError("edge id out of range");
        keep_edge[e] = true;
        keep_vertex[g.edge(e).tail] = true;
        keep_vertex[g.edge(e).head] = true;
    }
    if (!keep_vertex[s] || !keep_vertex[t]) throw GraphError("subgraph edges do not cover s and t");
    Subgraph sub;
    std::vector<VertexId> local(g.vertex_count(), 0);
    std::vector<std::string> names;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (!keep_vertex[v]) continue;
        local[v] = static_cast<VertexId>(sub.to_parent_vertex.size());
        sub.to_parent_vertex.push_back(v);
        names.push_back(g.name(v));
    }
    std::vector<Edge> out;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (!keep_edge[e]) continue;
        const auto& edge = g.edge(e);
        out.push_back({local[edge.tail], local[edge.head], edge.weight});
        sub.to_parent_edge.push_back(e);
    }
    sub.graph = StGraph(std::move(names), std::move(out), local[s], local[t]);
    return sub;
}

}  // namespace slashtree
