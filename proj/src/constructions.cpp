#include "slashtree/constructions.hpp"

#include "slashtree/errors.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace slashtree {

namespace {

Rational sum(const std::vector<Rational>& v) {
    return std::accumulate(v.begin(), v.end(), Rational(0));
}

void require_positive(const std::vector<Rational>& v, const char* what) {
    for (const auto& w : v) {
        if (w <= 0) throw GraphError(std::string(what) + " weights must be positive");
    }
}

std::size_t position_in(const CycleSeq& c, VertexId v) {
    return static_cast<std::size_t>(std::find(c.begin(), c.end(), v) - c.begin());
}

}  // namespace

void validate_measure(const MeasuredGraph& g) {
    if (g.nu.size() != g.graph.edge_count()) throw GraphError("measure size does not match edge count");
    Rational total(0);
    for (const auto& x : g.nu) {
        if (x < 0 || (!g.restricted && x == 0)) throw GraphError("measure entry out of range: " + to_string(x));
        total += x;
    }
    if (total != 1) throw GraphError("measure sums to " + to_string(total) + ", not 1");
}

void LaaksoParams::validate() const {
    if (std::min(l1, l2) < 1) throw GraphError("Laakso branches need at least one edge");
    if (l1 + l2 < 3) throw GraphError("Laakso branches need at least three edges in total");
}

LaaksoParams parse_laakso_params(std::string_view text) {
    std::size_t values[4] = {0, 0, 0, 0};
    std::size_t field = 0;
    const char* p = text.data();
    const char* end = text.data() + text.size();
    while (true) {
        if (field == 4) throw SchemaError("expected k,l1,l2,m, got '" + std::string(text) + "'");
        auto [next, ec] = std::from_chars(p, end, values[field]);
        if (ec != std::errc() || next == p) throw SchemaError("expected k,l1,l2,m, got '" + std::string(text) + "'");
        ++field;
        p = next;
        if (p == end) break;
        if (*p != ',') throw SchemaError("expected k,l1,l2,m, got '" + std::string(text) + "'");
        ++p;
    }
    if (field != 4) throw SchemaError("expected k,l1,l2,m, got '" + std::string(text) + "'");
    LaaksoParams params{values[0], values[1], values[2], values[3]};
    params.validate();
    return params;
}

LaaksoWeights LaaksoWeights::uniform(const LaaksoParams& p) {
    p.validate();
    Rational unit(1, static_cast<unsigned long>(p.k + p.m + p.l1));
    Rational inner = unit * static_cast<unsigned long>(p.l1) / static_cast<unsigned long>(p.l2);
    inner.canonicalize();
    return {std::vector<Rational>(p.k, unit), std::vector<Rational>(p.l1, unit), std::vector<Rational>(p.l2, inner),
            std::vector<Rational>(p.m, unit)};
}

Rational LaaksoGraph::cycle_length() const {
    Rational total(0);
    for (EdgeId e : branch1) total += graph().edge(e).weight;
    for (EdgeId e : branch2) total += graph().edge(e).weight;
    return total;
}

PathSeq LaaksoGraph::branch_path(int sigma) const {
    const auto& edges = sigma == 1 ? branch1 : branch2;
    PathSeq path{entry};
    for (EdgeId e : edges) path.push_back(graph().edge(e).head);
    return path;
}

CycleSeq LaaksoGraph::cycle() const {
    CycleSeq c = branch_path(1);
    PathSeq back = branch_path(2);
    for (std::size_t i = back.size() - 2; i >= 1; --i) c.push_back(back[i]);
    return c;
}

PathSeq LaaksoGraph::st_path(int sigma) const {
    PathSeq path{graph().s()};
    for (EdgeId e : stem) path.push_back(graph().edge(e).head);
    PathSeq middle = branch_path(sigma);
    path.insert(path.end(), middle.begin() + 1, middle.end());
    for (EdgeId e : tail) path.push_back(graph().edge(e).head);
    return path;
}

bool LaaksoGraph::on_cycle(EdgeId e) const {
    return std::find(branch1.begin(), branch1.end(), e) != branch1.end() ||
           std::find(branch2.begin(), branch2.end(), e) != branch2.end();
}

MeasuredGraph build_path(const std::vector<Rational>& weights) {
    if (weights.empty()) throw GraphError("a path needs at least one edge");
    require_positive(weights, "path");
    std::vector<std::string> names;
    std::vector<Edge> edges;
    for (std::size_t i = 0; i <= weights.size(); ++i) names.push_back("x" + std::to_string(i));
    for (std::size_t i = 0; i < weights.size(); ++i) {
        edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(i + 1), weights[i]});
    }
    Rational total = sum(weights);
    MeasuredGraph out{StGraph(std::move(names), std::move(edges), 0, static_cast<VertexId>(weights.size())), {}};
    for (const auto& w : weights) out.nu.push_back(w / total);
    return out;
}

MeasuredGraph build_cycle(const std::vector<Rational>& arc1, const std::vector<Rational>& arc2) {
    if (arc1.empty() || arc2.empty()) throw GraphError("both arcs of a cycle need an edge");
    if (arc1.size() + arc2.size() < 3) throw GraphError("a cycle needs at least three edges");
    require_positive(arc1, "cycle");
    require_positive(arc2, "cycle");
    Rational half = sum(arc1);
    if (half != sum(arc2)) {
        throw NoBalancedSplit("arc lengths differ: " + to_string(half) + " vs " + to_string(sum(arc2)));
    }
    const std::size_t m = arc1.size();
    const std::size_t total = arc1.size() + arc2.size();
    std::vector<std::string> names;
    for (std::size_t i = 0; i < total; ++i) names.push_back("x" + std::to_string(i));
    // arc 2 walks x0, x_{n-1}, ..., x_{m+1}, x_m
    auto arc2_vertex = [&](std::size_t j) -> VertexId {
        if (j == 0) return 0;
        if (j == arc2.size()) return static_cast<VertexId>(m);
        return static_cast<VertexId>(total - j);
    };
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < m; ++i) edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(i + 1), arc1[i]});
    for (std::size_t j = 0; j < arc2.size(); ++j) edges.push_back({arc2_vertex(j), arc2_vertex(j + 1), arc2[j]});
    MeasuredGraph out{StGraph(std::move(names), std::move(edges), 0, static_cast<VertexId>(m)), {}};
    for (const auto& e : out.graph.edges()) out.nu.push_back(e.weight / (2 * half));
    return out;
}

LaaksoGraph build_laakso(const LaaksoParams& p, const LaaksoWeights& w) {
    p.validate();
    if (w.stem.size() != p.k || w.branch1.size() != p.l1 || w.branch2.size() != p.l2 || w.tail.size() != p.m) {
        throw GraphError("Laakso segment weights do not match the parameters");
    }
    require_positive(w.stem, "stem");
    require_positive(w.branch1, "branch");
    require_positive(w.branch2, "branch");
    require_positive(w.tail, "tail");
    if (sum(w.branch1) != sum(w.branch2)) {
        throw GraphError("Laakso branch lengths differ: " + to_string(sum(w.branch1)) + " vs " +
                         to_string(sum(w.branch2)));
    }

    const VertexId y1_base = static_cast<VertexId>(p.k + 1);
    const VertexId y2_base = static_cast<VertexId>(y1_base + p.l1 - 1);
    const VertexId z_base = static_cast<VertexId>(y2_base + p.l2 - 1);

    std::vector<std::string> names;
    for (std::size_t i = 0; i <= p.k; ++i) names.push_back("x" + std::to_string(i));
    for (std::size_t j = 1; j < p.l1; ++j) names.push_back("y1_" + std::to_string(j));
    for (std::size_t j = 1; j < p.l2; ++j) names.push_back("y2_" + std::to_string(j));
    for (std::size_t i = 0; i <= p.m; ++i) names.push_back("z" + std::to_string(i));

    LaaksoGraph out;
    out.params = p;
    out.entry = static_cast<VertexId>(p.k);
    out.exit = z_base;

    std::vector<Edge> edges;
    auto add = [&](VertexId a, VertexId b, const Rational& weight, std::vector<EdgeId>& segment) {
        segment.push_back(static_cast<EdgeId>(edges.size()));
        edges.push_back({a, b, weight});
    };
    for (std::size_t i = 0; i < p.k; ++i) add(static_cast<VertexId>(i), static_cast<VertexId>(i + 1), w.stem[i], out.stem);
    auto branch_vertex = [&](VertexId base, std::size_t len, std::size_t j) -> VertexId {
        if (j == 0) return out.entry;
        if (j == len) return out.exit;
        return static_cast<VertexId>(base + j - 1);
    };
    for (std::size_t j = 0; j < p.l1; ++j) {
        add(branch_vertex(y1_base, p.l1, j), branch_vertex(y1_base, p.l1, j + 1), w.branch1[j], out.branch1);
    }
    for (std::size_t j = 0; j < p.l2; ++j) {
        add(branch_vertex(y2_base, p.l2, j), branch_vertex(y2_base, p.l2, j + 1), w.branch2[j], out.branch2);
    }
    for (std::size_t i = 0; i < p.m; ++i) {
        add(static_cast<VertexId>(z_base + i), static_cast<VertexId>(z_base + i + 1), w.tail[i], out.tail);
    }

    Rational length = sum(w.stem) + sum(w.branch1) + sum(w.tail);
    out.measured.graph = StGraph(std::move(names), std::move(edges), 0, static_cast<VertexId>(z_base + p.m));
    out.measured.nu.resize(out.measured.graph.edge_count());
    for (EdgeId e : out.stem) out.measured.nu[e] = out.graph().edge(e).weight / length;
    for (EdgeId e : out.tail) out.measured.nu[e] = out.graph().edge(e).weight / length;
    for (EdgeId e : out.branch1) out.measured.nu[e] = out.graph().edge(e).weight / (2 * length);
    for (EdgeId e : out.branch2) out.measured.nu[e] = out.graph().edge(e).weight / (2 * length);
    return out;
}

LaaksoSubgraph laakso_from_cycle(const StGraph& g, const CycleSeq& c) {
    check_cycle(g, c);
    auto from_s = single_source_distances(g, g.s());
    auto from_t = single_source_distances(g, g.t());
    VertexId y = c.front();
    VertexId z = c.front();
    for (VertexId v : c) {
        if (!from_s[v] || !from_t[v]) throw GraphError("graph is disconnected");
        if (*from_s[v] < *from_s[y] || (*from_s[v] == *from_s[y] && v < y)) y = v;
        if (*from_t[v] < *from_t[z] || (*from_t[v] == *from_t[z] && v < z)) z = v;
    }
    if (y == z) throw GraphError("cycle has a single vertex nearest to both s and t");

    const std::size_t n = c.size();
    const std::size_t py = position_in(c, y);
    const std::size_t pz = position_in(c, z);
    PathSeq forward, backward;
    for (std::size_t i = py;; i = (i + 1) % n) {
        forward.push_back(c[i]);
        if (i == pz) break;
    }
    for (std::size_t i = py;; i = (i + n - 1) % n) {
        backward.push_back(c[i]);
        if (i == pz) break;
    }
    if (backward.size() > forward.size() || (backward.size() == forward.size() && backward[1] < forward[1])) {
        std::swap(forward, backward);
    }
    const PathSeq& arc1 = forward;
    const PathSeq& arc2 = backward;

    PathSeq stem = lex_shortest_path(g, g.s(), y);
    PathSeq tail = lex_shortest_path(g, z, g.t());
    std::vector<int> owner(g.vertex_count(), 0);
    for (VertexId v : c) owner[v] = 1;
    for (std::size_t i = 0; i + 1 < stem.size(); ++i) {
        if (owner[stem[i]] != 0) throw GraphError("attachment path from s meets the cycle early");
        owner[stem[i]] = 2;
    }
    for (std::size_t i = 1; i < tail.size(); ++i) {
        if (owner[tail[i]] != 0) throw GraphError("attachment path to t meets the cycle or the other path");
        owner[tail[i]] = 3;
    }

    auto weights_along = [&](const PathSeq& p) {
        std::vector<Rational> w;
        for (EdgeId e : walk_edges(g, p)) w.push_back(g.edge(e).weight);
        return w;
    };
    LaaksoParams params{stem.size() - 1, arc1.size() - 1, arc2.size() - 1, tail.size() - 1};
    LaaksoWeights weights{weights_along(stem), weights_along(arc1), weights_along(arc2), weights_along(tail)};

    LaaksoSubgraph out;
    out.laakso = build_laakso(params, weights);
    for (VertexId v : stem) out.vertex_map.push_back(v);
    for (std::size_t j = 1; j + 1 < arc1.size(); ++j) out.vertex_map.push_back(arc1[j]);
    for (std::size_t j = 1; j + 1 < arc2.size(); ++j) out.vertex_map.push_back(arc2[j]);
    for (VertexId v : tail) out.vertex_map.push_back(v);
    for (const auto& e : out.laakso.graph().edges()) {
        out.edge_map.push_back(*g.find_edge(out.vertex_map[e.tail], out.vertex_map[e.head]));
    }
    return out;
}

std::optional<CycleSeq> find_any_cycle(const StGraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<bool> visited(n, false);
    std::vector<std::size_t> depth_of(n, 0);
    struct Frame {
        VertexId v;
        VertexId parent;
        std::size_t next;
    };
    for (VertexId root = 0; root < n; ++root) {
        if (visited[root]) continue;
        std::vector<Frame> stack{{root, root, 0}};
        visited[root] = true;
        while (!stack.empty()) {
            Frame& f = stack.back();
            auto inc = g.incident(f.v);
            if (f.next == inc.size()) {
                stack.pop_back();
                continue;
            }
            VertexId w = inc[f.next++].neighbor;
            if (w == f.parent && stack.size() > 1) continue;
            if (visited[w]) {
                // undirected DFS: a visited non-parent neighbour is an ancestor on the stack
                CycleSeq cycle;
                for (std::size_t i = depth_of[w]; i < stack.size(); ++i) cycle.push_back(stack[i].v);
                return cycle;
            }
            visited[w] = true;
            depth_of[w] = stack.size();
            VertexId parent = f.v;
            stack.push_back({w, parent, 0});
        }
    }
    return std::nullopt;
}

}  // namespace slashtree
