#include "slashtree/slash.hpp"

#include "slashtree/errors.hpp"

#include <algorithm>
#include <charconv>

namespace slashtree {

namespace {

std::vector<VertexId> interior_vertices(const StGraph& g) {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (v != g.s() && v != g.t()) out.push_back(v);
    }
    return out;
}

void require_normalized(const MeasuredGraph& g, const char* which) {
    if (!is_normalized_geodesic_st(g.graph)) {
        throw GraphError(std::string(which) + " is not a normalized geodesic s-t graph");
    }
    validate_measure(g);
}

std::string join_digits(const std::vector<EdgeId>& digits) {
    std::string out;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i) out += '/';
        out += std::to_string(digits[i]);
    }
    return out;
}

std::vector<EdgeId> to_digits(std::size_t value, unsigned length, std::size_t radix) {
    std::vector<EdgeId> digits(length);
    for (unsigned i = length; i-- > 0;) {
        digits[i] = static_cast<EdgeId>(value % radix);
        value /= radix;
    }
    return digits;
}

bool power_exceeds(std::size_t base, unsigned n, std::size_t cap) {
    std::size_t acc = 1;
    for (unsigned i = 0; i < n; ++i) {
        if (acc > cap / base) return true;
        acc *= base;
    }
    return acc > cap;
}

void check_st_choice(const StGraph& g, const PathSeq& p) {
    if (p.size() < 2 || p.front() != g.s() || p.back() != g.t()) throw GraphError("choice is not an s-t path");
    for (std::size_t i = 1; i < p.size(); ++i) {
        auto e = g.find_edge(p[i - 1], p[i]);
        if (!e || g.edge(*e).tail != p[i - 1]) throw GraphError("choice is not a directed s-t path");
    }
}

}  // namespace

std::string format_label(const SlashLabel& label, const StGraph& base) {
    std::string out = join_digits(label.edges);
    if (label.vertex) {
        if (!out.empty()) out += '/';
        out += base.name(*label.vertex);
    }
    return out;
}

SlashLabel parse_label(std::string_view text, const StGraph& base, bool vertex) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        auto slash = text.find('/', start);
        parts.push_back(text.substr(start, slash == std::string_view::npos ? std::string_view::npos : slash - start));
        if (slash == std::string_view::npos) break;
        start = slash + 1;
    }
    SlashLabel label;
    std::size_t digit_count = vertex ? parts.size() - 1 : parts.size();
    for (std::size_t i = 0; i < digit_count; ++i) {
        EdgeId e = 0;
        auto [ptr, ec] = std::from_chars(parts[i].data(), parts[i].data() + parts[i].size(), e);
        if (ec != std::errc() || ptr != parts[i].data() + parts[i].size() || e >= base.edge_count()) {
            throw SchemaError("bad edge entry '" + std::string(parts[i]) + "' in label '" + std::string(text) + "'");
        }
        label.edges.push_back(e);
    }
    if (vertex) {
        auto v = base.find_vertex(parts.back());
        if (!v) throw SchemaError("unknown vertex '" + std::string(parts.back()) + "' in label");
        label.vertex = *v;
    } else if (label.edges.empty()) {
        throw SchemaError("empty edge label");
    }
    return label;
}

MeasuredGraph slash_product(const MeasuredGraph& h, const MeasuredGraph& g, std::size_t max_edges,
                            const std::function<std::string(EdgeId)>& edge_name) {
    require_normalized(h, "left factor");
    require_normalized(g, "right factor");
    const std::size_t eh = h.graph.edge_count();
    const std::size_t eg = g.graph.edge_count();
    if (eh > max_edges / eg) {
        throw CapExceeded("slash product would have " + std::to_string(eh) + "*" + std::to_string(eg) +
                          " edges, cap is " + std::to_string(max_edges));
    }
    const auto interior = interior_vertices(g.graph);
    std::vector<VertexId> rank(g.graph.vertex_count(), 0);
    for (VertexId r = 0; r < interior.size(); ++r) rank[interior[r]] = r;
    const std::size_t nh = h.graph.vertex_count();
    const std::size_t ni = interior.size();

    std::vector<std::string> names = h.graph.names();
    names.reserve(nh + eh * ni);
    for (EdgeId e = 0; e < eh; ++e) {
        std::string prefix = edge_name ? edge_name(e) : std::to_string(e);
        for (VertexId u : interior) names.push_back(prefix + "/" + g.graph.name(u));
    }
    auto vertex_of = [&](EdgeId e, VertexId u) -> VertexId {
        if (u == g.graph.s()) return h.graph.edge(e).tail;
        if (u == g.graph.t()) return h.graph.edge(e).head;
        return static_cast<VertexId>(nh + e * ni + rank[u]);
    };
    std::vector<Edge> edges;
    std::vector<Rational> nu;
    edges.reserve(eh * eg);
    nu.reserve(eh * eg);
    for (EdgeId e = 0; e < eh; ++e) {
        const auto& outer = h.graph.edge(e);
        for (EdgeId f = 0; f < eg; ++f) {
            const auto& inner = g.graph.edge(f);
            edges.push_back({vertex_of(e, inner.tail), vertex_of(e, inner.head), outer.weight * inner.weight});
            nu.push_back(h.nu[e] * g.nu[f]);
        }
    }
    return {StGraph(std::move(names), std::move(edges), h.graph.s(), h.graph.t()), std::move(nu),
            h.restricted || g.restricted};
}

StGraph replace_edge(const StGraph& h, EdgeId e, const StGraph& g) {
    if (e >= h.edge_count()) throw GraphError("edge " + std::to_string(e) + " is not in the graph");
    const auto interior = interior_vertices(g);
    std::vector<VertexId> rank(g.vertex_count(), 0);
    for (VertexId r = 0; r < interior.size(); ++r) rank[interior[r]] = r;
    const auto& target = h.edge(e);
    auto vertex_of = [&](VertexId u) -> VertexId {
        if (u == g.s()) return target.tail;
        if (u == g.t()) return target.head;
        return static_cast<VertexId>(h.vertex_count() + rank[u]);
    };
    std::vector<std::string> names = h.names();
    for (VertexId u : interior) names.push_back(std::to_string(e) + "/" + g.name(u));
    std::vector<Edge> edges;
    for (EdgeId i = 0; i < h.edge_count(); ++i) {
        if (i != e) {
            edges.push_back(h.edge(i));
            continue;
        }
        for (const auto& f : g.edges()) edges.push_back({vertex_of(f.tail), vertex_of(f.head), target.weight * f.weight});
    }
    return StGraph(std::move(names), std::move(edges), h.s(), h.t());
}

SlashPower::SlashPower(MeasuredGraph base, unsigned n, std::size_t max_edges) {
    if (n == 0) throw GraphError("slash power exponent must be at least 1");
    require_normalized(base, "base graph");
    const std::size_t e = base.graph.edge_count();
    if (power_exceeds(e, n, max_edges)) {
        throw CapExceeded(std::to_string(e) + "^" + std::to_string(n) + " edges exceeds the cap of " +
                          std::to_string(max_edges));
    }
    interior_ = interior_vertices(base.graph);
    interior_rank_.assign(base.graph.vertex_count(), 0);
    for (VertexId r = 0; r < interior_.size(); ++r) interior_rank_[interior_[r]] = r;
    levels_.reserve(n);
    levels_.push_back(std::move(base));
    for (unsigned j = 1; j < n; ++j) {
        auto name = [&, j](EdgeId id) { return join_digits(to_digits(id, j, e)); };
        levels_.push_back(slash_product(levels_.back(), levels_.front(), max_edges, name));
    }
}

SlashLabel SlashPower::edge_label(unsigned level, EdgeId e) const {
    if (level == 0 || level > n() || e >= this->level(level).graph.edge_count()) {
        throw GraphError("edge id out of range for level " + std::to_string(level));
    }
    return {to_digits(e, level, base().graph.edge_count()), std::nullopt};
}

EdgeId SlashPower::edge_id(const SlashLabel& label) const {
    if (label.vertex || label.edges.empty() || label.edges.size() > n()) throw GraphError("not an edge label of this power");
    const std::size_t radix = base().graph.edge_count();
    std::size_t id = 0;
    for (EdgeId d : label.edges) {
        if (d >= radix) throw GraphError("label entry out of range");
        id = id * radix + d;
    }
    return static_cast<EdgeId>(id);
}

VertexId SlashPower::copy_vertex(unsigned level, EdgeId e, VertexId u) const {
    if (level < 2 || level > n()) throw GraphError("copy level out of range");
    const StGraph& parent = this->level(level - 1).graph;
    const StGraph& g = base().graph;
    if (e >= parent.edge_count() || u >= g.vertex_count()) throw GraphError("copy vertex out of range");
    if (u == g.s()) return parent.edge(e).tail;
    if (u == g.t()) return parent.edge(e).head;
    return static_cast<VertexId>(parent.vertex_count() + std::size_t{e} * interior_.size() + interior_rank_[u]);
}

VertexId SlashPower::vertex_id(const SlashLabel& label) const {
    if (!label.vertex || label.edges.size() + 1 > n()) throw GraphError("not a vertex label of this power");
    if (*label.vertex >= base().graph.vertex_count()) throw GraphError("label vertex out of range");
    if (label.edges.empty()) return *label.vertex;
    SlashLabel prefix{label.edges, std::nullopt};
    const auto j = static_cast<unsigned>(label.edges.size());
    return copy_vertex(j + 1, edge_id(prefix), *label.vertex);
}

SlashLabel SlashPower::vertex_label(unsigned level, VertexId v) const {
    if (level == 0 || level > n() || v >= this->level(level).graph.vertex_count()) {
        throw GraphError("vertex id out of range for level " + std::to_string(level));
    }
    const StGraph& g = base().graph;
    SlashLabel label;
    if (v < g.vertex_count()) {
        label.vertex = v;
    } else {
        unsigned j = 2;
        while (v >= this->level(j).graph.vertex_count()) ++j;
        const std::size_t offset = v - this->level(j - 1).graph.vertex_count();
        label = edge_label(j - 1, static_cast<EdgeId>(offset / interior_.size()));
        label.vertex = interior_[offset % interior_.size()];
    }
    while (label.edges.size() + 1 < level) {
        VertexId u = *label.vertex;
        EdgeId best = static_cast<EdgeId>(g.edge_count());
        for (const auto& inc : g.incident(u)) best = std::min(best, inc.edge);
        label.edges.push_back(best);
        label.vertex = g.edge(best).tail == u ? g.s() : g.t();
    }
    return label;
}

PathSeq SlashPower::lift_path(unsigned level, const PathSeq& parent, const std::vector<PathSeq>& choices) const {
    if (level < 2 || level > n()) throw GraphError("lift level out of range");
    if (parent.size() < 2 || choices.size() != parent.size() - 1) throw GraphError("one choice per parent edge is required");
    const StGraph& above = this->level(level - 1).graph;
    PathSeq out{parent.front()};
    for (std::size_t i = 0; i + 1 < parent.size(); ++i) {
        check_st_choice(base().graph, choices[i]);
        auto e = above.find_edge(parent[i], parent[i + 1]);
        if (!e) throw GraphError("parent walk uses a missing edge");
        PathSeq segment;
        for (VertexId u : choices[i]) segment.push_back(copy_vertex(level, *e, u));
        if (above.edge(*e).tail != parent[i]) std::reverse(segment.begin(), segment.end());
        out.insert(out.end(), segment.begin() + 1, segment.end());
    }
    return out;
}

CycleSeq SlashPower::lift_cycle(unsigned level, const CycleSeq& parent, const std::vector<PathSeq>& choices) const {
    if (choices.size() != parent.size()) throw GraphError("one choice per cycle edge is required");
    PathSeq closed = parent;
    closed.push_back(parent.front());
    PathSeq lifted = lift_path(level, closed, choices);
    lifted.pop_back();
    return lifted;
}

LazyPowerMetric::LazyPowerMetric(const MeasuredGraph& base) : base_(base.graph), metric_(geodesic_metric(base.graph)) {
    if (!is_normalized_geodesic_st(base_)) throw GraphError("base is not a normalized geodesic s-t graph");
}

std::pair<Rational, Rational> LazyPowerMetric::terminal_distances(const SlashLabel& label, std::size_t from) const {
    const VertexId u = *label.vertex;
    Rational to_s = metric_(u, base_.s());
    Rational to_t = metric_(u, base_.t());
    for (std::size_t i = label.edges.size(); i-- > from;) {
        const auto& e = base_.edge(label.edges[i]);
        Rational via_tail_s = e.weight * to_s + metric_(e.tail, base_.s());
        Rational via_head_s = e.weight * to_t + metric_(e.head, base_.s());
        Rational via_tail_t = e.weight * to_s + metric_(e.tail, base_.t());
        Rational via_head_t = e.weight * to_t + metric_(e.head, base_.t());
        to_s = std::min(via_tail_s, via_head_s);
        to_t = std::min(via_tail_t, via_head_t);
    }
    return {to_s, to_t};
}

Rational LazyPowerMetric::distance(const SlashLabel& a, const SlashLabel& b) const {
    if (!a.vertex || !b.vertex) throw GraphError("distance needs vertex labels");
    for (const auto* l : {&a, &b}) {
        if (*l->vertex >= base_.vertex_count()) throw GraphError("label vertex out of range");
        for (EdgeId e : l->edges) {
            if (e >= base_.edge_count()) throw GraphError("label entry out of range");
        }
    }
    Rational scale(1);
    std::size_t k = 0;
    while (k < a.edges.size() && k < b.edges.size() && a.edges[k] == b.edges[k]) {
        scale *= base_.edge(a.edges[k]).weight;
        ++k;
    }
    struct Exit {
        VertexId at;
        Rational cost;
    };
    auto exits = [&](const SlashLabel& l) {
        std::vector<Exit> out;
        if (k == l.edges.size()) {
            out.push_back({*l.vertex, Rational(0)});
            return out;
        }
        const auto& e = base_.edge(l.edges[k]);
        auto [to_s, to_t] = terminal_distances(l, k + 1);
        out.push_back({e.tail, e.weight * to_s});
        out.push_back({e.head, e.weight * to_t});
        return out;
    };
    std::optional<Rational> best;
    for (const auto& x : exits(a)) {
        for (const auto& y : exits(b)) {
            Rational d = x.cost + metric_(x.at, y.at) + y.cost;
            if (!best || d < *best) best = d;
        }
    }
    return scale * *best;
}

bool associativity_isomorphism_check(const MeasuredGraph& g, std::size_t max_edges) {
    MeasuredGraph gg = slash_product(g, g, max_edges);
    MeasuredGraph left = slash_product(gg, g, max_edges);
    MeasuredGraph right = slash_product(g, gg, max_edges);
    const StGraph& a = left.graph;
    const StGraph& b = right.graph;
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
    std::vector<std::optional<VertexId>> phi(a.vertex_count());
    auto bind = [&](VertexId from, VertexId to) {
        if (!phi[from]) phi[from] = to;
        return *phi[from] == to;
    };
    for (EdgeId e = 0; e < a.edge_count(); ++e) {
        const auto& ea = a.edge(e);
        const auto& eb = b.edge(e);
        if (!bind(ea.tail, eb.tail) || !bind(ea.head, eb.head)) return false;
        if (ea.weight != eb.weight || left.nu[e] != right.nu[e]) return false;
    }
    std::vector<bool> hit(b.vertex_count(), false);
    for (const auto& image : phi) {
        if (!image || hit[*image]) return false;
        hit[*image] = true;
    }
    if (*phi[a.s()] != b.s() || *phi[a.t()] != b.t()) return false;
    GeodesicMetric da = geodesic_metric(a);
    GeodesicMetric db = geodesic_metric(b);
    for (VertexId u = 0; u < a.vertex_count(); ++u) {
        for (VertexId v = u + 1; v < a.vertex_count(); ++v) {
            if (da(u, v) != db(*phi[u], *phi[v])) return false;
        }
    }
    return true;
}

}  // namespace slashtree
