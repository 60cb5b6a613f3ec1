#include "slashtree/embeddings.hpp"

#include "slashtree/errors.hpp"
#include "slashtree/random.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace slashtree {

namespace {

std::string pair_text(VertexId u, VertexId v) {
    return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

// Rooted view of a tree given as an edge list over n vertices.
struct RootedTree {
    std::vector<VertexId> parent;
    std::vector<std::size_t> parent_edge;
    std::vector<std::size_t> depth;

    RootedTree(std::size_t n, const std::vector<std::pair<VertexId, VertexId>>& edges) {
        std::vector<std::vector<std::pair<VertexId, std::size_t>>> adj(n);
        for (std::size_t a = 0; a < edges.size(); ++a) {
            adj[edges[a].first].push_back({edges[a].second, a});
            adj[edges[a].second].push_back({edges[a].first, a});
        }
        parent.assign(n, 0);
        parent_edge.assign(n, 0);
        depth.assign(n, 0);
        std::vector<bool> seen(n, false);
        std::vector<VertexId> stack{0};
        seen[0] = true;
        std::size_t reached = 1;
        while (!stack.empty()) {
            VertexId x = stack.back();
            stack.pop_back();
            for (auto [y, a] : adj[x]) {
                if (seen[y]) continue;
                seen[y] = true;
                ++reached;
                parent[y] = x;
                parent_edge[y] = a;
                depth[y] = depth[x] + 1;
                stack.push_back(y);
            }
        }
        if (reached != n || edges.size() + 1 != n) throw GraphError("edge list is not a spanning tree");
    }

    std::vector<std::size_t> path_edges(VertexId u, VertexId v) const {
        std::vector<std::size_t> out;
        while (u != v) {
            if (depth[u] >= depth[v]) {
                out.push_back(parent_edge[u]);
                u = parent[u];
            } else {
                out.push_back(parent_edge[v]);
                v = parent[v];
            }
        }
        return out;
    }
};

}  // namespace

GeodesicTree::GeodesicTree(std::vector<std::string> names, std::vector<Edge> edges, std::vector<bool> steiner)
    : graph_(std::move(names), std::move(edges), 0, 0), steiner_(std::move(steiner)) {
    const std::size_t n = graph_.vertex_count();
    if (steiner_.empty()) steiner_.assign(n, false);
    if (steiner_.size() != n) throw GraphError("Steiner flags do not match the vertex count");
    if (graph_.edge_count() + 1 != n) {
        throw GraphError("not a tree: " + std::to_string(n) + " vertices and " + std::to_string(graph_.edge_count()) +
                         " edges");
    }
    dist_.assign(n * n, Rational(0));
    std::vector<bool> seen(n);
    for (VertexId root = 0; root < n; ++root) {
        std::fill(seen.begin(), seen.end(), false);
        seen[root] = true;
        std::vector<VertexId> stack{root};
        std::size_t reached = 1;
        while (!stack.empty()) {
            VertexId x = stack.back();
            stack.pop_back();
            for (const auto& inc : graph_.incident(x)) {
                if (seen[inc.neighbor]) continue;
                seen[inc.neighbor] = true;
                ++reached;
                dist_[std::size_t{root} * n + inc.neighbor] = dist_[std::size_t{root} * n + x] + graph_.edge(inc.edge).weight;
                stack.push_back(inc.neighbor);
            }
        }
        if (reached != n) throw GraphError("not a tree: disconnected");
    }
}

std::size_t GeodesicTree::steiner_count() const {
    return static_cast<std::size_t>(std::count(steiner_.begin(), steiner_.end(), true));
}

static void check_map(std::size_t source_size, const GeodesicTree& t, const TreeMap& f) {
    if (f.size() != source_size) {
        throw GraphError("tree map covers " + std::to_string(f.size()) + " of " + std::to_string(source_size) +
                         " vertices");
    }
    for (VertexId x : f) {
        if (x >= t.size()) throw GraphError("tree map image out of range");
    }
}

Rational expected_distortion(const MeasuredGraph& g, const GeodesicMetric& d, const GeodesicTree& t, const TreeMap& f) {
    validate_measure(g);
    if (d.size() != g.graph.vertex_count()) throw GraphError("metric size does not match the graph");
    check_map(d.size(), t, f);
    Rational total = 0;
    for (EdgeId e = 0; e < g.graph.edge_count(); ++e) {
        if (g.nu[e] == 0) continue;
        const auto& edge = g.graph.edge(e);
        total += g.nu[e] * t.distance(f[edge.tail], f[edge.head]) / d(edge.tail, edge.head);
    }
    return total;
}

ExpansiveCheck check_expansive(const GeodesicMetric& d, const GeodesicTree& t, const TreeMap& f) {
    check_map(d.size(), t, f);
    ExpansiveCheck out;
    Rational worst = 0;
    for (VertexId u = 0; u < d.size(); ++u) {
        for (VertexId v = u + 1; v < d.size(); ++v) {
            Rational gap = d(u, v) - t.distance(f[u], f[v]);
            if (gap > 0 && (!out.witness || gap > worst)) {
                worst = gap;
                out.witness = std::make_pair(u, v);
            }
        }
    }
    out.expansive = !out.witness;
    return out;
}

StochasticTreeEmbedding frt_embed(const GeodesicMetric& d, std::uint64_t seed, std::size_t samples,
                                  const std::vector<std::string>& names) {
    const std::size_t n = d.size();
    if (n == 0) throw GraphError("empty metric");
    if (samples == 0) throw GraphError("frt_embed needs at least one sample");
    if (!names.empty() && names.size() != n) throw GraphError("name list does not match the metric");
    Rational dmin, diam = 0;
    bool have_min = false;
    for (VertexId u = 0; u < n; ++u) {
        for (VertexId v = u + 1; v < n; ++v) {
            if (d(u, v) <= 0) throw GraphError("degenerate metric: zero distance " + pair_text(u, v));
            if (!have_min || d(u, v) < dmin) dmin = d(u, v);
            have_min = true;
            diam = std::max(diam, d(u, v));
        }
    }
    if (!have_min) dmin = 1;
    unsigned top = 1;
    while (Rational(pow2(top - 1)) * dmin < diam) ++top;

    constexpr std::uint64_t grid = std::uint64_t{1} << 20;
    Engine engine(seed);
    StochasticTreeEmbedding out;
    for (std::size_t sample = 0; sample < samples; ++sample) {
        Rational beta = 1 + Rational(mpz_class(std::to_string(uniform_below(engine, grid))), mpz_class(std::to_string(grid)));
        beta.canonicalize();
        std::vector<VertexId> order(n);
        std::iota(order.begin(), order.end(), VertexId{0});
        for (std::size_t i = n; i-- > 1;) std::swap(order[i], order[uniform_below(engine, i + 1)]);

        // Laminar family, node 0 is the whole set at level `top`.
        std::vector<VertexId> node_parent{0};
        std::vector<Rational> node_up{Rational(0)};
        std::vector<std::pair<VertexId, std::vector<VertexId>>> clusters;
        clusters.push_back({0, std::vector<VertexId>(order.begin(), order.end())});
        std::sort(clusters[0].second.begin(), clusters[0].second.end());
        for (int level = static_cast<int>(top) - 1; level >= 0; --level) {
            Rational radius = beta * dmin * Rational(pow2(static_cast<unsigned long>(level))) / 2;
            Rational up = dmin * Rational(pow2(static_cast<unsigned long>(level) + 1));
            std::vector<std::pair<VertexId, std::vector<VertexId>>> next;
            for (const auto& [node, members] : clusters) {
                std::vector<bool> taken(members.size(), false);
                for (VertexId center : order) {
                    std::vector<VertexId> part;
                    for (std::size_t i = 0; i < members.size(); ++i) {
                        if (!taken[i] && d(members[i], center) <= radius) {
                            taken[i] = true;
                            part.push_back(members[i]);
                        }
                    }
                    if (part.empty()) continue;
                    node_parent.push_back(node);
                    node_up.push_back(up);
                    next.push_back({static_cast<VertexId>(node_parent.size() - 1), std::move(part)});
                }
            }
            clusters = std::move(next);
        }
        std::vector<VertexId> leaf_of(n);
        std::vector<int> source_of(node_parent.size(), -1);
        for (const auto& [node, members] : clusters) {
            if (members.size() != 1) throw AssertionFailure("bottom cluster is not a singleton");
            leaf_of[members[0]] = node;
            source_of[node] = static_cast<int>(members[0]);
        }

        // Merge Steiner nodes of degree at most two.
        const std::size_t total = node_parent.size();
        std::vector<std::map<VertexId, Rational>> adj(total);
        for (VertexId x = 1; x < total; ++x) {
            adj[x][node_parent[x]] = node_up[x];
            adj[node_parent[x]][x] = node_up[x];
        }
        std::vector<bool> alive(total, true);
        for (bool changed = true; changed;) {
            changed = false;
            for (VertexId x = 0; x < total; ++x) {
                if (!alive[x] || source_of[x] >= 0 || adj[x].size() > 2) continue;
                if (adj[x].size() == 2) {
                    auto [a, wa] = *adj[x].begin();
                    auto [b, wb] = *std::next(adj[x].begin());
                    adj[a].erase(x);
                    adj[b].erase(x);
                    adj[a][b] = wa + wb;
                    adj[b][a] = wa + wb;
                } else {
                    for (const auto& [y, w] : adj[x]) adj[y].erase(x);
                }
                adj[x].clear();
                alive[x] = false;
                changed = true;
            }
        }
        std::vector<VertexId> index(total, 0);
        std::vector<std::string> tree_names;
        std::vector<bool> steiner;
        for (VertexId x = 0; x < total; ++x) {
            if (!alive[x]) continue;
            index[x] = static_cast<VertexId>(tree_names.size());
            if (source_of[x] >= 0) {
                auto v = static_cast<VertexId>(source_of[x]);
                tree_names.push_back(names.empty() ? "v" + std::to_string(v) : names[v]);
                steiner.push_back(false);
            } else {
                tree_names.push_back("c" + std::to_string(x));
                steiner.push_back(true);
            }
        }
        std::vector<Edge> tree_edges;
        for (VertexId x = 0; x < total; ++x) {
            for (const auto& [y, w] : adj[x]) {
                if (x < y) tree_edges.push_back({index[x], index[y], w});
            }
        }
        TreeMap map(n);
        for (VertexId v = 0; v < n; ++v) map[v] = index[leaf_of[v]];

        GeodesicTree raw(tree_names, tree_edges, steiner);
        Rational rho = 1;
        bool first = true;
        for (VertexId u = 0; u < n; ++u) {
            for (VertexId v = u + 1; v < n; ++v) {
                Rational ratio = raw.distance(map[u], map[v]) / d(u, v);
                if (first || ratio < rho) rho = ratio;
                first = false;
            }
        }
        for (auto& e : tree_edges) e.weight /= rho;
        out.components.push_back(
            {GeodesicTree(std::move(tree_names), std::move(tree_edges), std::move(steiner)), std::move(map),
             Rational(1, static_cast<unsigned long>(samples))});
        out.components.back().probability.canonicalize();
    }
    return out;
}

StretchReport stochastic_distortion_of(const GeodesicMetric& d, const StochasticTreeEmbedding& emb) {
    if (emb.components.empty()) throw GraphError("empty stochastic embedding");
    Rational mass = 0;
    for (std::size_t i = 0; i < emb.components.size(); ++i) {
        const auto& c = emb.components[i];
        if (c.probability <= 0) throw GraphError("component " + std::to_string(i) + " has non-positive probability");
        mass += c.probability;
        auto check = check_expansive(d, c.tree, c.map);
        if (!check.expansive) {
            throw GraphError("component " + std::to_string(i) + " is not expansive at pair " +
                             pair_text(check.witness->first, check.witness->second));
        }
    }
    if (mass != 1) throw GraphError("component probabilities sum to " + to_string(mass));
    StretchReport out;
    out.distortion = 1;
    bool first = true;
    for (VertexId u = 0; u < d.size(); ++u) {
        for (VertexId v = u + 1; v < d.size(); ++v) {
            if (d(u, v) <= 0) throw GraphError("zero distance at pair " + pair_text(u, v));
            Rational expected = 0;
            for (const auto& c : emb.components) expected += c.probability * c.tree.distance(c.map[u], c.map[v]);
            Rational stretch = expected / d(u, v);
            if (first || stretch > out.distortion) {
                out.distortion = stretch;
                out.worst = {u, v};
            }
            first = false;
            out.pairs.push_back({u, v, d(u, v), expected, stretch});
        }
    }
    return out;
}

Rational mean_expected_distortion(const MeasuredGraph& g, const GeodesicMetric& d, const StochasticTreeEmbedding& emb) {
    Rational total = 0;
    for (const auto& c : emb.components) total += c.probability * expected_distortion(g, d, c.tree, c.map);
    return total;
}

std::size_t pair_index(std::size_t n, VertexId u, VertexId v) {
    if (u > v) std::swap(u, v);
    if (u == v || v >= n) throw GraphError("invalid pair " + pair_text(u, v));
    return std::size_t{u} * n - std::size_t{u} * (u + 1) / 2 + (v - u - 1);
}

std::vector<Rational> distortion_pair_costs(const MeasuredGraph& g, const GeodesicMetric& d) {
    const std::size_t n = g.graph.vertex_count();
    std::vector<Rational> cost(n * (n - 1) / 2, Rational(0));
    for (EdgeId e = 0; e < g.graph.edge_count(); ++e) {
        const auto& edge = g.graph.edge(e);
        cost[pair_index(n, edge.tail, edge.head)] += g.nu[e] / d(edge.tail, edge.head);
    }
    return cost;
}

std::vector<std::pair<VertexId, VertexId>> pruefer_decode(const std::vector<VertexId>& seq, std::size_t n) {
    if (n < 2) {
        if (!seq.empty()) throw GraphError("Pruefer sequence too long");
        return {};
    }
    if (seq.size() + 2 != n) throw GraphError("Pruefer sequence length must be n-2");
    std::vector<std::size_t> degree(n, 1);
    for (VertexId x : seq) {
        if (x >= n) throw GraphError("Pruefer entry out of range");
        ++degree[x];
    }
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (VertexId x : seq) {
        VertexId leaf = 0;
        while (degree[leaf] != 1) ++leaf;
        edges.push_back({std::min(leaf, x), std::max(leaf, x)});
        --degree[leaf];
        --degree[x];
    }
    std::vector<VertexId> rest;
    for (VertexId v = 0; v < n; ++v) {
        if (degree[v] == 1) rest.push_back(v);
    }
    edges.push_back({rest.at(0), rest.at(1)});
    return edges;
}

TreeLpSolution solve_tree_lp(const GeodesicMetric& d, const std::vector<std::pair<VertexId, VertexId>>& topology,
                             const std::vector<Rational>& pair_cost) {
    const std::size_t n = d.size();
    if (n < 2) throw GraphError("tree LP needs at least two vertices");
    const std::size_t pairs = n * (n - 1) / 2;
    if (pair_cost.size() != pairs) throw GraphError("pair cost vector has the wrong size");
    RootedTree rooted(n, topology);
    const std::size_t m = topology.size();

    std::vector<std::vector<std::size_t>> through(pairs);
    std::vector<Rational> cost(m, Rational(0));
    std::vector<Rational> demand(pairs);
    for (VertexId u = 0; u < n; ++u) {
        for (VertexId v = u + 1; v < n; ++v) {
            std::size_t p = pair_index(n, u, v);
            through[p] = rooted.path_edges(u, v);
            demand[p] = d(u, v);
            if (pair_cost[p] < 0) throw GraphError("negative pair cost");
            for (std::size_t a : through[p]) cost[a] += pair_cost[p];
        }
    }

    // Dual: maximize demand.y subject to sum_{p through a} y_p <= cost_a, y >= 0.
    // Columns 0..pairs-1 are y, pairs..pairs+m-1 are slacks.
    const std::size_t cols = pairs + m;
    std::vector<std::vector<Rational>> tab(m, std::vector<Rational>(cols + 1, Rational(0)));
    std::vector<std::size_t> basis(m);
    for (std::size_t a = 0; a < m; ++a) {
        tab[a][pairs + a] = 1;
        tab[a][cols] = cost[a];
        basis[a] = pairs + a;
    }
    for (std::size_t p = 0; p < pairs; ++p) {
        for (std::size_t a : through[p]) tab[a][p] = 1;
    }
    std::vector<Rational> obj(cols + 1, Rational(0));
    for (std::size_t p = 0; p < pairs; ++p) obj[p] = -demand[p];

    for (;;) {
        std::size_t enter = cols;
        for (std::size_t j = 0; j < cols; ++j) {
            if (obj[j] < 0) {
                enter = j;
                break;
            }
        }
        if (enter == cols) break;
        std::size_t leave = m;
        Rational best;
        for (std::size_t r = 0; r < m; ++r) {
            if (tab[r][enter] <= 0) continue;
            Rational ratio = tab[r][cols] / tab[r][enter];
            if (leave == m || ratio < best || (ratio == best && basis[r] < basis[leave])) {
                leave = r;
                best = ratio;
            }
        }
        if (leave == m) throw AssertionFailure("tree LP dual is unbounded");
        Rational pivot = tab[leave][enter];
        for (auto& x : tab[leave]) x /= pivot;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == leave || tab[r][enter] == 0) continue;
            Rational factor = tab[r][enter];
            for (std::size_t j = 0; j <= cols; ++j) tab[r][j] -= factor * tab[leave][j];
        }
        Rational factor = obj[enter];
        for (std::size_t j = 0; j <= cols; ++j) obj[j] -= factor * tab[leave][j];
        basis[leave] = enter;
    }

    TreeLpSolution out;
    out.weights.resize(m);
    for (std::size_t a = 0; a < m; ++a) out.weights[a] = obj[pairs + a];
    out.value = 0;
    for (std::size_t a = 0; a < m; ++a) {
        if (out.weights[a] < 0) throw AssertionFailure("tree LP produced a negative weight");
        out.value += cost[a] * out.weights[a];
    }
    for (std::size_t p = 0; p < pairs; ++p) {
        Rational length = 0;
        for (std::size_t a : through[p]) length += out.weights[a];
        if (length < demand[p]) throw AssertionFailure("tree LP weights violate a distance constraint");
    }
    if (out.value != obj[cols]) throw AssertionFailure("tree LP primal and dual values differ");
    return out;
}

void for_each_tree_topology(std::size_t n,
                            const std::function<void(const std::vector<VertexId>&,
                                                     const std::vector<std::pair<VertexId, VertexId>>&)>& visit) {
    if (n < 2) {
        visit({}, {});
        return;
    }
    std::vector<VertexId> seq(n - 2, 0);
    for (;;) {
        visit(seq, pruefer_decode(seq, n));
        std::size_t i = seq.size();
        while (i > 0 && seq[i - 1] + 1 == n) seq[--i] = 0;
        if (i == 0) return;
        ++seq[i - 1];
    }
}

OracleResult oracle_min_expected_distortion(const MeasuredGraph& g, std::size_t max_vertices) {
    const std::size_t n = g.graph.vertex_count();
    if (n < 2) throw GraphError("oracle needs at least two vertices");
    if (n > max_vertices) {
        throw CapExceeded("oracle limited to " + std::to_string(max_vertices) + " vertices, graph has " +
                          std::to_string(n));
    }
    validate_measure(g);
    GeodesicMetric d = geodesic_metric(g.graph);
    auto pair_cost = distortion_pair_costs(g, d);

    OracleResult out;
    bool found = false;
    std::vector<std::pair<VertexId, VertexId>> best_edges;
    std::vector<Rational> best_weights;
    for_each_tree_topology(n, [&](const std::vector<VertexId>& seq,
                                  const std::vector<std::pair<VertexId, VertexId>>& edges) {
        ++out.topologies;
        if (found) {
            // Every edge weight is at least the distance of its endpoints.
            RootedTree rooted(n, edges);
            std::vector<Rational> cost(edges.size(), Rational(0));
            for (VertexId u = 0; u < n; ++u) {
                for (VertexId v = u + 1; v < n; ++v) {
                    const auto& c = pair_cost[pair_index(n, u, v)];
                    if (c == 0) continue;
                    for (std::size_t a : rooted.path_edges(u, v)) cost[a] += c;
                }
            }
            Rational floor = 0;
            for (std::size_t a = 0; a < edges.size(); ++a) floor += cost[a] * d(edges[a].first, edges[a].second);
            if (floor >= out.value) {
                ++out.pruned;
                return;
            }
        }
        auto lp = solve_tree_lp(d, edges, pair_cost);
        if (!found || lp.value < out.value) {
            found = true;
            out.value = lp.value;
            out.pruefer = seq;
            best_edges = edges;
            best_weights = std::move(lp.weights);
        }
    });
    std::vector<Edge> tree_edges;
    for (std::size_t a = 0; a < best_edges.size(); ++a) {
        tree_edges.push_back({best_edges[a].first, best_edges[a].second, best_weights[a]});
    }
    out.tree = GeodesicTree(g.graph.names(), std::move(tree_edges));
    out.map.resize(n);
    std::iota(out.map.begin(), out.map.end(), VertexId{0});
    return out;
}

LowerBound lower_bound_c_nu(const MeasuredGraph& g, std::size_t max_vertices) {
    auto r = oracle_min_expected_distortion(g, max_vertices);
    return {r.value, r.value / 8};
}

CycleWitness cycle_lower_bound_check(const StGraph& host, const CycleSeq& c, const GeodesicTree& t, const TreeMap& f) {
    check_cycle(host, c);
    check_map(host.vertex_count(), t, f);
    const std::size_t k = c.size();
    std::vector<Rational> weight(k);
    std::vector<Rational> position(k + 1, Rational(0));
    for (std::size_t i = 0; i < k; ++i) {
        weight[i] = host.edge(*host.find_edge(c[i], c[(i + 1) % k])).weight;
        position[i + 1] = position[i] + weight[i];
    }
    const Rational c0 = position[k];
    auto d_c = [&](std::size_t i, std::size_t j) -> Rational {
        Rational arc = position[j] - position[i];
        if (arc < 0) arc = -arc;
        return std::min(arc, Rational(c0 - arc));
    };
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            if (t.distance(f[c[i]], f[c[j]]) < d_c(i, j)) {
                throw GraphError("map is not expansive on the cycle at " + pair_text(c[i], c[j]));
            }
        }
    }
    CycleWitness best;
    Rational best_ratio = -1;
    for (std::size_t i = 0; i < k; ++i) {
        VertexId u = c[i], v = c[(i + 1) % k];
        Rational dc = std::min(weight[i], Rational(c0 - weight[i]));
        Rational dt = t.distance(f[u], f[v]);
        Rational ratio = dt / (c0 - dc);
        if (ratio > best_ratio) {
            best_ratio = ratio;
            best = {i, u, v, dt, dc, c0, (c0 - dc) / 8, c0 - dc};
        }
    }
    if (best.d_t < best.bound) {
        throw AssertionFailure("no cycle edge reaches (c0 - d_C)/8: best edge " + pair_text(best.u, best.v) +
                               " has d_T = " + to_string(best.d_t));
    }
    return best;
}

static void require_eq411(const LaaksoGraph& base, const SlashPower& power, unsigned n) {
    if (!(power.base().graph == base.graph())) throw GraphError("slash power is not built on this Laakso graph");
    if (n < 1 || n > power.n()) throw GraphError("level " + std::to_string(n) + " is not materialized");
    if (!base.balanced()) throw GraphError("Laakso base is not balanced");
    const Rational quarter = base.cycle_length() / 4;
    if (quarter > Rational(1, 2)) throw GraphError("c0/4 exceeds 1/2");
    for (const auto* branch : {&base.branch1, &base.branch2}) {
        for (EdgeId e : *branch) {
            if (base.graph().edge(e).weight > quarter) {
                throw GraphError("branch edge " + std::to_string(e) + " is longer than c0/4");
            }
        }
    }
}

Rational truncated_distortion_F(const LaaksoGraph& base, const SlashPower& power, unsigned n, const GeodesicTree& t,
                                const TreeMap& f) {
    require_eq411(base, power, n);
    const auto& level = power.level(n);
    GeodesicMetric d = geodesic_metric(level.graph);
    auto check = check_expansive(d, t, f);
    if (!check.expansive) {
        throw GraphError("map is not expansive at pair " + pair_text(check.witness->first, check.witness->second));
    }
    const Rational cap = Rational(3, 32) * base.cycle_length();
    Rational total = 0;
    for (EdgeId e = 0; e < level.graph.edge_count(); ++e) {
        if (level.nu[e] == 0) continue;
        const auto& edge = level.graph.edge(e);
        Rational dt = t.distance(f[edge.tail], f[edge.head]);
        total += level.nu[e] * std::min(dt, cap) / d(edge.tail, edge.head);
    }
    return total;
}

Theorem41Report theorem41_assert(const LaaksoGraph& base, const SlashPower& power, unsigned n, const GeodesicTree& t,
                                 const TreeMap& f, std::size_t max_cycles) {
    Theorem41Report out;
    out.value = truncated_distortion_F(base, power, n, t, f);
    const Rational c0 = base.cycle_length();
    out.bound = Rational(3, 128) * c0 * n;
    out.bound_holds = out.value >= out.bound;
    out.witnesses_hold = true;
    const Rational needed = Rational(3, 32) * c0;
    const auto& graph = power.level(n).graph;
    for_each_max_cycle(base, power, n, max_cycles, [&](const MaxCycle& mc) {
        ++out.cycles_checked;
        try {
            auto w = cycle_lower_bound_check(graph, mc.vertices, t, f);
            if (out.cycles_checked == 1 || w.d_t < out.smallest_witness) out.smallest_witness = w.d_t;
            if (w.d_t < needed) out.witnesses_hold = false;
        } catch (const AssertionFailure&) {
            out.witnesses_hold = false;
        }
    });
    return out;
}

}  // namespace slashtree
