#include "slashtree/io.hpp"

#include "slashtree/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace slashtree {

using nlohmann::json;

namespace {

const json& member(const json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end()) throw SchemaError(std::string("missing key \"") + key + "\"");
    return *it;
}

std::string name_of(const json& v, const char* what) {
    if (!v.is_string()) throw SchemaError(std::string(what) + " must be a vertex name string");
    return v.get<std::string>();
}

Rational rational_of(const json& v, const char* what) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(mpz_class(v.dump()));
    throw SchemaError(std::string(what) + " must be a \"num/den\" string");
}

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace

MeasuredGraph parse_graph_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw SchemaError("graph document must be an object");
    static const std::set<std::string> known{"vertices", "edges",      "s",          "t",
                                             "orientation", "nu", "restricted", "edge_labels"};
    for (const auto& [key, value] : doc.items()) {
        if (!known.count(key)) throw SchemaError("unknown key \"" + key + "\"");
    }

    const json& vertices = member(doc, "vertices");
    if (!vertices.is_array()) throw SchemaError("\"vertices\" must be an array");
    std::vector<std::string> names;
    std::map<std::string, VertexId> index;
    for (const auto& v : vertices) {
        names.push_back(name_of(v, "vertex"));
        if (!index.emplace(names.back(), static_cast<VertexId>(names.size() - 1)).second) {
            throw SchemaError("duplicate vertex \"" + names.back() + "\"");
        }
    }
    auto lookup = [&](const json& v, const char* what) -> VertexId {
        std::string n = name_of(v, what);
        auto it = index.find(n);
        if (it == index.end()) throw SchemaError("unknown vertex \"" + n + "\"");
        return it->second;
    };

    const json& edge_list = member(doc, "edges");
    if (!edge_list.is_array()) throw SchemaError("\"edges\" must be an array");
    std::vector<Edge> edges;
    for (const auto& e : edge_list) {
        if (!e.is_array() || e.size() != 3) throw SchemaError("each edge must be [u, v, \"num/den\"]");
        edges.push_back({lookup(e[0], "edge endpoint"), lookup(e[1], "edge endpoint"), rational_of(e[2], "edge weight")});
    }

    if (auto it = doc.find("orientation"); it != doc.end()) {
        if (!it->is_array() || it->size() != edges.size()) {
            throw SchemaError("\"orientation\" must list every edge once");
        }
        std::map<std::pair<VertexId, VertexId>, std::size_t> by_pair;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            auto key = std::minmax(edges[i].tail, edges[i].head);
            by_pair[{key.first, key.second}] = i;
        }
        std::vector<bool> seen(edges.size(), false);
        for (const auto& o : *it) {
            if (!o.is_array() || o.size() != 2) throw SchemaError("each orientation entry must be [tail, head]");
            VertexId tail = lookup(o[0], "orientation endpoint");
            VertexId head = lookup(o[1], "orientation endpoint");
            auto key = std::minmax(tail, head);
            auto found = by_pair.find({key.first, key.second});
            if (found == by_pair.end()) throw SchemaError("orientation names a non-edge");
            if (seen[found->second]) throw SchemaError("orientation lists an edge twice");
            seen[found->second] = true;
            edges[found->second].tail = tail;
            edges[found->second].head = head;
        }
    }

    VertexId s = lookup(member(doc, "s"), "\"s\"");
    VertexId t = lookup(member(doc, "t"), "\"t\"");
    MeasuredGraph g{StGraph(std::move(names), std::move(edges), s, t), {}};

    auto report = validate_st_graph(g.graph);
    if (!report.passed()) {
        std::string failing;
        for (EdgeId e : report.failing_edges()) failing += " " + std::to_string(e);
        throw GraphError(report.connected ? "edges not on any s-t path:" + failing : "graph is disconnected");
    }

    if (auto it = doc.find("restricted"); it != doc.end()) {
        if (!it->is_boolean()) throw SchemaError("\"restricted\" must be a boolean");
        g.restricted = it->get<bool>();
    }
    if (auto it = doc.find("nu"); it != doc.end()) {
        if (!it->is_array() || it->size() != g.graph.edge_count()) {
            throw SchemaError("\"nu\" must have one entry per edge");
        }
        for (const auto& x : *it) g.nu.push_back(rational_of(x, "measure entry"));
    } else {
        Rational total = 0;
        for (const auto& e : g.graph.edges()) total += e.weight;
        for (const auto& e : g.graph.edges()) g.nu.push_back(e.weight / total);
    }
    validate_measure(g);
    return g;
}

std::string graph_to_json(const MeasuredGraph& g, const std::vector<std::string>& edge_labels) {
    const auto& graph = g.graph;
    json doc;
    doc["vertices"] = graph.names();
    json edges = json::array(), orientation = json::array(), nu = json::array();
    for (EdgeId e = 0; e < graph.edge_count(); ++e) {
        const auto& edge = graph.edge(e);
        edges.push_back({graph.name(edge.tail), graph.name(edge.head), to_string(edge.weight)});
        orientation.push_back({graph.name(edge.tail), graph.name(edge.head)});
        if (e < g.nu.size()) nu.push_back(to_string(g.nu[e]));
    }
    doc["edges"] = std::move(edges);
    doc["s"] = graph.name(graph.s());
    doc["t"] = graph.name(graph.t());
    doc["orientation"] = std::move(orientation);
    if (!g.nu.empty()) doc["nu"] = std::move(nu);
    if (g.restricted) doc["restricted"] = true;
    if (!edge_labels.empty()) doc["edge_labels"] = edge_labels;
    return doc.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
    if (!out) throw Error("write failed for " + path);
}

std::string export_dot(const StGraph& g) {
    std::string out = "digraph G {\n";
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        out += "  " + quoted(g.name(v));
        if (v == g.s() || v == g.t()) out += " [shape=doublecircle]";
        out += ";\n";
    }
    for (const auto& e : g.edges()) {
        out += "  " + quoted(g.name(e.tail)) + " -> " + quoted(g.name(e.head)) + " [label=" + quoted(to_string(e.weight)) +
               "];\n";
    }
    return out + "}\n";
}

std::string stretch_csv(const StretchReport& r, const std::vector<std::string>& names) {
    std::string out = "pair,d_X,E[d_T],stretch\n";
    for (const auto& p : r.pairs) {
        out += names.at(p.u) + ":" + names.at(p.v) + "," + to_string(p.d_x) + "," + to_string(p.expected_d_t) + "," +
               to_string(p.stretch) + "\n";
    }
    return out;
}

}  // namespace slashtree
