#include "fodef/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace fodef {

nlohmann::json to_json(const ColoredGraph& g) {
    nlohmann::json j;
    j["n"] = g.order();
    j["edges"] = nlohmann::json::array();
    for (auto [u, v] : g.edges()) j["edges"].push_back({u, v});
    if (g.colored()) {
        j["colors"] = nlohmann::json::array();
        for (Vertex v = 0; v < g.order(); ++v) j["colors"].push_back(g.colors(v));
    }
    return j;
}

ColoredGraph graph_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n")) throw GraphError("graph JSON needs an object with field \"n\"");
    int n = j.at("n").get<int>();
    if (n < 0) throw GraphError("negative vertex count");
    std::vector<std::pair<Vertex, Vertex>> edges;
    if (j.contains("edges")) {
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw GraphError("each edge must be a pair [u,v]");
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
    }
    std::vector<std::vector<int>> colors;
    if (j.contains("colors")) colors = j.at("colors").get<std::vector<std::vector<int>>>();
    return ColoredGraph::from_edges(n, edges, std::move(colors));
}

ColoredGraph read_edge_list(std::istream& in) {
    int n = 0, m = 0;
    if (!(in >> n >> m) || n < 0 || m < 0) throw GraphError("edge list must start with \"n m\"");
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int i = 0; i < m; ++i) {
        int u = 0, v = 0;
        if (!(in >> u >> v)) throw GraphError("edge list truncated at edge " + std::to_string(i));
        edges.emplace_back(u, v);
    }
    return ColoredGraph::from_edges(n, edges);
}

void write_edge_list(std::ostream& out, const ColoredGraph& g) {
    out << g.order() << ' ' << g.size() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

ColoredGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GraphError("cannot open " + path);
    if (path.ends_with(".json")) {
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw GraphError(path + ": " + e.what());
        }
        return graph_from_json(j);
    }
    return read_edge_list(in);
}

void save_graph(const std::string& path, const ColoredGraph& g) {
    std::ofstream out(path);
    if (!out) throw GraphError("cannot write " + path);
    if (path.ends_with(".json"))
        out << to_json(g).dump() << '\n';
    else
        write_edge_list(out, g);
}

std::string to_dot(const ColoredGraph& g, std::span<const Vertex> highlight, std::string_view name) {
    std::ostringstream s;
    s << "graph " << name << " {\n";
    for (Vertex v = 0; v < g.order(); ++v) {
        s << "  " << v;
        std::string label = std::to_string(v);
        if (!g.colors(v).empty()) {
            label += " {";
            for (std::size_t i = 0; i < g.colors(v).size(); ++i) label += (i ? "," : "") + std::to_string(g.colors(v)[i]);
            label += "}";
        }
        s << " [label=\"" << label << "\"";
        if (std::find(highlight.begin(), highlight.end(), v) != highlight.end())
            s << ", style=filled, fillcolor=\"#f4a261\"";
        s << "];\n";
    }
    for (auto [u, v] : g.edges()) s << "  " << u << " -- " << v << ";\n";
    s << "}\n";
    return s.str();
}

}  // namespace fodef
