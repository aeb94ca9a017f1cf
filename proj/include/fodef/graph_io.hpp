#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "fodef/graph.hpp"
#include "json.hpp"

namespace fodef {

// Graph JSON: {"n": <int>, "edges": [[u,v],...], "colors": [[...],...]}; colors optional.
nlohmann::json to_json(const ColoredGraph& g);
ColoredGraph graph_from_json(const nlohmann::json& j);

// Edge-list text: first line "n m", then m lines "u v".
ColoredGraph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const ColoredGraph& g);

/// Loads by extension: ".json" as graph JSON, anything else as an edge list.
ColoredGraph load_graph(const std::string& path);
void save_graph(const std::string& path, const ColoredGraph& g);

/// Graphviz export; vertices in `highlight` are drawn filled.
std::string to_dot(const ColoredGraph& g, std::span<const Vertex> highlight = {},
                   std::string_view name = "G");

}  // namespace fodef
