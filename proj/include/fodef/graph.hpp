#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fodef {

using Vertex = int;
using VertexList = std::vector<Vertex>;

class GraphError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Finite simple graph with an irreflexive symmetric adjacency relation and a
/// finite set of non-negative color ids on every vertex.
class ColoredGraph {
public:
    ColoredGraph() = default;
    explicit ColoredGraph(int n);

    /// Builds a graph from an edge list. Self-loops and duplicate edges throw.
    static ColoredGraph from_edges(int n, std::span<const std::pair<Vertex, Vertex>> edges,
                                   std::vector<std::vector<int>> colors = {});

    int order() const noexcept { return n_; }
    int size() const noexcept { return edge_count_; }
    bool empty() const noexcept { return n_ == 0; }

    bool adjacent(Vertex u, Vertex v) const noexcept {
        return (bits_[static_cast<std::size_t>(u) * words_ + (static_cast<unsigned>(v) >> 6)] >>
                (static_cast<unsigned>(v) & 63)) & 1U;
    }
    const VertexList& neighbors(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
    int degree(Vertex v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }
    int max_degree() const noexcept;

    /// Returns false when the edge already exists. Self-loops throw.
    bool add_edge(Vertex u, Vertex v);
    bool remove_edge(Vertex u, Vertex v);

    const std::vector<int>& colors(Vertex v) const { return colors_[static_cast<std::size_t>(v)]; }
    bool has_color(Vertex v, int c) const;
    void add_color(Vertex v, int c);
    void set_colors(Vertex v, std::vector<int> cs);
    /// Largest color id used anywhere, or -1 for an uncolored graph.
    int max_color() const noexcept;
    bool colored() const noexcept { return max_color() >= 0; }

    std::vector<std::pair<Vertex, Vertex>> edges() const;

    /// Subgraph induced on `vs`; local vertex i corresponds to vs[i].
    ColoredGraph induced(std::span<const Vertex> vs) const;
    /// Same graph with every color removed.
    ColoredGraph underlying() const;

    bool valid(Vertex v) const noexcept { return v >= 0 && v < n_; }
    void check_vertex(Vertex v) const;

    friend bool operator==(const ColoredGraph& a, const ColoredGraph& b) {
        return a.n_ == b.n_ && a.adj_ == b.adj_ && a.colors_ == b.colors_;
    }

private:
    int n_ = 0;
    int edge_count_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
    std::vector<VertexList> adj_;
    std::vector<std::vector<int>> colors_;
};

// --- distances -------------------------------------------------------------

/// BFS distances from `source`; -1 marks unreachable vertices. Vertices with
/// `blocked[v]` set are treated as removed (the source itself must not be).
std::vector<int> bfs_distances(const ColoredGraph& g, Vertex source,
                               const std::vector<char>* blocked = nullptr);
/// Shortest-path distance, empty when unreachable.
std::optional<int> distance(const ColoredGraph& g, Vertex u, Vertex v);
/// min over x in X of d(u, x), empty when X is unreachable or empty.
std::optional<int> distance(const ColoredGraph& g, Vertex u, std::span<const Vertex> xs);

// --- components and flaps --------------------------------------------------

/// Connected components of g minus the vertices flagged in `removed`, each
/// sorted ascending, ordered by least vertex id.
std::vector<VertexList> components(const ColoredGraph& g, const std::vector<char>* removed = nullptr);
bool is_connected(const ColoredGraph& g);
/// Component id per vertex (-1 for removed vertices).
std::vector<int> component_ids(const ColoredGraph& g, const std::vector<char>* removed = nullptr);

struct FlapDecomposition {
    VertexList separator;                  // x_1 .. x_k, in the given order
    std::vector<VertexList> flaps;         // ordered by least vertex id
    std::vector<ColoredGraph> recolored;   // flap i with fresh colors A_1..A_k
    int fresh_base = 0;                    // A_i has color id fresh_base + i - 1

    int flap_of(Vertex v) const;
};

/// First fresh color id usable by both game graphs.
int fresh_color_base(const ColoredGraph& g, const ColoredGraph& h);

/// X-flaps of g. Fresh colors start at `fresh_base` (default: 1 + max color of g).
FlapDecomposition flap_decompose(const ColoredGraph& g, std::span<const Vertex> xs,
                                 std::optional<int> fresh_base = std::nullopt);

// --- partial isomorphisms ---------------------------------------------------

struct PartialMap {
    std::vector<std::pair<Vertex, Vertex>> pairs;
};

/// Def. of a game win for Duplicator: equality pattern and adjacency/color
/// type agree between the two pebble sequences.
bool check_partial_isomorphism(const ColoredGraph& g, const ColoredGraph& h, const PartialMap& m);
/// Same check, restricted to pairs involving the last pair (incremental use).
bool extends_partial_isomorphism(const ColoredGraph& g, const ColoredGraph& h,
                                 std::span<const std::pair<Vertex, Vertex>> pairs, Vertex x, Vertex y);

// --- isomorphism -------------------------------------------------------------

/// Color- and adjacency-preserving bijection g -> h, if any (witness[v] = image).
std::optional<VertexList> find_isomorphism(const ColoredGraph& g, const ColoredGraph& h);
inline bool are_isomorphic(const ColoredGraph& g, const ColoredGraph& h) {
    return find_isomorphism(g, h).has_value();
}
/// Complete isomorphism invariant for small graphs (exponential worst case).
std::string canonical_form(const ColoredGraph& g);
/// Cheap isomorphism invariant used to bucket graphs before exact tests.
std::uint64_t invariant_hash(const ColoredGraph& g);

/// Twin classes: u ~ v iff N(u)\{v} = N(v)\{u} and equal colors. Swapping twins
/// is an automorphism. Returns a class id per vertex.
std::vector<int> twin_classes(const ColoredGraph& g);

/// Groups graphs into isomorphism classes; returns class id per input, ids
/// numbered in order of first appearance.
std::vector<int> isomorphism_classes(std::span<const ColoredGraph> graphs);

struct SimilarFlapCensus {
    std::vector<std::vector<int>> classes;  // flap indices per similarity class
    int max_class = 0;
};

/// Partitions X-flaps into classes of pairwise similar flaps.
SimilarFlapCensus similar_flap_census(const ColoredGraph& g, std::span<const Vertex> xs);

}  // namespace fodef
