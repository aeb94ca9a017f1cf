#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fodef/graph.hpp"

namespace fodef {

enum class Family { Path, Cycle, TwoCycles, Star, Complete, Triv, RandomBoundedTree, RandomHop };

struct FamilySpec {
    Family family = Family::Path;
    int n = 1;           // vertex count (two_cycles: length of each cycle)
    int b = 0;           // triv: number of isolated vertices (n is the number of edges)
    int d = 3;           // degree bound for random trees
    std::uint64_t seed = 0;
};

Family family_from_name(const std::string& name);
std::string family_name(Family f);

ColoredGraph generate(const FamilySpec& spec);

ColoredGraph path_graph(int n);
ColoredGraph cycle_graph(int n);
ColoredGraph two_cycles(int n);
/// K_{1,n-1}: center 0.
ColoredGraph star_graph(int n);
ColoredGraph complete_graph(int n);
/// a isolated edges plus b isolated vertices.
ColoredGraph triv_graph(int a, int b);
/// Random tree on n vertices with maximum degree at most d.
ColoredGraph random_bounded_tree(int n, int d, std::uint64_t seed);
/// Random 2-connected outerplanar graph: a triangulated polygon with some
/// chords deleted. The boundary 0,1,...,n-1 is its Hamilton cycle.
ColoredGraph random_hop(int n, std::uint64_t seed);

ColoredGraph relabel(const ColoredGraph& g, const VertexList& perm);
ColoredGraph random_relabel(const ColoredGraph& g, std::mt19937_64& rng);

inline constexpr int enumeration_cap = 8;

/// One representative per isomorphism class of order n (n <= 8).
std::vector<ColoredGraph> enumerate_graphs(int n, bool connected_only = false);
/// Visits representatives without materializing the list.
void for_each_graph(int n, bool connected_only, const std::function<void(const ColoredGraph&)>& visit);

/// Every 2-connected outerplanar graph on n >= 3 vertices, up to isomorphism
/// (chord subsets of the n-gon); n <= 10.
std::vector<ColoredGraph> enumerate_hop_graphs(int n);

// Structured perturbations. Each returns a graph of the same order.

/// Detaches a leaf and reattaches it elsewhere, keeping max degree <= d.
ColoredGraph tree_leaf_move(const ColoredGraph& tree, int d, std::mt19937_64& rng);
/// Swaps two disjoint subtrees between their parents, keeping max degree <= d.
ColoredGraph tree_subtree_swap(const ColoredGraph& tree, int d, std::mt19937_64& rng);
/// Moves one chord of a HOP graph with Hamilton cycle 0..n-1 to another
/// non-crossing position, or deletes / inserts one.
ColoredGraph hop_chord_flip(const ColoredGraph& hop, std::mt19937_64& rng);

}  // namespace fodef
