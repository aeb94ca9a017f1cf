#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fodef/graph.hpp"
#include "json.hpp"

namespace fodef {

struct Rational {
    long num = 2;
    long den = 3;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    /// size <= (num/den) * n, exactly.
    bool admits(long size, long n) const { return size * den <= num * n; }
};

enum class OTag { HOP, EDHOP1, EDHOP2, NOT_IN_O };
std::string tag_name(OTag t);

struct OClassification {
    OTag tag = OTag::NOT_IN_O;
    /// Hamilton cycle of the HOP completion (empty for NOT_IN_O).
    VertexList cycle;
    /// Vertex pairs whose addition gives the HOP completion.
    std::vector<std::pair<Vertex, Vertex>> missing_edges;
};

/// Hamilton cycle of g when g is HOP (2-connected outerplanar; K1 and K2
/// count as HOP), starting at the least vertex.
std::optional<VertexList> hop_cycle(const ColoredGraph& g);
inline bool is_hop(const ColoredGraph& g) { return hop_cycle(g).has_value(); }
/// True iff `cycle` is a Hamilton cycle of g whose other edges are pairwise
/// non-crossing chords.
bool verify_hop_certificate(const ColoredGraph& g, const VertexList& cycle);

OClassification classify_O(const ColoredGraph& g);
/// Classification reusing a candidate completion witness (cycle plus missing
/// edges) when it checks out; falls back to the full search otherwise.
OClassification classify_O(const ColoredGraph& g, const OClassification& hint);

struct SeparatorResult {
    VertexList X;
    Rational epsilon;
    std::vector<VertexList> flaps;
    double max_flap_fraction = 0.0;
    /// Per-flap membership witnesses in local ids of g.induced(flaps[i]);
    /// filled by class_O_separator only.
    std::vector<OClassification> flap_classes;
    /// Which construction produced X ("pair", "extended", "extended-e2",
    /// "exhaustive", "centroid", "brute").
    std::string construction;

    int flap_count() const { return static_cast<int>(flaps.size()); }
    std::vector<std::string> tags() const;
};

class SeparatorError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Size-1 separator of a tree: the vertex minimizing its largest flap (least id on ties).
SeparatorResult tree_centroid_separator(const ColoredGraph& g);

/// Hereditary separator for the class of HOP / 1-e.d.HOP / 2-e.d.HOP graphs:
/// |X| <= 5, at most 7 flaps, each flap at most 2n/3 and again in the class.
SeparatorResult class_O_separator(const ColoredGraph& g, const OClassification* hint = nullptr);

/// Counters for the class-O construction paths, for diagnostics.
struct ClassOStats {
    long pair = 0, extended = 0, extended_e2 = 0, recipe_nonadjacent = 0, fallback = 0, exhaustive = 0;
};
ClassOStats class_O_stats();
void reset_class_O_stats();

inline constexpr int brute_order_cap = 24;

/// Minimum-size X (at most size_cap) whose flaps all have at most eps*n
/// vertices, lexicographically first among minimum ones.
std::optional<SeparatorResult> brute_min_separator(const ColoredGraph& g, Rational eps, int size_cap,
                                                   int order_cap = brute_order_cap);

struct VerifyReport {
    bool ok = true;
    std::string reason;
    int violating_flap = -1;
};

VerifyReport verify_separator(const ColoredGraph& g, const VertexList& xs, Rational eps, int m_cap);

nlohmann::json to_json(const SeparatorResult& r);
nlohmann::json to_json(const OClassification& c);

}  // namespace fodef
