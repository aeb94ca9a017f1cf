#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fodef/formula.hpp"
#include "fodef/game.hpp"
#include "fodef/separators.hpp"
#include "json.hpp"

namespace fodef {

class StrategyError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class SeparatorProvider { TreeCentroid, ClassO, BruteMin };
std::string provider_name(SeparatorProvider p);  // "tree-centroid", "class-o", "brute"
SeparatorProvider provider_from_name(const std::string& name);

enum class Variant { S, SStar };

struct StrategyConfig {
    SeparatorProvider provider = SeparatorProvider::TreeCentroid;
    int depth = 1;
    Variant variant = Variant::S;
    int m = 0;  // flap-count bound, variant S
    int s = 0;  // similar-flap bound, variant S*
    Rational eps{2, 3};
    int brute_size_cap = 3;

    /// k(n): the separator size the provider certifies (constant for all three).
    int separator_size() const;
    void validate() const;
};

/// Centroid separator on trees of maximum degree d, depth from choose_depth.
StrategyConfig tree_config(int n, int d);
/// Class-O separator (k = 5, m = 7, eps = 2/3), depth from choose_depth.
StrategyConfig class_O_config(int n);
/// Brute-force separator for S*, depth from the S* rule.
StrategyConfig brute_star_config(int n, int s, int size_cap = 3);

/// SEPARATOR covers the rounds spent pebbling X before Case 1 or Case 2 is decided.
enum class Phase { S0, Separator, Case1, Case2, Halving, OutLemma, Disconnected };
std::string phase_name(Phase p);  // "S0", "SEPARATOR", "CASE1", "CASE2", "HALVING", "OUT_LEMMA", "DISCONNECTED"

struct TraceRecord {
    Phase phase = Phase::S0;
    int depth = 0;
    int arena = 0;     // |F|
    int arena_p = 0;   // |F'|
    VertexList X;
    std::vector<std::pair<int, int>> multiplicities;  // (m(H), m'(H)) per recolored flap type
    int flap_count = 0;                               // f
    int rounds = 0;                                   // rounds Spoiler spent in this phase
    int halving_bound = 0;                            // ceil(log2 |F|) for HALVING
    int start_round = 0;
};

struct StrategyTrace {
    std::vector<TraceRecord> records;
    int total_rounds = 0;
    int alternations = 0;
    int lemma33_checks = 0;    // arena moves in G' answered outside the arena
    int lemma33_failures = 0;  // ... without ending the game on the spot
    int halving_overruns = 0;  // halving phases longer than ceil(log2 |F|)
};
nlohmann::json to_json(const StrategyTrace& t);

/// Lemma 3.1 position: pebbles of rounds i and j share an X_I-flap on `side`,
/// while their counterparts lie in different Y_I-flaps. I lists round indices.
struct HalvingSetup {
    Side side = Side::G;
    int i = 0, j = 0;
    std::vector<int> I;
};

/// ceil(log2 n) for n >= 1.
int ceil_log2(long n);

class StrategyAgent : public SpoilerAgent {
public:
    StrategyAgent(StrategyConfig config, std::optional<HalvingSetup> halving);
    ~StrategyAgent() override;
    StrategyAgent(const StrategyAgent& other);

    SpoilerMove next(const GameState& state) override;
    std::unique_ptr<SpoilerAgent> clone() const override;
    std::string name() const override;
    nlohmann::json annotation() const override;
    /// Trace completed with the outcome of the final round of `final_state`.
    StrategyTrace trace(const GameState& final_state) const;

    struct Impl;

private:
    std::unique_ptr<Impl> impl_;
};

/// Spoiler following the halving strategy from a Lemma 3.1 position of `state`.
/// Throws StrategyError when the hypothesis does not hold.
std::unique_ptr<StrategyAgent> halving_agent(const GameState& state, const HalvingSetup& setup);
/// Size of the flap holding the pair, for a valid setup.
int halving_flap_size(const GameState& state, const HalvingSetup& setup);

/// S_i with the configured separator. Throws StrategyError when G is outside the provider's class.
std::unique_ptr<StrategyAgent> s_agent(const ColoredGraph& g, StrategyConfig config);
/// S*_i; needs a similar-flap bound s.
std::unique_ptr<StrategyAgent> s_star_agent(const ColoredGraph& g, StrategyConfig config);

enum class DepthRule { Lemma36, Lemma52, Lemma53 };
/// Lemma36: ceil(log(n/m)/log(1/eps)); Lemma52: ceil(log(n/(s+1))/log(1/eps));
/// Lemma53: a = 2 log n / log(1/eps) + 1. Depths are clamped at 0.
double choose_depth(double n, double m_or_s, double eps, DepthRule rule = DepthRule::Lemma36);

using BoundParams = std::map<std::string, double>;
/// Closed-form round bounds by name; throws std::invalid_argument on an unknown
/// name or a missing parameter. Logarithms are base 2.
double bound(const std::string& name, const BoundParams& params);
std::vector<std::string> bound_names();

// --- formula synthesis ------------------------------------------------------

/// Spoiler's play against every possible Duplicator reply.
struct PlayNode {
    SpoilerMove move;
    bool survived = false;  // Duplicator lasted all rounds on this branch
    /// One entry per reply; null children mark replies that ended the game.
    std::vector<std::pair<Vertex, std::unique_ptr<PlayNode>>> replies;
};

class ExtractionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Runs a clone of `spoiler` against all replies from `start`. Throws ExtractionError past `max_nodes`.
std::unique_ptr<PlayNode> play_tree(const SpoilerAgent& spoiler, const GameState& start, long max_nodes = 2'000'000);
std::unique_ptr<PlayNode> play_tree(const SpoilerAgent& spoiler, GraphPtr g, GraphPtr gp, int rounds,
                                    long max_nodes = 2'000'000);

/// Closed NNF formula true on G and false on G' read off a winning play tree:
/// a G-move becomes an existential over the conjunction of its reply branches,
/// a G'-move a universal over their disjunction. Throws ExtractionError on
/// trees that miss replies or where Duplicator survives.
Formula extract_formula(const PlayNode& root, const ColoredGraph& g, const ColoredGraph& gp);

struct PlayTreeShape {
    int depth = 0;         // deepest branch, in rounds
    int alternations = 0;  // most side switches along a branch
    long nodes = 0;
};
PlayTreeShape shape(const PlayNode& root);

}  // namespace fodef
