#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "fodef/game.hpp"

namespace fodef {

struct SearchBudget {
    int max_total_order = 16;  // |G| + |G'|
    int max_rounds = 8;
    long max_nodes = 50'000'000;

    /// Defaults overridden by FODEF_SEARCH_BUDGET="order[,rounds[,nodes]]".
    static SearchBudget from_env();
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Memoized minimax over Ehrenfeucht game configurations of one graph pair.
class GameSolver {
public:
    GameSolver(GraphPtr g, GraphPtr gp, std::optional<int> alternation_budget = std::nullopt,
               long max_nodes = SearchBudget{}.max_nodes);

    /// Whether Spoiler wins within `rounds` further rounds from the state's configuration.
    bool spoiler_wins(const GameState& state, int rounds);
    /// Smallest r <= cap with spoiler_wins(state, r), if any.
    std::optional<int> min_rounds(const GameState& state, int cap);
    /// Lexicographically first move (G before G', then vertex id) winning within `rounds`.
    std::optional<SpoilerMove> winning_move(const GameState& state, int rounds);

    long nodes() const { return nodes_; }
    long memo_hits() const { return hits_; }
    const ColoredGraph& g() const { return *g_; }
    const ColoredGraph& gp() const { return *gp_; }

private:
    struct Config {
        std::vector<std::pair<Vertex, Vertex>> pairs;
        int last_side = -1;
        int alternations = 0;
    };
    struct Entry {
        int win_at = 1 << 20;
        int lose_at = -1;
    };

    Config config_of(const GameState& s) const;
    bool win(Config& c, int rounds);
    bool move_wins(Config& c, Side side, Vertex u, int rounds);
    std::string key(const Config& c) const;

    GraphPtr g_, gp_;
    std::optional<int> budget_;
    long max_nodes_;
    std::vector<int> twins_g_, twins_gp_;
    std::unordered_map<std::string, Entry> memo_;
    long nodes_ = 0, hits_ = 0;
};

struct RankResult {
    std::optional<int> value;  // empty: Duplicator survives r_max rounds
    std::optional<int> alternation_budget;
    int r_max = 0;
    long nodes = 0;
    long memo_hits = 0;
    std::optional<SpoilerMove> first_move;
};

/// D(G,G') (or D_k with an alternation budget) by iterative deepening.
RankResult exact_rank(const ColoredGraph& g, const ColoredGraph& gp, std::optional<int> alternation_budget = std::nullopt,
                      int r_max = 8, SearchBudget budget = SearchBudget::from_env());

nlohmann::json to_json(const RankResult& r, const std::string& g_name, const std::string& gp_name);

/// Replies maximizing the number of rounds Spoiler still needs under optimal play.
class ExhaustiveDuplicator : public DuplicatorAgent {
public:
    explicit ExhaustiveDuplicator(SearchBudget budget = SearchBudget::from_env()) : budget_(budget) {}
    Vertex reply(const GameState& state, SpoilerMove move) override;
    std::string name() const override { return "exhaustive"; }

private:
    GameSolver& solver(const GameState& state);
    SearchBudget budget_;
    std::unique_ptr<GameSolver> solver_;
};

/// Spoiler playing a lexicographically first optimal move.
class OptimalSpoiler : public SpoilerAgent {
public:
    explicit OptimalSpoiler(SearchBudget budget = SearchBudget::from_env()) : budget_(budget) {}
    SpoilerMove next(const GameState& state) override;
    std::unique_ptr<SpoilerAgent> clone() const override;
    std::string name() const override { return "optimal"; }

private:
    SearchBudget budget_;
    std::shared_ptr<GameSolver> solver_;
};

/// Duplicator by name: "random" / "random:<seed>", "greedy", "exhaustive", "mirror".
std::unique_ptr<DuplicatorAgent> builtin_duplicator(const std::string& name);

struct SurvivalResult {
    int survived = 0;           // rounds Duplicator completes on the best branch
    bool spoiler_always_wins = true;
    long nodes = 0;
};

/// Best Duplicator play against a fixed Spoiler agent, over all consistent replies.
SurvivalResult survival_vs(const SpoilerAgent& spoiler, GraphPtr g, GraphPtr gp, int r_max,
                           std::optional<int> alternation_budget = std::nullopt,
                           SearchBudget budget = SearchBudget::from_env());
/// Same, starting from an existing state (pebbles already placed).
SurvivalResult survival_vs(const SpoilerAgent& spoiler, const GameState& start,
                           SearchBudget budget = SearchBudget::from_env());

struct DefiningRankBound {
    int value = 0;                  // max exact rank found
    std::optional<ColoredGraph> witness;
    bool saturated = false;         // some G' survived r_max rounds: D(G) > r_max
};

/// Lower bound on D(G): max of exact_rank(G, G') over non-isomorphic G' of order <= order_max.
DefiningRankBound defining_rank_lb(const ColoredGraph& g, int order_max,
                                   std::optional<int> alternation_budget = std::nullopt, int r_max = 8,
                                   SearchBudget budget = SearchBudget::from_env());

}  // namespace fodef
