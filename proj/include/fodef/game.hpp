#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "fodef/graph.hpp"
#include "json.hpp"

namespace fodef {

enum class Side { G, Gp };
inline Side other(Side s) { return s == Side::G ? Side::Gp : Side::G; }
std::string side_name(Side s);  // "G" or "G'"

struct SpoilerMove {
    Side side = Side::G;
    Vertex vertex = 0;
};

struct Round {
    Side side;
    Vertex spoiler;
    Vertex duplicator;
    Vertex x() const { return side == Side::G ? spoiler : duplicator; }  // pebble in G
    Vertex y() const { return side == Side::G ? duplicator : spoiler; }  // pebble in G'
};

enum class Status { Running, SpoilerWon, DuplicatorSurvived };
std::string status_name(Status s);

class IllegalMove : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown by step when Spoiler's side switch would exceed the alternation budget.
class AlternationBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using GraphPtr = std::shared_ptr<const ColoredGraph>;

/// Configuration of the r-round (optionally k-alternation) Ehrenfeucht game.
class GameState {
public:
    GameState(GraphPtr g, GraphPtr gp, int max_rounds, std::optional<int> alternation_budget = std::nullopt);

    const ColoredGraph& g() const { return *g_; }
    const ColoredGraph& gp() const { return *gp_; }
    const ColoredGraph& graph(Side s) const { return s == Side::G ? *g_ : *gp_; }
    GraphPtr g_ptr() const { return g_; }
    GraphPtr gp_ptr() const { return gp_; }

    int round() const { return static_cast<int>(rounds_.size()); }
    int max_rounds() const { return max_rounds_; }
    int rounds_left() const { return max_rounds_ - round(); }
    std::optional<int> alternation_budget() const { return budget_; }
    int alternations() const { return alternations_; }
    Status status() const { return status_; }
    const std::vector<Round>& rounds() const { return rounds_; }
    std::optional<Side> last_side() const;
    PartialMap pebbles() const;

    /// Whether Spoiler may play on `s` without exceeding the alternation budget.
    bool side_allowed(Side s) const;
    /// Whether the reply keeps the pebbling a partial isomorphism.
    bool consistent(SpoilerMove m, Vertex reply) const;

    /// Applies one round. Throws IllegalMove / AlternationBudgetExceeded.
    void step(SpoilerMove m, Vertex reply);

private:
    GraphPtr g_, gp_;
    int max_rounds_;
    std::optional<int> budget_;
    int alternations_ = 0;
    Status status_ = Status::Running;
    std::vector<Round> rounds_;
    std::vector<std::pair<Vertex, Vertex>> pairs_;
};

GameState new_game(GraphPtr g, GraphPtr gp, int rounds, std::optional<int> alternation_budget = std::nullopt);
GameState new_game(const ColoredGraph& g, const ColoredGraph& gp, int rounds,
                   std::optional<int> alternation_budget = std::nullopt);

class SpoilerAgent {
public:
    virtual ~SpoilerAgent() = default;
    /// Next move; Duplicator's previous replies are visible in `state`.
    virtual SpoilerMove next(const GameState& state) = 0;
    /// Copy including internal progress, used to branch over Duplicator replies.
    virtual std::unique_ptr<SpoilerAgent> clone() const = 0;
    virtual std::string name() const = 0;
    /// Optional per-round annotation recorded in transcripts.
    virtual nlohmann::json annotation() const { return nullptr; }
};

class DuplicatorAgent {
public:
    virtual ~DuplicatorAgent() = default;
    virtual Vertex reply(const GameState& state, SpoilerMove move) = 0;
    virtual std::string name() const = 0;
};

struct Transcript {
    std::vector<Round> moves;
    Status status = Status::Running;
    int alternations = 0;
    bool budget_exceeded = false;
    std::string spoiler;
    std::string duplicator;
    std::vector<nlohmann::json> annotations;

    int rounds() const { return static_cast<int>(moves.size()); }
};

nlohmann::json to_json(const Transcript& t);
Transcript transcript_from_json(const nlohmann::json& j);

/// Replays moves through a fresh state machine.
GameState replay(GraphPtr g, GraphPtr gp, const Transcript& t, int rounds,
                 std::optional<int> alternation_budget = std::nullopt);

Transcript run_match(GraphPtr g, GraphPtr gp, SpoilerAgent& spoiler, DuplicatorAgent& duplicator, int rounds,
                     std::optional<int> alternation_budget = std::nullopt);

// --- built-in Duplicators --------------------------------------------------

/// Vertices of the opposite graph that keep the pebbling a partial isomorphism.
VertexList consistent_replies(const GameState& state, SpoilerMove move);

class RandomDuplicator : public DuplicatorAgent {
public:
    explicit RandomDuplicator(std::uint64_t seed) : rng_(seed), seed_(seed) {}
    Vertex reply(const GameState& state, SpoilerMove move) override;
    std::string name() const override { return "random(" + std::to_string(seed_) + ")"; }

private:
    std::mt19937_64 rng_;
    std::uint64_t seed_;
};

/// Among consistent replies, maximizes the number of pebbles whose distance to
/// the reply equals the distance on Spoiler's side; then equal degree, then least id.
class GreedyDuplicator : public DuplicatorAgent {
public:
    Vertex reply(const GameState& state, SpoilerMove move) override;
    std::string name() const override { return "greedy"; }
};

/// Pushes moves forward along an isomorphism; needs isomorphic inputs.
class MirrorDuplicator : public DuplicatorAgent {
public:
    Vertex reply(const GameState& state, SpoilerMove move) override;
    std::string name() const override { return "mirror"; }

private:
    const ColoredGraph* cached_g_ = nullptr;
    const ColoredGraph* cached_gp_ = nullptr;
    VertexList forward_, backward_;
};

/// Reads replies from a line-oriented terminal session.
class HumanDuplicator : public DuplicatorAgent {
public:
    HumanDuplicator(std::istream& in, std::ostream& out) : in_(in), out_(out) {}
    Vertex reply(const GameState& state, SpoilerMove move) override;
    std::string name() const override { return "human"; }

private:
    std::istream& in_;
    std::ostream& out_;
};

}  // namespace fodef
