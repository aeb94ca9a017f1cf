#pragma once

#include <random>

#include "fodef/game.hpp"

namespace fodef::testing {

/// Uniformly random Spoiler, optionally restricted to one side.
class RandomSpoiler : public SpoilerAgent {
public:
    explicit RandomSpoiler(std::uint64_t seed) : rng_(seed) {}
    SpoilerMove next(const GameState& s) override {
        Side side = rng_() % 2 ? Side::G : Side::Gp;
        if (!s.side_allowed(side)) side = other(side);
        int n = s.graph(side).order();
        return {side, static_cast<Vertex>(rng_() % static_cast<unsigned>(n))};
    }
    std::unique_ptr<SpoilerAgent> clone() const override { return std::make_unique<RandomSpoiler>(*this); }
    std::string name() const override { return "random-spoiler"; }

private:
    std::mt19937_64 rng_;
};

/// Plays a fixed move list, cycling through it.
class ScriptedSpoiler : public SpoilerAgent {
public:
    explicit ScriptedSpoiler(std::vector<SpoilerMove> moves) : moves_(std::move(moves)) {}
    SpoilerMove next(const GameState& s) override { return moves_[static_cast<std::size_t>(s.round()) % moves_.size()]; }
    std::unique_ptr<SpoilerAgent> clone() const override { return std::make_unique<ScriptedSpoiler>(*this); }
    std::string name() const override { return "scripted"; }

private:
    std::vector<SpoilerMove> moves_;
};

}  // namespace fodef::testing
