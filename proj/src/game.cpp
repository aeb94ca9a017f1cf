#include "fodef/game.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace fodef {

std::string side_name(Side s) { return s == Side::G ? "G" : "G'"; }

std::string status_name(Status s) {
    switch (s) {
    case Status::Running: return "running";
    case Status::SpoilerWon: return "spoiler_won";
    case Status::DuplicatorSurvived: return "duplicator_survived";
    }
    return "?";
}

GameState::GameState(GraphPtr g, GraphPtr gp, int max_rounds, std::optional<int> alternation_budget)
    : g_(std::move(g)), gp_(std::move(gp)), max_rounds_(max_rounds), budget_(alternation_budget) {
    if (!g_ || !gp_) throw std::invalid_argument("game needs two graphs");
    if (max_rounds_ < 1) throw std::invalid_argument("game needs at least one round");
    if (budget_ && *budget_ < 0) throw std::invalid_argument("alternation budget must be non-negative");
}

std::optional<Side> GameState::last_side() const {
    if (rounds_.empty()) return std::nullopt;
    return rounds_.back().side;
}

PartialMap GameState::pebbles() const { return {pairs_}; }

bool GameState::side_allowed(Side s) const {
    if (!budget_ || rounds_.empty() || rounds_.back().side == s) return true;
    return alternations_ + 1 <= *budget_;
}

bool GameState::consistent(SpoilerMove m, Vertex reply) const {
    Vertex x = m.side == Side::G ? m.vertex : reply;
    Vertex y = m.side == Side::G ? reply : m.vertex;
    if (!g_->valid(x) || !gp_->valid(y)) return false;
    return extends_partial_isomorphism(*g_, *gp_, pairs_, x, y);
}

void GameState::step(SpoilerMove m, Vertex reply) {
    if (status_ != Status::Running) throw IllegalMove("game is over");
    if (!graph(m.side).valid(m.vertex))
        throw IllegalMove("Spoiler vertex " + std::to_string(m.vertex) + " is not in " + side_name(m.side));
    if (!graph(other(m.side)).valid(reply))
        throw IllegalMove("Duplicator vertex " + std::to_string(reply) + " is not in " + side_name(other(m.side)));
    if (!side_allowed(m.side)) throw AlternationBudgetExceeded("alternation budget exceeded");
    if (!rounds_.empty() && rounds_.back().side != m.side) ++alternations_;
    bool ok = consistent(m, reply);
    rounds_.push_back({m.side, m.vertex, reply});
    pairs_.emplace_back(rounds_.back().x(), rounds_.back().y());
    if (!ok)
        status_ = Status::SpoilerWon;
    else if (round() == max_rounds_)
        status_ = Status::DuplicatorSurvived;
}

GameState new_game(GraphPtr g, GraphPtr gp, int rounds, std::optional<int> alternation_budget) {
    return GameState(std::move(g), std::move(gp), rounds, alternation_budget);
}

GameState new_game(const ColoredGraph& g, const ColoredGraph& gp, int rounds, std::optional<int> alternation_budget) {
    return new_game(std::make_shared<const ColoredGraph>(g), std::make_shared<const ColoredGraph>(gp), rounds,
                    alternation_budget);
}

nlohmann::json to_json(const Transcript& t) {
    nlohmann::json j;
    j["moves"] = nlohmann::json::array();
    for (std::size_t i = 0; i < t.moves.size(); ++i) {
        const auto& r = t.moves[i];
        nlohmann::json m{{"round", i + 1}, {"side", side_name(r.side)}, {"spoiler", r.spoiler}, {"duplicator", r.duplicator}};
        if (i < t.annotations.size() && !t.annotations[i].is_null()) m["note"] = t.annotations[i];
        j["moves"].push_back(m);
    }
    j["status"] = status_name(t.status);
    j["alternations"] = t.alternations;
    j["rounds"] = t.rounds();
    if (t.budget_exceeded) j["budget_exceeded"] = true;
    if (!t.spoiler.empty()) j["spoiler_agent"] = t.spoiler;
    if (!t.duplicator.empty()) j["duplicator_agent"] = t.duplicator;
    return j;
}

Transcript transcript_from_json(const nlohmann::json& j) {
    Transcript t;
    for (const auto& m : j.at("moves")) {
        std::string side = m.at("side").get<std::string>();
        if (side != "G" && side != "G'") throw std::invalid_argument("bad side '" + side + "'");
        t.moves.push_back({side == "G" ? Side::G : Side::Gp, m.at("spoiler").get<int>(), m.at("duplicator").get<int>()});
        t.annotations.push_back(m.value("note", nlohmann::json()));
    }
    std::string st = j.at("status").get<std::string>();
    if (st == "spoiler_won")
        t.status = Status::SpoilerWon;
    else if (st == "duplicator_survived")
        t.status = Status::DuplicatorSurvived;
    else if (st == "running")
        t.status = Status::Running;
    else
        throw std::invalid_argument("bad status '" + st + "'");
    t.alternations = j.value("alternations", 0);
    t.budget_exceeded = j.value("budget_exceeded", false);
    t.spoiler = j.value("spoiler_agent", "");
    t.duplicator = j.value("duplicator_agent", "");
    return t;
}

GameState replay(GraphPtr g, GraphPtr gp, const Transcript& t, int rounds, std::optional<int> alternation_budget) {
    GameState s(std::move(g), std::move(gp), rounds, alternation_budget);
    for (const auto& r : t.moves) s.step({r.side, r.spoiler}, r.duplicator);
    return s;
}

Transcript run_match(GraphPtr g, GraphPtr gp, SpoilerAgent& spoiler, DuplicatorAgent& duplicator, int rounds,
                     std::optional<int> alternation_budget) {
    GameState s(std::move(g), std::move(gp), rounds, alternation_budget);
    Transcript t;
    t.spoiler = spoiler.name();
    t.duplicator = duplicator.name();
    while (s.status() == Status::Running) {
        SpoilerMove m = spoiler.next(s);
        if (!s.graph(m.side).valid(m.vertex))
            throw IllegalMove("Spoiler agent " + spoiler.name() + " chose an invalid vertex");
        if (!s.side_allowed(m.side)) {
            t.budget_exceeded = true;
            break;
        }
        nlohmann::json note = spoiler.annotation();
        Vertex r = duplicator.reply(s, m);
        s.step(m, r);
        t.annotations.push_back(std::move(note));
    }
    t.moves = s.rounds();
    t.alternations = s.alternations();
    t.status = s.status() == Status::SpoilerWon ? Status::SpoilerWon : Status::DuplicatorSurvived;
    return t;
}

VertexList consistent_replies(const GameState& state, SpoilerMove move) {
    VertexList out;
    const ColoredGraph& target = state.graph(other(move.side));
    for (Vertex v = 0; v < target.order(); ++v)
        if (state.consistent(move, v)) out.push_back(v);
    return out;
}

Vertex RandomDuplicator::reply(const GameState& state, SpoilerMove move) {
    auto options = consistent_replies(state, move);
    if (options.empty()) {
        int n = state.graph(other(move.side)).order();
        return std::uniform_int_distribution<Vertex>(0, n - 1)(rng_);
    }
    return options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng_)];
}

Vertex GreedyDuplicator::reply(const GameState& state, SpoilerMove move) {
    auto options = consistent_replies(state, move);
    if (options.empty()) return 0;
    if (options.size() == 1) return options[0];
    const ColoredGraph& src = state.graph(move.side);
    const ColoredGraph& dst = state.graph(other(move.side));
    auto from_src = bfs_distances(src, move.vertex);
    // distance vectors from every pebble on Duplicator's side
    std::vector<int> want;
    std::vector<std::vector<int>> dst_dist;
    for (const auto& r : state.rounds()) {
        Vertex a = move.side == Side::G ? r.x() : r.y();
        Vertex b = move.side == Side::G ? r.y() : r.x();
        want.push_back(from_src[a]);
        dst_dist.push_back(bfs_distances(dst, b));
    }
    Vertex best = options[0];
    long best_score = -1;
    for (Vertex v : options) {
        long score = 0;
        for (std::size_t i = 0; i < want.size(); ++i) score += dst_dist[i][v] == want[i];
        score = score * 4 + (dst.degree(v) == src.degree(move.vertex) ? 2 : 0);
        if (score > best_score) {
            best_score = score;
            best = v;
        }
    }
    return best;
}

Vertex MirrorDuplicator::reply(const GameState& state, SpoilerMove move) {
    if (cached_g_ != &state.g() || cached_gp_ != &state.gp()) {
        auto iso = find_isomorphism(state.g(), state.gp());
        if (!iso) throw std::invalid_argument("mirror Duplicator needs isomorphic graphs");
        forward_ = *iso;
        backward_.assign(forward_.size(), 0);
        for (std::size_t v = 0; v < forward_.size(); ++v) backward_[forward_[v]] = static_cast<Vertex>(v);
        cached_g_ = &state.g();
        cached_gp_ = &state.gp();
    }
    return move.side == Side::G ? forward_[move.vertex] : backward_[move.vertex];
}

Vertex HumanDuplicator::reply(const GameState& state, SpoilerMove move) {
    Side target = other(move.side);
    int n = state.graph(target).order();
    out_ << "Round " << state.round() + 1 << "/" << state.max_rounds() << ": Spoiler pebbles vertex " << move.vertex
         << " in " << side_name(move.side) << ".\n";
    if (!state.rounds().empty()) {
        out_ << "Pebbles so far (G, G'):";
        for (const auto& r : state.rounds()) out_ << " (" << r.x() << "," << r.y() << ")";
        out_ << "\n";
    }
    while (true) {
        out_ << "Your vertex in " << side_name(target) << " [0-" << n - 1 << "]: " << std::flush;
        std::string line;
        if (!std::getline(in_, line)) throw std::runtime_error("input closed before the game ended");
        std::istringstream parse(line);
        long v = 0;
        std::string rest;
        if (parse >> v && !(parse >> rest) && v >= 0 && v < n) return static_cast<Vertex>(v);
        out_ << "Please enter a vertex id between 0 and " << n - 1 << ".\n";
    }
}

}  // namespace fodef
