#include "fodef/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "fodef/families.hpp"

namespace fodef {

SearchBudget SearchBudget::from_env() {
    SearchBudget b;
    const char* env = std::getenv("FODEF_SEARCH_BUDGET");
    if (!env || !*env) return b;
    std::istringstream in(env);
    std::string part;
    std::vector<long> values;
    while (std::getline(in, part, ',')) {
        try {
            values.push_back(std::stol(part));
        } catch (const std::exception&) {
            throw std::invalid_argument("FODEF_SEARCH_BUDGET must look like order[,rounds[,nodes]]");
        }
    }
    if (values.size() > 0) b.max_total_order = static_cast<int>(values[0]);
    if (values.size() > 1) b.max_rounds = static_cast<int>(values[1]);
    if (values.size() > 2) b.max_nodes = values[2];
    return b;
}

GameSolver::GameSolver(GraphPtr g, GraphPtr gp, std::optional<int> alternation_budget, long max_nodes)
    : g_(std::move(g)), gp_(std::move(gp)), budget_(alternation_budget), max_nodes_(max_nodes) {
    twins_g_ = twin_classes(*g_);
    twins_gp_ = twin_classes(*gp_);
}

GameSolver::Config GameSolver::config_of(const GameState& s) const {
    Config c;
    c.pairs = s.pebbles().pairs;
    if (auto side = s.last_side()) c.last_side = *side == Side::G ? 0 : 1;
    c.alternations = s.alternations();
    return c;
}

std::string GameSolver::key(const Config& c) const {
    auto pairs = c.pairs;
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    std::string k;
    k.reserve(pairs.size() * 2 + 2);
    for (auto [x, y] : pairs) {
        k.push_back(static_cast<char>(x));
        k.push_back(static_cast<char>(y));
    }
    if (budget_) {
        k.push_back(static_cast<char>(100 + c.last_side));
        k.push_back(static_cast<char>(c.alternations));
    }
    return k;
}

bool GameSolver::move_wins(Config& c, Side side, Vertex u, int rounds) {
    const ColoredGraph& dst = side == Side::G ? *gp_ : *g_;
    const auto& twins = side == Side::G ? twins_gp_ : twins_g_;
    std::vector<char> pebbled(static_cast<std::size_t>(dst.order()), 0);
    for (auto [x, y] : c.pairs) pebbled[side == Side::G ? y : x] = 1;
    std::vector<char> class_seen(static_cast<std::size_t>(dst.order()), 0);
    const int saved_side = c.last_side, saved_alt = c.alternations;
    const int s = side == Side::G ? 0 : 1;
    for (Vertex v = 0; v < dst.order(); ++v) {
        if (pebbled[v] || class_seen[twins[v]]) continue;
        class_seen[twins[v]] = 1;
        Vertex x = side == Side::G ? u : v, y = side == Side::G ? v : u;
        if (!extends_partial_isomorphism(*g_, *gp_, c.pairs, x, y)) continue;
        c.pairs.emplace_back(x, y);
        if (c.last_side >= 0 && c.last_side != s) ++c.alternations;
        c.last_side = s;
        bool won = win(c, rounds - 1);
        c.pairs.pop_back();
        c.last_side = saved_side;
        c.alternations = saved_alt;
        if (!won) return false;
    }
    return true;
}

bool GameSolver::win(Config& c, int rounds) {
    if (rounds <= 0) return false;
    if (++nodes_ > max_nodes_) throw BudgetExceeded("game search exceeded its node budget");
    std::string k = key(c);
    auto it = memo_.find(k);
    if (it != memo_.end()) {
        if (rounds >= it->second.win_at) {
            ++hits_;
            return true;
        }
        if (rounds <= it->second.lose_at) {
            ++hits_;
            return false;
        }
    }
    bool result = false;
    for (Side side : {Side::G, Side::Gp}) {
        const int s = side == Side::G ? 0 : 1;
        if (budget_ && c.last_side >= 0 && c.last_side != s && c.alternations + 1 > *budget_) continue;
        const ColoredGraph& src = side == Side::G ? *g_ : *gp_;
        const auto& twins = side == Side::G ? twins_g_ : twins_gp_;
        std::vector<char> pebbled(static_cast<std::size_t>(src.order()), 0);
        for (auto [x, y] : c.pairs) pebbled[side == Side::G ? x : y] = 1;
        std::vector<char> class_seen(static_cast<std::size_t>(src.order()), 0);
        for (Vertex u = 0; u < src.order() && !result; ++u) {
            if (pebbled[u] || class_seen[twins[u]]) continue;
            class_seen[twins[u]] = 1;
            result = move_wins(c, side, u, rounds);
        }
        if (result) break;
    }
    Entry& e = memo_[k];
    if (result)
        e.win_at = std::min(e.win_at, rounds);
    else
        e.lose_at = std::max(e.lose_at, rounds);
    return result;
}

bool GameSolver::spoiler_wins(const GameState& state, int rounds) {
    if (state.status() == Status::SpoilerWon) return true;
    Config c = config_of(state);
    return win(c, rounds);
}

std::optional<int> GameSolver::min_rounds(const GameState& state, int cap) {
    if (state.status() == Status::SpoilerWon) return 0;
    for (int r = 1; r <= cap; ++r)
        if (spoiler_wins(state, r)) return r;
    return std::nullopt;
}

std::optional<SpoilerMove> GameSolver::winning_move(const GameState& state, int rounds) {
    if (rounds <= 0 || state.status() != Status::Running) return std::nullopt;
    Config c = config_of(state);
    for (Side side : {Side::G, Side::Gp}) {
        if (!state.side_allowed(side)) continue;
        const ColoredGraph& src = state.graph(side);
        std::vector<char> pebbled(static_cast<std::size_t>(src.order()), 0);
        for (auto [x, y] : c.pairs) pebbled[side == Side::G ? x : y] = 1;
        for (Vertex u = 0; u < src.order(); ++u)
            if (!pebbled[u] && move_wins(c, side, u, rounds)) return SpoilerMove{side, u};
    }
    return std::nullopt;
}

RankResult exact_rank(const ColoredGraph& g, const ColoredGraph& gp, std::optional<int> alternation_budget, int r_max,
                      SearchBudget budget) {
    if (g.order() + gp.order() > budget.max_total_order)
        throw BudgetExceeded("combined order " + std::to_string(g.order() + gp.order()) + " exceeds the search budget " +
                             std::to_string(budget.max_total_order));
    if (r_max > budget.max_rounds)
        throw BudgetExceeded("round limit " + std::to_string(r_max) + " exceeds the search budget " +
                             std::to_string(budget.max_rounds));
    if (r_max < 1) throw std::invalid_argument("r_max must be positive");
    auto gptr = std::make_shared<const ColoredGraph>(g);
    auto gpptr = std::make_shared<const ColoredGraph>(gp);
    GameSolver solver(gptr, gpptr, alternation_budget, budget.max_nodes);
    RankResult res;
    res.alternation_budget = alternation_budget;
    res.r_max = r_max;
    for (int r = 1; r <= r_max; ++r) {
        GameState s(gptr, gpptr, r, alternation_budget);
        if (solver.spoiler_wins(s, r)) {
            res.value = r;
            res.first_move = solver.winning_move(s, r);
            break;
        }
    }
    res.nodes = solver.nodes();
    res.memo_hits = solver.memo_hits();
    return res;
}

nlohmann::json to_json(const RankResult& r, const std::string& g_name, const std::string& gp_name) {
    nlohmann::json j;
    j["G"] = g_name;
    j["G2"] = gp_name;
    j["k"] = r.alternation_budget ? nlohmann::json(*r.alternation_budget) : nlohmann::json(nullptr);
    j["rank"] = r.value ? nlohmann::json(*r.value) : nlohmann::json("not within budget");
    j["r_max"] = r.r_max;
    j["nodes"] = r.nodes;
    if (r.first_move) j["first_move"] = {{"side", side_name(r.first_move->side)}, {"vertex", r.first_move->vertex}};
    return j;
}

GameSolver& ExhaustiveDuplicator::solver(const GameState& state) {
    if (!solver_ || &solver_->g() != &state.g() || &solver_->gp() != &state.gp()) {
        if (state.g().order() + state.gp().order() > budget_.max_total_order)
            throw BudgetExceeded("exhaustive Duplicator refuses graphs above the search budget");
        solver_ = std::make_unique<GameSolver>(state.g_ptr(), state.gp_ptr(), state.alternation_budget(),
                                               budget_.max_nodes);
    }
    return *solver_;
}

Vertex ExhaustiveDuplicator::reply(const GameState& state, SpoilerMove move) {
    GameSolver& s = solver(state);
    auto options = consistent_replies(state, move);
    if (options.empty()) return 0;
    const int remaining = state.rounds_left() - 1;
    const int survive = 1 << 20;
    Vertex best = options[0];
    int best_value = -1;
    for (Vertex v : options) {
        GameState t = state;
        t.step(move, v);
        int value = remaining <= 0 ? survive : s.min_rounds(t, remaining).value_or(survive);
        if (value > best_value) {
            best_value = value;
            best = v;
        }
        if (value == survive) break;
    }
    return best;
}

SpoilerMove OptimalSpoiler::next(const GameState& state) {
    if (!solver_ || &solver_->g() != &state.g() || &solver_->gp() != &state.gp()) {
        if (state.g().order() + state.gp().order() > budget_.max_total_order)
            throw BudgetExceeded("optimal Spoiler refuses graphs above the search budget");
        solver_ = std::make_shared<GameSolver>(state.g_ptr(), state.gp_ptr(), state.alternation_budget(),
                                               budget_.max_nodes);
    }
    for (int r = 1; r <= state.rounds_left(); ++r)
        if (auto m = solver_->winning_move(state, r)) return *m;
    return {state.side_allowed(Side::G) ? Side::G : Side::Gp, 0};
}

std::unique_ptr<SpoilerAgent> OptimalSpoiler::clone() const { return std::make_unique<OptimalSpoiler>(*this); }

std::unique_ptr<DuplicatorAgent> builtin_duplicator(const std::string& name) {
    if (name == "greedy") return std::make_unique<GreedyDuplicator>();
    if (name == "exhaustive") return std::make_unique<ExhaustiveDuplicator>();
    if (name == "mirror") return std::make_unique<MirrorDuplicator>();
    if (name == "human") return std::make_unique<HumanDuplicator>(std::cin, std::cout);
    if (name == "random") return std::make_unique<RandomDuplicator>(0);
    if (name.rfind("random:", 0) == 0) {
        try {
            return std::make_unique<RandomDuplicator>(std::stoull(name.substr(7)));
        } catch (const std::exception&) {
        }
    }
    throw std::invalid_argument("unknown Duplicator '" + name + "'");
}

namespace {

struct SurvivalSearch {
    SearchBudget budget;
    long nodes = 0;

    // Rounds Duplicator completes at best; max_rounds means survival.
    int explore(const GameState& state, SpoilerAgent& agent) {
        SpoilerMove m = agent.next(state);
        if (!state.side_allowed(m.side)) return state.max_rounds();
        if (!state.graph(m.side).valid(m.vertex)) throw IllegalMove("Spoiler agent chose an invalid vertex");
        int best = state.round();  // no consistent reply: Spoiler wins this round
        for (Vertex v : consistent_replies(state, m)) {
            if (++nodes > budget.max_nodes) throw BudgetExceeded("survival search exceeded its node budget");
            GameState child = state;
            child.step(m, v);
            int got = child.status() == Status::DuplicatorSurvived ? child.max_rounds() : explore(child, *agent.clone());
            best = std::max(best, got);
            if (best == state.max_rounds()) break;
        }
        return best;
    }
};

}  // namespace

SurvivalResult survival_vs(const SpoilerAgent& spoiler, const GameState& start, SearchBudget budget) {
    SurvivalSearch search{budget};
    SurvivalResult r;
    if (start.status() != Status::Running) {
        r.survived = start.status() == Status::SpoilerWon ? start.round() - 1 : start.max_rounds();
        r.spoiler_always_wins = start.status() == Status::SpoilerWon;
        return r;
    }
    r.survived = search.explore(start, *spoiler.clone());
    r.spoiler_always_wins = r.survived < start.max_rounds();
    r.nodes = search.nodes;
    return r;
}

SurvivalResult survival_vs(const SpoilerAgent& spoiler, GraphPtr g, GraphPtr gp, int r_max,
                           std::optional<int> alternation_budget, SearchBudget budget) {
    return survival_vs(spoiler, GameState(std::move(g), std::move(gp), r_max, alternation_budget), budget);
}

DefiningRankBound defining_rank_lb(const ColoredGraph& g, int order_max, std::optional<int> alternation_budget,
                                   int r_max, SearchBudget budget) {
    if (order_max > enumeration_cap) throw BudgetExceeded("witness order is capped at 8");
    if (g.order() + order_max > budget.max_total_order)
        throw BudgetExceeded("graph plus witness order exceeds the search budget");
    DefiningRankBound out;
    for (int n = 1; n <= order_max; ++n)
        for_each_graph(n, false, [&](const ColoredGraph& h) {
            if (are_isomorphic(g, h)) return;
            auto r = exact_rank(g, h, alternation_budget, r_max, budget);
            if (!r.value) {
                out.saturated = true;
                if (!out.witness || out.value <= r_max) {
                    out.value = r_max + 1;
                    out.witness = h;
                }
                return;
            }
            if (*r.value > out.value) {
                out.value = *r.value;
                out.witness = h;
            }
        });
    return out;
}

}  // namespace fodef
