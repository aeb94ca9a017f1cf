#include <cmath>

#include "doctest.h"
#include "fodef/families.hpp"
#include "fodef/oracle.hpp"
#include "fodef/strategies.hpp"

using namespace fodef;

namespace {

GraphPtr share(const ColoredGraph& g) { return std::make_shared<const ColoredGraph>(g); }

ColoredGraph disjoint(const ColoredGraph& a, const ColoredGraph& b) {
    auto edges = a.edges();
    for (auto [u, v] : b.edges()) edges.emplace_back(u + a.order(), v + a.order());
    return ColoredGraph::from_edges(a.order() + b.order(), edges);
}

ColoredGraph random_graph(std::mt19937_64& rng, int n, int percent) {
    ColoredGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (static_cast<int>(rng() % 100) < percent) g.add_edge(i, j);
    return g;
}

// Extra rounds Spoiler needs from `s` against every Duplicator, or -1 if some Duplicator survives.
int rounds_needed(const SpoilerAgent& a, const GameState& s) {
    auto r = survival_vs(a, s);
    return r.spoiler_always_wins ? r.survived + 1 - s.round() : -1;
}

double log2_via_ln(double x) { return std::log(x) / std::log(2.0); }

}  // namespace

TEST_CASE("choose_depth examples") {
    CHECK(choose_depth(96, 7, 2.0 / 3) == 7);
    CHECK(choose_depth(1, 1, 2.0 / 3) == 0);
    CHECK(choose_depth(9, 7, 2.0 / 3) == 1);
    CHECK(choose_depth(256, 0, 2.0 / 3, DepthRule::Lemma53) == doctest::Approx(28.3509).epsilon(1e-4));
    CHECK(choose_depth(2.25 * 4, 4, 2.0 / 3) == 2);
    CHECK(choose_depth(24, 2, 0.5, DepthRule::Lemma52) == 3);
    CHECK_THROWS(choose_depth(0, 1, 0.5));
    CHECK_THROWS(choose_depth(4, 1, 1.0));
}

TEST_CASE("bound examples against hand arithmetic") {
    double c3 = 4 / log2_via_ln(1.5) + 1;
    CHECK(c3 == doctest::Approx(7.838).epsilon(1e-3));
    CHECK(bound("thm41", {{"n", 16}, {"d", 3}}) == doctest::Approx(c3 * 4 + 5).epsilon(1e-12));
    CHECK(bound("thm41", {{"n", 16}, {"d", 3}}) == doctest::Approx(36.35).epsilon(1e-3));
    CHECK(bound("thm43", {{"n", 256}}) == doctest::Approx((12 / log2_via_ln(1.5) + 1) * 8 + 9).epsilon(1e-12));
    CHECK(bound("thm43", {{"n", 256}}) == doctest::Approx(181.1).epsilon(1e-3));
    double all_minor = (2 + std::sqrt(2.0)) * std::pow(5.0, 1.5) * 10 + 6 * (log2_via_ln(100) + 1) + 1;
    CHECK(bound("thm55_all", {{"n", 100}, {"H", 5}, {"Delta", 4}}) == doctest::Approx(all_minor).epsilon(1e-12));
    CHECK(bound("lemma36", {{"n", 9}, {"m", 7}, {"eps", 2.0 / 3}, {"k", 5}}) ==
          doctest::Approx(5 + 14 + log2_via_ln(9) + 2).epsilon(1e-12));
    CHECK(bound("lemma36", {{"n", 96}, {"m", 7}, {"eps", 2.0 / 3}, {"c", 1}, {"delta", 0}}) ==
          doctest::Approx(7 + 7 * 8 + log2_via_ln(96) + 2).epsilon(1e-12));
    CHECK(bound("lemma37", {{"n", 64}, {"k", 1}, {"m", 3}, {"eps", 0.5}}) == doctest::Approx(5 * 6 + 5).epsilon(1e-12));
    CHECK(bound("lemma52", {{"n", 24}, {"s", 2}, {"eps", 0.5}, {"k", 1}}) == doctest::Approx(3 + 12 + log2_via_ln(24) + 2).epsilon(1e-12));
    CHECK(bound("lemma53", {{"n", 16}, {"c", 1}, {"delta", 0.5}, {"s", 2}, {"eps", 0.5}}) ==
          doctest::Approx(4 / (1 - std::sqrt(0.5)) + 4 * 4 + 5).epsilon(1e-12));
    CHECK(bound("thm55_planar", {{"n", 64}, {"Delta", 3}}) > bound("thm55_planar", {{"n", 16}, {"Delta", 3}}));
    CHECK(bound("thm55_genus", {{"n", 64}, {"Delta", 3}, {"g", 1}, {"c", 2}}) > 16);
    CHECK_THROWS_AS(bound("thm99", {}), std::invalid_argument);
    CHECK_THROWS_AS(bound("thm41", {{"n", 16}}), std::invalid_argument);
    CHECK(bound_names().size() == 9);
}

TEST_CASE("halving examples") {
    SUBCASE("path of 7 against a split G'") {
        GameState s(share(path_graph(7)), share(disjoint(path_graph(3), path_graph(4))), 8);
        s.step({Side::G, 0}, 0);
        s.step({Side::G, 6}, 6);
        HalvingSetup h{Side::G, 0, 1, {}};
        CHECK(halving_flap_size(s, h) == 7);
        auto a = halving_agent(s, h);
        int need = rounds_needed(*a, s);
        CHECK(need >= 1);
        CHECK(need <= 3);
    }
    SUBCASE("adjacent anchors split in G' are already a win") {
        GameState s(share(path_graph(2)), share(ColoredGraph(2)), 3);
        s.step({Side::G, 0}, 0);
        s.step({Side::G, 1}, 1);
        CHECK(s.status() == Status::SpoilerWon);
        auto a = halving_agent(s, {Side::G, 0, 1, {}});
        CHECK(rounds_needed(*a, s) == 0);
    }
    SUBCASE("2C8 against C8 with one pebble per component") {
        GameState s(share(two_cycles(8)), share(cycle_graph(8)), 8);
        s.step({Side::G, 0}, 0);
        s.step({Side::G, 8}, 4);
        auto a = halving_agent(s, {Side::Gp, 0, 1, {}});
        int need = rounds_needed(*a, s);
        CHECK(need >= 1);
        CHECK(need <= 3);
    }
    SUBCASE("hypothesis violations are refused") {
        GameState s(share(cycle_graph(6)), share(cycle_graph(6)), 8);
        s.step({Side::G, 0}, 0);
        s.step({Side::G, 3}, 3);
        CHECK_THROWS_AS(halving_agent(s, {Side::G, 0, 1, {}}), StrategyError);
        CHECK_THROWS_AS(halving_agent(s, {Side::G, 0, 0, {}}), StrategyError);
        CHECK_THROWS_AS(halving_agent(s, {Side::G, 0, 5, {}}), StrategyError);
        CHECK_THROWS_AS(halving_agent(s, {Side::G, 0, 1, {1}}), StrategyError);
    }
}

TEST_CASE("property: halving wins within ceil(log2 |F|) rounds on small pairs") {
    std::mt19937_64 rng(17);
    int tested = 0;
    for (int trial = 0; trial < 400; ++trial) {
        int n = 3 + static_cast<int>(rng() % 4), m = 3 + static_cast<int>(rng() % 4);
        auto g = random_graph(rng, n, 45), h = random_graph(rng, m, 45);
        GameState s(share(g), share(h), 12);
        int pebbles = 2 + static_cast<int>(rng() % 2);
        for (int p = 0; p < pebbles && s.status() == Status::Running; ++p) {
            SpoilerMove mv{rng() % 2 ? Side::G : Side::Gp, 0};
            mv.vertex = static_cast<Vertex>(rng() % static_cast<unsigned>(s.graph(mv.side).order()));
            auto replies = consistent_replies(s, mv);
            if (replies.empty()) break;
            s.step(mv, replies[rng() % replies.size()]);
        }
        if (s.status() != Status::Running) continue;
        int R = s.round();
        for (int i = 0; i < R; ++i)
            for (int j = i + 1; j < R; ++j)
                for (unsigned mask = 0; mask < (1U << R); ++mask) {
                    if (mask & ((1U << i) | (1U << j))) continue;
                    HalvingSetup setup{Side::G, i, j, {}};
                    for (int r = 0; r < R; ++r)
                        if (mask & (1U << r)) setup.I.push_back(r);
                    for (Side side : {Side::G, Side::Gp}) {
                        setup.side = side;
                        int size = 0;
                        try {
                            size = halving_flap_size(s, setup);
                        } catch (const StrategyError&) {
                            continue;
                        }
                        auto a = halving_agent(s, setup);
                        int need = rounds_needed(*a, s);
                        CHECK(need >= 0);
                        CHECK(need <= ceil_log2(size));
                        ++tested;
                    }
                }
    }
    CHECK(tested > 50);
}

TEST_CASE("S_t examples") {
    SUBCASE("bounded-degree tree against a leaf move") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            auto g = random_bounded_tree(15, 3, seed);
            std::mt19937_64 rng(seed);
            auto h = tree_leaf_move(g, 3, rng);
            int r = static_cast<int>(std::ceil(bound("thm41", {{"n", 15}, {"d", 3}})));
            auto a = s_agent(g, tree_config(15, 3));
            GreedyDuplicator dup;
            auto t = run_match(share(g), share(h), *a, dup, r);
            CHECK(t.status == Status::SpoilerWon);
            auto tr = a->trace(replay(share(g), share(h), t, r));
            CHECK(tr.total_rounds == t.rounds());
            CHECK(tr.alternations <= 2);
        }
    }
    SUBCASE("C9 against C10 with the class-O separator") {
        double b = bound("lemma36", {{"n", 9}, {"m", 7}, {"eps", 2.0 / 3}, {"k", 5}});
        auto a = s_agent(cycle_graph(9), class_O_config(9));
        auto sv = survival_vs(*a, share(cycle_graph(9)), share(cycle_graph(10)), 30);
        CHECK(sv.spoiler_always_wins);
        CHECK(sv.survived + 1 <= b);
        ExhaustiveDuplicator dup({.max_total_order = 20});
        auto t = run_match(share(cycle_graph(9)), share(cycle_graph(10)), *a, dup, static_cast<int>(std::ceil(b)));
        CHECK(t.status == Status::SpoilerWon);
    }
    SUBCASE("disconnected G' shortcut") {
        auto g = path_graph(6);
        auto h = disjoint(path_graph(3), path_graph(3));
        auto a = s_agent(g, tree_config(6, 2));
        auto sv = survival_vs(*a, share(g), share(h), 20);
        CHECK(sv.spoiler_always_wins);
        CHECK(sv.survived + 1 <= ceil_log2(6) + 2);
        GreedyDuplicator dup;
        auto t = run_match(share(g), share(h), *a, dup, 20);
        auto tr = a->trace(replay(share(g), share(h), t, 20));
        CHECK(tr.records.front().phase == Phase::Disconnected);
    }
    SUBCASE("class preconditions") {
        CHECK_THROWS_AS(s_agent(cycle_graph(5), tree_config(5, 2)), StrategyError);
        CHECK_THROWS_AS(s_agent(complete_graph(4), class_O_config(4)), StrategyError);
        CHECK_THROWS_AS(s_agent(two_cycles(4), class_O_config(8)), StrategyError);
        CHECK_THROWS_AS(s_agent(star_graph(5), tree_config(5, 2)), StrategyError);
        StrategyConfig bad = tree_config(5, 2);
        bad.eps = {3, 2};
        CHECK_THROWS_AS(s_agent(path_graph(5), bad), StrategyError);
    }
}

TEST_CASE("property: S_t wins within the Lemma 3.6 bound with sound traces") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        int n = 8 + static_cast<int>(seed % 40);
        bool tree = seed % 2 == 0;
        ColoredGraph g = tree ? random_bounded_tree(n, 3, seed) : random_hop(n, seed);
        std::mt19937_64 rng(seed);
        ColoredGraph h = tree ? (seed % 4 ? tree_subtree_swap(g, 3, rng) : random_bounded_tree(n + 1, 3, seed))
                              : (seed % 3 ? hop_chord_flip(g, rng) : random_hop(n - 1, seed + 7));
        StrategyConfig cfg = tree ? tree_config(n, 3) : class_O_config(n);
        double b = bound("lemma36", {{"n", static_cast<double>(n)},
                                     {"m", static_cast<double>(cfg.m)},
                                     {"eps", cfg.eps.value()},
                                     {"k", static_cast<double>(cfg.separator_size())}});
        for (int d = 0; d < 3; ++d) {
            auto a = s_agent(g, cfg);
            std::unique_ptr<DuplicatorAgent> dup;
            if (d == 0) dup = std::make_unique<GreedyDuplicator>();
            else dup = std::make_unique<RandomDuplicator>(seed * 3 + static_cast<unsigned>(d));
            int r = static_cast<int>(std::ceil(b));
            auto t = run_match(share(g), share(h), *a, *dup, r);
            CHECK(t.status == Status::SpoilerWon);
            auto tr = a->trace(replay(share(g), share(h), t, r));
            CHECK(tr.total_rounds == t.rounds());
            CHECK(tr.alternations <= 2);
            CHECK(tr.lemma33_failures == 0);
            CHECK(tr.halving_overruns == 0);
            CHECK(to_json(tr)["records"].size() == tr.records.size());
        }
    }
}

TEST_CASE("S* examples") {
    int compared = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        int n = 10 + static_cast<int>(seed % 10);
        auto g = random_hop(n, seed);
        std::mt19937_64 rng(seed);
        auto h = seed % 2 ? hop_chord_flip(g, rng) : random_hop(n, seed + 100);
        int s = g.max_degree();
        auto cfg = brute_star_config(n, s, 3);
        double b = bound("lemma52", {{"n", static_cast<double>(n)}, {"s", static_cast<double>(s)}, {"eps", 2.0 / 3}, {"k", 3}});
        int r = static_cast<int>(std::ceil(b));
        auto star = s_star_agent(g, cfg);
        GreedyDuplicator dup;
        auto t = run_match(share(g), share(h), *star, dup, r);
        CHECK(t.status == Status::SpoilerWon);
        auto tr = star->trace(replay(share(g), share(h), t, r));
        CHECK(tr.alternations <= 2 * cfg.depth + 1);
        CHECK(tr.lemma33_failures == 0);

        StrategyConfig plain = cfg;
        plain.m = n;
        auto sa = s_agent(g, plain);
        GreedyDuplicator dup2;
        auto ts = run_match(share(g), share(h), *sa, dup2, r);
        auto trs = sa->trace(replay(share(g), share(h), ts, r));
        bool case2 = false;
        for (const auto& rec : trs.records) case2 |= rec.phase == Phase::Case2;
        for (const auto& rec : tr.records) case2 |= rec.phase == Phase::Case2;
        if (!case2) {
            ++compared;
            REQUIRE(ts.moves.size() == t.moves.size());
            for (std::size_t i = 0; i < t.moves.size(); ++i) {
                CHECK(ts.moves[i].side == t.moves[i].side);
                CHECK(ts.moves[i].spoiler == t.moves[i].spoiler);
                CHECK(ts.moves[i].duplicator == t.moves[i].duplicator);
            }
        }
    }
    CHECK(compared > 0);
    CHECK_THROWS_AS(s_star_agent(path_graph(5), tree_config(5, 2)), StrategyError);
}

TEST_CASE("extract_formula examples") {
    SUBCASE("C4 against C3") {
        OptimalSpoiler sp;
        auto tree = play_tree(sp, share(cycle_graph(4)), share(cycle_graph(3)), 4);
        auto f = extract_formula(*tree, cycle_graph(4), cycle_graph(3));
        auto p = analyze(f);
        CHECK(p.quantifier_rank == 2);
        CHECK(p.is_nnf);
        CHECK(free_variables(f).empty());
        CHECK(evaluate(f, cycle_graph(4)));
        CHECK_FALSE(evaluate(f, cycle_graph(3)));
    }
    SUBCASE("K_{1,2} against K_{1,3}") {
        OptimalSpoiler sp;
        auto tree = play_tree(sp, share(star_graph(3)), share(star_graph(4)), 4);
        auto f = extract_formula(*tree, star_graph(3), star_graph(4));
        CHECK(analyze(f).quantifier_rank == 3);
        CHECK(shape(*tree).depth == 3);
        CHECK(evaluate(f, star_graph(3)));
        CHECK_FALSE(evaluate(f, star_graph(4)));
    }
    SUBCASE("tree runs of S_t have at most two alternations") {
        for (std::uint64_t seed = 0; seed < 6; ++seed) {
            auto g = random_bounded_tree(6, 3, seed);
            auto h = random_bounded_tree(6, 3, seed + 50);
            if (are_isomorphic(g, h)) continue;
            auto a = s_agent(g, tree_config(6, 3));
            auto tree = play_tree(*a, share(g), share(h), 12);
            auto f = extract_formula(*tree, g, h);
            auto p = analyze(f);
            CHECK(p.alternation_number <= 2);
            CHECK(p.alternation_number == shape(*tree).alternations);
            CHECK(p.quantifier_rank == shape(*tree).depth);
            CHECK(evaluate(f, g));
            CHECK_FALSE(evaluate(f, h));
        }
    }
    SUBCASE("incomplete trees are rejected") {
        OptimalSpoiler sp;
        auto tree = play_tree(sp, share(cycle_graph(4)), share(cycle_graph(3)), 4);
        tree->replies.pop_back();
        CHECK_THROWS_AS(extract_formula(*tree, cycle_graph(4), cycle_graph(3)), ExtractionError);
        auto short_tree = play_tree(sp, share(cycle_graph(4)), share(cycle_graph(3)), 1);
        CHECK_THROWS_AS(extract_formula(*short_tree, cycle_graph(4), cycle_graph(3)), ExtractionError);
        CHECK_THROWS_AS(play_tree(sp, share(path_graph(5)), share(path_graph(6)), 6, 3), ExtractionError);
    }
}

TEST_CASE("property: formulas from optimal play match the exact rank") {
    std::mt19937_64 rng(5);
    int done = 0;
    for (int trial = 0; trial < 60; ++trial) {
        auto g = random_graph(rng, 2 + static_cast<int>(rng() % 4), 50);
        auto h = random_graph(rng, 2 + static_cast<int>(rng() % 4), 50);
        if (trial % 5 == 0) g.add_color(0, 2);
        auto d = exact_rank(g, h, std::nullopt, 5).value;
        if (!d) continue;
        OptimalSpoiler sp;
        auto tree = play_tree(sp, share(g), share(h), *d);
        auto f = extract_formula(*tree, g, h);
        auto p = analyze(f);
        CHECK(p.is_nnf);
        CHECK(p.quantifier_rank == *d);
        CHECK(evaluate(f, g));
        CHECK_FALSE(evaluate(f, h));
        ++done;
    }
    CHECK(done > 20);
}
