#include <sstream>

#include "agents_for_tests.hpp"
#include "doctest.h"
#include "fodef/families.hpp"
#include "fodef/oracle.hpp"

using namespace fodef;
using fodef::testing::RandomSpoiler;
using fodef::testing::ScriptedSpoiler;

namespace {
GraphPtr share(const ColoredGraph& g) { return std::make_shared<const ColoredGraph>(g); }
}  // namespace

TEST_CASE("new game examples") {
    auto s = new_game(cycle_graph(3), cycle_graph(4), 3);
    CHECK(s.status() == Status::Running);
    CHECK(s.round() == 0);
    CHECK(s.pebbles().pairs.empty());
    auto same = new_game(cycle_graph(4), cycle_graph(4), 1, 0);
    CHECK(same.status() == Status::Running);
    CHECK_THROWS(new_game(cycle_graph(3), cycle_graph(4), 0));
}

TEST_CASE("C3 vs C4: distance-two pebbles in C4 beat every reply by round 2") {
    auto g = share(cycle_graph(3)), gp = share(cycle_graph(4));
    for (Vertex a = 0; a < 3; ++a)
        for (Vertex b = 0; b < 3; ++b) {
            GameState s(g, gp, 3);
            s.step({Side::Gp, 0}, a);
            CHECK(s.status() == Status::Running);
            s.step({Side::Gp, 2}, b);
            CHECK(s.status() == Status::SpoilerWon);
        }
}

TEST_CASE("equality condition") {
    auto s = new_game(cycle_graph(4), cycle_graph(4), 3);
    s.step({Side::G, 1}, 1);
    s.step({Side::G, 1}, 1);
    CHECK(s.status() == Status::Running);
    s.step({Side::G, 1}, 2);
    CHECK(s.status() == Status::SpoilerWon);
    CHECK_THROWS_AS(s.step({Side::G, 0}, 0), IllegalMove);
    auto t = new_game(cycle_graph(4), cycle_graph(4), 3);
    CHECK_THROWS_AS(t.step({Side::G, 9}, 0), IllegalMove);
    CHECK_THROWS_AS(t.step({Side::G, 0}, -1), IllegalMove);
}

TEST_CASE("survival after the last round") {
    auto s = new_game(path_graph(3), path_graph(3), 2);
    s.step({Side::G, 0}, 0);
    s.step({Side::Gp, 1}, 1);
    CHECK(s.status() == Status::DuplicatorSurvived);
}

TEST_CASE("optimal Spoiler beats exhaustive Duplicator on K_{1,2} vs K_{1,3} in exactly 3 rounds") {
    OptimalSpoiler spoiler;
    ExhaustiveDuplicator dup;
    auto t = run_match(share(star_graph(3)), share(star_graph(4)), spoiler, dup, 3);
    CHECK(t.status == Status::SpoilerWon);
    CHECK(t.rounds() == 3);
}

TEST_CASE("mirror Duplicator survives on isomorphic inputs") {
    std::mt19937_64 rng(2);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto g = random_hop(9, seed);
        auto h = random_relabel(g, rng);
        RandomSpoiler spoiler(seed);
        MirrorDuplicator dup;
        auto t = run_match(share(g), share(h), spoiler, dup, 12);
        CHECK(t.status == Status::DuplicatorSurvived);
        CHECK(t.rounds() == 12);
    }
    MirrorDuplicator dup;
    auto s = new_game(cycle_graph(3), cycle_graph(4), 2);
    CHECK_THROWS(dup.reply(s, {Side::G, 0}));
}

TEST_CASE("alternation budget is enforced as Duplicator survival") {
    ScriptedSpoiler spoiler({{Side::G, 0}, {Side::Gp, 1}, {Side::G, 2}, {Side::Gp, 3}});
    GreedyDuplicator dup;
    auto t = run_match(share(cycle_graph(6)), share(cycle_graph(6)), spoiler, dup, 6, 2);
    CHECK(t.budget_exceeded);
    CHECK(t.status == Status::DuplicatorSurvived);
    CHECK(t.alternations == 2);
    auto s = new_game(cycle_graph(6), cycle_graph(6), 6, 0);
    s.step({Side::G, 0}, 0);
    CHECK_THROWS_AS(s.step({Side::Gp, 0}, 0), AlternationBudgetExceeded);
}

TEST_CASE("property: replay determinism and alternation accounting") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto g = share(random_bounded_tree(8, 3, seed));
        auto gp = share(random_bounded_tree(8, 3, seed + 1000));
        RandomSpoiler spoiler(seed);
        RandomDuplicator dup(seed);
        auto t = run_match(g, gp, spoiler, dup, 6);
        auto back = transcript_from_json(to_json(t));
        auto s = replay(g, gp, back, 6);
        Status want = t.status;
        CHECK(s.status() == want);
        int switches = 0;
        for (std::size_t i = 1; i < t.moves.size(); ++i) switches += t.moves[i].side != t.moves[i - 1].side;
        CHECK(t.alternations == switches);
        CHECK(back.alternations == t.alternations);
    }
}

TEST_CASE("greedy Duplicator survives two rounds of C5 vs C6 against random Spoilers") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        RandomSpoiler spoiler(seed);
        GreedyDuplicator dup;
        auto t = run_match(share(cycle_graph(5)), share(cycle_graph(6)), spoiler, dup, 6);
        CHECK((t.status == Status::DuplicatorSurvived || t.rounds() >= 3));
    }
}

TEST_CASE("exhaustive Duplicator survives exactly one round of C3 vs C4") {
    OptimalSpoiler spoiler;
    ExhaustiveDuplicator dup;
    auto t = run_match(share(cycle_graph(3)), share(cycle_graph(4)), spoiler, dup, 5);
    CHECK(t.status == Status::SpoilerWon);
    CHECK(t.rounds() - 1 == 1);
}

TEST_CASE("human Duplicator validates input") {
    std::istringstream in("x\n9\n 2 \n");
    std::ostringstream out;
    HumanDuplicator dup(in, out);
    auto s = new_game(cycle_graph(4), cycle_graph(4), 2);
    CHECK(dup.reply(s, {Side::G, 1}) == 2);
    CHECK(out.str().find("Spoiler pebbles vertex 1 in G") != std::string::npos);
    CHECK(out.str().find("between 0 and 3") != std::string::npos);
    std::istringstream empty("");
    HumanDuplicator gone(empty, out);
    CHECK_THROWS(gone.reply(s, {Side::G, 1}));
}

TEST_CASE("builtin Duplicator names") {
    CHECK(builtin_duplicator("greedy")->name() == "greedy");
    CHECK(builtin_duplicator("random:5")->name() == "random(5)");
    CHECK(builtin_duplicator("exhaustive")->name() == "exhaustive");
    CHECK_THROWS(builtin_duplicator("clever"));
    ExhaustiveDuplicator small({.max_total_order = 6});
    auto s = new_game(cycle_graph(4), cycle_graph(5), 2);
    CHECK_THROWS_AS(small.reply(s, {Side::G, 0}), BudgetExceeded);
}
