#include <cmath>
#include <functional>

#include "agents_for_tests.hpp"
#include "doctest.h"
#include "fodef/families.hpp"
#include "fodef/formula.hpp"
#include "fodef/oracle.hpp"

using namespace fodef;

namespace {

GraphPtr share(const ColoredGraph& g) { return std::make_shared<const ColoredGraph>(g); }

// Plain minimax over every move and reply, no memo and no pruning.
bool naive_wins(const ColoredGraph& g, const ColoredGraph& h, std::vector<std::pair<Vertex, Vertex>>& pairs, int r,
                std::optional<int> k, int last, int alts) {
    if (r == 0) return false;
    for (int s = 0; s < 2; ++s) {
        if (k && last >= 0 && last != s && alts + 1 > *k) continue;
        const ColoredGraph& src = s == 0 ? g : h;
        const ColoredGraph& dst = s == 0 ? h : g;
        for (Vertex u = 0; u < src.order(); ++u) {
            bool all = true;
            for (Vertex v = 0; v < dst.order() && all; ++v) {
                pairs.emplace_back(s == 0 ? u : v, s == 0 ? v : u);
                bool lost = !check_partial_isomorphism(g, h, {pairs}) ||
                            naive_wins(g, h, pairs, r - 1, k, s, alts + (last >= 0 && last != s));
                pairs.pop_back();
                all = lost;
            }
            if (all) return true;
        }
    }
    return false;
}

std::optional<int> naive_rank(const ColoredGraph& g, const ColoredGraph& h, int r_max, std::optional<int> k = {}) {
    for (int r = 1; r <= r_max; ++r) {
        std::vector<std::pair<Vertex, Vertex>> pairs;
        if (naive_wins(g, h, pairs, r, k, -1, 0)) return r;
    }
    return std::nullopt;
}

ColoredGraph random_graph(std::mt19937_64& rng, int n) {
    ColoredGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng() % 2) g.add_edge(i, j);
    return g;
}

}  // namespace

TEST_CASE("exact rank examples") {
    CHECK(exact_rank(star_graph(3), star_graph(4)).value == 3);
    CHECK(exact_rank(cycle_graph(3), cycle_graph(4)).value == 2);
    CHECK(exact_rank(path_graph(2), path_graph(3)).value == 2);
    auto g = random_hop(7, 3);
    std::mt19937_64 rng(1);
    auto iso = exact_rank(g, random_relabel(g, rng), std::nullopt, 4);
    CHECK_FALSE(iso.value.has_value());
    CHECK(iso.r_max == 4);
}

TEST_CASE("budget is explicit") {
    CHECK_THROWS_AS(exact_rank(path_graph(9), path_graph(9)), BudgetExceeded);
    CHECK_THROWS_AS(exact_rank(path_graph(3), path_graph(4), std::nullopt, 9), BudgetExceeded);
    CHECK_THROWS_AS(exact_rank(path_graph(6), path_graph(7), std::nullopt, 8, {.max_total_order = 16, .max_nodes = 5}),
                    BudgetExceeded);
}

TEST_CASE("property: memoized search agrees with plain minimax") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 120; ++trial) {
        int n = 1 + static_cast<int>(rng() % 4), m = 1 + static_cast<int>(rng() % 4);
        auto g = random_graph(rng, n), h = random_graph(rng, m);
        if (trial % 4 == 0) g.add_color(0, 1);
        std::optional<int> k;
        if (trial % 3 == 0) k = static_cast<int>(rng() % 2);
        CHECK(exact_rank(g, h, k, 4).value == naive_rank(g, h, 4, k));
    }
}

TEST_CASE("property: symmetry and alternation monotonicity") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 60; ++trial) {
        auto g = random_graph(rng, 2 + static_cast<int>(rng() % 4));
        auto h = random_graph(rng, 2 + static_cast<int>(rng() % 4));
        auto d = exact_rank(g, h, std::nullopt, 6).value;
        CHECK(d == exact_rank(h, g, std::nullopt, 6).value);
        std::optional<int> prev;
        for (int k = 0; k <= 3; ++k) {
            auto dk = exact_rank(g, h, k, 6).value;
            CHECK(dk == exact_rank(h, g, k, 6).value);
            if (d && dk) CHECK(*dk >= *d);
            if (!d) CHECK_FALSE(dk);
            if (prev && dk) CHECK(*prev >= *dk);
            if (prev) CHECK(dk);
            prev = dk;
        }
    }
}

TEST_CASE("property: optimal Spoiler needs exactly one round more than Duplicator survives") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        auto g = random_graph(rng, 2 + static_cast<int>(rng() % 4));
        auto h = random_graph(rng, 2 + static_cast<int>(rng() % 4));
        auto d = exact_rank(g, h, std::nullopt, 6).value;
        if (!d) continue;
        OptimalSpoiler spoiler;
        auto s = survival_vs(spoiler, share(g), share(h), 6);
        CHECK(s.spoiler_always_wins);
        CHECK(s.survived + 1 == *d);
    }
}

TEST_CASE("property: no Spoiler beats the exhaustive Duplicator below the exact rank") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        auto g = random_graph(rng, 3 + static_cast<int>(rng() % 3));
        auto h = random_graph(rng, 3 + static_cast<int>(rng() % 3));
        auto d = exact_rank(g, h, std::nullopt, 6).value;
        int r = d ? *d - 1 : 6;
        if (r < 1) continue;
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            fodef::testing::RandomSpoiler spoiler(seed);
            ExhaustiveDuplicator dup;
            CHECK(run_match(share(g), share(h), spoiler, dup, r).status == Status::DuplicatorSurvived);
        }
        OptimalSpoiler best;
        ExhaustiveDuplicator dup;
        CHECK(run_match(share(g), share(h), best, dup, r).status == Status::DuplicatorSurvived);
    }
}

TEST_CASE("survival against optimal Spoiler on C3 vs C4") {
    OptimalSpoiler spoiler;
    CHECK(survival_vs(spoiler, share(cycle_graph(3)), share(cycle_graph(4)), 5).survived == 1);
}

TEST_CASE("defining rank lower bounds") {
    auto k1 = defining_rank_lb(complete_graph(1), 2);
    CHECK(k1.value == 2);
    REQUIRE(k1.witness);
    CHECK(k1.witness->order() == 2);
    auto p4 = defining_rank_lb(path_graph(4), 5);
    CHECK(p4.value <= std::log2(4.0) + 3);
    CHECK(p4.value >= 3);
    auto p5 = defining_rank_lb(path_graph(5), 6, 1);
    CHECK(p5.value < std::log2(5.0) + 3);
    CHECK_THROWS_AS(defining_rank_lb(path_graph(5), 9), BudgetExceeded);
}

TEST_CASE("path and cycle lower bounds hold on in-budget pairs") {
    for (int n = 3; n <= 7; ++n)
        for (int m = n + 1; m <= 7; ++m) {
            auto dp = exact_rank(path_graph(n), path_graph(m)).value;
            auto dc = exact_rank(cycle_graph(n), cycle_graph(m)).value;
            REQUIRE(dp);
            REQUIRE(dc);
            CHECK(*dp > std::log2(n - 1.0) - 2);
            CHECK(*dp < std::log2(static_cast<double>(n)) + 3);
            CHECK(*dc > std::log2(static_cast<double>(n)));
        }
}

TEST_CASE("isolated-edge graphs are separated at rank 3 once there are two edges") {
    auto f = parse_formula("ex x. ex z. (~eq(x,z) & ~adj(x,z) & ex w. adj(x,w) & ex w. adj(z,w))");
    CHECK(analyze(f).quantifier_rank == 3);
    for (int m = 0; m <= 4; ++m) CHECK(evaluate(f, triv_graph(m, 2 * m + 2)) == (m >= 2));
    CHECK(exact_rank(triv_graph(1, 2), triv_graph(0, 4)).value == 2);
    CHECK(exact_rank(triv_graph(2, 4), triv_graph(1, 6)).value == 3);
}
