#include "doctest.h"
#include "fodef/families.hpp"

using namespace fodef;

TEST_CASE("named family examples") {
    auto s = star_graph(4);
    CHECK(s.order() == 4);
    CHECK(s.degree(0) == 3);
    auto t = triv_graph(2, 4);
    CHECK(t.order() == 8);
    CHECK(t.size() == 2);
    CHECK(t.max_degree() == 1);
    CHECK(path_graph(5).size() == 4);
    CHECK(cycle_graph(5).size() == 5);
    CHECK(two_cycles(4).order() == 8);
    CHECK(components(two_cycles(4)).size() == 2);
    CHECK_THROWS(cycle_graph(2));
    CHECK_THROWS(star_graph(1));
    CHECK(generate({.family = Family::Star, .n = 5}) == star_graph(5));
    CHECK(family_from_name("two_cycles") == Family::TwoCycles);
    CHECK_THROWS(family_from_name("wheel"));
}

TEST_CASE("enumeration counts match the unlabeled graph sequence") {
    const int all[] = {0, 1, 2, 4, 11, 34, 156, 1044};
    const int connected[] = {0, 1, 1, 2, 6, 21, 112, 853};
    for (int n = 1; n <= 7; ++n) {
        CHECK(enumerate_graphs(n).size() == static_cast<std::size_t>(all[n]));
        CHECK(enumerate_graphs(n, true).size() == static_cast<std::size_t>(connected[n]));
    }
    CHECK(enumerate_graphs(1)[0].order() == 1);
    CHECK_THROWS(enumerate_graphs(9));
}

TEST_CASE("enumerated graphs are pairwise non-isomorphic") {
    for (int n = 1; n <= 5; ++n) {
        auto gs = enumerate_graphs(n);
        for (std::size_t i = 0; i < gs.size(); ++i)
            for (std::size_t j = i + 1; j < gs.size(); ++j) CHECK_FALSE(are_isomorphic(gs[i], gs[j]));
    }
}

TEST_CASE("property: random bounded trees") {
    for (int d : {2, 3, 4}) {
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            int n = 1 + static_cast<int>(seed * 17 % 200);
            auto t = random_bounded_tree(n, d, seed);
            CHECK(t.order() == n);
            CHECK(t.size() == n - 1);
            CHECK(is_connected(t));
            CHECK(t.max_degree() <= d);
        }
    }
    CHECK(random_bounded_tree(512, 3, 1).max_degree() <= 3);
}

TEST_CASE("property: random HOP graphs keep the boundary cycle") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        int n = 3 + static_cast<int>(seed * 7 % 120);
        auto g = random_hop(n, seed);
        for (int i = 0; i < n; ++i) CHECK(g.adjacent(i, (i + 1) % n));
        CHECK(g.size() <= 2 * n - 3);
    }
}

TEST_CASE("perturbations give non-isomorphic graphs of the same order") {
    std::mt19937_64 rng(4);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto t = random_bounded_tree(30, 3, seed);
        auto a = tree_leaf_move(t, 3, rng);
        auto b = tree_subtree_swap(t, 3, rng);
        for (const auto& h : {a, b}) {
            CHECK(h.order() == 30);
            CHECK(is_connected(h));
            CHECK(h.size() == 29);
            CHECK(h.max_degree() <= 3);
            CHECK_FALSE(are_isomorphic(h, t));
        }
        auto g = random_hop(20, seed);
        auto h = hop_chord_flip(g, rng);
        CHECK(h.order() == 20);
        CHECK_FALSE(are_isomorphic(h, g));
    }
}
