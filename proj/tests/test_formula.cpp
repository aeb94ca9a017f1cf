#include <random>

#include "doctest.h"
#include "fodef/formula.hpp"

using namespace fodef;

namespace {

ColoredGraph cycle(int n) {
    ColoredGraph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

ColoredGraph complete(int n) {
    ColoredGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

const char* kVars[] = {"x", "y", "z"};

Formula random_formula(std::mt19937& rng, int depth) {
    int pick = static_cast<int>(rng() % (depth == 0 ? 3 : 8));
    auto var = [&] { return std::string(kVars[rng() % 3]); };
    switch (pick) {
    case 0: return adj(var(), var());
    case 1: return eq(var(), var());
    case 2: return col(static_cast<int>(rng() % 3), var());
    case 3: return negate(random_formula(rng, depth - 1));
    case 4:
    case 5: {
        std::vector<Formula> parts;
        int k = 2 + static_cast<int>(rng() % 2);
        for (int i = 0; i < k; ++i) parts.push_back(random_formula(rng, depth - 1));
        return pick == 4 ? conj(parts) : disj(parts);
    }
    case 6: return exists(var(), random_formula(rng, depth - 1));
    default: return forall(var(), random_formula(rng, depth - 1));
    }
}

ColoredGraph random_graph(std::mt19937& rng, int n) {
    ColoredGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng() % 2) g.add_edge(i, j);
    for (int i = 0; i < n; ++i)
        if (rng() % 3 == 0) g.add_color(i, static_cast<int>(rng() % 3));
    return g;
}

int longest(const std::set<std::string>& nest) {
    std::size_t m = 0;
    for (const auto& s : nest) m = std::max(m, s.size());
    return static_cast<int>(m);
}

int max_alt(const std::set<std::string>& nest) {
    int m = 0;
    for (const auto& s : nest) m = std::max(m, alternations(s));
    return m;
}

}  // namespace

TEST_CASE("parse examples") {
    auto f = parse_formula("ex x. ex y. (~eq(x,y) & ~adj(x,y))");
    CHECK(analyze(f).quantifier_rank == 2);
    CHECK(print_formula(f) == "ex x. ex y. (~eq(x,y) & ~adj(x,y))");

    auto g = parse_formula("all z. adj(z,z)");
    CHECK_FALSE(evaluate(g, cycle(4)));
    CHECK_FALSE(evaluate(g, complete(3)));

    CHECK_THROWS_AS(parse_formula("ex x. (adj(x,y)"), ParseError);
    try {
        parse_formula("ex x. (adj(x,y) & )");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position == 18);
    }
}

TEST_CASE("parser edge cases") {
    CHECK_THROWS_AS(parse_formula("(adj(x,y) & eq(x,y) | col(1,x))"), ParseError);
    CHECK_THROWS_AS(parse_formula("adj(X,y)"), ParseError);
    CHECK_THROWS_AS(parse_formula("adj(x,y) adj(x,y)"), ParseError);
    CHECK_THROWS_AS(parse_formula("ex x adj(x,x)"), ParseError);
    CHECK_THROWS_AS(parse_formula("adj(x,y)", {.strict = true}), ParseError);
    CHECK_NOTHROW(parse_formula("all x. all y. adj(x,y)", {.strict = true}));
    // keywords are only special in their syntactic position
    CHECK(print_formula(parse_formula("ex ex. adj(ex,all)")) == "ex ex. adj(ex,all)");
    CHECK(print_formula(parse_formula("  ex   x .~ ( adj(x,x)|eq( x ,x) )")) == "ex x. ~(adj(x,x) | eq(x,x))");
    // quantifier scope extends right
    auto f = parse_formula("ex x. (col(1,x) & all y. adj(x,y))");
    CHECK(f->kind == FormulaKind::Exists);
}

TEST_CASE("evaluation examples") {
    auto f = parse_formula("ex x. ex y. (~eq(x,y) & ~adj(x,y))");
    CHECK(evaluate(f, cycle(4)));
    CHECK_FALSE(evaluate(f, complete(3)));

    ColoredGraph g(3);
    g.add_color(1, 1);
    CHECK(evaluate(parse_formula("ex x. col(1,x)"), g));
    CHECK_FALSE(evaluate(parse_formula("ex x. col(2,x)"), g));

    CHECK_THROWS_AS(evaluate(parse_formula("adj(x,y)"), g), EvaluationError);
    CHECK(evaluate(parse_formula("col(1,x)"), g, {{"x", 1}}));
    // innermost binding wins
    CHECK(evaluate(parse_formula("ex x. all x. col(1,x)"), g) == false);
    CHECK(evaluate(parse_formula("eq(x,y)"), g, {{"x", 0}, {"y", 1}, {"x", 1}}));
}

TEST_CASE("analysis examples") {
    auto f = parse_formula("ex x. (adj(x,y) & all z. ~adj(x,z))");
    auto p = analyze(f);
    REQUIRE(p.nest);
    CHECK(*p.nest == std::set<std::string>{"E", "EA"});
    CHECK(p.quantifier_rank == 2);
    CHECK(p.alternation_number == 1);
    CHECK(p.is_nnf);

    p = analyze(parse_formula("~ex x. all y. adj(x,y)"));
    CHECK(*p.nest == std::set<std::string>{"AE"});
    CHECK(p.quantifier_rank == 2);
    CHECK(p.alternation_number == 1);
    CHECK_FALSE(p.is_nnf);

    p = analyze(parse_formula("eq(x,y)"));
    CHECK(*p.nest == std::set<std::string>{""});
    CHECK(p.quantifier_rank == 0);
    CHECK(p.alternation_number == 0);
}

TEST_CASE("nest is not materialized for huge shared formulas") {
    Formula f = adj("x", "y");
    for (int i = 0; i < 30; ++i) f = exists("x", conj({f, negate(f)}));
    auto p = analyze(f);
    CHECK_FALSE(p.nest.has_value());
    CHECK(p.quantifier_rank == 30);
    CHECK(p.alternation_number == 29);
}

TEST_CASE("property: analysis agrees with explicit nest and negation invariance") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 500; ++trial) {
        auto f = random_formula(rng, 1 + static_cast<int>(rng() % 6));
        auto nest = nest_sequences(f);
        auto p = analyze(f);
        CHECK(p.quantifier_rank == longest(nest));
        CHECK(p.alternation_number == max_alt(nest));
        auto q = analyze(negate(f));
        CHECK(q.quantifier_rank == p.quantifier_rank);
        CHECK(q.alternation_number == p.alternation_number);
    }
}

TEST_CASE("property: print then parse is the identity") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        auto f = random_formula(rng, 6);
        auto text = print_formula(f);
        auto back = parse_formula(text);
        CHECK(structurally_equal(f, back));
        CHECK(print_formula(back) == text);
    }
}

TEST_CASE("property: evaluation is invariant under relabeling") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        Formula f = random_formula(rng, 4);
        for (const auto& v : free_variables(f)) f = exists(v, f);
        int n = 1 + static_cast<int>(rng() % 5);
        auto g = random_graph(rng, n);
        VertexList perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        ColoredGraph h(n);
        for (auto [u, v] : g.edges()) h.add_edge(perm[u], perm[v]);
        for (int v = 0; v < n; ++v) h.set_colors(perm[v], g.colors(v));
        CHECK(evaluate(f, g) == evaluate(f, h));
    }
}
