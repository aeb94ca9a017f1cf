#include "fodef/families.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_set>

namespace fodef {

Family family_from_name(const std::string& name) {
    static const std::map<std::string, Family> names{
        {"path", Family::Path},       {"cycle", Family::Cycle},
        {"two_cycles", Family::TwoCycles}, {"star", Family::Star},
        {"complete", Family::Complete}, {"triv", Family::Triv},
        {"random_bounded_tree", Family::RandomBoundedTree}, {"tree", Family::RandomBoundedTree},
        {"random_hop", Family::RandomHop}, {"hop", Family::RandomHop}};
    auto it = names.find(name);
    if (it == names.end()) throw std::invalid_argument("unknown family '" + name + "'");
    return it->second;
}

std::string family_name(Family f) {
    switch (f) {
    case Family::Path: return "path";
    case Family::Cycle: return "cycle";
    case Family::TwoCycles: return "two_cycles";
    case Family::Star: return "star";
    case Family::Complete: return "complete";
    case Family::Triv: return "triv";
    case Family::RandomBoundedTree: return "random_bounded_tree";
    case Family::RandomHop: return "random_hop";
    }
    return "?";
}

ColoredGraph generate(const FamilySpec& s) {
    switch (s.family) {
    case Family::Path: return path_graph(s.n);
    case Family::Cycle: return cycle_graph(s.n);
    case Family::TwoCycles: return two_cycles(s.n);
    case Family::Star: return star_graph(s.n);
    case Family::Complete: return complete_graph(s.n);
    case Family::Triv: return triv_graph(s.n, s.b);
    case Family::RandomBoundedTree: return random_bounded_tree(s.n, s.d, s.seed);
    case Family::RandomHop: return random_hop(s.n, s.seed);
    }
    throw std::invalid_argument("unknown family");
}

ColoredGraph path_graph(int n) {
    if (n < 1) throw std::invalid_argument("path needs n >= 1");
    ColoredGraph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

ColoredGraph cycle_graph(int n) {
    if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
    ColoredGraph g = path_graph(n);
    g.add_edge(n - 1, 0);
    return g;
}

ColoredGraph two_cycles(int n) {
    if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
    ColoredGraph g(2 * n);
    for (int b : {0, n})
        for (int i = 0; i < n; ++i) g.add_edge(b + i, b + (i + 1) % n);
    return g;
}

ColoredGraph star_graph(int n) {
    if (n < 2) throw std::invalid_argument("star needs n >= 2");
    ColoredGraph g(n);
    for (int i = 1; i < n; ++i) g.add_edge(0, i);
    return g;
}

ColoredGraph complete_graph(int n) {
    if (n < 1) throw std::invalid_argument("complete graph needs n >= 1");
    ColoredGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

ColoredGraph triv_graph(int a, int b) {
    if (a < 0 || b < 0 || a + b == 0) throw std::invalid_argument("triv needs a, b >= 0, not both zero");
    ColoredGraph g(2 * a + b);
    for (int i = 0; i < a; ++i) g.add_edge(2 * i, 2 * i + 1);
    return g;
}

ColoredGraph relabel(const ColoredGraph& g, const VertexList& perm) {
    if (static_cast<int>(perm.size()) != g.order()) throw GraphError("permutation size mismatch");
    ColoredGraph h(g.order());
    for (auto [u, v] : g.edges()) h.add_edge(perm[u], perm[v]);
    for (Vertex v = 0; v < g.order(); ++v) h.set_colors(perm[v], g.colors(v));
    return h;
}

ColoredGraph random_relabel(const ColoredGraph& g, std::mt19937_64& rng) {
    VertexList perm(g.order());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    return relabel(g, perm);
}

ColoredGraph random_bounded_tree(int n, int d, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("tree needs n >= 1");
    if (d < 2 && n > 2) throw std::invalid_argument("tree degree bound needs d >= 2");
    std::mt19937_64 rng(seed);
    ColoredGraph g(n);
    VertexList open{0};  // vertices with degree < d
    for (Vertex v = 1; v < n; ++v) {
        std::size_t i = std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng);
        Vertex p = open[i];
        g.add_edge(p, v);
        if (g.degree(p) >= d) {
            open[i] = open.back();
            open.pop_back();
        }
        if (d > 1) open.push_back(v);
    }
    return random_relabel(g, rng);
}

namespace {

void triangulate(int lo, int hi, std::mt19937_64& rng, std::vector<std::pair<Vertex, Vertex>>& chords) {
    if (hi - lo < 2) return;
    int apex = std::uniform_int_distribution<int>(lo + 1, hi - 1)(rng);
    if (apex - lo >= 2) chords.emplace_back(lo, apex);
    if (hi - apex >= 2) chords.emplace_back(apex, hi);
    triangulate(lo, apex, rng, chords);
    triangulate(apex, hi, rng, chords);
}

bool crosses(std::pair<Vertex, Vertex> a, std::pair<Vertex, Vertex> b) {
    auto [i, j] = std::minmax(a.first, a.second);
    auto inside = [&](Vertex v) { return v > i && v < j; };
    if (b.first == i || b.first == j || b.second == i || b.second == j) return false;
    return inside(b.first) != inside(b.second);
}

std::vector<std::pair<Vertex, Vertex>> chords_of(const ColoredGraph& g) {
    int n = g.order();
    std::vector<std::pair<Vertex, Vertex>> out;
    for (auto [u, v] : g.edges()) {
        int gap = v - u;
        if (gap != 1 && gap != n - 1) out.emplace_back(u, v);
    }
    return out;
}

}  // namespace

ColoredGraph random_hop(int n, std::uint64_t seed) {
    if (n < 3) throw std::invalid_argument("random_hop needs n >= 3");
    std::mt19937_64 rng(seed);
    std::vector<std::pair<Vertex, Vertex>> chords;
    triangulate(0, n - 1, rng, chords);
    double keep = std::uniform_real_distribution<double>(0.2, 0.8)(rng);
    ColoredGraph g = cycle_graph(n);
    std::bernoulli_distribution coin(keep);
    for (auto [u, v] : chords)
        if (coin(rng)) g.add_edge(u, v);
    return g;
}

namespace {

std::map<int, std::vector<ColoredGraph>>& enumeration_cache() {
    static std::map<int, std::vector<ColoredGraph>> cache;
    return cache;
}

const std::vector<ColoredGraph>& all_graphs(int n) {
    auto& cache = enumeration_cache();
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    std::vector<ColoredGraph> out;
    if (n == 0) {
        out.emplace_back(0);
    } else {
        std::unordered_set<std::string> seen;
        for (const auto& base : all_graphs(n - 1)) {
            for (std::uint32_t mask = 0; mask < (1U << (n - 1)); ++mask) {
                ColoredGraph g(n);
                for (auto [u, v] : base.edges()) g.add_edge(u, v);
                for (int i = 0; i < n - 1; ++i)
                    if (mask >> i & 1U) g.add_edge(i, n - 1);
                if (seen.insert(canonical_form(g)).second) out.push_back(std::move(g));
            }
        }
    }
    return cache.emplace(n, std::move(out)).first->second;
}

}  // namespace

std::vector<ColoredGraph> enumerate_graphs(int n, bool connected_only) {
    std::vector<ColoredGraph> out;
    for_each_graph(n, connected_only, [&](const ColoredGraph& g) { out.push_back(g); });
    return out;
}

void for_each_graph(int n, bool connected_only, const std::function<void(const ColoredGraph&)>& visit) {
    if (n < 1) throw std::invalid_argument("enumeration needs n >= 1");
    if (n > enumeration_cap) throw std::invalid_argument("enumeration is capped at order 8");
    for (const auto& g : all_graphs(n))
        if (!connected_only || is_connected(g)) visit(g);
}

std::vector<ColoredGraph> enumerate_hop_graphs(int n) {
    if (n < 3 || n > 10) throw std::invalid_argument("HOP enumeration needs 3 <= n <= 10");
    std::vector<std::pair<Vertex, Vertex>> all;
    for (int i = 0; i < n; ++i)
        for (int j = i + 2; j < n; ++j)
            if (!(i == 0 && j == n - 1)) all.emplace_back(i, j);
    std::vector<ColoredGraph> out;
    std::unordered_set<std::string> seen;
    std::vector<std::pair<Vertex, Vertex>> chosen;
    std::function<void(std::size_t)> rec = [&](std::size_t idx) {
        if (idx == all.size()) {
            ColoredGraph g = cycle_graph(n);
            for (auto [u, v] : chosen) g.add_edge(u, v);
            if (seen.insert(canonical_form(g)).second) out.push_back(std::move(g));
            return;
        }
        rec(idx + 1);
        bool ok = std::none_of(chosen.begin(), chosen.end(), [&](auto c) { return crosses(c, all[idx]); });
        if (ok) {
            chosen.push_back(all[idx]);
            rec(idx + 1);
            chosen.pop_back();
        }
    };
    rec(0);
    return out;
}

namespace {

template <class Mutate>
ColoredGraph perturb(const ColoredGraph& g, std::mt19937_64& rng, Mutate mutate) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        auto h = mutate(rng);
        if (h && !are_isomorphic(*h, g)) return *h;
    }
    throw GraphError("no non-isomorphic perturbation found");
}

std::vector<Vertex> parents(const ColoredGraph& t, Vertex root) {
    std::vector<Vertex> par(t.order(), -2);
    par[root] = -1;
    VertexList queue{root};
    for (std::size_t i = 0; i < queue.size(); ++i)
        for (Vertex w : t.neighbors(queue[i]))
            if (par[w] == -2) {
                par[w] = queue[i];
                queue.push_back(w);
            }
    return par;
}

bool is_ancestor(const std::vector<Vertex>& par, Vertex a, Vertex v) {
    for (; v >= 0; v = par[v])
        if (v == a) return true;
    return false;
}

}  // namespace

ColoredGraph tree_leaf_move(const ColoredGraph& tree, int d, std::mt19937_64& rng) {
    int n = tree.order();
    if (n < 4) throw GraphError("leaf move needs at least 4 vertices");
    return perturb(tree, rng, [&](std::mt19937_64& r) -> std::optional<ColoredGraph> {
        std::uniform_int_distribution<Vertex> pick(0, n - 1);
        Vertex leaf = pick(r);
        if (tree.degree(leaf) != 1) return std::nullopt;
        Vertex p = tree.neighbors(leaf)[0];
        Vertex q = pick(r);
        if (q == leaf || q == p || tree.degree(q) >= d) return std::nullopt;
        ColoredGraph h = tree;
        h.remove_edge(leaf, p);
        h.add_edge(leaf, q);
        return h;
    });
}

ColoredGraph tree_subtree_swap(const ColoredGraph& tree, int d, std::mt19937_64& rng) {
    (void)d;  // degrees are unchanged by a swap
    int n = tree.order();
    if (n < 5) throw GraphError("subtree swap needs at least 5 vertices");
    return perturb(tree, rng, [&](std::mt19937_64& r) -> std::optional<ColoredGraph> {
        std::uniform_int_distribution<Vertex> pick(0, n - 1);
        auto par = parents(tree, pick(r));
        Vertex a = pick(r), b = pick(r);
        if (par[a] < 0 || par[b] < 0 || par[a] == par[b]) return std::nullopt;
        if (is_ancestor(par, a, b) || is_ancestor(par, b, a)) return std::nullopt;
        ColoredGraph h = tree;
        h.remove_edge(a, par[a]);
        h.remove_edge(b, par[b]);
        h.add_edge(a, par[b]);
        h.add_edge(b, par[a]);
        return h;
    });
}

ColoredGraph hop_chord_flip(const ColoredGraph& hop, std::mt19937_64& rng) {
    int n = hop.order();
    if (n < 4) throw GraphError("chord flip needs at least 4 vertices");
    return perturb(hop, rng, [&](std::mt19937_64& r) -> std::optional<ColoredGraph> {
        auto chords = chords_of(hop);
        ColoredGraph h = hop;
        int op = static_cast<int>(r() % 3);
        if (op != 1 && !chords.empty()) {
            auto c = chords[r() % chords.size()];
            h.remove_edge(c.first, c.second);
            chords.erase(std::find(chords.begin(), chords.end(), c));
            if (op == 0) return h;
        }
        std::vector<std::pair<Vertex, Vertex>> free;
        for (int i = 0; i < n; ++i)
            for (int j = i + 2; j < n; ++j) {
                if ((i == 0 && j == n - 1) || h.adjacent(i, j)) continue;
                std::pair<Vertex, Vertex> c{i, j};
                if (std::none_of(chords.begin(), chords.end(), [&](auto o) { return crosses(o, c); }))
                    free.push_back(c);
            }
        if (free.empty()) return std::nullopt;
        auto c = free[r() % free.size()];
        h.add_edge(c.first, c.second);
        return h;
    });
}

}  // namespace fodef
