#include "fodef/separators.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace fodef {

namespace {

using Edge = std::pair<Vertex, Vertex>;

Edge ordered(Vertex u, Vertex v) { return {std::min(u, v), std::max(u, v)}; }

VertexList canonical_cycle(VertexList c) {
    auto it = std::min_element(c.begin(), c.end());
    std::rotate(c.begin(), it, c.end());
    if (c.size() >= 3 && c[1] > c.back()) std::reverse(c.begin() + 1, c.end());
    return c;
}

ColoredGraph with_edges(const ColoredGraph& g, const std::vector<Edge>& extra) {
    ColoredGraph h = g;
    for (auto [u, v] : extra) h.add_edge(u, v);
    return h;
}

std::vector<int> positions(const VertexList& cycle, int n) {
    std::vector<int> pos(n, -1);
    for (std::size_t i = 0; i < cycle.size(); ++i) pos[cycle[i]] = static_cast<int>(i);
    return pos;
}

struct Blocks {
    std::vector<VertexList> blocks;
    std::vector<char> cut;
};

Blocks biconnected_blocks(const ColoredGraph& g) {
    int n = g.order();
    Blocks out;
    out.cut.assign(n, 0);
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<Edge> stack;
    int timer = 0;
    std::function<void(Vertex, Vertex)> dfs = [&](Vertex u, Vertex parent) {
        disc[u] = low[u] = timer++;
        int children = 0;
        for (Vertex w : g.neighbors(u)) {
            if (w == parent) continue;
            if (disc[w] < 0) {
                ++children;
                stack.emplace_back(u, w);
                dfs(w, u);
                low[u] = std::min(low[u], low[w]);
                if (low[w] >= disc[u]) {
                    if (parent >= 0 || children > 1) out.cut[u] = 1;
                    std::set<Vertex> block;
                    while (true) {
                        Edge e = stack.back();
                        stack.pop_back();
                        block.insert(e.first);
                        block.insert(e.second);
                        if (e == Edge{u, w}) break;
                    }
                    out.blocks.emplace_back(block.begin(), block.end());
                }
            } else if (disc[w] < disc[u]) {
                low[u] = std::min(low[u], disc[w]);
                stack.emplace_back(u, w);
            }
        }
        if (parent < 0 && children > 1) out.cut[u] = 1;
    };
    for (Vertex v = 0; v < n; ++v)
        if (disc[v] < 0) {
            dfs(v, -1);
            if (g.degree(v) == 0) out.blocks.push_back({v});
        }
    return out;
}

std::optional<OClassification> edhop1(const ColoredGraph& g) {
    int n = g.order();
    if (n < 3 || !is_connected(g) || is_hop(g)) return std::nullopt;
    auto b = biconnected_blocks(g);
    if (b.blocks.size() < 2) return std::nullopt;
    std::vector<int> membership(n, 0);
    std::vector<int> end_blocks;
    for (std::size_t i = 0; i < b.blocks.size(); ++i) {
        int cuts = 0;
        for (Vertex v : b.blocks[i])
            if (b.cut[v]) {
                ++cuts;
                ++membership[v];
            }
        if (cuts > 2) return std::nullopt;
        if (cuts == 1) end_blocks.push_back(static_cast<int>(i));
    }
    for (Vertex v = 0; v < n; ++v)
        if (b.cut[v] && membership[v] != 2) return std::nullopt;
    if (end_blocks.size() != 2) return std::nullopt;

    auto candidates = [&](const VertexList& block) -> std::optional<VertexList> {
        Vertex z = *std::find_if(block.begin(), block.end(), [&](Vertex v) { return b.cut[v] != 0; });
        if (block.size() == 2) return VertexList{block[0] == z ? block[1] : block[0]};
        auto cyc = hop_cycle(g.induced(block));
        if (!cyc) return std::nullopt;
        std::size_t k = cyc->size();
        for (std::size_t i = 0; i < k; ++i)
            if (block[(*cyc)[i]] == z) return VertexList{block[(*cyc)[(i + 1) % k]], block[(*cyc)[(i + k - 1) % k]]};
        return std::nullopt;
    };
    auto c1 = candidates(b.blocks[end_blocks[0]]);
    auto c2 = candidates(b.blocks[end_blocks[1]]);
    if (!c1 || !c2) return std::nullopt;
    for (Vertex u : *c1)
        for (Vertex v : *c2) {
            if (u == v || g.adjacent(u, v)) continue;
            ColoredGraph h = g;
            h.add_edge(u, v);
            if (auto cyc = hop_cycle(h)) return OClassification{OTag::EDHOP1, *cyc, {ordered(u, v)}};
        }
    return std::nullopt;
}

std::optional<OClassification> classify_with_witness(const ColoredGraph& g, const VertexList& cycle,
                                                     const std::vector<Edge>& missing) {
    int n = g.order();
    if (n == 0 || static_cast<int>(cycle.size()) != n || missing.size() > 2) return std::nullopt;
    std::vector<char> seen(n, 0);
    for (Vertex v : cycle) {
        if (!g.valid(v) || seen[v]) return std::nullopt;
        seen[v] = 1;
    }
    std::set<Edge> distinct;
    for (auto [u, v] : missing) {
        if (!g.valid(u) || !g.valid(v) || u == v || g.adjacent(u, v)) return std::nullopt;
        if (!distinct.insert(ordered(u, v)).second) return std::nullopt;
    }
    if (!is_connected(g)) return std::nullopt;
    if (!verify_hop_certificate(with_edges(g, missing), cycle)) return std::nullopt;
    if (missing.empty()) return OClassification{OTag::HOP, canonical_cycle(cycle), {}};
    if (auto c = hop_cycle(g)) return OClassification{OTag::HOP, *c, {}};
    std::vector<Edge> ms(distinct.begin(), distinct.end());
    if (ms.size() == 1) return OClassification{OTag::EDHOP1, cycle, ms};
    if (auto e = edhop1(g)) return e;
    return OClassification{OTag::EDHOP2, cycle, ms};
}

std::atomic<long> stat_pair{0}, stat_extended{0}, stat_extended_e2{0}, stat_nonadjacent{0}, stat_fallback{0},
    stat_exhaustive{0};

}  // namespace

std::string tag_name(OTag t) {
    switch (t) {
    case OTag::HOP: return "HOP";
    case OTag::EDHOP1: return "EDHOP1";
    case OTag::EDHOP2: return "EDHOP2";
    case OTag::NOT_IN_O: return "NOT_IN_O";
    }
    return "?";
}

bool verify_hop_certificate(const ColoredGraph& g, const VertexList& cycle) {
    int n = g.order();
    if (n == 0 || static_cast<int>(cycle.size()) != n) return false;
    std::vector<int> pos(n, -1);
    for (int i = 0; i < n; ++i) {
        if (!g.valid(cycle[i]) || pos[cycle[i]] >= 0) return false;
        pos[cycle[i]] = i;
    }
    if (n == 1) return true;
    if (n == 2) return g.adjacent(cycle[0], cycle[1]) && g.size() == 1;
    for (int i = 0; i < n; ++i)
        if (!g.adjacent(cycle[i], cycle[(i + 1) % n])) return false;
    std::vector<VertexList> by_start(n), by_end(n);
    for (auto [u, v] : g.edges()) {
        int i = std::min(pos[u], pos[v]), j = std::max(pos[u], pos[v]);
        if (j - i == 1 || j - i == n - 1) continue;
        by_start[i].push_back(j);
        by_end[j].push_back(i);
    }
    std::vector<Edge> stack;
    for (int p = 0; p < n; ++p) {
        std::sort(by_end[p].rbegin(), by_end[p].rend());
        for (int i : by_end[p]) {
            if (stack.empty() || stack.back() != Edge{i, p}) return false;
            stack.pop_back();
        }
        std::sort(by_start[p].rbegin(), by_start[p].rend());
        for (int j : by_start[p]) stack.emplace_back(p, j);
    }
    return stack.empty();
}

std::optional<VertexList> hop_cycle(const ColoredGraph& g) {
    int n = g.order();
    if (n == 0) return std::nullopt;
    if (n == 1) return VertexList{0};
    if (n == 2) return g.adjacent(0, 1) ? std::optional<VertexList>(VertexList{0, 1}) : std::nullopt;

    std::vector<std::set<Vertex>> adj(n);
    for (auto [u, v] : g.edges()) {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    std::vector<char> alive(n, 1);
    int alive_count = n;
    struct Removal {
        Vertex v, a, b;
    };
    std::vector<Removal> removed;
    VertexList work;
    for (Vertex v = 0; v < n; ++v)
        if (adj[v].size() == 2) work.push_back(v);
    while (alive_count > 3) {
        Vertex v = -1;
        while (!work.empty()) {
            Vertex w = work.back();
            work.pop_back();
            if (alive[w] && adj[w].size() == 2) {
                v = w;
                break;
            }
        }
        if (v < 0) return std::nullopt;
        Vertex a = *adj[v].begin(), b = *std::next(adj[v].begin());
        adj[a].erase(v);
        adj[b].erase(v);
        adj[v].clear();
        alive[v] = 0;
        --alive_count;
        adj[a].insert(b);
        adj[b].insert(a);
        removed.push_back({v, a, b});
        if (adj[a].size() == 2) work.push_back(a);
        if (adj[b].size() == 2) work.push_back(b);
    }
    VertexList rest;
    for (Vertex v = 0; v < n; ++v)
        if (alive[v]) rest.push_back(v);
    for (Vertex v : rest)
        if (adj[v].size() != 2) return std::nullopt;
    std::vector<Vertex> next(n, -1);
    next[rest[0]] = rest[1];
    next[rest[1]] = rest[2];
    next[rest[2]] = rest[0];
    for (auto it = removed.rbegin(); it != removed.rend(); ++it) {
        auto [v, a, b] = *it;
        if (next[a] == b) {
            next[a] = v;
            next[v] = b;
        } else if (next[b] == a) {
            next[b] = v;
            next[v] = a;
        } else {
            return std::nullopt;
        }
    }
    VertexList cycle{0};
    for (Vertex v = next[0]; v != 0; v = next[v]) cycle.push_back(v);
    cycle = canonical_cycle(cycle);
    if (!verify_hop_certificate(g, cycle)) return std::nullopt;
    return cycle;
}

OClassification classify_O(const ColoredGraph& g) {
    int n = g.order();
    if (n == 0 || !is_connected(g)) return {};
    if (auto c = hop_cycle(g)) return {OTag::HOP, *c, {}};
    if (auto e = edhop1(g)) return *e;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) {
            if (g.adjacent(u, v)) continue;
            ColoredGraph h = g;
            h.add_edge(u, v);
            if (auto e = edhop1(h)) {
                auto missing = e->missing_edges;
                missing.insert(missing.begin(), Edge{u, v});
                return {OTag::EDHOP2, e->cycle, missing};
            }
        }
    return {};
}

OClassification classify_O(const ColoredGraph& g, const OClassification& hint) {
    if (hint.tag != OTag::NOT_IN_O)
        if (auto c = classify_with_witness(g, hint.cycle, hint.missing_edges)) return *c;
    return classify_O(g);
}

std::vector<std::string> SeparatorResult::tags() const {
    std::vector<std::string> out;
    for (const auto& c : flap_classes) out.push_back(tag_name(c.tag));
    return out;
}

ClassOStats class_O_stats() {
    return {stat_pair.load(), stat_extended.load(), stat_extended_e2.load(),
            stat_nonadjacent.load(), stat_fallback.load(), stat_exhaustive.load()};
}

void reset_class_O_stats() {
    for (auto* s : {&stat_pair, &stat_extended, &stat_extended_e2, &stat_nonadjacent, &stat_fallback, &stat_exhaustive})
        s->store(0);
}

namespace {

SeparatorResult finish(const ColoredGraph& g, VertexList xs, std::vector<VertexList> flaps, Rational eps,
                       std::string construction) {
    SeparatorResult r;
    std::sort(xs.begin(), xs.end());
    r.X = std::move(xs);
    r.flaps = std::move(flaps);
    r.epsilon = eps;
    std::size_t largest = 0;
    for (const auto& f : r.flaps) largest = std::max(largest, f.size());
    r.max_flap_fraction = g.order() ? static_cast<double>(largest) / g.order() : 0.0;
    r.construction = std::move(construction);
    return r;
}

std::vector<char> mask_of(int n, const VertexList& xs) {
    std::vector<char> m(n, 0);
    for (Vertex x : xs) m[x] = 1;
    return m;
}

/// Class-O contract check for a candidate X with witnesses derived from the
/// completion cycle order.
struct ContractCheck {
    bool ok = false;
    std::vector<VertexList> flaps;
    std::vector<OClassification> classes;
    int bad_flap = -1;  // a flap whose cycle-order witness needs 3+ edges
};

ContractCheck check_contract(const ColoredGraph& g, const std::vector<int>& pos, const VertexList& xs,
                             bool allow_search = false) {
    ContractCheck c;
    int n = g.order();
    auto mask = mask_of(n, xs);
    c.flaps = components(g, &mask);
    if (c.flaps.size() > 7) return c;
    for (std::size_t i = 0; i < c.flaps.size(); ++i) {
        const auto& flap = c.flaps[i];
        if (!Rational{2, 3}.admits(static_cast<long>(flap.size()), n)) return c;
    }
    for (std::size_t i = 0; i < c.flaps.size(); ++i) {
        const auto& flap = c.flaps[i];
        ColoredGraph local = g.induced(flap);
        VertexList order(flap.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return pos[flap[a]] < pos[flap[b]]; });
        std::vector<Edge> missing;
        if (order.size() >= 3)
            for (std::size_t k = 0; k < order.size(); ++k) {
                Vertex a = order[k], b = order[(k + 1) % order.size()];
                if (!local.adjacent(a, b)) missing.push_back(ordered(a, b));
            }
        std::optional<OClassification> cls;
        if (missing.size() <= 2) cls = classify_with_witness(local, order, missing);
        if (!cls) {
            if (missing.size() > 2) {
                c.bad_flap = static_cast<int>(i);
                if (!allow_search) return c;
            }
            auto full = classify_O(local);
            if (full.tag == OTag::NOT_IN_O) return c;
            cls = full;
        }
        c.classes.push_back(*cls);
    }
    c.ok = true;
    return c;
}

/// The triple-connection extension: the bad flap consists of three cycle
/// segments T1, T2, T3 (in cycle order, starting after the separator).
std::optional<std::pair<VertexList, bool>> recipe(const ColoredGraph& g, const std::vector<int>& pos,
                                                  const VertexList& flap, Vertex s1, Vertex s2) {
    int n = g.order();
    VertexList seq = flap;
    std::sort(seq.begin(), seq.end(), [&](Vertex a, Vertex b) { return pos[a] < pos[b]; });
    std::size_t k = seq.size();
    if (k < 3) return std::nullopt;
    auto crosses_separator = [&](Vertex a, Vertex b) {
        for (Vertex s : {s1, s2}) {
            int pa = pos[a], pb = pos[b], ps = pos[s];
            int span = (pb - pa + n) % n, off = (ps - pa + n) % n;
            if (off > 0 && off < span) return true;
        }
        return false;
    };
    std::vector<std::size_t> breaks;
    int separator_gaps = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < k; ++i) {
        Vertex a = seq[i], b = seq[(i + 1) % k];
        if (g.adjacent(a, b)) continue;
        breaks.push_back(i);
        if (crosses_separator(a, b)) {
            ++separator_gaps;
            start = (i + 1) % k;
        }
    }
    if (breaks.size() != 3 || separator_gaps != 1) return std::nullopt;
    std::rotate(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(start), seq.end());
    std::vector<VertexList> t;
    VertexList cur;
    for (std::size_t i = 0; i < k; ++i) {
        cur.push_back(seq[i]);
        if (i + 1 == k || !g.adjacent(seq[i], seq[i + 1])) {
            t.push_back(cur);
            cur.clear();
        }
    }
    if (t.size() != 3) return std::nullopt;

    auto touches = [&](Vertex v, const VertexList& seg) {
        return std::any_of(seg.begin(), seg.end(), [&](Vertex w) { return g.adjacent(v, w); });
    };
    // first vertex of seg, scanning from its far end (back) or near end (front), with a neighbor in other
    auto nearest = [&](const VertexList& seg, bool from_back, const VertexList& other) -> std::optional<Vertex> {
        if (from_back) {
            for (auto it = seg.rbegin(); it != seg.rend(); ++it)
                if (touches(*it, other)) return *it;
        } else {
            for (Vertex v : seg)
                if (touches(v, other)) return v;
        }
        return std::nullopt;
    };
    for (int mirrored = 0; mirrored < 2; ++mirrored) {
        std::vector<VertexList> s = t;
        if (mirrored) {
            for (auto& seg : s) std::reverse(seg.begin(), seg.end());
            std::reverse(s.begin(), s.end());
        }
        const VertexList &f_seg = s[0], &m_seg = s[1], &l_seg = s[2];
        auto e1 = nearest(l_seg, true, m_seg);
        if (!e1) continue;
        auto e2 = nearest(m_seg, false, l_seg);
        bool adjacent = g.adjacent(*e1, *e2);
        auto f = nearest(f_seg, true, l_seg);
        if (f) return std::pair{VertexList{s1, s2, *e1, *e2, *f}, adjacent};
        return std::pair{VertexList{s1, s2, *e2}, adjacent};
    }
    return std::nullopt;
}

std::optional<ContractCheck> exhaustive_extension(const ColoredGraph& g, const std::vector<int>& pos,
                                                  const VertexList& base, const VertexList& pool, int extra,
                                                  VertexList& chosen_out, bool allow_search) {
    std::vector<int> idx;
    std::function<std::optional<ContractCheck>(std::size_t, int)> rec =
        [&](std::size_t from, int left) -> std::optional<ContractCheck> {
        if (left == 0) {
            VertexList xs = base;
            for (int i : idx) xs.push_back(pool[i]);
            auto c = check_contract(g, pos, xs, allow_search);
            if (c.ok) {
                chosen_out = xs;
                return c;
            }
            return std::nullopt;
        }
        for (std::size_t i = from; i < pool.size(); ++i) {
            idx.push_back(static_cast<int>(i));
            auto r = rec(i + 1, left - 1);
            idx.pop_back();
            if (r) return r;
        }
        return std::nullopt;
    };
    for (int size = 0; size <= extra; ++size)
        if (auto r = rec(0, size)) return r;
    return std::nullopt;
}

}  // namespace

SeparatorResult tree_centroid_separator(const ColoredGraph& g) {
    int n = g.order();
    if (n == 0 || g.size() != n - 1 || !is_connected(g)) throw SeparatorError("input is not a tree");
    std::vector<Vertex> parent(n, -1), order{0};
    std::vector<char> seen(n, 0);
    seen[0] = 1;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (Vertex w : g.neighbors(order[i]))
            if (!seen[w]) {
                seen[w] = 1;
                parent[w] = order[i];
                order.push_back(w);
            }
    std::vector<int> sub(n, 1);
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (parent[*it] >= 0) sub[parent[*it]] += sub[*it];
    Vertex best = 0;
    int best_size = n + 1;
    for (Vertex v = 0; v < n; ++v) {
        int largest = n - sub[v];
        for (Vertex w : g.neighbors(v))
            if (w != parent[v]) largest = std::max(largest, sub[w]);
        if (largest < best_size) {
            best_size = largest;
            best = v;
        }
    }
    auto d = flap_decompose(g, VertexList{best});
    return finish(g, {best}, d.flaps, {2, 3}, "centroid");
}

SeparatorResult class_O_separator(const ColoredGraph& g, const OClassification* hint) {
    int n = g.order();
    if (n < 2) throw SeparatorError("class-O separator needs at least 2 vertices");
    OClassification cls = hint ? classify_O(g, *hint) : classify_O(g);
    if (cls.tag == OTag::NOT_IN_O) throw SeparatorError("graph is not HOP, 1-e.d.HOP or 2-e.d.HOP");
    const VertexList& cycle = cls.cycle;
    auto pos = positions(cycle, n);
    ColoredGraph completion = with_edges(g, cls.missing_edges);

    // a 2/3-separator pair of the completion with the smallest largest flap
    VertexList best;
    std::size_t best_size = static_cast<std::size_t>(n) + 1;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b) {
            auto mask = mask_of(n, {a, b});
            std::size_t largest = 0;
            for (const auto& f : components(completion, &mask)) largest = std::max(largest, f.size());
            if (largest < best_size) {
                best_size = largest;
                best = {a, b};
            }
        }
    if (!Rational{2, 3}.admits(static_cast<long>(best_size), n))
        throw std::logic_error("no 2/3-separator pair found in the HOP completion");

    auto done = [&](const VertexList& xs, ContractCheck c, const char* how) {
        auto r = finish(g, xs, std::move(c.flaps), {2, 3}, how);
        // flaps come back sorted by least id; classes follow the same order
        r.flap_classes = std::move(c.classes);
        return r;
    };

    auto first = check_contract(g, pos, best);
    if (first.ok) {
        ++stat_pair;
        return done(best, std::move(first), "pair");
    }
    if (first.bad_flap >= 0) {
        const VertexList& flap = first.flaps[static_cast<std::size_t>(first.bad_flap)];
        if (auto rec = recipe(g, pos, flap, best[0], best[1])) {
            auto& [xs, adjacent] = *rec;
            if (!adjacent) ++stat_nonadjacent;
            auto c = check_contract(g, pos, xs);
            if (adjacent && c.ok) {
                bool full = xs.size() == 5;
                ++(full ? stat_extended : stat_extended_e2);
                return done(xs, std::move(c), full ? "extended" : "extended-e2");
            }
        }
        // search extensions inside the offending flap
        VertexList chosen;
        if (auto c = exhaustive_extension(g, pos, best, flap, 3, chosen, false)) {
            ++stat_fallback;
            return done(chosen, std::move(*c), "fallback");
        }
    }
    if (n <= 14) {
        VertexList all(n), chosen;
        std::iota(all.begin(), all.end(), 0);
        if (auto c = exhaustive_extension(g, pos, {}, all, 5, chosen, true)) {
            ++stat_exhaustive;
            return done(chosen, std::move(*c), "exhaustive");
        }
    }
    std::ostringstream msg;
    msg << "class-O separator construction failed on graph with " << n << " vertices, edges:";
    for (auto [u, v] : g.edges()) msg << ' ' << u << '-' << v;
    throw std::logic_error(msg.str());
}

std::optional<SeparatorResult> brute_min_separator(const ColoredGraph& g, Rational eps, int size_cap, int order_cap) {
    int n = g.order();
    if (n > order_cap) throw SeparatorError("graph exceeds the brute-force order cap");
    if (eps.num <= 0 || eps.den <= 0 || eps.num >= eps.den) throw SeparatorError("epsilon must lie in (0,1)");
    VertexList xs;
    std::vector<char> mask(n, 0);
    std::optional<SeparatorResult> found;
    std::function<bool(Vertex, int)> rec = [&](Vertex from, int left) {
        if (left == 0) {
            auto flaps = components(g, &mask);
            for (const auto& f : flaps)
                if (!eps.admits(static_cast<long>(f.size()), n)) return false;
            found = finish(g, xs, std::move(flaps), eps, "brute");
            return true;
        }
        for (Vertex v = from; v < n; ++v) {
            xs.push_back(v);
            mask[v] = 1;
            bool ok = rec(v + 1, left - 1);
            mask[v] = 0;
            xs.pop_back();
            if (ok) return true;
        }
        return false;
    };
    for (int size = 0; size <= std::min(size_cap, n); ++size)
        if (rec(0, size)) return found;
    return std::nullopt;
}

VerifyReport verify_separator(const ColoredGraph& g, const VertexList& xs, Rational eps, int m_cap) {
    int n = g.order();
    std::vector<char> mask(n, 0);
    for (Vertex x : xs) {
        if (!g.valid(x)) return {false, "separator vertex out of range", -1};
        mask[x] = 1;
    }
    auto flaps = components(g, &mask);
    for (std::size_t i = 0; i < flaps.size(); ++i)
        if (!eps.admits(static_cast<long>(flaps[i].size()), n))
            return {false,
                    "flap " + std::to_string(i) + " has " + std::to_string(flaps[i].size()) + " vertices, more than " +
                        std::to_string(eps.num) + "/" + std::to_string(eps.den) + " of " + std::to_string(n),
                    static_cast<int>(i)};
    if (static_cast<int>(flaps.size()) > m_cap)
        return {false, std::to_string(flaps.size()) + " flaps exceed the cap " + std::to_string(m_cap), -1};
    return {};
}

nlohmann::json to_json(const SeparatorResult& r) {
    nlohmann::json j;
    j["X"] = r.X;
    j["flaps"] = r.flaps;
    j["tags"] = r.tags();
    j["epsilon"] = std::to_string(r.epsilon.num) + "/" + std::to_string(r.epsilon.den);
    j["flap_count"] = r.flap_count();
    j["max_flap_fraction"] = r.max_flap_fraction;
    j["construction"] = r.construction;
    return j;
}

nlohmann::json to_json(const OClassification& c) {
    nlohmann::json j;
    j["tag"] = tag_name(c.tag);
    j["cycle"] = c.cycle;
    j["missing_edges"] = nlohmann::json::array();
    for (auto [u, v] : c.missing_edges) j["missing_edges"].push_back({u, v});
    return j;
}

}  // namespace fodef
