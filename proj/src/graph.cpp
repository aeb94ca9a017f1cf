#include "fodef/graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <unordered_map>

namespace fodef {

ColoredGraph::ColoredGraph(int n) : n_(n) {
    if (n < 0) throw GraphError("negative vertex count");
    words_ = (static_cast<std::size_t>(n) + 63) / 64;
    bits_.assign(static_cast<std::size_t>(n) * words_, 0);
    adj_.resize(static_cast<std::size_t>(n));
    colors_.resize(static_cast<std::size_t>(n));
}

ColoredGraph ColoredGraph::from_edges(int n, std::span<const std::pair<Vertex, Vertex>> edges,
                                      std::vector<std::vector<int>> colors) {
    ColoredGraph g(n);
    for (auto [u, v] : edges) {
        g.check_vertex(u);
        g.check_vertex(v);
        if (!g.add_edge(u, v))
            throw GraphError("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
    }
    if (!colors.empty()) {
        if (static_cast<int>(colors.size()) != n) throw GraphError("colors list length differs from n");
        for (int v = 0; v < n; ++v) g.set_colors(v, std::move(colors[static_cast<std::size_t>(v)]));
    }
    return g;
}

void ColoredGraph::check_vertex(Vertex v) const {
    if (!valid(v)) throw GraphError("vertex id " + std::to_string(v) + " out of range");
}

int ColoredGraph::max_degree() const noexcept {
    int d = 0;
    for (const auto& a : adj_) d = std::max(d, static_cast<int>(a.size()));
    return d;
}

bool ColoredGraph::add_edge(Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw GraphError("self-loop at vertex " + std::to_string(u));
    if (adjacent(u, v)) return false;
    bits_[static_cast<std::size_t>(u) * words_ + (static_cast<unsigned>(v) >> 6)] |= 1ULL << (v & 63);
    bits_[static_cast<std::size_t>(v) * words_ + (static_cast<unsigned>(u) >> 6)] |= 1ULL << (u & 63);
    auto& au = adj_[static_cast<std::size_t>(u)];
    au.insert(std::lower_bound(au.begin(), au.end(), v), v);
    auto& av = adj_[static_cast<std::size_t>(v)];
    av.insert(std::lower_bound(av.begin(), av.end(), u), u);
    ++edge_count_;
    return true;
}

bool ColoredGraph::remove_edge(Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v || !adjacent(u, v)) return false;
    bits_[static_cast<std::size_t>(u) * words_ + (static_cast<unsigned>(v) >> 6)] &= ~(1ULL << (v & 63));
    bits_[static_cast<std::size_t>(v) * words_ + (static_cast<unsigned>(u) >> 6)] &= ~(1ULL << (u & 63));
    auto& au = adj_[static_cast<std::size_t>(u)];
    au.erase(std::lower_bound(au.begin(), au.end(), v));
    auto& av = adj_[static_cast<std::size_t>(v)];
    av.erase(std::lower_bound(av.begin(), av.end(), u));
    --edge_count_;
    return true;
}

bool ColoredGraph::has_color(Vertex v, int c) const {
    const auto& cs = colors_[static_cast<std::size_t>(v)];
    return std::binary_search(cs.begin(), cs.end(), c);
}

void ColoredGraph::add_color(Vertex v, int c) {
    check_vertex(v);
    if (c < 0) throw GraphError("negative color id");
    auto& cs = colors_[static_cast<std::size_t>(v)];
    auto it = std::lower_bound(cs.begin(), cs.end(), c);
    if (it == cs.end() || *it != c) cs.insert(it, c);
}

void ColoredGraph::set_colors(Vertex v, std::vector<int> cs) {
    check_vertex(v);
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    if (!cs.empty() && cs.front() < 0) throw GraphError("negative color id");
    colors_[static_cast<std::size_t>(v)] = std::move(cs);
}

int ColoredGraph::max_color() const noexcept {
    int c = -1;
    for (const auto& cs : colors_)
        if (!cs.empty()) c = std::max(c, cs.back());
    return c;
}

std::vector<std::pair<Vertex, Vertex>> ColoredGraph::edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(static_cast<std::size_t>(edge_count_));
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v : adj_[static_cast<std::size_t>(u)])
            if (u < v) out.emplace_back(u, v);
    return out;
}

ColoredGraph ColoredGraph::induced(std::span<const Vertex> vs) const {
    ColoredGraph h(static_cast<int>(vs.size()));
    std::vector<int> local(static_cast<std::size_t>(n_), -1);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        check_vertex(vs[i]);
        if (local[static_cast<std::size_t>(vs[i])] >= 0) throw GraphError("repeated vertex in induced()");
        local[static_cast<std::size_t>(vs[i])] = static_cast<int>(i);
    }
    for (std::size_t i = 0; i < vs.size(); ++i) {
        h.colors_[i] = colors_[static_cast<std::size_t>(vs[i])];
        for (Vertex w : adj_[static_cast<std::size_t>(vs[i])]) {
            int j = local[static_cast<std::size_t>(w)];
            if (j > static_cast<int>(i)) h.add_edge(static_cast<int>(i), j);
        }
    }
    return h;
}

ColoredGraph ColoredGraph::underlying() const {
    ColoredGraph h = *this;
    for (auto& cs : h.colors_) cs.clear();
    return h;
}

// ---------------------------------------------------------------------------

std::vector<int> bfs_distances(const ColoredGraph& g, Vertex source, const std::vector<char>* blocked) {
    g.check_vertex(source);
    std::vector<int> dist(static_cast<std::size_t>(g.order()), -1);
    std::vector<Vertex> queue{source};
    dist[static_cast<std::size_t>(source)] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex u = queue[head];
        for (Vertex w : g.neighbors(u)) {
            if (dist[static_cast<std::size_t>(w)] >= 0) continue;
            if (blocked && (*blocked)[static_cast<std::size_t>(w)]) continue;
            dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
            queue.push_back(w);
        }
    }
    return dist;
}

std::optional<int> distance(const ColoredGraph& g, Vertex u, Vertex v) {
    g.check_vertex(v);
    int d = bfs_distances(g, u)[static_cast<std::size_t>(v)];
    if (d < 0) return std::nullopt;
    return d;
}

std::optional<int> distance(const ColoredGraph& g, Vertex u, std::span<const Vertex> xs) {
    auto dist = bfs_distances(g, u);
    std::optional<int> best;
    for (Vertex x : xs) {
        g.check_vertex(x);
        int d = dist[static_cast<std::size_t>(x)];
        if (d >= 0 && (!best || d < *best)) best = d;
    }
    return best;
}

std::vector<int> component_ids(const ColoredGraph& g, const std::vector<char>* removed) {
    std::vector<int> comp(static_cast<std::size_t>(g.order()), -1);
    int next = 0;
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < g.order(); ++s) {
        if (comp[static_cast<std::size_t>(s)] >= 0) continue;
        if (removed && (*removed)[static_cast<std::size_t>(s)]) continue;
        comp[static_cast<std::size_t>(s)] = next;
        stack.assign(1, s);
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(u)) {
                if (comp[static_cast<std::size_t>(w)] >= 0) continue;
                if (removed && (*removed)[static_cast<std::size_t>(w)]) continue;
                comp[static_cast<std::size_t>(w)] = next;
                stack.push_back(w);
            }
        }
        ++next;
    }
    return comp;
}

std::vector<VertexList> components(const ColoredGraph& g, const std::vector<char>* removed) {
    auto comp = component_ids(g, removed);
    int count = 0;
    for (int c : comp) count = std::max(count, c + 1);
    std::vector<VertexList> out(static_cast<std::size_t>(count));
    for (Vertex v = 0; v < g.order(); ++v)
        if (comp[static_cast<std::size_t>(v)] >= 0) out[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])].push_back(v);
    return out;
}

bool is_connected(const ColoredGraph& g) { return components(g).size() <= 1; }

int FlapDecomposition::flap_of(Vertex v) const {
    for (std::size_t i = 0; i < flaps.size(); ++i)
        if (std::binary_search(flaps[i].begin(), flaps[i].end(), v)) return static_cast<int>(i);
    return -1;
}

int fresh_color_base(const ColoredGraph& g, const ColoredGraph& h) {
    return 1 + std::max(g.max_color(), h.max_color());
}

FlapDecomposition flap_decompose(const ColoredGraph& g, std::span<const Vertex> xs,
                                 std::optional<int> fresh_base) {
    std::vector<char> removed(static_cast<std::size_t>(g.order()), 0);
    for (Vertex x : xs) {
        g.check_vertex(x);
        if (removed[static_cast<std::size_t>(x)]) throw GraphError("repeated separator vertex");
        removed[static_cast<std::size_t>(x)] = 1;
    }
    FlapDecomposition d;
    d.separator.assign(xs.begin(), xs.end());
    d.flaps = components(g, &removed);
    d.fresh_base = fresh_base.value_or(g.max_color() + 1);
    for (const auto& flap : d.flaps) {
        ColoredGraph f = g.induced(flap);
        for (std::size_t i = 0; i < flap.size(); ++i)
            for (std::size_t j = 0; j < xs.size(); ++j)
                if (g.adjacent(flap[i], xs[j])) f.add_color(static_cast<int>(i), d.fresh_base + static_cast<int>(j));
        d.recolored.push_back(std::move(f));
    }
    return d;
}

// ---------------------------------------------------------------------------

bool extends_partial_isomorphism(const ColoredGraph& g, const ColoredGraph& h,
                                 std::span<const std::pair<Vertex, Vertex>> pairs, Vertex x, Vertex y) {
    if (g.colors(x) != h.colors(y)) return false;
    for (auto [a, b] : pairs) {
        if ((a == x) != (b == y)) return false;
        if (a != x && g.adjacent(a, x) != h.adjacent(b, y)) return false;
    }
    return true;
}

bool check_partial_isomorphism(const ColoredGraph& g, const ColoredGraph& h, const PartialMap& m) {
    for (std::size_t i = 0; i < m.pairs.size(); ++i) {
        auto [x, y] = m.pairs[i];
        if (!g.valid(x) || !h.valid(y)) return false;
        if (!extends_partial_isomorphism(g, h, std::span(m.pairs).first(i), x, y)) return false;
    }
    return true;
}

// --- refinement ---------------------------------------------------------------

namespace {

/// Initial cell ids from color sets, canonical (ranked by the color set).
std::vector<int> color_cells(const ColoredGraph& g) {
    std::vector<std::vector<int>> keys;
    for (Vertex v = 0; v < g.order(); ++v) keys.push_back(g.colors(v));
    auto sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> cells(static_cast<std::size_t>(g.order()));
    for (Vertex v = 0; v < g.order(); ++v)
        cells[static_cast<std::size_t>(v)] =
            static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[static_cast<std::size_t>(v)]) - sorted.begin());
    return cells;
}

int count_cells(const std::vector<int>& cells) {
    int m = -1;
    for (int c : cells) m = std::max(m, c);
    return m + 1;
}

/// Color refinement to the coarsest equitable partition. Resulting ids are
/// ranks of signatures, hence invariant under relabeling.
std::vector<int> refine(const ColoredGraph& g, std::vector<int> cells) {
    const std::size_t n = static_cast<std::size_t>(g.order());
    int classes = count_cells(cells);
    std::vector<std::vector<int>> sig(n);
    std::vector<std::size_t> order(n);
    while (true) {
        for (std::size_t v = 0; v < n; ++v) {
            auto& s = sig[v];
            s.clear();
            s.push_back(cells[v]);
            for (Vertex w : g.neighbors(static_cast<Vertex>(v))) s.push_back(cells[static_cast<std::size_t>(w)]);
            std::sort(s.begin() + 1, s.end());
        }
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sig[a] < sig[b]; });
        std::vector<int> next(n);
        int id = -1;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == 0 || sig[order[i]] != sig[order[i - 1]]) ++id;
            next[order[i]] = id;
        }
        cells = std::move(next);
        if (id + 1 == classes) return cells;
        classes = id + 1;
    }
}

ColoredGraph disjoint_union(const ColoredGraph& a, const ColoredGraph& b) {
    ColoredGraph u(a.order() + b.order());
    for (auto [x, y] : a.edges()) u.add_edge(x, y);
    for (auto [x, y] : b.edges()) u.add_edge(x + a.order(), y + a.order());
    for (Vertex v = 0; v < a.order(); ++v) u.set_colors(v, a.colors(v));
    for (Vertex v = 0; v < b.order(); ++v) u.set_colors(v + a.order(), b.colors(v));
    return u;
}

bool verify_isomorphism(const ColoredGraph& g, const ColoredGraph& h, const VertexList& f) {
    for (Vertex v = 0; v < g.order(); ++v)
        if (g.colors(v) != h.colors(f[static_cast<std::size_t>(v)])) return false;
    for (auto [a, b] : g.edges())
        if (!h.adjacent(f[static_cast<std::size_t>(a)], f[static_cast<std::size_t>(b)])) return false;
    return true;
}

struct IsoSearch {
    const ColoredGraph& u;
    int ng;
    const std::vector<int>& h_twins;

    std::optional<VertexList> run(std::vector<int> cells) {
        cells = refine(u, std::move(cells));
        int k = count_cells(cells);
        std::vector<int> cg(static_cast<std::size_t>(k), 0), ch(static_cast<std::size_t>(k), 0);
        for (int v = 0; v < u.order(); ++v) (v < ng ? cg : ch)[static_cast<std::size_t>(cells[static_cast<std::size_t>(v)])]++;
        if (cg != ch) return std::nullopt;
        int target = -1;
        for (int c = 0; c < k; ++c)
            if (cg[static_cast<std::size_t>(c)] > 1 && (target < 0 || cg[static_cast<std::size_t>(c)] < cg[static_cast<std::size_t>(target)])) target = c;
        if (target < 0) {
            VertexList f(static_cast<std::size_t>(ng));
            std::vector<int> at(static_cast<std::size_t>(k));
            for (int v = ng; v < u.order(); ++v) at[static_cast<std::size_t>(cells[static_cast<std::size_t>(v)])] = v - ng;
            for (int v = 0; v < ng; ++v) f[static_cast<std::size_t>(v)] = at[static_cast<std::size_t>(cells[static_cast<std::size_t>(v)])];
            return f;
        }
        int x = -1;
        for (int v = 0; v < ng && x < 0; ++v)
            if (cells[static_cast<std::size_t>(v)] == target) x = v;
        std::vector<int> tried;
        for (int v = ng; v < u.order(); ++v) {
            if (cells[static_cast<std::size_t>(v)] != target) continue;
            int tw = h_twins[static_cast<std::size_t>(v - ng)];
            if (std::find(tried.begin(), tried.end(), tw) != tried.end()) continue;
            tried.push_back(tw);
            auto next = cells;
            next[static_cast<std::size_t>(x)] = k;
            next[static_cast<std::size_t>(v)] = k;
            if (auto f = run(std::move(next))) return f;
        }
        return std::nullopt;
    }
};

std::string certificate(const ColoredGraph& g, const std::vector<int>& cells) {
    const int n = g.order();
    VertexList by_cell(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) by_cell[static_cast<std::size_t>(cells[static_cast<std::size_t>(v)])] = v;
    std::string s = std::to_string(n) + ":";
    for (Vertex v : by_cell) {
        for (int c : g.colors(v)) s += std::to_string(c) + ",";
        s += ";";
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) s += g.adjacent(by_cell[static_cast<std::size_t>(i)], by_cell[static_cast<std::size_t>(j)]) ? '1' : '0';
    return s;
}

void canonical_search(const ColoredGraph& g, const std::vector<int>& twins, std::vector<int> cells,
                      std::optional<std::string>& best) {
    cells = refine(g, std::move(cells));
    int k = count_cells(cells);
    if (k == g.order()) {
        auto cert = certificate(g, cells);
        if (!best || cert < *best) best = std::move(cert);
        return;
    }
    std::vector<int> size(static_cast<std::size_t>(k), 0);
    for (int c : cells) size[static_cast<std::size_t>(c)]++;
    int target = -1;
    for (int c = 0; c < k; ++c)
        if (size[static_cast<std::size_t>(c)] > 1 && (target < 0 || size[static_cast<std::size_t>(c)] < size[static_cast<std::size_t>(target)])) target = c;
    std::vector<int> tried;
    for (Vertex v = 0; v < g.order(); ++v) {
        if (cells[static_cast<std::size_t>(v)] != target) continue;
        if (std::find(tried.begin(), tried.end(), twins[static_cast<std::size_t>(v)]) != tried.end()) continue;
        tried.push_back(twins[static_cast<std::size_t>(v)]);
        std::vector<int> next(cells.size());
        for (std::size_t i = 0; i < cells.size(); ++i) next[i] = 2 * cells[i] + 1;
        next[static_cast<std::size_t>(v)] = 2 * target;
        canonical_search(g, twins, std::move(next), best);
    }
}

}  // namespace

std::vector<int> twin_classes(const ColoredGraph& g) {
    const int n = g.order();
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int v) {
        while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
        return v;
    };
    for (int closed = 0; closed < 2; ++closed) {
        std::map<std::pair<std::vector<int>, VertexList>, int> seen;
        for (Vertex v = 0; v < n; ++v) {
            VertexList key = g.neighbors(v);
            if (closed) key.insert(std::lower_bound(key.begin(), key.end(), v), v);
            auto [it, fresh] = seen.try_emplace({g.colors(v), std::move(key)}, v);
            if (!fresh) parent[static_cast<std::size_t>(find(v))] = find(it->second);
        }
    }
    std::vector<int> out(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) out[static_cast<std::size_t>(v)] = find(v);
    return out;
}

std::optional<VertexList> find_isomorphism(const ColoredGraph& g, const ColoredGraph& h) {
    if (g.order() != h.order() || g.size() != h.size()) return std::nullopt;
    if (g.order() == 0) return VertexList{};
    ColoredGraph u = disjoint_union(g, h);
    auto h_twins = twin_classes(h);
    IsoSearch search{u, g.order(), h_twins};
    auto f = search.run(color_cells(u));
    if (f && !verify_isomorphism(g, h, *f)) return std::nullopt;
    return f;
}

std::string canonical_form(const ColoredGraph& g) {
    if (g.order() == 0) return "0:";
    std::optional<std::string> best;
    canonical_search(g, twin_classes(g), color_cells(g), best);
    return *best;
}

std::uint64_t invariant_hash(const ColoredGraph& g) {
    auto cells = refine(g, color_cells(g));
    int k = count_cells(cells);
    std::vector<int> size(static_cast<std::size_t>(k), 0);
    for (int c : cells) size[static_cast<std::size_t>(c)]++;
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](std::uint64_t x) { h = (h ^ x) * 1099511628211ULL; };
    mix(static_cast<std::uint64_t>(g.order()));
    mix(static_cast<std::uint64_t>(g.size()));
    for (int s : size) mix(static_cast<std::uint64_t>(s));
    std::vector<std::vector<int>> cs;
    for (Vertex v = 0; v < g.order(); ++v) cs.push_back(g.colors(v));
    std::sort(cs.begin(), cs.end());
    for (const auto& c : cs) {
        mix(0xffffULL);
        for (int x : c) mix(static_cast<std::uint64_t>(x));
    }
    return h;
}

std::vector<int> isomorphism_classes(std::span<const ColoredGraph> graphs) {
    std::vector<int> cls(graphs.size(), -1);
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> reps;  // hash -> representative indices
    int next = 0;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        auto& bucket = reps[invariant_hash(graphs[i])];
        for (std::size_t r : bucket)
            if (are_isomorphic(graphs[r], graphs[i])) {
                cls[i] = cls[r];
                break;
            }
        if (cls[i] < 0) {
            cls[i] = next++;
            bucket.push_back(i);
        }
    }
    return cls;
}

SimilarFlapCensus similar_flap_census(const ColoredGraph& g, std::span<const Vertex> xs) {
    auto d = flap_decompose(g, xs);
    auto cls = isomorphism_classes(d.recolored);
    SimilarFlapCensus out;
    for (std::size_t i = 0; i < cls.size(); ++i) {
        if (static_cast<std::size_t>(cls[i]) >= out.classes.size()) out.classes.resize(static_cast<std::size_t>(cls[i]) + 1);
        out.classes[static_cast<std::size_t>(cls[i])].push_back(static_cast<int>(i));
    }
    for (const auto& c : out.classes) out.max_class = std::max(out.max_class, static_cast<int>(c.size()));
    return out;
}

}  // namespace fodef
