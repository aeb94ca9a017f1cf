#include "fodef/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

namespace fodef {

std::string provider_name(SeparatorProvider p) {
    switch (p) {
        case SeparatorProvider::TreeCentroid: return "tree-centroid";
        case SeparatorProvider::ClassO: return "class-o";
        case SeparatorProvider::BruteMin: return "brute";
    }
    return "?";
}

SeparatorProvider provider_from_name(const std::string& name) {
    if (name == "tree-centroid" || name == "centroid" || name == "tree") return SeparatorProvider::TreeCentroid;
    if (name == "class-o" || name == "class_O" || name == "hop") return SeparatorProvider::ClassO;
    if (name == "brute" || name == "brute-min") return SeparatorProvider::BruteMin;
    throw std::invalid_argument("unknown separator provider '" + name + "'");
}

int StrategyConfig::separator_size() const {
    switch (provider) {
        case SeparatorProvider::TreeCentroid: return 1;
        case SeparatorProvider::ClassO: return 5;
        case SeparatorProvider::BruteMin: return brute_size_cap;
    }
    return 0;
}

void StrategyConfig::validate() const {
    if (eps.den <= 0 || eps.num <= 0 || eps.num >= eps.den) throw StrategyError("eps must lie strictly between 0 and 1");
    if (depth < 0) throw StrategyError("depth must be non-negative");
    if (variant == Variant::S && m < 1) throw StrategyError("strategy S needs a flap-count bound m >= 1");
    if (variant == Variant::SStar && s < 1) throw StrategyError("strategy S* needs a similar-flap bound s >= 1");
    if (provider == SeparatorProvider::BruteMin && brute_size_cap < 1) throw StrategyError("brute size cap must be >= 1");
}

StrategyConfig tree_config(int n, int d) {
    StrategyConfig c;
    c.provider = SeparatorProvider::TreeCentroid;
    c.m = std::max(d, 1);
    c.depth = static_cast<int>(choose_depth(n, c.m, c.eps.value()));
    return c;
}

StrategyConfig class_O_config(int n) {
    StrategyConfig c;
    c.provider = SeparatorProvider::ClassO;
    c.m = 7;
    c.depth = static_cast<int>(choose_depth(n, c.m, c.eps.value()));
    return c;
}

StrategyConfig brute_star_config(int n, int s, int size_cap) {
    StrategyConfig c;
    c.provider = SeparatorProvider::BruteMin;
    c.variant = Variant::SStar;
    c.s = s;
    c.brute_size_cap = size_cap;
    c.depth = static_cast<int>(choose_depth(n, s, c.eps.value(), DepthRule::Lemma52));
    return c;
}

std::string phase_name(Phase p) {
    switch (p) {
        case Phase::S0: return "S0";
        case Phase::Case1: return "CASE1";
        case Phase::Case2: return "CASE2";
        case Phase::Halving: return "HALVING";
        case Phase::OutLemma: return "OUT_LEMMA";
        case Phase::Disconnected: return "DISCONNECTED";
        case Phase::Separator: return "SEPARATOR";
    }
    return "?";
}

nlohmann::json to_json(const StrategyTrace& t) {
    nlohmann::json j;
    j["total_rounds"] = t.total_rounds;
    j["alternations"] = t.alternations;
    j["lemma33_checks"] = t.lemma33_checks;
    j["lemma33_failures"] = t.lemma33_failures;
    j["halving_overruns"] = t.halving_overruns;
    j["records"] = nlohmann::json::array();
    for (const auto& r : t.records) {
        nlohmann::json e{{"phase", phase_name(r.phase)}, {"depth", r.depth},      {"arena", r.arena},
                         {"arena_p", r.arena_p},         {"rounds", r.rounds},    {"start_round", r.start_round}};
        if (!r.X.empty()) e["X"] = r.X;
        if (!r.multiplicities.empty()) {
            e["m"] = nlohmann::json::array();
            e["m_p"] = nlohmann::json::array();
            for (auto [a, b] : r.multiplicities) {
                e["m"].push_back(a);
                e["m_p"].push_back(b);
            }
            e["f"] = r.flap_count;
        }
        if (r.phase == Phase::Halving) e["bound"] = r.halving_bound;
        j["records"].push_back(std::move(e));
    }
    return j;
}

int ceil_log2(long n) {
    int r = 0;
    while ((1L << r) < n) ++r;
    return r;
}

// --- the agent ---------------------------------------------------------------

struct StrategyAgent::Impl {
    enum class Step { Start, Disconnect, S0, SelectX, Case1, Case2Probe, StarProbe };
    enum class Kind { None, Plain, XSelect, ArenaJump, Halving };

    struct Frame {
        bool top = true;
        int depth = 0;
        VertexList F, Fp;
        std::vector<char> inF, inFp;
        Step step = Step::Start;
        VertexList X;
        std::size_t x_pos = 0;
        std::vector<VertexList> flaps, flaps_p;
        std::vector<int> flap_of, flap_of_p;
        std::vector<int> cls, cls_p;
        int H = -1;
        std::vector<int> todo;
        bool jumped = false;
        int disconnect_moves = 0;
    };

    struct Halving {
        bool active = false;
        Side side = Side::G;
        Vertex u1 = 0, u2 = 0, v1 = 0, v2 = 0;
        std::vector<char> blocked;     // outside the flap, on Spoiler's side
        std::vector<int> comp_other;   // Y_I-flap ids on the other side
        Vertex pending = -1;
    };

    struct PrefixSplit {
        int seps = -1;
        std::vector<int> cg, cgp, size_g, size_gp;
    };

    struct Cache {
        std::map<VertexList, SeparatorResult> seps;
        std::map<VertexList, OClassification> hints;
    };

    StrategyConfig cfg;
    std::optional<HalvingSetup> initial;
    GraphPtr g, gp;
    bool started = false;
    int fresh = 0;
    int first_round = 0;

    std::vector<std::vector<int>> levels;  // separator pebbles (round indices) per level
    std::vector<int> sep_level;            // per round: level index, -1 for ordinary pebbles
    std::vector<PrefixSplit> splits;
    bool full_check = true;

    Frame frame;
    Halving halving;
    Kind last = Kind::None;
    std::vector<char> jump_arena;  // G-side arena of the last arena move in G'
    std::shared_ptr<Cache> cache = std::make_shared<Cache>();
    StrategyTrace tr;

    const ColoredGraph& graph(Side s) const { return s == Side::G ? *g : *gp; }

    static Vertex on(const Round& r, Side s) { return s == Side::G ? r.x() : r.y(); }

    void push_record(Phase p, int round, int arena, int arena_p) {
        TraceRecord r;
        r.phase = p;
        r.depth = frame.depth;
        r.arena = arena;
        r.arena_p = arena_p;
        r.start_round = round;
        tr.records.push_back(std::move(r));
    }

    void start(const GameState& s) {
        started = true;
        g = s.g_ptr();
        gp = s.gp_ptr();
        fresh = fresh_color_base(*g, *gp);
        first_round = s.round();
        sep_level.assign(static_cast<std::size_t>(s.round()), -1);
        if (initial) {
            begin_halving(s, *initial);
            return;
        }
        frame = Frame{};
        frame.depth = cfg.depth;
        for (Vertex v = 0; v < g->order(); ++v) frame.F.push_back(v);
        for (Vertex v = 0; v < gp->order(); ++v) frame.Fp.push_back(v);
        frame.inF.assign(static_cast<std::size_t>(g->order()), 1);
        frame.inFp.assign(static_cast<std::size_t>(gp->order()), 1);
    }

    // Accounts for the outcome of the previous move.
    void ingest(const GameState& s) {
        sep_level.resize(static_cast<std::size_t>(s.round()), -1);
        if (s.round() == 0) return;
        int r = s.round() - 1;
        const Round& rd = s.rounds().back();
        switch (last) {
            case Kind::XSelect:
                sep_level[static_cast<std::size_t>(r)] = static_cast<int>(levels.size()) - 1;
                levels.back().push_back(r);
                break;
            case Kind::Halving: {
                Vertex v = rd.duplicator;
                int cv = halving.comp_other[static_cast<std::size_t>(v)];
                if (cv != halving.comp_other[static_cast<std::size_t>(halving.v1)]) {
                    halving.u2 = halving.u1;
                    halving.v2 = halving.v1;
                }
                halving.u1 = halving.pending;
                halving.v1 = v;
                break;
            }
            case Kind::ArenaJump:
                if (!jump_arena[static_cast<std::size_t>(rd.duplicator)]) {
                    ++tr.lemma33_checks;
                    ++tr.lemma33_failures;  // the game went on
                }
                break;
            default: break;
        }
        last = Kind::None;
    }

    const PrefixSplit& split(const GameState& s, std::size_t L) {
        if (splits.size() <= L) splits.resize(L + 1);
        int count = 0;
        for (std::size_t l = 0; l < L; ++l) count += static_cast<int>(levels[l].size());
        PrefixSplit& sp = splits[L];
        if (sp.seps == count) return sp;
        std::vector<char> rg(static_cast<std::size_t>(g->order()), 0), rgp(static_cast<std::size_t>(gp->order()), 0);
        for (std::size_t l = 0; l < L; ++l)
            for (int r : levels[l]) {
                rg[static_cast<std::size_t>(s.rounds()[static_cast<std::size_t>(r)].x())] = 1;
                rgp[static_cast<std::size_t>(s.rounds()[static_cast<std::size_t>(r)].y())] = 1;
            }
        sp.cg = component_ids(*g, &rg);
        sp.cgp = component_ids(*gp, &rgp);
        auto sizes = [](const std::vector<int>& ids) {
            std::vector<int> out;
            for (int c : ids)
                if (c >= 0) {
                    if (static_cast<int>(out.size()) <= c) out.resize(static_cast<std::size_t>(c) + 1, 0);
                    ++out[static_cast<std::size_t>(c)];
                }
            return out;
        };
        sp.size_g = sizes(sp.cg);
        sp.size_gp = sizes(sp.cgp);
        sp.seps = count;
        return sp;
    }

    // Smallest-flap Lemma 3.1 position with I a prefix of the separator levels.
    std::optional<HalvingSetup> find_position(const GameState& s) {
        int R = s.round();
        if (R - first_round < 1 || R < 2) return std::nullopt;
        const auto& rounds = s.rounds();
        std::optional<HalvingSetup> best;
        int best_size = 0;
        std::size_t top = levels.size();
        for (std::size_t L = top + 1; L-- > 0;) {
            const PrefixSplit& sp = split(s, L);
            auto in_I = [&](int r) {
                int l = sep_level[static_cast<std::size_t>(r)];
                return l >= 0 && static_cast<std::size_t>(l) < L;
            };
            auto test = [&](int i, int j) {
                if (in_I(i) || in_I(j)) return;
                const Round& a = rounds[static_cast<std::size_t>(i)];
                const Round& b = rounds[static_cast<std::size_t>(j)];
                if (a.x() == b.x()) return;
                int ca = sp.cg[static_cast<std::size_t>(a.x())], cb = sp.cg[static_cast<std::size_t>(b.x())];
                int da = sp.cgp[static_cast<std::size_t>(a.y())], db = sp.cgp[static_cast<std::size_t>(b.y())];
                if (ca < 0 || cb < 0 || da < 0 || db < 0) return;
                bool same_g = ca == cb, same_gp = da == db;
                if (same_g == same_gp) return;
                int size = same_g ? sp.size_g[static_cast<std::size_t>(ca)] : sp.size_gp[static_cast<std::size_t>(da)];
                if (!best || size < best_size) {
                    HalvingSetup h;
                    h.side = same_g ? Side::G : Side::Gp;
                    h.i = i;
                    h.j = j;
                    for (std::size_t l = 0; l < L; ++l) h.I.insert(h.I.end(), levels[l].begin(), levels[l].end());
                    best = std::move(h);
                    best_size = size;
                }
            };
            if (L == top || full_check) {
                for (int i = 0; i < R; ++i)
                    for (int j = i + 1; j < R; ++j) test(i, j);
            } else {
                for (int i = 0; i < R - 1; ++i) test(i, R - 1);
            }
        }
        full_check = false;
        return best;
    }

    void begin_halving(const GameState& s, const HalvingSetup& h) {
        const auto& rounds = s.rounds();
        const ColoredGraph& A = graph(h.side);
        const ColoredGraph& B = graph(other(h.side));
        std::vector<char> ra(static_cast<std::size_t>(A.order()), 0), rb(static_cast<std::size_t>(B.order()), 0);
        for (int r : h.I) {
            ra[static_cast<std::size_t>(on(rounds[static_cast<std::size_t>(r)], h.side))] = 1;
            rb[static_cast<std::size_t>(on(rounds[static_cast<std::size_t>(r)], other(h.side)))] = 1;
        }
        const Round& ri = rounds[static_cast<std::size_t>(h.i)];
        const Round& rj = rounds[static_cast<std::size_t>(h.j)];
        halving = Halving{};
        halving.active = true;
        halving.side = h.side;
        halving.u1 = on(ri, h.side);
        halving.u2 = on(rj, h.side);
        halving.v1 = on(ri, other(h.side));
        halving.v2 = on(rj, other(h.side));
        auto ca = component_ids(A, &ra);
        halving.comp_other = component_ids(B, &rb);
        int c = ca[static_cast<std::size_t>(halving.u1)];
        halving.blocked.assign(static_cast<std::size_t>(A.order()), 1);
        int size = 0;
        for (Vertex v = 0; v < A.order(); ++v)
            if (ca[static_cast<std::size_t>(v)] == c) {
                halving.blocked[static_cast<std::size_t>(v)] = 0;
                ++size;
            }
        push_record(Phase::Halving, s.round(), size, 0);
        tr.records.back().halving_bound = ceil_log2(size);
    }

    SpoilerMove halving_move() {
        const ColoredGraph& A = graph(halving.side);
        auto d1 = bfs_distances(A, halving.u1, &halving.blocked);
        auto d2 = bfs_distances(A, halving.u2, &halving.blocked);
        int D = d1[static_cast<std::size_t>(halving.u2)];
        Vertex best = -1;
        int best_key = 0;
        for (Vertex v = 0; v < A.order(); ++v) {
            int a = d1[static_cast<std::size_t>(v)], b = d2[static_cast<std::size_t>(v)];
            if (a <= 0 || b <= 0 || a + b != D) continue;
            int key = std::max(a, b);
            if (best < 0 || key < best_key) {
                best = v;
                best_key = key;
            }
        }
        if (best < 0) throw std::logic_error("halving: anchors are not separated by an inner vertex");
        halving.pending = best;
        last = Kind::Halving;
        return {halving.side, best};
    }

    // --- separators -------------------------------------------------------

    const SeparatorResult& separator_of(const VertexList& F) {
        auto it = cache->seps.find(F);
        if (it != cache->seps.end()) return it->second;
        ColoredGraph a = g->induced(F).underlying();
        SeparatorResult r;
        try {
            switch (cfg.provider) {
                case SeparatorProvider::TreeCentroid: r = tree_centroid_separator(a); break;
                case SeparatorProvider::ClassO: {
                    auto h = cache->hints.find(F);
                    r = class_O_separator(a, h == cache->hints.end() ? nullptr : &h->second);
                    break;
                }
                case SeparatorProvider::BruteMin: {
                    auto o = brute_min_separator(a, cfg.eps, cfg.brute_size_cap);
                    if (!o) throw StrategyError("no separator within the brute-force size cap");
                    r = std::move(*o);
                    break;
                }
            }
        } catch (const StrategyError&) {
            throw;
        } catch (const std::exception& e) {
            throw StrategyError(std::string("separator provider failed: ") + e.what());
        }
        int n = static_cast<int>(F.size());
        if (static_cast<int>(r.X.size()) > cfg.separator_size())
            throw StrategyError("separator larger than the certified size");
        for (const auto& fl : r.flaps)
            if (!cfg.eps.admits(static_cast<long>(fl.size()), n)) throw StrategyError("separator flap exceeds eps*n");
        if (cfg.variant == Variant::S && r.flap_count() > cfg.m) throw StrategyError("separator has more than m flaps");
        if (cfg.variant == Variant::SStar && similar_flap_census(a, r.X).max_class > cfg.s)
            throw StrategyError("separator has more than s similar flaps");
        auto global = [&](const VertexList& local) {
            VertexList out;
            for (Vertex v : local) out.push_back(F[static_cast<std::size_t>(v)]);
            return out;
        };
        for (std::size_t i = 0; i < r.flaps.size(); ++i) {
            VertexList gl = global(r.flaps[i]);
            if (i < r.flap_classes.size()) cache->hints.emplace(gl, r.flap_classes[i]);
            r.flaps[i] = std::move(gl);
        }
        r.X = global(r.X);
        return cache->seps.emplace(F, std::move(r)).first->second;
    }

    // --- arena bookkeeping ------------------------------------------------

    std::vector<char> pebbled(const GameState& s, Side side) const {
        std::vector<char> out(static_cast<std::size_t>(graph(side).order()), 0);
        for (const auto& r : s.rounds()) out[static_cast<std::size_t>(on(r, side))] = 1;
        return out;
    }

    // (G flap, G' flap) for ordinary pebbles inside the arena.
    std::vector<std::pair<int, int>> visited(const GameState& s) const {
        std::vector<std::pair<int, int>> out;
        const auto& rounds = s.rounds();
        for (std::size_t r = 0; r < rounds.size(); ++r) {
            if (sep_level[r] >= 0) continue;
            int a = frame.flap_of[static_cast<std::size_t>(rounds[r].x())];
            int b = frame.flap_of_p[static_cast<std::size_t>(rounds[r].y())];
            if (a >= 0 && b >= 0) out.emplace_back(a, b);
        }
        return out;
    }

    bool flap_visited(const GameState& s, int a) const {
        for (auto [x, y] : visited(s))
            if (x == a) return true;
        return false;
    }

    bool flap_visited_p(const GameState& s, int b) const {
        for (auto [x, y] : visited(s))
            if (y == b) return true;
        return false;
    }

    void analyze(const GameState& s) {
        const auto& rounds = s.rounds();
        std::vector<char> rg(static_cast<std::size_t>(g->order()), 0), rgp(static_cast<std::size_t>(gp->order()), 0);
        for (Vertex v = 0; v < g->order(); ++v) rg[static_cast<std::size_t>(v)] = !frame.inF[static_cast<std::size_t>(v)];
        for (Vertex v = 0; v < gp->order(); ++v)
            rgp[static_cast<std::size_t>(v)] = !frame.inFp[static_cast<std::size_t>(v)];
        for (int r : levels.back()) {
            rg[static_cast<std::size_t>(rounds[static_cast<std::size_t>(r)].x())] = 1;
            rgp[static_cast<std::size_t>(rounds[static_cast<std::size_t>(r)].y())] = 1;
        }
        frame.flaps = components(*g, &rg);
        frame.flaps_p = components(*gp, &rgp);
        frame.flap_of.assign(static_cast<std::size_t>(g->order()), -1);
        frame.flap_of_p.assign(static_cast<std::size_t>(gp->order()), -1);
        for (std::size_t i = 0; i < frame.flaps.size(); ++i)
            for (Vertex v : frame.flaps[i]) frame.flap_of[static_cast<std::size_t>(v)] = static_cast<int>(i);
        for (std::size_t i = 0; i < frame.flaps_p.size(); ++i)
            for (Vertex v : frame.flaps_p[i]) frame.flap_of_p[static_cast<std::size_t>(v)] = static_cast<int>(i);

        // Recolor: fresh color per separator pebble, on both sides.
        std::vector<std::pair<Vertex, Vertex>> seps;
        for (const auto& lv : levels)
            for (int r : lv) seps.emplace_back(rounds[static_cast<std::size_t>(r)].x(), rounds[static_cast<std::size_t>(r)].y());
        auto recolor = [&](const ColoredGraph& G, const VertexList& fl, bool left) {
            ColoredGraph h = G.induced(fl);
            for (std::size_t v = 0; v < fl.size(); ++v)
                for (std::size_t c = 0; c < seps.size(); ++c)
                    if (G.adjacent(fl[v], left ? seps[c].first : seps[c].second))
                        h.add_color(static_cast<Vertex>(v), fresh + static_cast<int>(c));
            return h;
        };
        std::vector<ColoredGraph> all;
        for (const auto& fl : frame.flaps) all.push_back(recolor(*g, fl, true));
        for (const auto& fl : frame.flaps_p) all.push_back(recolor(*gp, fl, false));
        auto ids = isomorphism_classes(all);
        std::size_t f = frame.flaps.size();
        frame.cls.assign(ids.begin(), ids.begin() + static_cast<long>(f));
        frame.cls_p.assign(ids.begin() + static_cast<long>(f), ids.end());
        int K = ids.empty() ? 0 : *std::max_element(ids.begin(), ids.end()) + 1;
        std::vector<std::pair<int, int>> mult(static_cast<std::size_t>(K), {0, 0});
        for (int c : frame.cls) ++mult[static_cast<std::size_t>(c)].first;
        for (int c : frame.cls_p) ++mult[static_cast<std::size_t>(c)].second;

        Phase phase = Phase::Case2;
        frame.H = -1;
        for (int c = 0; c < K && frame.H < 0; ++c)
            if (mult[static_cast<std::size_t>(c)].first > mult[static_cast<std::size_t>(c)].second) {
                frame.H = c;
                phase = Phase::Case1;
            }
        if (frame.H < 0) {
            bool differ = false;
            for (auto [a, b] : mult) differ |= a != b;
            if (!differ) throw std::logic_error("flap multisets agree although the arenas are not isomorphic");
            if (cfg.variant == Variant::SStar)
                for (int c = 0; c < K && frame.H < 0; ++c)
                    if (mult[static_cast<std::size_t>(c)].first < mult[static_cast<std::size_t>(c)].second) frame.H = c;
        }
        frame.todo.clear();
        for (int a = 0; a < static_cast<int>(f); ++a)
            if (frame.H < 0 || frame.cls[static_cast<std::size_t>(a)] == frame.H) frame.todo.push_back(a);
        frame.step = phase == Phase::Case1 ? Step::Case1 : cfg.variant == Variant::S ? Step::Case2Probe : Step::StarProbe;
        frame.jumped = false;

        push_record(phase, s.round(), static_cast<int>(frame.F.size()), static_cast<int>(frame.Fp.size()));
        tr.records.back().X = frame.X;
        tr.records.back().multiplicities = std::move(mult);
        tr.records.back().flap_count = static_cast<int>(f);
    }

    void recurse(int a, int b) {
        Frame nf;
        nf.top = false;
        nf.depth = frame.depth - 1;
        nf.F = frame.flaps[static_cast<std::size_t>(a)];
        nf.Fp = frame.flaps_p[static_cast<std::size_t>(b)];
        nf.inF.assign(static_cast<std::size_t>(g->order()), 0);
        nf.inFp.assign(static_cast<std::size_t>(gp->order()), 0);
        for (Vertex v : nf.F) nf.inF[static_cast<std::size_t>(v)] = 1;
        for (Vertex v : nf.Fp) nf.inFp[static_cast<std::size_t>(v)] = 1;
        frame = std::move(nf);
    }

    // Non-isomorphic visited pair, the trigger for S_{i-1} (or S*_{i-1}).
    std::optional<std::pair<int, int>> mismatched(const GameState& s) const {
        for (auto [a, b] : visited(s))
            if (frame.cls[static_cast<std::size_t>(a)] != frame.cls_p[static_cast<std::size_t>(b)]) return std::make_pair(a, b);
        return std::nullopt;
    }

    Vertex probe_vertex(int a) const { return frame.flaps[static_cast<std::size_t>(a)].front(); }

    // Least vertex adjacent to X' in an unvisited G'-flap (of class H when H >= 0).
    std::optional<Vertex> jump_vertex(const GameState& s, int H) const {
        std::vector<char> xp(static_cast<std::size_t>(gp->order()), 0);
        for (int r : levels.back()) xp[static_cast<std::size_t>(s.rounds()[static_cast<std::size_t>(r)].y())] = 1;
        std::vector<char> used(frame.flaps_p.size(), 0);
        for (auto [a, b] : visited(s)) used[static_cast<std::size_t>(b)] = 1;
        for (Vertex u = 0; u < gp->order(); ++u) {
            int b = frame.flap_of_p[static_cast<std::size_t>(u)];
            if (b < 0 || used[static_cast<std::size_t>(b)]) continue;
            if (H >= 0 && frame.cls_p[static_cast<std::size_t>(b)] != H) continue;
            for (Vertex w : gp->neighbors(u))
                if (xp[static_cast<std::size_t>(w)]) return u;
        }
        return std::nullopt;
    }

    SpoilerMove arena_jump(Vertex u) {
        jump_arena = frame.inF;
        last = Kind::ArenaJump;
        return {Side::Gp, u};
    }

    std::optional<SpoilerMove> frame_move(const GameState& s) {
        for (;;) {
            switch (frame.step) {
                case Step::Start: {
                    int n = static_cast<int>(frame.F.size());
                    if (frame.top && frame.depth >= 1 && !is_connected(gp->induced(frame.Fp))) {
                        frame.step = Step::Disconnect;
                        push_record(Phase::Disconnected, s.round(), n, static_cast<int>(frame.Fp.size()));
                        continue;
                    }
                    if (frame.depth == 0 || cfg.separator_size() >= n) {
                        frame.step = Step::S0;
                        push_record(Phase::S0, s.round(), n, static_cast<int>(frame.Fp.size()));
                        continue;
                    }
                    frame.X = separator_of(frame.F).X;
                    frame.x_pos = 0;
                    levels.emplace_back();
                    frame.step = Step::SelectX;
                    push_record(Phase::Separator, s.round(), n, static_cast<int>(frame.Fp.size()));
                    tr.records.back().X = frame.X;
                    continue;
                }
                case Step::Disconnect: {
                    if (frame.disconnect_moves == 2) throw std::logic_error("disconnected G': no halving position after two moves");
                    auto comps = components(*gp);
                    Vertex u = comps[static_cast<std::size_t>(frame.disconnect_moves++)].front();
                    last = Kind::Plain;
                    return SpoilerMove{Side::Gp, u};
                }
                case Step::S0: {
                    auto pg = pebbled(s, Side::G);
                    for (Vertex v : frame.F)
                        if (!pg[static_cast<std::size_t>(v)]) {
                            last = Kind::Plain;
                            return SpoilerMove{Side::G, v};
                        }
                    auto pgp = pebbled(s, Side::Gp);
                    std::optional<Vertex> pick, fallback;
                    for (Vertex u : frame.Fp) {
                        if (pgp[static_cast<std::size_t>(u)]) continue;
                        if (!fallback) fallback = u;
                        for (Vertex w : gp->neighbors(u))
                            if (frame.inFp[static_cast<std::size_t>(w)] && pgp[static_cast<std::size_t>(w)]) pick = u;
                        if (pick) break;
                    }
                    if (!pick) pick = fallback;
                    if (!pick) throw std::logic_error("S0: no free vertex left in G'");
                    return arena_jump(*pick);
                }
                case Step::SelectX: {
                    if (frame.x_pos < frame.X.size()) {
                        Vertex x = frame.X[frame.x_pos++];
                        const auto& rounds = s.rounds();
                        int found = -1;
                        for (std::size_t r = 0; r < rounds.size() && found < 0; ++r)
                            if (rounds[r].x() == x) found = static_cast<int>(r);
                        if (found < 0) {
                            last = Kind::XSelect;
                            return SpoilerMove{Side::G, x};
                        }
                        if (sep_level[static_cast<std::size_t>(found)] < 0) {
                            sep_level[static_cast<std::size_t>(found)] = static_cast<int>(levels.size()) - 1;
                            levels.back().push_back(found);
                        }
                        continue;
                    }
                    if (auto h = find_position(s)) {
                        begin_halving(s, *h);
                        return std::nullopt;
                    }
                    analyze(s);
                    continue;
                }
                case Step::Case1:
                case Step::StarProbe: {
                    if (auto ab = mismatched(s)) {
                        recurse(ab->first, ab->second);
                        continue;
                    }
                    if (frame.jumped) throw std::logic_error("S*: jump reply left no recursion or halving position");
                    for (int a : frame.todo)
                        if (!flap_visited(s, a)) {
                            last = Kind::Plain;
                            return SpoilerMove{Side::G, probe_vertex(a)};
                        }
                    if (frame.step == Step::Case1) throw std::logic_error("Case 1: probes exhausted without a decision");
                    auto u = jump_vertex(s, frame.H);
                    if (!u) throw std::logic_error("S*: no unvisited G'-flap of the chosen type");
                    frame.jumped = true;
                    return arena_jump(*u);
                }
                case Step::Case2Probe: {
                    if (frame.jumped) throw std::logic_error("Case 2: jump reply left no halving position");
                    for (int a : frame.todo)
                        if (!flap_visited(s, a)) {
                            last = Kind::Plain;
                            return SpoilerMove{Side::G, probe_vertex(a)};
                        }
                    auto u = jump_vertex(s, -1);
                    if (!u) throw std::logic_error("Case 2: every G'-flap is visited");
                    frame.jumped = true;
                    return arena_jump(*u);
                }
            }
        }
    }

    SpoilerMove next(const GameState& s) {
        if (!started) start(s);
        ingest(s);
        if (!halving.active)
            if (auto h = find_position(s)) begin_halving(s, *h);
        std::optional<SpoilerMove> mv;
        if (!halving.active) mv = frame_move(s);
        if (!mv) mv = halving_move();
        ++tr.records.back().rounds;
        return *mv;
    }

    StrategyTrace finish(const GameState& s) const {
        StrategyTrace t = tr;
        if (last == Kind::ArenaJump && s.round() > 0 && !jump_arena[static_cast<std::size_t>(s.rounds().back().duplicator)]) {
            ++t.lemma33_checks;
            if (s.status() != Status::SpoilerWon) ++t.lemma33_failures;
            TraceRecord r;
            r.phase = Phase::OutLemma;
            r.depth = frame.depth;
            r.start_round = s.round();
            t.records.push_back(r);
        }
        t.total_rounds = 0;
        for (const auto& r : t.records) {
            t.total_rounds += r.rounds;
            if (r.phase == Phase::Halving && r.rounds > r.halving_bound) ++t.halving_overruns;
        }
        t.alternations = 0;
        const auto& rounds = s.rounds();
        for (std::size_t i = static_cast<std::size_t>(first_round) + 1; i < rounds.size(); ++i)
            t.alternations += rounds[i].side != rounds[i - 1].side;
        return t;
    }
};

StrategyAgent::StrategyAgent(StrategyConfig config, std::optional<HalvingSetup> halving)
    : impl_(std::make_unique<Impl>()) {
    impl_->cfg = config;
    impl_->initial = std::move(halving);
}

StrategyAgent::~StrategyAgent() = default;

StrategyAgent::StrategyAgent(const StrategyAgent& other) : impl_(std::make_unique<Impl>(*other.impl_)) {}

SpoilerMove StrategyAgent::next(const GameState& state) { return impl_->next(state); }

std::unique_ptr<SpoilerAgent> StrategyAgent::clone() const { return std::make_unique<StrategyAgent>(*this); }

std::string StrategyAgent::name() const {
    if (impl_->initial) return "halving";
    const auto& c = impl_->cfg;
    return std::string(c.variant == Variant::S ? "S_" : "S*_") + std::to_string(c.depth) + "/" + provider_name(c.provider);
}

nlohmann::json StrategyAgent::annotation() const {
    if (impl_->tr.records.empty()) return nullptr;
    const auto& r = impl_->tr.records.back();
    return {{"phase", phase_name(r.phase)}, {"depth", r.depth}};
}

StrategyTrace StrategyAgent::trace(const GameState& final_state) const { return impl_->finish(final_state); }

namespace {

// Checks the Lemma 3.1 hypothesis; returns the flap size on `side`.
int check_setup(const GameState& s, const HalvingSetup& h) {
    int R = s.round();
    auto bad = [](const std::string& why) { return StrategyError("Lemma 3.1 hypothesis violated: " + why); };
    if (s.status() == Status::DuplicatorSurvived) throw bad("game is over");
    if (h.i < 0 || h.j < 0 || h.i >= R || h.j >= R || h.i == h.j) throw bad("anchor rounds out of range");
    for (int r : h.I)
        if (r < 0 || r >= R || r == h.i || r == h.j) throw bad("I must list other played rounds");
    const auto& rounds = s.rounds();
    auto on = [](const Round& r, Side sd) { return sd == Side::G ? r.x() : r.y(); };
    const ColoredGraph& A = s.graph(h.side);
    const ColoredGraph& B = s.graph(other(h.side));
    std::vector<char> ra(static_cast<std::size_t>(A.order()), 0), rb(static_cast<std::size_t>(B.order()), 0);
    for (int r : h.I) {
        ra[static_cast<std::size_t>(on(rounds[static_cast<std::size_t>(r)], h.side))] = 1;
        rb[static_cast<std::size_t>(on(rounds[static_cast<std::size_t>(r)], other(h.side)))] = 1;
    }
    Vertex u1 = on(rounds[static_cast<std::size_t>(h.i)], h.side), u2 = on(rounds[static_cast<std::size_t>(h.j)], h.side);
    Vertex v1 = on(rounds[static_cast<std::size_t>(h.i)], other(h.side));
    Vertex v2 = on(rounds[static_cast<std::size_t>(h.j)], other(h.side));
    if (ra[static_cast<std::size_t>(u1)] || ra[static_cast<std::size_t>(u2)]) throw bad("anchor lies in X_I");
    auto ca = component_ids(A, &ra);
    auto cb = component_ids(B, &rb);
    if (ca[static_cast<std::size_t>(u1)] != ca[static_cast<std::size_t>(u2)]) throw bad("anchors lie in different flaps");
    if (rb[static_cast<std::size_t>(v1)] || rb[static_cast<std::size_t>(v2)]) throw bad("counterpart lies in Y_I");
    if (cb[static_cast<std::size_t>(v1)] == cb[static_cast<std::size_t>(v2)]) throw bad("counterparts share a flap");
    return static_cast<int>(std::count(ca.begin(), ca.end(), ca[static_cast<std::size_t>(u1)]));
}

void check_class(const ColoredGraph& g, const StrategyConfig& c) {
    c.validate();
    if (g.order() == 0 || !is_connected(g)) throw StrategyError("G must be connected and non-empty");
    switch (c.provider) {
        case SeparatorProvider::TreeCentroid:
            if (g.size() != g.order() - 1) throw StrategyError("G is not a tree");
            if (c.variant == Variant::S && g.max_degree() > c.m)
                throw StrategyError("tree degree exceeds the flap bound m");
            break;
        case SeparatorProvider::ClassO:
            if (classify_O(g.underlying()).tag == OTag::NOT_IN_O) throw StrategyError("G is not in class O");
            break;
        case SeparatorProvider::BruteMin:
            if (g.order() > brute_order_cap) throw StrategyError("G exceeds the brute-force separator order cap");
            break;
    }
}

}  // namespace

int halving_flap_size(const GameState& state, const HalvingSetup& setup) { return check_setup(state, setup); }

std::unique_ptr<StrategyAgent> halving_agent(const GameState& state, const HalvingSetup& setup) {
    check_setup(state, setup);
    StrategyConfig c;
    c.m = 1;
    return std::make_unique<StrategyAgent>(c, setup);
}

std::unique_ptr<StrategyAgent> s_agent(const ColoredGraph& g, StrategyConfig config) {
    config.variant = Variant::S;
    check_class(g, config);
    return std::make_unique<StrategyAgent>(config, std::nullopt);
}

std::unique_ptr<StrategyAgent> s_star_agent(const ColoredGraph& g, StrategyConfig config) {
    config.variant = Variant::SStar;
    check_class(g, config);
    return std::make_unique<StrategyAgent>(config, std::nullopt);
}

}  // namespace fodef

// --- depth and bounds ---------------------------------------------------------

namespace fodef {

double choose_depth(double n, double m_or_s, double eps, DepthRule rule) {
    if (!(n >= 1)) throw std::invalid_argument("choose_depth: n must be >= 1");
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("choose_depth: eps must lie in (0,1)");
    double inv = std::log2(1 / eps);
    // Guards the ceiling against rounding when the ratio is an exact power.
    auto depth = [](double x) { return std::max(0.0, std::ceil(x - 1e-9)); };
    switch (rule) {
        case DepthRule::Lemma36:
            if (!(m_or_s > 0)) throw std::invalid_argument("choose_depth: m must be positive");
            return depth(std::log2(n / m_or_s) / inv);
        case DepthRule::Lemma52:
            if (!(m_or_s > 0)) throw std::invalid_argument("choose_depth: s must be positive");
            return depth(std::log2(n / (m_or_s + 1)) / inv);
        case DepthRule::Lemma53: return 2 * std::log2(n) / inv + 1;
    }
    return 0;
}

namespace {

double param(const BoundParams& p, const std::string& name, const std::string& key) {
    auto it = p.find(key);
    if (it == p.end()) throw std::invalid_argument("bound " + name + ": missing parameter '" + key + "'");
    return it->second;
}

// Sum over i < t of k(eps^i n), with k constant ("k") or c * x^delta ("c", "delta").
double separator_sum(const BoundParams& p, const std::string& name, double n, double eps, double t) {
    double sum = 0;
    for (int i = 0; i < static_cast<int>(t); ++i) {
        double x = std::pow(eps, i) * n;
        sum += p.count("k") ? param(p, name, "k") : param(p, name, "c") * std::pow(x, param(p, name, "delta"));
    }
    return sum;
}

}  // namespace

std::vector<std::string> bound_names() {
    return {"lemma36", "lemma37", "thm41", "thm43", "lemma52", "lemma53", "thm55_all", "thm55_planar", "thm55_genus"};
}

double bound(const std::string& name, const BoundParams& p) {
    const double log32 = std::log2(1.5);
    auto get = [&](const std::string& key) { return param(p, name, key); };
    if (name == "lemma36") {
        double n = get("n"), m = get("m"), eps = get("eps");
        double t = p.count("t") ? get("t") : choose_depth(n, m, eps, DepthRule::Lemma36);
        return separator_sum(p, name, n, eps, t) + m * (t + 1) + std::log2(n) + 2;
    }
    if (name == "lemma37") {
        double n = get("n"), k = get("k"), m = get("m"), eps = get("eps");
        return ((k + m) / std::log2(1 / eps) + 1) * std::log2(n) + m + 2;
    }
    if (name == "thm41") {
        double n = get("n"), d = get("d");
        return ((d + 1) / log32 + 1) * std::log2(n) + d + 2;
    }
    if (name == "thm43") return (12 / log32 + 1) * std::log2(get("n")) + 9;
    if (name == "lemma52") {
        double n = get("n"), s = get("s"), eps = get("eps");
        double t = p.count("t") ? get("t") : choose_depth(n, s, eps, DepthRule::Lemma52);
        return separator_sum(p, name, n, eps, t) + (s + 1) * (t + 1) + std::log2(n) + 2;
    }
    if (name == "lemma53") {
        double n = get("n"), c = get("c"), delta = get("delta"), s = get("s"), eps = get("eps");
        return c / (1 - std::pow(eps, delta)) * std::pow(n, delta) + ((s + 1) / std::log2(1 / eps) + 1) * std::log2(n) +
               s + 3;
    }
    if (name == "thm55_all") {
        double n = get("n"), h = get("H"), d = get("Delta");
        return (2 + std::sqrt(2.0)) * std::pow(h, 1.5) * std::sqrt(n) + (d + 2) * (std::log2(n) + 1) + 1;
    }
    if (name == "thm55_planar") {
        double n = get("n"), d = get("Delta");
        return (4.5 * std::sqrt(2.0) + 3 * std::sqrt(3.0)) * std::sqrt(n) + ((d + 1) / log32 + 1) * std::log2(n) + d + 3;
    }
    if (name == "thm55_genus") {
        double n = get("n"), d = get("Delta"), genus = get("g"), c = get("c");
        return c * std::sqrt(genus) * std::sqrt(n) + ((d + 1) / log32 + 1) * std::log2(n) + d + 3;
    }
    throw std::invalid_argument("unknown bound '" + name + "'");
}

// --- play trees and formulas ----------------------------------------------------

std::unique_ptr<PlayNode> play_tree(const SpoilerAgent& spoiler, const GameState& start, long max_nodes) {
    long nodes = 0;
    std::function<std::unique_ptr<PlayNode>(const GameState&, SpoilerAgent&)> build =
        [&](const GameState& state, SpoilerAgent& agent) {
            if (++nodes > max_nodes) throw ExtractionError("play tree exceeds its node budget");
            auto node = std::make_unique<PlayNode>();
            node->move = agent.next(state);
            if (!state.side_allowed(node->move.side)) throw ExtractionError("agent broke the alternation budget");
            int replies = state.graph(other(node->move.side)).order();
            for (Vertex v = 0; v < replies; ++v) {
                GameState child = state;
                child.step(node->move, v);
                if (child.status() == Status::SpoilerWon) {
                    node->replies.emplace_back(v, nullptr);
                } else if (child.status() == Status::DuplicatorSurvived) {
                    auto leaf = std::make_unique<PlayNode>();
                    leaf->survived = true;
                    node->replies.emplace_back(v, std::move(leaf));
                } else {
                    node->replies.emplace_back(v, build(child, *agent.clone()));
                }
            }
            return node;
        };
    if (start.status() != Status::Running) throw ExtractionError("game already decided");
    return build(start, *spoiler.clone());
}

std::unique_ptr<PlayNode> play_tree(const SpoilerAgent& spoiler, GraphPtr g, GraphPtr gp, int rounds, long max_nodes) {
    return play_tree(spoiler, GameState(std::move(g), std::move(gp), rounds), max_nodes);
}

namespace {

std::string var(std::size_t i) { return "x" + std::to_string(i + 1); }

// A literal true of the G-side pebbles and false of the G'-side pebbles,
// about the last pebble pair.
Formula violated_literal(const ColoredGraph& g, const ColoredGraph& gp, const std::vector<std::pair<Vertex, Vertex>>& p) {
    std::size_t r = p.size() - 1;
    auto [x, y] = p[r];
    auto pick = [](bool in_g, Formula f) { return in_g ? f : negate(std::move(f)); };
    for (std::size_t j = 0; j < r; ++j)
        if ((x == p[j].first) != (y == p[j].second)) return pick(x == p[j].first, eq(var(r), var(j)));
    for (std::size_t j = 0; j < r; ++j)
        if (g.adjacent(x, p[j].first) != gp.adjacent(y, p[j].second))
            return pick(g.adjacent(x, p[j].first), adj(var(r), var(j)));
    std::set<int> cs(g.colors(x).begin(), g.colors(x).end());
    cs.insert(gp.colors(y).begin(), gp.colors(y).end());
    for (int c : cs)
        if (g.has_color(x, c) != gp.has_color(y, c)) return pick(g.has_color(x, c), col(c, var(r)));
    throw std::logic_error("reply ended the game without violating the last pebble pair");
}

}  // namespace

Formula extract_formula(const PlayNode& root, const ColoredGraph& g, const ColoredGraph& gp) {
    std::vector<std::pair<Vertex, Vertex>> pebbles;
    std::function<Formula(const PlayNode&)> rec = [&](const PlayNode& node) -> Formula {
        if (node.survived) throw ExtractionError("Duplicator survives on some branch");
        Side side = node.move.side;
        const ColoredGraph& dst = side == Side::G ? gp : g;
        std::vector<char> seen(static_cast<std::size_t>(dst.order()), 0);
        for (const auto& [v, child] : node.replies)
            if (dst.valid(v)) seen[static_cast<std::size_t>(v)] = 1;
        if (std::count(seen.begin(), seen.end(), 1) != dst.order())
            throw ExtractionError("play tree does not cover every Duplicator reply");
        std::string x = var(pebbles.size());
        std::vector<Formula> parts;
        std::set<std::string> printed;
        for (const auto& [v, child] : node.replies) {
            pebbles.emplace_back(side == Side::G ? node.move.vertex : v, side == Side::G ? v : node.move.vertex);
            Formula f = child ? rec(*child) : violated_literal(g, gp, pebbles);
            pebbles.pop_back();
            if (printed.insert(print_formula(f)).second) parts.push_back(std::move(f));
        }
        if (side == Side::G) {
            if (parts.empty()) parts.push_back(eq(x, x));
            return exists(x, conj(std::move(parts)));
        }
        if (parts.empty()) parts.push_back(negate(eq(x, x)));
        return forall(x, disj(std::move(parts)));
    };
    return rec(root);
}

PlayTreeShape shape(const PlayNode& root) {
    PlayTreeShape out;
    std::function<void(const PlayNode&, int, int, std::optional<Side>)> rec =
        [&](const PlayNode& n, int depth, int alts, std::optional<Side> prev) {
            if (n.survived) return;
            ++out.nodes;
            int a = alts + (prev && *prev != n.move.side);
            out.depth = std::max(out.depth, depth + 1);
            out.alternations = std::max(out.alternations, a);
            for (const auto& [v, child] : n.replies)
                if (child) rec(*child, depth + 1, a, n.move.side);
        };
    rec(root, 0, 0, std::nullopt);
    return out;
}

}  // namespace fodef
