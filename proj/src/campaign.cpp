#include "fodef/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "fodef/families.hpp"
#include "fodef/graph_io.hpp"
#include "fodef/oracle.hpp"

namespace fodef {

namespace {

struct ClaimInfo {
    std::string name;
    std::vector<std::string> families;
    bool star;  // runs S* with the brute-force separator
};

const std::vector<ClaimInfo>& claims() {
    static const std::vector<ClaimInfo> table{
        {"lemma36", {"tree", "hop"}, false}, {"lemma37", {"tree", "hop"}, false}, {"thm41", {"tree"}, false},
        {"thm43", {"hop"}, false},           {"lemma52", {"hop"}, true},          {"lemma53", {"hop"}, true},
        {"thm55_all", {"hop"}, true},        {"thm55_planar", {"hop"}, true},     {"thm55_genus", {"hop"}, true},
    };
    return table;
}

const ClaimInfo& claim_info(const std::string& name) {
    for (const auto& c : claims())
        if (c.name == name) return c;
    throw std::invalid_argument("unknown campaign claim '" + name + "'");
}

constexpr int brute_cap = 3;
// Outerplanar graphs exclude K4 as a minor.
constexpr double hop_excluded_minor = 4;

struct Job {
    int n;
    int trial;
    std::string duplicator;
};

std::pair<ColoredGraph, std::string> draw_gp(const CampaignSpec& spec, const ColoredGraph& g, int n, int trial,
                                             std::uint64_t seed) {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 17);
    for (int attempt = 0; attempt < 32; ++attempt) {
        ColoredGraph gp(1);
        std::string how;
        if (spec.family == "tree") {
            switch (trial % 3) {
                case 0: gp = tree_leaf_move(g, spec.d, rng), how = "leaf-move"; break;
                case 1: gp = tree_subtree_swap(g, spec.d, rng), how = "subtree-swap"; break;
                default: gp = random_bounded_tree(n, spec.d, rng()), how = "random-tree"; break;
            }
        } else {
            switch (trial % 3) {
                case 0: gp = hop_chord_flip(g, rng), how = "chord-flip"; break;
                case 1: gp = random_hop(n, rng()), how = "random-hop"; break;
                default: gp = random_relabel(hop_chord_flip(g, rng), rng), how = "chord-flip-relabeled"; break;
            }
        }
        if (!are_isomorphic(g, gp)) return {std::move(gp), how};
    }
    throw std::runtime_error("no non-isomorphic G' found for n=" + std::to_string(n));
}

CampaignRow run_job(const CampaignSpec& spec, const ClaimInfo& info, const Job& job) {
    CampaignRow row;
    row.family = spec.family;
    row.n = job.n;
    row.seed = spec.seed + static_cast<std::uint64_t>(job.trial);
    row.duplicator = job.duplicator;

    FamilySpec fs;
    fs.family = spec.family == "tree" ? Family::RandomBoundedTree : Family::RandomHop;
    fs.n = job.n;
    fs.d = spec.d;
    fs.seed = row.seed;
    ColoredGraph g = generate(fs);
    auto [gp, how] = draw_gp(spec, g, job.n, job.trial, row.seed);
    row.perturbation = how;

    StrategyConfig cfg;
    BoundParams p{{"n", job.n}};
    double delta_g = g.max_degree();
    if (info.star) {
        int s = brute_cap * g.max_degree();
        cfg = brute_star_config(job.n, s, brute_cap);
        p["s"] = s;
        p["eps"] = cfg.eps.value();
        p["k"] = brute_cap;
        p["c"] = brute_cap;
        p["delta"] = 0.5;
        p["Delta"] = delta_g;
        p["H"] = hop_excluded_minor;
        p["g"] = 0;
    } else {
        cfg = spec.family == "tree" ? tree_config(job.n, spec.d) : class_O_config(job.n);
        p["m"] = cfg.m;
        p["eps"] = cfg.eps.value();
        p["k"] = cfg.separator_size();
        p["d"] = spec.d;
    }
    row.bound = bound(spec.claim, p);
    row.alternation_cap = info.star ? 2 * cfg.depth + 1 : 2;

    auto agent = info.star ? s_star_agent(g, cfg) : s_agent(g, cfg);
    std::string dname = job.duplicator == "random" ? "random:" + std::to_string(row.seed) : job.duplicator;
    auto dup = builtin_duplicator(dname);
    int r = 4 * static_cast<int>(std::ceil(row.bound)) + 8;
    auto gs = std::make_shared<const ColoredGraph>(g);
    auto gps = std::make_shared<const ColoredGraph>(gp);
    Transcript t = run_match(gs, gps, *agent, *dup, r);
    StrategyTrace tr = agent->trace(replay(gs, gps, t, r));

    row.rounds = t.rounds();
    row.alternations = tr.alternations;
    row.won = t.status == Status::SpoilerWon;
    std::ostringstream why;
    if (!row.won) why << "Duplicator survived " << row.rounds << " rounds; ";
    if (row.rounds > row.bound) why << "rounds exceed the bound; ";
    if (row.alternations > row.alternation_cap) why << "too many alternations; ";
    if (tr.lemma33_failures) why << "out-of-arena reply did not lose; ";
    if (tr.halving_overruns) why << "halving overran ceil(log2 |F|); ";
    row.failure = why.str();
    row.pass = row.failure.empty();
    if (!row.pass) {
        row.transcript = to_json(t);
        row.transcript["G"] = to_json(g);
        row.transcript["G2"] = to_json(gp);
        row.transcript["trace"] = to_json(tr);
    }
    return row;
}

}  // namespace

std::vector<std::string> campaign_claims() {
    std::vector<std::string> out;
    for (const auto& c : claims()) out.push_back(c.name);
    return out;
}

std::vector<CampaignRow> run_campaign(const CampaignSpec& spec) {
    const ClaimInfo& info = claim_info(spec.claim);
    if (std::find(info.families.begin(), info.families.end(), spec.family) == info.families.end())
        throw std::invalid_argument("claim '" + spec.claim + "' does not cover family '" + spec.family + "'");
    if (spec.trials < 1) throw std::invalid_argument("trials must be positive");
    for (int n : spec.sizes) {
        if (n < 4) throw std::invalid_argument("campaign sizes must be at least 4");
        if (info.star && n > brute_order_cap)
            throw std::invalid_argument("the brute-force separator is limited to " + std::to_string(brute_order_cap) +
                                        " vertices");
    }
    for (const auto& d : spec.duplicators)
        if (d != "greedy" && d != "random" && d != "mirror")
            throw std::invalid_argument("campaign duplicators are greedy, random and mirror");

    std::vector<Job> jobs;
    for (int n : spec.sizes)
        for (int trial = 0; trial < spec.trials; ++trial)
            for (const auto& d : spec.duplicators) jobs.push_back({n, trial, d});

    std::vector<CampaignRow> rows(jobs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i; (i = next++) < jobs.size();) {
            try {
                rows[i] = run_job(spec, info, jobs[i]);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    unsigned threads = spec.threads > 0 ? static_cast<unsigned>(spec.threads) : std::thread::hardware_concurrency();
    threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(jobs.size())));
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
    // Jobs are already in (n, trial, duplicator) order, independent of scheduling.
    return rows;
}

std::vector<std::string> oracle_claims() { return {"path-lower", "cycle-lower", "path-upper", "star", "triv", "2cn"}; }

std::vector<CampaignRow> run_oracle_claim(const std::string& claim, const std::vector<int>& sizes, int m_max,
                                          SearchBudget budget) {
    struct Check {
        std::string family;
        int n;
        ColoredGraph g, gp;
        double bound;
        int kind;  // 0: rank == bound, 1: rank > bound, 2: rank < bound
    };
    std::vector<Check> checks;
    for (int n : sizes) {
        if (claim == "path-lower" || claim == "path-upper" || claim == "cycle-lower") {
            if (n < 3) throw std::invalid_argument(claim + " needs n >= 3");
            for (int m = n + 1; m <= m_max; ++m) {
                bool cyc = claim == "cycle-lower";
                std::string fam = (cyc ? "cycle:m=" : "path:m=") + std::to_string(m);
                auto g = cyc ? cycle_graph(n) : path_graph(n), gp = cyc ? cycle_graph(m) : path_graph(m);
                if (claim == "path-lower") checks.push_back({fam, n, g, gp, std::log2(n - 1.0) - 2, 1});
                if (claim == "cycle-lower") checks.push_back({fam, n, g, gp, std::log2(static_cast<double>(n)), 1});
                if (claim == "path-upper") checks.push_back({fam, n, g, gp, std::log2(static_cast<double>(n)) + 3, 2});
            }
        } else if (claim == "star") {
            if (n < 2) throw std::invalid_argument("star needs n >= 2");
            checks.push_back({"star", n, star_graph(n), star_graph(n + 1), static_cast<double>(n), 0});
        } else if (claim == "triv") {
            if (n < 1) throw std::invalid_argument("triv needs m >= 1");
            checks.push_back({"triv", n, triv_graph(n, 2 * n), triv_graph(n - 1, 2 * n + 2), 2.0 * n, 0});
        } else if (claim == "2cn") {
            if (n < 3) throw std::invalid_argument("2cn needs n >= 3");
            checks.push_back({"2cn", n, two_cycles(n), cycle_graph(n), std::floor(std::log2(n - 1.0)), 1});
        } else {
            throw std::invalid_argument("unknown oracle claim '" + claim + "'");
        }
    }
    std::vector<CampaignRow> rows;
    for (const auto& c : checks) {
        SearchBudget b = budget;
        b.max_total_order = std::max(b.max_total_order, c.g.order() + c.gp.order());
        CampaignRow row;
        row.family = c.family;
        row.n = c.n;
        row.bound = c.bound;
        row.duplicator = "exhaustive";
        auto r = exact_rank(c.g, c.gp, std::nullopt, b.max_rounds, b);
        if (!r.value) {
            row.rounds = -1;
            row.failure = "rank exceeds r_max = " + std::to_string(b.max_rounds);
        } else {
            row.rounds = *r.value;
            OptimalSpoiler sp(b);
            ExhaustiveDuplicator dup(b);
            auto gs = std::make_shared<const ColoredGraph>(c.g), gps = std::make_shared<const ColoredGraph>(c.gp);
            row.alternations = run_match(gs, gps, sp, dup, *r.value).alternations;
            row.won = true;
            bool ok = c.kind == 0 ? row.rounds == c.bound : c.kind == 1 ? row.rounds > c.bound : row.rounds < c.bound;
            if (!ok) row.failure = "rank " + std::to_string(row.rounds) + " violates the claim";
        }
        row.pass = row.failure.empty();
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string to_csv(const CampaignRow& row) {
    std::ostringstream out;
    out << row.family << ',' << row.n << ',' << row.seed << ',' << row.rounds << ',' << row.alternations << ','
        << row.bound << ',' << (row.pass ? "true" : "false");
    return out.str();
}

std::vector<int> parse_sizes(const std::string& text) {
    std::vector<int> out;
    auto to_int = [&](const std::string& s) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != s.size() || s.empty()) throw std::invalid_argument("bad size list '" + text + "'");
        return v;
    };
    if (auto dots = text.find(".."); dots != std::string::npos) {
        std::string hi_text = text.substr(dots + 2);
        bool doubling = hi_text.size() > 2 && hi_text.ends_with("x2");
        if (doubling) hi_text.resize(hi_text.size() - 2);
        int lo = to_int(text.substr(0, dots)), hi = to_int(hi_text);
        if (lo < 1 || hi < lo) throw std::invalid_argument("bad size range '" + text + "'");
        for (long v = lo; v <= hi; v = doubling ? 2 * v : v + 1) out.push_back(static_cast<int>(v));
        return out;
    }
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) out.push_back(to_int(part));
    if (out.empty()) throw std::invalid_argument("empty size list");
    return out;
}

}  // namespace fodef
