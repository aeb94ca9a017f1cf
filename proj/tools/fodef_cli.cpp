#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fodef/campaign.hpp"
#include "fodef/families.hpp"
#include "fodef/formula.hpp"
#include "fodef/game.hpp"
#include "fodef/graph_io.hpp"
#include "fodef/oracle.hpp"
#include "fodef/separators.hpp"
#include "fodef/strategies.hpp"

using namespace fodef;
using nlohmann::json;

namespace {

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

GraphPtr load(const std::string& path) { return std::make_shared<const ColoredGraph>(load_graph(path)); }

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw DomainError("cannot write " + out_path);
    out << text;
}

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) throw std::invalid_argument("");
        Rational r{std::stol(s.substr(0, slash)), std::stol(s.substr(slash + 1))};
        if (r.num <= 0 || r.den <= 0 || r.num >= r.den) throw std::invalid_argument("");
        return r;
    } catch (const std::exception&) {
        throw DomainError("eps must be a fraction p/q in (0,1), got '" + s + "'");
    }
}

StrategyConfig config_for(const ColoredGraph& g, const std::string& provider, int d, bool star, int s) {
    int n = g.order();
    SeparatorProvider p = provider_from_name(provider);
    if (star) return brute_star_config(n, s > 0 ? s : 3 * g.max_degree(), 3);
    switch (p) {
        case SeparatorProvider::TreeCentroid: return tree_config(n, d > 0 ? d : std::max(1, g.max_degree()));
        case SeparatorProvider::ClassO: return class_O_config(n);
        case SeparatorProvider::BruteMin: {
            StrategyConfig c;
            c.provider = p;
            c.m = n;
            c.depth = static_cast<int>(choose_depth(n, c.m, c.eps.value()));
            return c;
        }
    }
    throw DomainError("unknown provider");
}

std::unique_ptr<SpoilerAgent> make_spoiler(const std::string& name, const ColoredGraph& g, const std::string& provider,
                                           int d, int s, SearchBudget budget) {
    if (name == "optimal") return std::make_unique<OptimalSpoiler>(budget);
    if (name == "s") return s_agent(g, config_for(g, provider, d, false, s));
    if (name == "s-star") return s_star_agent(g, config_for(g, provider, d, true, s));
    throw DomainError("unknown spoiler '" + name + "' (optimal, s, s-star)");
}

std::string status_word(const RankResult& r) {
    return r.value ? std::to_string(*r.value) : ">" + std::to_string(r.r_max);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ehrenfeucht game strategies, exact ranks and definability bounds for small graphs"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "Print this help message and exit");

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a graph from a family");
    std::string family, out_path, format = "json";
    int n = 0, b = 0, d = 3;
    std::optional<std::uint64_t> seed;
    gen->add_option("--family", family, "path, cycle, two_cycles, star, complete, triv, tree, hop")->required();
    gen->add_option("--n", n, "order (two_cycles: cycle length; triv: edge count)")->required();
    gen->add_option("--b", b, "triv: isolated vertices");
    gen->add_option("--d", d, "tree: degree bound");
    gen->add_option("--seed", seed, "seed for random families");
    gen->add_option("--out", out_path, "output path (stdout if omitted)");
    gen->add_option("--format", format, "json or edges")->check(CLI::IsMember({"json", "edges"}));

    // separate
    auto* sep = app.add_subcommand("separate", "Compute and verify a separator");
    std::string in_path, method = "class-o", eps_text = "2/3";
    int size_cap = 3;
    sep->add_option("--in", in_path, "graph file")->required();
    sep->add_option("--method", method, "tree-centroid, class-o or brute");
    sep->add_option("--eps", eps_text, "brute: flap fraction p/q");
    sep->add_option("--size-cap", size_cap, "brute: largest separator tried");

    // classify
    auto* cls = app.add_subcommand("classify", "Classify a graph as HOP, 1-e.d.HOP, 2-e.d.HOP or outside O");
    cls->add_option("--in", in_path, "graph file")->required();

    // rank
    auto* rank = app.add_subcommand("rank", "Exact D(G,G') by game search");
    std::string g_path, h_path;
    std::optional<int> k;
    int r_max = 8;
    bool as_json = false;
    rank->add_option("--g", g_path, "graph G")->required();
    rank->add_option("--h", h_path, "graph G'")->required();
    rank->add_option("--k", k, "alternation budget");
    rank->add_option("--r-max", r_max, "largest rank searched");
    rank->add_flag("--json", as_json, "print a JSON row");

    // define-lb
    auto* dlb = app.add_subcommand("define-lb", "Lower bound on the defining rank D(G)");
    int order_max = 5;
    dlb->add_option("--in", in_path, "graph file")->required();
    dlb->add_option("--order-max", order_max, "largest G' order tried");
    dlb->add_option("--k", k, "alternation budget");
    dlb->add_option("--r-max", r_max, "largest rank searched");

    // play
    auto* play = app.add_subcommand("play", "Play one game and print its transcript");
    std::string spoiler_name = "s", duplicator_name = "greedy", provider = "tree-centroid", transcript_path,
                replay_path;
    int rounds = 0, s_bound = 0, tree_d = 0;
    bool human = false;
    play->add_option("--g", g_path, "graph G")->required();
    play->add_option("--h", h_path, "graph G'")->required();
    play->add_option("--rounds", rounds, "round limit (default: |G| + |G'|)");
    play->add_option("--k", k, "alternation budget");
    play->add_option("--spoiler", spoiler_name, "optimal, s or s-star");
    play->add_option("--provider", provider, "separator for s: tree-centroid, class-o or brute");
    play->add_option("--d", tree_d, "tree-centroid degree bound (default: max degree)");
    play->add_option("--s", s_bound, "s-star similar-flap bound (default: 3 * max degree)");
    play->add_option("--duplicator", duplicator_name, "greedy, random:<seed>, mirror or exhaustive");
    play->add_flag("--human", human, "answer Spoiler's moves from standard input");
    play->add_option("--transcript", transcript_path, "write the transcript JSON here");
    play->add_option("--replay", replay_path, "replay a transcript instead of playing");

    // verify
    auto* ver = app.add_subcommand("verify", "Bound-verification campaign or oracle check, as CSV");
    std::string claim, sizes_text, duplicators_text = "greedy,random", dump_path;
    int trials = 20, threads = 0, m_max = 7;
    ver->add_option("--claim", claim, "bound name, or path-lower, cycle-lower, path-upper, star, triv, 2cn")->required();
    ver->add_option("--family", family, "tree or hop");
    ver->add_option("--d", d, "tree degree bound");
    ver->add_option("--n", sizes_text, "sizes: 4..7, 16..512x2 (doubling) or 16,24")->required();
    ver->add_option("--m-max", m_max, "path and cycle claims: largest m");
    ver->add_option("--trials", trials, "seeds per size");
    ver->add_option("--seed", seed, "base seed (required for campaigns)");
    ver->add_option("--duplicators", duplicators_text, "comma-separated: greedy, random, mirror");
    ver->add_option("--threads", threads, "worker threads (0: all cores)");
    ver->add_option("--dump", dump_path, "write failing transcripts as JSON here");

    // synth
    auto* syn = app.add_subcommand("synth", "Distinguishing formula from a Spoiler strategy");
    syn->add_option("--g", g_path, "graph G")->required();
    syn->add_option("--h", h_path, "graph G'")->required();
    syn->add_option("--rounds", rounds, "round limit (default: exact rank for optimal, |G| + |G'| otherwise)");
    syn->add_option("--spoiler", spoiler_name, "optimal, s or s-star");
    syn->add_option("--provider", provider, "separator for s");
    syn->add_option("--d", tree_d, "tree-centroid degree bound (default: max degree)");
    syn->add_option("--s", s_bound, "s-star similar-flap bound");

    // export-dot
    auto* dot = app.add_subcommand("export-dot", "Graphviz rendering of a graph");
    std::vector<int> highlight;
    dot->add_option("--in", in_path, "graph file")->required();
    dot->add_option("--highlight", highlight, "vertices to fill")->delimiter(',');
    dot->add_option("--out", out_path, "output path (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return 2;
    }

    try {
        SearchBudget budget = SearchBudget::from_env();
        budget.max_rounds = std::max(budget.max_rounds, r_max);

        if (*gen) {
            FamilySpec fs;
            fs.family = family_from_name(family);
            bool random = fs.family == Family::RandomBoundedTree || fs.family == Family::RandomHop;
            if (random && !seed) throw DomainError("--seed is required for random families");
            fs.n = n;
            fs.b = b;
            fs.d = d;
            fs.seed = seed.value_or(0);
            ColoredGraph g = generate(fs);
            std::ostringstream text;
            if (format == "json") text << to_json(g).dump(2) << '\n';
            else write_edge_list(text, g);
            emit(out_path, text.str());
        } else if (*sep) {
            ColoredGraph g = load_graph(in_path);
            SeparatorResult r;
            int m_cap = 7;
            SeparatorProvider p = provider_from_name(method);
            if (p == SeparatorProvider::TreeCentroid) {
                r = tree_centroid_separator(g);
                m_cap = std::max(1, g.max_degree());
            } else if (p == SeparatorProvider::ClassO) {
                r = class_O_separator(g);
            } else {
                auto found = brute_min_separator(g, parse_rational(eps_text), size_cap);
                if (!found) throw DomainError("no separator of size <= " + std::to_string(size_cap));
                r = *found;
                m_cap = g.order();
            }
            auto report = verify_separator(g, r.X, r.epsilon, m_cap);
            json j = to_json(r);
            j["verified"] = report.ok;
            if (!report.ok) j["violation"] = report.reason;
            std::cout << j.dump(2) << '\n';
            if (!report.ok) return 1;
        } else if (*cls) {
            std::cout << to_json(classify_O(load_graph(in_path))).dump(2) << '\n';
        } else if (*rank) {
            auto r = exact_rank(load_graph(g_path), load_graph(h_path), k, r_max, budget);
            if (as_json) std::cout << to_json(r, g_path, h_path).dump() << '\n';
            else std::cout << status_word(r) << '\n';
        } else if (*dlb) {
            auto r = defining_rank_lb(load_graph(in_path), order_max, k, r_max, budget);
            json j{{"lower_bound", r.value}, {"saturated", r.saturated}, {"order_max", order_max}};
            if (r.witness) j["witness"] = to_json(*r.witness);
            std::cout << j.dump(2) << '\n';
        } else if (*play) {
            GraphPtr g = load(g_path), h = load(h_path);
            if (rounds <= 0) rounds = g->order() + h->order();
            if (!replay_path.empty()) {
                std::ifstream in(replay_path);
                if (!in) throw DomainError("cannot read " + replay_path);
                Transcript t = transcript_from_json(json::parse(in));
                GameState s = replay(g, h, t, rounds, k);
                json j{{"status", status_name(s.status())}, {"rounds", s.round()}, {"matches", s.status() == t.status}};
                std::cout << j.dump() << '\n';
                return s.status() == t.status ? 0 : 1;
            }
            auto spoiler = make_spoiler(spoiler_name, *g, provider, tree_d, s_bound, budget);
            std::unique_ptr<DuplicatorAgent> dup;
            if (human) dup = std::make_unique<HumanDuplicator>(std::cin, std::cerr);
            else if (duplicator_name == "exhaustive") dup = std::make_unique<ExhaustiveDuplicator>(budget);
            else dup = builtin_duplicator(duplicator_name);
            Transcript t = run_match(g, h, *spoiler, *dup, rounds, k);
            json j = to_json(t);
            if (auto* sa = dynamic_cast<StrategyAgent*>(spoiler.get()))
                j["trace"] = to_json(sa->trace(replay(g, h, t, rounds, k)));
            if (!transcript_path.empty()) emit(transcript_path, j.dump(2) + "\n");
            std::cout << j.dump(2) << '\n';
        } else if (*ver) {
            std::vector<int> sizes = parse_sizes(sizes_text);
            std::vector<CampaignRow> rows;
            auto oc = oracle_claims();
            if (std::find(oc.begin(), oc.end(), claim) != oc.end()) {
                rows = run_oracle_claim(claim, sizes, m_max, budget);
            } else {
                if (!seed) throw DomainError("--seed is required for randomized campaigns");
                if (family.empty()) family = claim == "thm41" ? "tree" : "hop";
                CampaignSpec spec;
                spec.claim = claim;
                spec.family = family;
                spec.d = d;
                spec.sizes = sizes;
                spec.trials = trials;
                spec.seed = *seed;
                spec.threads = threads;
                spec.duplicators.clear();
                std::stringstream ds(duplicators_text);
                for (std::string part; std::getline(ds, part, ',');) spec.duplicators.push_back(part);
                rows = run_campaign(spec);
            }
            std::cout << campaign_csv_header << '\n';
            json failures = json::array();
            for (const auto& row : rows) {
                std::cout << to_csv(row) << '\n';
                if (!row.pass) {
                    json f{{"family", row.family}, {"n", row.n}, {"seed", row.seed}, {"duplicator", row.duplicator},
                           {"perturbation", row.perturbation}, {"failure", row.failure}};
                    if (!row.transcript.is_null()) f["transcript"] = row.transcript;
                    failures.push_back(f);
                }
            }
            if (!failures.empty()) {
                if (!dump_path.empty()) emit(dump_path, failures.dump(2) + "\n");
                else std::cerr << failures.dump(2) << '\n';
                return 1;
            }
        } else if (*syn) {
            GraphPtr g = load(g_path), h = load(h_path);
            auto spoiler = make_spoiler(spoiler_name, *g, provider, tree_d, s_bound, budget);
            if (rounds <= 0) {
                if (spoiler_name == "optimal") {
                    auto r = exact_rank(*g, *h, std::nullopt, r_max, budget);
                    if (!r.value) throw DomainError("G and G' agree on all sentences of rank <= " + std::to_string(r_max));
                    rounds = *r.value;
                } else {
                    rounds = g->order() + h->order();
                }
            }
            auto tree = play_tree(*spoiler, g, h, rounds);
            Formula f = extract_formula(*tree, *g, *h);
            auto prof = analyze(f);
            json j{{"formula", print_formula(f)},
                   {"quantifier_rank", prof.quantifier_rank},
                   {"alternation_number", prof.alternation_number},
                   {"nnf", prof.is_nnf},
                   {"true_on_G", evaluate(f, *g)},
                   {"true_on_G2", evaluate(f, *h)}};
            std::cout << j.dump(2) << '\n';
        } else if (*dot) {
            ColoredGraph g = load_graph(in_path);
            VertexList hl(highlight.begin(), highlight.end());
            emit(out_path, to_dot(g, hl, std::filesystem::path(in_path).stem().string()));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
