#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fodef/oracle.hpp"
#include "fodef/strategies.hpp"
#include "json.hpp"

namespace fodef {

/// Seeded bound-verification campaign: one match per (n, trial, duplicator).
struct CampaignSpec {
    std::string claim;   // a bound name
    std::string family;  // "tree" or "hop"
    int d = 3;           // degree bound for trees
    std::vector<int> sizes;
    int trials = 20;
    std::uint64_t seed = 0;
    std::vector<std::string> duplicators{"greedy", "random"};
    int threads = 0;  // 0: hardware concurrency
};

struct CampaignRow {
    std::string family;
    int n = 0;
    std::uint64_t seed = 0;
    std::string duplicator;
    std::string perturbation;  // how G' was drawn
    int rounds = 0;
    int alternations = 0;
    double bound = 0;
    int alternation_cap = 0;
    bool won = false;
    bool pass = false;
    std::string failure;
    nlohmann::json transcript;  // kept for failing rows only
};

/// Throws std::invalid_argument on an unknown claim, a family the claim does
/// not cover, or sizes outside the strategy's range.
std::vector<CampaignRow> run_campaign(const CampaignSpec& spec);

/// Claims `run_campaign` accepts.
std::vector<std::string> campaign_claims();

/// Oracle checks of closed-form rank claims: "path-lower", "cycle-lower",
/// "path-upper", "star", "triv" and "2cn".
/// `sizes` picks n; path and cycle claims pair n with every m in (n, m_max].
std::vector<CampaignRow> run_oracle_claim(const std::string& claim, const std::vector<int>& sizes, int m_max,
                                          SearchBudget budget);
std::vector<std::string> oracle_claims();

inline constexpr const char* campaign_csv_header = "family,n,seed,rounds,alternations,bound,pass";
std::string to_csv(const CampaignRow& row);

/// "4..7" is an inclusive range, "16..128x2" doubles from 16, "16,24" lists sizes.
std::vector<int> parse_sizes(const std::string& text);

}  // namespace fodef
