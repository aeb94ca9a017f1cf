#pragma once

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fodef/graph.hpp"

namespace fodef {

enum class FormulaKind { Adj, Eq, Col, Not, And, Or, Exists, Forall };

struct FormulaNode;
/// Formulas are immutable and may share subtrees.
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
    FormulaKind kind;
    std::string lhs;              // atoms: first variable; quantifiers: bound variable
    std::string rhs;              // adj / eq: second variable
    int color = 0;                // col(color, lhs)
    std::vector<Formula> children;
};

Formula adj(std::string x, std::string y);
Formula eq(std::string x, std::string y);
Formula col(int c, std::string x);
Formula negate(Formula f);
/// n-ary connectives; a single operand is returned unchanged.
Formula conj(std::vector<Formula> fs);
Formula disj(std::vector<Formula> fs);
Formula exists(std::string v, Formula f);
Formula forall(std::string v, Formula f);

bool structurally_equal(const Formula& a, const Formula& b);
bool is_atom(const FormulaNode& f);

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

struct ParseOptions {
    bool strict = false;  // free variables are errors
};

Formula parse_formula(std::string_view text, ParseOptions opts = {});
std::string print_formula(const Formula& f);

std::set<std::string> free_variables(const Formula& f);

class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Assignment = std::vector<std::pair<std::string, Vertex>>;

/// Tarskian truth of f on g. Later bindings in `assignment` shadow earlier ones.
bool evaluate(const Formula& f, const ColoredGraph& g, const Assignment& assignment = {});

struct FormulaProfile {
    int quantifier_rank = 0;
    int alternation_number = 0;
    bool is_nnf = true;
    /// Quantifier sequences over {'E','A'}; only for formulas whose unfolded
    /// tree has at most `nest_threshold` nodes.
    std::optional<std::set<std::string>> nest;
};

inline constexpr std::size_t nest_threshold = 4096;

FormulaProfile analyze(const Formula& f);
/// nest(f) by the inductive clauses, no size limit.
std::set<std::string> nest_sequences(const Formula& f);
/// Number of EA / AE factors in a quantifier sequence.
int alternations(std::string_view seq);

}  // namespace fodef
