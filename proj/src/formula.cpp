#include "fodef/formula.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <unordered_map>

namespace fodef {

namespace {

Formula make(FormulaNode node) { return std::make_shared<const FormulaNode>(std::move(node)); }

Formula nary(FormulaKind kind, std::vector<Formula> fs) {
    if (fs.empty()) throw std::invalid_argument("empty conjunction/disjunction");
    if (fs.size() == 1) return fs.front();
    return make({kind, {}, {}, 0, std::move(fs)});
}

}  // namespace

Formula adj(std::string x, std::string y) { return make({FormulaKind::Adj, std::move(x), std::move(y), 0, {}}); }
Formula eq(std::string x, std::string y) { return make({FormulaKind::Eq, std::move(x), std::move(y), 0, {}}); }
Formula col(int c, std::string x) { return make({FormulaKind::Col, std::move(x), {}, c, {}}); }
Formula negate(Formula f) { return make({FormulaKind::Not, {}, {}, 0, {std::move(f)}}); }
Formula conj(std::vector<Formula> fs) { return nary(FormulaKind::And, std::move(fs)); }
Formula disj(std::vector<Formula> fs) { return nary(FormulaKind::Or, std::move(fs)); }
Formula exists(std::string v, Formula f) { return make({FormulaKind::Exists, std::move(v), {}, 0, {std::move(f)}}); }
Formula forall(std::string v, Formula f) { return make({FormulaKind::Forall, std::move(v), {}, 0, {std::move(f)}}); }

bool is_atom(const FormulaNode& f) {
    return f.kind == FormulaKind::Adj || f.kind == FormulaKind::Eq || f.kind == FormulaKind::Col;
}

bool structurally_equal(const Formula& a, const Formula& b) {
    if (a == b) return true;
    if (a->kind != b->kind || a->lhs != b->lhs || a->rhs != b->rhs || a->color != b->color ||
        a->children.size() != b->children.size())
        return false;
    for (std::size_t i = 0; i < a->children.size(); ++i)
        if (!structurally_equal(a->children[i], b->children[i])) return false;
    return true;
}

// --- parser -----------------------------------------------------------------

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    Formula parse_all() {
        Formula f = formula();
        skip();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return f;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    void expect(char c) {
        if (!peek(c)) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    static bool ident_start(char c) { return c >= 'a' && c <= 'z'; }
    static bool ident_char(char c) { return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '_'; }

    std::string identifier() {
        skip();
        if (pos_ >= s_.size() || !ident_start(s_[pos_])) fail("expected identifier");
        std::size_t start = pos_;
        while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
        return std::string(s_.substr(start, pos_ - start));
    }

    int integer() {
        skip();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected color index");
        long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_++] - '0');
            if (v > std::numeric_limits<int>::max()) fail("color index too large");
        }
        return static_cast<int>(v);
    }

    Formula formula() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '~') {
            ++pos_;
            return negate(formula());
        }
        if (c == '(') {
            ++pos_;
            std::vector<Formula> parts{formula()};
            char op = 0;
            while (peek('&') || peek('|')) {
                char next = s_[pos_];
                if (op && next != op) fail("mixed '&' and '|' need their own parentheses");
                op = next;
                ++pos_;
                parts.push_back(formula());
            }
            expect(')');
            if (!op) return parts.front();
            return op == '&' ? conj(std::move(parts)) : disj(std::move(parts));
        }
        std::size_t start = pos_;
        std::string word = identifier();
        if (word == "ex" || word == "all") {
            skip();
            if (pos_ < s_.size() && ident_start(s_[pos_])) {
                std::string v = identifier();
                expect('.');
                Formula body = formula();
                return word == "ex" ? exists(std::move(v), std::move(body)) : forall(std::move(v), std::move(body));
            }
        }
        if (word == "adj" || word == "eq") {
            expect('(');
            std::string x = identifier();
            expect(',');
            std::string y = identifier();
            expect(')');
            return word == "adj" ? adj(std::move(x), std::move(y)) : eq(std::move(x), std::move(y));
        }
        if (word == "col") {
            expect('(');
            int i = integer();
            expect(',');
            std::string x = identifier();
            expect(')');
            return col(i, std::move(x));
        }
        pos_ = start;
        fail("expected formula");
    }
};

void collect_free(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
    auto note = [&](const std::string& v) {
        if (std::find(bound.begin(), bound.end(), v) == bound.end()) out.insert(v);
    };
    switch (f->kind) {
    case FormulaKind::Adj:
    case FormulaKind::Eq:
        note(f->lhs);
        note(f->rhs);
        break;
    case FormulaKind::Col:
        note(f->lhs);
        break;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
        bound.push_back(f->lhs);
        collect_free(f->children[0], bound, out);
        bound.pop_back();
        break;
    default:
        for (const auto& c : f->children) collect_free(c, bound, out);
    }
}

void print_to(const Formula& f, std::string& out) {
    switch (f->kind) {
    case FormulaKind::Adj: out += "adj(" + f->lhs + "," + f->rhs + ")"; break;
    case FormulaKind::Eq: out += "eq(" + f->lhs + "," + f->rhs + ")"; break;
    case FormulaKind::Col: out += "col(" + std::to_string(f->color) + "," + f->lhs + ")"; break;
    case FormulaKind::Not:
        out += "~";
        print_to(f->children[0], out);
        break;
    case FormulaKind::And:
    case FormulaKind::Or: {
        out += "(";
        for (std::size_t i = 0; i < f->children.size(); ++i) {
            if (i) out += f->kind == FormulaKind::And ? " & " : " | ";
            print_to(f->children[i], out);
        }
        out += ")";
        break;
    }
    case FormulaKind::Exists:
    case FormulaKind::Forall:
        out += (f->kind == FormulaKind::Exists ? "ex " : "all ") + f->lhs + ". ";
        print_to(f->children[0], out);
        break;
    }
}

}  // namespace

Formula parse_formula(std::string_view text, ParseOptions opts) {
    Formula f = Parser(text).parse_all();
    if (opts.strict) {
        auto fv = free_variables(f);
        if (!fv.empty()) throw ParseError("unbound variable '" + *fv.begin() + "'", 0);
    }
    return f;
}

std::string print_formula(const Formula& f) {
    std::string out;
    print_to(f, out);
    return out;
}

std::set<std::string> free_variables(const Formula& f) {
    std::vector<std::string> bound;
    std::set<std::string> out;
    collect_free(f, bound, out);
    return out;
}

// --- evaluation ---------------------------------------------------------------

namespace {

struct Evaluator {
    const ColoredGraph& g;
    Assignment env;

    Vertex lookup(const std::string& v) const {
        for (auto it = env.rbegin(); it != env.rend(); ++it)
            if (it->first == v) return it->second;
        throw EvaluationError("unbound variable '" + v + "'");
    }

    bool eval(const FormulaNode& f) {
        switch (f.kind) {
        case FormulaKind::Adj: return g.adjacent(lookup(f.lhs), lookup(f.rhs));
        case FormulaKind::Eq: return lookup(f.lhs) == lookup(f.rhs);
        case FormulaKind::Col: return g.has_color(lookup(f.lhs), f.color);
        case FormulaKind::Not: return !eval(*f.children[0]);
        case FormulaKind::And:
            for (const auto& c : f.children)
                if (!eval(*c)) return false;
            return true;
        case FormulaKind::Or:
            for (const auto& c : f.children)
                if (eval(*c)) return true;
            return false;
        case FormulaKind::Exists:
        case FormulaKind::Forall: {
            const bool want = f.kind == FormulaKind::Exists;
            env.emplace_back(f.lhs, 0);
            bool result = !want;
            for (Vertex v = 0; v < g.order(); ++v) {
                env.back().second = v;
                if (eval(*f.children[0]) == want) {
                    result = want;
                    break;
                }
            }
            env.pop_back();
            return result;
        }
        }
        return false;
    }
};

constexpr int kNone = std::numeric_limits<int>::min() / 4;

/// Per-first-letter maximum alternation count over nest(f).
struct AltInfo {
    int e = kNone, a = kNone, eps = kNone;
    int rank = 0;
};

AltInfo alt_info(const FormulaNode& f, std::unordered_map<const FormulaNode*, AltInfo>& memo) {
    if (auto it = memo.find(&f); it != memo.end()) return it->second;
    AltInfo r;
    switch (f.kind) {
    case FormulaKind::Adj:
    case FormulaKind::Eq:
    case FormulaKind::Col: r.eps = 0; break;
    case FormulaKind::Not: {
        r = alt_info(*f.children[0], memo);
        std::swap(r.e, r.a);
        break;
    }
    case FormulaKind::And:
    case FormulaKind::Or:
        for (const auto& c : f.children) {
            auto ci = alt_info(*c, memo);
            r.e = std::max(r.e, ci.e);
            r.a = std::max(r.a, ci.a);
            r.eps = std::max(r.eps, ci.eps);
            r.rank = std::max(r.rank, ci.rank);
        }
        break;
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
        auto ci = alt_info(*f.children[0], memo);
        const bool ex = f.kind == FormulaKind::Exists;
        int same = ex ? ci.e : ci.a, other = ex ? ci.a : ci.e;
        int best = std::max({same, other == kNone ? kNone : other + 1, ci.eps == kNone ? kNone : 0});
        (ex ? r.e : r.a) = best;
        r.rank = ci.rank + 1;
        break;
    }
    }
    memo.emplace(&f, r);
    return r;
}

bool nnf(const FormulaNode& f) {
    if (f.kind == FormulaKind::Not) return is_atom(*f.children[0]);
    for (const auto& c : f.children)
        if (!nnf(*c)) return false;
    return true;
}

std::size_t unfolded_size(const FormulaNode& f, std::size_t cap) {
    std::size_t total = 1;
    for (const auto& c : f.children) {
        total += unfolded_size(*c, cap);
        if (total > cap) return total;
    }
    return total;
}

std::string flip(std::string s) {
    for (char& c : s) c = c == 'E' ? 'A' : 'E';
    return s;
}

}  // namespace

bool evaluate(const Formula& f, const ColoredGraph& g, const Assignment& assignment) {
    Evaluator ev{g, assignment};
    for (const auto& [name, v] : assignment) {
        (void)name;
        g.check_vertex(v);
    }
    return ev.eval(*f);
}

std::set<std::string> nest_sequences(const Formula& f) {
    switch (f->kind) {
    case FormulaKind::Adj:
    case FormulaKind::Eq:
    case FormulaKind::Col: return {""};
    case FormulaKind::Not: {
        std::set<std::string> out;
        for (const auto& s : nest_sequences(f->children[0])) out.insert(flip(s));
        return out;
    }
    case FormulaKind::And:
    case FormulaKind::Or: {
        std::set<std::string> out;
        for (const auto& c : f->children) {
            auto sub = nest_sequences(c);
            out.insert(sub.begin(), sub.end());
        }
        return out;
    }
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
        std::set<std::string> out;
        const char q = f->kind == FormulaKind::Exists ? 'E' : 'A';
        for (const auto& s : nest_sequences(f->children[0])) out.insert(q + s);
        return out;
    }
    }
    return {};
}

int alternations(std::string_view seq) {
    int n = 0;
    for (std::size_t i = 1; i < seq.size(); ++i)
        if (seq[i] != seq[i - 1]) ++n;
    return n;
}

FormulaProfile analyze(const Formula& f) {
    std::unordered_map<const FormulaNode*, AltInfo> memo;
    auto info = alt_info(*f, memo);
    FormulaProfile p;
    p.quantifier_rank = info.rank;
    p.alternation_number = std::max({info.e, info.a, info.eps, 0});
    p.is_nnf = nnf(*f);
    if (unfolded_size(*f, nest_threshold) <= nest_threshold) p.nest = nest_sequences(f);
    return p;
}

}  // namespace fodef
