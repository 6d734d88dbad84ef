#include "itp/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace itp {

int Signature::arity_of(const std::string& name) const {
    auto it = arity.find(name);
    if (it == arity.end()) throw input_error("unknown relation symbol: " + name);
    return it->second;
}

void Signature::add(const std::string& name, int k) {
    if (k < 0) throw input_error("negative arity for " + name);
    auto it = arity.find(name);
    if (it != arity.end() && it->second != k)
        throw input_error("arity clash for " + name + ": " + std::to_string(it->second) +
                          " vs " + std::to_string(k));
    arity[name] = k;
}

Signature Signature::intersection(const Signature& a, const Signature& b) {
    Signature r;
    for (const auto& [n, k] : a.arity) {
        auto it = b.arity.find(n);
        if (it != b.arity.end() && it->second == k) r.arity[n] = k;
    }
    return r;
}

Signature Signature::united(const Signature& a, const Signature& b) {
    Signature r = a;
    for (const auto& [n, k] : b.arity) r.add(n, k);
    return r;
}

std::string Signature::to_text() const {
    std::string out;
    for (const auto& [n, k] : arity) {
        if (!out.empty()) out += ", ";
        out += n + "/" + std::to_string(k);
    }
    return out;
}

Signature Signature::parse(const std::string& text) {
    Signature sig;
    std::string item;
    std::stringstream ss(text);
    while (std::getline(ss, item, ',')) {
        size_t b = item.find_first_not_of(" \t");
        size_t e = item.find_last_not_of(" \t");
        if (b == std::string::npos) continue;
        item = item.substr(b, e - b + 1);
        size_t slash = item.find('/');
        if (slash == std::string::npos)
            throw input_error("signature entry needs NAME/arity: " + item);
        std::string name = item.substr(0, slash);
        int k = 0;
        try {
            k = std::stoi(item.substr(slash + 1));
        } catch (...) {
            throw input_error("bad arity in signature entry: " + item);
        }
        sig.add(name, k);
    }
    return sig;
}

namespace {
Formula mk(Kind k, std::string rel, std::vector<Var> vars, std::vector<Formula> kids) {
    return std::make_shared<const FormulaNode>(k, std::move(rel), std::move(vars), std::move(kids));
}
} // namespace

Formula f_true() { return mk(Kind::True, "", {}, {}); }
Formula f_false() { return mk(Kind::False, "", {}, {}); }
Formula f_atom(const std::string& rel, std::vector<Var> args) {
    return mk(Kind::Atom, rel, std::move(args), {});
}
Formula f_eq(Var a, Var b) { return mk(Kind::Eq, "", {std::move(a), std::move(b)}, {}); }
Formula f_not(Formula f) { return mk(Kind::Not, "", {}, {std::move(f)}); }
Formula f_and(Formula a, Formula b) { return mk(Kind::And, "", {}, {std::move(a), std::move(b)}); }
Formula f_or(Formula a, Formula b) { return mk(Kind::Or, "", {}, {std::move(a), std::move(b)}); }
Formula f_implies(Formula a, Formula b) {
    return mk(Kind::Implies, "", {}, {std::move(a), std::move(b)});
}
Formula f_iff(Formula a, Formula b) { return mk(Kind::Iff, "", {}, {std::move(a), std::move(b)}); }
Formula f_exists(std::vector<Var> vs, Formula body) {
    if (vs.empty()) throw precondition_error("quantifier needs at least one variable");
    return mk(Kind::Exists, "", std::move(vs), {std::move(body)});
}
Formula f_forall(std::vector<Var> vs, Formula body) {
    if (vs.empty()) throw precondition_error("quantifier needs at least one variable");
    return mk(Kind::Forall, "", std::move(vs), {std::move(body)});
}

Formula f_and_all(const std::vector<Formula>& fs) {
    if (fs.empty()) return f_true();
    Formula acc = fs[0];
    for (size_t i = 1; i < fs.size(); ++i) acc = f_and(acc, fs[i]);
    return acc;
}

Formula f_or_all(const std::vector<Formula>& fs) {
    if (fs.empty()) return f_false();
    Formula acc = fs[0];
    for (size_t i = 1; i < fs.size(); ++i) acc = f_or(acc, fs[i]);
    return acc;
}

bool struct_eq(const Formula& a, const Formula& b) {
    if (a.get() == b.get()) return true;
    if (a->kind != b->kind || a->rel != b->rel || a->vars != b->vars ||
        a->kids.size() != b->kids.size())
        return false;
    for (size_t i = 0; i < a->kids.size(); ++i)
        if (!struct_eq(a->kids[i], b->kids[i])) return false;
    return true;
}

namespace {

void flatten_chain(const Formula& f, Kind k, std::vector<Formula>& out) {
    if (f->kind == k) {
        flatten_chain(f->kids[0], k, out);
        flatten_chain(f->kids[1], k, out);
    } else {
        out.push_back(f);
    }
}

void print_rec(const Formula& f, std::string& out) {
    switch (f->kind) {
    case Kind::True: out += "true"; break;
    case Kind::False: out += "false"; break;
    case Kind::Atom: {
        out += f->rel;
        out += '(';
        for (size_t i = 0; i < f->vars.size(); ++i) {
            if (i) out += ',';
            out += f->vars[i];
        }
        out += ')';
        break;
    }
    case Kind::Eq:
        out += f->vars[0];
        out += '=';
        out += f->vars[1];
        break;
    case Kind::Not:
        out += '~';
        print_rec(f->kids[0], out);
        break;
    case Kind::And:
    case Kind::Or: {
        std::vector<Formula> parts;
        flatten_chain(f, f->kind, parts);
        out += '(';
        const char* op = f->kind == Kind::And ? " & " : " | ";
        for (size_t i = 0; i < parts.size(); ++i) {
            if (i) out += op;
            print_rec(parts[i], out);
        }
        out += ')';
        break;
    }
    case Kind::Implies:
    case Kind::Iff:
        out += '(';
        print_rec(f->kids[0], out);
        out += f->kind == Kind::Implies ? " -> " : " <-> ";
        print_rec(f->kids[1], out);
        out += ')';
        break;
    case Kind::Exists:
    case Kind::Forall:
        out += f->kind == Kind::Exists ? 'E' : 'A';
        for (const auto& v : f->vars) {
            out += ' ';
            out += v;
        }
        out += " . ";
        print_rec(f->kids[0], out);
        break;
    }
}

} // namespace

std::string print(const Formula& f) {
    std::string out;
    print_rec(f, out);
    return out;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

struct Token {
    enum Type { Name, Variable, LParen, RParen, Comma, EqSign, Tilde, AndOp, OrOp, ImpOp, IffOp, Dot, End } type;
    std::string text;
    int line, col;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : src_(s) { advance(); }
    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw input_error("syntax error at line " + std::to_string(tok_.line) + ", col " +
                          std::to_string(tok_.col) + ": " + msg);
    }

private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= src_.size()) {
            tok_ = {Token::End, "", line_, col_};
            return;
        }
        char c = src_[pos_];
        auto single = [&](Token::Type t) {
            tok_ = {t, std::string(1, c), line_, col_};
            ++pos_;
            ++col_;
        };
        if (c == '(') return single(Token::LParen);
        if (c == ')') return single(Token::RParen);
        if (c == ',') return single(Token::Comma);
        if (c == '=') return single(Token::EqSign);
        if (c == '~') return single(Token::Tilde);
        if (c == '&') return single(Token::AndOp);
        if (c == '|') return single(Token::OrOp);
        if (c == '.') return single(Token::Dot);
        if (c == '-') {
            if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
                tok_ = {Token::ImpOp, "->", line_, col_};
                pos_ += 2;
                col_ += 2;
                return;
            }
            throw input_error("stray '-' at line " + std::to_string(line_));
        }
        if (c == '<') {
            if (pos_ + 2 < src_.size() && src_[pos_ + 1] == '-' && src_[pos_ + 2] == '>') {
                tok_ = {Token::IffOp, "<->", line_, col_};
                pos_ += 3;
                col_ += 3;
                return;
            }
            throw input_error("stray '<' at line " + std::to_string(line_));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                ++pos_;
                ++col_;
            }
            std::string word = src_.substr(start, pos_ - start);
            tok_ = {std::isupper(static_cast<unsigned char>(c)) ? Token::Name : Token::Variable,
                    word, line_, tok_.col};
            return;
        }
        throw input_error("unexpected character '" + std::string(1, c) + "' at line " +
                          std::to_string(line_) + ", col " + std::to_string(col_));
    }

    std::string src_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

class Parser {
public:
    Parser(const std::string& text, const Signature* sig) : lex_(text), declared_(sig) {}

    Formula run() {
        Formula f = formula();
        if (lex_.peek().type != Token::End) lex_.fail("trailing input");
        return f;
    }

private:
    Formula formula() {
        const Token& t = lex_.peek();
        switch (t.type) {
        case Token::Tilde:
            lex_.take();
            return f_not(formula());
        case Token::LParen: {
            lex_.take();
            Formula acc = formula();
            Token::Type op = lex_.peek().type;
            if (op == Token::RParen) {
                lex_.take();
                return acc;
            }
            if (op != Token::AndOp && op != Token::OrOp && op != Token::ImpOp &&
                op != Token::IffOp)
                lex_.fail("expected operator or ')'");
            int count = 0;
            while (lex_.peek().type == op) {
                lex_.take();
                Formula rhs = formula();
                switch (op) {
                case Token::AndOp: acc = f_and(acc, rhs); break;
                case Token::OrOp: acc = f_or(acc, rhs); break;
                case Token::ImpOp: acc = f_implies(acc, rhs); break;
                case Token::IffOp: acc = f_iff(acc, rhs); break;
                default: break;
                }
                ++count;
                if ((op == Token::ImpOp || op == Token::IffOp) && count > 1)
                    lex_.fail("-> and <-> do not chain; add parentheses");
            }
            if (lex_.peek().type != Token::RParen) lex_.fail("expected ')' or matching operator");
            lex_.take();
            return acc;
        }
        case Token::Name: {
            Token name = lex_.take();
            if ((name.text == "E" || name.text == "A") && lex_.peek().type == Token::Variable) {
                std::vector<Var> vs;
                while (lex_.peek().type == Token::Variable) vs.push_back(lex_.take().text);
                if (lex_.peek().type != Token::Dot) lex_.fail("expected '.' after quantified variables");
                lex_.take();
                Formula body = formula();
                return name.text == "E" ? f_exists(std::move(vs), body)
                                        : mk(Kind::Forall, "", std::move(vs), {body});
            }
            if (lex_.peek().type != Token::LParen)
                lex_.fail("expected '(' after relation name " + name.text);
            lex_.take();
            std::vector<Var> args;
            if (lex_.peek().type != Token::RParen) {
                for (;;) {
                    if (lex_.peek().type != Token::Variable) lex_.fail("expected variable");
                    args.push_back(lex_.take().text);
                    if (lex_.peek().type == Token::Comma) {
                        lex_.take();
                        continue;
                    }
                    break;
                }
            }
            if (lex_.peek().type != Token::RParen) lex_.fail("expected ')'");
            lex_.take();
            check_arity(name.text, static_cast<int>(args.size()), name.line, name.col);
            return f_atom(name.text, std::move(args));
        }
        case Token::Variable: {
            Token v = lex_.take();
            if (v.text == "true") return f_true();
            if (v.text == "false") return f_false();
            if (lex_.peek().type != Token::EqSign) lex_.fail("expected '=' after variable " + v.text);
            lex_.take();
            if (lex_.peek().type != Token::Variable) lex_.fail("expected variable after '='");
            Token w = lex_.take();
            return f_eq(v.text, w.text);
        }
        default:
            lex_.fail("expected formula");
        }
        return nullptr; // unreachable
    }

    void check_arity(const std::string& name, int k, int line, int col) {
        if (declared_ && declared_->contains(name) && declared_->arity_of(name) != k)
            throw input_error("arity mismatch for " + name + " at line " + std::to_string(line) +
                              ", col " + std::to_string(col) + ": declared " +
                              std::to_string(declared_->arity_of(name)) + ", used " +
                              std::to_string(k));
        auto it = seen_.find(name);
        if (it != seen_.end() && it->second != k)
            throw input_error("arity mismatch for " + name + " at line " + std::to_string(line) +
                              ", col " + std::to_string(col));
        seen_[name] = k;
    }

    Lexer lex_;
    const Signature* declared_;
    std::map<std::string, int> seen_;
};

} // namespace

Formula parse_formula(const std::string& text, const Signature* sig) {
    return Parser(text, sig).run();
}

// ---------------------------------------------------------------------------
// Variable bookkeeping
// ---------------------------------------------------------------------------

namespace {
void free_vars_rec(const Formula& f, std::set<Var>& bound, std::set<Var>& out) {
    switch (f->kind) {
    case Kind::Atom:
    case Kind::Eq:
        for (const auto& v : f->vars)
            if (!bound.count(v)) out.insert(v);
        break;
    case Kind::Exists:
    case Kind::Forall: {
        std::vector<Var> added;
        for (const auto& v : f->vars)
            if (bound.insert(v).second) added.push_back(v);
        free_vars_rec(f->kids[0], bound, out);
        for (const auto& v : added) bound.erase(v);
        break;
    }
    default:
        for (const auto& k : f->kids) free_vars_rec(k, bound, out);
    }
}
} // namespace

std::set<Var> free_vars(const Formula& f) {
    std::set<Var> bound, out;
    free_vars_rec(f, bound, out);
    return out;
}

std::set<Var> all_vars(const Formula& f) {
    std::set<Var> out;
    std::function<void(const Formula&)> go = [&](const Formula& g) {
        for (const auto& v : g->vars) out.insert(v);
        for (const auto& k : g->kids) go(k);
    };
    go(f);
    return out;
}

Signature signature_of(const Formula& f) {
    Signature sig;
    std::function<void(const Formula&)> go = [&](const Formula& g) {
        if (g->kind == Kind::Atom) sig.add(g->rel, static_cast<int>(g->vars.size()));
        for (const auto& k : g->kids) go(k);
    };
    go(f);
    return sig;
}

// ---------------------------------------------------------------------------
// Fragment checks
// ---------------------------------------------------------------------------

namespace {

bool is_atomic(const Formula& f) { return f->kind == Kind::Atom || f->kind == Kind::Eq; }

std::set<Var> atom_var_set(const Formula& f) {
    return std::set<Var>(f->vars.begin(), f->vars.end());
}

void collect_conjuncts(const Formula& f, std::vector<Formula>& out) {
    if (f->kind == Kind::And) {
        collect_conjuncts(f->kids[0], out);
        collect_conjuncts(f->kids[1], out);
    } else {
        out.push_back(f);
    }
}

struct GfChecker {
    std::vector<FragmentViolation> violations;

    void check(const Formula& f) {
        switch (f->kind) {
        case Kind::True:
        case Kind::False:
        case Kind::Atom:
        case Kind::Eq:
            return;
        case Kind::Not:
        case Kind::And:
        case Kind::Or:
        case Kind::Implies:
        case Kind::Iff:
            for (const auto& k : f->kids) check(k);
            return;
        case Kind::Exists: {
            std::set<Var> need = free_vars(f->kids[0]);
            for (const auto& v : f->vars) need.insert(v);
            std::vector<Formula> conj;
            collect_conjuncts(f->kids[0], conj);
            const Formula* guard = nullptr;
            for (const auto& c : conj) {
                if (is_atomic(c)) {
                    std::set<Var> gv = atom_var_set(c);
                    if (std::includes(gv.begin(), gv.end(), need.begin(), need.end())) {
                        guard = &c;
                        break;
                    }
                }
            }
            if (!guard) {
                violations.push_back({print(f), "existential quantifier without covering guard atom"});
            }
            for (const auto& c : conj) check(c);
            return;
        }
        case Kind::Forall: {
            // A ys . (guard -> body); anything else must be pre-normalized.
            std::set<Var> need = free_vars(f->kids[0]);
            for (const auto& v : f->vars) need.insert(v);
            const Formula& body = f->kids[0];
            if (body->kind == Kind::Implies && is_atomic(body->kids[0])) {
                std::set<Var> gv = atom_var_set(body->kids[0]);
                if (std::includes(gv.begin(), gv.end(), need.begin(), need.end())) {
                    check(body->kids[1]);
                    return;
                }
            }
            violations.push_back({print(f), "universal quantifier not of the guarded form"});
            check(body);
            return;
        }
        }
    }
};

} // namespace

FragmentReport check_fragment(const Formula& f, Fragment which) {
    FragmentReport rep;
    rep.fragment = which;
    if (which == Fragment::GF) {
        GfChecker c;
        c.check(f);
        rep.violations = std::move(c.violations);
    } else {
        for (const auto& v : all_vars(f)) {
            if (v != "x" && v != "y")
                rep.violations.push_back({v, "variable other than x, y occurs"});
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

namespace {

Var fresh_name(const Var& base, const std::set<Var>& taken) {
    for (int i = 1;; ++i) {
        Var cand = base + "_" + std::to_string(i);
        if (!taken.count(cand)) return cand;
    }
}

Formula subst_rec(const Formula& f, const std::map<Var, Var>& m, bool require_total) {
    switch (f->kind) {
    case Kind::True:
    case Kind::False:
        return f;
    case Kind::Atom:
    case Kind::Eq: {
        std::vector<Var> vs;
        vs.reserve(f->vars.size());
        for (const auto& v : f->vars) {
            auto it = m.find(v);
            if (it == m.end()) {
                if (require_total) throw precondition_error("substitution missing variable " + v);
                vs.push_back(v);
            } else {
                vs.push_back(it->second);
            }
        }
        return mk(f->kind, f->rel, std::move(vs), {});
    }
    case Kind::Exists:
    case Kind::Forall: {
        std::map<Var, Var> inner = m;
        for (const auto& v : f->vars) inner.erase(v);
        // Rename bound variables that would capture a substituted name.
        std::set<Var> incoming;
        std::set<Var> body_free = free_vars(f->kids[0]);
        for (const auto& [from, to] : inner)
            if (body_free.count(from)) incoming.insert(to);
        std::vector<Var> bound = f->vars;
        Formula body = f->kids[0];
        std::set<Var> taken = all_vars(f);
        for (const auto& [from, to] : inner) {
            taken.insert(from);
            taken.insert(to);
        }
        for (auto& bv : bound) {
            if (incoming.count(bv)) {
                Var nv = fresh_name(bv, taken);
                taken.insert(nv);
                std::map<Var, Var> r{{bv, nv}};
                body = subst_rec(body, r, false);
                bv = nv;
            }
        }
        Formula nb = subst_rec(body, inner, false);
        return mk(f->kind, "", std::move(bound), {nb});
    }
    default: {
        std::vector<Formula> kids;
        kids.reserve(f->kids.size());
        for (const auto& k : f->kids) kids.push_back(subst_rec(k, m, require_total));
        return mk(f->kind, f->rel, f->vars, std::move(kids));
    }
    }
}

} // namespace

Formula substitute(const Formula& f, const std::map<Var, Var>& m) {
    for (const auto& v : free_vars(f))
        if (!m.count(v)) throw precondition_error("substitution missing free variable " + v);
    return subst_rec(f, m, false);
}

Formula rename_non_tau(const Formula& f, const Signature& tau) {
    Signature sig = signature_of(f);
    std::map<std::string, std::string> renaming;
    std::set<std::string> taken;
    for (const auto& [n, k] : sig.arity) taken.insert(n);
    for (const auto& [n, k] : tau.arity) taken.insert(n);
    for (const auto& [n, k] : sig.arity) {
        if (tau.contains(n)) continue;
        std::string cand = n + "_p";
        int suffix = 0;
        while (taken.count(cand)) cand = n + "_p" + std::to_string(++suffix);
        taken.insert(cand);
        renaming[n] = cand;
    }
    std::function<Formula(const Formula&)> go = [&](const Formula& g) -> Formula {
        if (g->kind == Kind::Atom) {
            auto it = renaming.find(g->rel);
            if (it != renaming.end()) return f_atom(it->second, g->vars);
            return g;
        }
        if (g->kids.empty()) return g;
        std::vector<Formula> kids;
        for (const auto& k : g->kids) kids.push_back(go(k));
        return mk(g->kind, g->rel, g->vars, std::move(kids));
    };
    return go(f);
}

Formula normalize_quantifiers(const Formula& f) {
    switch (f->kind) {
    case Kind::Forall: {
        Formula body = f->kids[0];
        if (body->kind == Kind::Implies) {
            Formula g = normalize_quantifiers(body->kids[0]);
            Formula b = normalize_quantifiers(body->kids[1]);
            return f_not(f_exists(f->vars, f_and(g, f_not(b))));
        }
        return f_not(f_exists(f->vars, f_not(normalize_quantifiers(body))));
    }
    case Kind::Exists:
        return f_exists(f->vars, normalize_quantifiers(f->kids[0]));
    default: {
        if (f->kids.empty()) return f;
        std::vector<Formula> kids;
        for (const auto& k : f->kids) kids.push_back(normalize_quantifiers(k));
        return mk(f->kind, f->rel, f->vars, std::move(kids));
    }
    }
}

namespace {
Formula desugar_rec(const Formula& f) {
    switch (f->kind) {
    case Kind::True:
    case Kind::False:
    case Kind::Atom:
    case Kind::Eq:
        return f;
    case Kind::Not: {
        Formula inner = desugar_rec(f->kids[0]);
        if (inner->kind == Kind::Not) return inner->kids[0];
        return f_not(inner);
    }
    case Kind::And:
        return f_and(desugar_rec(f->kids[0]), desugar_rec(f->kids[1]));
    case Kind::Or:
        return f_or(desugar_rec(f->kids[0]), desugar_rec(f->kids[1]));
    case Kind::Implies: {
        // a -> b  ~~>  ~(a & ~b), keeping guard shapes intact under E.
        Formula a = desugar_rec(f->kids[0]);
        Formula b = desugar_rec(f->kids[1]);
        Formula body = b->kind == Kind::Not ? f_and(a, b->kids[0]) : f_and(a, f_not(b));
        return f_not(body);
    }
    case Kind::Iff: {
        Formula a = desugar_rec(f->kids[0]);
        Formula b = desugar_rec(f->kids[1]);
        Formula na = a->kind == Kind::Not ? a->kids[0] : f_not(a);
        Formula nb = b->kind == Kind::Not ? b->kids[0] : f_not(b);
        return f_or(f_and(a, b), f_and(na, nb));
    }
    case Kind::Exists:
        return f_exists(f->vars, desugar_rec(f->kids[0]));
    case Kind::Forall: {
        Formula body = f->kids[0];
        if (body->kind == Kind::Implies) {
            Formula g = desugar_rec(body->kids[0]);
            Formula b = desugar_rec(body->kids[1]);
            Formula nb = b->kind == Kind::Not ? b->kids[0] : f_not(b);
            return f_not(f_exists(f->vars, f_and(g, nb)));
        }
        Formula b = desugar_rec(body);
        Formula nb = b->kind == Kind::Not ? b->kids[0] : f_not(b);
        return f_not(f_exists(f->vars, nb));
    }
    }
    return f;
}
} // namespace

Formula desugar(const Formula& f) { return desugar_rec(f); }

Formula canonicalize_bound(const Formula& f) {
    int counter = 0;
    std::function<Formula(const Formula&, std::map<Var, Var>)> go =
        [&](const Formula& g, std::map<Var, Var> env) -> Formula {
        switch (g->kind) {
        case Kind::Atom:
        case Kind::Eq: {
            std::vector<Var> vs;
            for (const auto& v : g->vars) {
                auto it = env.find(v);
                vs.push_back(it == env.end() ? v : it->second);
            }
            return mk(g->kind, g->rel, std::move(vs), {});
        }
        case Kind::Exists:
        case Kind::Forall: {
            std::vector<Var> nb;
            for (const auto& v : g->vars) {
                Var nv = "b" + std::to_string(++counter);
                env[v] = nv;
                nb.push_back(nv);
            }
            Formula body = go(g->kids[0], env);
            return mk(g->kind, "", std::move(nb), {body});
        }
        default: {
            if (g->kids.empty()) return g;
            std::vector<Formula> kids;
            for (const auto& k : g->kids) kids.push_back(go(k, env));
            return mk(g->kind, g->rel, g->vars, std::move(kids));
        }
        }
    };
    return go(f, {});
}

int quantifier_rank(const Formula& f) {
    int best = 0;
    for (const auto& k : f->kids) best = std::max(best, quantifier_rank(k));
    if (f->kind == Kind::Exists || f->kind == Kind::Forall) return best + 1;
    return best;
}

} // namespace itp
