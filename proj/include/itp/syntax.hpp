#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "itp/common.hpp"

namespace itp {

using Var = std::string;

/// Relational signature: relation name -> arity. No function or constant symbols.
struct Signature {
    std::map<std::string, int> arity;

    bool contains(const std::string& name) const { return arity.count(name) != 0; }
    int arity_of(const std::string& name) const;
    void add(const std::string& name, int k); // throws input_error on arity clash

    static Signature intersection(const Signature& a, const Signature& b);
    static Signature united(const Signature& a, const Signature& b);

    bool operator==(const Signature&) const = default;
    std::string to_text() const; // "R/2, A/1"
    static Signature parse(const std::string& text);
};

enum class Kind {
    True,
    False,
    Atom,    // rel(vars...)
    Eq,      // vars[0] = vars[1]
    Not,
    And,
    Or,
    Implies,
    Iff,
    Exists,  // vars = quantified variables, kids[0] = body
    Forall,
};

class FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

class FormulaNode {
public:
    Kind kind;
    std::string rel;            // Atom only
    std::vector<Var> vars;      // Atom args, Eq pair, or quantified variables
    std::vector<Formula> kids;

    FormulaNode(Kind k, std::string r, std::vector<Var> vs, std::vector<Formula> ks)
        : kind(k), rel(std::move(r)), vars(std::move(vs)), kids(std::move(ks)) {}
};

Formula f_true();
Formula f_false();
Formula f_atom(const std::string& rel, std::vector<Var> args);
Formula f_eq(Var a, Var b);
Formula f_not(Formula f);
Formula f_and(Formula a, Formula b);
Formula f_or(Formula a, Formula b);
Formula f_implies(Formula a, Formula b);
Formula f_iff(Formula a, Formula b);
Formula f_exists(std::vector<Var> vs, Formula body);
Formula f_forall(std::vector<Var> vs, Formula body);

/// Conjunction of all formulas in order; `true` when empty, the formula itself for one.
Formula f_and_all(const std::vector<Formula>& fs);
Formula f_or_all(const std::vector<Formula>& fs);

bool struct_eq(const Formula& a, const Formula& b);

/// Canonical text form; parse(print(f)) == f structurally.
std::string print(const Formula& f);

/// Parses the formula grammar. When `sig` is given, atom arities are checked
/// against it; undeclared relation names are still accepted and checked for
/// internal consistency.
Formula parse_formula(const std::string& text, const Signature* sig = nullptr);

std::set<Var> free_vars(const Formula& f);
std::set<Var> all_vars(const Formula& f);

/// Exactly the relation symbols occurring in f, with arities.
/// Throws input_error if one name occurs with two arities.
Signature signature_of(const Formula& f);

enum class Fragment { GF, FO2 };

struct FragmentViolation {
    std::string where;  // printed subformula
    std::string reason;
};

struct FragmentReport {
    Fragment fragment;
    std::vector<FragmentViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// GF: every quantifier is guarded by an atom (relational or equality)
/// containing all variables of the quantified subformula, with universal
/// quantifiers accepted either as A ys . (guard -> body) or in the negated
/// existential form. FO2: at most the variable names x and y occur.
FragmentReport check_fragment(const Formula& f, Fragment which);

/// Capture-avoiding substitution on free occurrences. `m` must cover all free
/// variables of f; it may be non-injective.
Formula substitute(const Formula& f, const std::map<Var, Var>& m);

/// Replaces every relation symbol not in tau by a primed copy of the same
/// arity (deterministic: R -> R_p, with a numeric suffix on collision).
Formula rename_non_tau(const Formula& f, const Signature& tau);

/// Rewrites every universal quantifier into the negated existential form;
/// A ys . (g -> b) becomes ~E ys . (g & ~b), other bodies ~E ys . ~body.
Formula normalize_quantifiers(const Formula& f);

/// normalize_quantifiers plus elimination of -> and <-> and double negation.
/// Output uses only true/false/atom/eq/~/&/|/E.
Formula desugar(const Formula& f);

/// Renames all bound variables to b1, b2, ... in traversal order.
Formula canonicalize_bound(const Formula& f);

/// Nesting depth of quantifiers.
int quantifier_rank(const Formula& f);

} // namespace itp
