#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "itp/syntax.hpp"

using namespace itp;

TEST_CASE("parse and print round-trip") {
    const char* samples[] = {
        "E y z . (G(x,y,z) & R(x,y) & R(y,z) & R(z,x))",
        "A(x)",
        "A x . R(x,x)",
        "(A(x) & A y z . (R(y,z) -> (A(y) <-> ~A(z))))",
        "x=y",
        "~(A(x) | B(x))",
        "true",
        "(false -> A(x))",
    };
    for (const char* s : samples) {
        Formula f = parse_formula(s);
        Formula g = parse_formula(print(f));
        CHECK(struct_eq(f, g));
    }
    // print of parse is canonical text
    Formula f = parse_formula("A x . R(x,x)");
    CHECK(print(f) == "A x . R(x,x)");
    CHECK(print(parse_formula(print(f))) == print(f));
}

TEST_CASE("parse errors carry position") {
    CHECK_THROWS_AS(parse_formula("E y . (R(x,y"), input_error);
    CHECK_THROWS_AS(parse_formula("R(x,) "), input_error);
    CHECK_THROWS_AS(parse_formula("(A(x) & B(x) | C(x))"), input_error);
    Signature sig;
    sig.add("R", 2);
    CHECK_THROWS_AS(parse_formula("R(x)", &sig), input_error);
    CHECK_THROWS_AS(parse_formula("(R(x,y) & R(x,y,z))"), input_error);
}

static Formula example1_phi() {
    return parse_formula("E y z . (G(x,y,z) & R(x,y) & R(y,z) & R(z,x))");
}

static Formula example1_psi() {
    return parse_formula("(A(x) & A y z . (R(y,z) -> (A(y) <-> ~A(z))))");
}

TEST_CASE("free variables") {
    CHECK(free_vars(example1_phi()) == std::set<Var>{"x"});
    CHECK(free_vars(parse_formula("x=y")) == std::set<Var>{"x", "y"});
    Formula closed = parse_formula("A x . (A(x) -> E y . (R(x,y) & A(y)))");
    CHECK(free_vars(closed).empty());
}

TEST_CASE("signature extraction") {
    Signature s1 = signature_of(example1_phi());
    CHECK(s1.arity == std::map<std::string, int>{{"G", 3}, {"R", 2}});
    Signature s2 = signature_of(example1_psi());
    CHECK(s2.arity == std::map<std::string, int>{{"A", 1}, {"R", 2}});
    CHECK(signature_of(parse_formula("x=y")).arity.empty());
}

TEST_CASE("fragment checks") {
    CHECK(check_fragment(example1_phi(), Fragment::GF).ok());
    CHECK(check_fragment(example1_psi(), Fragment::GF).ok());
    // atom is its own guard
    CHECK(check_fragment(parse_formula("E y . R(x,y)"), Fragment::GF).ok());
    CHECK(check_fragment(parse_formula("E y . R(x,y)"), Fragment::FO2).ok());
    // unguarded universal pair
    Formula unguarded = parse_formula("A x y . ((Y(x) & Y(y)) -> x=y)");
    CHECK_FALSE(check_fragment(unguarded, Fragment::GF).ok());
    CHECK(check_fragment(unguarded, Fragment::FO2).ok());
    CHECK_FALSE(check_fragment(parse_formula("E z . R(x,z)"), Fragment::FO2).ok());
    // equality guard x=x
    CHECK(check_fragment(parse_formula("A x . (x=x -> A(x))"), Fragment::GF).ok());
    // negated-existential universal form
    CHECK(check_fragment(parse_formula("~E y . (R(x,y) & ~A(y))"), Fragment::GF).ok());
}

TEST_CASE("substitute") {
    Formula f = parse_formula("R(x,y)");
    CHECK(print(substitute(f, {{"x", "y"}, {"y", "y"}})) == "R(y,y)");
    Formula g = parse_formula("E y . R(x,y)");
    CHECK(print(substitute(g, {{"x", "z"}})) == "E y . R(z,y)");
    // capture avoidance: substituting y into the scope of bound y renames the binder
    Formula h = parse_formula("E y . R(x,y)");
    Formula hs = substitute(h, {{"x", "y"}});
    CHECK(free_vars(hs) == std::set<Var>{"y"});
    CHECK(print(hs) != "E y . R(y,y)");
    // identity map is identity
    Formula phi = example1_phi();
    CHECK(struct_eq(substitute(phi, {{"x", "x"}}), phi));
    Formula phi3 = substitute(phi, {{"x", "x3"}});
    CHECK(free_vars(phi3) == std::set<Var>{"x3"});
    CHECK_THROWS_AS(substitute(parse_formula("R(x,y)"), {{"x", "z"}}), precondition_error);
}

TEST_CASE("rename_non_tau") {
    Signature tau;
    tau.add("R", 2);
    Formula psi = example1_psi();
    Formula renamed = rename_non_tau(psi, tau);
    Signature s = signature_of(renamed);
    CHECK(s.contains("R"));
    CHECK_FALSE(s.contains("A"));
    CHECK(s.contains("A_p"));
    // untouched when sig within tau
    Formula f = parse_formula("R(x,y)");
    CHECK(struct_eq(rename_non_tau(f, tau), f));
    Formula z = parse_formula("Z(x)");
    CHECK(print(rename_non_tau(z, tau)) == "Z_p(x)");
}

TEST_CASE("normalize_quantifiers") {
    Formula f = parse_formula("A y . (R(x,y) -> A(y))");
    CHECK(print(normalize_quantifiers(f)) == "~E y . (R(x,y) & ~A(y))");
    Formula qf = parse_formula("(A(x) & ~B(x))");
    CHECK(struct_eq(normalize_quantifiers(qf), qf));
}

TEST_CASE("desugar removes sugar") {
    Formula f = desugar(example1_psi());
    std::function<void(const Formula&)> scan = [&](const Formula& g) {
        CHECK(g->kind != Kind::Implies);
        CHECK(g->kind != Kind::Iff);
        CHECK(g->kind != Kind::Forall);
        if (g->kind == Kind::Not) CHECK(g->kids[0]->kind != Kind::Not);
        for (const auto& k : g->kids) scan(k);
    };
    scan(f);
}

TEST_CASE("canonicalize_bound and quantifier rank") {
    Formula f = parse_formula("E y . (R(x,y) & E z . (R(y,z) & A(z)))");
    Formula c = canonicalize_bound(f);
    CHECK(print(c) == "E b1 . (R(x,b1) & E b2 . (R(b1,b2) & A(b2)))");
    CHECK(quantifier_rank(f) == 2);
    CHECK(quantifier_rank(parse_formula("A(x)")) == 0);
}
