#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "itp/semantics.hpp"
#include "itp/testlib.hpp"

using namespace itp;

TEST_CASE("structure parse and text round-trip") {
    const char* text =
        "dom: a c e\n"
        "G: (a,c,e)\n"
        "R: (a,c) (c,e) (e,a)\n";
    Structure s = Structure::parse(text);
    CHECK(s.size() == 3);
    CHECK(s.holds("R", {0, 1}));
    CHECK_FALSE(s.holds("R", {1, 0}));
    Structure s2 = Structure::parse(s.to_text());
    CHECK(s2.to_text() == s.to_text());
    CHECK(s2.content_hash() == s.content_hash());

    PointedStructure ps = PointedStructure::parse("dom: a b\nA/1: a\nR/2:\npoint: a,b\n");
    CHECK(ps.point == std::vector<int>{0, 1});
    CHECK(ps.s.sig.arity_of("R") == 2);
}

TEST_CASE("eval on the three-cycle") {
    Structure a = test::fig1_A();
    Formula phi = test::example1_phi();
    CHECK(eval(a, {{"x", 0}}, phi));
    CHECK_FALSE(eval(a, {{"x", 1}}, phi)); // c is not on a G-triple in first position
    CHECK(eval(a, {{"x", 0}}, parse_formula("x=x")));

    Structure cyc = test::alternating_cycle(6);
    Formula psi = test::example1_psi();
    CHECK(eval(cyc, {{"x", 0}}, psi));
    CHECK(eval(cyc, {{"x", 2}}, psi));
    CHECK_FALSE(eval(cyc, {{"x", 1}}, psi)); // odd positions lack A
}

TEST_CASE("eval agrees with normalize_quantifiers and desugar") {
    Formula psi = test::example1_psi();
    Formula nq = normalize_quantifiers(psi);
    Formula ds = desugar(psi);
    Structure cyc = test::alternating_cycle(6);
    Structure a = test::fig1_A();
    for (const Structure* s : {&cyc, &a}) {
        for (int e = 0; e < s->size(); ++e) {
            Assignment v{{"x", e}};
            bool expect = eval(*s, v, psi);
            CHECK(eval(*s, v, nq) == expect);
            CHECK(eval(*s, v, ds) == expect);
        }
    }
}

TEST_CASE("restrict") {
    Structure a = test::fig1_A();
    Structure same = a.restrict_to({0, 1, 2});
    CHECK(same.to_text() == a.to_text());
    Structure single = a.restrict_to({0});
    CHECK(single.size() == 1);
    CHECK(single.rels["R"].empty());
    Structure pair = a.restrict_to({0, 1});
    CHECK(pair.rels["R"] == std::set<std::vector<int>>{{0, 1}});
    CHECK_THROWS_AS(a.restrict_to({}), precondition_error);
}

TEST_CASE("enumerate_structures counts") {
    Signature one;
    one.add("A", 1);
    StructureEnumerator e1(one, 1);
    int n = 0;
    while (e1.next()) ++n;
    CHECK(n == 2);

    Signature r2;
    r2.add("R", 2);
    StructureEnumerator e2(r2, 1);
    n = 0;
    while (e2.next()) ++n;
    CHECK(n == 2);

    Signature both;
    both.add("A", 1);
    both.add("R", 2);
    StructureEnumerator e3(both, 2);
    n = 0;
    while (e3.next()) ++n;
    CHECK(n == 64);
    CHECK(StructureEnumerator::count_all(both, 2) == 64);
}

TEST_CASE("find_model basics") {
    SearchBudget b;
    b.max_size = 3;
    auto r1 = find_model(parse_formula("A(x)"), b);
    REQUIRE(r1.status == SearchStatus::Found);
    CHECK(r1.model->s.size() == 1);

    auto r2 = find_model(parse_formula("(A(x) & ~A(x))"), b);
    CHECK(r2.status == SearchStatus::Exhausted);

    // psi of the running example already has a size-1 model (no R-edges)
    auto r3 = find_model(test::example1_psi(), b);
    REQUIRE(r3.status == SearchStatus::Found);
    CHECK(r3.model->s.size() == 1);
    CHECK(eval(r3.model->s, {{"x", r3.model->point[0]}}, test::example1_psi()));

    // phi needs three distinct elements on the G-triple
    auto r4 = find_model(test::example1_phi(), b);
    REQUIRE(r4.status == SearchStatus::Found);
    CHECK(r4.model->s.size() == 3);
    CHECK(eval(r4.model->s, {{"x", r4.model->point[0]}}, test::example1_phi()));
}

TEST_CASE("check_entailment_bounded") {
    SearchBudget b;
    b.max_size = 4;
    auto holds = check_entailment_bounded(parse_formula("A(x)"), parse_formula("A(x)"), b);
    CHECK(holds.status == EntailmentStatus::HoldsUpToBudget);

    auto counter = check_entailment_bounded(parse_formula("A(x)"), parse_formula("B(x)"), b);
    REQUIRE(counter.status == EntailmentStatus::Countermodel);
    CHECK(counter.countermodel->s.size() == 1);

    // phi |= ~psi for the running example (checked at small size here; the
    // acceptance suite pushes this to size 6)
    SearchBudget b4;
    b4.max_size = 4;
    auto r = check_entailment_bounded(test::example1_phi(), f_not(test::example1_psi()), b4);
    CHECK(r.status == EntailmentStatus::HoldsUpToBudget);
}

TEST_CASE("eval invariant under isomorphism") {
    // relabel the 6-cycle by rotation and check psi at matching points
    Structure cyc = test::alternating_cycle(6);
    Structure rot;
    rot.sig = cyc.sig;
    rot.dom = cyc.dom;
    auto perm = [&](int e) { return (e + 2) % 6; };
    for (const auto& [rel, tuples] : cyc.rels)
        for (const auto& t : tuples) {
            std::vector<int> m;
            for (int e : t) m.push_back(perm(e));
            rot.rels[rel].insert(m);
        }
    Formula psi = test::example1_psi();
    for (int e = 0; e < 6; ++e)
        CHECK(eval(cyc, {{"x", e}}, psi) == eval(rot, {{"x", perm(e)}}, psi));
}
