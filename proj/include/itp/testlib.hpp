#pragma once

// Shared fixtures for the test suites: the running GF example (a G-decorated
// three-cycle vs. alternating R-cycles) and small builders.

#include "itp/semantics.hpp"
#include "itp/syntax.hpp"

namespace itp::test {

inline Formula example1_phi() {
    return parse_formula("E y z . (G(x,y,z) & R(x,y) & R(y,z) & R(z,x))");
}

inline Formula example1_psi() {
    return parse_formula("(A(x) & A y z . (R(y,z) -> (A(y) <-> ~A(z))))");
}

/// Three-cycle a -> c -> e -> a with the G-triple (a,c,e).
inline Structure fig1_A() {
    Structure s;
    s.dom = {"a", "c", "e"};
    s.sig.add("G", 3);
    s.sig.add("R", 2);
    s.rels["G"] = {{0, 1, 2}};
    s.rels["R"] = {{0, 1}, {1, 2}, {2, 0}};
    return s;
}

/// Directed R-cycle of length n with A on even positions.
inline Structure alternating_cycle(int n) {
    Structure s;
    for (int i = 0; i < n; ++i) s.dom.push_back("c" + std::to_string(i));
    s.sig.add("A", 1);
    s.sig.add("R", 2);
    for (int i = 0; i < n; ++i) {
        s.rels["R"].insert({i, (i + 1) % n});
        if (i % 2 == 0) s.rels["A"].insert({i});
    }
    return s;
}

/// Plain directed R-cycle of length n, no labels.
inline Structure plain_cycle(int n) {
    Structure s;
    for (int i = 0; i < n; ++i) s.dom.push_back("c" + std::to_string(i));
    s.sig.add("R", 2);
    for (int i = 0; i < n; ++i) s.rels["R"].insert({i, (i + 1) % n});
    return s;
}

/// Disjoint union; elements of b get names suffixed with an apostrophe-safe tag.
inline Structure disjoint_union(const Structure& a, const Structure& b) {
    Structure s = a;
    s.sig = Signature::united(a.sig, b.sig);
    int off = a.size();
    for (const auto& n : b.dom) s.dom.push_back(n + "_u");
    for (const auto& [rel, tuples] : b.rels)
        for (const auto& t : tuples) {
            std::vector<int> m;
            for (int e : t) m.push_back(e + off);
            s.rels[rel].insert(m);
        }
    return s;
}

} // namespace itp::test
