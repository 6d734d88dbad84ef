#pragma once

#include <cstdint>
#include <vector>

namespace itp::sat {

/// Literal encoding: variable v (0-based), literal = 2*v for positive, 2*v+1 negated.
using Lit = int;
inline Lit pos(int v) { return 2 * v; }
inline Lit neg(int v) { return 2 * v + 1; }
inline Lit negate(Lit l) { return l ^ 1; }
inline int var_of(Lit l) { return l >> 1; }
inline bool sign_of(Lit l) { return l & 1; } // true means negated

enum class Result { Sat, Unsat, Limit };

/// Clause-learning SAT solver with a fixed decision order (lowest unassigned
/// variable first, false branch first). With that order the first model found
/// assigns variables the lexicographically least satisfying pattern, which
/// keeps extracted structures canonical and runs deterministic.
class Solver {
public:
    int new_var();
    int num_vars() const { return static_cast<int>(assign_.size()); }
    /// Returns false if the clause is already falsified at level 0 (instance unsat).
    void add_clause(std::vector<Lit> lits);

    Result solve(int64_t conflict_limit = -1);

    /// Valid after solve() returned Sat.
    bool model_value(int v) const { return model_[v]; }

    bool inconsistent() const { return inconsistent_; }

private:
    enum : uint8_t { kUndef = 2 };

    struct Clause {
        std::vector<Lit> lits;
        bool learnt;
    };

    bool value_true(Lit l) const {
        uint8_t a = assign_[var_of(l)];
        return a != kUndef && (a == 1) == !sign_of(l);
    }
    bool value_false(Lit l) const {
        uint8_t a = assign_[var_of(l)];
        return a != kUndef && (a == 1) == sign_of(l);
    }
    bool value_undef(Lit l) const { return assign_[var_of(l)] == kUndef; }

    void enqueue(Lit l, int reason);
    int propagate(); // returns conflicting clause index or -1
    void analyze(int confl, std::vector<Lit>& learnt, int& backjump);
    void backtrack(int level);

    std::vector<Clause> clauses_;
    std::vector<std::vector<int>> watches_; // literal -> clause indices
    std::vector<uint8_t> assign_;           // 0 false, 1 true, 2 undef
    std::vector<int> reason_;               // var -> clause index or -1
    std::vector<int> level_;
    std::vector<Lit> trail_;
    std::vector<int> trail_lim_;
    std::vector<uint8_t> seen_;
    std::vector<bool> model_;
    size_t qhead_ = 0;
    bool inconsistent_ = false;
};

} // namespace itp::sat
