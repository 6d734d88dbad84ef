#include "itp/sat.hpp"

#include <algorithm>
#include <cassert>

namespace itp::sat {

int Solver::new_var() {
    int v = static_cast<int>(assign_.size());
    assign_.push_back(kUndef);
    reason_.push_back(-1);
    level_.push_back(0);
    seen_.push_back(0);
    watches_.emplace_back();
    watches_.emplace_back();
    return v;
}

void Solver::add_clause(std::vector<Lit> lits) {
    if (inconsistent_) return;
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    // Drop tautologies, satisfied and false literals (only level-0 state here).
    std::vector<Lit> out;
    for (size_t i = 0; i < lits.size(); ++i) {
        if (i + 1 < lits.size() && lits[i + 1] == negate(lits[i])) return; // tautology
        if (value_true(lits[i])) return;
        if (!value_false(lits[i])) out.push_back(lits[i]);
    }
    if (out.empty()) {
        inconsistent_ = true;
        return;
    }
    if (out.size() == 1) {
        if (value_undef(out[0])) {
            enqueue(out[0], -1);
            if (propagate() != -1) inconsistent_ = true;
        }
        return;
    }
    int idx = static_cast<int>(clauses_.size());
    clauses_.push_back({std::move(out), false});
    watches_[clauses_[idx].lits[0]].push_back(idx);
    watches_[clauses_[idx].lits[1]].push_back(idx);
}

void Solver::enqueue(Lit l, int reason) {
    int v = var_of(l);
    assert(assign_[v] == kUndef);
    assign_[v] = sign_of(l) ? 0 : 1;
    reason_[v] = reason;
    level_[v] = static_cast<int>(trail_lim_.size());
    trail_.push_back(l);
}

int Solver::propagate() {
    while (qhead_ < trail_.size()) {
        Lit l = trail_[qhead_++];
        Lit falsified = negate(l);
        std::vector<int>& ws = watches_[falsified];
        size_t keep = 0;
        for (size_t i = 0; i < ws.size(); ++i) {
            int ci = ws[i];
            Clause& c = clauses_[ci];
            if (c.lits[0] == falsified) std::swap(c.lits[0], c.lits[1]);
            // c.lits[1] == falsified now
            if (value_true(c.lits[0])) {
                ws[keep++] = ci;
                continue;
            }
            bool moved = false;
            for (size_t k = 2; k < c.lits.size(); ++k) {
                if (!value_false(c.lits[k])) {
                    std::swap(c.lits[1], c.lits[k]);
                    watches_[c.lits[1]].push_back(ci);
                    moved = true;
                    break;
                }
            }
            if (moved) continue;
            ws[keep++] = ci;
            if (value_false(c.lits[0])) {
                // conflict: restore remaining watches
                for (size_t j = i + 1; j < ws.size(); ++j) ws[keep++] = ws[j];
                ws.resize(keep);
                return ci;
            }
            enqueue(c.lits[0], ci);
        }
        ws.resize(keep);
    }
    return -1;
}

void Solver::analyze(int confl, std::vector<Lit>& learnt, int& backjump) {
    learnt.clear();
    learnt.push_back(0); // slot for the asserting literal
    int counter = 0;
    Lit p = -1;
    size_t index = trail_.size();
    int current = static_cast<int>(trail_lim_.size());
    std::vector<int> to_clear;

    for (;;) {
        const Clause& c = clauses_[confl];
        for (size_t i = (p == -1 ? 0 : 1); i < c.lits.size(); ++i) {
            Lit q = c.lits[i];
            int v = var_of(q);
            if (!seen_[v] && level_[v] > 0) {
                seen_[v] = 1;
                to_clear.push_back(v);
                if (level_[v] >= current) {
                    ++counter;
                } else {
                    learnt.push_back(q);
                }
            }
        }
        // find next literal on the trail to resolve on
        for (;;) {
            assert(index > 0);
            p = trail_[--index];
            if (seen_[var_of(p)]) break;
        }
        --counter;
        if (counter == 0) break;
        confl = reason_[var_of(p)];
        assert(confl != -1);
        // the first literal of a reason clause is the propagated one == p
        if (clauses_[confl].lits[0] != p) {
            auto& ls = const_cast<Clause&>(clauses_[confl]).lits;
            auto it = std::find(ls.begin(), ls.end(), p);
            std::iter_swap(ls.begin(), it);
        }
    }
    learnt[0] = negate(p);
    backjump = 0;
    if (learnt.size() > 1) {
        size_t max_i = 1;
        for (size_t i = 2; i < learnt.size(); ++i)
            if (level_[var_of(learnt[i])] > level_[var_of(learnt[max_i])]) max_i = i;
        std::swap(learnt[1], learnt[max_i]);
        backjump = level_[var_of(learnt[1])];
    }
    for (int v : to_clear) seen_[v] = 0;
}

void Solver::backtrack(int lvl) {
    if (static_cast<int>(trail_lim_.size()) <= lvl) return;
    size_t bound = trail_lim_[lvl];
    for (size_t i = trail_.size(); i-- > bound;) assign_[var_of(trail_[i])] = kUndef;
    trail_.resize(bound);
    trail_lim_.resize(lvl);
    qhead_ = bound;
}

Result Solver::solve(int64_t conflict_limit) {
    if (inconsistent_) return Result::Unsat;
    if (propagate() != -1) {
        inconsistent_ = true;
        return Result::Unsat;
    }
    int64_t conflicts = 0;
    int next_search = 0;
    for (;;) {
        int confl = propagate();
        if (confl != -1) {
            ++conflicts;
            if (trail_lim_.empty()) {
                inconsistent_ = true;
                return Result::Unsat;
            }
            if (conflict_limit >= 0 && conflicts > conflict_limit) {
                backtrack(0);
                return Result::Limit;
            }
            std::vector<Lit> learnt;
            int backjump = 0;
            analyze(confl, learnt, backjump);
            backtrack(backjump);
            if (learnt.size() == 1) {
                if (!value_undef(learnt[0])) {
                    inconsistent_ = true;
                    return Result::Unsat;
                }
                enqueue(learnt[0], -1);
            } else {
                int idx = static_cast<int>(clauses_.size());
                clauses_.push_back({learnt, true});
                watches_[learnt[0]].push_back(idx);
                watches_[learnt[1]].push_back(idx);
                enqueue(learnt[0], idx);
            }
            next_search = 0;
            continue;
        }
        // decide: lowest-index unassigned variable, false first
        int decision = -1;
        for (int v = next_search; v < num_vars(); ++v) {
            if (assign_[v] == kUndef) {
                decision = v;
                break;
            }
        }
        if (decision == -1) {
            model_.assign(num_vars(), false);
            for (int v = 0; v < num_vars(); ++v) model_[v] = assign_[v] == 1;
            backtrack(0);
            return Result::Sat;
        }
        next_search = decision + 1;
        trail_lim_.push_back(static_cast<int>(trail_.size()));
        enqueue(neg(decision), -1);
    }
}

} // namespace itp::sat
