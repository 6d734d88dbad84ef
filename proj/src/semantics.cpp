#include "itp/semantics.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "itp/sat.hpp"

namespace itp {

int Structure::elem(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (dom[i] == name) return i;
    throw input_error("unknown domain element: " + name);
}

bool Structure::holds(const std::string& rel, const std::vector<int>& tuple) const {
    auto it = rels.find(rel);
    if (it == rels.end()) return false;
    return it->second.count(tuple) != 0;
}

void Structure::add_tuple(const std::string& rel, const std::vector<int>& tuple) {
    for (int e : tuple)
        if (e < 0 || e >= size()) throw precondition_error("tuple element out of domain");
    sig.add(rel, static_cast<int>(tuple.size()));
    rels[rel].insert(tuple);
}

Structure Structure::restrict_to(const std::vector<int>& X) const {
    if (X.empty()) throw precondition_error("restriction to empty set (domains are nonempty)");
    std::map<int, int> remap;
    Structure out;
    out.sig = sig;
    for (int e : X) {
        if (e < 0 || e >= size()) throw precondition_error("restriction element out of domain");
        if (remap.count(e)) continue;
        remap[e] = static_cast<int>(out.dom.size());
        out.dom.push_back(dom[e]);
    }
    for (const auto& [rel, tuples] : rels) {
        for (const auto& t : tuples) {
            std::vector<int> mapped;
            mapped.reserve(t.size());
            bool inside = true;
            for (int e : t) {
                auto it = remap.find(e);
                if (it == remap.end()) {
                    inside = false;
                    break;
                }
                mapped.push_back(it->second);
            }
            if (inside) out.rels[rel].insert(mapped);
        }
    }
    return out;
}

std::string Structure::to_text() const {
    std::string out = "dom:";
    for (const auto& n : dom) out += " " + n;
    out += "\n";
    for (const auto& [rel, tuples] : rels) {
        out += rel + "/" + std::to_string(sig.arity_of(rel)) + ":";
        for (const auto& t : tuples) {
            if (t.empty()) {
                out += " ()";
            } else if (t.size() == 1) {
                out += " " + dom[t[0]];
            } else {
                out += " (";
                for (size_t i = 0; i < t.size(); ++i) {
                    if (i) out += ",";
                    out += dom[t[i]];
                }
                out += ")";
            }
        }
        out += "\n";
    }
    return out;
}

namespace {

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string w;
    while (ss >> w) out.push_back(w);
    return out;
}

struct ParsedStructure {
    Structure s;
    std::optional<std::vector<int>> point;
};

ParsedStructure parse_structure_text(const std::string& text) {
    ParsedStructure out;
    std::stringstream ss(text);
    std::string line;
    bool have_dom = false;
    while (std::getline(ss, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        size_t colon = line.find(':');
        if (colon == std::string::npos) {
            if (!split_ws(line).empty()) throw input_error("structure file: expected 'key: ...' line, got: " + line);
            continue;
        }
        std::string key = line.substr(0, colon);
        std::string rest = line.substr(colon + 1);
        key.erase(std::remove_if(key.begin(), key.end(), ::isspace), key.end());
        if (key == "dom") {
            out.s.dom = split_ws(rest);
            have_dom = true;
            continue;
        }
        if (key == "point") {
            if (!have_dom) throw input_error("structure file: point before dom");
            std::vector<int> pt;
            std::string item;
            std::stringstream rs(rest);
            while (std::getline(rs, item, ',')) {
                auto ws = split_ws(item);
                if (ws.size() != 1) throw input_error("structure file: bad point entry");
                pt.push_back(out.s.elem(ws[0]));
            }
            out.point = pt;
            continue;
        }
        if (!have_dom) throw input_error("structure file: relation before dom");
        // relation line, key is NAME or NAME/arity
        std::string rel = key;
        int declared = -1;
        size_t slash = key.find('/');
        if (slash != std::string::npos) {
            rel = key.substr(0, slash);
            declared = std::stoi(key.substr(slash + 1));
        }
        std::vector<std::vector<int>> tuples;
        std::stringstream rs(rest);
        std::string tok;
        while (rs >> tok) {
            if (tok[0] == '(') {
                std::string acc = tok;
                while (acc.back() != ')' && rs >> tok) acc += tok;
                if (acc.back() != ')') throw input_error("structure file: unterminated tuple");
                std::string inner = acc.substr(1, acc.size() - 2);
                std::vector<int> tuple;
                if (!inner.empty()) {
                    std::string item;
                    std::stringstream is(inner);
                    while (std::getline(is, item, ',')) {
                        auto ws = split_ws(item);
                        if (ws.size() != 1) throw input_error("structure file: bad tuple entry");
                        tuple.push_back(out.s.elem(ws[0]));
                    }
                }
                tuples.push_back(tuple);
            } else {
                tuples.push_back({out.s.elem(tok)});
            }
        }
        if (declared >= 0) out.s.sig.add(rel, declared);
        if (tuples.empty() && declared < 0)
            throw input_error("structure file: empty relation " + rel + " needs NAME/arity form");
        for (const auto& t : tuples) out.s.add_tuple(rel, t);
    }
    if (!have_dom || out.s.dom.empty()) throw input_error("structure file: missing or empty dom");
    return out;
}

} // namespace

Structure Structure::parse(const std::string& text) { return parse_structure_text(text).s; }

std::string PointedStructure::to_text() const {
    std::string out = s.to_text();
    out += "point:";
    if (point.empty()) {
        out += "\n";
        return out;
    }
    for (size_t i = 0; i < point.size(); ++i) out += (i ? "," : " ") + s.dom[point[i]];
    out += "\n";
    return out;
}

PointedStructure PointedStructure::parse(const std::string& text) {
    ParsedStructure p = parse_structure_text(text);
    return {std::move(p.s), p.point.value_or(std::vector<int>{})};
}

uint64_t Structure::content_hash() const { return fnv1a(to_text()); }

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

bool eval_rec(const Structure& s, Assignment& v, const Formula& f) {
    switch (f->kind) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Atom: {
        std::vector<int> tuple;
        tuple.reserve(f->vars.size());
        for (const auto& x : f->vars) {
            auto it = v.find(x);
            if (it == v.end()) throw precondition_error("eval: unassigned variable " + x);
            tuple.push_back(it->second);
        }
        if (!s.sig.contains(f->rel)) return false;
        return s.holds(f->rel, tuple);
    }
    case Kind::Eq: {
        auto a = v.find(f->vars[0]);
        auto b = v.find(f->vars[1]);
        if (a == v.end() || b == v.end()) throw precondition_error("eval: unassigned variable");
        return a->second == b->second;
    }
    case Kind::Not: return !eval_rec(s, v, f->kids[0]);
    case Kind::And: return eval_rec(s, v, f->kids[0]) && eval_rec(s, v, f->kids[1]);
    case Kind::Or: return eval_rec(s, v, f->kids[0]) || eval_rec(s, v, f->kids[1]);
    case Kind::Implies: return !eval_rec(s, v, f->kids[0]) || eval_rec(s, v, f->kids[1]);
    case Kind::Iff: return eval_rec(s, v, f->kids[0]) == eval_rec(s, v, f->kids[1]);
    case Kind::Exists:
    case Kind::Forall: {
        bool exists = f->kind == Kind::Exists;
        std::vector<std::optional<int>> saved;
        saved.reserve(f->vars.size());
        for (const auto& x : f->vars) {
            auto it = v.find(x);
            saved.push_back(it == v.end() ? std::nullopt : std::optional<int>(it->second));
        }
        size_t nv = f->vars.size();
        std::vector<int> idx(nv, 0);
        bool result = !exists;
        int n = s.size();
        for (;;) {
            for (size_t i = 0; i < nv; ++i) v[f->vars[i]] = idx[i];
            bool b = eval_rec(s, v, f->kids[0]);
            if (exists && b) {
                result = true;
                break;
            }
            if (!exists && !b) {
                result = false;
                break;
            }
            size_t i = 0;
            while (i < nv && ++idx[i] == n) idx[i++] = 0;
            if (i == nv) break;
        }
        for (size_t i = 0; i < nv; ++i) {
            if (saved[i])
                v[f->vars[i]] = *saved[i];
            else
                v.erase(f->vars[i]);
        }
        return result;
    }
    }
    return false;
}

} // namespace

bool eval(const Structure& s, const Assignment& v, const Formula& f) {
    Assignment copy = v;
    return eval_rec(s, copy, f);
}

bool Evaluator::go(const Formula& f, Assignment& v) { return eval_rec(s_, v, f); }

bool Evaluator::eval(const Assignment& v, const Formula& f) {
    std::string key;
    std::set<Var> fv = free_vars(f);
    for (const auto& x : fv) {
        auto it = v.find(x);
        if (it == v.end()) throw precondition_error("eval: unassigned variable " + x);
        key += x + "=" + std::to_string(it->second) + ";";
    }
    auto memo_key = std::make_pair(f.get(), key);
    auto hit = memo_.find(memo_key);
    if (hit != memo_.end()) return hit->second;
    Assignment copy = v;
    bool r = go(f, copy);
    memo_[memo_key] = r;
    return r;
}

// ---------------------------------------------------------------------------
// Structure enumeration
// ---------------------------------------------------------------------------

StructureEnumerator::StructureEnumerator(Signature sig, int size, bool iso_prune)
    : sig_(std::move(sig)), size_(size), iso_prune_(iso_prune) {
    if (size < 1) throw precondition_error("enumeration needs size >= 1");
    for (const auto& [rel, k] : sig_.arity) {
        std::vector<std::vector<int>> tuples;
        std::vector<int> idx(k, 0);
        for (;;) {
            tuples.push_back(idx);
            int i = 0;
            while (i < k && ++idx[i] == size_) idx[i++] = 0;
            if (i == k) break;
        }
        slots_.emplace_back(rel, std::move(tuples));
    }
    size_t total = 0;
    for (const auto& [r, ts] : slots_) total += ts.size();
    bits_.assign(total, false);
}

long StructureEnumerator::count_all(const Signature& sig, int size) {
    long double total = 1;
    for (const auto& [rel, k] : sig.arity) {
        long double tuples = 1;
        for (int i = 0; i < k; ++i) tuples *= size;
        total *= std::pow(2.0L, tuples);
        if (total > 9e17L) return -1;
    }
    return static_cast<long>(total);
}

bool StructureEnumerator::advance() {
    for (size_t i = 0; i < bits_.size(); ++i) {
        if (!bits_[i]) {
            bits_[i] = true;
            return true;
        }
        bits_[i] = false;
    }
    return false;
}

Structure StructureEnumerator::materialize() const {
    Structure s;
    for (int i = 0; i < size_; ++i) s.dom.push_back("e" + std::to_string(i + 1));
    s.sig = sig_;
    size_t b = 0;
    for (const auto& [rel, tuples] : slots_) {
        for (const auto& t : tuples) {
            if (bits_[b]) s.rels[rel].insert(t);
            ++b;
        }
    }
    return s;
}

bool StructureEnumerator::canonical(const Structure& s) const {
    std::vector<int> perm(size_);
    for (int i = 0; i < size_; ++i) perm[i] = i;
    std::string mine = s.to_text();
    while (std::next_permutation(perm.begin(), perm.end())) {
        Structure t;
        t.dom = s.dom;
        t.sig = s.sig;
        for (const auto& [rel, tuples] : s.rels) {
            for (const auto& tuple : tuples) {
                std::vector<int> mapped;
                for (int e : tuple) mapped.push_back(perm[e]);
                t.rels[rel].insert(mapped);
            }
        }
        if (t.to_text() < mine) return false;
    }
    return true;
}

std::optional<Structure> StructureEnumerator::next() {
    if (done_) return std::nullopt;
    for (;;) {
        if (first_) {
            first_ = false;
        } else if (!advance()) {
            done_ = true;
            return std::nullopt;
        }
        Structure s = materialize();
        if (!iso_prune_ || canonical(s)) return s;
    }
}

// ---------------------------------------------------------------------------
// Grounding-based model search
// ---------------------------------------------------------------------------

namespace {

class Grounder {
public:
    Grounder(const Signature& sig, int k) : sig_(sig), k_(k) {
        // Relation-atom variables come first, in sorted (rel, tuple) order, so
        // the solver's fixed decision order yields lexicographically least
        // relation bitmaps.
        for (const auto& [rel, arity] : sig_.arity) {
            std::vector<int> idx(arity, 0);
            for (;;) {
                atom_vars_[{rel, idx}] = solver_.new_var();
                int i = 0;
                while (i < arity && ++idx[i] == k_) idx[i++] = 0;
                if (i == arity || arity == 0) break;
            }
        }
        true_var_ = solver_.new_var();
        solver_.add_clause({sat::pos(true_var_)});
    }

    sat::Solver& solver() { return solver_; }

    int atom_var(const std::string& rel, const std::vector<int>& tuple) const {
        auto it = atom_vars_.find({rel, tuple});
        if (it == atom_vars_.end()) throw precondition_error("grounder: unknown atom " + rel);
        return it->second;
    }

    sat::Lit lit_true() const { return sat::pos(true_var_); }
    sat::Lit lit_false() const { return sat::neg(true_var_); }

    sat::Lit ground(const Formula& f, Assignment& env) {
        switch (f->kind) {
        case Kind::True: return lit_true();
        case Kind::False: return lit_false();
        case Kind::Atom: {
            std::vector<int> tuple;
            for (const auto& x : f->vars) tuple.push_back(env.at(x));
            return sat::pos(atom_var(f->rel, tuple));
        }
        case Kind::Eq:
            return env.at(f->vars[0]) == env.at(f->vars[1]) ? lit_true() : lit_false();
        case Kind::Not:
            return sat::negate(ground(f->kids[0], env));
        case Kind::And:
        case Kind::Or: {
            sat::Lit a = ground(f->kids[0], env);
            sat::Lit b = ground(f->kids[1], env);
            return f->kind == Kind::And ? tseitin_and({a, b}) : tseitin_or({a, b});
        }
        case Kind::Implies: {
            sat::Lit a = ground(f->kids[0], env);
            sat::Lit b = ground(f->kids[1], env);
            return tseitin_or({sat::negate(a), b});
        }
        case Kind::Iff: {
            sat::Lit a = ground(f->kids[0], env);
            sat::Lit b = ground(f->kids[1], env);
            return tseitin_and({tseitin_or({sat::negate(a), b}), tseitin_or({sat::negate(b), a})});
        }
        case Kind::Exists:
        case Kind::Forall: {
            std::vector<sat::Lit> parts;
            std::vector<std::optional<int>> saved;
            for (const auto& x : f->vars) {
                auto it = env.find(x);
                saved.push_back(it == env.end() ? std::nullopt : std::optional<int>(it->second));
            }
            size_t nv = f->vars.size();
            std::vector<int> idx(nv, 0);
            for (;;) {
                for (size_t i = 0; i < nv; ++i) env[f->vars[i]] = idx[i];
                parts.push_back(ground(f->kids[0], env));
                size_t i = 0;
                while (i < nv && ++idx[i] == k_) idx[i++] = 0;
                if (i == nv) break;
            }
            for (size_t i = 0; i < nv; ++i) {
                if (saved[i])
                    env[f->vars[i]] = *saved[i];
                else
                    env.erase(f->vars[i]);
            }
            return f->kind == Kind::Exists ? tseitin_or(parts) : tseitin_and(parts);
        }
        }
        return lit_false();
    }

    Structure extract_model() const {
        Structure s;
        for (int i = 0; i < k_; ++i) s.dom.push_back("e" + std::to_string(i + 1));
        s.sig = sig_;
        for (const auto& [key, var] : atom_vars_) {
            if (solver_.model_value(var)) s.rels[key.first].insert(key.second);
            else s.rels[key.first]; // keep the relation present, possibly empty
        }
        return s;
    }

    sat::Lit tseitin_and(const std::vector<sat::Lit>& parts) {
        if (parts.empty()) return lit_true();
        if (parts.size() == 1) return parts[0];
        int v = solver_.new_var();
        std::vector<sat::Lit> big{sat::pos(v)};
        for (sat::Lit p : parts) {
            solver_.add_clause({sat::neg(v), p});
            big.push_back(sat::negate(p));
        }
        solver_.add_clause(big);
        return sat::pos(v);
    }

    sat::Lit tseitin_or(const std::vector<sat::Lit>& parts) {
        if (parts.empty()) return lit_false();
        if (parts.size() == 1) return parts[0];
        int v = solver_.new_var();
        std::vector<sat::Lit> big{sat::neg(v)};
        for (sat::Lit p : parts) {
            solver_.add_clause({sat::pos(v), sat::negate(p)});
            big.push_back(p);
        }
        solver_.add_clause(big);
        return sat::pos(v);
    }

private:
    Signature sig_;
    int k_;
    sat::Solver solver_;
    std::map<std::pair<std::string, std::vector<int>>, int> atom_vars_;
    int true_var_;
};

/// Restricted-growth strings: all ways to partition ordered vars into blocks.
std::vector<std::vector<int>> set_partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> rgs(n, 0);
    std::function<void(int, int)> go = [&](int i, int maxb) {
        if (i == n) {
            out.push_back(rgs);
            return;
        }
        for (int b = 0; b <= maxb; ++b) {
            rgs[i] = b;
            go(i + 1, std::max(maxb, b + 1));
        }
    };
    if (n == 0)
        out.push_back({});
    else
        go(0, 0);
    return out;
}

} // namespace

ModelSearchResult find_model(const Formula& f, const SearchBudget& budget, const Signature& extra) {
    Signature sig = Signature::united(signature_of(f), extra);
    std::vector<Var> fv(free_vars(f).begin(), free_vars(f).end());
    auto partitions = set_partitions(static_cast<int>(fv.size()));
    auto start = std::chrono::steady_clock::now();
    ModelSearchResult res{SearchStatus::Exhausted, std::nullopt, 0};
    for (int k = 1; k <= budget.max_size; ++k) {
        res.sizes_tried = k;
        for (const auto& pattern : partitions) {
            int blocks = pattern.empty() ? 0 : *std::max_element(pattern.begin(), pattern.end()) + 1;
            if (blocks > k) continue;
            if (budget.timeout_s > 0) {
                auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
                if (elapsed.count() > budget.timeout_s) {
                    res.status = SearchStatus::NoneWithinBudget;
                    return res;
                }
            }
            Grounder g(sig, k);
            Assignment env;
            for (size_t i = 0; i < fv.size(); ++i) env[fv[i]] = pattern[i];
            sat::Lit top = g.ground(f, env);
            g.solver().add_clause({top});
            sat::Result r = g.solver().solve(budget.max_candidates);
            if (r == sat::Result::Sat) {
                PointedStructure ps;
                ps.s = g.extract_model();
                for (size_t i = 0; i < fv.size(); ++i) ps.point.push_back(pattern[i]);
                res.status = SearchStatus::Found;
                res.model = std::move(ps);
                return res;
            }
            if (r == sat::Result::Limit) {
                res.status = SearchStatus::NoneWithinBudget;
                return res;
            }
        }
    }
    return res;
}

ModelSearchResult find_model(const Formula& f, const SearchBudget& budget) {
    return find_model(f, budget, Signature{});
}

EntailmentResult check_entailment_bounded(const Formula& f, const Formula& g,
                                          const SearchBudget& budget) {
    EntailmentResult out{EntailmentStatus::HoldsUpToBudget, std::nullopt, 0};
    ModelSearchResult r = find_model(f_and(f, f_not(g)), budget);
    out.checked_up_to = r.sizes_tried;
    if (r.status == SearchStatus::Found) {
        out.status = EntailmentStatus::Countermodel;
        out.countermodel = r.model;
    } else if (r.status == SearchStatus::NoneWithinBudget) {
        out.status = EntailmentStatus::Unknown;
    }
    return out;
}

} // namespace itp
