#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "itp/syntax.hpp"

namespace itp {

/// Finite relational structure over named domain elements. Tuples are stored
/// as element indices into `dom`.
struct Structure {
    std::vector<std::string> dom;                          // element names
    std::map<std::string, std::set<std::vector<int>>> rels;
    Signature sig;                                         // arity per relation

    int size() const { return static_cast<int>(dom.size()); }
    int elem(const std::string& name) const; // throws input_error if absent
    bool holds(const std::string& rel, const std::vector<int>& tuple) const;
    void add_tuple(const std::string& rel, const std::vector<int>& tuple);

    /// Induced substructure on X (nonempty subset of element ids).
    Structure restrict_to(const std::vector<int>& X) const;

    std::string to_text() const;
    static Structure parse(const std::string& text); // also reads any `point:` line into nowhere
    uint64_t content_hash() const;
};

struct PointedStructure {
    Structure s;
    std::vector<int> point;

    std::string to_text() const;
    static PointedStructure parse(const std::string& text);
};

struct SearchBudget {
    int max_size = 4;              // domain size cap for model search
    long max_candidates = 200000;  // enumeration cap (structures / candidates)
    double timeout_s = 0.0;        // 0 = no wall-clock limit
};

using Assignment = std::map<Var, int>;

/// Tarskian satisfaction. `v` must cover the free variables of f.
bool eval(const Structure& s, const Assignment& v, const Formula& f);

/// Memoizing evaluator for repeated queries against one structure.
class Evaluator {
public:
    explicit Evaluator(const Structure& s) : s_(s) {}
    bool eval(const Assignment& v, const Formula& f);

private:
    const Structure& s_;
    std::map<std::pair<const FormulaNode*, std::string>, bool> memo_;
    bool go(const Formula& f, Assignment& v);
};

/// Streams all structures over `sig` with domain {e1..esize}. With
/// `iso_prune`, only lexicographically-canonical representatives are emitted.
class StructureEnumerator {
public:
    StructureEnumerator(Signature sig, int size, bool iso_prune = false);
    std::optional<Structure> next();
    static long count_all(const Signature& sig, int size); // -1 on overflow

private:
    Signature sig_;
    int size_;
    bool iso_prune_;
    std::vector<std::pair<std::string, std::vector<std::vector<int>>>> slots_; // rel -> tuple list
    std::vector<bool> bits_;
    bool done_ = false;
    bool first_ = true;
    bool advance();
    Structure materialize() const;
    bool canonical(const Structure& s) const;
};

enum class SearchStatus { Found, NoneWithinBudget, Exhausted };

struct ModelSearchResult {
    SearchStatus status;
    std::optional<PointedStructure> model; // set when status == Found
    int sizes_tried = 0;
};

/// Finds a model of f (with a point for its free variables) of size at most
/// budget.max_size, by grounding to CNF per size and solving. Exhausted means
/// no model up to the cap exists; NoneWithinBudget means the search hit a
/// conflict or time limit first.
ModelSearchResult find_model(const Formula& f, const SearchBudget& budget);

/// Like find_model but over a signature extended with `extra` (relations the
/// formula does not mention but the caller needs interpreted).
ModelSearchResult find_model(const Formula& f, const SearchBudget& budget, const Signature& extra);

enum class EntailmentStatus { HoldsUpToBudget, Countermodel, Unknown };

struct EntailmentResult {
    EntailmentStatus status;
    std::optional<PointedStructure> countermodel;
    int checked_up_to = 0;
};

/// Bounded check of f |= g: searches for a model of f & ~g. A countermodel is
/// exact; HoldsUpToBudget is qualified by budget.max_size.
EntailmentResult check_entailment_bounded(const Formula& f, const Formula& g,
                                          const SearchBudget& budget);

} // namespace itp
