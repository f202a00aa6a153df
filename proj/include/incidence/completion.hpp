#pragma once

#include <incidence/closure.hpp>

#include <map>

namespace incidence {

constexpr std::size_t default_element_cap = 100000;

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The deficient set that created an element, and the stage it appeared in.
struct Provenance {
    int stage = 0;
    IdSet spawner;
};

// m-sets of points with at most n-2 common lines and n-sets of lines with at
// most m-2 common points, each list in colex order.
struct DeficientSets {
    std::vector<IdSet> point_sets;
    std::vector<IdSet> line_sets;

    bool empty() const { return point_sets.empty() && line_sets.empty(); }
};

DeficientSets deficient_sets(const Structure & s);

struct CompletionStage {
    Structure structure;
    int k = 0;
    std::map<Id, Provenance> provenance;  // every element not in the input
    bool fixpoint = false;                // the last step added nothing

    int stage_of(Id x) const;
};

CompletionStage initial_stage(Structure m);

// One fresh line per deficient point set and one fresh point per deficient
// line set, both computed against the incoming stage. Fresh elements are
// named "L<k>.<i>" and "P<k>.<i>" in creation order.
CompletionStage complete_step(const CompletionStage & stage);

CompletionStage free_completion(const Structure & m, int stages, std::size_t element_cap = default_element_cap);

// Y_0 = A and Y_{k+1} = Y_k plus the fresh elements of stage k+1 whose
// spawner lies in Y_k, tracked inside the stages X_k of F(B).
struct RelativeCompletion {
    CompletionStage ambient;      // X_budget
    std::vector<IdSet> y_stages;  // Y_0 .. Y_budget
    bool y_closed = true;         // Y_k is I-closed in X_k for every k
    int y_open_stage = -1;
    bool meets_base_in_a = true;  // C meets B exactly in A
    bool no_cross_incidence = true;
    bool matches_free = false;    // C is isomorphic over A to F_budget(A)
    BaseMap free_map;             // F_budget(A) -> C when matches_free

    const IdSet & c() const { return y_stages.back(); }
    bool ok() const { return y_closed && meets_base_in_a && no_cross_incidence && matches_free; }
};

RelativeCompletion relative_free_completion(
    const Structure & b, const IdSet & a, int stage_budget, std::size_t element_cap = default_element_cap);

// Maximal subsets with every line on at least three points and every point
// on at least three lines (parameters (2,2) only), one per connected piece
// of the pruned core.
std::vector<IdSet> confined_configurations(const Structure & s);

/**
 * The free completion of a base structure, materialised only where asked.
 * Every registered element is an element of F(base) and the registered part
 * is an induced substructure of it. A fresh element is identified by its
 * spawner, so repeated requests return the same id.
 */
class LazyCompletion {
public:
    explicit LazyCompletion(Structure base, std::size_t element_cap = default_element_cap);

    const Structure & structure() const { return _s; }
    Params params() const { return _s.params(); }
    int stage(Id x) const { return _stage.at(x); }
    const IdSet & spawner(Id x) const { return _spawner.at(x); }
    bool is_base(Id x) const { return _stage.at(x) == 0; }

    // Stage at which every member of sigma exists.
    int stage_of_set(const IdSet & sigma) const;

    // True iff sigma (m points or n lines) has too few common neighbours in
    // the stage where its last member appears.
    bool deficient(const IdSet & sigma) const;

    // The element spawned by sigma, registering it if needed; nothing if
    // sigma is not deficient. Throws BudgetExceeded past max_stage or the cap.
    std::optional<Id> fresh(const IdSet & sigma, int max_stage);

    // The I-closure of seed inside F(base). Not converged when it needs an
    // element beyond max_stage or beyond the element cap.
    ClosureResult closure(const IdSet & seed, int max_stage);

    // Whether a finite set of registered elements is I-closed in F(base).
    bool is_closed(const IdSet & a) const;

private:
    Structure _s;
    std::size_t _cap;
    std::vector<int> _stage;
    std::vector<IdSet> _spawner;
    std::map<IdSet, Id> _registry;
    std::vector<int> _counter;  // fresh elements created per stage
};

}
