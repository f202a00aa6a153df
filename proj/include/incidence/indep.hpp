#pragma once

#include <incidence/completion.hpp>

namespace incidence {

enum class Relation { alg, i, div, otimes };

const char * relation_name(Relation r);

struct IndepQuery {
    Structure ambient{Params{}};
    IdSet a, b, c;
    Relation relation = Relation::i;
    int stage_budget = default_stage_budget;  // completion stages available to closures
    int otimes_stages = 3;                    // stages compared by otimes_check
    std::size_t d_bound = 16;                 // largest |acl(BC) \ acl(C)| enumerated by d_indep
    std::size_t element_cap = default_element_cap;
};

enum class IndepStatus { independent, dependent, unknown };

const char * indep_status_name(IndepStatus s);

/**
 * DEPENDENT always carries a witness: an element of the overlap, an incidence
 * (point, line), or for d_indep the failing D together with its witness.
 * Ids refer to completion, which holds the ambient plus every element of
 * F(ambient) the check registered.
 */
struct Verdict {
    IndepStatus status = IndepStatus::unknown;
    std::optional<Id> element;
    std::optional<std::pair<Id, Id>> incidence;
    std::optional<IdSet> failing_d;
    int verified_stage = -1;  // otimes_check: last stage matched
    std::string detail;
    Structure completion{Params{}};

    std::vector<std::string> witness_names() const;
};

Verdict a_indep(const IndepQuery & q);
Verdict i_indep(const IndepQuery & q);
Verdict d_indep(const IndepQuery & q);
Verdict otimes_check(const IndepQuery & q);

// Dispatches on q.relation.
Verdict check_independence(const IndepQuery & q);

struct IndepSequence {
    Structure ambient{Params{}};
    std::vector<std::vector<Id>> tuples;  // b_0 = b, b_1, ...
    bool verified = false;                // each b_i independent from b_{<i} over C
};

/**
 * Copies of acl(bC) glued freely over acl(C), each a fresh realisation of
 * the type of b over C. Throws BudgetExceeded if either closure does not
 * converge within stage_budget.
 */
IndepSequence indep_sequence(const Structure & ambient, const std::vector<Id> & b, const IdSet & c, int length,
    Relation relation, int stage_budget = default_stage_budget);

}
