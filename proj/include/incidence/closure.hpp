#pragma once

#include <incidence/core.hpp>

namespace incidence {

constexpr int default_stage_budget = 8;

// Successive stages A_0 = seed, A_{t+1} = A_t plus every element incident to
// m distinct points (a line) or n distinct lines (a point) of A_t. Repeated
// final stages are not stored; converged means the last stored stage was
// seen to be a fixpoint within the budget.
struct ClosureStages {
    std::vector<IdSet> stages;
    bool converged = false;

    const IdSet & last() const { return stages.back(); }
};

ClosureStages closure_stages(const Structure & s, const IdSet & seed, int stage_budget = default_stage_budget);

struct ClosureResult {
    IdSet set;
    bool converged = false;
};

ClosureResult i_closure(const Structure & s, const IdSet & seed, int stage_budget = default_stage_budget);

// Elements of s outside a that a forces in one step, in id order.
IdSet forced_by(const Structure & s, const IdSet & a);

struct ClosedReport {
    bool closed = true;
    std::optional<Id> violator;
};

ClosedReport is_i_closed(const Structure & s, const IdSet & a);

enum class Tri { yes, no, unknown };

const char * tri_name(Tri t);

struct GenerationReport {
    Tri verdict = Tri::unknown;
    IdSet closure;
};

GenerationReport generates(const Structure & s, const IdSet & a, int stage_budget = default_stage_budget);

}
