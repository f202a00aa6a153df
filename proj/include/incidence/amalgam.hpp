#pragma once

#include <incidence/core.hpp>

namespace incidence {

struct SafeDiagram {
    Structure structure;
    IdSet base_vars;
    IdSet ext_vars;
};

struct SafetyReport {
    bool safe = true;
    int violated = 0;  // 1: not K_{m,n}-free, 2: point on n base lines, 3: line on m base points
    std::optional<Id> offender;
    std::optional<Biclique> witness;
};

SafetyReport validate_safe_diagram(const SafeDiagram & d);

struct AmalgamResult {
    Structure structure;  // ids of B are kept
    BaseMap from_c;       // C id -> result id
};

// Disjoint union of b and c over a shared a, embedded by a_to_b and a_to_c,
// with no new incidences. Throws FreenessViolation if the union is not
// K_{m,n}-free and std::invalid_argument if an embedding is not induced.
AmalgamResult free_amalgam(
    const Structure & b, const Structure & c, const Structure & a, const BaseMap & a_to_b, const BaseMap & a_to_c);

struct ExtensionResult {
    Structure structure;
    BaseMap ext_map;  // diagram extension variable -> new element
};

// Realises the extension variables of d over the tuple abar (aligned with
// d.base_vars in increasing id order), adding only the diagram's incidences.
ExtensionResult extension_witness(const Structure & s, const std::vector<Id> & abar, const SafeDiagram & d);

/**
 * Three pairwise joins of closed parts. Parts are given by element names;
 * equal names across joins denote the copies that get identified. Each part
 * lists its whole closed set, D included.
 */
struct GlueProblem {
    Structure x_ab, x_ac, x_bc;
    std::vector<std::string> d, a, b, c;
};

class GlueError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct GlueResult {
    Structure structure;
    IdSet part_a, part_b, part_c, part_d;
};

// Identifies the copies of X_a, X_b, X_c across the joins. Hypothesis
// failures throw GlueError naming the hypothesis; a biclique in the result
// throws FreenessViolation.
GlueResult independence_glue(const GlueProblem & g);

struct PatternSlot {
    enum Kind : std::uint8_t { parameter, shared, witness } kind;
    int index;
};

/**
 * An existential pattern: parameters are bound per instance to base
 * elements, shared variables are common to all instances and witnesses are
 * existentially quantified per instance. An instance holds when the
 * incidence structure on its elements is exactly the pattern.
 */
struct Pattern {
    std::vector<Sort> parameters, shared, witnesses;
    std::vector<std::string> parameter_names, shared_names, witness_names;
    std::vector<std::pair<PatternSlot, PatternSlot>> incidences;
};

enum class Consistency { consistent, inconsistent, unknown };

const char * consistency_name(Consistency c);

struct PatternVerdict {
    Consistency status = Consistency::unknown;
    std::optional<Structure> witness;
    // Variables (shared first, then each instance's witnesses) to elements of
    // witness; ids below the base bound are base elements.
    std::vector<Id> assignment;
    int merges = 0;
    std::size_t nodes = 0;
};

constexpr std::size_t default_node_budget = 10'000'000;

// Searches identifications of the variables with each other and with base
// elements of the same sort, fewest identifications first.
PatternVerdict pattern_consistent(const Structure & base, const Pattern & p,
    const std::vector<std::vector<Id>> & instances, std::size_t node_budget = default_node_budget);

}
