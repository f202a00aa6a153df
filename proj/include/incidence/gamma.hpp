#pragma once

#include <incidence/amalgam.hpp>
#include <incidence/completion.hpp>

#include <memory>

namespace incidence {

struct HTerm;
using HTermPtr = std::shared_ptr<const HTerm>;

// Binary term over variables x1.. built from the operation H.
struct HTerm {
    int var = -1;  // leaf when >= 0 (0-based)
    HTermPtr left, right;

    static HTermPtr leaf(int var);
    static HTermPtr join(HTermPtr left, HTermPtr right);
    std::string str() const;
};

// For distinct points the connecting line, for distinct lines the common
// point, otherwise x. Registers the needed element in the lazy completion;
// throws BudgetExceeded past max_stage. Parameters must be (2,2).
Id h_eval(LazyCompletion & ambient, Id x, Id y, int max_stage = default_stage_budget);

Id h_term_eval(LazyCompletion & ambient, const HTermPtr & term, const std::vector<Id> & assignment,
    int max_stage = default_stage_budget);

using Bits = std::vector<int>;

Bits parse_bits(std::string_view text);
std::string bits_str(const Bits & eta);

struct GammaStructure {
    Bits eta;
    Structure structure;
    std::map<Id, HTermPtr> terms;  // every element other than a1..a4

    IdSet generators() const;
};

// Element names: a1..a4, r1..r6, b^k_i, s^k_i, c^k_i, and t^k or t^k_1, t^k_2.
GammaStructure gamma(const Bits & eta);

struct GammaReport {
    bool prefixes_induced = true;
    bool generated = true;
    bool pairs_open = true;
    bool kmn_free = true;
    std::string detail;

    bool ok() const { return prefixes_induced && generated && pairs_open && kmn_free; }
};

GammaReport gamma_invariants(const GammaStructure & g);

// The six line pairs that must stay open after |eta| steps, as names.
std::vector<std::pair<std::string, std::string>> gamma_open_pairs(int k);

struct SeparationReport {
    bool separated = false;
    std::string detail;
};

SeparationReport separating_check(const Bits & eta);

// Points a1, b, w1..w_{m-1}; lines a2, c1..c_{n-1}, z.
Structure bm_witness(int m, int n);

// "The structure on x1 x2 b c1.. w1.. z is exactly bm_witness(m,n)", with
// x1 = a1 and x2 = a2 shared, parameters (b, c1..c_{n-1}) and witnesses
// (w1..w_{m-1}, z).
Pattern bm_pattern(Params params);

// Base, parameter tuples and pattern for the tree-property experiment: a
// fresh point b over lines c1..c_{n-1}, an I-independent sequence of
// `instances` copies of b, and the free completion of that ambient truncated
// at `truncation` stages as the base. Instance i binds (b_i, c1..c_{n-1}).
struct PatternExperiment {
    Structure base;
    std::vector<std::vector<Id>> instances;
    Pattern pattern;
    bool sequence_verified = false;
};

PatternExperiment tp2_experiment(Params params, int instances, int truncation = 1);

struct ProbeResult {
    bool ok = false;
    std::string failure;
    Structure b0{Params{2, 2}};
    IdSet fano;                 // the fourteen elements, ids of b0
    std::vector<Id> r_lines;    // r1..r7
    std::vector<int> r_stages;  // k1..k7
    int k = 0;
    // Registered parts of F(A) and of F(B0) obtained by joining c1, c2, c3
    // pairwise, each as an induced substructure.
    std::optional<Structure> free_side, b0_side;
};

ProbeResult nonfree_completion_probe(const Structure & a, int max_stage = 40, std::size_t element_cap = 20000);

}
