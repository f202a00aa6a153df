#pragma once

// Independent reference computations used to check the library. None of
// these call the library's algorithms; they only read and build Structures.

#include <incidence/core.hpp>

#include <random>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using incidence::Id;
using incidence::IdSet;
using incidence::Params;
using incidence::Structure;

// Scans every m-set of points against every n-set of lines.
bool brute_kmn_free(const Structure & s);

// Smallest superset of seed containing every line on m of its points and
// every point on n of its lines, inside s.
IdSet brute_closure(const Structure & s, const IdSet & seed);

struct NaiveCompletion {
    Structure structure{Params{}};
    std::vector<std::size_t> sizes;  // element count after each stage, stage 0 first
    std::vector<std::pair<Id, IdSet>> fresh;  // every fresh element with its spawner
    std::vector<std::pair<Id, Id>> from_input;  // input id -> id in structure
};

// Free completion computed from scratch with adjacency sets: at each stage
// every m-set of points with fewer than n-1 common lines gets a new line and
// every n-set of lines with fewer than m-1 common points gets a new point.
NaiveCompletion naive_completion(const Structure & s, int stages);

// The partial plane on four points, six lines and three diagonal points,
// typed in by hand.
struct NamedTable {
    std::vector<std::string> points, lines;
    std::vector<std::pair<std::string, std::string>> incidences;
};

NamedTable gamma_empty_table();

Structure from_table(const NamedTable & t, Params p = {2, 2});

Structure quadrangle();  // points a1..a4, no lines
Structure triangle();    // three points, three lines, each line on two points
Structure fano();        // the seven-point plane, hand typed
Structure k22();         // two points, two lines, all four incidences

// Random structure with the given parameters and at most max_elements
// elements; incidences that would complete a biclique are skipped.
Structure random_free(std::mt19937 & rng, Params p, int max_elements, double density = 0.4);

// Incidence among the images equals incidence in a, and the map is
// injective and sort preserving.
bool is_induced_embedding(const Structure & a, const Structure & target,
    const std::vector<std::pair<Id, Id>> & map);

}
