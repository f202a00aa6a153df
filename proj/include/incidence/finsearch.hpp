#pragma once

#include <incidence/amalgam.hpp>
#include <incidence/completion.hpp>

namespace incidence {

// NONE is a bounded-search fact: the search space was exhausted.
enum class SearchStatus { found, none, unknown };

const char * search_status_name(SearchStatus s);

struct PlaneResult {
    SearchStatus status = SearchStatus::unknown;
    std::optional<Structure> plane;
    std::size_t nodes = 0;
};

/**
 * Backtracking over lines as (q+1)-subsets of q²+q+1 points. The first line
 * is {0..q}; each further line contains the least point with an uncovered
 * pair and the least partner of that pair. Points are named p0.., lines l0..
 * in the order found. Orders 1 to 3 are cached once found.
 */
PlaneResult find_projective_plane(int order, std::size_t node_budget = default_node_budget);

struct PlaneEnumeration {
    std::vector<Structure> planes;
    bool complete = false;  // the whole search space was visited
    std::size_t nodes = 0;
};

// Every plane the search above can reach, in discovery order.
PlaneEnumeration enumerate_projective_planes(int order, std::size_t node_budget = default_node_budget);

struct EmbedResult {
    SearchStatus status = SearchStatus::unknown;
    std::optional<Structure> target;
    BaseMap map;  // source id -> target id, sorted by source
    std::size_t nodes = 0;
    std::string route;
};

// Induced sort-preserving injection of a into a plane of the given order.
EmbedResult embed_in_finite_plane(const Structure & a, int order, std::size_t node_budget = default_node_budget);

// Induced injection of a into target, candidates tried in increasing id.
EmbedResult embed_into(const Structure & a, const Structure & target, std::size_t node_budget = default_node_budget);

/**
 * A finite structure passing satisfies_complete that contains a as an
 * induced substructure, of at most max_elements elements. Tries the free
 * completion first and, for (2,2), planes of each order that fits.
 */
EmbedResult embed_search_general(
    const Structure & a, std::size_t max_elements, std::size_t node_budget = default_node_budget);

}
