#pragma once

#include <incidence/sets.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace incidence {

enum class Sort : std::uint8_t { point, line };

inline Sort opposite(Sort s) { return s == Sort::point ? Sort::line : Sort::point; }

const char * sort_name(Sort s);

struct Params {
    int m = 2;
    int n = 2;

    friend bool operator==(const Params &, const Params &) = default;
};

void validate(const Params & p);

// m points and n lines with every point incident to every line.
struct Biclique {
    IdSet points;
    IdSet lines;
};

// Thrown by a guarded add_incidence that would complete a biclique; the
// structure is left unchanged.
class FreenessViolation : public std::runtime_error {
public:
    FreenessViolation(const std::string & what, Biclique witness) :
        std::runtime_error(what), witness(std::move(witness))
    {
    }

    Biclique witness;
};

/**
 * A finite two-sorted incidence structure. Element ids are assigned in
 * creation order and never reused; an induced substructure keeps the ids of
 * its parent, so ids may be sparse. Names are unique display strings.
 */
class Structure {
public:
    explicit Structure(Params params);

    Params params() const { return _params; }
    Structure with_params(Params params) const;

    Id add(Sort sort, std::string name = {});
    Id add_point(std::string name = {}) { return add(Sort::point, std::move(name)); }
    Id add_line(std::string name = {}) { return add(Sort::line, std::move(name)); }

    // Either argument order is accepted. With guard set, an incidence that
    // would complete a K_{m,n} throws FreenessViolation.
    void add_incidence(Id a, Id b, bool guard = true);
    bool remove_incidence(Id a, Id b);

    bool contains(Id x) const { return x < _present.size() && _present[x]; }
    Sort sort(Id x) const;
    bool is_point(Id x) const { return sort(x) == Sort::point; }
    bool is_line(Id x) const { return sort(x) == Sort::line; }
    const std::string & name(Id x) const;
    std::optional<Id> find(std::string_view name) const;
    Id at(std::string_view name) const;
    IdSet ids(std::initializer_list<std::string_view> names) const;

    bool incident(Id a, Id b) const;
    const IdSet & neighbors(Id x) const;

    const IdSet & points() const { return _points; }
    const IdSet & lines() const { return _lines; }
    IdSet elements() const { return set_union(_points, _lines); }
    std::size_t size() const { return _points.size() + _lines.size(); }
    std::size_t incidence_count() const { return _incidences; }
    // (point, line) pairs ordered by point id, then line id.
    std::vector<std::pair<Id, Id>> incidences() const;

    // One past the largest id ever allocated; suitable for id-indexed tables.
    Id id_bound() const { return static_cast<Id>(_present.size()); }

    // Keeps exactly the listed elements (ids preserved) and the incidences
    // among them.
    Structure induced(const IdSet & keep) const;

private:
    void check(Id x) const;

    Params _params;
    std::vector<bool> _present;
    std::vector<Sort> _sort;
    std::vector<std::string> _name;
    std::vector<IdSet> _nbr;
    IdSet _points, _lines;
    std::size_t _incidences = 0;
    std::unordered_map<std::string, Id> _by_name;
};

Structure new_structure(Params params);

// Some K_{m,n} inside s, or nothing if s is K_{m,n}-free.
std::optional<Biclique> find_biclique(const Structure & s);

// Some K_{m,n} that contains the incidence (p, l), or nothing.
std::optional<Biclique> find_biclique_through(const Structure & s, Id p, Id l);

inline bool is_kmn_free(const Structure & s) { return ! find_biclique(s); }

// Elements of the other sort incident to every member of ys.
IdSet common_neighbors(const Structure & s, const IdSet & ys);

struct CompletenessReport {
    bool pass = true;
    IdSet failing;          // first m-set of points or n-set of lines off target
    std::size_t count = 0;  // its number of common neighbours
};

CompletenessReport satisfies_complete(const Structure & s);

// Partial map from elements of one structure to another.
using BaseMap = std::vector<std::pair<Id, Id>>;

struct IsoResult {
    std::optional<BaseMap> map;  // total isomorphism sorted by source id
    bool base_invalid = false;
    std::string diagnostic;
};

// Isomorphism s1 -> s2 extending base. Among all such isomorphisms the one
// whose images, listed by increasing source id, are lexicographically least.
IsoResult isomorphic_over(const Structure & s1, const Structure & s2, const BaseMap & base);

// Points outside cs on every line of ds, lines outside ds through every
// point of cs, with the induced incidences, under parameters (m0, n0).
Structure interpret_reduct(const Structure & s, const IdSet & cs, const IdSet & ds, int m0, int n0);

// Names of the listed ids, in order.
std::vector<std::string> names_of(const Structure & s, const IdSet & xs);

}
