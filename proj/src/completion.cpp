#include <incidence/completion.hpp>

#include <set>

namespace incidence {

namespace {
    std::string fresh_name(Sort sort, int stage, int index)
    {
        return (sort == Sort::line ? "L" : "P") + std::to_string(stage) + "." + std::to_string(index);
    }

    template <typename Deficient>
    void scan_deficient(const IdSet & pool, int k, Deficient && is_deficient, std::vector<IdSet> & out)
    {
        for_each_subset_colex(pool, static_cast<std::size_t>(k), [&](const std::vector<Id> & sigma) {
            if (is_deficient(sigma))
                out.push_back(sigma);
            return true;
        });
    }
}

DeficientSets deficient_sets(const Structure & s)
{
    if (auto w = find_biclique(s))
        throw std::invalid_argument("structure is not K_{m,n}-free; witness points " +
            std::to_string(w->points.size()) + ", lines " + std::to_string(w->lines.size()));
    const auto [m, n] = s.params();
    DeficientSets d;
    scan_deficient(
        s.points(), m,
        [&](const IdSet & sigma) { return static_cast<int>(common_neighbors(s, sigma).size()) <= n - 2; },
        d.point_sets);
    scan_deficient(
        s.lines(), n,
        [&](const IdSet & sigma) { return static_cast<int>(common_neighbors(s, sigma).size()) <= m - 2; },
        d.line_sets);
    return d;
}

int CompletionStage::stage_of(Id x) const
{
    auto it = provenance.find(x);
    return it == provenance.end() ? 0 : it->second.stage;
}

CompletionStage initial_stage(Structure m) { return CompletionStage{std::move(m), 0, {}, false}; }

CompletionStage complete_step(const CompletionStage & stage)
{
    DeficientSets d = deficient_sets(stage.structure);
    CompletionStage next = stage;
    next.k = stage.k + 1;
    next.fixpoint = d.empty();
    int index = 0;
    for (const IdSet & sigma : d.point_sets) {
        Id l = next.structure.add_line(fresh_name(Sort::line, next.k, index++));
        for (Id p : sigma)
            next.structure.add_incidence(p, l, true);
        next.provenance[l] = {next.k, sigma};
    }
    index = 0;
    for (const IdSet & sigma : d.line_sets) {
        Id p = next.structure.add_point(fresh_name(Sort::point, next.k, index++));
        for (Id l : sigma)
            next.structure.add_incidence(p, l, true);
        next.provenance[p] = {next.k, sigma};
    }
    return next;
}

CompletionStage free_completion(const Structure & m, int stages, std::size_t element_cap)
{
    CompletionStage st = initial_stage(m);
    for (int k = 0; k < stages; ++k) {
        if (st.fixpoint) {
            ++st.k;
            continue;
        }
        st = complete_step(st);
        if (st.structure.size() > element_cap)
            throw BudgetExceeded("free completion exceeded the element cap of " + std::to_string(element_cap) +
                " at stage " + std::to_string(st.k));
    }
    return st;
}

RelativeCompletion relative_free_completion(
    const Structure & b, const IdSet & a_in, int stage_budget, std::size_t element_cap)
{
    IdSet a = make_set(a_in);
    for (Id x : a)
        if (! b.contains(x))
            throw std::invalid_argument("A is not a subset of B");
    auto closed = is_i_closed(b, a);
    if (! closed.closed)
        throw std::invalid_argument("A is not I-closed in B; " + b.name(*closed.violator) + " is forced");

    RelativeCompletion r{initial_stage(b), {a}, true, -1, true, true, false, {}};
    for (int k = 0; k < stage_budget; ++k) {
        CompletionStage next = complete_step(r.ambient);
        if (next.structure.size() > element_cap)
            throw BudgetExceeded("relative completion exceeded the element cap of " + std::to_string(element_cap));
        IdSet y = r.y_stages.back();
        for (auto & [x, prov] : next.provenance)
            if (prov.stage == next.k && set_includes(r.y_stages.back(), prov.spawner))
                y.push_back(x);
        y = make_set(std::move(y));
        r.ambient = std::move(next);
        r.y_stages.push_back(y);
        if (r.y_closed && ! is_i_closed(r.ambient.structure, y).closed) {
            r.y_closed = false;
            r.y_open_stage = r.ambient.k;
        }
    }

    const Structure & x = r.ambient.structure;
    const IdSet & c = r.c();
    r.meets_base_in_a = set_intersection(c, b.elements()) == a;
    IdSet c_out = set_difference(c, a), b_out = set_difference(b.elements(), a);
    for (Id u : c_out)
        if (intersection_size(x.neighbors(u), b_out) != 0)
            r.no_cross_incidence = false;

    // Match F_budget(A) to C by following spawners.
    CompletionStage fa = free_completion(b.induced(a), stage_budget, element_cap);
    std::map<IdSet, Id> by_spawner;
    for (auto & [e, prov] : r.ambient.provenance)
        if (set_contains(c, e))
            by_spawner.emplace(prov.spawner, e);
    std::map<Id, Id> img;
    for (Id e : a)
        img[e] = e;
    bool mapped = true;
    for (auto & [e, prov] : fa.provenance) {
        std::vector<Id> sigma;
        for (Id s : prov.spawner)
            sigma.push_back(img.at(s));
        auto it = by_spawner.find(make_set(sigma));
        if (it == by_spawner.end()) {
            mapped = false;
            break;
        }
        img[e] = it->second;
    }
    if (mapped) {
        BaseMap base(img.begin(), img.end());
        auto iso = isomorphic_over(fa.structure, x.induced(c), base);
        if (iso.map) {
            r.matches_free = true;
            r.free_map = *iso.map;
        }
    }
    return r;
}

std::vector<IdSet> confined_configurations(const Structure & s)
{
    if (s.params() != Params{2, 2})
        throw std::invalid_argument("confined configurations are defined for parameters (2,2)");
    IdSet core = s.elements();
    while (true) {
        IdSet keep;
        for (Id x : core)
            if (intersection_size(s.neighbors(x), core) >= 3)
                keep.push_back(x);
        if (keep.size() == core.size())
            break;
        core = std::move(keep);
    }
    std::vector<IdSet> pieces;
    std::set<Id> seen;
    for (Id root : core) {
        if (seen.contains(root))
            continue;
        IdSet piece;
        std::vector<Id> todo{root};
        seen.insert(root);
        while (! todo.empty()) {
            Id x = todo.back();
            todo.pop_back();
            piece.push_back(x);
            for (Id y : s.neighbors(x))
                if (set_contains(core, y) && seen.insert(y).second)
                    todo.push_back(y);
        }
        pieces.push_back(make_set(std::move(piece)));
    }
    return pieces;
}

LazyCompletion::LazyCompletion(Structure base, std::size_t element_cap) :
    _s(std::move(base)), _cap(element_cap), _stage(_s.id_bound(), 0), _spawner(_s.id_bound())
{
    if (auto w = find_biclique(_s))
        throw std::invalid_argument("base structure is not K_{m,n}-free");
}

int LazyCompletion::stage_of_set(const IdSet & sigma) const
{
    int k = 0;
    for (Id x : sigma)
        k = std::max(k, stage(x));
    return k;
}

bool LazyCompletion::deficient(const IdSet & sigma) const
{
    if (sigma.empty())
        return false;
    const auto [m, n] = _s.params();
    Sort sort = _s.sort(sigma.front());
    if (sigma.size() != static_cast<std::size_t>(sort == Sort::point ? m : n))
        return false;
    int k = stage_of_set(sigma);
    std::size_t count = 0;
    for (Id y : common_neighbors(_s, sigma))
        if (_stage[y] <= k)
            ++count;
    return static_cast<int>(count) <= (sort == Sort::point ? n : m) - 2;
}

std::optional<Id> LazyCompletion::fresh(const IdSet & sigma, int max_stage)
{
    if (auto it = _registry.find(sigma); it != _registry.end()) {
        if (_stage[it->second] > max_stage)
            throw BudgetExceeded("needs completion stage " + std::to_string(_stage[it->second]) +
                " beyond budget " + std::to_string(max_stage));
        return it->second;
    }
    if (! deficient(sigma))
        return std::nullopt;
    int k = stage_of_set(sigma) + 1;
    if (k > max_stage)
        throw BudgetExceeded("needs completion stage " + std::to_string(k) + " beyond budget " +
            std::to_string(max_stage));
    if (_s.size() >= _cap)
        throw BudgetExceeded("lazy completion reached the element cap of " + std::to_string(_cap));
    Sort sort = opposite(_s.sort(sigma.front()));
    if (_counter.size() <= static_cast<std::size_t>(k))
        _counter.resize(k + 1, 0);
    Id x = _s.add(sort, fresh_name(sort, k, _counter[k]++));
    for (Id y : sigma)
        _s.add_incidence(x, y, false);
    _stage.push_back(k);
    _spawner.push_back(sigma);
    _registry.emplace(sigma, x);
    return x;
}

ClosureResult LazyCompletion::closure(const IdSet & seed, int max_stage)
{
    for (Id x : seed)
        if (! _s.contains(x))
            throw std::invalid_argument("closure seed element " + std::to_string(x) + " is not registered");
    const auto [m, n] = _s.params();
    IdSet w = make_set(seed);
    std::set<IdSet> checked;
    bool converged = true;
    while (converged) {
        bool grew = false;
        for (IdSet more = forced_by(_s, w); ! more.empty(); more = forced_by(_s, w)) {
            w = set_union(w, more);
            grew = true;
        }
        IdSet pts, lns;
        for (Id x : w)
            (_s.is_point(x) ? pts : lns).push_back(x);
        std::vector<Id> added;
        auto visit = [&](const std::vector<Id> & sigma) {
            if (! checked.insert(sigma).second)
                return true;
            try {
                if (auto f = fresh(sigma, max_stage); f && ! set_contains(w, *f))
                    added.push_back(*f);
            }
            catch (const BudgetExceeded &) {
                converged = false;
            }
            return converged;
        };
        for_each_subset_colex(pts, static_cast<std::size_t>(m), visit);
        for_each_subset_colex(lns, static_cast<std::size_t>(n), visit);
        if (! added.empty()) {
            w = set_union(w, make_set(std::move(added)));
            grew = true;
        }
        if (! grew)
            break;
    }
    return {w, converged};
}

bool LazyCompletion::is_closed(const IdSet & a_in) const
{
    IdSet a = make_set(a_in);
    if (! forced_by(_s, a).empty())
        return false;
    const auto [m, n] = _s.params();
    IdSet pts, lns;
    for (Id x : a)
        (_s.is_point(x) ? pts : lns).push_back(x);
    // A deficient set is harmless only if its fresh element is already in a.
    auto spawn_inside = [&](const std::vector<Id> & sigma) {
        if (! deficient(sigma))
            return true;
        auto it = _registry.find(sigma);
        return it != _registry.end() && set_contains(a, it->second);
    };
    return for_each_subset_colex(pts, static_cast<std::size_t>(m), spawn_inside) &&
        for_each_subset_colex(lns, static_cast<std::size_t>(n), spawn_inside);
}

}
