#include <incidence/core.hpp>

#include <map>

namespace incidence {

const char * sort_name(Sort s) { return s == Sort::point ? "point" : "line"; }

void validate(const Params & p)
{
    if (p.m < 1 || p.n < 1)
        throw std::invalid_argument("parameters must satisfy m >= 1 and n >= 1, got (" + std::to_string(p.m) + "," +
            std::to_string(p.n) + ")");
}

Structure::Structure(Params params) : _params(params) { validate(params); }

Structure new_structure(Params params) { return Structure(params); }

Structure Structure::with_params(Params params) const
{
    validate(params);
    Structure r = *this;
    r._params = params;
    return r;
}

void Structure::check(Id x) const
{
    if (! contains(x))
        throw std::invalid_argument("element " + std::to_string(x) + " is not in the structure");
}

Id Structure::add(Sort sort, std::string name)
{
    Id id = id_bound();
    if (name.empty())
        name = (sort == Sort::point ? "p" : "l") + std::to_string(id);
    while (_by_name.contains(name))
        name += "'";
    _present.push_back(true);
    _sort.push_back(sort);
    _name.push_back(name);
    _nbr.emplace_back();
    (sort == Sort::point ? _points : _lines).push_back(id);
    _by_name.emplace(std::move(name), id);
    return id;
}

Sort Structure::sort(Id x) const
{
    check(x);
    return _sort[x];
}

const std::string & Structure::name(Id x) const
{
    check(x);
    return _name[x];
}

std::optional<Id> Structure::find(std::string_view name) const
{
    auto it = _by_name.find(std::string(name));
    if (it == _by_name.end())
        return std::nullopt;
    return it->second;
}

Id Structure::at(std::string_view name) const
{
    auto x = find(name);
    if (! x)
        throw std::invalid_argument("unknown element " + std::string(name));
    return *x;
}

IdSet Structure::ids(std::initializer_list<std::string_view> names) const
{
    std::vector<Id> r;
    for (auto n : names)
        r.push_back(at(n));
    return make_set(std::move(r));
}

bool Structure::incident(Id a, Id b) const
{
    if (! contains(a) || ! contains(b))
        return false;
    return set_contains(_nbr[a], b);
}

const IdSet & Structure::neighbors(Id x) const
{
    check(x);
    return _nbr[x];
}

void Structure::add_incidence(Id a, Id b, bool guard)
{
    check(a);
    check(b);
    if (_sort[a] == _sort[b])
        throw std::invalid_argument(_name[b] + " is not a " + sort_name(opposite(_sort[a])));
    Id p = _sort[a] == Sort::point ? a : b;
    Id l = _sort[a] == Sort::point ? b : a;
    if (set_contains(_nbr[p], l))
        return;
    if (guard)
        if (auto w = find_biclique_through(*this, p, l))
            throw FreenessViolation("incidence (" + _name[p] + "," + _name[l] + ") completes a K_{" +
                    std::to_string(_params.m) + "," + std::to_string(_params.n) + "}",
                *w);
    set_insert(_nbr[p], l);
    set_insert(_nbr[l], p);
    ++_incidences;
}

bool Structure::remove_incidence(Id a, Id b)
{
    if (! incident(a, b))
        return false;
    _nbr[a].erase(std::lower_bound(_nbr[a].begin(), _nbr[a].end(), b));
    _nbr[b].erase(std::lower_bound(_nbr[b].begin(), _nbr[b].end(), a));
    --_incidences;
    return true;
}

std::vector<std::pair<Id, Id>> Structure::incidences() const
{
    std::vector<std::pair<Id, Id>> r;
    r.reserve(_incidences);
    for (Id p : _points)
        for (Id l : _nbr[p])
            r.emplace_back(p, l);
    return r;
}

Structure Structure::induced(const IdSet & keep) const
{
    Structure r = *this;
    for (Id x = 0; x < id_bound(); ++x) {
        if (! _present[x] || set_contains(keep, x))
            continue;
        r._present[x] = false;
        r._by_name.erase(_name[x]);
    }
    r._points = set_intersection(_points, keep);
    r._lines = set_intersection(_lines, keep);
    r._incidences = 0;
    for (Id x = 0; x < id_bound(); ++x) {
        if (! r._present[x]) {
            r._nbr[x].clear();
            continue;
        }
        r._nbr[x] = set_intersection(_nbr[x], keep);
        if (_sort[x] == Sort::point)
            r._incidences += r._nbr[x].size();
    }
    return r;
}

std::vector<std::string> names_of(const Structure & s, const IdSet & xs)
{
    std::vector<std::string> r;
    for (Id x : xs)
        r.push_back(s.name(x));
    return r;
}

namespace {
    // Extends `chosen` to m points from pool[start..] keeping at least n
    // common lines; required lines are always among the common ones.
    bool grow_biclique(const Structure & s, std::vector<Id> & chosen, const IdSet & common, const IdSet & pool,
        std::size_t start, const IdSet & required_lines, Biclique & out)
    {
        const auto m = static_cast<std::size_t>(s.params().m), n = static_cast<std::size_t>(s.params().n);
        if (common.size() < n)
            return false;
        if (chosen.size() == m) {
            out.points = make_set(chosen);
            out.lines = required_lines;
            for (Id l : common) {
                if (out.lines.size() >= n)
                    break;
                if (! set_contains(required_lines, l))
                    out.lines.push_back(l);
            }
            out.lines = make_set(out.lines);
            return true;
        }
        for (std::size_t i = start; i < pool.size(); ++i) {
            if (pool.size() - i < m - chosen.size())
                break;
            IdSet next = set_intersection(common, s.neighbors(pool[i]));
            if (next.size() < n)
                continue;
            chosen.push_back(pool[i]);
            if (grow_biclique(s, chosen, next, pool, i + 1, required_lines, out))
                return true;
            chosen.pop_back();
        }
        return false;
    }
}

std::optional<Biclique> find_biclique(const Structure & s)
{
    const auto n = static_cast<std::size_t>(s.params().n);
    for (Id p : s.points()) {
        const IdSet & common = s.neighbors(p);
        if (common.size() < n)
            continue;
        std::vector<Id> pool;
        for (Id l : common)
            for (Id q : s.neighbors(l))
                if (q > p)
                    pool.push_back(q);
        pool = make_set(std::move(pool));
        std::vector<Id> chosen{p};
        Biclique out;
        if (grow_biclique(s, chosen, common, pool, 0, {}, out))
            return out;
    }
    return std::nullopt;
}

std::optional<Biclique> find_biclique_through(const Structure & s, Id p, Id l)
{
    if (! s.is_point(p) || ! s.is_line(l))
        throw std::invalid_argument("find_biclique_through expects a point and a line");
    IdSet common = s.neighbors(p);
    set_insert(common, l);
    IdSet pool = s.neighbors(l);
    pool.erase(std::remove(pool.begin(), pool.end(), p), pool.end());
    std::vector<Id> chosen{p};
    Biclique out;
    if (grow_biclique(s, chosen, common, pool, 0, IdSet{l}, out))
        return out;
    return std::nullopt;
}

IdSet common_neighbors(const Structure & s, const IdSet & ys)
{
    if (ys.empty())
        throw std::invalid_argument("common_neighbors needs a nonempty set");
    Sort sort = s.sort(ys.front());
    for (Id y : ys)
        if (s.sort(y) != sort)
            throw std::invalid_argument("common_neighbors needs elements of one sort; " + s.name(y) + " is not a " +
                sort_name(sort));
    IdSet r = s.neighbors(ys.front());
    for (std::size_t i = 1; i < ys.size() && ! r.empty(); ++i)
        r = set_intersection(r, s.neighbors(ys[i]));
    return r;
}

CompletenessReport satisfies_complete(const Structure & s)
{
    CompletenessReport rep;
    auto scan = [&](const IdSet & pool, int k, std::size_t target) {
        return for_each_subset_colex(pool, static_cast<std::size_t>(k), [&](const std::vector<Id> & sigma) {
            std::size_t c = common_neighbors(s, sigma).size();
            if (c != target) {
                rep = {false, sigma, c};
                return false;
            }
            return true;
        });
    };
    const auto [m, n] = s.params();
    if (scan(s.points(), m, static_cast<std::size_t>(n - 1)))
        scan(s.lines(), n, static_cast<std::size_t>(m - 1));
    return rep;
}

namespace {
    constexpr Id none = static_cast<Id>(-1);

    // Joint colour refinement over the disjoint union; colours of s1 and s2
    // elements are comparable. Base pairs start with a shared private colour.
    void refine(const Structure & s1, const Structure & s2, const BaseMap & base, std::vector<int> & c1,
        std::vector<int> & c2)
    {
        c1.assign(s1.id_bound(), -1);
        c2.assign(s2.id_bound(), -1);
        std::vector<int> tag1(s1.id_bound(), 0), tag2(s2.id_bound(), 0);
        for (std::size_t i = 0; i < base.size(); ++i) {
            tag1[base[i].first] = static_cast<int>(i) + 1;
            tag2[base[i].second] = static_cast<int>(i) + 1;
        }
        std::map<std::vector<int>, int> table;
        auto intern = [&](std::vector<int> key) {
            auto [it, fresh] = table.emplace(std::move(key), static_cast<int>(table.size()));
            return it->second;
        };
        for (Id x : s1.elements())
            c1[x] = intern({int(s1.sort(x)), int(s1.neighbors(x).size()), tag1[x]});
        for (Id x : s2.elements())
            c2[x] = intern({int(s2.sort(x)), int(s2.neighbors(x).size()), tag2[x]});
        std::size_t classes = table.size();
        while (true) {
            table.clear();
            auto step = [&](const Structure & s, const std::vector<int> & c) {
                std::vector<int> next(c.size(), -1);
                for (Id x : s.elements()) {
                    std::vector<int> key{c[x]};
                    for (Id y : s.neighbors(x))
                        key.push_back(c[y]);
                    std::sort(key.begin() + 1, key.end());
                    next[x] = intern(std::move(key));
                }
                return next;
            };
            auto n1 = step(s1, c1);
            auto n2 = step(s2, c2);
            c1 = std::move(n1);
            c2 = std::move(n2);
            if (table.size() == classes)
                return;
            classes = table.size();
        }
    }

    struct IsoSearch {
        const Structure & s1;
        const Structure & s2;
        std::vector<int> c1, c2;
        std::vector<Id> img, pre;
        std::vector<Id> order;
        std::vector<std::vector<Id>> cands;

        bool consistent(Id e, Id f) const
        {
            std::size_t mapped = 0;
            for (Id x : s1.neighbors(e))
                if (img[x] != none) {
                    if (! s2.incident(f, img[x]))
                        return false;
                    ++mapped;
                }
            std::size_t mapped2 = 0;
            for (Id y : s2.neighbors(f))
                if (pre[y] != none)
                    ++mapped2;
            return mapped == mapped2;
        }

        bool run(std::size_t i)
        {
            if (i == order.size())
                return true;
            Id e = order[i];
            for (Id f : cands[i]) {
                if (pre[f] != none || ! consistent(e, f))
                    continue;
                img[e] = f;
                pre[f] = e;
                if (run(i + 1))
                    return true;
                img[e] = none;
                pre[f] = none;
            }
            return false;
        }
    };
}

IsoResult isomorphic_over(const Structure & s1, const Structure & s2, const BaseMap & base)
{
    IsoResult res;
    auto fail_base = [&](std::string why) {
        res.base_invalid = true;
        res.diagnostic = std::move(why);
        return res;
    };
    std::vector<Id> img(s1.id_bound(), none), pre(s2.id_bound(), none);
    for (auto [a, b] : base) {
        if (! s1.contains(a) || ! s2.contains(b))
            return fail_base("base pair refers to a missing element");
        if (s1.sort(a) != s2.sort(b))
            return fail_base("base pair " + s1.name(a) + " -> " + s2.name(b) + " changes sort");
        if ((img[a] != none && img[a] != b) || (pre[b] != none && pre[b] != a))
            return fail_base("base is not injective at " + s1.name(a));
        img[a] = b;
        pre[b] = a;
    }
    for (auto [a, b] : base)
        for (auto [c, d] : base)
            if (s1.incident(a, c) != s2.incident(b, d))
                return fail_base("base is not a partial embedding at (" + s1.name(a) + "," + s1.name(c) + ")");

    if (s1.points().size() != s2.points().size() || s1.lines().size() != s2.lines().size()) {
        res.diagnostic = "element counts differ";
        return res;
    }
    if (s1.incidence_count() != s2.incidence_count()) {
        res.diagnostic = "incidence counts differ";
        return res;
    }

    BaseMap dedup = base;
    std::sort(dedup.begin(), dedup.end());
    dedup.erase(std::unique(dedup.begin(), dedup.end()), dedup.end());

    IsoSearch search{s1, s2, {}, {}, img, pre, {}, {}};
    refine(s1, s2, dedup, search.c1, search.c2);

    std::map<int, int> hist;
    for (Id x : s1.elements())
        ++hist[search.c1[x]];
    for (Id x : s2.elements())
        --hist[search.c2[x]];
    for (auto [c, k] : hist)
        if (k != 0) {
            res.diagnostic = "colour refinement separates the structures";
            return res;
        }

    std::map<int, std::vector<Id>> by_colour;
    for (Id y : s2.elements())
        by_colour[search.c2[y]].push_back(y);
    for (Id x : s1.elements())
        if (img[x] == none) {
            search.order.push_back(x);
            search.cands.push_back(by_colour[search.c1[x]]);
        }
    if (! search.run(0)) {
        res.diagnostic = "no isomorphism extends the base";
        return res;
    }
    BaseMap out;
    for (Id x : s1.elements())
        out.emplace_back(x, search.img[x]);
    res.map = std::move(out);
    return res;
}

Structure interpret_reduct(const Structure & s, const IdSet & cs, const IdSet & ds, int m0, int n0)
{
    const auto [m, n] = s.params();
    if (m0 < 1 || n0 < 1 || m0 > m || n0 > n)
        throw std::invalid_argument("reduct parameters must satisfy 1 <= m0 <= m and 1 <= n0 <= n");
    if (cs.size() != static_cast<std::size_t>(m - m0) || ds.size() != static_cast<std::size_t>(n - n0))
        throw std::invalid_argument("reduct needs m-m0 point parameters and n-n0 line parameters");
    for (Id c : cs)
        if (! s.is_point(c))
            throw std::invalid_argument(s.name(c) + " is not a point");
    for (Id d : ds)
        if (! s.is_line(d))
            throw std::invalid_argument(s.name(d) + " is not a line");
    for (Id c : cs)
        for (Id d : ds)
            if (! s.incident(c, d))
                throw std::invalid_argument("parameters are not a complete biclique: " + s.name(c) + " is not on " +
                    s.name(d));
    IdSet keep;
    for (Id p : s.points())
        if (! set_contains(cs, p) && set_includes(s.neighbors(p), ds))
            keep.push_back(p);
    for (Id l : s.lines())
        if (! set_contains(ds, l) && set_includes(s.neighbors(l), cs))
            keep.push_back(l);
    return s.induced(make_set(std::move(keep))).with_params({m0, n0});
}

}
