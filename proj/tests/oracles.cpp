#include "oracles.hpp"

#include <map>
#include <set>

namespace oracle {

namespace {
    // All k-subsets of v, in any order.
    void subsets(const std::vector<Id> & v, std::size_t k, std::size_t from, std::vector<Id> & cur,
        std::vector<std::vector<Id>> & out)
    {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = from; i < v.size(); ++i) {
            cur.push_back(v[i]);
            subsets(v, k, i + 1, cur, out);
            cur.pop_back();
        }
    }

    std::vector<std::vector<Id>> all_subsets(const std::vector<Id> & v, std::size_t k)
    {
        std::vector<std::vector<Id>> out;
        std::vector<Id> cur;
        subsets(v, k, 0, cur, out);
        return out;
    }
}

bool brute_kmn_free(const Structure & s)
{
    const auto [m, n] = s.params();
    auto ps = all_subsets(s.points(), static_cast<std::size_t>(m));
    auto ls = all_subsets(s.lines(), static_cast<std::size_t>(n));
    for (auto & p : ps)
        for (auto & l : ls) {
            bool full = true;
            for (Id x : p)
                for (Id y : l)
                    full = full && s.incident(x, y);
            if (full)
                return false;
        }
    return true;
}

IdSet brute_closure(const Structure & s, const IdSet & seed)
{
    const auto [m, n] = s.params();
    std::set<Id> w(seed.begin(), seed.end());
    bool grew = true;
    while (grew) {
        grew = false;
        for (Id x : s.elements()) {
            if (w.contains(x))
                continue;
            int hits = 0;
            for (Id y : w)
                if (s.sort(y) != s.sort(x) && s.incident(x, y))
                    ++hits;
            if (hits >= (s.is_line(x) ? m : n)) {
                w.insert(x);
                grew = true;
            }
        }
    }
    return IdSet(w.begin(), w.end());
}

NaiveCompletion naive_completion(const Structure & s, int stages)
{
    const auto [m, n] = s.params();
    // Own copy: sort flag and neighbour sets, indexed by a dense position.
    std::vector<bool> is_point;
    std::vector<std::set<std::size_t>> nbr;
    std::map<Id, std::size_t> pos;
    std::vector<Id> ids;
    for (Id x : s.elements()) {
        pos[x] = ids.size();
        ids.push_back(x);
        is_point.push_back(s.is_point(x));
        nbr.emplace_back();
    }
    for (auto [p, l] : s.incidences()) {
        nbr[pos[p]].insert(pos[l]);
        nbr[pos[l]].insert(pos[p]);
    }
    NaiveCompletion out;
    out.sizes.push_back(ids.size());
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> fresh;
    for (int k = 0; k < stages; ++k) {
        std::vector<std::size_t> pts, lns;
        for (std::size_t i = 0; i < is_point.size(); ++i)
            (is_point[i] ? pts : lns).push_back(i);
        std::vector<std::pair<bool, std::vector<std::size_t>>> todo;
        auto scan = [&](const std::vector<std::size_t> & pool, int size, int need, bool new_is_point) {
            std::vector<Id> as_ids(pool.begin(), pool.end());
            for (auto & sub : all_subsets(as_ids, static_cast<std::size_t>(size))) {
                std::size_t common = 0;
                for (std::size_t y = 0; y < is_point.size(); ++y) {
                    bool all = true;
                    for (Id x : sub)
                        all = all && nbr[x].contains(y);
                    if (all)
                        ++common;
                }
                if (static_cast<int>(common) < need)
                    todo.emplace_back(new_is_point, std::vector<std::size_t>(sub.begin(), sub.end()));
            }
        };
        scan(pts, m, n - 1, false);
        scan(lns, n, m - 1, true);
        for (auto & [pt, sub] : todo) {
            std::size_t x = is_point.size();
            is_point.push_back(pt);
            nbr.emplace_back(sub.begin(), sub.end());
            for (std::size_t y : sub)
                nbr[y].insert(x);
            fresh.emplace_back(x, sub);
        }
        out.sizes.push_back(is_point.size());
    }
    // Rebuild as a Structure: original ids first, in order, then fresh ones.
    Structure r(s.params());
    std::vector<Id> rid(is_point.size());
    std::size_t next_point = 0, next_line = 0;
    for (std::size_t i = 0; i < is_point.size(); ++i) {
        std::string name = i < ids.size() ? s.name(ids[i])
                                          : (is_point[i] ? "np" + std::to_string(next_point++)
                                                         : "nl" + std::to_string(next_line++));
        rid[i] = r.add(is_point[i] ? incidence::Sort::point : incidence::Sort::line, name);
        if (i < ids.size())
            out.from_input.emplace_back(ids[i], rid[i]);
    }
    for (std::size_t i = 0; i < is_point.size(); ++i)
        if (is_point[i])
            for (std::size_t y : nbr[i])
                r.add_incidence(rid[i], rid[y], false);
    for (auto & [x, sub] : fresh) {
        IdSet sp;
        for (std::size_t y : sub)
            sp.push_back(rid[y]);
        std::sort(sp.begin(), sp.end());
        out.fresh.emplace_back(rid[x], sp);
    }
    out.structure = std::move(r);
    return out;
}

NamedTable gamma_empty_table()
{
    NamedTable t;
    t.points = {"a1", "a2", "a3", "a4", "b^0_1", "b^0_2", "b^0_3"};
    t.lines = {"r1", "r2", "r3", "r4", "r5", "r6", "s^0_1", "s^0_2", "s^0_3"};
    t.incidences = {
        {"a1", "r1"}, {"a1", "r2"}, {"a1", "r3"}, {"a2", "r4"}, {"a2", "r5"}, {"a3", "r6"},
        {"b^0_1", "s^0_1"}, {"b^0_1", "s^0_2"}, {"b^0_2", "s^0_3"},
        {"a2", "r1"}, {"a3", "r2"}, {"a4", "r3"}, {"a3", "r4"}, {"a4", "r5"}, {"a4", "r6"},
        {"b^0_2", "s^0_1"}, {"b^0_3", "s^0_2"}, {"b^0_3", "s^0_3"},
        {"b^0_1", "r1"}, {"b^0_2", "r2"}, {"b^0_3", "r3"}, {"b^0_3", "r4"}, {"b^0_2", "r5"}, {"b^0_1", "r6"},
    };
    return t;
}

Structure from_table(const NamedTable & t, Params p)
{
    Structure s(p);
    for (auto & n : t.points)
        s.add_point(n);
    for (auto & n : t.lines)
        s.add_line(n);
    for (auto & [a, b] : t.incidences)
        s.add_incidence(s.at(a), s.at(b), false);
    return s;
}

Structure quadrangle()
{
    Structure s({2, 2});
    for (const char * n : {"a1", "a2", "a3", "a4"})
        s.add_point(n);
    return s;
}

Structure triangle()
{
    NamedTable t{{"p1", "p2", "p3"}, {"l12", "l13", "l23"},
        {{"p1", "l12"}, {"p2", "l12"}, {"p1", "l13"}, {"p3", "l13"}, {"p2", "l23"}, {"p3", "l23"}}};
    return from_table(t);
}

Structure fano()
{
    NamedTable t;
    t.points = {"f0", "f1", "f2", "f3", "f4", "f5", "f6"};
    const char * lines[7][3] = {{"f0", "f1", "f2"}, {"f0", "f3", "f4"}, {"f0", "f5", "f6"}, {"f1", "f3", "f5"},
        {"f1", "f4", "f6"}, {"f2", "f3", "f6"}, {"f2", "f4", "f5"}};
    for (int i = 0; i < 7; ++i) {
        std::string ln = "g" + std::to_string(i);
        t.lines.push_back(ln);
        for (const char * p : lines[i])
            t.incidences.emplace_back(p, ln);
    }
    return from_table(t);
}

Structure k22()
{
    NamedTable t{{"p1", "p2"}, {"l1", "l2"}, {{"p1", "l1"}, {"p1", "l2"}, {"p2", "l1"}, {"p2", "l2"}}};
    return from_table(t);
}

Structure random_free(std::mt19937 & rng, Params p, int max_elements, double density)
{
    Structure s(p);
    std::uniform_int_distribution<int> total(0, max_elements);
    int size = total(rng);
    std::bernoulli_distribution coin(0.5), inc(density);
    for (int i = 0; i < size; ++i)
        s.add(coin(rng) ? incidence::Sort::point : incidence::Sort::line);
    for (Id x : s.points())
        for (Id y : s.lines())
            if (inc(rng)) {
                s.add_incidence(x, y, false);
                if (! brute_kmn_free(s))
                    s.remove_incidence(x, y);
            }
    return s;
}

bool is_induced_embedding(const Structure & a, const Structure & target, const std::vector<std::pair<Id, Id>> & map)
{
    std::map<Id, Id> f(map.begin(), map.end());
    std::set<Id> images;
    for (Id x : a.elements()) {
        if (! f.contains(x))
            return false;
        Id y = f[x];
        if (! target.contains(y) || target.sort(y) != a.sort(x) || ! images.insert(y).second)
            return false;
    }
    for (Id p : a.points())
        for (Id l : a.lines())
            if (a.incident(p, l) != target.incident(f[p], f[l]))
                return false;
    return true;
}

}
