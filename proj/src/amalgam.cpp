#include <incidence/amalgam.hpp>
#include <incidence/closure.hpp>

#include <map>
#include <set>

namespace incidence {

const char * consistency_name(Consistency c)
{
    switch (c) {
    case Consistency::consistent: return "CONSISTENT";
    case Consistency::inconsistent: return "INCONSISTENT";
    case Consistency::unknown: break;
    }
    return "UNKNOWN";
}

SafetyReport validate_safe_diagram(const SafeDiagram & d)
{
    const Structure & s = d.structure;
    if (set_intersection(d.base_vars, d.ext_vars).size() != 0 || set_union(d.base_vars, d.ext_vars) != s.elements())
        throw std::invalid_argument("diagram variables must partition the diagram's elements");
    SafetyReport r;
    if (auto w = find_biclique(s)) {
        r.safe = false;
        r.violated = 1;
        r.witness = w;
        return r;
    }
    const auto [m, n] = s.params();
    for (int cond : {2, 3})
        for (Id y : d.ext_vars) {
            bool point = s.is_point(y);
            if (point != (cond == 2))
                continue;
            auto limit = static_cast<std::size_t>(point ? n - 1 : m - 1);
            if (intersection_size(s.neighbors(y), d.base_vars) > limit) {
                r.safe = false;
                r.violated = cond;
                r.offender = y;
                return r;
            }
        }
    return r;
}

namespace {
    void check_embedding(const Structure & a, const Structure & into, const BaseMap & emb, const char * what)
    {
        std::map<Id, Id> f(emb.begin(), emb.end());
        std::set<Id> images;
        for (Id x : a.elements()) {
            auto it = f.find(x);
            if (it == f.end())
                throw std::invalid_argument(std::string("embedding into ") + what + " misses " + a.name(x));
            if (! into.contains(it->second) || into.sort(it->second) != a.sort(x))
                throw std::invalid_argument(std::string("embedding into ") + what + " changes the sort of " +
                    a.name(x));
            if (! images.insert(it->second).second)
                throw std::invalid_argument(std::string("embedding into ") + what + " is not injective");
        }
        for (Id p : a.points())
            for (Id l : a.lines())
                if (a.incident(p, l) != into.incident(f[p], f[l]))
                    throw std::invalid_argument(std::string("embedding into ") + what + " is not induced at (" +
                        a.name(p) + "," + a.name(l) + ")");
    }
}

AmalgamResult free_amalgam(
    const Structure & b, const Structure & c, const Structure & a, const BaseMap & a_to_b, const BaseMap & a_to_c)
{
    if (b.params() != c.params() || b.params() != a.params())
        throw std::invalid_argument("amalgam inputs have different parameters");
    check_embedding(a, b, a_to_b, "B");
    check_embedding(a, c, a_to_c, "C");
    std::map<Id, Id> ab(a_to_b.begin(), a_to_b.end());
    std::map<Id, Id> c_to_res;
    for (auto [x, y] : a_to_c)
        c_to_res[y] = ab.at(x);
    AmalgamResult r{b, {}};
    for (Id y : c.elements())
        if (! c_to_res.contains(y))
            c_to_res[y] = r.structure.add(c.sort(y), c.name(y));
    for (auto [p, l] : c.incidences())
        r.structure.add_incidence(c_to_res[p], c_to_res[l], false);
    if (auto w = find_biclique(r.structure))
        throw FreenessViolation("free amalgam is not K_{m,n}-free", *w);
    r.from_c.assign(c_to_res.begin(), c_to_res.end());
    return r;
}

ExtensionResult extension_witness(const Structure & s, const std::vector<Id> & abar, const SafeDiagram & d)
{
    const Structure & ds = d.structure;
    if (abar.size() != d.base_vars.size())
        throw std::invalid_argument("tuple length does not match the diagram's base variables");
    std::map<Id, Id> f;
    std::set<Id> used;
    for (std::size_t i = 0; i < abar.size(); ++i) {
        Id x = d.base_vars[i], a = abar[i];
        if (! s.contains(a) || s.sort(a) != ds.sort(x))
            throw std::invalid_argument("tuple does not realise the base diagram: sort mismatch at " + ds.name(x));
        if (! used.insert(a).second)
            throw std::invalid_argument("tuple does not realise the base diagram: repeated element");
        f[x] = a;
    }
    for (Id x : d.base_vars)
        for (Id y : d.base_vars)
            if (ds.is_point(x) && ds.is_line(y) && ds.incident(x, y) != s.incident(f[x], f[y]))
                throw std::invalid_argument("tuple does not realise the base diagram at (" + ds.name(x) + "," +
                    ds.name(y) + ")");
    auto safety = validate_safe_diagram(d);
    if (! safety.safe)
        throw std::invalid_argument("diagram is not safe: condition " + std::to_string(safety.violated) + " fails");
    ExtensionResult r{s, {}};
    for (Id y : d.ext_vars) {
        f[y] = r.structure.add(ds.sort(y), ds.name(y));
        r.ext_map.emplace_back(y, f[y]);
    }
    for (Id y : d.ext_vars)
        for (Id z : ds.neighbors(y))
            if (ds.is_point(y) || ! set_contains(d.ext_vars, z))
                r.structure.add_incidence(f[y], f[z], true);
    return r;
}

namespace {
    IdSet lookup(const Structure & s, const std::vector<std::string> & names, const char * part, const char * join)
    {
        std::vector<Id> r;
        for (auto & n : names) {
            auto x = s.find(n);
            if (! x)
                throw GlueError(std::string(part) + " element " + n + " is missing from " + join);
            r.push_back(*x);
        }
        return make_set(std::move(r));
    }

    void same_copy(const Structure & s1, const Structure & s2, const std::vector<std::string> & names,
        const char * part, const char * j1, const char * j2)
    {
        for (auto & u : names) {
            Id x1 = s1.at(u), x2 = s2.at(u);
            if (s1.sort(x1) != s2.sort(x2))
                throw GlueError(std::string("copies of ") + part + " in " + j1 + " and " + j2 + " differ on " + u);
            for (auto & v : names)
                if (s1.incident(x1, s1.at(v)) != s2.incident(x2, s2.at(v)))
                    throw GlueError(std::string("copies of ") + part + " in " + j1 + " and " + j2 +
                        " differ at (" + u + "," + v + ")");
        }
    }

    void require_closed(const Structure & s, const IdSet & x, const char * part, const char * join)
    {
        if (! is_i_closed(s, x).closed)
            throw GlueError(std::string(part) + " is not I-closed in " + join);
    }

    bool cross_free(const Structure & s, const IdSet & x, const IdSet & y, const IdSet & d)
    {
        IdSet yo = set_difference(y, d);
        for (Id u : set_difference(x, d))
            if (intersection_size(s.neighbors(u), yo) != 0)
                return false;
        return true;
    }
}

GlueResult independence_glue(const GlueProblem & g)
{
    if (g.x_ab.params() != g.x_ac.params() || g.x_ab.params() != g.x_bc.params())
        throw GlueError("joins have different parameters");
    for (auto * part : {&g.a, &g.b, &g.c})
        for (auto & n : g.d)
            if (std::find(part->begin(), part->end(), n) == part->end())
                throw GlueError("every part must contain D; " + n + " is missing");

    IdSet ab_d = lookup(g.x_ab, g.d, "D", "X_ab"), ab_a = lookup(g.x_ab, g.a, "X_a", "X_ab"),
          ab_b = lookup(g.x_ab, g.b, "X_b", "X_ab");
    IdSet ac_d = lookup(g.x_ac, g.d, "D", "X_ac"), ac_a = lookup(g.x_ac, g.a, "X_a'", "X_ac"),
          ac_c = lookup(g.x_ac, g.c, "X_c", "X_ac");
    IdSet bc_d = lookup(g.x_bc, g.d, "D", "X_bc"), bc_b = lookup(g.x_bc, g.b, "X_b", "X_bc"),
          bc_c = lookup(g.x_bc, g.c, "X_c", "X_bc");

    same_copy(g.x_ab, g.x_ac, g.a, "X_a", "X_ab", "X_ac");
    same_copy(g.x_ab, g.x_bc, g.b, "X_b", "X_ab", "X_bc");
    same_copy(g.x_ac, g.x_bc, g.c, "X_c", "X_ac", "X_bc");

    require_closed(g.x_ab, ab_d, "D", "X_ab");
    require_closed(g.x_ac, ac_d, "D", "X_ac");
    require_closed(g.x_bc, bc_d, "D", "X_bc");
    require_closed(g.x_ab, ab_a, "X_a", "X_ab");
    require_closed(g.x_ab, ab_b, "X_b", "X_ab");
    require_closed(g.x_ac, ac_a, "X_a'", "X_ac");
    require_closed(g.x_ac, ac_c, "X_c", "X_ac");
    require_closed(g.x_bc, bc_b, "X_b", "X_bc");
    require_closed(g.x_bc, bc_c, "X_c", "X_bc");

    if (set_intersection(ab_a, ab_b) != ab_d || ! cross_free(g.x_ab, ab_a, ab_b, ab_d))
        throw GlueError("hypothesis a ⫝ᴵ_D b fails");
    if (set_intersection(ac_a, ac_c) != ac_d || ! cross_free(g.x_ac, ac_a, ac_c, ac_d))
        throw GlueError("hypothesis a′ ⫝ᴵ_D c fails");
    if (set_intersection(bc_b, bc_c) != bc_d)
        throw GlueError("hypothesis b ⫝ᵃ_D c fails");

    std::set<std::string> shared;
    for (auto * part : {&g.a, &g.b, &g.c})
        shared.insert(part->begin(), part->end());

    GlueResult r{Structure(g.x_ab.params()), {}, {}, {}, {}};
    std::map<std::string, Id> by_name;
    for (const Structure * j : {&g.x_ab, &g.x_ac, &g.x_bc}) {
        std::map<Id, Id> f;
        for (Id x : j->elements()) {
            const std::string & n = j->name(x);
            if (shared.contains(n)) {
                auto [it, fresh] = by_name.emplace(n, 0);
                if (fresh)
                    it->second = r.structure.add(j->sort(x), n);
                f[x] = it->second;
            }
            else
                f[x] = r.structure.add(j->sort(x), n);
        }
        for (auto [p, l] : j->incidences())
            r.structure.add_incidence(f[p], f[l], false);
    }
    auto ids = [&](const std::vector<std::string> & names) {
        std::vector<Id> v;
        for (auto & n : names)
            v.push_back(by_name.at(n));
        return make_set(std::move(v));
    };
    r.part_a = ids(g.a);
    r.part_b = ids(g.b);
    r.part_c = ids(g.c);
    r.part_d = ids(g.d);
    if (auto w = find_biclique(r.structure))
        throw FreenessViolation("glued structure is not K_{m,n}-free", *w);
    return r;
}

namespace {
    struct PatternSearch {
        const Structure & base;
        const Pattern & p;
        const std::vector<std::vector<Id>> & instances;
        std::size_t budget;
        std::size_t nodes = 0;
        bool exhausted = false;

        std::vector<Sort> var_sort;
        std::vector<Id> target;       // per assigned variable
        std::vector<int> block_owner; // first variable of each new block
        int merges = 0;

        Id bound() const { return base.id_bound(); }

        std::size_t var_of(std::size_t inst, const PatternSlot & s) const
        {
            return s.kind == PatternSlot::shared ? static_cast<std::size_t>(s.index)
                                                 : p.shared.size() + inst * p.witnesses.size() + s.index;
        }

        // Image of a slot in an instance, or nothing if not yet assigned.
        std::optional<Id> image(std::size_t inst, const PatternSlot & s) const
        {
            if (s.kind == PatternSlot::parameter)
                return instances[inst][s.index];
            std::size_t v = var_of(inst, s);
            if (v < target.size())
                return target[v];
            return std::nullopt;
        }

        std::string block_name(int b) const
        {
            std::size_t v = static_cast<std::size_t>(block_owner[b]);
            if (v < p.shared.size())
                return p.shared_names[v];
            std::size_t inst = (v - p.shared.size()) / p.witnesses.size();
            std::size_t w = (v - p.shared.size()) % p.witnesses.size();
            return p.witness_names[w] + "#" + std::to_string(inst);
        }

        // Base plus the new blocks and every pattern incidence whose slots
        // are assigned; nothing if the partial assignment is already refuted.
        std::optional<Structure> build() const
        {
            Structure s = base;
            for (std::size_t b = 0; b < block_owner.size(); ++b)
                s.add(var_sort[block_owner[b]], block_name(static_cast<int>(b)));
            for (std::size_t inst = 0; inst < instances.size(); ++inst)
                for (auto & [u, v] : p.incidences) {
                    auto x = image(inst, u), y = image(inst, v);
                    if (! x || ! y)
                        continue;
                    if (*x < bound() && *y < bound()) {
                        if (! base.incident(*x, *y))
                            return std::nullopt;
                        continue;
                    }
                    s.add_incidence(*x, *y, false);
                }
            if (find_biclique(s))
                return std::nullopt;
            for (std::size_t inst = 0; inst < instances.size(); ++inst) {
                std::vector<std::pair<PatternSlot, Id>> slots;
                auto collect = [&](PatternSlot::Kind kind, std::size_t count) {
                    for (std::size_t i = 0; i < count; ++i) {
                        PatternSlot sl{kind, static_cast<int>(i)};
                        if (auto x = image(inst, sl))
                            slots.emplace_back(sl, *x);
                    }
                };
                collect(PatternSlot::parameter, p.parameters.size());
                collect(PatternSlot::shared, p.shared.size());
                collect(PatternSlot::witness, p.witnesses.size());
                std::set<Id> seen;
                for (auto & [sl, x] : slots)
                    if (! seen.insert(x).second)
                        return std::nullopt;
                for (auto & [u, x] : slots)
                    for (auto & [v, y] : slots) {
                        if (! s.is_point(x) || ! s.is_line(y))
                            continue;
                        bool want = false;
                        for (auto & [a, b] : p.incidences)
                            if ((a.kind == u.kind && a.index == u.index && b.kind == v.kind && b.index == v.index) ||
                                (a.kind == v.kind && a.index == v.index && b.kind == u.kind && b.index == u.index))
                                want = true;
                        if (s.incident(x, y) != want)
                            return std::nullopt;
                    }
            }
            return s;
        }

        std::optional<Structure> run(std::size_t v, int want)
        {
            if (++nodes > budget) {
                exhausted = true;
                return std::nullopt;
            }
            auto built = build();
            if (! built)
                return std::nullopt;
            if (v == var_sort.size())
                return merges == want ? built : std::nullopt;
            int remaining = static_cast<int>(var_sort.size() - v);
            Sort sort = var_sort[v];
            if (merges + remaining > want) {
                block_owner.push_back(static_cast<int>(v));
                target.push_back(bound() + static_cast<Id>(block_owner.size() - 1));
                if (auto r = run(v + 1, want))
                    return r;
                target.pop_back();
                block_owner.pop_back();
                if (exhausted)
                    return std::nullopt;
            }
            if (merges < want) {
                ++merges;
                std::vector<Id> options;
                for (std::size_t b = 0; b < block_owner.size(); ++b)
                    if (var_sort[block_owner[b]] == sort)
                        options.push_back(bound() + static_cast<Id>(b));
                for (Id x : sort == Sort::point ? base.points() : base.lines())
                    options.push_back(x);
                for (Id x : options) {
                    target.push_back(x);
                    if (auto r = run(v + 1, want))
                        return r;
                    target.pop_back();
                    if (exhausted)
                        return std::nullopt;
                }
                --merges;
            }
            return std::nullopt;
        }
    };
}

PatternVerdict pattern_consistent(const Structure & base, const Pattern & p,
    const std::vector<std::vector<Id>> & instances, std::size_t node_budget)
{
    for (auto & inst : instances) {
        if (inst.size() != p.parameters.size())
            throw std::invalid_argument("instance binds the wrong number of parameters");
        for (std::size_t i = 0; i < inst.size(); ++i)
            if (! base.contains(inst[i]) || base.sort(inst[i]) != p.parameters[i])
                throw std::invalid_argument("instance parameter " + std::to_string(i) + " has the wrong sort");
    }
    PatternSearch search{base, p, instances, node_budget, 0, false, {}, {}, {}, 0};
    if (! instances.empty()) {
        search.var_sort = p.shared;
        for (std::size_t i = 0; i < instances.size(); ++i)
            search.var_sort.insert(search.var_sort.end(), p.witnesses.begin(), p.witnesses.end());
    }
    PatternVerdict r;
    for (int want = 0; want <= static_cast<int>(search.var_sort.size()); ++want) {
        auto found = search.run(0, want);
        if (found) {
            r.status = Consistency::consistent;
            r.witness = std::move(found);
            r.assignment = search.target;
            r.merges = want;
            r.nodes = search.nodes;
            return r;
        }
        if (search.exhausted) {
            r.nodes = search.nodes;
            return r;
        }
    }
    r.status = Consistency::inconsistent;
    r.nodes = search.nodes;
    return r;
}

}
