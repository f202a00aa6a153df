#include <incidence/finsearch.hpp>
#include <incidence/gamma.hpp>
#include <incidence/indep.hpp>

namespace incidence {

HTermPtr HTerm::leaf(int var)
{
    auto t = std::make_shared<HTerm>();
    t->var = var;
    return t;
}

HTermPtr HTerm::join(HTermPtr left, HTermPtr right)
{
    auto t = std::make_shared<HTerm>();
    t->left = std::move(left);
    t->right = std::move(right);
    return t;
}

std::string HTerm::str() const
{
    if (var >= 0)
        return "x" + std::to_string(var + 1);
    return "H(" + left->str() + "," + right->str() + ")";
}

Id h_eval(LazyCompletion & ambient, Id x, Id y, int max_stage)
{
    if (ambient.params() != Params{2, 2})
        throw std::invalid_argument("H is defined for parameters (2,2)");
    const Structure & s = ambient.structure();
    if (x == y || s.sort(x) != s.sort(y))
        return x;
    IdSet pair = make_set({x, y});
    IdSet common = common_neighbors(s, pair);
    if (! common.empty())
        return common.front();
    auto f = ambient.fresh(pair, max_stage);
    if (! f)
        throw std::logic_error("open pair without a fresh join");
    return *f;
}

Id h_term_eval(LazyCompletion & ambient, const HTermPtr & term, const std::vector<Id> & assignment, int max_stage)
{
    if (term->var >= 0) {
        if (static_cast<std::size_t>(term->var) >= assignment.size())
            throw std::invalid_argument("term variable outside the assignment");
        return assignment[term->var];
    }
    Id l = h_term_eval(ambient, term->left, assignment, max_stage);
    Id r = h_term_eval(ambient, term->right, assignment, max_stage);
    return h_eval(ambient, l, r, max_stage);
}

Bits parse_bits(std::string_view text)
{
    Bits b;
    for (char ch : text) {
        if (ch != '0' && ch != '1')
            throw std::invalid_argument("bit string may only contain 0 and 1");
        b.push_back(ch - '0');
    }
    return b;
}

std::string bits_str(const Bits & eta)
{
    std::string s;
    for (int b : eta)
        s += static_cast<char>('0' + b);
    return s;
}

IdSet GammaStructure::generators() const
{
    return structure.ids({"a1", "a2", "a3", "a4"});
}

namespace {
    std::string sup(const char * base, int k, int i)
    {
        return std::string(base) + "^" + std::to_string(k) + "_" + std::to_string(i);
    }

    struct GammaBuilder {
        GammaStructure g;

        Id element(Sort sort, const std::string & name, HTermPtr term, std::initializer_list<Id> on)
        {
            Id x = g.structure.add(sort, name);
            if (term)
                g.terms[x] = std::move(term);
            for (Id y : on)
                g.structure.add_incidence(x, y, true);
            return x;
        }

        HTermPtr term(Id x) const { return g.terms.at(x); }
        HTermPtr h(Id x, Id y) const { return HTerm::join(term(x), term(y)); }
    };
}

GammaStructure gamma(const Bits & eta)
{
    GammaBuilder gb{{eta, Structure({2, 2}), {}}};
    Structure & s = gb.g.structure;
    Id a[4];
    for (int i = 0; i < 4; ++i) {
        a[i] = s.add_point("a" + std::to_string(i + 1));
        gb.g.terms[a[i]] = HTerm::leaf(i);
    }
    const int joins[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    Id r[6];
    for (int i = 0; i < 6; ++i)
        r[i] = gb.element(Sort::line, "r" + std::to_string(i + 1), gb.h(a[joins[i][0]], a[joins[i][1]]),
            {a[joins[i][0]], a[joins[i][1]]});

    // Each b^0_i meets the pair of r-lines through complementary a-pairs.
    Id b[3], sl[3];
    b[0] = gb.element(Sort::point, sup("b", 0, 1), gb.h(r[0], r[5]), {r[0], r[5]});
    b[1] = gb.element(Sort::point, sup("b", 0, 2), gb.h(r[1], r[4]), {r[1], r[4]});
    b[2] = gb.element(Sort::point, sup("b", 0, 3), gb.h(r[2], r[3]), {r[2], r[3]});
    sl[0] = gb.element(Sort::line, sup("s", 0, 1), gb.h(b[0], b[1]), {b[0], b[1]});
    sl[1] = gb.element(Sort::line, sup("s", 0, 2), gb.h(b[0], b[2]), {b[0], b[2]});
    sl[2] = gb.element(Sort::line, sup("s", 0, 3), gb.h(b[1], b[2]), {b[1], b[2]});

    for (std::size_t step = 0; step < eta.size(); ++step) {
        int k = static_cast<int>(step) + 1;
        Id nb[3], c[3], ns[3];
        nb[0] = gb.element(Sort::point, sup("b", k, 1), gb.h(r[0], sl[2]), {r[0], sl[2]});
        nb[1] = gb.element(Sort::point, sup("b", k, 2), gb.h(r[1], sl[1]), {r[1], sl[1]});
        nb[2] = gb.element(Sort::point, sup("b", k, 3), gb.h(r[2], sl[0]), {r[2], sl[0]});
        for (int i = 0; i < 3; ++i)
            c[i] = gb.element(Sort::point, sup("c", k, i + 1), gb.h(r[3 + i], sl[i]), {r[3 + i], sl[i]});
        ns[0] = gb.element(Sort::line, sup("s", k, 1), gb.h(nb[0], nb[1]), {nb[0], nb[1]});
        ns[1] = gb.element(Sort::line, sup("s", k, 2), gb.h(nb[0], nb[2]), {nb[0], nb[2]});
        ns[2] = gb.element(Sort::line, sup("s", k, 3), gb.h(nb[1], nb[2]), {nb[1], nb[2]});
        if (eta[step] == 0)
            gb.element(Sort::line, "t^" + std::to_string(k), gb.h(c[0], c[1]), {c[0], c[1], c[2]});
        else {
            gb.element(Sort::line, sup("t", k, 1), gb.h(c[0], c[1]), {c[0], c[1]});
            gb.element(Sort::line, sup("t", k, 2), gb.h(c[1], c[2]), {c[1], c[2]});
        }
        for (int i = 0; i < 3; ++i)
            sl[i] = ns[i];
    }
    return std::move(gb.g);
}

std::vector<std::pair<std::string, std::string>> gamma_open_pairs(int k)
{
    return {{"r1", sup("s", k, 3)}, {"r2", sup("s", k, 2)}, {"r3", sup("s", k, 1)}, {"r4", sup("s", k, 1)},
        {"r5", sup("s", k, 2)}, {"r6", sup("s", k, 3)}};
}

GammaReport gamma_invariants(const GammaStructure & g)
{
    GammaReport rep;
    const Structure & s = g.structure;
    for (std::size_t len = 0; len < g.eta.size(); ++len) {
        Bits mu(g.eta.begin(), g.eta.begin() + static_cast<std::ptrdiff_t>(len));
        GammaStructure gm = gamma(mu);
        for (Id x : gm.structure.elements()) {
            auto y = s.find(gm.structure.name(x));
            if (! y || s.sort(*y) != gm.structure.sort(x)) {
                rep.prefixes_induced = false;
                rep.detail += "prefix " + bits_str(mu) + " element " + gm.structure.name(x) + " missing; ";
                break;
            }
        }
        if (! rep.prefixes_induced)
            break;
        for (Id p : gm.structure.points())
            for (Id l : gm.structure.lines())
                if (gm.structure.incident(p, l) !=
                    s.incident(s.at(gm.structure.name(p)), s.at(gm.structure.name(l)))) {
                    rep.prefixes_induced = false;
                    rep.detail += "prefix " + bits_str(mu) + " differs at (" + gm.structure.name(p) + "," +
                        gm.structure.name(l) + "); ";
                }
    }

    auto gens = s.find("a1") && s.find("a2") && s.find("a3") && s.find("a4");
    int budget = 4 + 3 * static_cast<int>(g.eta.size()) + 4;
    if (! gens || generates(s, g.generators(), budget).verdict != Tri::yes) {
        rep.generated = false;
        rep.detail += "a1..a4 do not generate; ";
    }

    for (auto & [u, v] : gamma_open_pairs(static_cast<int>(g.eta.size()))) {
        auto x = s.find(u), y = s.find(v);
        if (! x || ! y || ! common_neighbors(s, make_set({*x, *y})).empty()) {
            rep.pairs_open = false;
            rep.detail += "pair {" + u + "," + v + "} is not open; ";
        }
    }

    if (find_biclique(s)) {
        rep.kmn_free = false;
        rep.detail += "contains K_{2,2}; ";
    }
    return rep;
}

SeparationReport separating_check(const Bits & eta)
{
    SeparationReport rep;
    const int k = static_cast<int>(eta.size()) + 1;
    std::optional<Id> joins[2][2];
    for (int bit : {0, 1}) {
        Bits ext = eta;
        ext.push_back(bit);
        GammaStructure g = gamma(ext);
        LazyCompletion amb(g.structure);
        std::vector<Id> gens;
        for (const char * n : {"a1", "a2", "a3", "a4"})
            gens.push_back(g.structure.at(n));
        Id v[3];
        for (int i = 0; i < 3; ++i) {
            Id c = g.structure.at(sup("c", k, i + 1));
            v[i] = h_term_eval(amb, g.terms.at(c), gens);
            if (v[i] != c) {
                rep.detail = "term for " + sup("c", k, i + 1) + " evaluates elsewhere";
                return rep;
            }
        }
        Id x = h_eval(amb, v[0], v[1]);
        Id y = h_eval(amb, v[1], v[2]);
        joins[bit][0] = x;
        joins[bit][1] = y;
        const Structure & s = amb.structure();
        if (bit == 0 && ! (x == y && s.name(x) == "t^" + std::to_string(k))) {
            rep.detail = "in " + bits_str(ext) + " H(u1,u2)=" + s.name(x) + " and H(u2,u3)=" + s.name(y);
            return rep;
        }
        if (bit == 1 && ! (x != y && s.name(x) == sup("t", k, 1) && s.name(y) == sup("t", k, 2))) {
            rep.detail = "in " + bits_str(ext) + " H(u1,u2)=" + s.name(x) + " and H(u2,u3)=" + s.name(y);
            return rep;
        }
    }
    rep.separated = true;
    rep.detail = "H(u1,u2)=H(u2,u3) after 0, differ after 1";
    return rep;
}

Structure bm_witness(int m, int n)
{
    if (m < 2 || n < 2)
        throw std::invalid_argument("the base-monotonicity configuration needs m >= 2 and n >= 2");
    Structure s({m, n});
    Id a1 = s.add_point("a1"), b = s.add_point("b");
    std::vector<Id> w, c;
    for (int i = 1; i < m; ++i)
        w.push_back(s.add_point("w" + std::to_string(i)));
    Id a2 = s.add_line("a2");
    for (int j = 1; j < n; ++j)
        c.push_back(s.add_line("c" + std::to_string(j)));
    Id z = s.add_line("z");
    s.add_incidence(a1, z);
    s.add_incidence(b, z);
    for (Id wi : w) {
        s.add_incidence(wi, a2);
        for (Id cj : c)
            s.add_incidence(wi, cj);
        s.add_incidence(wi, z);
    }
    return s;
}

Pattern bm_pattern(Params params)
{
    const auto [m, n] = params;
    if (m < 2 || n < 2)
        throw std::invalid_argument("the base-monotonicity pattern needs m >= 2 and n >= 2");
    Pattern p;
    p.shared = {Sort::point, Sort::line};
    p.shared_names = {"a1", "a2"};
    p.parameters.push_back(Sort::point);
    p.parameter_names.push_back("b");
    for (int j = 1; j < n; ++j) {
        p.parameters.push_back(Sort::line);
        p.parameter_names.push_back("c" + std::to_string(j));
    }
    for (int i = 1; i < m; ++i) {
        p.witnesses.push_back(Sort::point);
        p.witness_names.push_back("w" + std::to_string(i));
    }
    p.witnesses.push_back(Sort::line);
    p.witness_names.push_back("z");
    const PatternSlot a1{PatternSlot::shared, 0}, a2{PatternSlot::shared, 1}, b{PatternSlot::parameter, 0},
        z{PatternSlot::witness, m - 1};
    p.incidences.push_back({a1, z});
    p.incidences.push_back({b, z});
    for (int i = 0; i < m - 1; ++i) {
        PatternSlot wi{PatternSlot::witness, i};
        p.incidences.push_back({wi, a2});
        for (int j = 1; j < n; ++j)
            p.incidences.push_back({wi, {PatternSlot::parameter, j}});
        p.incidences.push_back({wi, z});
    }
    return p;
}

PatternExperiment tp2_experiment(Params params, int instances, int truncation)
{
    validate(params);
    Pattern pattern = bm_pattern(params);
    Structure ambient(params);
    Id b = ambient.add_point("b");
    IdSet cs;
    for (int j = 1; j < params.n; ++j)
        cs.push_back(ambient.add_line("c" + std::to_string(j)));
    if (instances == 0)
        return {free_completion(ambient, truncation).structure, {}, pattern, true};
    IndepSequence seq = indep_sequence(ambient, {b}, cs, instances, Relation::i);
    PatternExperiment ex{free_completion(seq.ambient, truncation).structure, {}, pattern, seq.verified};
    for (auto & t : seq.tuples) {
        std::vector<Id> inst{t.front()};
        inst.insert(inst.end(), cs.begin(), cs.end());
        ex.instances.push_back(std::move(inst));
    }
    return ex;
}

namespace {
    bool has_quadrangle(const Structure & s)
    {
        auto collinear = [&](const std::vector<Id> & three) { return ! common_neighbors(s, three).empty(); };
        return ! for_each_subset_colex(s.points(), 4, [&](const std::vector<Id> & four) {
            bool general = true;
            for_each_subset_colex(four, 3, [&](const std::vector<Id> & three) {
                if (collinear(three))
                    general = false;
                return general;
            });
            return ! general;
        });
    }

    std::vector<Id> by_stage(const LazyCompletion & u, const IdSet & xs)
    {
        std::vector<Id> v(xs.begin(), xs.end());
        std::stable_sort(v.begin(), v.end(), [&](Id x, Id y) { return u.stage(x) < u.stage(y); });
        return v;
    }
}

ProbeResult nonfree_completion_probe(const Structure & a, int max_stage, std::size_t element_cap)
{
    ProbeResult res;
    if (a.params() != Params{2, 2})
        throw std::invalid_argument("the probe needs parameters (2,2)");
    if (find_biclique(a))
        throw std::invalid_argument("input is not K_{2,2}-free");

    // Growth precondition, checked on the materialised stages.
    {
        CompletionStage st = initial_stage(a);
        bool degree_seen = false;
        std::size_t last = st.structure.size();
        bool converged = false;
        while (st.k < max_stage && ! degree_seen) {
            st = complete_step(st);
            if (st.fixpoint) {
                converged = true;
                break;
            }
            if (st.structure.size() <= last)
                break;
            last = st.structure.size();
            for (Id p : st.structure.points())
                if (st.structure.neighbors(p).size() >= 7)
                    degree_seen = true;
            if (st.structure.size() > element_cap)
                break;
        }
        if (converged) {
            bool quiet = deficient_sets(a).empty();
            if (quiet && has_quadrangle(a))
                res.failure = "no deficiencies";
            else
                res.failure = "free completion converged finite";
            return res;
        }
        if (! degree_seen) {
            res.failure = "growth precondition unverified within budget";
            return res;
        }
    }

    LazyCompletion u(a, element_cap);
    auto h = [&](Id x, Id y) { return h_eval(u, x, y, max_stage); };
    try {
        Id r1;
        if (! a.lines().empty())
            r1 = a.lines().front();
        else if (a.points().size() >= 2)
            r1 = h(a.points()[0], a.points()[1]);
        else {
            res.failure = "line-selection search exhausted";
            return res;
        }
        std::vector<Id> r{r1};
        std::vector<int> ks{u.stage(r1)};
        while (r.size() < 7) {
            IdSet x;
            for (std::size_t i = 0; i < r.size(); ++i)
                for (std::size_t j = i + 1; j < r.size(); ++j)
                    set_insert(x, h(r[i], r[j]));
            const int kn = ks.back();
            // d is off X and r_n, e is a fresh meet of r_n with a line missing
            // d; the join of d and e then sits above stage k_n. A line above
            // stage k_n meets lower points only in its spawner.
            auto select = [&]() -> std::optional<Id> {
                const Structure & s = u.structure();
                for (Id d : by_stage(u, s.points())) {
                    if (set_contains(x, d) || s.incident(d, r.back()))
                        continue;
                    for (Id m : by_stage(u, s.lines())) {
                        if (m == r.back() || s.incident(d, m) ||
                            intersection_size(s.neighbors(m), s.neighbors(r.back())) != 0)
                            continue;
                        Id e = h(r.back(), m);
                        Id l = h(d, e);
                        if (u.stage(l) <= kn || intersection_size(u.structure().neighbors(l), x) != 0)
                            continue;
                        return l;
                    }
                }
                return std::nullopt;
            };
            // Otherwise grow the registered part, alternately joining points and meeting lines.
            std::optional<Id> chosen = select();
            for (int round = 0; round < 4 && ! chosen; ++round) {
                auto v = by_stage(u, round % 2 == 0 ? u.structure().points() : u.structure().lines());
                for (std::size_t i = 0; i < v.size(); ++i)
                    for (std::size_t j = i + 1; j < v.size(); ++j)
                        h(v[i], v[j]);
                chosen = select();
            }
            if (! chosen) {
                res.failure = "line-selection search exhausted";
                return res;
            }
            r.push_back(*chosen);
            ks.push_back(u.stage(*chosen));
        }
        res.r_lines = r;
        res.r_stages = ks;
        const int k = ks.back();
        res.k = k;

        std::optional<Id> partner;
        for (int i = 3; i < 6 && ! partner; ++i)
            if (u.deficient(make_set({r[i], r[6]})) && u.stage_of_set(make_set({r[i], r[6]})) == k)
                partner = r[i];
        if (! partner) {
            res.failure = "no open pair among r4, r5, r6 with r7";
            return res;
        }
        Id b = h(*partner, r[6]);
        Id a12 = h(r[0], r[1]), a13 = h(r[0], r[2]), a23 = h(r[1], r[2]);
        Id s12 = h(a12, b), s13 = h(a13, b), s23 = h(a23, b);
        Id c1 = h(r[0], s23), c2 = h(r[1], s13), c3 = h(r[2], s12);
        for (auto [x, want] : std::initializer_list<std::pair<Id, int>>{
                 {b, k + 1}, {s12, k + 2}, {s13, k + 2}, {s23, k + 2}, {c1, k + 3}, {c2, k + 3}, {c3, k + 3}})
            if (u.stage(x) != want) {
                res.failure = "constructed element " + u.structure().name(x) + " appears at an unexpected stage";
                return res;
            }
        for (auto [p, q] : {std::pair{c1, c2}, std::pair{c1, c3}, std::pair{c2, c3}})
            if (! u.deficient(make_set({p, q}))) {
                res.failure = "c-points are already joined";
                return res;
            }

        IdSet upto;
        for (Id y : u.structure().elements())
            if (u.stage(y) <= k + 3)
                upto.push_back(y);
        res.b0 = u.structure().induced(upto);
        Id t = res.b0.add_line("t");
        for (Id c : {c1, c2, c3})
            res.b0.add_incidence(c, t, true);
        res.fano = make_set({a12, a13, a23, b, c1, c2, c3, r[0], r[1], r[2], s12, s13, s23, t});

        Structure fano = res.b0.induced(res.fano);
        auto plane = find_projective_plane(2);
        if (! plane.plane || ! isomorphic_over(fano, *plane.plane, {}).map) {
            res.failure = "the fourteen elements do not form the order-2 plane";
            return res;
        }

        // Join the c-points pairwise on both sides.
        LazyCompletion ub(res.b0, element_cap);
        IdSet side_a = upto, side_b = set_union(upto, IdSet{t});
        for (auto [p, q] : {std::pair{c1, c2}, std::pair{c1, c3}, std::pair{c2, c3}}) {
            set_insert(side_a, h(p, q));
            set_insert(side_b, h_eval(ub, p, q, max_stage));
        }
        res.free_side = u.structure().induced(side_a);
        res.b0_side = ub.structure().induced(side_b);
    }
    catch (const BudgetExceeded & e) {
        res.failure = std::string("budget exhausted: ") + e.what();
        return res;
    }
    res.ok = true;
    return res;
}

}
