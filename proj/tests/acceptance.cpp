// One PASS/FAIL line per acceptance criterion, with runtime against its limit.

#include "oracles.hpp"

#include <incidence/amalgam.hpp>
#include <incidence/finsearch.hpp>
#include <incidence/gamma.hpp>
#include <incidence/indep.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>

using namespace incidence;

namespace {

struct Outcome {
    bool pass = true;
    std::string note;

    void fail(const std::string & why)
    {
        if (pass)
            note = why;
        pass = false;
    }
};

int failures = 0;

void criterion(int id, const char * title, double limit_s, const std::function<Outcome()> & body)
{
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    }
    catch (const std::exception & e) {
        o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > limit_s)
        o.fail("took " + std::to_string(secs) + " s, limit " + std::to_string(limit_s) + " s");
    if (! o.pass)
        ++failures;
    std::printf("%s %2d %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", id, title, secs, o.note.empty() ? "" : ": ",
        o.note.c_str());
    std::fflush(stdout);
}

std::set<std::pair<std::string, std::string>> named_incidences(const Structure & s)
{
    std::set<std::pair<std::string, std::string>> out;
    for (auto [p, l] : s.incidences())
        out.emplace(s.name(p), s.name(l));
    return out;
}

std::set<std::string> named(const Structure & s, const IdSet & xs)
{
    std::set<std::string> out;
    for (Id x : xs)
        out.insert(s.name(x));
    return out;
}

std::vector<Bits> bit_strings(int max_len, int min_len = 0)
{
    std::vector<Bits> out;
    for (int len = min_len; len <= max_len; ++len)
        for (int v = 0; v < (1 << len); ++v) {
            Bits b;
            for (int i = len - 1; i >= 0; --i)
                b.push_back(v >> i & 1);
            out.push_back(b);
        }
    return out;
}

Outcome gamma_empty()
{
    Outcome o;
    GammaStructure g = gamma(Bits{});
    auto table = oracle::gamma_empty_table();
    Structure want = oracle::from_table(table);
    const Structure & s = g.structure;
    if (s.points().size() != 7 || s.lines().size() != 9 || s.incidence_count() != 24)
        o.fail("counts differ from 7/9/24");
    if (named(s, s.points()) != named(want, want.points()) || named(s, s.lines()) != named(want, want.lines()))
        o.fail("element names differ from the table");
    if (named_incidences(s) != named_incidences(want))
        o.fail("incidences differ from the table");
    if (! oracle::brute_kmn_free(s))
        o.fail("contains K_{2,2}");
    if (oracle::brute_closure(s, s.ids({"a1", "a2", "a3", "a4"})) != s.elements())
        o.fail("a1..a4 do not generate");
    for (auto [u, v] : std::vector<std::pair<const char *, const char *>>{
             {"r1", "s^0_3"}, {"r2", "s^0_2"}, {"r3", "s^0_1"}, {"r4", "s^0_1"}, {"r5", "s^0_2"}, {"r6", "s^0_3"}})
        for (Id p : s.points())
            if (s.incident(p, s.at(u)) && s.incident(p, s.at(v)))
                o.fail(std::string("pair ") + u + "," + v + " is not open");
    return o;
}

Outcome gamma_family()
{
    Outcome o;
    int count = 0;
    for (const Bits & eta : bit_strings(4, 1)) {
        ++count;
        GammaStructure g = gamma(eta);
        GammaReport r = gamma_invariants(g);
        if (! r.ok())
            o.fail(bits_str(eta) + ": " + r.detail);
        std::size_t lines = 9;
        for (int b : eta)
            lines += 4 + b;
        if (g.structure.points().size() != 7 + 6 * eta.size() || g.structure.lines().size() != lines)
            o.fail(bits_str(eta) + ": counts differ from the closed form");
        if (! oracle::brute_kmn_free(g.structure))
            o.fail(bits_str(eta) + ": brute-force scan finds K_{2,2}");
        if (oracle::brute_closure(g.structure, g.generators()) != g.structure.elements())
            o.fail(bits_str(eta) + ": brute-force closure of a1..a4 is not everything");
    }
    if (count != 30)
        o.fail("expected 30 strings");
    o.note = o.pass ? "30 strings" : o.note;
    return o;
}

Outcome separation()
{
    Outcome o;
    for (const Bits & eta : bit_strings(3)) {
        auto r = separating_check(eta);
        if (! r.separated)
            o.fail("eta " + bits_str(eta) + ": " + r.detail);
    }
    return o;
}

Outcome quadrangle_stages()
{
    Outcome o;
    Structure q = oracle::quadrangle();
    auto naive = oracle::naive_completion(q, 4);
    const std::vector<std::size_t> expected{4, 10, 13, 16, 22};
    if (naive.sizes != expected)
        o.fail("naive oracle disagrees with 4,10,13,16,22");
    CompletionStage st = initial_stage(q);
    std::vector<std::size_t> sizes{st.structure.size()};
    for (int k = 1; k <= 4; ++k) {
        st = complete_step(st);
        sizes.push_back(st.structure.size());
        // Neighbours of a fresh element in the stage that creates it.
        for (auto & [x, prov] : st.provenance)
            if (prov.stage == k && st.structure.neighbors(x) != prov.spawner)
                o.fail(st.structure.name(x) + ": neighbours differ from spawner");
    }
    if (sizes != expected)
        o.fail("library stage sizes differ");
    if (naive.fresh.size() != 18)
        o.fail("naive oracle does not create 18 elements");
    if (! isomorphic_over(st.structure, naive.structure, naive.from_input).map)
        o.fail("F_4 differs from the naive completion");
    return o;
}

Outcome base_monotonicity()
{
    Outcome o;
    for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
        Structure s = bm_witness(m, n);
        std::string tag = "(" + std::to_string(m) + "," + std::to_string(n) + ")";
        IdSet a = s.ids({"a1", "a2"});
        IdSet b{s.at("b")}, cs;
        for (int j = 1; j < n; ++j)
            cs.push_back(s.at("c" + std::to_string(j)));
        b = set_union(b, cs);
        Verdict v0 = i_indep(IndepQuery{s, a, b, {}, Relation::i});
        if (v0.status != IndepStatus::independent)
            o.fail(tag + " over the empty set: " + indep_status_name(v0.status));
        Verdict v1 = i_indep(IndepQuery{s, a, b, cs, Relation::i});
        if (v1.status != IndepStatus::dependent || ! v1.incidence ||
            v1.completion.name(v1.incidence->first) != "b" || v1.completion.name(v1.incidence->second) != "z")
            o.fail(tag + " over c: expected DEPENDENT with witness (b,z)");
    }
    return o;
}

Outcome tp2()
{
    Outcome o;
    PatternExperiment three = tp2_experiment({2, 2}, 3);
    if (! three.sequence_verified)
        o.fail("sequence is not I-independent");
    // The base parameters must be pairwise independent over c1 by a fresh check.
    for (std::size_t i = 1; i < three.instances.size(); ++i) {
        IdSet earlier;
        for (std::size_t j = 0; j < i; ++j)
            set_insert(earlier, three.instances[j][0]);
        Structure amb = three.base.induced(set_union(earlier, make_set({three.instances[i][0], three.instances[0][1]})));
        Verdict v = i_indep(IndepQuery{amb, {three.instances[i][0]}, earlier, {three.instances[0][1]}, Relation::i});
        if (v.status != IndepStatus::independent)
            o.fail("b_" + std::to_string(i) + " is not independent from the earlier ones");
    }
    PatternVerdict v3 = pattern_consistent(three.base, three.pattern, three.instances);
    if (v3.status != Consistency::inconsistent)
        o.fail(std::string("3 instances: ") + consistency_name(v3.status));
    PatternExperiment one = tp2_experiment({2, 2}, 1);
    PatternVerdict v1 = pattern_consistent(one.base, one.pattern, one.instances);
    if (v1.status != Consistency::consistent)
        o.fail(std::string("1 instance: ") + consistency_name(v1.status));
    else if (! v1.witness || ! oracle::brute_kmn_free(*v1.witness))
        o.fail("1-instance witness is not K-free");
    PatternExperiment two = tp2_experiment({2, 2}, 2);
    PatternVerdict v2 = pattern_consistent(two.base, two.pattern, two.instances);
    o.note = std::string("2 instances (recorded only): ") + consistency_name(v2.status);
    return o;
}

// Random gluing instance built from named parts, with a flag per hypothesis
// that the generator may deliberately break.
struct GlueCase {
    GlueProblem problem;
    std::string expected;  // "" when every check should pass
};

GlueCase random_glue(std::mt19937 & rng)
{
    std::bernoulli_distribution coin(0.5), rare(0.15), link(0.35);
    std::uniform_int_distribution<int> few(0, 2), some(1, 2);
    Params p{2, 2};
    struct Part {
        std::vector<std::pair<std::string, Sort>> elems;
        std::vector<std::pair<std::string, std::string>> inc;
    };
    auto sort_of = [&] { return coin(rng) ? Sort::point : Sort::line; };
    Part d, xa, xb, xc;
    for (int i = 0, k = few(rng) % 2; i < k; ++i)
        d.elems.emplace_back("d" + std::to_string(i), sort_of());
    auto grow = [&](Part & x, const char * tag) {
        x = d;
        for (int i = 0, k = some(rng); i < k; ++i)
            x.elems.emplace_back(std::string(tag) + std::to_string(i), sort_of());
    };
    grow(xa, "a");
    grow(xb, "b");
    grow(xc, "c");

    // A join holds two parts plus extras; incidences are random but keep
    // the generator honest about which pairs it links.
    auto build = [&](const Part & x, const Part & y, const char * extra_tag, bool allow_cross,
                     std::map<std::pair<std::string, std::string>, bool> & fixed) {
        Structure s(p);
        std::vector<std::string> xn, yn;
        std::set<std::string> seen;
        auto add = [&](const std::string & n, Sort so) {
            if (seen.insert(n).second)
                s.add(so, n);
        };
        for (auto & [n, so] : x.elems)
            add(n, so), xn.push_back(n);
        for (auto & [n, so] : y.elems)
            add(n, so), yn.push_back(n);
        for (int i = 0, k = few(rng); i < k; ++i)
            add(std::string(extra_tag) + std::to_string(i), sort_of());
        std::set<std::string> in_x(xn.begin(), xn.end()), in_y(yn.begin(), yn.end());
        auto part_local = [&](const std::string & u) { return in_x.contains(u) || in_y.contains(u); };
        for (Id u : s.points())
            for (Id v : s.lines()) {
                const std::string &un = s.name(u), &vn = s.name(v);
                auto key = std::pair{un, vn};
                // Incidences inside a shared part are fixed once.
                bool same_part = part_local(un) && part_local(vn) &&
                    ((in_x.contains(un) && in_x.contains(vn)) || (in_y.contains(un) && in_y.contains(vn)));
                if (same_part) {
                    auto it = fixed.find(key);
                    if (it == fixed.end())
                        it = fixed.emplace(key, link(rng)).first;
                    if (it->second)
                        s.add_incidence(u, v, false);
                    continue;
                }
                bool cross = in_x.contains(un) != in_x.contains(vn) && part_local(un) && part_local(vn) &&
                    ! (in_x.contains(un) && in_y.contains(un)) && ! (in_x.contains(vn) && in_y.contains(vn));
                if (cross && ! allow_cross)
                    continue;
                if (link(rng))
                    s.add_incidence(u, v, false);
            }
        return s;
    };
    std::map<std::pair<std::string, std::string>, bool> fixed;
    GlueCase gc{GlueProblem{build(xa, xb, "e", rare(rng), fixed), build(xa, xc, "f", rare(rng), fixed),
                    build(xb, xc, "g", true, fixed), {}, {}, {}, {}},
        ""};
    auto names = [](const Part & x) {
        std::vector<std::string> v;
        for (auto & [n, so] : x.elems)
            v.push_back(n);
        return v;
    };
    gc.problem.d = names(d);
    gc.problem.a = names(xa);
    gc.problem.b = names(xb);
    gc.problem.c = names(xc);
    // Occasionally make X_c swallow an element of X_b (b and c then meet
    // outside D).
    if (rare(rng) && xb.elems.size() > d.elems.size()) {
        const auto & [n, so] = xb.elems.back();
        if (! gc.problem.x_ac.find(n))
            gc.problem.x_ac.add(so, n);
        gc.problem.c.push_back(n);
    }
    return gc;
}

// The first check independence_glue should fail, computed from scratch.
std::string expected_glue_error(const GlueProblem & g)
{
    struct Join {
        const Structure * s;
        const std::vector<std::string> *x, *y;
        const char *xn, *yn;
    };
    auto ids = [](const Structure & s, const std::vector<std::string> & names) {
        std::vector<Id> v;
        for (auto & n : names)
            v.push_back(s.at(n));
        return make_set(v);
    };
    for (auto & [s, names] : std::vector<std::pair<const Structure *, const std::vector<std::string> *>>{
             {&g.x_bc, &g.b}, {&g.x_bc, &g.c}, {&g.x_ac, &g.c}})
        for (auto & n : *names)
            if (! s->find(n))
                return "missing";
    // Copies agree across joins.
    auto same = [&](const Structure & s1, const Structure & s2, const std::vector<std::string> & part) {
        for (auto & u : part)
            for (auto & v : part)
                if (s1.sort(s1.at(u)) != s2.sort(s2.at(u)) ||
                    s1.incident(s1.at(u), s1.at(v)) != s2.incident(s2.at(u), s2.at(v)))
                    return false;
        return true;
    };
    if (! same(g.x_ab, g.x_ac, g.a) || ! same(g.x_ab, g.x_bc, g.b) || ! same(g.x_ac, g.x_bc, g.c))
        return "copies";
    auto closed = [&](const Structure & s, const std::vector<std::string> & part) {
        IdSet x = ids(s, part);
        return oracle::brute_closure(s, x) == x;
    };
    for (auto [s, parts] : std::vector<std::pair<const Structure *, std::vector<const std::vector<std::string> *>>>{
             {&g.x_ab, {&g.d}}, {&g.x_ac, {&g.d}}, {&g.x_bc, {&g.d}}, {&g.x_ab, {&g.a, &g.b}},
             {&g.x_ac, {&g.a, &g.c}}, {&g.x_bc, {&g.b, &g.c}}})
        for (auto * part : parts)
            if (! closed(*s, *part))
                return "closed";
    auto meet_in_d = [&](const Structure & s, const std::vector<std::string> & x, const std::vector<std::string> & y) {
        return set_intersection(ids(s, x), ids(s, y)) == ids(s, g.d);
    };
    auto no_cross = [&](const Structure & s, const std::vector<std::string> & x, const std::vector<std::string> & y) {
        IdSet dd = ids(s, g.d), xo = set_difference(ids(s, x), dd), yo = set_difference(ids(s, y), dd);
        for (Id u : xo)
            for (Id v : yo)
                if (s.sort(u) != s.sort(v) && s.incident(u, v))
                    return false;
        return true;
    };
    if (! meet_in_d(g.x_ab, g.a, g.b) || ! no_cross(g.x_ab, g.a, g.b))
        return "hypothesis a ⫝ᴵ_D b fails";
    if (! meet_in_d(g.x_ac, g.a, g.c) || ! no_cross(g.x_ac, g.a, g.c))
        return "hypothesis a′ ⫝ᴵ_D c fails";
    if (! meet_in_d(g.x_bc, g.b, g.c))
        return "hypothesis b ⫝ᵃ_D c fails";
    return "";
}

Outcome gluing()
{
    Outcome o;
    std::mt19937 rng(4242);
    int good = 0, rejected = 0, attempts = 0;
    while (good < 200 && attempts < 200000) {
        ++attempts;
        GlueCase gc = random_glue(rng);
        if (! oracle::brute_kmn_free(gc.problem.x_ab) || ! oracle::brute_kmn_free(gc.problem.x_ac) ||
            ! oracle::brute_kmn_free(gc.problem.x_bc))
            continue;
        std::size_t total = gc.problem.x_ab.size() + gc.problem.x_ac.size() + gc.problem.x_bc.size();
        if (total > 36)
            continue;
        std::string want = expected_glue_error(gc.problem);
        if (want == "missing" || want == "copies")
            continue;
        try {
            GlueResult r = independence_glue(gc.problem);
            if (! want.empty()) {
                o.fail("accepted an instance whose check should fail with: " + want);
                continue;
            }
            if (r.structure.size() > 12)
                continue;
            if (! oracle::brute_kmn_free(r.structure))
                o.fail("glued structure contains a biclique");
            ++good;
        }
        catch (const GlueError & e) {
            std::string msg = e.what();
            if (want.empty())
                o.fail(std::string("rejected a valid instance: ") + msg);
            else if (want == "closed" ? msg.find("not I-closed") == std::string::npos : msg != want)
                o.fail("expected '" + want + "', got '" + msg + "'");
            else
                ++rejected;
        }
        catch (const FreenessViolation & e) {
            if (want.empty())
                o.fail("valid instance glued to a biclique");
        }
    }
    if (good < 200)
        o.fail("only " + std::to_string(good) + " valid instances generated");
    if (o.pass)
        o.note = std::to_string(good) + " glued, " + std::to_string(rejected) + " rejected with the named check";
    return o;
}

Outcome relative()
{
    Outcome o;
    std::mt19937 rng(5150);
    std::uniform_int_distribution<int> pick(0, 1);
    int done = 0, attempts = 0;
    while (done < 100 && attempts < 100000) {
        ++attempts;
        Structure b = oracle::random_free(rng, {2, 2}, 10);
        if (b.size() == 0)
            continue;
        std::vector<Id> seed;
        for (Id x : b.elements())
            if (pick(rng))
                seed.push_back(x);
        IdSet a = oracle::brute_closure(b, make_set(seed));
        std::optional<RelativeCompletion> built;
        try {
            built = relative_free_completion(b, a, 3, 20000);
        }
        catch (const BudgetExceeded &) {
            continue;
        }
        const RelativeCompletion & r = *built;
        ++done;
        const Structure & x = r.ambient.structure;
        IdSet c = r.c();
        if (! r.y_closed)
            o.fail("a Y-stage is not I-closed");
        if (oracle::brute_closure(x, c) != c)
            o.fail("final Y is not closed in X_3 by the brute-force closure");
        if (set_intersection(c, b.elements()) != a)
            o.fail("C meets B outside A");
        IdSet co = set_difference(c, a), bo = set_difference(b.elements(), a);
        for (Id u : co)
            if (intersection_size(x.neighbors(u), bo) != 0)
                o.fail("incidence between C\\A and B\\A");
        auto naive = oracle::naive_completion(b.induced(a), 3);
        if (! isomorphic_over(x.induced(c), naive.structure, naive.from_input).map)
            o.fail("C is not isomorphic over A to the naive F_3(A)");
        if (! r.ok())
            o.fail("library reports a failing postcondition");
    }
    if (done < 100)
        o.fail("only " + std::to_string(done) + " pairs completed");
    return o;
}

bool plane_shape(const Structure & s, int q)
{
    std::size_t want = static_cast<std::size_t>(q * q + q + 1);
    if (s.points().size() != want || s.lines().size() != want || ! satisfies_complete(s).pass)
        return false;
    for (Id x : s.elements())
        if (s.neighbors(x).size() != static_cast<std::size_t>(q + 1))
            return false;
    return oracle::brute_kmn_free(s);
}

Outcome small_planes()
{
    Outcome o;
    auto p1 = find_projective_plane(1);
    if (! p1.plane || ! plane_shape(*p1.plane, 1) || ! isomorphic_over(*p1.plane, oracle::triangle(), {}).map)
        o.fail("order 1 is not the triangle");
    auto all2 = enumerate_projective_planes(2);
    if (! all2.complete || all2.planes.empty())
        o.fail("order 2 enumeration incomplete");
    for (auto & p : all2.planes) {
        if (! plane_shape(p, 2))
            o.fail("an order-2 solution has the wrong shape");
        if (! isomorphic_over(p, all2.planes.front(), {}).map)
            o.fail("order-2 solutions are not all isomorphic");
    }
    auto p2 = find_projective_plane(2);
    if (! p2.plane || ! isomorphic_over(*p2.plane, oracle::fano(), {}).map)
        o.fail("order 2 is not the seven-point plane");
    for (auto & [name, a] : std::vector<std::pair<std::string, Structure>>{
             {"triangle", oracle::triangle()}, {"Fano", oracle::fano()}}) {
        EmbedResult e = embed_in_finite_plane(a, 2);
        if (e.status != SearchStatus::found || ! oracle::is_induced_embedding(a, *e.target, e.map))
            o.fail(name + " does not embed at order 2");
    }
    if (o.pass)
        o.note = std::to_string(all2.planes.size()) + " labelled order-2 solutions, all isomorphic";
    return o;
}

Outcome order_three()
{
    Outcome o;
    auto p3 = find_projective_plane(3);
    if (! p3.plane || ! plane_shape(*p3.plane, 3))
        o.fail("no order-3 plane");
    Structure f2 = free_completion(oracle::quadrangle(), 2).structure;
    if (f2.size() != 13 || f2.points().size() != 7 || f2.lines().size() != 6)
        o.fail("quadrangle stage 2 is not 7 points and 6 lines");
    EmbedResult e = embed_in_finite_plane(f2, 3);
    if (e.status != SearchStatus::found || ! oracle::is_induced_embedding(f2, *e.target, e.map))
        o.fail("quadrangle stage 2 does not embed at order 3");
    return o;
}

Outcome implication_chain()
{
    Outcome o;
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> which(0, 3);
    int decided = 0, attempts = 0, transitivity = 0;
    while (decided < 500 && attempts < 20000) {
        ++attempts;
        Structure s = oracle::random_free(rng, {2, 2}, 12, 0.3);
        if (s.size() == 0)
            continue;
        IdSet a, b, c, d;
        for (Id x : s.elements())
            switch (which(rng)) {
            case 0: a.push_back(x); break;
            case 1: b.push_back(x); break;
            case 2: c.push_back(x); break;
            default: break;
            }
        auto q = [&](Relation r, const IdSet & x, const IdSet & y, const IdSet & z) {
            IndepQuery iq{s, x, y, z, r, 4};
            iq.element_cap = 3000;
            return check_independence(iq).status;
        };
        IndepStatus va = q(Relation::alg, a, b, c), vi = q(Relation::i, a, b, c), vd = q(Relation::div, a, b, c);
        if (va == IndepStatus::unknown || vi == IndepStatus::unknown || vd == IndepStatus::unknown)
            continue;
        ++decided;
        if (vd == IndepStatus::independent && vi != IndepStatus::independent)
            o.fail("d-independent but not I-independent");
        if (vi == IndepStatus::independent && va != IndepStatus::independent)
            o.fail("I-independent but not a-independent");
        IndepStatus sa = q(Relation::alg, b, a, c), si = q(Relation::i, b, a, c);
        if (sa != IndepStatus::unknown && sa != va)
            o.fail("a-independence is not symmetric");
        if (si != IndepStatus::unknown && si != vi)
            o.fail("I-independence is not symmetric");
        // Transitivity over D in C in B' = B u C.
        for (Id x : c)
            if (which(rng) < 2)
                d.push_back(x);
        IdSet bc = set_union(b, c);
        IndepStatus t1 = q(Relation::i, a, c, d), t2 = q(Relation::i, a, bc, c);
        if (t1 == IndepStatus::independent && t2 == IndepStatus::independent) {
            IndepStatus t3 = q(Relation::i, a, bc, d);
            if (t3 == IndepStatus::dependent)
                o.fail("transitivity of I-independence fails");
            if (t3 == IndepStatus::independent)
                ++transitivity;
        }
    }
    if (decided < 500)
        o.fail("only " + std::to_string(decided) + " decided queries");
    if (o.pass)
        o.note = std::to_string(decided) + " decided queries, " + std::to_string(transitivity) +
            " transitivity instances";
    return o;
}

Outcome probe()
{
    Outcome o;
    Structure q = oracle::quadrangle();
    ProbeResult r = nonfree_completion_probe(q);
    if (! r.ok) {
        o.fail("probe failed: " + r.failure);
        return o;
    }
    if (r.fano.size() != 14)
        o.fail("witness does not have 14 elements");
    Structure fano = r.b0.induced(r.fano);
    if (! isomorphic_over(fano, oracle::fano(), {}).map)
        o.fail("witness is not the seven-point plane");
    if (! oracle::brute_kmn_free(r.b0))
        o.fail("B0 contains K_{2,2}");
    BaseMap over;
    for (Id x : q.elements())
        over.emplace_back(x, x);
    if (! r.free_side || ! r.b0_side)
        o.fail("no stage-matched completions");
    else {
        if (isomorphic_over(*r.free_side, *r.b0_side, over).map)
            o.fail("stage-matched completions are isomorphic over the quadrangle");
        if (! confined_configurations(*r.free_side).empty())
            o.fail("free side already holds a confined configuration");
    }
    o.note = "B0 has " + std::to_string(r.b0.size()) + " elements, k = " + std::to_string(r.k);
    return o;
}

}

int main()
{
    criterion(1, "Gamma_empty matches the table, is K22-free, generated, pairs open", 1, gamma_empty);
    criterion(2, "Gamma family invariants and counts for |eta| <= 4", 10, gamma_family);
    criterion(3, "type separation for |eta| <= 3", 30, separation);
    criterion(4, "quadrangle completion sizes 4,10,13,16,22 and provenance", 1, quadrangle_stages);
    criterion(5, "base-monotonicity failure for (2,2),(2,3),(3,2),(3,3)", 5, base_monotonicity);
    criterion(6, "pattern 3-inconsistent and 1-consistent over an independent sequence", 60, tp2);
    criterion(7, "gluing of 200 random instances, violations named", 60, gluing);
    criterion(8, "relative completion postconditions on 100 random pairs", 60, relative);
    criterion(9, "planes of order 1 and 2, embeddings at order 2", 10, small_planes);
    criterion(9, "order-3 plane and quadrangle stage embedding", 600, order_three);
    criterion(10, "independence implication chain, symmetry, transitivity", 120, implication_chain);
    criterion(11, "Fano obstruction probe on the quadrangle", 30, probe);
    std::printf("%s\n", failures == 0 ? "ALL PASS" : "SOME FAILED");
    return failures == 0 ? 0 : 1;
}
