#include <incidence/amalgam.hpp>
#include <incidence/indep.hpp>

namespace incidence {

const char * relation_name(Relation r)
{
    switch (r) {
    case Relation::alg: return "a";
    case Relation::i: return "i";
    case Relation::div: return "d";
    case Relation::otimes: break;
    }
    return "otimes";
}

const char * indep_status_name(IndepStatus s)
{
    switch (s) {
    case IndepStatus::independent: return "INDEPENDENT";
    case IndepStatus::dependent: return "DEPENDENT";
    case IndepStatus::unknown: break;
    }
    return "UNKNOWN";
}

std::vector<std::string> Verdict::witness_names() const
{
    std::vector<std::string> out;
    if (failing_d)
        for (Id x : *failing_d)
            out.push_back(completion.name(x));
    if (element)
        out.push_back(completion.name(*element));
    if (incidence) {
        out.push_back(completion.name(incidence->first));
        out.push_back(completion.name(incidence->second));
    }
    return out;
}

namespace {
    void check_query(const IndepQuery & q)
    {
        for (const IdSet * part : {&q.a, &q.b, &q.c})
            for (Id x : *part)
                if (! q.ambient.contains(x))
                    throw std::invalid_argument("query element " + std::to_string(x) + " is not in the ambient");
    }

    struct Sides {
        IdSet left, right, base;  // acl(AC), acl(BC), acl(C)
        bool converged = false;
    };

    Sides sides(LazyCompletion & u, const IdSet & a, const IdSet & b, const IdSet & c, int stages)
    {
        auto l = u.closure(set_union(a, c), stages);
        auto r = u.closure(set_union(b, c), stages);
        auto k = u.closure(c, stages);
        return {l.set, r.set, k.set, l.converged && r.converged && k.converged};
    }

    Verdict unknown(const std::string & why)
    {
        Verdict v;
        v.detail = why;
        return v;
    }

    Verdict alg_on(const Sides & s)
    {
        if (! s.converged)
            return unknown("closures did not converge within the stage budget");
        Verdict v;
        IdSet extra = set_difference(set_intersection(s.left, s.right), s.base);
        if (extra.empty())
            v.status = IndepStatus::independent;
        else {
            v.status = IndepStatus::dependent;
            v.element = extra.front();
            v.detail = "closures share an element outside acl(C)";
        }
        return v;
    }

    Verdict i_on(const Structure & s, const Sides & sd)
    {
        Verdict v = alg_on(sd);
        if (v.status != IndepStatus::independent)
            return v;
        IdSet lo = set_difference(sd.left, sd.base), ro = set_difference(sd.right, sd.base);
        std::optional<std::pair<Id, Id>> best;
        for (Id x : lo)
            for (Id y : set_intersection(s.neighbors(x), ro)) {
                std::pair<Id, Id> pl = s.is_point(x) ? std::pair{x, y} : std::pair{y, x};
                if (! best || pl < *best)
                    best = pl;
            }
        if (best) {
            v.status = IndepStatus::dependent;
            v.incidence = best;
            v.detail = "incidence between the closures outside acl(C)";
        }
        return v;
    }

    Verdict finish(Verdict v, const LazyCompletion & u)
    {
        v.completion = u.structure();
        return v;
    }

    Verdict d_on(LazyCompletion & u, const IndepQuery & q)
    {
        Sides base = sides(u, q.a, q.b, q.c, q.stage_budget);
        if (! base.converged)
            return unknown("closures did not converge within the stage budget");
        IdSet pool = set_difference(base.right, base.base);
        if (pool.size() > q.d_bound)
            return unknown("acl(BC) has " + std::to_string(pool.size()) + " elements outside acl(C), above the bound " +
                std::to_string(q.d_bound));
        const std::size_t k = pool.size();
        bool undecided = false;
        // Bit strings over pool in id order, first element most significant.
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
            IdSet d = base.base;
            for (std::size_t i = 0; i < k; ++i)
                if (mask >> (k - 1 - i) & 1)
                    set_insert(d, pool[i]);
            if (! u.is_closed(d))
                continue;
            Verdict inner = i_on(u.structure(), sides(u, q.a, q.b, d, q.stage_budget));
            if (inner.status == IndepStatus::unknown)
                undecided = true;
            else if (inner.status == IndepStatus::dependent) {
                inner.failing_d = d;
                inner.detail = "fails over an I-closed D: " + inner.detail;
                return inner;
            }
        }
        if (undecided)
            return unknown("some intermediate base was undecided");
        Verdict v;
        v.status = IndepStatus::independent;
        return v;
    }

    // One stage of closure inside the completion: registered elements forced
    // by w, and the fresh element of every deficient set in w.
    IdSet closure_step(LazyCompletion & u, const IdSet & w, int max_stage)
    {
        const auto [m, n] = u.params();
        IdSet more = forced_by(u.structure(), w);
        IdSet pts, lns;
        for (Id x : w)
            (u.structure().is_point(x) ? pts : lns).push_back(x);
        std::vector<Id> fresh;
        auto visit = [&](const std::vector<Id> & sigma) {
            if (auto f = u.fresh(sigma, max_stage))
                fresh.push_back(*f);
            return true;
        };
        for_each_subset_colex(pts, static_cast<std::size_t>(m), visit);
        for_each_subset_colex(lns, static_cast<std::size_t>(n), visit);
        return set_union(w, set_union(more, make_set(std::move(fresh))));
    }

    Verdict otimes_on(LazyCompletion & u, const IndepQuery & q)
    {
        Sides sd = sides(u, q.a, q.b, q.c, q.stage_budget);
        Verdict v = i_on(u.structure(), sd);
        if (v.status != IndepStatus::independent)
            return v;
        IdSet u_set = set_union(sd.left, sd.right);
        IdSet abc = set_union(q.a, set_union(q.b, q.c));
        BaseMap over;
        for (Id x : abc)
            over.emplace_back(x, x);
        CompletionStage free_side = initial_stage(u.structure().induced(u_set));
        IdSet w = u_set;
        v.verified_stage = 0;
        for (int j = 1; j <= q.otimes_stages; ++j) {
            w = closure_step(u, w, q.stage_budget + q.otimes_stages);
            free_side = complete_step(free_side);
            if (free_side.structure.size() > q.element_cap)
                throw BudgetExceeded("free completion of the union reached the element cap");
            IsoResult iso = isomorphic_over(u.structure().induced(w), free_side.structure, over);
            if (! iso.map) {
                v.status = IndepStatus::dependent;
                v.verified_stage = j - 1;
                v.detail = "stage " + std::to_string(j) + " closure differs from the free completion of the union";
                return v;
            }
            v.verified_stage = j;
        }
        v.detail = "verified to stage " + std::to_string(q.otimes_stages);
        return v;
    }

    template <typename F>
    Verdict run(const IndepQuery & q, Relation want, F && body)
    {
        if (q.relation != want)
            throw std::invalid_argument(std::string("query relation is ") + relation_name(q.relation) +
                ", expected " + relation_name(want));
        check_query(q);
        LazyCompletion u(q.ambient, q.element_cap);
        try {
            return finish(body(u), u);
        }
        catch (const BudgetExceeded & e) {
            return finish(unknown(e.what()), u);
        }
    }
}

Verdict a_indep(const IndepQuery & q)
{
    return run(q, Relation::alg, [&](LazyCompletion & u) { return alg_on(sides(u, q.a, q.b, q.c, q.stage_budget)); });
}

Verdict i_indep(const IndepQuery & q)
{
    return run(q, Relation::i,
        [&](LazyCompletion & u) { return i_on(u.structure(), sides(u, q.a, q.b, q.c, q.stage_budget)); });
}

Verdict d_indep(const IndepQuery & q)
{
    return run(q, Relation::div, [&](LazyCompletion & u) { return d_on(u, q); });
}

Verdict otimes_check(const IndepQuery & q)
{
    return run(q, Relation::otimes, [&](LazyCompletion & u) { return otimes_on(u, q); });
}

Verdict check_independence(const IndepQuery & q)
{
    switch (q.relation) {
    case Relation::alg: return a_indep(q);
    case Relation::i: return i_indep(q);
    case Relation::div: return d_indep(q);
    case Relation::otimes: break;
    }
    return otimes_check(q);
}

IndepSequence indep_sequence(const Structure & ambient, const std::vector<Id> & b, const IdSet & c, int length,
    Relation relation, int stage_budget)
{
    if (length < 1)
        throw std::invalid_argument("sequence length must be at least 1");
    if (relation != Relation::alg && relation != Relation::i)
        throw std::invalid_argument("sequences are built for the relations a and i");
    LazyCompletion u(ambient);
    IdSet bs = make_set(b);
    auto x = u.closure(set_union(bs, c), stage_budget);
    auto k = u.closure(c, stage_budget);
    if (! x.converged || ! k.converged)
        throw BudgetExceeded("closure of b over C does not converge within " + std::to_string(stage_budget) +
            " stages");

    IndepSequence seq{u.structure().induced(set_union(ambient.elements(), x.set)), {b}, false};
    Structure copy = u.structure().induced(x.set);
    Structure base = u.structure().induced(k.set);
    BaseMap identity;
    for (Id y : k.set)
        identity.emplace_back(y, y);
    for (int i = 1; i < length; ++i) {
        AmalgamResult r = free_amalgam(seq.ambient, copy, base, identity, identity);
        std::map<Id, Id> f(r.from_c.begin(), r.from_c.end());
        std::vector<Id> bi;
        for (Id y : b)
            bi.push_back(f.at(y));
        seq.ambient = std::move(r.structure);
        seq.tuples.push_back(std::move(bi));
    }

    seq.verified = true;
    IdSet earlier;
    for (std::size_t i = 0; i < seq.tuples.size() && seq.verified; ++i) {
        IdSet bi = make_set(seq.tuples[i]);
        if (i > 0) {
            IndepQuery q{seq.ambient, bi, earlier, c, relation, stage_budget};
            seq.verified = check_independence(q).status == IndepStatus::independent;
        }
        earlier = set_union(earlier, bi);
    }
    return seq;
}

}
