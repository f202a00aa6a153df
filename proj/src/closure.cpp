#include <incidence/closure.hpp>

namespace incidence {

const char * tri_name(Tri t)
{
    switch (t) {
    case Tri::yes: return "YES";
    case Tri::no: return "NO";
    case Tri::unknown: break;
    }
    return "UNKNOWN";
}

IdSet forced_by(const Structure & s, const IdSet & a)
{
    const auto [m, n] = s.params();
    std::vector<std::size_t> hits(s.id_bound(), 0);
    IdSet out;
    for (Id x : a)
        for (Id y : s.neighbors(x)) {
            if (set_contains(a, y))
                continue;
            auto need = static_cast<std::size_t>(s.is_line(y) ? m : n);
            if (++hits[y] == need)
                out.push_back(y);
        }
    return make_set(std::move(out));
}

ClosureStages closure_stages(const Structure & s, const IdSet & seed, int stage_budget)
{
    for (Id x : seed)
        if (! s.contains(x))
            throw std::invalid_argument("seed element " + std::to_string(x) + " is not in the structure");
    ClosureStages r;
    r.stages.push_back(make_set(seed));
    for (int t = 0; t < stage_budget; ++t) {
        IdSet more = forced_by(s, r.last());
        if (more.empty()) {
            r.converged = true;
            break;
        }
        r.stages.push_back(set_union(r.last(), more));
    }
    return r;
}

ClosureResult i_closure(const Structure & s, const IdSet & seed, int stage_budget)
{
    auto st = closure_stages(s, seed, stage_budget);
    return {st.last(), st.converged};
}

ClosedReport is_i_closed(const Structure & s, const IdSet & a)
{
    IdSet more = forced_by(s, make_set(a));
    if (more.empty())
        return {};
    return {false, more.front()};
}

GenerationReport generates(const Structure & s, const IdSet & a, int stage_budget)
{
    auto st = closure_stages(s, a, stage_budget);
    GenerationReport r;
    r.closure = st.last();
    if (r.closure.size() == s.size())
        r.verdict = Tri::yes;
    else if (st.converged)
        r.verdict = Tri::no;
    return r;
}

}
