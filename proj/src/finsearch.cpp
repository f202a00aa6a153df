#include <incidence/finsearch.hpp>

#include <mutex>

namespace incidence {

const char * search_status_name(SearchStatus s)
{
    switch (s) {
    case SearchStatus::found:
        return "FOUND";
    case SearchStatus::none:
        return "NONE";
    case SearchStatus::unknown:
        break;
    }
    return "UNKNOWN";
}

namespace {
    struct PlaneSearch {
        int q, npts, k;
        std::size_t budget;
        std::size_t nodes = 0;
        bool exhausted = false;
        bool find_all = false;
        std::vector<std::vector<bool>> covered;
        std::vector<std::vector<int>> lines;
        std::vector<std::vector<std::vector<int>>> found;

        PlaneSearch(int order, std::size_t node_budget) :
            q(order), npts(order * order + order + 1), k(order + 1), budget(node_budget),
            covered(npts, std::vector<bool>(npts, false))
        {
        }

        void cover(const std::vector<int> & line, bool on)
        {
            for (std::size_t i = 0; i < line.size(); ++i)
                for (std::size_t j = i + 1; j < line.size(); ++j)
                    covered[line[i]][line[j]] = covered[line[j]][line[i]] = on;
        }

        // Returns true to stop the whole search.
        bool extend()
        {
            if (static_cast<int>(lines.size()) == npts) {
                found.push_back(lines);
                return ! find_all;
            }
            int p = -1, j = -1;
            for (int x = 0; x < npts && p < 0; ++x)
                for (int y = 0; y < npts; ++y)
                    if (y != x && ! covered[x][y]) {
                        p = x;
                        j = y;
                        break;
                    }
            if (p < 0)
                return false;
            std::vector<int> line{p, j};
            return fill(line, j + 1);
        }

        bool fill(std::vector<int> & line, int from)
        {
            if (++nodes > budget) {
                exhausted = true;
                return true;
            }
            if (static_cast<int>(line.size()) == k) {
                std::vector<int> sorted = line;
                std::sort(sorted.begin(), sorted.end());
                cover(sorted, true);
                lines.push_back(sorted);
                bool stop = extend();
                lines.pop_back();
                cover(sorted, false);
                return stop;
            }
            for (int x = from; x < npts; ++x) {
                bool ok = true;
                for (int y : line)
                    if (covered[x][y]) {
                        ok = false;
                        break;
                    }
                if (! ok)
                    continue;
                line.push_back(x);
                bool stop = fill(line, x + 1);
                line.pop_back();
                if (stop)
                    return true;
            }
            return false;
        }

        void run()
        {
            std::vector<int> first(k);
            for (int i = 0; i < k; ++i)
                first[i] = i;
            cover(first, true);
            lines.push_back(first);
            extend();
        }

        Structure build(const std::vector<std::vector<int>> & ls) const
        {
            Structure s({2, 2});
            for (int i = 0; i < npts; ++i)
                s.add_point("p" + std::to_string(i));
            for (std::size_t i = 0; i < ls.size(); ++i) {
                Id l = s.add_line("l" + std::to_string(i));
                for (int x : ls[i])
                    s.add_incidence(static_cast<Id>(x), l, false);
            }
            return s;
        }
    };

    std::mutex cache_mutex;
    std::map<int, Structure> plane_cache;
}

PlaneResult find_projective_plane(int order, std::size_t node_budget)
{
    if (order < 1)
        throw std::invalid_argument("plane order must be at least 1");
    {
        std::lock_guard lock(cache_mutex);
        if (auto it = plane_cache.find(order); it != plane_cache.end())
            return {SearchStatus::found, it->second, 0};
    }
    PlaneSearch ps(order, node_budget);
    ps.run();
    PlaneResult r;
    r.nodes = ps.nodes;
    if (! ps.found.empty()) {
        r.status = SearchStatus::found;
        r.plane = ps.build(ps.found.front());
        if (order <= 3) {
            std::lock_guard lock(cache_mutex);
            plane_cache.emplace(order, *r.plane);
        }
    }
    else
        r.status = ps.exhausted ? SearchStatus::unknown : SearchStatus::none;
    return r;
}

PlaneEnumeration enumerate_projective_planes(int order, std::size_t node_budget)
{
    if (order < 1)
        throw std::invalid_argument("plane order must be at least 1");
    PlaneSearch ps(order, node_budget);
    ps.find_all = true;
    ps.run();
    PlaneEnumeration e;
    e.nodes = ps.nodes;
    e.complete = ! ps.exhausted;
    for (auto & ls : ps.found)
        e.planes.push_back(ps.build(ls));
    return e;
}

namespace {
    struct EmbedSearch {
        const Structure & a;
        const Structure & t;
        std::size_t budget;
        std::size_t nodes = 0;
        bool exhausted = false;
        std::vector<Id> order;
        std::vector<std::optional<Id>> image;
        std::vector<bool> used;

        EmbedSearch(const Structure & src, const Structure & dst, std::size_t b) :
            a(src), t(dst), budget(b), image(src.id_bound()), used(dst.id_bound(), false)
        {
            // Connected elements first: each next element has the most
            // already ordered neighbours, ties by id.
            IdSet left = a.elements();
            std::vector<int> placed_nbrs(a.id_bound(), 0);
            while (! left.empty()) {
                Id best = left.front();
                for (Id x : left)
                    if (placed_nbrs[x] > placed_nbrs[best])
                        best = x;
                order.push_back(best);
                left.erase(std::find(left.begin(), left.end(), best));
                for (Id y : a.neighbors(best))
                    ++placed_nbrs[y];
            }
        }

        bool fits(Id x, Id y) const
        {
            if (t.sort(y) != a.sort(x) || used[y])
                return false;
            for (Id z : order) {
                if (! image[z] || a.sort(z) == a.sort(x))
                    continue;
                if (a.incident(x, z) != t.incident(y, *image[z]))
                    return false;
            }
            return true;
        }

        bool search(std::size_t i)
        {
            if (i == order.size())
                return true;
            Id x = order[i];
            const IdSet & pool = a.is_point(x) ? t.points() : t.lines();
            for (Id y : pool) {
                if (! fits(x, y))
                    continue;
                if (++nodes > budget) {
                    exhausted = true;
                    return false;
                }
                image[x] = y;
                used[y] = true;
                if (search(i + 1))
                    return true;
                image[x].reset();
                used[y] = false;
                if (exhausted)
                    return false;
            }
            return false;
        }
    };
}

EmbedResult embed_into(const Structure & a, const Structure & target, std::size_t node_budget)
{
    EmbedSearch es(a, target, node_budget);
    EmbedResult r;
    bool ok = es.search(0);
    r.nodes = es.nodes;
    if (ok) {
        r.status = SearchStatus::found;
        r.target = target;
        for (Id x : a.elements())
            r.map.emplace_back(x, *es.image[x]);
    }
    else
        r.status = es.exhausted ? SearchStatus::unknown : SearchStatus::none;
    return r;
}

EmbedResult embed_in_finite_plane(const Structure & a, int order, std::size_t node_budget)
{
    if (a.params() != Params{2, 2})
        throw std::invalid_argument("plane embedding needs parameters (2,2)");
    if (find_biclique(a))
        throw std::invalid_argument("input is not K_{2,2}-free");
    PlaneResult p = find_projective_plane(order, node_budget);
    if (p.status != SearchStatus::found) {
        EmbedResult r;
        r.status = p.status;
        r.nodes = p.nodes;
        return r;
    }
    EmbedResult r = embed_into(a, *p.plane, node_budget);
    r.nodes += p.nodes;
    r.route = "plane of order " + std::to_string(order);
    return r;
}

EmbedResult embed_search_general(const Structure & a, std::size_t max_elements, std::size_t node_budget)
{
    if (find_biclique(a))
        throw std::invalid_argument("input is not K_{m,n}-free");
    EmbedResult r;
    bool budget_hit = false;

    CompletionStage st = initial_stage(a);
    while (st.structure.size() <= max_elements) {
        if (satisfies_complete(st.structure).pass) {
            r.status = SearchStatus::found;
            r.target = st.structure;
            for (Id x : a.elements())
                r.map.emplace_back(x, x);
            r.route = "free completion after " + std::to_string(st.k) + " stages";
            return r;
        }
        st = complete_step(st);
        if (st.fixpoint)
            break;
    }

    if (a.params() == Params{2, 2}) {
        for (int q = 1; static_cast<std::size_t>(2 * (q * q + q + 1)) <= max_elements; ++q) {
            EmbedResult e = embed_in_finite_plane(a, q, node_budget);
            if (e.status == SearchStatus::found)
                return e;
            if (e.status == SearchStatus::unknown)
                budget_hit = true;
        }
    }
    else
        budget_hit = true;
    r.status = budget_hit ? SearchStatus::unknown : SearchStatus::none;
    return r;
}

}
