#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <vector>

namespace incidence {

using Id = std::uint32_t;

// Sorted, duplicate-free vector of ids.
using IdSet = std::vector<Id>;

inline IdSet make_set(std::vector<Id> v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

inline bool set_contains(const IdSet & s, Id x)
{
    return std::binary_search(s.begin(), s.end(), x);
}

inline IdSet set_union(const IdSet & a, const IdSet & b)
{
    IdSet r;
    r.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

inline IdSet set_intersection(const IdSet & a, const IdSet & b)
{
    IdSet r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

inline IdSet set_difference(const IdSet & a, const IdSet & b)
{
    IdSet r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

inline bool set_includes(const IdSet & big, const IdSet & small)
{
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

inline std::size_t intersection_size(const IdSet & a, const IdSet & b)
{
    std::size_t n = 0;
    auto i = a.begin(), j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j)
            ++i;
        else if (*j < *i)
            ++j;
        else {
            ++n;
            ++i;
            ++j;
        }
    }
    return n;
}

inline void set_insert(IdSet & s, Id x)
{
    auto it = std::lower_bound(s.begin(), s.end(), x);
    if (it == s.end() || *it != x)
        s.insert(it, x);
}

// Visits every k-subset of pool in colex order (ordered by largest member,
// then next largest, ...). The callback returns false to stop early; the
// function returns false iff it was stopped.
template <typename F>
bool for_each_subset_colex(const std::vector<Id> & pool, std::size_t k, F && f)
{
    const std::size_t n = pool.size();
    if (k > n)
        return true;
    std::vector<std::size_t> c(k);
    for (std::size_t i = 0; i < k; ++i)
        c[i] = i;
    std::vector<Id> subset(k);
    while (true) {
        for (std::size_t i = 0; i < k; ++i)
            subset[i] = pool[c[i]];
        if (! f(static_cast<const std::vector<Id> &>(subset)))
            return false;
        std::size_t i = 0;
        while (i < k && c[i] + 1 == (i + 1 < k ? c[i + 1] : n))
            ++i;
        if (i == k)
            return true;
        ++c[i];
        for (std::size_t j = 0; j < i; ++j)
            c[j] = j;
    }
}

}
