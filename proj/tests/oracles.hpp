#pragma once

// Brute-force reference computations used only by tests. Nothing here calls
// into the library's algorithms beyond plain data types.

#include "forestcalc/partition.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using forestcalc::Partition;
using forestcalc::SetMap;
using Relation = std::vector<std::vector<bool>>;

inline Relation relation_of(const Partition& p)
{
    const std::size_t m = p.support_size();
    Relation r(m, std::vector<bool>(m));
    for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y)
            r[x][y] = p.labels()[x] == p.labels()[y];
    return r;
}

// Warshall closure.
inline Relation closure(Relation r)
{
    const std::size_t m = r.size();
    for (std::size_t x = 0; x < m; ++x)
        r[x][x] = true;
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t i = 0; i < m; ++i)
            if (r[i][k])
                for (std::size_t j = 0; j < m; ++j)
                    if (r[k][j])
                        r[i][j] = true;
    return r;
}

inline Partition from_relation(const Relation& r)
{
    const std::size_t m = r.size();
    std::vector<int> labels(m, -1);
    int next = 0;
    for (std::size_t x = 0; x < m; ++x) {
        if (labels[x] >= 0)
            continue;
        for (std::size_t y = x; y < m; ++y)
            if (r[x][y])
                labels[y] = next;
        ++next;
    }
    return Partition::from_labels(labels);
}

inline Partition image(const SetMap& f, const Partition& p)
{
    Relation r(f.target_size(), std::vector<bool>(f.target_size()));
    for (std::size_t x = 0; x < p.support_size(); ++x)
        for (std::size_t y = 0; y < p.support_size(); ++y)
            if (p.labels()[x] == p.labels()[y])
                r[static_cast<std::size_t>(f(x))][static_cast<std::size_t>(f(y))] = true;
    return from_relation(closure(r));
}

inline bool finer_or_equal(const Partition& fine, const Partition& coarse)
{
    for (std::size_t x = 0; x < fine.support_size(); ++x)
        for (std::size_t y = 0; y < fine.support_size(); ++y)
            if (fine.same_block(x, y) && !coarse.same_block(x, y))
                return false;
    return true;
}

inline Partition meet(const Partition& a, const Partition& b)
{
    Relation r = relation_of(a), rb = relation_of(b);
    for (std::size_t x = 0; x < r.size(); ++x)
        for (std::size_t y = 0; y < r.size(); ++y)
            r[x][y] = r[x][y] || rb[x][y];
    return from_relation(closure(r));
}

inline Partition join(const Partition& a, const Partition& b)
{
    Relation r = relation_of(a), rb = relation_of(b);
    for (std::size_t x = 0; x < r.size(); ++x)
        for (std::size_t y = 0; y < r.size(); ++y)
            r[x][y] = r[x][y] && rb[x][y];
    return from_relation(r);
}

/// Every map {0..m-1} -> {0..k-1}.
inline void for_each_map(std::size_t m, std::size_t k, const std::function<void(const SetMap&)>& visit)
{
    if (k == 0) {
        if (m == 0)
            visit(SetMap(0, {}));
        return;
    }
    std::vector<int> v(m, 0);
    for (;;) {
        visit(SetMap(k, v));
        std::size_t i = 0;
        while (i < m && ++v[i] == static_cast<int>(k))
            v[i++] = 0;
        if (i == m)
            return;
    }
}

/// All partitions of {0..m-1} by dedup of all m^m labellings.
inline std::vector<Partition> partitions_by_labellings(std::size_t m)
{
    std::set<Partition> seen;
    for_each_map(m, std::max<std::size_t>(m, 1), [&](const SetMap& f) {
        seen.insert(Partition::from_labels(f.values()));
    });
    if (m == 0)
        return {Partition::from_labels(std::vector<int>{})};
    return {seen.begin(), seen.end()};
}

/// Bell numbers by B(n+1) = sum_k C(n,k) B(k); out[n] = B(n).
inline std::vector<unsigned long long> bell_numbers(std::size_t up_to)
{
    std::vector<unsigned long long> b{1};
    for (std::size_t n = 0; n < up_to; ++n) {
        unsigned long long sum = 0, binom = 1;
        for (std::size_t k = 0; k <= n; ++k) {
            sum += binom * b[k];
            binom = binom * (n - k) / (k + 1);
        }
        b.push_back(sum);
    }
    return b;
}

/// Integer partition counts p(n) by the standard coin-change recurrence.
inline std::vector<unsigned long long> partition_counts(std::size_t up_to)
{
    std::vector<unsigned long long> p(up_to + 1, 0);
    p[0] = 1;
    for (std::size_t part = 1; part <= up_to; ++part)
        for (std::size_t n = part; n <= up_to; ++n)
            p[n] += p[n - part];
    return p;
}

inline unsigned long long factorial(unsigned n)
{
    unsigned long long f = 1;
    for (unsigned i = 2; i <= n; ++i)
        f *= i;
    return f;
}

/// Rank over Q by fraction-exact Gaussian elimination on a small dense matrix.
inline std::size_t rational_rank(std::vector<std::vector<boost::multiprecision::cpp_rational>> a)
{
    std::size_t rank = 0;
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && a[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(a[p], a[rank]);
        for (std::size_t i = 0; i < rows; ++i)
            if (i != rank && a[i][c] != 0) {
                boost::multiprecision::cpp_rational f = a[i][c] / a[rank][c];
                for (std::size_t j = c; j < cols; ++j)
                    a[i][j] -= f * a[rank][j];
            }
        ++rank;
    }
    return rank;
}

/// Strictness from the definition: f^♯: Z^{s'} -> Z^s descends to
/// Z^{s'}/Z^{c'} -> Z^s/Z^c; strict iff that map is onto (rationally) and the
/// excesses agree. Onto means the pulled-back coordinate vectors together
/// with the block indicators span Q^s.
inline bool strict_by_definition(const Partition& source, const Partition& target, const SetMap& f)
{
    const std::size_t s = source.support_size();
    std::vector<std::vector<boost::multiprecision::cpp_rational>> a(s);
    for (std::size_t x = 0; x < s; ++x) {
        for (std::size_t y = 0; y < target.support_size(); ++y)
            a[x].emplace_back(f(x) == static_cast<int>(y) ? 1 : 0);
        for (std::size_t b = 0; b < source.num_blocks(); ++b)
            a[x].emplace_back(source.block_of(x) == static_cast<int>(b) ? 1 : 0);
    }
    return rational_rank(a) == s && source.excess() == target.excess();
}

/// Is the undirected multigraph on `v` vertices with these edges a forest?
/// Checked by repeatedly deleting leaves.
inline bool is_forest(std::size_t v, const std::vector<std::pair<int, int>>& edges)
{
    std::vector<std::multiset<int>> adj(v);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        auto [a, b] = edges[e];
        if (a == b)
            return false;
        adj[static_cast<std::size_t>(a)].insert(b);
        adj[static_cast<std::size_t>(b)].insert(a);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t x = 0; x < v; ++x)
            if (adj[x].size() == 1) {
                int y = *adj[x].begin();
                adj[x].clear();
                adj[static_cast<std::size_t>(y)].erase(adj[static_cast<std::size_t>(y)].find(static_cast<int>(x)));
                changed = true;
            }
    }
    return std::all_of(adj.begin(), adj.end(), [](const auto& n) { return n.empty(); });
}

/// All chains of a poset on {0..n-1}, found by testing every subset for being
/// totally ordered; each chain listed from bottom to top.
inline std::vector<std::vector<int>> all_chains(std::size_t n, const std::function<bool(int, int)>& less)
{
    std::vector<std::vector<int>> out;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<int> members;
        for (std::size_t i = 0; i < n; ++i)
            if ((mask >> i) & 1u)
                members.push_back(static_cast<int>(i));
        bool total = true;
        for (std::size_t a = 0; a < members.size() && total; ++a)
            for (std::size_t b = a + 1; b < members.size() && total; ++b)
                total = less(members[a], members[b]) || less(members[b], members[a]);
        if (!total)
            continue;
        std::sort(members.begin(), members.end(), [&](int a, int b) { return less(a, b); });
        out.push_back(std::move(members));
    }
    return out;
}

/// Betti numbers over Q of the chains of an ordered complex (all simplices
/// given as vertex lists, closed under faces) relative to the subcomplex of
/// simplices satisfying `in_sub`.
inline std::vector<std::size_t> relative_betti(const std::vector<std::vector<int>>& simplices,
                                               const std::function<bool(const std::vector<int>&)>& in_sub)
{
    using Q = boost::multiprecision::cpp_rational;
    std::size_t top = 0;
    std::map<std::vector<int>, std::size_t> index;
    std::vector<std::vector<std::vector<int>>> by_dim;
    for (const auto& s : simplices) {
        if (in_sub(s))
            continue;
        const std::size_t d = s.size() - 1;
        if (by_dim.size() <= d)
            by_dim.resize(d + 1);
        index[s] = by_dim[d].size();
        by_dim[d].push_back(s);
        top = std::max(top, d);
    }
    std::vector<std::size_t> ranks(by_dim.size() + 1, 0);
    for (std::size_t d = 1; d < by_dim.size(); ++d) {
        std::vector<std::vector<Q>> m(by_dim[d - 1].size(), std::vector<Q>(by_dim[d].size()));
        for (std::size_t c = 0; c < by_dim[d].size(); ++c)
            for (std::size_t i = 0; i <= d; ++i) {
                auto f = by_dim[d][c];
                f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
                auto it = index.find(f);
                if (it != index.end() && !in_sub(f))
                    m[it->second][c] += i % 2 ? -1 : 1;
            }
        ranks[d] = m.empty() ? 0 : rational_rank(m);
    }
    std::vector<std::size_t> betti;
    for (std::size_t d = 0; d < by_dim.size(); ++d)
        betti.push_back(by_dim[d].size() - ranks[d] - ranks[d + 1]);
    return betti;
}

} // namespace oracle
