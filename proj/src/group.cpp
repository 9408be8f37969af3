#include "forestcalc/group.hpp"

#include "forestcalc/error.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace forestcalc {

Permutation identity_permutation(std::size_t degree)
{
    Permutation p(degree);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Permutation compose(const Permutation& a, const Permutation& b)
{
    Permutation out(b.size());
    for (std::size_t x = 0; x < b.size(); ++x)
        out[x] = a[static_cast<std::size_t>(b[x])];
    return out;
}

Permutation inverse(const Permutation& p)
{
    Permutation out(p.size());
    for (std::size_t x = 0; x < p.size(); ++x)
        out[static_cast<std::size_t>(p[x])] = static_cast<int>(x);
    return out;
}

bool is_identity(const Permutation& p)
{
    for (std::size_t x = 0; x < p.size(); ++x)
        if (p[x] != static_cast<int>(x))
            return false;
    return true;
}

std::string to_string(const Permutation& p)
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < p.size(); ++i)
        os << (i ? " " : "") << p[i];
    os << ']';
    return os.str();
}

namespace {

void check_degree(std::size_t degree, const std::vector<Permutation>& gens)
{
    for (const auto& g : gens) {
        if (g.size() != degree)
            throw ValidationError("permutation " + to_string(g) + " has degree " + std::to_string(g.size()) + ", expected " +
                                  std::to_string(degree));
        std::vector<bool> seen(degree, false);
        for (int x : g) {
            if (x < 0 || static_cast<std::size_t>(x) >= degree || seen[static_cast<std::size_t>(x)])
                throw ValidationError("not a permutation: " + to_string(g));
            seen[static_cast<std::size_t>(x)] = true;
        }
    }
}

std::uint64_t order_from(std::size_t degree, std::vector<Permutation> gens)
{
    gens.erase(std::remove_if(gens.begin(), gens.end(), [](const Permutation& g) { return is_identity(g); }), gens.end());
    if (gens.empty())
        return 1;
    // least point moved by some generator
    std::size_t base = degree;
    for (const auto& g : gens)
        for (std::size_t x = 0; x < base; ++x)
            if (g[x] != static_cast<int>(x)) {
                base = x;
                break;
            }

    std::map<int, Permutation> transversal{{static_cast<int>(base), identity_permutation(degree)}};
    std::deque<int> queue{static_cast<int>(base)};
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        for (const auto& g : gens) {
            int y = g[static_cast<std::size_t>(x)];
            if (!transversal.count(y)) {
                transversal[y] = compose(g, transversal[x]);
                queue.push_back(y);
            }
        }
    }

    std::set<Permutation> schreier;
    for (const auto& [x, u] : transversal)
        for (const auto& g : gens) {
            Permutation s = compose(inverse(transversal[g[static_cast<std::size_t>(x)]]), compose(g, u));
            if (!is_identity(s))
                schreier.insert(std::move(s));
        }
    return transversal.size() * order_from(degree, {schreier.begin(), schreier.end()});
}

} // namespace

std::uint64_t group_order(std::size_t degree, const std::vector<Permutation>& generators)
{
    check_degree(degree, generators);
    return order_from(degree, generators);
}

std::vector<Permutation> group_elements(std::size_t degree, const std::vector<Permutation>& generators)
{
    check_degree(degree, generators);
    std::set<Permutation> seen{identity_permutation(degree)};
    std::deque<Permutation> queue{identity_permutation(degree)};
    while (!queue.empty()) {
        Permutation p = std::move(queue.front());
        queue.pop_front();
        for (const auto& g : generators) {
            Permutation q = compose(g, p);
            if (seen.insert(q).second)
                queue.push_back(std::move(q));
        }
    }
    return {seen.begin(), seen.end()};
}

GroupPresentation automorphism_group(const Partition& p)
{
    const std::size_t m = p.support_size();
    GroupPresentation g;
    g.degree = m;
    for (const auto& block : p.blocks())
        for (std::size_t k = 0; k + 1 < block.size(); ++k) {
            Permutation t = identity_permutation(m);
            std::swap(t[static_cast<std::size_t>(block[k])], t[static_cast<std::size_t>(block[k + 1])]);
            g.generators.push_back(std::move(t));
        }
    // blocks of equal size, in order of appearance; swap neighbours in that list
    std::map<std::size_t, std::vector<std::size_t>> by_size;
    for (std::size_t b = 0; b < p.num_blocks(); ++b)
        by_size[p.blocks()[b].size()].push_back(b);
    for (const auto& [size, ids] : by_size)
        for (std::size_t k = 0; k + 1 < ids.size(); ++k) {
            Permutation t = identity_permutation(m);
            const auto& a = p.blocks()[ids[k]];
            const auto& b = p.blocks()[ids[k + 1]];
            for (std::size_t e = 0; e < size; ++e) {
                t[static_cast<std::size_t>(a[e])] = b[e];
                t[static_cast<std::size_t>(b[e])] = a[e];
            }
            g.generators.push_back(std::move(t));
        }
    g.order = group_order(m, g.generators);
    return g;
}

} // namespace forestcalc
