#include "forestcalc/category.hpp"
#include "forestcalc/error.hpp"
#include "forestcalc/group.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

using namespace forestcalc;

namespace {

Partition P(std::size_t m, std::vector<std::vector<int>> blocks)
{
    return Partition::from_blocks(m, blocks);
}

/// ∏ (size!)^mult · mult! over block sizes.
unsigned long long wreath_order(const Partition& p)
{
    std::map<std::size_t, unsigned> mult;
    for (auto s : p.block_sizes())
        ++mult[s];
    unsigned long long order = 1;
    for (auto [size, k] : mult) {
        for (unsigned i = 0; i < k; ++i)
            order *= oracle::factorial(static_cast<unsigned>(size));
        order *= oracle::factorial(k);
    }
    return order;
}

/// Counts permutations σ with σ(Λ) = Λ by trying all of them.
std::size_t brute_automorphisms(const Partition& p)
{
    Permutation sigma = identity_permutation(p.support_size());
    std::size_t count = 0;
    do {
        if (image_partition(SetMap(p.support_size(), sigma), p) == p)
            ++count;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return count;
}

std::size_t index_of(const CategoryTable& t, std::size_t m, std::vector<std::vector<int>> blocks)
{
    int i = t.find(P(m, blocks));
    REQUIRE(i >= 0);
    return static_cast<std::size_t>(i);
}

} // namespace

TEST_CASE("automorphism group orders")
{
    CHECK(automorphism_group(P(4, {{0, 1}, {2, 3}})).order == 8);
    CHECK(automorphism_group(Partition::indiscrete(3)).order == 6);
    CHECK(automorphism_group(P(6, {{0, 1}, {2, 3}, {4, 5}})).order == 48);
    for (unsigned k = 1; k <= 7; ++k)
        CHECK(automorphism_group(Partition::discrete(k)).order == oracle::factorial(k));

    for (std::size_t m = 1; m <= 6; ++m)
        for (const auto& p : all_partitions(m)) {
            auto g = automorphism_group(p);
            CHECK(g.order == wreath_order(p));
            auto elements = g.elements();
            CHECK(elements.size() == g.order);
            if (m <= 5)
                CHECK(elements.size() == brute_automorphisms(p));
            for (const auto& sigma : elements)
                CHECK(image_partition(SetMap(m, sigma), p) == p);
        }
}

TEST_CASE("group order by orbit-stabilizer matches closure")
{
    // S_5 from a transposition and a 5-cycle; dihedral group of the square
    CHECK(group_order(5, {{1, 0, 2, 3, 4}, {1, 2, 3, 4, 0}}) == 120);
    CHECK(group_order(4, {{1, 2, 3, 0}, {3, 2, 1, 0}}) == 8);
    CHECK(group_elements(4, {{1, 2, 3, 0}, {3, 2, 1, 0}}).size() == 8);
    CHECK(group_order(3, {}) == 1);
    CHECK_THROWS_AS(group_order(3, {{0, 0, 1}}), ValidationError);
    Permutation p{2, 0, 1};
    CHECK(is_identity(compose(p, inverse(p))));
    CHECK(to_string(p) == "[2 0 1]");
}

TEST_CASE("the category for n = 1")
{
    auto t = enumerate_En(1);
    REQUIRE(t.size() == 1);
    CHECK(t.objects[0] == Partition::indiscrete(2));
    CHECK(t.automorphisms[0].order == 2);
    CHECK(t.hom[0][0].size() == 2);
    for (const auto& f : t.hom[0][0])
        CHECK(f.is_bijective());
}

TEST_CASE("the category for n = 2")
{
    auto t = enumerate_En(2);
    REQUIRE(t.size() == 2);
    auto three = index_of(t, 3, {{0, 1, 2}});
    auto pairs = index_of(t, 4, {{0, 1}, {2, 3}});
    CHECK(t.stratum(three) == 1);
    CHECK(t.stratum(pairs) == 2);
    CHECK(t.automorphisms[pairs].order == 8);
    CHECK(t.automorphisms[three].order == 6);
    CHECK(t.hom[pairs][pairs].size() == 8);
    CHECK(t.hom[three][three].size() == 6);
    // 4 ways to glue a point of one block to a point of the other; each
    // followed by any of the 6 relabellings of the target
    CHECK(gluing_patterns(t, pairs, three) == 4);
    CHECK(t.hom[pairs][three].size() == 4 * 6);
    CHECK(t.hom[three][pairs].empty());
}

TEST_CASE("the category for n = 3 and class counts")
{
    auto t = enumerate_En(3);
    REQUIRE(t.size() == 3);
    std::set<std::vector<std::size_t>> sizes;
    for (const auto& p : t.objects)
        sizes.insert(p.block_sizes());
    CHECK(sizes == std::set<std::vector<std::size_t>>{{4}, {3, 2}, {2, 2, 2}});

    auto counts = oracle::partition_counts(5);
    for (std::size_t n = 1; n <= 5; ++n) {
        auto table = enumerate_En(n, {.with_morphisms = n < 5});
        CHECK(table.size() == counts[n]);
        for (std::size_t a = 0; a < table.size(); ++a) {
            CHECK(table.objects[a].is_irreducible());
            CHECK(table.objects[a].excess() == n);
            CHECK(table.objects[a].support_size() >= n + 1);
            CHECK(table.objects[a].support_size() <= 2 * n);
            CHECK(table.hom_size[a][a] == table.automorphisms[a].order);
        }
    }
    CHECK_THROWS_AS(enumerate_En(6), CapExceeded);
    CHECK_THROWS_AS(enumerate_En(0), ValidationError);
}

TEST_CASE("skeletal enumeration matches the brute-force enumerator")
{
    for (std::size_t n = 1; n <= 3; ++n) {
        auto fast = enumerate_En(n);
        auto slow = enumerate_En_brute(n);
        CHECK(fast.objects == slow.objects);
        CHECK(fast.hom == slow.hom);
    }
    auto fast_full = enumerate_En(2, {.full = true});
    auto slow_full = enumerate_En_brute(2, true);
    CHECK(fast_full.objects == slow_full.objects);
    CHECK(fast_full.hom == slow_full.hom);
}

TEST_CASE("full enumeration has p(n) isomorphism classes")
{
    auto counts = oracle::partition_counts(5);
    for (std::size_t n = 1; n <= 5; ++n) {
        // filter every set partition directly; classes are block-size multisets
        std::set<std::vector<std::size_t>> classes;
        std::size_t objects = 0;
        for (std::size_t m = n + 1; m <= 2 * n; ++m)
            for (const auto& p : all_partitions(m))
                if (p.excess() == n && p.is_irreducible()) {
                    classes.insert(p.block_sizes());
                    ++objects;
                }
        CHECK(classes.size() == counts[n]);
        CHECK(classes.size() == enumerate_En(n, {.with_morphisms = false}).size());
        if (n <= 3) {
            auto full = enumerate_En(n, {.full = true});
            CHECK(full.size() == objects);
            std::set<Partition> canon;
            for (const auto& p : full.objects)
                canon.insert(canonicalize(p));
            CHECK(canon.size() == counts[n]);
        }
    }
}

TEST_CASE("serial and parallel enumeration agree")
{
    for (std::size_t n = 1; n <= 4; ++n) {
        auto a = enumerate_En(n, {.execution = Execution::serial});
        auto b = enumerate_En(n, {.execution = Execution::parallel});
        CHECK(a.objects == b.objects);
        CHECK(a.hom == b.hom);
    }
}

TEST_CASE("filtration")
{
    auto e2 = enumerate_En(2);
    auto first = filtration(e2, 1);
    REQUIRE(first.size() == 1);
    CHECK(first.objects[0] == Partition::indiscrete(3));
    CHECK(first.hom[0][0].size() == 6);
    auto second = filtration(e2, 2);
    CHECK(second.objects == e2.objects);
    CHECK(second.hom == e2.hom);
    CHECK_THROWS_AS(filtration(e2, 0), ValidationError);
    CHECK_THROWS_AS(filtration(e2, 3), ValidationError);

    auto e3 = enumerate_En(3);
    auto top = filtration(e3, 3), below = filtration(e3, 2);
    std::vector<Partition> fresh;
    for (const auto& p : top.objects)
        if (below.find(p) < 0)
            fresh.push_back(p);
    REQUIRE(fresh.size() == 1);
    CHECK(fresh[0] == P(6, {{0, 1}, {2, 3}, {4, 5}}));
    CHECK(automorphism_group(fresh[0]).order == 48);
}

TEST_CASE("nice filtration and composition closure")
{
    for (std::size_t n = 1; n <= 4; ++n) {
        auto t = enumerate_En(n);
        auto nice = verify_nice_filtration(t);
        CHECK(nice.pass);
        CHECK(nice.checked.size() == n + 1);
        CHECK(verify_composition_closure(t).pass);
    }
    CHECK(verify_composition_closure(enumerate_En(2, {.full = true})).pass);
    CHECK(verify_nice_filtration(enumerate_En(1)).pass);
}

TEST_CASE("nice filtration rejects an injected backward morphism")
{
    auto t = enumerate_En(2);
    auto three = static_cast<std::size_t>(t.find(Partition::indiscrete(3)));
    auto pairs = static_cast<std::size_t>(t.find(P(4, {{0, 1}, {2, 3}})));
    t.hom[three][pairs].push_back(SetMap(4, {0, 1, 2}));
    auto cert = verify_nice_filtration(t);
    CHECK_FALSE(cert.pass);
    REQUIRE(cert.witness);
    CHECK(cert.witness->source == three);
    CHECK(cert.witness->target == pairs);

    auto u = enumerate_En(2);
    u.hom[pairs][pairs].push_back(SetMap(4, {0, 0, 2, 3}));
    auto cert2 = verify_nice_filtration(u);
    CHECK_FALSE(cert2.pass);
    CHECK(cert2.witness->reason.find("non-invertible") != std::string::npos);
    CHECK_FALSE(verify_composition_closure(u).pass);
}

TEST_CASE("counting without storing morphisms")
{
    for (std::size_t n = 1; n <= 4; ++n) {
        auto stored = enumerate_En(n);
        auto counted = enumerate_En(n, {.with_morphisms = false});
        CHECK_FALSE(counted.has_morphisms);
        CHECK(counted.objects == stored.objects);
        CHECK(counted.hom_size == stored.hom_size);
        CHECK(counted.kernels == stored.kernels);
        CHECK(counted.total_morphisms() == stored.total_morphisms());
        CHECK(verify_nice_filtration(counted).pass);
        CHECK_THROWS_AS(verify_composition_closure(counted), PreconditionError);
        for (std::size_t a = 0; a < stored.size(); ++a)
            for (std::size_t b = 0; b < stored.size(); ++b) {
                CHECK(stored.hom_size[a][b] == stored.hom[a][b].size());
                CHECK(counted.hom[a][b].empty());
            }
    }
    auto brute = enumerate_En_brute(3);
    CHECK(brute.hom_size == enumerate_En(3).hom_size);
    CHECK(brute.kernels == enumerate_En(3).kernels);
    CHECK(enumerate_En(3).total_morphisms() == 1140);
    CHECK(enumerate_En(4).total_morphisms() == 69528);

    auto five = enumerate_En(5, {.with_morphisms = false});
    CHECK(five.total_morphisms() == 6610512);
    CHECK(verify_nice_filtration(five).pass);
}
