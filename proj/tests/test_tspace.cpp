#include "forestcalc/category.hpp"
#include "forestcalc/error.hpp"
#include "forestcalc/tspace.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace forestcalc;

namespace {

Partition P(std::size_t m, std::vector<std::vector<int>> blocks)
{
    return Partition::from_blocks(m, blocks);
}

std::vector<Partition> partitions_up_to(std::size_t m)
{
    std::vector<Partition> out;
    for (std::size_t k = 1; k <= m; ++k)
        for (auto& p : all_partitions(k))
            out.push_back(std::move(p));
    return out;
}

} // namespace

TEST_CASE("nerves of small posets")
{
    PosetTable chain = refinement_poset(Partition::indiscrete(2));
    auto two = nerve(chain);
    CHECK(two.set.census() == std::vector<std::size_t>{2, 1});

    PosetTable p3 = refinement_poset(Partition::indiscrete(3));
    auto n3 = nerve(p3);
    n3.set.validate();
    // three maximal chains through the three two-block partitions, all
    // sharing the edge from bottom to top
    CHECK(n3.set.census() == std::vector<std::size_t>{5, 7, 3});

    // counts against chains found by testing every subset
    for (const auto& root : partitions_up_to(4)) {
        PosetTable poset = refinement_poset(root);
        auto chains = oracle::all_chains(poset.size(), [&](int a, int b) {
            return a != b && oracle::finer_or_equal(poset[static_cast<std::size_t>(b)], poset[static_cast<std::size_t>(a)]);
        });
        std::vector<std::size_t> counts;
        for (const auto& c : chains) {
            if (counts.size() < c.size())
                counts.resize(c.size());
            ++counts[c.size() - 1];
        }
        auto k = nerve(poset);
        CHECK(k.set.census() == counts);
        // a poset with a minimum has a contractible nerve
        CHECK(homology(k.set, true).is_zero());
    }
    CHECK_THROWS_AS(nerve(refinement_poset(Partition::indiscrete(6)), 100), CapExceeded);
}

TEST_CASE("boundary parts")
{
    auto b2 = boundary_part(refinement_poset(Partition::indiscrete(2)));
    CHECK(b2.set.census() == std::vector<std::size_t>{2});

    // all chains through a middle element, minus the long edge: the
    // suspension of three points
    auto b3 = boundary_part(refinement_poset(Partition::indiscrete(3)));
    CHECK(b3.set.census() == std::vector<std::size_t>{5, 6});
    auto h = homology(b3.set, true);
    CHECK(h.rank(1) == 2);
    CHECK(h.support() == std::vector<int>{1});

    auto single = refinement_poset(Partition::discrete(3));
    auto k = nerve(single);
    CHECK(cell_count(boundary_cells(single, k)) == 0);

    for (const auto& root : partitions_up_to(4)) {
        PosetTable poset = refinement_poset(root);
        auto k4 = nerve(poset);
        auto bd = boundary_cells(poset, k4);
        CHECK(is_subobject(k4.set, bd));
    }
}

TEST_CASE("tree spaces: examples")
{
    auto t2 = t_space(Partition::indiscrete(2));
    t2.set().validate();
    auto h2 = homology(t2.set(), true);
    CHECK(h2.rank(1) == 1);
    CHECK(h2.support() == std::vector<int>{1});

    auto h3 = homology(t_space(Partition::indiscrete(3)).set(), true);
    CHECK(h3.rank(2) == 2);
    CHECK(h3.support() == std::vector<int>{2});
    CHECK(h3.torsion(2).empty());

    auto h22 = homology(t_space(P(4, {{0, 1}, {2, 3}})).set(), true);
    CHECK(h22.rank(2) == 1);
    CHECK(h22.support() == std::vector<int>{2});

    // T of a product partition is the smash of the factors: ranks multiply
    auto h32 = homology(t_space(P(5, {{0, 1, 2}, {3, 4}})).set(), true);
    CHECK(h32.rank(3) == 2);

    // discrete: T is S^0
    auto h0 = homology(t_space(Partition::discrete(3)).set(), true);
    CHECK(h0.rank(0) == 1);
    CHECK(h0.support() == std::vector<int>{0});

    CHECK_THROWS_AS(t_space(Partition::indiscrete(8)), CapExceeded);
}

TEST_CASE("tree spaces are wedges of top-dimensional spheres")
{
    for (std::size_t n = 2; n <= 5; ++n) {
        auto h = homology(t_space(Partition::indiscrete(n)).set(), true);
        CHECK(h.rank(static_cast<int>(n) - 1) == oracle::factorial(static_cast<unsigned>(n - 1)));
        CHECK(h.support() == std::vector<int>{static_cast<int>(n) - 1});
    }
    auto lambdas = partitions_up_to(6);
    auto results = t_space_homology(lambdas, TreeModel::quotient, Coefficients::integers());
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        const auto& h = results[i];
        const int e = static_cast<int>(lambdas[i].excess());
        CHECK(h.rank(e) == expected_tree_rank(lambdas[i]));
        CHECK(h.support() == std::vector<int>{e});
        CHECK(h.torsion(e).empty());
    }
}

TEST_CASE("tree-space homology agrees with the relative-chain oracle")
{
    for (const auto& lambda : partitions_up_to(4)) {
        auto t = t_space(lambda);
        std::vector<std::vector<int>> chains;
        for (const auto& level : t.nerve.simplices)
            chains.insert(chains.end(), level.begin(), level.end());
        const int lo = 0, hi = static_cast<int>(t.poset.size()) - 1;
        auto betti = oracle::relative_betti(chains, [&](const std::vector<int>& c) {
            if (lo == hi)
                return false;
            return std::find(c.begin(), c.end(), lo) == c.end() || std::find(c.begin(), c.end(), hi) == c.end();
        });
        // relative homology of (nerve, boundary) is the reduced homology of the quotient
        auto h = homology(t.set(), true, Coefficients::rationals());
        for (std::size_t d = 0; d < betti.size(); ++d)
            CHECK(h.rank(static_cast<int>(d)) == betti[d]);
        CHECK(h.euler_characteristic() == euler_characteristic(t.set()) - 1);
    }
}

TEST_CASE("suspension model matches the quotient model")
{
    auto s2 = t_space_suspension_model(Partition::indiscrete(2));
    s2.set().validate();
    CHECK(homology(s2.set(), true).rank(1) == 1);
    CHECK(homology(t_space_suspension_model(Partition::indiscrete(3)).set(), true).rank(2) == 2);
    CHECK(homology(t_space_suspension_model(Partition::indiscrete(4)).set(), true).rank(3) == 6);
    CHECK_THROWS_AS(t_space_suspension_model(Partition::discrete(2)), PreconditionError);

    std::vector<Partition> lambdas;
    for (const auto& p : partitions_up_to(5))
        if (!p.is_discrete())
            lambdas.push_back(p);
    auto a = t_space_homology(lambdas, TreeModel::quotient, Coefficients::integers());
    auto b = t_space_homology(lambdas, TreeModel::suspension, Coefficients::integers());
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        CHECK(a[i] == b[i]);
}

TEST_CASE("serial and parallel tree-space batches agree")
{
    auto lambdas = partitions_up_to(5);
    for (auto coeff : {Coefficients::integers(), Coefficients::rationals(), Coefficients::prime_field(3)}) {
        auto a = t_space_homology(lambdas, TreeModel::quotient, coeff, Execution::serial);
        auto b = t_space_homology(lambdas, TreeModel::quotient, coeff, Execution::parallel);
        CHECK(a == b);
    }
}

TEST_CASE("strict fusions carry boundary chains to boundary chains")
{
    for (std::size_t n = 1; n <= 3; ++n) {
        auto table = enumerate_En(n);
        std::vector<TreeSpace> spaces;
        for (const auto& p : table.objects)
            spaces.push_back(t_space(p));
        for (std::size_t a = 0; a < table.size(); ++a)
            for (std::size_t b = 0; b < table.size(); ++b)
                for (const auto& f : table.hom[a][b]) {
                    CHECK_FALSE(boundary_violation(spaces[a], spaces[b], f));
                    SimplicialMap nm = nerve_map(spaces[a], spaces[b], f);
                    validate_map(spaces[a].nerve.set, spaces[b].nerve.set, nm);
                    SimplicialMap tm = t_space_map(spaces[a], spaces[b], f);
                    validate_map(spaces[a].set(), spaces[b].set(), tm);
                }
    }
    auto full = enumerate_En(2, {.full = true});
    for (std::size_t a = 0; a < full.size(); ++a)
        for (std::size_t b = 0; b < full.size(); ++b)
            for (const auto& f : full.hom[a][b])
                CHECK_FALSE(boundary_violation(t_space(full.objects[a]), t_space(full.objects[b]), f));
}

TEST_CASE("a non-strict fusion breaks the boundary")
{
    auto source = t_space(P(4, {{0, 1}, {2, 3}}));
    auto target = t_space(Partition::indiscrete(2));
    SetMap f(2, {0, 1, 0, 1});
    auto bad = boundary_violation(source, target, f);
    REQUIRE(bad);
    CHECK_THROWS_AS(t_space_map(source, target, f), ValidationError);
    CHECK_THROWS_AS(nerve_map(source, target, SetMap(2, {0, 0, 1, 1})), PreconditionError);
}
