#include "forestcalc/verify.hpp"

#include "forestcalc/category.hpp"
#include "forestcalc/fusion.hpp"
#include "forestcalc/homology.hpp"
#include "forestcalc/layers.hpp"
#include "forestcalc/tspace.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace forestcalc {

namespace {

// Stops at the first failure; fail() records it.
struct Sweep {
    CheckOutcome out;

    Sweep(std::string name, std::string statement)
    {
        out.name = std::move(name);
        out.statement = std::move(statement);
    }
    bool failed() const { return !out.pass; }
    void fail(std::string what)
    {
        if (out.pass) {
            out.pass = false;
            out.counterexample = std::move(what);
        }
    }
};

// Every map {0..m-1} -> {0..k-1}; stops when visit returns false.
void for_each_map(std::size_t m, std::size_t k, const std::function<bool(const SetMap&)>& visit)
{
    if (k == 0)
        return;
    std::vector<int> v(m, 0);
    for (;;) {
        if (!visit(SetMap(k, v)))
            return;
        std::size_t i = 0;
        while (i < m && ++v[i] == static_cast<int>(k))
            v[i++] = 0;
        if (i == m)
            return;
    }
}

// Every fusion with source support ≤ max_source and target support ≤ max_target.
void for_each_fusion(std::size_t max_source, std::size_t max_target,
                     const std::function<bool(const PartitionMorphism&)>& visit)
{
    bool go = true;
    for (std::size_t m = 1; m <= max_source && go; ++m) {
        const auto sources = all_partitions(m);
        for (std::size_t k = 1; k <= max_target && go; ++k)
            for_each_map(m, k, [&](const SetMap& f) {
                for (const auto& lambda : sources)
                    if (!visit(PartitionMorphism{lambda, image_partition(f, lambda), f}))
                        return go = false;
                return true;
            });
    }
}

std::string describe(const PartitionMorphism& m)
{
    return m.source.to_string() + " -> " + m.target.to_string() + " by " + m.map.to_string();
}

std::string verdict(bool b)
{
    return b ? "strict" : "not strict";
}

} // namespace

CheckOutcome check_strict_fusion_criteria(std::size_t max_support, Mutation mutation)
{
    Sweep s("strict-fusion-criteria", "excess criterion = H1 criterion = all-strict elementary decomposition");
    bool mutated = false;
    for_each_fusion(max_support, max_support, [&](const PartitionMorphism& m) {
        ++s.out.cases;
        bool by_excess = is_strict_fusion(m);
        if (mutation == Mutation::flip_strictness && !mutated && by_excess && !m.map.is_injective()) {
            by_excess = !by_excess;
            mutated = true;
        }
        const bool by_h1 = strictness_via_h1(m);
        const auto steps = decompose_elementary(m);
        PartitionMorphism acc = PartitionMorphism::identity(m.source);
        bool all_strict = true;
        for (const auto& step : steps) {
            acc = compose(step, acc);
            all_strict = all_strict && is_strict_fusion(step);
        }
        if (acc != m)
            s.fail(describe(m) + ": elementary factors do not compose back to the map");
        else if (by_excess != by_h1)
            s.fail(describe(m) + ": excess says " + verdict(by_excess) + ", H1 says " + verdict(by_h1));
        else if (by_excess != all_strict)
            s.fail(describe(m) + ": excess says " + verdict(by_excess) + ", decomposition says " + verdict(all_strict));
        return !s.failed();
    });
    return s.out;
}

CheckOutcome check_goodness_criteria(std::size_t max_support)
{
    Sweep s("goodness-criteria", "excess definition of goodness = forest pushout graph");
    for (std::size_t m = 1; m <= max_support && !s.failed(); ++m) {
        const auto all = all_partitions(m);
        for (const auto& lambda : all)
            for (const auto& delta : all) {
                ++s.out.cases;
                const bool a = is_good(delta, lambda), b = goodness_via_graph(delta, lambda);
                if (a != b) {
                    s.fail("Δ = " + delta.to_string() + ", Λ = " + lambda.to_string() + ": excess says " +
                           (a ? "good" : "bad") + ", graph says " + (b ? "good" : "bad"));
                    return s.out;
                }
            }
    }
    return s.out;
}

CheckOutcome check_badness_hereditary(std::size_t max_support)
{
    Sweep s("badness-hereditary", "every coarsening of a bad diagonal is bad");
    for (std::size_t m = 1; m <= max_support && !s.failed(); ++m) {
        const auto all = all_partitions(m);
        for (const auto& lambda : all)
            for (const auto& delta : all) {
                if (is_good(delta, lambda))
                    continue;
                for (const auto& coarser : all) {
                    if (!refines(delta, coarser))
                        continue;
                    ++s.out.cases;
                    if (is_good(coarser, lambda)) {
                        s.fail("Λ = " + lambda.to_string() + ": " + delta.to_string() + " is bad but its coarsening " +
                               coarser.to_string() + " is good");
                        return s.out;
                    }
                }
            }
    }
    return s.out;
}

CheckOutcome check_badness_preserved(std::size_t max_support)
{
    Sweep s("badness-preserved", "strict fusions carry bad diagonals to bad diagonals");
    for (std::size_t m = 1; m <= max_support && !s.failed(); ++m) {
        const auto all = all_partitions(m);
        for_each_fusion(m, max_support, [&](const PartitionMorphism& mor) {
            if (mor.source.support_size() != m || !is_strict_fusion(mor))
                return true;
            for (const auto& delta : all) {
                if (is_good(delta, mor.source))
                    continue;
                ++s.out.cases;
                const Partition image = image_partition(mor.map, delta);
                if (is_good(image, mor.target)) {
                    s.fail(describe(mor) + ": bad " + delta.to_string() + " maps to good " + image.to_string());
                    return false;
                }
            }
            return true;
        });
    }
    return s.out;
}

CheckOutcome check_class_counts(std::size_t max_n)
{
    Sweep s("class-counts", "isomorphism classes of the category = integer partitions of n");
    for (std::size_t n = 1; n <= max_n && !s.failed(); ++n) {
        ++s.out.cases;
        const std::size_t expected = integer_partitions(n).size();
        EnumerateOptions eo;
        eo.with_morphisms = false;
        const std::size_t skeletal = enumerate_En(n, eo).size();
        std::set<Partition> classes;
        for (std::size_t m = n + 1; m <= 2 * n; ++m)
            for (const auto& p : all_partitions(m))
                if (p.excess() == n && p.is_irreducible())
                    classes.insert(canonicalize(p));
        if (skeletal != expected || classes.size() != expected)
            s.fail("n = " + std::to_string(n) + ": p(n) = " + std::to_string(expected) + ", skeletal table " +
                   std::to_string(skeletal) + ", filtered set partitions " + std::to_string(classes.size()));
    }
    return s.out;
}

CheckOutcome check_e2_table()
{
    Sweep s("e2-table", "two objects, automorphism orders 8 and 6, 4 gluing patterns (0 1)(2 3) -> (0 1 2), none back");
    const CategoryTable t = enumerate_En(2);
    s.out.cases = 1;
    const int pairs = t.find(Partition::from_blocks(4, {{0, 1}, {2, 3}}));
    const int three = t.find(Partition::from_blocks(3, {{0, 1, 2}}));
    std::ostringstream got;
    if (t.size() != 2 || pairs < 0 || three < 0) {
        got << t.size() << " objects";
        s.fail(got.str());
        return s.out;
    }
    const auto a = static_cast<std::size_t>(pairs), b = static_cast<std::size_t>(three);
    got << "orders " << t.automorphisms[a].order << " and " << t.automorphisms[b].order << ", patterns "
        << gluing_patterns(t, a, b) << ", reverse " << t.hom_size[b][a];
    if (t.automorphisms[a].order != 8 || t.automorphisms[b].order != 6 || gluing_patterns(t, a, b) != 4 ||
        t.hom_size[b][a] != 0 || t.hom_size[a][a] != 8 || t.hom_size[b][b] != 6)
        s.fail(got.str());
    return s.out;
}

CheckOutcome check_composition_closure(std::size_t max_n)
{
    Sweep s("composition-closure", "identities listed, listed maps strict, composites listed");
    for (std::size_t n = 1; n <= max_n && !s.failed(); ++n) {
        const Certificate c = verify_composition_closure(enumerate_En(n));
        s.out.cases += c.checked.size();
        if (!c.pass)
            s.fail("n = " + std::to_string(n) + ": " + (c.witness ? c.witness->reason + " " + c.witness->map.to_string() : ""));
    }
    return s.out;
}

CheckOutcome check_nice_filtration(std::size_t max_n)
{
    Sweep s("nice-filtration", "no morphisms from older strata into new objects; new objects related only by isomorphisms");
    for (std::size_t n = 1; n <= max_n && !s.failed(); ++n) {
        EnumerateOptions eo;
        eo.with_morphisms = n < 5;
        const Certificate c = verify_nice_filtration(enumerate_En(n, eo));
        s.out.cases += c.checked.size();
        if (!c.pass)
            s.fail("n = " + std::to_string(n) + ": " + (c.witness ? c.witness->reason + " " + c.witness->map.to_string() : ""));
    }
    return s.out;
}

namespace {

std::vector<Partition> partitions_up_to(std::size_t max_support, bool skip_discrete)
{
    std::vector<Partition> out;
    for (std::size_t m = 1; m <= max_support; ++m)
        for (auto& p : all_partitions(m))
            if (!(skip_discrete && p.is_discrete()))
                out.push_back(std::move(p));
    return out;
}

} // namespace

CheckOutcome check_tree_space_homology(std::size_t max_support, Execution exec)
{
    Sweep s("tree-space-homology", "reduced homology of T is free of rank prod (|b|-1)! in degree e only");
    const auto lambdas = partitions_up_to(max_support, false);
    const auto results = t_space_homology(lambdas, TreeModel::quotient, Coefficients::integers(), exec);
    for (std::size_t k = 0; k < lambdas.size() && !s.failed(); ++k) {
        ++s.out.cases;
        const auto& h = results[k];
        const int e = static_cast<int>(lambdas[k].excess());
        const std::size_t rank = expected_tree_rank(lambdas[k]);
        bool ok = h.rank(e) == rank && h.torsion(e).empty();
        for (const auto& g : h.groups)
            ok = ok && (g.degree == e || g.is_zero());
        if (!ok)
            s.fail(lambdas[k].to_string() + ": " + h.to_string() + ", expected rank " + std::to_string(rank) +
                   " in degree " + std::to_string(e));
    }
    return s.out;
}

CheckOutcome check_suspension_model(std::size_t max_support, Execution exec)
{
    Sweep s("suspension-model", "quotient and suspension models of T have equal homology");
    const auto lambdas = partitions_up_to(max_support, true);
    const auto q = t_space_homology(lambdas, TreeModel::quotient, Coefficients::integers(), exec);
    const auto p = t_space_homology(lambdas, TreeModel::suspension, Coefficients::integers(), exec);
    for (std::size_t k = 0; k < lambdas.size() && !s.failed(); ++k) {
        ++s.out.cases;
        if (q[k].groups != p[k].groups)
            s.fail(lambdas[k].to_string() + ": quotient " + q[k].to_string() + ", suspension " + p[k].to_string());
    }
    return s.out;
}

CheckOutcome check_tree_functoriality(std::size_t max_n)
{
    Sweep s("tree-functoriality", "every morphism carries boundary chains to boundary chains");
    for (std::size_t n = 1; n <= max_n && !s.failed(); ++n) {
        const CategoryTable t = enumerate_En(n);
        std::vector<TreeSpace> trees;
        for (const auto& p : t.objects)
            trees.push_back(t_space(p));
        for (std::size_t a = 0; a < t.size(); ++a)
            for (std::size_t b = 0; b < t.size(); ++b)
                for (const auto& f : t.hom[a][b]) {
                    ++s.out.cases;
                    if (auto chain = boundary_violation(trees[a], trees[b], f)) {
                        std::string c;
                        for (int x : *chain)
                            c += (c.empty() ? "" : " < ") + trees[a].poset[static_cast<std::size_t>(x)].to_string();
                        s.fail(t.objects[a].to_string() + " -> " + t.objects[b].to_string() + " by " + f.to_string() +
                               ": boundary chain " + c + " leaves the boundary");
                        return s.out;
                    }
                }
    }
    return s.out;
}

namespace {

struct NamedModel {
    std::string name;
    SimplicialSet set;
};

std::vector<NamedModel> reconstruction_models()
{
    return {{"2 points", discrete_points(2)}, {"3 points", discrete_points(3)}, {"circle", minimal_circle()}};
}

} // namespace

CheckOutcome check_fat_diagonal_reconstruction(std::size_t max_n)
{
    Sweep s("fat-diagonal-reconstruction",
            "fat diagonal = bad diagonal glued with lower-stratum powers, embedded, with a free action off it");
    for (const auto& m : reconstruction_models())
        for (std::size_t n = 1; n <= max_n && !s.failed(); ++n)
            for (const auto& c : verify_essentially_cofibrant(m.set, n)) {
                ++s.out.cases;
                if (!c.pass()) {
                    std::ostringstream os;
                    os << "M = " << m.name << ", " << c.lambda.to_string() << ": fat " << c.fat_cells << " cells, union "
                       << c.union_cells << ", colimit " << c.colimit_cells << (c.free ? "" : ", action not free");
                    s.fail(os.str());
                    break;
                }
            }
    return s.out;
}

CheckOutcome check_layer_examples()
{
    Sweep s("layer-examples", "2 points, n = 1: coend and stratum are ~H1 = Z; 3 points: ~H1 = Z^3");
    const auto two = coend(discrete_points(2), 1);
    const auto h2 = homology(two.total, true);
    const auto hs = homology(two.strata[1].at(0).set, true);
    const auto h3 = homology(coend(discrete_points(3), 1).total, true);
    s.out.cases = 3;
    auto circle_rank = [](const HomologyResult& h, std::size_t r) {
        return h.rank(1) == r && h.torsion(1).empty() && h.support() == std::vector<int>{1};
    };
    if (!circle_rank(h2, 1))
        s.fail("two points, coend: " + h2.to_string());
    else if (!circle_rank(hs, 1))
        s.fail("two points, stratum: " + hs.to_string());
    else if (!circle_rank(h3, 3))
        s.fail("three points, coend: " + h3.to_string());
    return s.out;
}

CheckOutcome check_euler_additivity(std::size_t max_n)
{
    Sweep s("euler-additivity", "reduced Euler characteristics of coend stages differ by the strata");
    std::vector<NamedModel> models{{"point", point()}, {"2 points", discrete_points(2)}, {"3 points", discrete_points(3)},
                                   {"circle", minimal_circle()}, {"interval", interval()}};
    for (const auto& m : models)
        for (std::size_t n = 1; n <= max_n && !s.failed(); ++n) {
            const LayerReport r = derivative_report(m.set, n, Coefficients::rationals());
            for (const auto& row : r.additivity) {
                ++s.out.cases;
                if (!row.pass()) {
                    s.fail("M = " + m.name + ", n = " + std::to_string(n) + ", stage " + std::to_string(row.index) +
                           ": stages differ by " + std::to_string(row.stage_difference) + ", strata sum " +
                           std::to_string(row.strata_sum));
                    break;
                }
            }
        }
    return s.out;
}

CheckOutcome check_cube_covers()
{
    Sweep s("cube-covers", "covers give acyclic total cofibers; a wrong corner does not");
    auto expect = [&](const std::string& what, const Cube& cube, bool acyclic) {
        ++s.out.cases;
        const auto cert = total_cofiber_check(cube);
        if (cert.acyclic != acyclic)
            s.fail(what + ": total cofiber " + cert.homology.to_string());
    };
    const Complex path = simplicial_complex(3, {{0, 1}, {1, 2}});
    expect("path", cover_cube(path.set, {subcomplex(path, {{0, 1}}), subcomplex(path, {{1, 2}})}), true);
    const Complex hex = simplicial_complex(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}});
    expect("hexagon, 3 arcs",
           cover_cube(hex.set, {subcomplex(hex, {{0, 1}, {1, 2}, {2, 3}}), subcomplex(hex, {{2, 3}, {3, 4}, {4, 5}}),
                                subcomplex(hex, {{4, 5}, {0, 5}, {0, 1}})}),
           true);
    expect("hexagon, 4 arcs",
           cover_cube(hex.set, {subcomplex(hex, {{0, 1}, {1, 2}}), subcomplex(hex, {{1, 2}, {2, 3}, {3, 4}}),
                                subcomplex(hex, {{3, 4}, {4, 5}}), subcomplex(hex, {{4, 5}, {0, 5}, {0, 1}})}),
           true);
    const Complex disk = simplicial_complex(4, {{0, 1, 3}, {1, 2, 3}, {0, 2, 3}});
    expect("disk, 3 triangles",
           cover_cube(disk.set, {subcomplex(disk, {{0, 1, 3}}), subcomplex(disk, {{1, 2, 3}}), subcomplex(disk, {{0, 2, 3}})}),
           true);
    const Complex x = simplicial_complex(4, {{0, 1}, {1, 2}, {3}});
    Cube wrong = cover_cube(x.set, {subcomplex(x, {{0, 1}, {3}}), subcomplex(x, {{1, 2}, {3}})});
    wrong.corners[0] = subcomplex(x, {{3}});
    expect("wrong corner", wrong, false);
    return s.out;
}

std::vector<CheckOutcome> verify_all(const VerifyOptions& options)
{
    const bool quick = options.level == VerifyLevel::quick;
    const std::size_t support = quick ? 4 : 5;
    const std::size_t trees = quick ? 5 : 6;
    const std::size_t categories = quick ? 3 : 4;
    return {
        check_strict_fusion_criteria(support, options.mutation),
        check_goodness_criteria(support),
        check_badness_hereditary(support),
        check_badness_preserved(std::min<std::size_t>(support, 4)),
        check_class_counts(quick ? 4 : 5),
        check_e2_table(),
        check_composition_closure(categories),
        check_nice_filtration(categories),
        check_tree_space_homology(trees, options.execution),
        check_suspension_model(trees - 1, options.execution),
        check_tree_functoriality(quick ? 2 : 3),
        check_fat_diagonal_reconstruction(2),
        check_layer_examples(),
        check_euler_additivity(quick ? 1 : 2),
        check_cube_covers(),
    };
}

} // namespace forestcalc
