#include "forestcalc/error.hpp"
#include "forestcalc/homology.hpp"
#include "forestcalc/simplicial.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace forestcalc;

namespace {

const std::vector<std::vector<int>> rp2_facets{{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                               {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {1, 3, 5}, {2, 4, 5}};

void check_euler(const SimplicialSet& x)
{
    auto h = homology(x, false);
    CHECK(h.euler_characteristic() == euler_characteristic(x));
    CHECK(normalized_chains(x, true).squares_to_zero());
}

/// Swap of the two coordinates of a product X×X.
SimplicialMap swap_factors(const Product& p)
{
    return map_of_products(p, p, [](const std::vector<Simplex>& t) { return std::vector<Simplex>{t[1], t[0]}; });
}

/// Cells of X×X whose two coordinates agree.
CellSet diagonal(const Product& p)
{
    CellSet s;
    for (const auto& level : p.factors) {
        s.emplace_back();
        for (const auto& t : level)
            s.back().push_back(t[0] == t[1]);
    }
    return s;
}

} // namespace

TEST_CASE("simplex operators")
{
    SimplicialSet s = standard_simplex(2);
    Simplex top = Simplex::of_cell(0, 2);
    CHECK(s.vertex(top, 0) == 0);
    CHECK(s.vertex(top, 2) == 2);
    Simplex deg = degeneracy(top, 1);
    CHECK(deg.sigma == std::vector<int>{0, 1, 1, 2});
    CHECK_FALSE(deg.is_nondegenerate());
    // d_i s_i = d_{i+1} s_i = id
    CHECK(s.face(deg, 1) == top);
    CHECK(s.face(deg, 2) == top);
    // d_0 s_1 = s_0 d_0
    CHECK(s.face(deg, 0) == degeneracy(s.face(top, 0), 0));
    CHECK(compose_surjections({0, 0, 1}, {0, 1, 1, 2}) == std::vector<int>{0, 0, 0, 1});
    s.validate();
}

TEST_CASE("malformed face data is rejected")
{
    SimplicialSet x;
    x.add_vertex();
    CHECK_THROWS_AS(x.add_cell({Simplex::of_cell(0, 0)}), ValidationError);
    CHECK_THROWS_AS(x.add_cell({Simplex::of_cell(3, 0), Simplex::of_cell(0, 0)}), ValidationError);
    CHECK_THROWS_AS(x.add_cell({Simplex::of_cell(0, 1), Simplex::of_cell(0, 0)}), ValidationError);

    // a 2-cell whose faces do not fit together
    SimplicialSet y = simplicial_complex(4, {{0, 1}, {1, 2}, {2, 3}, {0, 2}}).set;
    y.add_cell({Simplex::of_cell(1, 1), Simplex::of_cell(3, 1), Simplex::of_cell(2, 1)});
    CHECK_THROWS_AS(y.validate(), ValidationError);
    y.basepoint = 9;
    CHECK_THROWS_AS(y.validate(), ValidationError);
}

TEST_CASE("models")
{
    CHECK(homology(point(), true).is_zero());
    CHECK(homology(discrete_points(3), true).rank(0) == 2);
    CHECK(homology(minimal_circle(), true).rank(1) == 1);
    CHECK(homology(interval(), true).is_zero());
    CHECK(homology(wedge_of_circles(3), true).rank(1) == 3);
    CHECK(homology(standard_simplex(4), true).is_zero());
    CHECK(homology(SimplicialSet{}, true).rank(-1) == 1);
    CHECK(homology(SimplicialSet{}, false).is_zero());
    for (const auto& x : {point(), discrete_points(4), minimal_circle(), interval(), wedge_of_circles(2), standard_simplex(3)}) {
        x.validate();
        check_euler(x);
    }
}

TEST_CASE("projective plane has 2-torsion")
{
    auto rp2 = simplicial_complex(6, rp2_facets);
    rp2.set.validate();
    CHECK(rp2.set.census() == std::vector<std::size_t>{6, 15, 10});
    auto z = homology(rp2.set, false);
    CHECK(z.rank(0) == 1);
    CHECK(z.rank(1) == 0);
    CHECK(z.torsion(1) == std::vector<Integer>{2});
    CHECK(z.rank(2) == 0);
    CHECK(z.torsion(2).empty());
    CHECK(z.to_string() == "H0 = Z, H1 = Z/2");

    auto q = homology(rp2.set, true, Coefficients::rationals());
    CHECK(q.is_zero());
    auto f2 = homology(rp2.set, true, Coefficients::prime_field(2));
    CHECK(f2.rank(1) == 1);
    CHECK(f2.rank(2) == 1);
    auto f3 = homology(rp2.set, true, Coefficients::prime_field(3));
    CHECK(f3.is_zero());
    check_euler(rp2.set);
}

TEST_CASE("reduced homology agrees with a dense rational oracle on complexes")
{
    const std::vector<std::vector<std::vector<int>>> cases{
        rp2_facets,
        {{0, 1}, {1, 2}, {2, 0}},
        {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}},
        {{0, 1}, {2, 3}, {3, 4}, {2, 4}, {4, 5}},
        {{0, 1, 2}, {2, 3, 4}, {4, 5, 0}},
    };
    for (const auto& facets : cases) {
        int n = 0;
        for (const auto& f : facets)
            for (int v : f)
                n = std::max(n, v + 1);
        auto k = simplicial_complex(static_cast<std::size_t>(n), facets);
        std::vector<std::vector<int>> all;
        for (const auto& level : k.simplices)
            all.insert(all.end(), level.begin(), level.end());
        auto betti = oracle::relative_betti(all, [](const std::vector<int>&) { return false; });
        auto h = homology(k.set, false, Coefficients::rationals());
        for (std::size_t d = 0; d < betti.size(); ++d)
            CHECK(h.rank(static_cast<int>(d)) == betti[d]);
    }
}

TEST_CASE("products")
{
    auto square = product(interval(), interval());
    square.set.validate();
    CHECK(square.set.census() == std::vector<std::size_t>{4, 5, 2});
    CHECK(homology(square.set, true).is_zero());

    auto circle = minimal_circle();
    auto torus = product(circle, circle);
    torus.set.validate();
    auto h = homology(torus.set, false);
    CHECK(h.rank(0) == 1);
    CHECK(h.rank(1) == 2);
    CHECK(h.rank(2) == 1);
    check_euler(torus.set);

    // unit law
    auto rp2 = simplicial_complex(6, rp2_facets).set;
    auto with_point = product(rp2, point());
    with_point.set.validate();
    CHECK(with_point.set.census() == rp2.census());
    CHECK(homology(with_point.set, false) == homology(rp2, false));

    // prism over a triangle: 3 tetrahedra
    auto prism = product(standard_simplex(2), interval());
    prism.set.validate();
    CHECK(prism.set.count(3) == 3);
    CHECK(homology(prism.set, true).is_zero());

    // lattice paths in a 1×1×1 cube: 3! top cells
    auto cube = power(interval(), 3);
    cube.set.validate();
    CHECK(cube.set.count(3) == 6);
    CHECK(cube.set.count(0) == 8);
    check_euler(cube.set);

    CHECK_THROWS_AS(power(interval(), 7), CapExceeded);
    CHECK_NOTHROW(power(interval(), 7, 7));
}

TEST_CASE("product normal form of degenerate tuples")
{
    auto sq = product(interval(), interval());
    Simplex edge = Simplex::of_cell(0, 1);
    // (s0 e, s1 e) is a nondegenerate triangle; (s0 e, s0 e) is s0 of the diagonal
    Simplex a = sq({degeneracy(edge, 0), degeneracy(edge, 1)});
    CHECK(a.is_nondegenerate());
    Simplex b = sq({degeneracy(edge, 0), degeneracy(edge, 0)});
    CHECK_FALSE(b.is_nondegenerate());
    CHECK(b.sigma == std::vector<int>{0, 0, 1});
    CHECK(sq.factors[1][static_cast<std::size_t>(b.cell)] == std::vector<Simplex>{edge, edge});
}

TEST_CASE("smash products and wedges")
{
    auto circle = minimal_circle();
    auto s2 = smash(circle, circle);
    s2.set().validate();
    auto h = homology(s2.set(), true);
    CHECK(h.rank(2) == 1);
    CHECK(h.support() == std::vector<int>{2});

    auto s3 = smash(s2.set(), circle);
    CHECK(homology(s3.set(), true).support() == std::vector<int>{3});

    // Künneth: ranks multiply
    auto w = wedge_of_circles(2);
    auto ww = smash(w, wedge_of_circles(3));
    CHECK(homology(ww.set(), true).rank(2) == 6);

    auto v = wedge(circle, s2.set());
    v.validate();
    auto hv = homology(v, true);
    CHECK(hv.rank(1) == 1);
    CHECK(hv.rank(2) == 1);

    SimplicialSet unpointed = circle;
    unpointed.basepoint.reset();
    CHECK_THROWS_AS(smash(unpointed, circle), ValidationError);
    CHECK_THROWS_AS(wedge(unpointed, circle), ValidationError);
}

TEST_CASE("quotients")
{
    auto i = interval();
    CellSet ends = empty_cells(i);
    insert(ends, 0, 0);
    insert(ends, 0, 1);
    auto circle = quotient(i, ends);
    circle.set.validate();
    CHECK(homology(circle.set, true).rank(1) == 1);
    CHECK(circle.set.census() == std::vector<std::size_t>{1, 1});

    // X/∅ = X with a disjoint basepoint
    auto plus = quotient(minimal_circle(), empty_cells(minimal_circle()));
    CHECK(plus.set.count(0) == 2);
    CHECK(homology(plus.set, true).rank(0) == 1);

    CellSet open_edge = empty_cells(i);
    insert(open_edge, 1, 0);
    CHECK_THROWS_AS(quotient(i, open_edge), ValidationError);
    CHECK_THROWS_AS(restrict_to(i, open_edge), ValidationError);
    CHECK(face_closure(i, open_edge) == all_cells(i));
}

TEST_CASE("orbit quotients")
{
    // two points swapped
    auto two = discrete_points(2);
    two.basepoint.reset();
    SimplicialMap swap{{{Simplex::of_cell(1, 0), Simplex::of_cell(0, 0)}}};
    auto one = quotient_by_group(two, {{swap}});
    CHECK(one.set.census() == std::vector<std::size_t>{1});

    // X×X/Δ for three points with the coordinate swap: free off the basepoint
    auto three = discrete_points(3);
    auto sq = product(three, three);
    auto q = quotient(sq.set, diagonal(sq));
    auto act = induced_on_quotients(q, q, swap_factors(sq));
    CHECK_FALSE(find_fixed_cell(q.set, std::span(&act, 1)));
    auto orbits = quotient_by_group(q.set, {{act}});
    CHECK(q.set.count(0) - 1 == 6);
    CHECK(orbits.set.count(0) - 1 == 3);

    // on the circle squared the swap fixes the diagonal cells
    auto circle = minimal_circle();
    auto torus = product(circle, circle);
    auto swap_torus = swap_factors(torus);
    validate_action(torus.set, {{swap_torus}});
    auto fixed = find_fixed_cell(torus.set, std::span(&swap_torus, 1));
    REQUIRE(fixed);
    CHECK(fixed->dim == 1);

    // a cell permutation that breaks faces is rejected
    auto path = simplicial_complex(3, {{0, 1}, {1, 2}}).set;
    SimplicialMap bad{{{Simplex::of_cell(0, 0), Simplex::of_cell(1, 0), Simplex::of_cell(2, 0)},
                       {Simplex::of_cell(1, 1), Simplex::of_cell(0, 1)}}};
    CHECK_THROWS_AS(quotient_by_group(path, {{bad}}), ValidationError);
    SimplicialMap not_bijective{{{Simplex::of_cell(0, 0), Simplex::of_cell(0, 0), Simplex::of_cell(2, 0)},
                                 {Simplex::of_cell(0, 1), Simplex::of_cell(1, 1)}}};
    CHECK_THROWS_AS(validate_action(path, {{not_bijective}}), ValidationError);
}

TEST_CASE("induced maps on quotients")
{
    auto i = interval();
    CellSet left = empty_cells(i);
    insert(left, 0, 0);
    auto q = quotient(i, left);
    CHECK(induced_on_quotients(q, q, identity_map(i)).image[1].size() == 1);

    // swapping the ends while collapsing the edge is not simplicial
    SimplicialMap flip{{{Simplex::of_cell(1, 0), Simplex::of_cell(0, 0)}, {Simplex{0, {0, 0}}}}};
    CHECK_THROWS_AS(validate_map(i, i, flip), ValidationError);
}

TEST_CASE("total cofiber of covers")
{
    // interval 0-1-2 covered by [0,1] and [1,2]
    auto path = simplicial_complex(3, {{0, 1}, {1, 2}});
    auto a = subcomplex(path, {{0, 1}});
    auto b = subcomplex(path, {{1, 2}});
    auto square = cover_cube(path.set, {a, b});
    CHECK(total_cofiber(square).squares_to_zero());
    auto cert = total_cofiber_check(square);
    CHECK(cert.acyclic);
    CHECK_FALSE(cert.witness_degree);

    // hexagon covered by three arcs, empty triple intersection
    auto hex = simplicial_complex(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}});
    std::vector<CellSet> arcs{subcomplex(hex, {{0, 1}, {1, 2}, {2, 3}}), subcomplex(hex, {{2, 3}, {3, 4}, {4, 5}}),
                              subcomplex(hex, {{4, 5}, {0, 5}, {0, 1}})};
    auto cube = cover_cube(hex.set, arcs);
    CHECK(cell_count(cube.corners[0]) == 0);
    CHECK(total_cofiber(cube).squares_to_zero());
    CHECK(total_cofiber_check(cube).acyclic);
    CHECK(total_cofiber_check(cube, Coefficients::prime_field(2)).acyclic);

    // four overlapping arcs and a 2-disk covered by its three corner stars
    std::vector<CellSet> four{subcomplex(hex, {{0, 1}, {1, 2}}), subcomplex(hex, {{1, 2}, {2, 3}, {3, 4}}), subcomplex(hex, {{3, 4}, {4, 5}}),
                              subcomplex(hex, {{4, 5}, {0, 5}, {0, 1}})};
    CHECK(total_cofiber_check(cover_cube(hex.set, four)).acyclic);
    auto disk = simplicial_complex(4, {{0, 1, 3}, {1, 2, 3}, {0, 2, 3}});
    CHECK(total_cofiber_check(cover_cube(disk.set, {subcomplex(disk, {{0, 1, 3}}), subcomplex(disk, {{1, 2, 3}}), subcomplex(disk, {{0, 2, 3}})}))
              .acyclic);
}

TEST_CASE("total cofiber detects a wrong corner")
{
    // ambient: path 0-1-2 plus an isolated vertex 3 lying in both pieces
    auto x = simplicial_complex(4, {{0, 1}, {1, 2}, {3}});
    auto a = subcomplex(x, {{0, 1}, {3}});
    auto b = subcomplex(x, {{1, 2}, {3}});
    auto good = cover_cube(x.set, {a, b});
    CHECK(total_cofiber_check(good).acyclic);

    // replace the intersection {1, 3} by {3}, away from the point where the pieces meet
    Cube wrong = good;
    wrong.corners[0] = subcomplex(x, {{3}});
    auto cert = total_cofiber_check(wrong);
    CHECK_FALSE(cert.acyclic);
    REQUIRE(cert.witness_degree);
    CHECK(*cert.witness_degree == 1);
    CHECK(cert.homology.rank(1) == 1);

    // a corner that does not include into its neighbours
    Cube not_inclusion = good;
    not_inclusion.corners[0] = subcomplex(x, {{0}});
    CHECK_THROWS_AS(total_cofiber(not_inclusion), ValidationError);

    Cube missing = good;
    missing.corners.pop_back();
    CHECK_THROWS_AS(total_cofiber(missing), ValidationError);

    std::vector<CellSet> five(5, all_cells(x.set));
    CHECK_THROWS_AS(cover_cube(x.set, five), CapExceeded);
    CHECK_THROWS_AS(cover_cube(x.set, {a, subcomplex(x, {{3}})}), ValidationError);
}
