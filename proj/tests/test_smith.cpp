#include "forestcalc/error.hpp"
#include "forestcalc/smith.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace forestcalc;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int spread, int zero_percent)
{
    std::uniform_int_distribution<int> value(-spread, spread), pct(0, 99);
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = pct(rng) < zero_percent ? 0 : value(rng);
    return m;
}

Integer cofactor_det(const IntMatrix& m)
{
    const std::size_t n = m.rows();
    if (n == 0)
        return 1;
    if (n == 1)
        return m(0, 0);
    Integer sum = 0;
    for (std::size_t c = 0; c < n; ++c) {
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0, k = 0; j < n; ++j)
                if (j != c)
                    minor(i - 1, k++) = m(i, j);
        Integer term = m(0, c) * cofactor_det(minor);
        sum += (c % 2 ? -term : term);
    }
    return sum;
}

SparseIntMatrix to_sparse(const IntMatrix& d)
{
    SparseIntMatrix s{d.rows(), d.cols(), std::vector<std::vector<std::pair<int, long>>>(d.cols())};
    for (std::size_t j = 0; j < d.cols(); ++j)
        for (std::size_t i = 0; i < d.rows(); ++i)
            if (d(i, j) != 0)
                s.columns[j].emplace_back(static_cast<int>(i), static_cast<long>(d(i, j)));
    return s;
}

std::size_t rank_mod_p(IntMatrix m, long p)
{
    std::vector<std::vector<long>> a(m.rows(), std::vector<long>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            a[i][j] = ((static_cast<long>(m(i, j)) % p) + p) % p;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        std::size_t r = rank;
        while (r < m.rows() && a[r][c] == 0)
            ++r;
        if (r == m.rows())
            continue;
        std::swap(a[r], a[rank]);
        long inv = 1;
        for (long e = p - 2, b = a[rank][c]; e; e >>= 1, b = b * b % p)
            if (e & 1)
                inv = inv * b % p;
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (i != rank && a[i][c]) {
                long f = a[i][c] * inv % p;
                for (std::size_t j = c; j < m.cols(); ++j)
                    a[i][j] = ((a[i][j] - f * a[rank][j]) % p + p) % p;
            }
        ++rank;
    }
    return rank;
}

std::size_t rank_over_q(const IntMatrix& m)
{
    std::vector<std::vector<boost::multiprecision::cpp_rational>> a(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            a[i].emplace_back(m(i, j));
    return oracle::rational_rank(a);
}

void check_smith(const IntMatrix& m)
{
    auto s = smith_normal_form(m);
    CHECK(s.u * m * s.v == s.d);
    CHECK(abs(determinant(s.u)) == 1);
    CHECK(abs(determinant(s.v)) == 1);
    for (std::size_t i = 0; i < s.d.rows(); ++i)
        for (std::size_t j = 0; j < s.d.cols(); ++j)
            if (i != j)
                CHECK(s.d(i, j) == 0);
    for (std::size_t t = 0; t < s.diagonal.size(); ++t) {
        CHECK(s.diagonal[t] > 0);
        if (t + 1 < s.diagonal.size())
            CHECK(s.diagonal[t + 1] % s.diagonal[t] == 0);
    }
    CHECK(s.diagonal == invariant_factors(m));
}

} // namespace

TEST_CASE("smith normal form examples")
{
    auto id = IntMatrix::identity(3);
    auto s = smith_normal_form(id);
    CHECK(s.d == id);
    CHECK(s.u == id);
    CHECK(s.v == id);

    IntMatrix m{{2, 4}, {6, 8}};
    auto t = smith_normal_form(m);
    CHECK(t.diagonal == std::vector<Integer>{2, 4});
    check_smith(m);

    IntMatrix zero(2, 3);
    auto z = smith_normal_form(zero);
    CHECK(z.d.is_zero());
    CHECK(z.diagonal.empty());
}

TEST_CASE("smith normal form properties on seeded matrices")
{
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 150; ++trial) {
        std::size_t r = 1 + trial % 6, c = 1 + (trial / 6) % 6;
        check_smith(random_matrix(rng, r, c, 6, 30));
    }
    // rank-deficient products with large torsion
    for (int trial = 0; trial < 30; ++trial) {
        auto a = random_matrix(rng, 5, 2, 9, 0), b = random_matrix(rng, 2, 5, 9, 0);
        check_smith(a * b);
    }
}

TEST_CASE("determinant against cofactor expansion")
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 1 + trial % 5;
        auto m = random_matrix(rng, n, n, 5, 25);
        CHECK(determinant(m) == cofactor_det(m));
    }
    CHECK(determinant(IntMatrix(0, 0)) == 1);
}

TEST_CASE("kernel basis spans the integer kernel")
{
    std::mt19937 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        auto m = random_matrix(rng, 1 + trial % 4, 2 + trial % 5, 4, 40);
        auto k = kernel_basis(m);
        CHECK((m * k).is_zero());
        CHECK(k.cols() == m.cols() - rank_over_q(m));
        if (k.cols()) {
            // saturated: the gcd of maximal minors is 1, i.e. all invariant factors are 1
            for (const auto& f : invariant_factors(k))
                CHECK(f == 1);
        }
    }
}

TEST_CASE("solve_integral")
{
    IntMatrix a{{1, 0}, {0, 2}, {1, 1}};
    auto x = solve_integral(a, {3, 4, 5});
    REQUIRE(x);
    CHECK(*x == std::vector<Integer>{3, 2});
    CHECK_FALSE(solve_integral(a, {1, 1, 2}).has_value());
    CHECK_FALSE(solve_integral(IntMatrix{{2}}, {1}).has_value());
    CHECK_THROWS_AS(solve_integral(IntMatrix{{1, 1}}, {1}), PreconditionError);
}

TEST_CASE("sparse diagonalization agrees with dense reduction")
{
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t r = 1 + trial % 9, c = 1 + (trial * 7) % 11;
        auto m = random_matrix(rng, r, c, trial % 3 == 0 ? 1 : 4, 60);
        auto sparse = to_sparse(m);
        auto z = diagonalize(sparse, Coefficients::integers());
        auto dense = invariant_factors(m);
        CHECK(z.rank == dense.size());
        std::vector<Integer> torsion;
        for (auto& f : dense)
            if (f > 1)
                torsion.push_back(f);
        CHECK(z.torsion == torsion);
        CHECK(diagonalize(sparse, Coefficients::rationals()).rank == rank_over_q(m));
        for (std::uint32_t p : {2u, 3u, 5u})
            CHECK(diagonalize(sparse, Coefficients::prime_field(p)).rank == rank_mod_p(m, p));
    }
}

TEST_CASE("coefficients")
{
    CHECK_THROWS_AS(Coefficients::prime_field(4), ValidationError);
    CHECK(Coefficients::prime_field(7).name() == "F_7");
    CHECK(Coefficients::integers().name() == "Z");
    CHECK(Coefficients::rationals().name() == "Q");
}
