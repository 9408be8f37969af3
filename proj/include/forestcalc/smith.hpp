#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace forestcalc {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Dense row-major integer matrix.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> init);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_zero() const;
    IntMatrix transpose() const;

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

/// U·M·V = D with U, V unimodular and D diagonal, nonnegative, d_i | d_{i+1}.
struct SmithForm {
    IntMatrix d;
    IntMatrix u;
    IntMatrix v;
    /// Nonzero diagonal entries in order; rank = diagonal.size().
    std::vector<Integer> diagonal;
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Nonzero invariant factors only (no transforms).
std::vector<Integer> invariant_factors(IntMatrix m);

/// Bareiss fraction-free determinant of a square matrix.
Integer determinant(IntMatrix m);

/// Columns form a basis of the integer kernel {x : m·x = 0}.
IntMatrix kernel_basis(const IntMatrix& m);

/// Solves a·x = b for a of full column rank; nullopt if there is no rational
/// solution or it is not integral.
std::optional<std::vector<Integer>> solve_integral(const IntMatrix& a, const std::vector<Integer>& b);

// ------------------------------------------------------------------ sparse

/// Coefficient domain for rank/homology computations.
struct Coefficients {
    enum class Kind { integers, rationals, prime_field };
    Kind kind = Kind::integers;
    std::uint32_t prime = 0;

    static Coefficients integers() { return {}; }
    static Coefficients rationals() { return {Kind::rationals, 0}; }
    static Coefficients prime_field(std::uint32_t p);

    std::string name() const;
    friend bool operator==(const Coefficients&, const Coefficients&) = default;
};

bool is_prime(std::uint32_t p);

/// Sparse integer matrix given as a list of columns of (row, value) entries.
struct SparseIntMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::vector<std::pair<int, long>>> columns;

    IntMatrix to_dense() const;
};

/// Result of diagonalizing a matrix over the chosen coefficients.
struct Diagonalization {
    /// Rank over the coefficient ring (number of nonzero invariant factors).
    std::size_t rank = 0;
    /// Invariant factors greater than 1 (integers only).
    std::vector<Integer> torsion;
    /// Pivots removed by sparse unit elimination before the dense stage.
    std::size_t unit_pivots = 0;
    /// Size of the dense remainder handed to Smith reduction.
    std::size_t dense_rows = 0;
    std::size_t dense_cols = 0;
};

/// Sparse unit-pivot elimination (Markowitz-style pivot choice) followed by
/// dense Smith reduction of whatever is left. Over a field every nonzero entry
/// is a unit, so the dense stage is empty.
Diagonalization diagonalize(const SparseIntMatrix& m, const Coefficients& coeff);

} // namespace forestcalc
