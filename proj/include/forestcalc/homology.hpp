#pragma once

#include "forestcalc/simplicial.hpp"
#include "forestcalc/smith.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace forestcalc {

struct HomologyGroup {
    int degree = 0;
    std::size_t rank = 0;
    /// Invariant factors > 1, each dividing the next (integer coefficients only).
    std::vector<Integer> torsion;

    bool is_zero() const noexcept { return rank == 0 && torsion.empty(); }
    friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

struct HomologyResult {
    bool reduced = false;
    Coefficients coefficients;
    /// Consecutive degrees; degree -1 appears only when nonzero.
    std::vector<HomologyGroup> groups;

    std::size_t rank(int degree) const;
    std::vector<Integer> torsion(int degree) const;
    bool is_zero() const;
    /// Σ (-1)^k rank_k.
    long euler_characteristic() const;
    /// Degrees with a nonzero group.
    std::vector<int> support() const;
    /// "H2 = Z^2" style, zero groups omitted; "0" if all vanish.
    std::string to_string() const;

    friend bool operator==(const HomologyResult&, const HomologyResult&) = default;
};

/// Free chain complex of finite rank: dims[i] is the rank in degree
/// lowest_degree + i and boundary[i] maps that degree to the one below.
struct ChainComplex {
    int lowest_degree = 0;
    std::vector<std::size_t> dims;
    std::vector<SparseIntMatrix> boundary;

    int highest_degree() const noexcept { return lowest_degree + static_cast<int>(dims.size()) - 1; }
    std::size_t dim(int degree) const;

    /// Lowest degree k with ∂_{k-1} ∘ ∂_k ≠ 0, computed exactly.
    std::optional<int> failing_square() const;
    bool squares_to_zero() const { return !failing_square(); }
};

/// Normalized chains: degenerate simplices dropped. `reduced` adds the
/// augmentation to a copy of Z in degree -1.
ChainComplex normalized_chains(const SimplicialSet& x, bool reduced);

HomologyResult homology(const ChainComplex& chains, const Coefficients& coeff, bool reduced_flag = false);
HomologyResult homology(const SimplicialSet& x, bool reduced, const Coefficients& coeff = Coefficients::integers());

// ------------------------------------------------------------ cubes

inline constexpr std::size_t max_cube_dimension = 4;

/// A d-cube of subobjects of one ambient simplicial set; corners[U] for
/// U ⊆ {0..d-1} as a bitmask, with corners[U] ⊆ corners[V] whenever U ⊆ V.
struct Cube {
    std::size_t dimension = 0;
    SimplicialSet ambient;
    std::vector<CellSet> corners;
};

/// Cube of a cover X = X_0 ∪ ... ∪ X_{d-1} by subobjects: corner U is the
/// intersection of the X_i with i ∉ U, and the full corner is X.
Cube cover_cube(const SimplicialSet& ambient, const std::vector<CellSet>& cover);

/// Throws CapExceeded for d > 4 and ValidationError when a corner is not a
/// subobject or an edge of the cube is not an inclusion.
void validate_cube(const Cube& cube);

/// Iterated mapping cone. A cell of corner U in dimension p sits in total
/// degree p + (d - |U|).
ChainComplex total_cofiber(const Cube& cube);

struct CubeCertificate {
    bool acyclic = false;
    HomologyResult homology;
    /// Lowest degree with nonzero total-cofiber homology.
    std::optional<int> witness_degree;
};

CubeCertificate total_cofiber_check(const Cube& cube, const Coefficients& coeff = Coefficients::integers());

} // namespace forestcalc
