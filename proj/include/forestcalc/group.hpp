#pragma once

#include "forestcalc/partition.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace forestcalc {

/// One-line notation: p[x] is the image of x.
using Permutation = std::vector<int>;

Permutation identity_permutation(std::size_t degree);
/// (a ∘ b)[x] = a[b[x]].
Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& p);
bool is_identity(const Permutation& p);
/// "[1 0 2]"
std::string to_string(const Permutation& p);

/// Order of the group generated by `generators`, by recursive orbit-stabilizer
/// with Schreier generators.
std::uint64_t group_order(std::size_t degree, const std::vector<Permutation>& generators);

/// All elements generated by `generators`, sorted lexicographically.
std::vector<Permutation> group_elements(std::size_t degree, const std::vector<Permutation>& generators);

struct GroupPresentation {
    std::size_t degree = 0;
    std::vector<Permutation> generators;
    std::uint64_t order = 1;

    std::vector<Permutation> elements() const { return group_elements(degree, generators); }
};

/// Σ_Λ: adjacent transpositions inside each block plus swaps of consecutive
/// equal-size blocks.
GroupPresentation automorphism_group(const Partition& p);

} // namespace forestcalc
