#pragma once

#include "forestcalc/homology.hpp"
#include "forestcalc/parallel.hpp"
#include "forestcalc/partition.hpp"
#include "forestcalc/simplicial.hpp"

#include <optional>
#include <span>
#include <vector>

namespace forestcalc {

/// Largest poset accepted by nerve(); the refinement poset of a 6-element
/// support has 203 elements.
inline constexpr std::size_t default_nerve_cap = 1000;
/// Largest support accepted for tree spaces.
inline constexpr std::size_t default_tspace_cap = 7;

/// Order complex: one k-cell per chain p_0 < ... < p_k, vertex lists in
/// chain order. Throws CapExceeded above `cap` elements.
Complex nerve(const PosetTable& poset, std::size_t cap = default_nerve_cap);

/// Chains that do not contain both the minimum and the maximum. Empty when
/// the poset has a single element.
CellSet boundary_cells(const PosetTable& poset, const Complex& nerve);

/// The boundary part as a simplicial set of its own.
Restriction boundary_part(const PosetTable& poset, std::size_t cap = default_nerve_cap);

/// Nerve of the refinement poset of Λ modulo its boundary part.
struct TreeSpace {
    Partition lambda;
    PosetTable poset;
    Complex nerve;
    CellSet boundary;
    Quotient quotient;

    const SimplicialSet& set() const noexcept { return quotient.set; }
};

TreeSpace t_space(const Partition& lambda, std::size_t cap = default_tspace_cap);

/// S¹ ∧ (nerve of the poset without its top) / (nerve without top and
/// bottom). Defined for non-discrete Λ only; PreconditionError otherwise.
struct SuspensionModel {
    Partition lambda;
    SimplicialSet circle;
    Quotient inner;
    Smash smash;

    const SimplicialSet& set() const noexcept { return smash.set(); }
};

SuspensionModel t_space_suspension_model(const Partition& lambda, std::size_t cap = default_tspace_cap);

/// Map of nerves Γ ↦ f(Γ) induced by a fusion f: Λ → Λ'.
SimplicialMap nerve_map(const TreeSpace& source, const TreeSpace& target, const SetMap& f);

/// First boundary chain of the source whose image is not a boundary chain,
/// as a list of poset indices; nullopt when the boundary is preserved.
std::optional<std::vector<int>> boundary_violation(const TreeSpace& source, const TreeSpace& target, const SetMap& f);

/// The pointed map T_Λ → T_Λ'. Throws ValidationError when f does not
/// preserve boundaries (e.g. f is not strict).
SimplicialMap t_space_map(const TreeSpace& source, const TreeSpace& target, const SetMap& f);

enum class TreeModel { quotient, suspension };

/// Reduced homology of T_Λ for each Λ, one complex per task.
std::vector<HomologyResult> t_space_homology(std::span<const Partition> lambdas, TreeModel model, const Coefficients& coeff,
                                             Execution exec = Execution::parallel, std::size_t cap = default_tspace_cap);

/// ∏ over blocks (|block| - 1)!: the rank of the top reduced homology of T_Λ.
std::size_t expected_tree_rank(const Partition& lambda);

} // namespace forestcalc
