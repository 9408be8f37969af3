#pragma once

#include "forestcalc/parallel.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace forestcalc {

enum class VerifyLevel { quick, exhaustive };

/// Deliberate faults for exercising the suite itself.
enum class Mutation { none, flip_strictness };

struct CheckOutcome {
    std::string name;
    std::string statement;
    bool pass = true;
    std::size_t cases = 0;
    /// First failing case, in words.
    std::optional<std::string> counterexample;
};

// Individual sweeps. Each runs to the first failure and reports it.

/// Excess equality, H₁ isomorphism and an all-strict elementary decomposition
/// agree on every fusion with source and target support ≤ max_support.
CheckOutcome check_strict_fusion_criteria(std::size_t max_support, Mutation mutation = Mutation::none);
/// Excess definition of goodness equals the pushout-graph forest test.
CheckOutcome check_goodness_criteria(std::size_t max_support);
/// Coarsenings of bad diagonals are bad.
CheckOutcome check_badness_hereditary(std::size_t max_support);
/// Images of bad diagonals under strict fusions are bad.
CheckOutcome check_badness_preserved(std::size_t max_support);
/// Skeletal class counts equal p(n), and equal the classes found by filtering
/// every set partition on supports n+1..2n.
CheckOutcome check_class_counts(std::size_t max_n);
/// 𝓔₂: two objects, automorphism orders 8 and 6, four gluing patterns one way, none back.
CheckOutcome check_e2_table();
CheckOutcome check_composition_closure(std::size_t max_n);
CheckOutcome check_nice_filtration(std::size_t max_n);
/// Reduced homology of T_Λ is free of rank ∏(|b|-1)! in degree e(Λ) only.
CheckOutcome check_tree_space_homology(std::size_t max_support, Execution exec = Execution::parallel);
/// Quotient and suspension models of T_Λ have equal homology (non-discrete Λ).
CheckOutcome check_suspension_model(std::size_t max_support, Execution exec = Execution::parallel);
/// Every morphism of 𝓔ₙ carries boundary chains to boundary chains.
CheckOutcome check_tree_functoriality(std::size_t max_n);
/// Fat diagonal = Δ^Λ M ∪ lower-stratum images, with an embedded colimit and a
/// free action off it, for M ∈ {2 points, 3 points, circle}.
CheckOutcome check_fat_diagonal_reconstruction(std::size_t max_n);
/// Two points, n = 1: coend and stratum both ~H₁ = Z; three points: rank 3.
CheckOutcome check_layer_examples();
/// χ̃ of successive coend stages differ by the strata, for M ∈ {point, 2 points,
/// 3 points, circle, interval}.
CheckOutcome check_euler_additivity(std::size_t max_n);
/// Covers of a path, a hexagon and a disk give acyclic total cofibers; a cube
/// with a wrong corner does not.
CheckOutcome check_cube_covers();

struct VerifyOptions {
    VerifyLevel level = VerifyLevel::quick;
    Mutation mutation = Mutation::none;
    Execution execution = Execution::parallel;
};

/// Quick: supports ≤ 4, tree spaces ≤ 5, categories n ≤ 3. Exhaustive:
/// supports ≤ 5, tree spaces ≤ 6, categories n ≤ 4.
std::vector<CheckOutcome> verify_all(const VerifyOptions& options = {});

} // namespace forestcalc
