#pragma once

#include "forestcalc/category.hpp"
#include "forestcalc/homology.hpp"
#include "forestcalc/parallel.hpp"
#include "forestcalc/partition.hpp"
#include "forestcalc/simplicial.hpp"
#include "forestcalc/tspace.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace forestcalc {

/// Largest n accepted by the coend pipeline unless raised explicitly.
inline constexpr std::size_t default_layer_n_cap = 2;

struct LayerOptions {
    std::size_t n_cap = default_layer_n_cap;
    std::size_t dimension_cap = default_dimension_cap;
    Execution execution = Execution::parallel;
};

/// Cells of M^k constant across every block of `delta` (a partition of 0..k-1).
CellSet diagonal_cells(const Product& power, const Partition& delta);

/// Cells of M^k with two equal coordinates.
CellSet fat_diagonal(const Product& power);

/// f^*: M^{k'} -> M^k, (x_y)_y ↦ (x_{f(i)})_i for f: k -> k'.
SimplicialMap pullback_map(const Product& source, const Product& target, const SetMap& f);

/// M^Λ, the union of its bad diagonals, and the quotient M^[Λ].
struct PowerPair {
    Partition lambda;
    Product power;
    CellSet bad_diagonal;
    Quotient quotient;

    const SimplicialSet& set() const noexcept { return quotient.set; }
};

PowerPair power_pair(const SimplicialSet& m, const Partition& lambda, std::size_t dimension_cap = default_dimension_cap);

/// True iff f^*: M^{Λ'} -> M^Λ carries the bad diagonal of Λ' into that of Λ.
bool carries_bad_diagonal(const PowerPair& source, const PowerPair& target, const SetMap& f);

/// (M^k / fat diagonal ∧ T_Λ) / Σ_Λ for one object Λ of support k.
struct StratumPiece {
    std::size_t index = 0;  // number of blocks of Λ
    Partition lambda;
    std::uint64_t group_order = 1;
    SimplicialSet set;
    /// A non-identity automorphism fixing a cell off the basepoint.
    std::optional<FixedCell> fixed;

    bool free() const noexcept { return !fixed; }
};

StratumPiece stratum(const SimplicialSet& m, const Partition& lambda, std::size_t dimension_cap = default_dimension_cap);

struct GluingRecord {
    std::size_t source = 0;
    std::size_t target = 0;
    SetMap map;
    /// Classes merged by this morphism's identifications.
    std::size_t merges = 0;
};

/// Coend of M^[Λ] against T_Λ over 𝓔ₙ, together with the coends over each
/// filtration stage and the strata.
struct CoendAssembly {
    std::size_t n = 0;
    std::vector<Partition> objects;
    SimplicialSet total;
    /// stages[i]: coend over the objects with at most i blocks; stages[0] is a point.
    std::vector<SimplicialSet> stages;
    /// strata[i]: one piece per object with i blocks; strata[0] is empty.
    std::vector<std::vector<StratumPiece>> strata;
    /// Identifications made for the full coend, one record per morphism.
    std::vector<GluingRecord> log;
};

/// Throws CapExceeded when n > options.n_cap.
CoendAssembly coend(const SimplicialSet& m, std::size_t n, const LayerOptions& options = {});

struct ReconstructionCheck {
    Partition lambda;
    std::size_t index = 0;
    std::size_t fat_cells = 0;
    std::size_t bad_cells = 0;
    /// Cells of the union of Δ^Λ M and the lower-stratum images in M^k.
    std::size_t union_cells = 0;
    /// Cells of the abstract colimit; equal to union_cells iff it embeds.
    std::size_t colimit_cells = 0;
    bool equal = false;
    bool embeds = false;
    /// No non-identity automorphism fixes a cell off the fat diagonal.
    bool free = false;
    /// First fat-diagonal cell missing from the union, as (dim, cell).
    std::optional<std::pair<std::size_t, int>> missing;

    bool pass() const noexcept { return equal && embeds && free; }
};

/// For each object Λ: Δ^Λ M glued with M^{Λ''} along every f: Λ -> Λ'' into a
/// lower stratum, compared with the fat diagonal of M^k.
std::vector<ReconstructionCheck> verify_essentially_cofibrant(const SimplicialSet& m, std::size_t n,
                                                              const LayerOptions& options = {});

struct StratumEntry {
    std::size_t index = 0;
    Partition lambda;
    std::uint64_t group_order = 1;
    bool free = true;
    /// "orbit" when the action is free off the basepoint, otherwise
    /// "rational, invariants model" (orbit homology over Q).
    std::string model;
    HomologyResult homology;
    std::vector<std::size_t> census;
};

struct AdditivityRow {
    std::size_t index = 0;
    long stage_difference = 0;
    long strata_sum = 0;
    bool pass() const noexcept { return stage_difference == strata_sum; }
};

struct LayerReport {
    std::size_t n = 0;
    Coefficients coefficients;
    HomologyResult coend_homology;
    std::vector<std::size_t> coend_census;
    std::vector<HomologyResult> stage_homology;
    std::vector<StratumEntry> strata;
    std::vector<AdditivityRow> additivity;
    /// Nonzero reduced homology must lie in [lower, upper]: the coend is
    /// (n-1)-connected and has no cells above n + 2n·dim M.
    int degree_lower = 0;
    int degree_upper = 0;
    /// Support sizes of objects with nonzero stratum homology; expected within [n+1, 2n].
    std::optional<std::pair<std::size_t, std::size_t>> contributing_supports;
    std::size_t gluing_merges = 0;

    bool additivity_pass() const;
    bool degree_support_pass() const;
    bool layer_bound_pass() const;
    bool pass() const { return additivity_pass() && degree_support_pass() && layer_bound_pass(); }
};

LayerReport derivative_report(const SimplicialSet& m, std::size_t n, const Coefficients& coeff,
                              const LayerOptions& options = {});

} // namespace forestcalc
