#pragma once

#include "forestcalc/partition.hpp"
#include "forestcalc/smith.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace forestcalc {

/// A set map f: s -> s' between partition supports with f(source) ≤ target.
struct PartitionMorphism {
    Partition source;
    Partition target;
    SetMap map;

    /// Throws ValidationError unless the sizes match and f(source) ≤ target.
    static PartitionMorphism make(Partition source, Partition target, SetMap map);
    static PartitionMorphism identity(const Partition& p);

    /// target == f(source).
    bool is_fusion() const;
    /// Underlying map is the identity of one support.
    bool is_refinement() const;

    friend bool operator==(const PartitionMorphism&, const PartitionMorphism&) = default;
};

/// g ∘ f; throws PreconditionError when f.target != g.source.
PartitionMorphism compose(const PartitionMorphism& g, const PartitionMorphism& f);

struct Factorization {
    PartitionMorphism fusion;
    PartitionMorphism refinement;
};

/// Λ₁ -> f(Λ₁) -> Λ₂.
Factorization factor(const PartitionMorphism& m);

/// Excess equality. Throws PreconditionError if m is not a fusion.
bool is_strict_fusion(const PartitionMorphism& m);

/// Glues exactly two support points and is injective otherwise (it need not be
/// surjective).
bool is_elementary(const PartitionMorphism& m);

/// Elementary fusions whose composite (last ∘ … ∘ first) is m. The identity
/// gives an empty sequence; an injective non-identity map is returned as one
/// relabelling factor.
std::vector<PartitionMorphism> decompose_elementary(const PartitionMorphism& m);

/// Finite multigraph with a marked vertex subset. Loops and parallel edges kept.
struct MarkedGraph {
    std::size_t num_vertices = 0;
    std::vector<bool> marked;
    std::vector<std::pair<int, int>> edges;

    std::size_t num_components() const;
    /// |E| - |V| + #components.
    std::size_t first_betti() const;
    /// Component index of each vertex (components numbered by least vertex).
    std::vector<int> component_labels() const;

    /// Marked vertices identified to a single vertex, which becomes vertex 0.
    MarkedGraph collapse_marked() const;

    /// Vertex-by-edge incidence matrix of the oriented edges (second - first).
    IntMatrix boundary_matrix() const;
};

/// Mapping cylinder of s -> c(Λ): vertices 0..m-1 are the (marked) support,
/// m..m+k-1 the blocks, one edge x -- [x] per support element.
MarkedGraph cylinder_graph(const Partition& p);

/// b₁ of the cylinder with its support collapsed.
std::size_t collapsed_b1(const Partition& p);

/// Whether f induces an isomorphism on H₁ of the collapsed cylinders.
/// Throws PreconditionError if m is not a fusion.
bool strictness_via_h1(const PartitionMorphism& m);

/// The fusion s -> c(Δ) carrying Λ onto the partition of c(Δ) by blocks of
/// Λ∧Δ. Used for the definition of goodness.
PartitionMorphism goodness_fusion(const Partition& delta, const Partition& lambda);

/// e(Λ) == |c(Δ)| - |c(Λ∧Δ)|.
bool is_good(const Partition& delta, const Partition& lambda);

/// Bipartite multigraph on c(Λ) ⊔ c(Δ) (Λ-blocks first), one edge per support element.
MarkedGraph pushout_graph(const Partition& delta, const Partition& lambda);

/// Every component of the pushout graph is a tree and there are |c(Λ∧Δ)| of them.
bool goodness_via_graph(const Partition& delta, const Partition& lambda);

/// The other reading: the pushout graph is a single tree.
bool goodness_connected_tree(const Partition& delta, const Partition& lambda);

/// All Δ on the support of Λ that are bad relative to Λ, in canonical order.
std::vector<Partition> bad_diagonals(const Partition& lambda, std::size_t cap = default_poset_cap);

} // namespace forestcalc
