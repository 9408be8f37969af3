#pragma once

#include "forestcalc/group.hpp"
#include "forestcalc/parallel.hpp"
#include "forestcalc/partition.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace forestcalc {

inline constexpr std::size_t default_n_cap = 5;

/// Finite presentation of 𝓔ₙ: irreducible partitions of excess n and strict
/// fusions between them. Objects are sorted by stratum (number of blocks),
/// then canonically.
struct CategoryTable {
    std::size_t n = 0;
    std::vector<Partition> objects;
    /// hom[a][b]: all strict fusions objects[a] -> objects[b], sorted. Left
    /// empty when the table was enumerated without morphisms.
    std::vector<std::vector<std::vector<SetMap>>> hom;
    /// |hom[a][b]| and the number of distinct kernels (gluing patterns) among
    /// those maps; always filled.
    std::vector<std::vector<std::size_t>> hom_size;
    std::vector<std::vector<std::size_t>> kernels;
    bool has_morphisms = true;
    std::vector<GroupPresentation> automorphisms;
    /// One isomorphism-class representative per object (true in the skeletal table).
    bool skeletal = true;

    std::size_t size() const noexcept { return objects.size(); }
    /// Filtration index of an object: its number of blocks.
    std::size_t stratum(std::size_t object) const { return objects[object].num_blocks(); }
    /// Index of an object, or -1.
    int find(const Partition& p) const;
    std::size_t total_morphisms() const;
};

struct EnumerateOptions {
    std::size_t n_cap = default_n_cap;
    /// Include every irreducible partition of excess n on supports n+1..2n,
    /// not just one per isomorphism class.
    bool full = false;
    /// Store the maps themselves (n = 5 has about 6.6 million); otherwise only
    /// hom-set sizes and kernel counts are recorded.
    bool with_morphisms = true;
    Execution execution = Execution::parallel;
};

/// Hom-sets are built from kernel partitions of the source: a kernel whose
/// blocks each meet distinct blocks of the source gives a strict quotient, and
/// the quotient is composed with every isomorphism onto the target.
CategoryTable enumerate_En(std::size_t n, const EnumerateOptions& options = {});

/// Reference enumeration by testing every set map between supports. Only for
/// small n (support^support maps per pair).
CategoryTable enumerate_En_brute(std::size_t n, bool full = false);

/// Full subcategory on objects with at most i blocks.
CategoryTable filtration(const CategoryTable& table, std::size_t i);

/// Number of distinct kernels (gluing patterns) among the maps in hom[a][b];
/// for a ≠ b this counts hom[a][b] up to automorphisms of the target.
std::size_t gluing_patterns(const CategoryTable& table, std::size_t a, std::size_t b);

/// Recomputes hom_size and kernels from the stored maps.
void refresh_counts(CategoryTable& table);

struct MorphismWitness {
    std::size_t source = 0;
    std::size_t target = 0;
    SetMap map;
    std::string reason;
};

struct Certificate {
    bool pass = true;
    std::vector<std::string> checked;
    std::optional<MorphismWitness> witness;
};

/// Strata 0 (empty), 1, …, n. At each stage: no morphism from an older object
/// into a new one, and every morphism between new objects is a bijection.
Certificate verify_nice_filtration(const CategoryTable& table);

/// Identities present, every listed map a strict fusion onto its target,
/// and composites of listed maps listed.
Certificate verify_composition_closure(const CategoryTable& table);

} // namespace forestcalc
