#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace forestcalc {

/// Default cap on the support size of a refinement poset. B(9) = 21147.
inline constexpr std::size_t default_poset_cap = 9;

/// A total function {0..source_size-1} -> {0..target_size-1}.
class SetMap {
public:
    SetMap() = default;
    SetMap(std::size_t target_size, std::vector<int> values);

    static SetMap identity(std::size_t n);

    std::size_t source_size() const noexcept { return values_.size(); }
    std::size_t target_size() const noexcept { return target_size_; }
    const std::vector<int>& values() const noexcept { return values_; }
    int operator()(std::size_t x) const { return values_[x]; }

    bool is_identity() const;
    bool is_injective() const;
    bool is_surjective() const;
    bool is_bijective() const { return is_injective() && is_surjective(); }

    /// Inverse of a bijection.
    SetMap inverse() const;

    std::string to_string() const;

    friend bool operator==(const SetMap&, const SetMap&) = default;
    friend auto operator<=>(const SetMap& a, const SetMap& b)
    {
        if (auto c = a.target_size_ <=> b.target_size_; c != 0)
            return c;
        return a.values_ <=> b.values_;
    }

private:
    std::size_t target_size_ = 0;
    std::vector<int> values_;
};

/// g ∘ f.
SetMap compose(const SetMap& g, const SetMap& f);

/// An equivalence relation on {0..m-1}. Stored canonically: blocks sorted by
/// minimum element, each block sorted; `labels()` is the matching
/// restricted-growth string (element -> block index).
class Partition {
public:
    Partition() = default;

    /// Validates and canonicalizes. Throws ValidationError on overlaps, gaps,
    /// empty blocks or out-of-range elements, naming the offending element.
    static Partition from_blocks(std::size_t support_size, const std::vector<std::vector<int>>& blocks);

    /// Any labelling of the support; equal labels mean same block.
    static Partition from_labels(std::span<const int> labels);

    static Partition discrete(std::size_t m);
    static Partition indiscrete(std::size_t m);

    /// Partition with consecutive blocks of the given sizes: {0..s0-1}, {s0..}, ...
    static Partition with_block_sizes(std::span<const std::size_t> sizes);

    std::size_t support_size() const noexcept { return labels_.size(); }
    std::size_t num_blocks() const noexcept { return blocks_.size(); }
    std::size_t excess() const noexcept { return labels_.size() - blocks_.size(); }

    const std::vector<std::vector<int>>& blocks() const noexcept { return blocks_; }
    const std::vector<int>& labels() const noexcept { return labels_; }
    int block_of(std::size_t x) const { return labels_[x]; }
    bool same_block(std::size_t x, std::size_t y) const { return labels_[x] == labels_[y]; }

    bool is_irreducible() const;
    bool is_discrete() const noexcept { return blocks_.size() == labels_.size(); }
    bool is_indiscrete() const noexcept { return blocks_.size() <= 1; }

    /// Block sizes in weakly decreasing order.
    std::vector<std::size_t> block_sizes() const;

    /// e.g. "(0 1)(2 3)".
    std::string to_string() const;

    friend bool operator==(const Partition& a, const Partition& b) { return a.labels_ == b.labels_; }
    /// Canonical order: support size, then restricted-growth string.
    friend auto operator<=>(const Partition& a, const Partition& b)
    {
        if (auto c = a.labels_.size() <=> b.labels_.size(); c != 0)
            return c;
        return a.labels_ <=> b.labels_;
    }

private:
    explicit Partition(std::vector<int> rgs);

    std::vector<int> labels_;
    std::vector<std::vector<int>> blocks_;
};

/// True iff every block of `fine` lies inside a block of `coarse`, i.e.
/// coarse ≤ fine in the coarsening order.
bool refines(const Partition& fine, const Partition& coarse);

/// Finest common coarsening: components of the union relation.
Partition meet(const Partition& a, const Partition& b);

/// Coarsest common refinement: blockwise intersections.
Partition join(const Partition& a, const Partition& b);

/// The equivalence relation on the target generated by images of blocks.
Partition image_partition(const SetMap& f, const Partition& p);

/// Representative of the isomorphism class: block sizes laid out in weakly
/// decreasing order on consecutive labels.
Partition canonicalize(const Partition& p);

/// A bijection σ with image_partition(σ, p) == canonicalize(p). Blocks are
/// sent in order of (size desc, min element asc), elements in increasing order.
SetMap canonical_relabeling(const Partition& p);

bool are_isomorphic(const Partition& a, const Partition& b);

/// All set partitions of {0..m-1}, in restricted-growth-string order.
std::vector<Partition> all_partitions(std::size_t m);

/// Calls `visit` on every refinement of `root` (including root and the discrete partition).
void for_each_refinement(const Partition& root, const std::function<void(const Partition&)>& visit);

/// Integer partitions of n as weakly decreasing part lists, lexicographically decreasing.
std::vector<std::vector<std::size_t>> integer_partitions(std::size_t n);

} // namespace forestcalc

template <>
struct std::hash<forestcalc::Partition> {
    std::size_t operator()(const forestcalc::Partition& p) const noexcept
    {
        std::size_t h = p.support_size();
        for (int x : p.labels())
            h = h * 1000003u ^ static_cast<std::size_t>(x);
        return h;
    }
};

namespace forestcalc {

/// Refinements of a root, with the order relation. Element 0 is the root
/// (minimum), the last element is the discrete partition (maximum).
class PosetTable {
public:
    PosetTable() = default;
    explicit PosetTable(std::vector<Partition> elements);

    std::size_t size() const noexcept { return elements_.size(); }
    const std::vector<Partition>& elements() const noexcept { return elements_; }
    const Partition& operator[](std::size_t i) const { return elements_[i]; }

    /// elements[i] ≤ elements[j] (elements[j] refines elements[i]).
    bool leq(std::size_t i, std::size_t j) const { return (order_[i][j / 64] >> (j % 64)) & 1u; }
    bool less(std::size_t i, std::size_t j) const { return i != j && leq(i, j); }

    /// Indices j with i < j.
    const std::vector<int>& strictly_above(std::size_t i) const { return above_[i]; }

    /// Index of a partition, or -1.
    int index_of(const Partition& p) const;

    std::size_t minimum() const noexcept { return 0; }
    std::size_t maximum() const noexcept { return elements_.size() - 1; }

private:
    std::vector<Partition> elements_;
    std::vector<std::vector<std::uint64_t>> order_;
    std::vector<std::vector<int>> above_;
    std::unordered_map<Partition, int> index_;
};

/// Poset of all refinements of Λ. Throws CapExceeded when the support exceeds `cap`.
PosetTable refinement_poset(const Partition& root, std::size_t cap = default_poset_cap);

/// Subposet on the given elements (kept in the given order).
PosetTable subposet(const PosetTable& poset, std::span<const int> keep);

} // namespace forestcalc

template <>
struct std::hash<forestcalc::SetMap> {
    std::size_t operator()(const forestcalc::SetMap& f) const noexcept
    {
        std::size_t h = f.target_size();
        for (int x : f.values())
            h = h * 1000003u ^ static_cast<std::size_t>(x);
        return h;
    }
};
