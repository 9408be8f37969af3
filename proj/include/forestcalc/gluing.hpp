#pragma once

#include "forestcalc/simplicial.hpp"
#include "forestcalc/union_find.hpp"

#include <cstddef>
#include <unordered_map>
#include <vector>

namespace forestcalc {

/// Colimit of a disjoint union of simplicial sets under identifications of
/// simplices. The generated relation is closed under faces and degeneracies;
/// a class is degenerate exactly when it contains a degenerate simplex.
/// Basepoints of pointed pieces are identified with each other.
class Gluing {
public:
    explicit Gluing(std::vector<const SimplicialSet*> pieces);

    /// Identifies simplex a of piece pa with simplex b of piece pb (same dimension).
    void identify(std::size_t pa, const Simplex& a, std::size_t pb, const Simplex& b);

    struct Result {
        SimplicialSet set;
        /// inclusions[p]: the map from piece p into the colimit.
        std::vector<SimplicialMap> inclusions;
        /// Number of merges between distinct classes.
        std::size_t merges = 0;
    };

    Result finish();

    std::size_t merges() const noexcept { return merges_; }

private:
    struct Key {
        std::size_t piece;
        Simplex simplex;
        friend bool operator==(const Key&, const Key&) = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept { return SimplexHash{}(k.simplex) * 31 + k.piece; }
    };

    std::size_t node(std::size_t piece, const Simplex& s);
    void drain();

    std::vector<const SimplicialSet*> pieces_;
    std::size_t top_ = 0;
    std::unordered_map<Key, std::size_t, KeyHash> ids_;
    std::vector<Key> keys_;
    UnionFind uf_;
    std::vector<std::pair<std::size_t, std::size_t>> pending_;
    std::size_t merges_ = 0;
};

} // namespace forestcalc
