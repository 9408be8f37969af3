#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace forestcalc {

inline constexpr std::size_t default_dimension_cap = 6;

/// Any simplex in Eilenberg-Zilber normal form: a nondegenerate cell together
/// with the monotone surjection [k] -> [dim cell] that degenerates it. The
/// cell itself has sigma = {0, 1, ..., d}.
struct Simplex {
    int cell = 0;
    std::vector<int> sigma;

    static Simplex of_cell(int cell, std::size_t dim);

    std::size_t dim() const noexcept { return sigma.size() - 1; }
    std::size_t cell_dim() const noexcept { return static_cast<std::size_t>(sigma.back()); }
    bool is_nondegenerate() const noexcept { return cell_dim() == dim(); }

    friend bool operator==(const Simplex&, const Simplex&) = default;
    friend auto operator<=>(const Simplex&, const Simplex&) = default;
};

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const noexcept;
};

struct TupleHash {
    std::size_t operator()(const std::vector<Simplex>& t) const noexcept;
};

/// s_i: duplicates sigma[i].
Simplex degeneracy(const Simplex& x, std::size_t i);

/// (sigma ∘ tau)[t] = sigma[tau[t]], surjections in one-line form.
std::vector<int> compose_surjections(const std::vector<int>& sigma, const std::vector<int>& tau);

/// Finite simplicial set stored by its nondegenerate cells. faces(d, c) lists
/// the d+1 faces of a d-cell (d ≥ 1), each a (d-1)-simplex in normal form.
class SimplicialSet {
public:
    bool empty() const noexcept { return faces_.empty() || faces_[0].empty(); }
    /// Top dimension with a cell; 0 for the empty set.
    std::size_t dimension() const noexcept { return faces_.empty() ? 0 : faces_.size() - 1; }
    std::size_t count(std::size_t d) const noexcept { return d < faces_.size() ? faces_[d].size() : 0; }
    std::size_t total_cells() const noexcept;
    std::vector<std::size_t> census() const;

    const std::vector<Simplex>& faces(std::size_t d, int c) const { return faces_[d][static_cast<std::size_t>(c)]; }

    int add_vertex();
    /// Adds a (faces.size()-1)-cell. Faces are checked for dimension and range,
    /// not for the simplicial identities (see validate()).
    int add_cell(std::vector<Simplex> faces);

    /// d_i of any simplex.
    Simplex face(const Simplex& x, std::size_t i) const;

    /// Vertex of position j in a simplex (j-th vertex of the underlying k-simplex).
    int vertex(const Simplex& x, std::size_t j) const;

    /// Checks d_i d_j = d_{j-1} d_i on every cell and the basepoint's range.
    /// Throws ValidationError naming the first offending cell.
    void validate() const;

    std::optional<int> basepoint;

private:
    std::vector<std::vector<std::vector<Simplex>>> faces_;
};

/// Euler characteristic Σ (-1)^d #cells_d.
long euler_characteristic(const SimplicialSet& x);

/// Per-dimension membership flags for a set of nondegenerate cells.
using CellSet = std::vector<std::vector<bool>>;

CellSet empty_cells(const SimplicialSet& x);
CellSet all_cells(const SimplicialSet& x);
bool contains(const CellSet& s, std::size_t d, int c);
void insert(CellSet& s, std::size_t d, int c);
std::size_t cell_count(const CellSet& s);
CellSet set_union(const CellSet& a, const CellSet& b);
CellSet set_intersection(const CellSet& a, const CellSet& b);
bool is_subset(const CellSet& a, const CellSet& b);

/// Closes a set of cells under faces.
CellSet face_closure(const SimplicialSet& x, CellSet s);
/// True iff every face of a member lies in the set.
bool is_subobject(const SimplicialSet& x, const CellSet& s);

/// A simplicial map given by the images of nondegenerate cells.
struct SimplicialMap {
    std::vector<std::vector<Simplex>> image;

    /// Image of any simplex: (c, sigma) -> (c', tau ∘ sigma) for f(c) = (c', tau).
    Simplex operator()(const Simplex& x) const;
};

/// Checks f(d_i c) = d_i f(c) for every cell. Throws ValidationError.
void validate_map(const SimplicialSet& source, const SimplicialSet& target, const SimplicialMap& f);

SimplicialMap identity_map(const SimplicialSet& x);
SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f);

/// Image of f as a cell set of the target.
CellSet image_cells(const SimplicialSet& target, const SimplicialMap& f);

/// Subobject as a simplicial set of its own, with the inclusion.
struct Restriction {
    SimplicialSet set;
    /// origin[d][c]: the ambient cell of each new cell.
    std::vector<std::vector<int>> origin;
    /// index[d][c]: new index of an ambient cell, or -1.
    std::vector<std::vector<int>> index;
};

Restriction restrict_to(const SimplicialSet& x, const CellSet& s);

/// X/S with the collapsed subobject as basepoint vertex 0. X/∅ adds a
/// disjoint basepoint.
struct Quotient {
    SimplicialSet set;
    /// index[d][c]: image of an ambient cell, -1 when it was collapsed.
    std::vector<std::vector<int>> index;
    std::vector<std::vector<int>> origin;

    /// Image of any ambient simplex.
    Simplex operator()(const Simplex& x) const;
};

Quotient quotient(const SimplicialSet& x, const CellSet& collapsed);

/// Induced map X/S -> Y/T of a map f: X -> Y with f(S) ⊆ T.
SimplicialMap induced_on_quotients(const Quotient& source, const Quotient& target, const SimplicialMap& f);

/// Product of finitely many simplicial sets. Cells are tuples of simplices
/// of a common dimension that share no degeneracy, i.e. lattice paths through
/// a product of cells.
struct Product {
    SimplicialSet set;
    /// factors[d][c]: the tuple of factor simplices of each cell.
    std::vector<std::vector<std::vector<Simplex>>> factors;
    std::unordered_map<std::vector<Simplex>, int, TupleHash> lookup;
    std::size_t arity = 0;

    /// Normal form of any tuple of equal-dimension factor simplices.
    Simplex operator()(const std::vector<Simplex>& tuple) const;
};

/// Throws CapExceeded when the product dimension would exceed `dimension_cap`.
Product product(std::span<const SimplicialSet* const> factors, std::size_t dimension_cap = default_dimension_cap);
Product product(const SimplicialSet& a, const SimplicialSet& b, std::size_t dimension_cap = default_dimension_cap);
Product power(const SimplicialSet& x, std::size_t k, std::size_t dimension_cap = default_dimension_cap);

/// Map between products given on factor tuples (e.g. a reindexing or a
/// product of maps).
SimplicialMap map_of_products(const Product& source, const Product& target,
                              const std::function<std::vector<Simplex>(const std::vector<Simplex>&)>& on_tuples);

/// Cells of A×B lying over a basepoint of A or of B.
CellSet wedge_cells(const Product& p, const SimplicialSet& a, const SimplicialSet& b);

/// A∧B = A×B/(A∨B); both factors need basepoints.
struct Smash {
    Product product;
    Quotient quotient;

    const SimplicialSet& set() const noexcept { return quotient.set; }
    Simplex operator()(const Simplex& a, const Simplex& b) const { return quotient(product({a, b})); }
};

Smash smash(const SimplicialSet& a, const SimplicialSet& b, std::size_t dimension_cap = default_dimension_cap);

/// One-point union; basepoints identified, the first set's cells come first.
SimplicialSet wedge(const SimplicialSet& a, const SimplicialSet& b);

/// Permutations of cells generating a group of simplicial automorphisms.
struct PermutationAction {
    std::vector<SimplicialMap> generators;
};

/// Checks that each generator permutes the cells of each dimension, commutes
/// with faces and fixes the basepoint. Throws ValidationError.
void validate_action(const SimplicialSet& x, const PermutationAction& action);

/// Orbit simplicial set. This is the homotopy quotient only when the action
/// is free off the basepoint.
struct OrbitQuotient {
    SimplicialSet set;
    /// orbit[d][c]: new cell of each old cell.
    std::vector<std::vector<int>> orbit;
};

OrbitQuotient quotient_by_group(const SimplicialSet& x, const PermutationAction& action);

/// First non-identity map among `elements` fixing a cell other than the
/// basepoint (and its degeneracies), as (element index, dim, cell).
struct FixedCell {
    std::size_t element = 0;
    std::size_t dim = 0;
    int cell = 0;
};
std::optional<FixedCell> find_fixed_cell(const SimplicialSet& x, std::span<const SimplicialMap> elements);

// -------------------------------------------------------------- models

SimplicialSet point();
/// k isolated vertices, basepoint vertex 0 when k ≥ 1.
SimplicialSet discrete_points(std::size_t k);
/// One vertex and one edge.
SimplicialSet minimal_circle();
/// Two vertices and one edge, basepoint 0.
SimplicialSet interval();
/// k loops on one vertex.
SimplicialSet wedge_of_circles(std::size_t k);
/// The standard d-simplex with all its faces (as an ordered simplicial complex).
SimplicialSet standard_simplex(std::size_t d);

/// Ordered simplicial complex from vertex lists (each list sorted ascending
/// and closed under faces automatically). Vertices are 0..num_vertices-1.
struct Complex {
    SimplicialSet set;
    /// simplices[d][c]: vertex list of each cell.
    std::vector<std::vector<std::vector<int>>> simplices;
    std::map<std::vector<int>, int> lookup;

    /// Cell of a sorted vertex list, or -1.
    int find(const std::vector<int>& vertices) const;
};

Complex simplicial_complex(std::size_t num_vertices, const std::vector<std::vector<int>>& facets);

/// Cell set of the subcomplex spanned by the given facets.
CellSet subcomplex(const Complex& complex, const std::vector<std::vector<int>>& facets);

} // namespace forestcalc
