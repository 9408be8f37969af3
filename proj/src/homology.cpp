#include "forestcalc/homology.hpp"

#include "forestcalc/error.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

namespace forestcalc {

std::size_t HomologyResult::rank(int degree) const
{
    for (const auto& g : groups)
        if (g.degree == degree)
            return g.rank;
    return 0;
}

std::vector<Integer> HomologyResult::torsion(int degree) const
{
    for (const auto& g : groups)
        if (g.degree == degree)
            return g.torsion;
    return {};
}

bool HomologyResult::is_zero() const
{
    return std::all_of(groups.begin(), groups.end(), [](const HomologyGroup& g) { return g.is_zero(); });
}

long HomologyResult::euler_characteristic() const
{
    long chi = 0;
    for (const auto& g : groups)
        chi += (g.degree % 2 == 0 ? 1 : -1) * static_cast<long>(g.rank);
    return chi;
}

std::vector<int> HomologyResult::support() const
{
    std::vector<int> out;
    for (const auto& g : groups)
        if (!g.is_zero())
            out.push_back(g.degree);
    return out;
}

std::string HomologyResult::to_string() const
{
    std::ostringstream os;
    const std::string ring = coefficients.name();
    bool any = false;
    for (const auto& g : groups) {
        if (g.is_zero())
            continue;
        os << (any ? ", " : "") << (reduced ? "~H" : "H") << g.degree << " = ";
        bool first = true;
        if (g.rank > 0) {
            os << ring;
            if (g.rank > 1)
                os << '^' << g.rank;
            first = false;
        }
        for (const auto& t : g.torsion) {
            os << (first ? "" : " + ") << "Z/" << t;
            first = false;
        }
        any = true;
    }
    return any ? os.str() : "0";
}

std::size_t ChainComplex::dim(int degree) const
{
    if (degree < lowest_degree || degree > highest_degree())
        return 0;
    return dims[static_cast<std::size_t>(degree - lowest_degree)];
}

std::optional<int> ChainComplex::failing_square() const
{
    for (std::size_t i = 2; i < boundary.size(); ++i) {
        const auto& upper = boundary[i];
        const auto& lower = boundary[i - 1];
        for (const auto& column : upper.columns) {
            std::map<int, Integer> acc;
            for (const auto& [mid, a] : column)
                for (const auto& [row, b] : lower.columns[static_cast<std::size_t>(mid)])
                    acc[row] += Integer(a) * b;
            for (const auto& [row, v] : acc)
                if (v != 0)
                    return lowest_degree + static_cast<int>(i);
        }
    }
    return std::nullopt;
}

ChainComplex normalized_chains(const SimplicialSet& x, bool reduced)
{
    ChainComplex c;
    c.lowest_degree = reduced ? -1 : 0;
    if (reduced) {
        c.dims.push_back(1);
        c.boundary.push_back(SparseIntMatrix{0, 1, {{}}});
    }
    if (x.empty())
        return c;
    for (std::size_t d = 0; d <= x.dimension(); ++d) {
        SparseIntMatrix m;
        m.cols = x.count(d);
        m.rows = d == 0 ? (reduced ? 1 : 0) : x.count(d - 1);
        m.columns.resize(m.cols);
        for (std::size_t cell = 0; cell < m.cols; ++cell) {
            if (d == 0) {
                if (reduced)
                    m.columns[cell].emplace_back(0, 1);
                continue;
            }
            std::map<int, long> col;
            const auto& faces = x.faces(d, static_cast<int>(cell));
            for (std::size_t i = 0; i <= d; ++i)
                if (faces[i].is_nondegenerate())
                    col[faces[i].cell] += i % 2 ? -1 : 1;
            for (const auto& [row, v] : col)
                if (v != 0)
                    m.columns[cell].emplace_back(row, v);
        }
        c.dims.push_back(m.cols);
        c.boundary.push_back(std::move(m));
    }
    return c;
}

HomologyResult homology(const ChainComplex& chains, const Coefficients& coeff, bool reduced_flag)
{
    HomologyResult h;
    h.reduced = reduced_flag;
    h.coefficients = coeff;
    const std::size_t n = chains.dims.size();
    std::vector<Diagonalization> diag(n + 1);
    for (std::size_t i = 0; i < n; ++i)
        diag[i] = diagonalize(chains.boundary[i], coeff);
    for (std::size_t i = 0; i < n; ++i) {
        HomologyGroup g;
        g.degree = chains.lowest_degree + static_cast<int>(i);
        g.rank = chains.dims[i] - diag[i].rank - diag[i + 1].rank;
        if (coeff.kind == Coefficients::Kind::integers)
            g.torsion = diag[i + 1].torsion;
        h.groups.push_back(std::move(g));
    }
    if (!h.groups.empty() && h.groups.front().degree < 0 && h.groups.front().is_zero())
        h.groups.erase(h.groups.begin());
    return h;
}

HomologyResult homology(const SimplicialSet& x, bool reduced, const Coefficients& coeff)
{
    return homology(normalized_chains(x, reduced), coeff, reduced);
}

// ------------------------------------------------------------ cubes

Cube cover_cube(const SimplicialSet& ambient, const std::vector<CellSet>& cover)
{
    const std::size_t d = cover.size();
    if (d > max_cube_dimension)
        throw CapExceeded("cube dimension", d, max_cube_dimension);
    CellSet covered = empty_cells(ambient);
    for (const auto& piece : cover) {
        if (!is_subobject(ambient, piece))
            throw ValidationError("cover piece is not closed under faces");
        covered = set_union(covered, piece);
    }
    if (covered != all_cells(ambient))
        throw ValidationError("the pieces do not cover the ambient simplicial set");
    Cube cube{d, ambient, {}};
    const std::size_t full = (std::size_t{1} << d) - 1;
    for (std::size_t u = 0; u <= full; ++u) {
        CellSet corner = all_cells(ambient);
        for (std::size_t i = 0; i < d; ++i)
            if (!((u >> i) & 1u))
                corner = set_intersection(corner, cover[i]);
        cube.corners.push_back(std::move(corner));
    }
    return cube;
}

namespace {

std::string subset_name(std::size_t u, std::size_t d)
{
    std::string s = "{";
    for (std::size_t i = 0; i < d; ++i)
        if ((u >> i) & 1u)
            s += (s.size() > 1 ? "," : "") + std::to_string(i);
    return s + "}";
}

} // namespace

void validate_cube(const Cube& cube)
{
    const std::size_t d = cube.dimension;
    if (d > max_cube_dimension)
        throw CapExceeded("cube dimension", d, max_cube_dimension);
    if (cube.corners.size() != (std::size_t{1} << d))
        throw ValidationError("a " + std::to_string(d) + "-cube needs " + std::to_string(std::size_t{1} << d) + " corners, got " +
                              std::to_string(cube.corners.size()));
    const CellSet shape = empty_cells(cube.ambient);
    for (std::size_t u = 0; u < cube.corners.size(); ++u) {
        const auto& corner = cube.corners[u];
        bool same = corner.size() == shape.size();
        for (std::size_t k = 0; same && k < shape.size(); ++k)
            same = corner[k].size() == shape[k].size();
        if (!same || !is_subobject(cube.ambient, corner))
            throw ValidationError("corner " + subset_name(u, d) + " is not a subobject of the ambient set");
    }
    for (std::size_t u = 0; u < cube.corners.size(); ++u)
        for (std::size_t j = 0; j < d; ++j)
            if (!((u >> j) & 1u) && !is_subset(cube.corners[u], cube.corners[u | (std::size_t{1} << j)]))
                throw ValidationError("map from corner " + subset_name(u, d) + " to " + subset_name(u | (std::size_t{1} << j), d) +
                                      " is not an inclusion");
}

ChainComplex total_cofiber(const Cube& cube)
{
    validate_cube(cube);
    const std::size_t d = cube.dimension;
    const std::size_t corners = cube.corners.size();
    const std::size_t top = cube.ambient.empty() ? 0 : cube.ambient.dimension();
    const int highest = static_cast<int>(top + d);

    auto shift = [&](std::size_t u) { return static_cast<int>(d) - std::popcount(u); };
    // generators of total degree t: (U, cell of dimension t - shift(U)), U ascending
    std::vector<std::map<std::pair<std::size_t, int>, int>> index(static_cast<std::size_t>(highest) + 1);
    for (int t = 0; t <= highest; ++t)
        for (std::size_t u = 0; u < corners; ++u) {
            const int p = t - shift(u);
            if (p < 0 || static_cast<std::size_t>(p) > top || cube.ambient.empty())
                continue;
            const auto& cells = cube.corners[u][static_cast<std::size_t>(p)];
            for (std::size_t c = 0; c < cells.size(); ++c)
                if (cells[c])
                    index[static_cast<std::size_t>(t)].emplace(std::pair{u, static_cast<int>(c)}, static_cast<int>(index[static_cast<std::size_t>(t)].size()));
        }

    ChainComplex out;
    out.lowest_degree = 0;
    for (int t = 0; t <= highest; ++t) {
        const auto& here = index[static_cast<std::size_t>(t)];
        SparseIntMatrix m;
        m.cols = here.size();
        m.rows = t > 0 ? index[static_cast<std::size_t>(t - 1)].size() : 0;
        m.columns.resize(m.cols);
        for (const auto& [key, col] : here) {
            const auto [u, c] = key;
            const int p = t - shift(u);
            std::map<int, long> entries;
            if (t > 0) {
                const auto& below = index[static_cast<std::size_t>(t - 1)];
                if (p > 0) {
                    const long sign = shift(u) % 2 ? -1 : 1;
                    const auto& faces = cube.ambient.faces(static_cast<std::size_t>(p), c);
                    for (std::size_t i = 0; i < faces.size(); ++i)
                        if (faces[i].is_nondegenerate())
                            entries[below.at({u, faces[i].cell})] += sign * (i % 2 ? -1 : 1);
                }
                for (std::size_t j = 0; j < d; ++j) {
                    if ((u >> j) & 1u)
                        continue;
                    int missing_before = 0;
                    for (std::size_t i = 0; i < j; ++i)
                        missing_before += !((u >> i) & 1u);
                    entries[below.at({u | (std::size_t{1} << j), c})] += missing_before % 2 ? -1 : 1;
                }
            }
            for (const auto& [row, v] : entries)
                if (v != 0)
                    m.columns[static_cast<std::size_t>(col)].emplace_back(row, v);
        }
        out.dims.push_back(m.cols);
        out.boundary.push_back(std::move(m));
    }
    return out;
}

CubeCertificate total_cofiber_check(const Cube& cube, const Coefficients& coeff)
{
    ChainComplex chains = total_cofiber(cube);
    if (auto bad = chains.failing_square())
        throw PreconditionError("total cofiber differential does not square to zero in degree " + std::to_string(*bad));
    CubeCertificate cert;
    cert.homology = homology(chains, coeff);
    cert.acyclic = cert.homology.is_zero();
    if (!cert.acyclic)
        cert.witness_degree = cert.homology.support().front();
    return cert;
}

} // namespace forestcalc
