#include "forestcalc/simplicial.hpp"

#include "forestcalc/error.hpp"
#include "forestcalc/union_find.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace forestcalc {

Simplex Simplex::of_cell(int cell, std::size_t dim)
{
    Simplex s{cell, std::vector<int>(dim + 1)};
    std::iota(s.sigma.begin(), s.sigma.end(), 0);
    return s;
}

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept
{
    std::size_t h = static_cast<std::size_t>(s.cell) * 0x9e3779b97f4a7c15ull;
    for (int v : s.sigma)
        h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
    return h;
}

std::size_t TupleHash::operator()(const std::vector<Simplex>& t) const noexcept
{
    std::size_t h = t.size();
    SimplexHash one;
    for (const auto& s : t)
        h = (h ^ one(s)) * 1099511628211ull + 0x7f4a7c15;
    return h;
}

Simplex degeneracy(const Simplex& x, std::size_t i)
{
    Simplex out{x.cell, {}};
    out.sigma.reserve(x.sigma.size() + 1);
    out.sigma.insert(out.sigma.end(), x.sigma.begin(), x.sigma.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    out.sigma.insert(out.sigma.end(), x.sigma.begin() + static_cast<std::ptrdiff_t>(i), x.sigma.end());
    return out;
}

std::vector<int> compose_surjections(const std::vector<int>& sigma, const std::vector<int>& tau)
{
    std::vector<int> out(tau.size());
    for (std::size_t t = 0; t < tau.size(); ++t)
        out[t] = sigma[static_cast<std::size_t>(tau[t])];
    return out;
}

// ------------------------------------------------------------ SimplicialSet

std::size_t SimplicialSet::total_cells() const noexcept
{
    std::size_t n = 0;
    for (const auto& level : faces_)
        n += level.size();
    return n;
}

std::vector<std::size_t> SimplicialSet::census() const
{
    std::vector<std::size_t> out;
    for (const auto& level : faces_)
        out.push_back(level.size());
    return out;
}

int SimplicialSet::add_vertex()
{
    if (faces_.empty())
        faces_.emplace_back();
    faces_[0].emplace_back();
    return static_cast<int>(faces_[0].size() - 1);
}

int SimplicialSet::add_cell(std::vector<Simplex> faces)
{
    if (faces.size() < 2)
        throw ValidationError("a cell of dimension d >= 1 needs d+1 faces");
    const std::size_t d = faces.size() - 1;
    for (std::size_t i = 0; i < faces.size(); ++i) {
        const Simplex& f = faces[i];
        if (f.sigma.size() != d || f.sigma.front() != 0)
            throw ValidationError("face " + std::to_string(i) + " of a " + std::to_string(d) + "-cell has the wrong dimension");
        for (std::size_t t = 1; t < f.sigma.size(); ++t)
            if (f.sigma[t] != f.sigma[t - 1] && f.sigma[t] != f.sigma[t - 1] + 1)
                throw ValidationError("face " + std::to_string(i) + " of a " + std::to_string(d) + "-cell has a non-surjective degeneracy");
        if (f.cell < 0 || static_cast<std::size_t>(f.cell) >= count(f.cell_dim()))
            throw ValidationError("face " + std::to_string(i) + " of a " + std::to_string(d) + "-cell refers to missing cell " +
                                  std::to_string(f.cell) + " in dimension " + std::to_string(f.cell_dim()));
    }
    if (faces_.size() <= d)
        faces_.resize(d + 1);
    faces_[d].push_back(std::move(faces));
    return static_cast<int>(faces_[d].size() - 1);
}

Simplex SimplicialSet::face(const Simplex& x, std::size_t i) const
{
    const std::size_t k = x.dim();
    const int j = x.sigma[i];
    std::vector<int> rho;
    rho.reserve(k);
    for (std::size_t t = 0; t <= k; ++t)
        if (t != i)
            rho.push_back(x.sigma[t]);
    const bool still_onto = (i > 0 && x.sigma[i - 1] == j) || (i < k && x.sigma[i + 1] == j);
    if (still_onto)
        return {x.cell, std::move(rho)};
    for (int& v : rho)
        if (v > j)
            --v;
    const Simplex& f = faces_[x.cell_dim()][static_cast<std::size_t>(x.cell)][static_cast<std::size_t>(j)];
    return {f.cell, compose_surjections(f.sigma, rho)};
}

int SimplicialSet::vertex(const Simplex& x, std::size_t j) const
{
    Simplex cur = x;
    std::size_t pos = j;
    while (cur.cell_dim() > 0) {
        const std::size_t d = cur.cell_dim();
        const std::size_t v = static_cast<std::size_t>(cur.sigma[pos]);
        // drop a vertex other than v
        const std::size_t drop = v > 0 ? 0 : d;
        const Simplex& f = faces_[d][static_cast<std::size_t>(cur.cell)][drop];
        pos = drop == 0 ? v - 1 : v;
        cur = f;
    }
    return cur.cell;
}

void SimplicialSet::validate() const
{
    if (basepoint && (*basepoint < 0 || static_cast<std::size_t>(*basepoint) >= count(0)))
        throw ValidationError("basepoint " + std::to_string(*basepoint) + " is not a vertex");
    for (std::size_t d = 2; d < faces_.size(); ++d)
        for (std::size_t c = 0; c < faces_[d].size(); ++c) {
            Simplex x = Simplex::of_cell(static_cast<int>(c), d);
            for (std::size_t j = 1; j <= d; ++j)
                for (std::size_t i = 0; i < j; ++i)
                    if (face(face(x, j), i) != face(face(x, i), j - 1))
                        throw ValidationError("simplicial identity d" + std::to_string(i) + " d" + std::to_string(j) + " fails on " +
                                              std::to_string(d) + "-cell " + std::to_string(c));
        }
}

long euler_characteristic(const SimplicialSet& x)
{
    long chi = 0;
    for (std::size_t d = 0; d <= x.dimension(); ++d)
        chi += (d % 2 ? -1 : 1) * static_cast<long>(x.count(d));
    return chi;
}

// ------------------------------------------------------------ cell sets

CellSet empty_cells(const SimplicialSet& x)
{
    CellSet s(x.dimension() + 1);
    for (std::size_t d = 0; d <= x.dimension(); ++d)
        s[d].assign(x.count(d), false);
    return s;
}

CellSet all_cells(const SimplicialSet& x)
{
    CellSet s(x.dimension() + 1);
    for (std::size_t d = 0; d <= x.dimension(); ++d)
        s[d].assign(x.count(d), true);
    return s;
}

bool contains(const CellSet& s, std::size_t d, int c)
{
    return d < s.size() && c >= 0 && static_cast<std::size_t>(c) < s[d].size() && s[d][static_cast<std::size_t>(c)];
}

void insert(CellSet& s, std::size_t d, int c)
{
    s[d][static_cast<std::size_t>(c)] = true;
}

std::size_t cell_count(const CellSet& s)
{
    std::size_t n = 0;
    for (const auto& level : s)
        n += static_cast<std::size_t>(std::count(level.begin(), level.end(), true));
    return n;
}

namespace {

void require_same_shape(const CellSet& a, const CellSet& b)
{
    bool same = a.size() == b.size();
    for (std::size_t d = 0; same && d < a.size(); ++d)
        same = a[d].size() == b[d].size();
    if (!same)
        throw ValidationError("cell sets belong to different simplicial sets");
}

} // namespace

CellSet set_union(const CellSet& a, const CellSet& b)
{
    require_same_shape(a, b);
    CellSet out = a;
    for (std::size_t d = 0; d < a.size(); ++d)
        for (std::size_t c = 0; c < a[d].size(); ++c)
            out[d][c] = a[d][c] || b[d][c];
    return out;
}

CellSet set_intersection(const CellSet& a, const CellSet& b)
{
    require_same_shape(a, b);
    CellSet out = a;
    for (std::size_t d = 0; d < a.size(); ++d)
        for (std::size_t c = 0; c < a[d].size(); ++c)
            out[d][c] = a[d][c] && b[d][c];
    return out;
}

bool is_subset(const CellSet& a, const CellSet& b)
{
    require_same_shape(a, b);
    for (std::size_t d = 0; d < a.size(); ++d)
        for (std::size_t c = 0; c < a[d].size(); ++c)
            if (a[d][c] && !b[d][c])
                return false;
    return true;
}

CellSet face_closure(const SimplicialSet& x, CellSet s)
{
    for (std::size_t d = s.size(); d-- > 1;)
        for (std::size_t c = 0; c < s[d].size(); ++c)
            if (s[d][c])
                for (const auto& f : x.faces(d, static_cast<int>(c)))
                    insert(s, f.cell_dim(), f.cell);
    return s;
}

bool is_subobject(const SimplicialSet& x, const CellSet& s)
{
    for (std::size_t d = 1; d < s.size(); ++d)
        for (std::size_t c = 0; c < s[d].size(); ++c)
            if (s[d][c])
                for (const auto& f : x.faces(d, static_cast<int>(c)))
                    if (!contains(s, f.cell_dim(), f.cell))
                        return false;
    return true;
}

// ------------------------------------------------------------ maps

Simplex SimplicialMap::operator()(const Simplex& x) const
{
    const Simplex& img = image[x.cell_dim()][static_cast<std::size_t>(x.cell)];
    return {img.cell, compose_surjections(img.sigma, x.sigma)};
}

void validate_map(const SimplicialSet& source, const SimplicialSet& target, const SimplicialMap& f)
{
    for (std::size_t d = 0; d <= source.dimension() && !source.empty(); ++d) {
        if (d >= f.image.size() || f.image[d].size() != source.count(d))
            throw ValidationError("map has no image for some " + std::to_string(d) + "-cells");
        for (std::size_t c = 0; c < source.count(d); ++c) {
            const Simplex& y = f.image[d][c];
            if (y.dim() != d || y.cell < 0 || static_cast<std::size_t>(y.cell) >= target.count(y.cell_dim()))
                throw ValidationError("image of " + std::to_string(d) + "-cell " + std::to_string(c) + " is not a simplex of the target");
            for (std::size_t i = 0; d > 0 && i <= d; ++i)
                if (f(source.faces(d, static_cast<int>(c))[i]) != target.face(y, i))
                    throw ValidationError("map does not commute with face " + std::to_string(i) + " on " + std::to_string(d) + "-cell " +
                                          std::to_string(c));
        }
    }
    if (source.basepoint && target.basepoint && f.image[0][static_cast<std::size_t>(*source.basepoint)].cell != *target.basepoint)
        throw ValidationError("map does not preserve basepoints");
}

SimplicialMap identity_map(const SimplicialSet& x)
{
    SimplicialMap f;
    f.image.resize(x.dimension() + 1);
    for (std::size_t d = 0; d <= x.dimension(); ++d)
        for (std::size_t c = 0; c < x.count(d); ++c)
            f.image[d].push_back(Simplex::of_cell(static_cast<int>(c), d));
    return f;
}

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f)
{
    SimplicialMap h;
    h.image.resize(f.image.size());
    for (std::size_t d = 0; d < f.image.size(); ++d)
        for (const auto& y : f.image[d])
            h.image[d].push_back(g(y));
    return h;
}

CellSet image_cells(const SimplicialSet& target, const SimplicialMap& f)
{
    CellSet s = empty_cells(target);
    for (const auto& level : f.image)
        for (const auto& y : level)
            insert(s, y.cell_dim(), y.cell);
    return s;
}

// ------------------------------------------------------------ subobjects and quotients

namespace {

void require_subobject(const SimplicialSet& x, const CellSet& s)
{
    if (s.size() != x.dimension() + 1)
        throw ValidationError("cell set does not match the simplicial set");
    for (std::size_t d = 0; d < s.size(); ++d)
        if (s[d].size() != x.count(d))
            throw ValidationError("cell set does not match the simplicial set in dimension " + std::to_string(d));
    for (std::size_t d = 1; d < s.size(); ++d)
        for (std::size_t c = 0; c < s[d].size(); ++c)
            if (s[d][c])
                for (const auto& f : x.faces(d, static_cast<int>(c)))
                    if (!contains(s, f.cell_dim(), f.cell))
                        throw ValidationError("not closed under faces: " + std::to_string(d) + "-cell " + std::to_string(c) + " has a face outside");
}

} // namespace

Restriction restrict_to(const SimplicialSet& x, const CellSet& s)
{
    require_subobject(x, s);
    Restriction r;
    r.index.resize(s.size());
    r.origin.resize(s.size());
    for (std::size_t d = 0; d < s.size(); ++d) {
        r.index[d].assign(s[d].size(), -1);
        for (std::size_t c = 0; c < s[d].size(); ++c) {
            if (!s[d][c])
                continue;
            if (d == 0) {
                r.index[0][c] = r.set.add_vertex();
            } else {
                std::vector<Simplex> faces = x.faces(d, static_cast<int>(c));
                for (auto& f : faces)
                    f.cell = r.index[f.cell_dim()][static_cast<std::size_t>(f.cell)];
                r.index[d][c] = r.set.add_cell(std::move(faces));
            }
            r.origin[d].push_back(static_cast<int>(c));
        }
    }
    if (x.basepoint && contains(s, 0, *x.basepoint))
        r.set.basepoint = r.index[0][static_cast<std::size_t>(*x.basepoint)];
    return r;
}

Simplex Quotient::operator()(const Simplex& x) const
{
    const int c = index[x.cell_dim()][static_cast<std::size_t>(x.cell)];
    if (c < 0)
        return {0, std::vector<int>(x.sigma.size(), 0)};
    return {c, x.sigma};
}

Quotient quotient(const SimplicialSet& x, const CellSet& collapsed)
{
    require_subobject(x, collapsed);
    Quotient q;
    q.set.add_vertex();
    q.set.basepoint = 0;
    q.index.resize(x.dimension() + 1);
    q.origin.resize(x.dimension() + 1);
    q.origin[0].push_back(-1);
    for (std::size_t d = 0; d <= x.dimension() && !x.empty(); ++d) {
        q.index[d].assign(x.count(d), -1);
        for (std::size_t c = 0; c < x.count(d); ++c) {
            if (collapsed[d][c])
                continue;
            if (d == 0) {
                q.index[0][c] = q.set.add_vertex();
            } else {
                std::vector<Simplex> faces;
                for (const auto& f : x.faces(d, static_cast<int>(c)))
                    faces.push_back(q(f));
                q.index[d][c] = q.set.add_cell(std::move(faces));
            }
            q.origin[d].push_back(static_cast<int>(c));
        }
    }
    return q;
}

SimplicialMap induced_on_quotients(const Quotient& source, const Quotient& target, const SimplicialMap& f)
{
    // collapsed cells must land on the target basepoint
    for (std::size_t d = 0; d < source.index.size(); ++d)
        for (std::size_t c = 0; c < source.index[d].size(); ++c)
            if (source.index[d][c] < 0) {
                Simplex y = target(f(Simplex::of_cell(static_cast<int>(c), d)));
                if (y.cell_dim() != 0 || y.cell != 0)
                    throw ValidationError("map does not carry the collapsed " + std::to_string(d) + "-cell " + std::to_string(c) +
                                          " into the collapsed subobject");
            }
    SimplicialMap g;
    g.image.resize(source.set.dimension() + 1);
    for (std::size_t d = 0; d <= source.set.dimension(); ++d)
        for (std::size_t c = 0; c < source.set.count(d); ++c) {
            const int old = source.origin[d][c];
            if (old < 0)
                g.image[d].push_back(Simplex::of_cell(0, 0));
            else
                g.image[d].push_back(target(f(Simplex::of_cell(old, d))));
        }
    return g;
}

// ------------------------------------------------------------ products

Simplex Product::operator()(const std::vector<Simplex>& tuple) const
{
    const std::size_t k = tuple.empty() ? 0 : tuple.front().dim();
    // distinct points of [k] -> product of cell simplices, in order
    std::vector<int> rho(k + 1, 0);
    std::vector<std::size_t> firsts{0};
    for (std::size_t t = 1; t <= k; ++t) {
        bool moved = false;
        for (const auto& s : tuple)
            moved = moved || s.sigma[t] != s.sigma[t - 1];
        rho[t] = rho[t - 1] + (moved ? 1 : 0);
        if (moved)
            firsts.push_back(t);
    }
    std::vector<Simplex> key;
    key.reserve(tuple.size());
    for (const auto& s : tuple) {
        Simplex reduced{s.cell, {}};
        for (auto t : firsts)
            reduced.sigma.push_back(s.sigma[t]);
        key.push_back(std::move(reduced));
    }
    auto it = lookup.find(key);
    if (it == lookup.end())
        throw PreconditionError("tuple is not a simplex of this product");
    return {it->second, std::move(rho)};
}

Product product(std::span<const SimplicialSet* const> factors, std::size_t dimension_cap)
{
    Product p;
    p.arity = factors.size();
    std::size_t total_dim = 0;
    for (const auto* f : factors)
        total_dim += f->empty() ? 0 : f->dimension();
    if (total_dim > dimension_cap)
        throw CapExceeded("product dimension", total_dim, dimension_cap);
    for (const auto* f : factors)
        if (f->empty())
            return p;

    const std::size_t n = factors.size();
    // all tuples of cells, odometer order with the first factor slowest
    std::vector<std::vector<std::pair<std::size_t, int>>> cells(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t d = 0; d <= factors[j]->dimension(); ++d)
            for (std::size_t c = 0; c < factors[j]->count(d); ++c)
                cells[j].emplace_back(d, static_cast<int>(c));

    std::vector<std::vector<std::vector<Simplex>>> by_dim(total_dim + 1);
    std::vector<std::size_t> odo(n, 0);
    std::vector<int> dims(n), current(n);
    std::vector<std::vector<int>> path;
    std::function<void()> walk = [&] {
        bool done = true;
        for (std::size_t j = 0; j < n; ++j)
            done = done && current[j] == dims[j];
        if (done) {
            std::vector<Simplex> tuple(n);
            for (std::size_t j = 0; j < n; ++j) {
                tuple[j].cell = cells[j][odo[j]].second;
                for (const auto& point : path)
                    tuple[j].sigma.push_back(point[j]);
            }
            by_dim[path.size() - 1].push_back(std::move(tuple));
            return;
        }
        // steps: nonzero 0/1 vectors not overshooting, in increasing binary order
        const std::size_t steps = std::size_t{1} << n;
        for (std::size_t mask = 1; mask < steps; ++mask) {
            bool ok = true;
            for (std::size_t j = 0; j < n && ok; ++j)
                ok = !((mask >> j) & 1u) || current[j] < dims[j];
            if (!ok)
                continue;
            for (std::size_t j = 0; j < n; ++j)
                current[j] += static_cast<int>((mask >> j) & 1u);
            path.push_back(current);
            walk();
            path.pop_back();
            for (std::size_t j = 0; j < n; ++j)
                current[j] -= static_cast<int>((mask >> j) & 1u);
        }
    };
    for (;;) {
        for (std::size_t j = 0; j < n; ++j) {
            dims[j] = static_cast<int>(cells[j][odo[j]].first);
            current[j] = 0;
        }
        path.assign(1, current);
        walk();
        std::size_t j = n;
        while (j > 0) {
            --j;
            if (++odo[j] < cells[j].size())
                break;
            odo[j] = 0;
            if (j == 0) {
                j = n + 1;
                break;
            }
        }
        if (j == n + 1 || n == 0)
            break;
    }

    p.factors.resize(total_dim + 1);
    for (std::size_t d = 0; d <= total_dim; ++d)
        for (auto& tuple : by_dim[d]) {
            p.lookup.emplace(tuple, static_cast<int>(p.factors[d].size()));
            p.factors[d].push_back(std::move(tuple));
        }
    while (p.factors.size() > 1 && p.factors.back().empty())
        p.factors.pop_back();

    for (std::size_t d = 0; d < p.factors.size(); ++d)
        for (const auto& tuple : p.factors[d]) {
            if (d == 0) {
                p.set.add_vertex();
                continue;
            }
            std::vector<Simplex> faces;
            for (std::size_t i = 0; i <= d; ++i) {
                std::vector<Simplex> face_tuple;
                for (std::size_t j = 0; j < n; ++j)
                    face_tuple.push_back(factors[j]->face(tuple[j], i));
                faces.push_back(p(face_tuple));
            }
            p.set.add_cell(std::move(faces));
        }

    bool pointed = true;
    std::vector<Simplex> base;
    for (const auto* f : factors) {
        pointed = pointed && f->basepoint.has_value();
        if (f->basepoint)
            base.push_back(Simplex::of_cell(*f->basepoint, 0));
    }
    if (pointed)
        p.set.basepoint = p.lookup.at(base);
    return p;
}

Product product(const SimplicialSet& a, const SimplicialSet& b, std::size_t dimension_cap)
{
    const SimplicialSet* both[] = {&a, &b};
    return product(std::span<const SimplicialSet* const>(both), dimension_cap);
}

Product power(const SimplicialSet& x, std::size_t k, std::size_t dimension_cap)
{
    std::vector<const SimplicialSet*> copies(k, &x);
    return product(std::span<const SimplicialSet* const>(copies), dimension_cap);
}

SimplicialMap map_of_products(const Product& source, const Product& target,
                              const std::function<std::vector<Simplex>(const std::vector<Simplex>&)>& on_tuples)
{
    SimplicialMap f;
    f.image.resize(source.factors.size());
    for (std::size_t d = 0; d < source.factors.size(); ++d)
        for (const auto& tuple : source.factors[d])
            f.image[d].push_back(target(on_tuples(tuple)));
    return f;
}

CellSet wedge_cells(const Product& p, const SimplicialSet& a, const SimplicialSet& b)
{
    if (!a.basepoint || !b.basepoint)
        throw ValidationError("smash product needs basepoints on both factors");
    CellSet s = empty_cells(p.set);
    for (std::size_t d = 0; d < p.factors.size(); ++d)
        for (std::size_t c = 0; c < p.factors[d].size(); ++c) {
            const auto& t = p.factors[d][c];
            if ((t[0].cell_dim() == 0 && t[0].cell == *a.basepoint) || (t[1].cell_dim() == 0 && t[1].cell == *b.basepoint))
                s[d][c] = true;
        }
    return s;
}

Smash smash(const SimplicialSet& a, const SimplicialSet& b, std::size_t dimension_cap)
{
    if (!a.basepoint || !b.basepoint)
        throw ValidationError("smash product needs basepoints on both factors");
    Smash s{product(a, b, dimension_cap), {}};
    s.quotient = quotient(s.product.set, wedge_cells(s.product, a, b));
    return s;
}

SimplicialSet wedge(const SimplicialSet& a, const SimplicialSet& b)
{
    if (!a.basepoint || !b.basepoint)
        throw ValidationError("wedge needs basepoints on both summands");
    SimplicialSet out;
    std::vector<std::vector<int>> ia(a.dimension() + 1), ib(b.dimension() + 1);
    for (std::size_t d = 0; d <= std::max(a.dimension(), b.dimension()); ++d) {
        for (int pass = 0; pass < 2; ++pass) {
            const SimplicialSet& x = pass == 0 ? a : b;
            auto& idx = pass == 0 ? ia : ib;
            for (std::size_t c = 0; c < x.count(d); ++c) {
                if (d == 0) {
                    idx[0].push_back(pass == 1 && static_cast<int>(c) == *b.basepoint ? ia[0][static_cast<std::size_t>(*a.basepoint)]
                                                                                        : out.add_vertex());
                    continue;
                }
                std::vector<Simplex> faces = x.faces(d, static_cast<int>(c));
                for (auto& f : faces)
                    f.cell = idx[f.cell_dim()][static_cast<std::size_t>(f.cell)];
                idx[d].push_back(out.add_cell(std::move(faces)));
            }
        }
    }
    out.basepoint = ia[0][static_cast<std::size_t>(*a.basepoint)];
    return out;
}

// ------------------------------------------------------------ group actions

void validate_action(const SimplicialSet& x, const PermutationAction& action)
{
    for (std::size_t g = 0; g < action.generators.size(); ++g) {
        const auto& f = action.generators[g];
        for (std::size_t d = 0; d <= x.dimension(); ++d) {
            if (d >= f.image.size() || f.image[d].size() != x.count(d))
                throw ValidationError("generator " + std::to_string(g) + " is not defined on every " + std::to_string(d) + "-cell");
            std::vector<bool> hit(x.count(d), false);
            for (const auto& y : f.image[d]) {
                if (!y.is_nondegenerate() || y.dim() != d || y.cell < 0 || static_cast<std::size_t>(y.cell) >= x.count(d) ||
                    hit[static_cast<std::size_t>(y.cell)])
                    throw ValidationError("generator " + std::to_string(g) + " does not permute the " + std::to_string(d) + "-cells");
                hit[static_cast<std::size_t>(y.cell)] = true;
            }
        }
        try {
            validate_map(x, x, f);
        } catch (const ValidationError& e) {
            throw ValidationError("generator " + std::to_string(g) + " is not simplicial: " + e.what());
        }
    }
}

OrbitQuotient quotient_by_group(const SimplicialSet& x, const PermutationAction& action)
{
    validate_action(x, action);
    OrbitQuotient q;
    q.orbit.resize(x.dimension() + 1);
    for (std::size_t d = 0; d <= x.dimension() && !x.empty(); ++d) {
        UnionFind uf(x.count(d));
        for (const auto& g : action.generators)
            for (std::size_t c = 0; c < x.count(d); ++c)
                uf.unite(c, static_cast<std::size_t>(g.image[d][c].cell));
        q.orbit[d].assign(x.count(d), -1);
        for (std::size_t c = 0; c < x.count(d); ++c) {
            const std::size_t root = uf.find(c);
            if (root != c) {
                q.orbit[d][c] = q.orbit[d][root];
                continue;
            }
            if (d == 0) {
                q.orbit[0][c] = q.set.add_vertex();
            } else {
                std::vector<Simplex> faces = x.faces(d, static_cast<int>(c));
                for (auto& f : faces)
                    f.cell = q.orbit[f.cell_dim()][static_cast<std::size_t>(f.cell)];
                q.orbit[d][c] = q.set.add_cell(std::move(faces));
            }
        }
    }
    if (x.basepoint)
        q.set.basepoint = q.orbit[0][static_cast<std::size_t>(*x.basepoint)];
    return q;
}

std::optional<FixedCell> find_fixed_cell(const SimplicialSet& x, std::span<const SimplicialMap> elements)
{
    for (std::size_t e = 0; e < elements.size(); ++e)
        for (std::size_t d = 0; d <= x.dimension() && !x.empty(); ++d)
            for (std::size_t c = 0; c < x.count(d); ++c) {
                if (d == 0 && x.basepoint && static_cast<int>(c) == *x.basepoint)
                    continue;
                if (elements[e].image[d][c].cell == static_cast<int>(c))
                    return FixedCell{e, d, static_cast<int>(c)};
            }
    return std::nullopt;
}

// ------------------------------------------------------------ models

SimplicialSet point()
{
    return discrete_points(1);
}

SimplicialSet discrete_points(std::size_t k)
{
    SimplicialSet x;
    for (std::size_t i = 0; i < k; ++i)
        x.add_vertex();
    if (k > 0)
        x.basepoint = 0;
    return x;
}

SimplicialSet minimal_circle()
{
    return wedge_of_circles(1);
}

SimplicialSet interval()
{
    return standard_simplex(1);
}

SimplicialSet wedge_of_circles(std::size_t k)
{
    SimplicialSet x;
    x.add_vertex();
    for (std::size_t i = 0; i < k; ++i)
        x.add_cell({Simplex::of_cell(0, 0), Simplex::of_cell(0, 0)});
    x.basepoint = 0;
    return x;
}

SimplicialSet standard_simplex(std::size_t d)
{
    std::vector<int> all(d + 1);
    std::iota(all.begin(), all.end(), 0);
    return simplicial_complex(d + 1, {all}).set;
}

int Complex::find(const std::vector<int>& vertices) const
{
    auto it = lookup.find(vertices);
    return it == lookup.end() ? -1 : it->second;
}

Complex simplicial_complex(std::size_t num_vertices, const std::vector<std::vector<int>>& facets)
{
    std::set<std::vector<int>> all;
    for (std::size_t v = 0; v < num_vertices; ++v)
        all.insert({static_cast<int>(v)});
    for (auto facet : facets) {
        std::sort(facet.begin(), facet.end());
        if (facet.empty())
            throw ValidationError("empty facet");
        if (std::adjacent_find(facet.begin(), facet.end()) != facet.end())
            throw ValidationError("facet repeats a vertex");
        if (facet.front() < 0 || static_cast<std::size_t>(facet.back()) >= num_vertices)
            throw ValidationError("facet vertex out of range 0.." + std::to_string(num_vertices) + "-1");
        if (facet.size() > 20)
            throw CapExceeded("facet size", facet.size(), 20);
        for (std::uint32_t mask = 1; mask < (1u << facet.size()); ++mask) {
            std::vector<int> sub;
            for (std::size_t i = 0; i < facet.size(); ++i)
                if ((mask >> i) & 1u)
                    sub.push_back(facet[i]);
            all.insert(std::move(sub));
        }
    }
    std::vector<std::vector<int>> ordered(all.begin(), all.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });

    Complex k;
    for (const auto& s : ordered) {
        const std::size_t d = s.size() - 1;
        if (k.simplices.size() <= d)
            k.simplices.resize(d + 1);
        int c;
        if (d == 0) {
            c = k.set.add_vertex();
        } else {
            std::vector<Simplex> faces;
            for (std::size_t i = 0; i <= d; ++i) {
                std::vector<int> f = s;
                f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
                faces.push_back(Simplex::of_cell(k.lookup.at(f), d - 1));
            }
            c = k.set.add_cell(std::move(faces));
        }
        k.lookup.emplace(s, c);
        k.simplices[d].push_back(s);
    }
    if (num_vertices > 0)
        k.set.basepoint = 0;
    return k;
}

CellSet subcomplex(const Complex& complex, const std::vector<std::vector<int>>& facets)
{
    CellSet s = empty_cells(complex.set);
    for (auto facet : facets) {
        std::sort(facet.begin(), facet.end());
        const int c = complex.find(facet);
        if (c < 0) {
            std::string text;
            for (int v : facet)
                text += (text.empty() ? "" : " ") + std::to_string(v);
            throw ValidationError("simplex [" + text + "] is not in the complex");
        }
        insert(s, facet.size() - 1, c);
    }
    return face_closure(complex.set, std::move(s));
}

} // namespace forestcalc
