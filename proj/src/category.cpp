#include "forestcalc/category.hpp"

#include "forestcalc/error.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

namespace forestcalc {

int CategoryTable::find(const Partition& p) const
{
    auto it = std::find(objects.begin(), objects.end(), p);
    return it == objects.end() ? -1 : static_cast<int>(it - objects.begin());
}

std::size_t CategoryTable::total_morphisms() const
{
    std::size_t total = 0;
    for (const auto& row : hom_size)
        for (auto size : row)
            total += size;
    return total;
}

namespace {

void check_n(std::size_t n, std::size_t cap)
{
    if (n == 0)
        throw ValidationError("the category needs excess n >= 1");
    if (n > cap)
        throw CapExceeded("n", n, cap);
}

std::vector<Partition> make_objects(std::size_t n, bool full)
{
    std::vector<Partition> objects;
    if (full) {
        for (std::size_t m = n + 1; m <= 2 * n; ++m)
            for (auto& p : all_partitions(m))
                if (p.excess() == n && p.is_irreducible())
                    objects.push_back(std::move(p));
    } else {
        for (const auto& parts : integer_partitions(n)) {
            std::vector<std::size_t> sizes;
            for (auto x : parts)
                sizes.push_back(x + 1);
            objects.push_back(Partition::with_block_sizes(sizes));
        }
    }
    std::sort(objects.begin(), objects.end(), [](const Partition& a, const Partition& b) {
        if (a.num_blocks() != b.num_blocks())
            return a.num_blocks() < b.num_blocks();
        return a < b;
    });
    return objects;
}

/// Partitions of the support of `lambda` into exactly `blocks` blocks, each
/// meeting every block of lambda at most once, as restricted-growth strings.
std::vector<std::vector<int>> transversal_kernels(const Partition& lambda, std::size_t blocks)
{
    const std::size_t m = lambda.support_size();
    std::vector<std::vector<int>> out;
    std::vector<int> rgs(m);
    // used[k] = bitmask of lambda-blocks already present in kernel block k
    std::vector<std::uint64_t> used;
    std::function<void(std::size_t)> rec = [&](std::size_t x) {
        if (used.size() + (m - x) < blocks)
            return;
        if (x == m) {
            if (used.size() == blocks)
                out.push_back(rgs);
            return;
        }
        const std::uint64_t bit = std::uint64_t{1} << lambda.block_of(x);
        for (std::size_t k = 0; k < used.size(); ++k)
            if (!(used[k] & bit)) {
                used[k] |= bit;
                rgs[x] = static_cast<int>(k);
                rec(x + 1);
                used[k] &= ~bit;
            }
        if (used.size() < blocks) {
            used.push_back(bit);
            rgs[x] = static_cast<int>(used.size() - 1);
            rec(x + 1);
            used.pop_back();
        }
    };
    rec(0);
    return out;
}

struct HomResult {
    std::vector<SetMap> maps;
    std::size_t kernels = 0;
};

HomResult strict_fusions(const Partition& source, const Partition& target, const std::vector<Permutation>& target_aut, bool with_maps,
                         Execution exec)
{
    if (source.support_size() < target.support_size() || source.excess() != target.excess())
        return {};
    auto kernels = transversal_kernels(source, target.support_size());
    const SetMap to_target_canonical_inv = canonical_relabeling(target).inverse();

    auto per_kernel = map_indexed<std::optional<std::vector<SetMap>>>(kernels.size(), exec, [&](std::size_t k) {
        std::optional<std::vector<SetMap>> none;
        SetMap q(target.support_size(), kernels[k]);
        Partition image = image_partition(q, source);
        if (image.excess() != source.excess() || !are_isomorphic(image, target))
            return none;
        std::vector<SetMap> maps;
        if (!with_maps)
            return std::optional(std::move(maps));
        SetMap tau = compose(to_target_canonical_inv, canonical_relabeling(image));
        SetMap base = compose(tau, q);
        maps.reserve(target_aut.size());
        for (const auto& alpha : target_aut)
            maps.push_back(compose(SetMap(target.support_size(), alpha), base));
        return std::optional(std::move(maps));
    });

    HomResult out;
    for (auto& maps : per_kernel)
        if (maps) {
            ++out.kernels;
            out.maps.insert(out.maps.end(), std::make_move_iterator(maps->begin()), std::make_move_iterator(maps->end()));
        }
    std::sort(out.maps.begin(), out.maps.end());
    return out;
}

CategoryTable skeleton(std::size_t n, bool full)
{
    CategoryTable t;
    t.n = n;
    t.skeletal = !full;
    t.objects = make_objects(n, full);
    for (const auto& p : t.objects)
        t.automorphisms.push_back(automorphism_group(p));
    t.hom.assign(t.objects.size(), std::vector<std::vector<SetMap>>(t.objects.size()));
    t.hom_size.assign(t.objects.size(), std::vector<std::size_t>(t.objects.size(), 0));
    t.kernels = t.hom_size;
    return t;
}

} // namespace

CategoryTable enumerate_En(std::size_t n, const EnumerateOptions& options)
{
    check_n(n, options.n_cap);
    CategoryTable t = skeleton(n, options.full);
    std::vector<std::vector<Permutation>> elements;
    for (const auto& g : t.automorphisms)
        elements.push_back(g.elements());
    t.has_morphisms = options.with_morphisms;
    for (std::size_t a = 0; a < t.size(); ++a)
        for (std::size_t b = 0; b < t.size(); ++b) {
            auto r = strict_fusions(t.objects[a], t.objects[b], elements[b], options.with_morphisms, options.execution);
            t.hom[a][b] = std::move(r.maps);
            t.kernels[a][b] = r.kernels;
            t.hom_size[a][b] = r.kernels * elements[b].size();
        }
    return t;
}

CategoryTable enumerate_En_brute(std::size_t n, bool full)
{
    check_n(n, 3);
    CategoryTable t = skeleton(n, full);
    for (std::size_t a = 0; a < t.size(); ++a)
        for (std::size_t b = 0; b < t.size(); ++b) {
            const Partition& src = t.objects[a];
            const Partition& dst = t.objects[b];
            const std::size_t m = src.support_size(), k = dst.support_size();
            std::vector<int> v(m, 0);
            for (;;) {
                SetMap f(k, v);
                if (image_partition(f, src) == dst && src.excess() == dst.excess())
                    t.hom[a][b].push_back(f);
                std::size_t i = 0;
                while (i < m && ++v[i] == static_cast<int>(k))
                    v[i++] = 0;
                if (i == m)
                    break;
            }
            std::sort(t.hom[a][b].begin(), t.hom[a][b].end());
        }
    refresh_counts(t);
    return t;
}

CategoryTable filtration(const CategoryTable& table, std::size_t i)
{
    if (i < 1 || i > table.n)
        throw ValidationError("filtration index " + std::to_string(i) + " outside 1.." + std::to_string(table.n));
    std::vector<std::size_t> keep;
    for (std::size_t a = 0; a < table.size(); ++a)
        if (table.stratum(a) <= i)
            keep.push_back(a);
    CategoryTable out;
    out.n = table.n;
    out.skeletal = table.skeletal;
    for (auto a : keep) {
        out.objects.push_back(table.objects[a]);
        out.automorphisms.push_back(table.automorphisms[a]);
    }
    out.has_morphisms = table.has_morphisms;
    out.hom.assign(keep.size(), std::vector<std::vector<SetMap>>(keep.size()));
    out.hom_size.assign(keep.size(), std::vector<std::size_t>(keep.size()));
    out.kernels = out.hom_size;
    for (std::size_t x = 0; x < keep.size(); ++x)
        for (std::size_t y = 0; y < keep.size(); ++y) {
            out.hom[x][y] = table.hom[keep[x]][keep[y]];
            out.hom_size[x][y] = table.hom_size[keep[x]][keep[y]];
            out.kernels[x][y] = table.kernels[keep[x]][keep[y]];
        }
    return out;
}

std::size_t gluing_patterns(const CategoryTable& table, std::size_t a, std::size_t b)
{
    return table.kernels[a][b];
}

void refresh_counts(CategoryTable& table)
{
    const std::size_t k = table.size();
    table.hom_size.assign(k, std::vector<std::size_t>(k, 0));
    table.kernels = table.hom_size;
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
            std::unordered_set<Partition> kernels;
            for (const auto& f : table.hom[a][b])
                kernels.insert(Partition::from_labels(f.values()));
            table.hom_size[a][b] = table.hom[a][b].size();
            table.kernels[a][b] = kernels.size();
        }
}

Certificate verify_nice_filtration(const CategoryTable& table)
{
    Certificate cert;
    std::size_t top = 0;
    for (std::size_t a = 0; a < table.size(); ++a)
        top = std::max(top, table.stratum(a));
    for (std::size_t i = 0; i <= std::max(top, table.n); ++i) {
        std::size_t fresh = 0, old = 0;
        for (std::size_t a = 0; a < table.size(); ++a) {
            if (table.stratum(a) < i)
                ++old;
            else if (table.stratum(a) == i)
                ++fresh;
        }
        for (std::size_t a = 0; a < table.size() && cert.pass; ++a)
            for (std::size_t b = 0; b < table.size() && cert.pass; ++b) {
                if (table.stratum(b) != i)
                    continue;
                const bool nonempty = table.has_morphisms ? !table.hom[a][b].empty() : table.hom_size[a][b] > 0;
                if (table.stratum(a) < i && nonempty) {
                    cert.pass = false;
                    SetMap f = table.has_morphisms ? table.hom[a][b].front() : SetMap{};
                    cert.witness = MorphismWitness{a, b, f, "morphism from an older stratum into a new object"};
                } else if (table.stratum(a) == i && !table.has_morphisms) {
                    // equal block count and excess force equal supports, so a
                    // surjection between them is a bijection
                    if (nonempty && table.objects[a].support_size() != table.objects[b].support_size()) {
                        cert.pass = false;
                        cert.witness = MorphismWitness{a, b, SetMap{}, "non-invertible morphism between new objects"};
                    }
                } else if (table.stratum(a) == i) {
                    for (const auto& f : table.hom[a][b])
                        if (!f.is_bijective()) {
                            cert.pass = false;
                            cert.witness = MorphismWitness{a, b, f, "non-invertible morphism between new objects"};
                            break;
                        }
                }
            }
        cert.checked.push_back("stage " + std::to_string(i) + ": " + std::to_string(fresh) + " new, " + std::to_string(old) + " old");
        if (!cert.pass)
            break;
    }
    return cert;
}

Certificate verify_composition_closure(const CategoryTable& table)
{
    if (!table.has_morphisms)
        throw PreconditionError("composition closure needs a table enumerated with morphisms");
    Certificate cert;
    const std::size_t k = table.size();
    std::vector<std::vector<std::unordered_set<SetMap>>> lookup(k, std::vector<std::unordered_set<SetMap>>(k));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            lookup[a][b].insert(table.hom[a][b].begin(), table.hom[a][b].end());

    for (std::size_t a = 0; a < k && cert.pass; ++a) {
        SetMap id = SetMap::identity(table.objects[a].support_size());
        if (!lookup[a][a].count(id)) {
            cert.pass = false;
            cert.witness = MorphismWitness{a, a, id, "identity missing"};
        }
        for (std::size_t b = 0; b < k && cert.pass; ++b)
            for (const auto& f : table.hom[a][b])
                if (image_partition(f, table.objects[a]) != table.objects[b] || table.objects[a].excess() != table.objects[b].excess() ||
                    !f.is_surjective()) {
                    cert.pass = false;
                    cert.witness = MorphismWitness{a, b, f, "listed map is not a surjective strict fusion"};
                    break;
                }
    }
    cert.checked.push_back("identities and strictness");
    if (!cert.pass)
        return cert;

    for (std::size_t a = 0; a < k && cert.pass; ++a)
        for (std::size_t b = 0; b < k && cert.pass; ++b)
            for (std::size_t c = 0; c < k && cert.pass; ++c) {
                if (table.hom[a][b].empty() || table.hom[b][c].empty())
                    continue;
                const auto& fs = table.hom[a][b];
                auto missing = map_indexed<std::optional<SetMap>>(fs.size(), Execution::parallel, [&](std::size_t i) -> std::optional<SetMap> {
                    for (const auto& g : table.hom[b][c]) {
                        SetMap gf = compose(g, fs[i]);
                        if (!lookup[a][c].count(gf))
                            return gf;
                    }
                    return std::nullopt;
                });
                for (auto& m : missing)
                    if (m) {
                        cert.pass = false;
                        cert.witness = MorphismWitness{a, c, *m, "composite not listed"};
                        break;
                    }
            }
    cert.checked.push_back("composition closure");
    return cert;
}

} // namespace forestcalc
