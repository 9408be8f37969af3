#include "forestcalc/tspace.hpp"

#include "forestcalc/error.hpp"

#include <algorithm>

namespace forestcalc {

Complex nerve(const PosetTable& poset, std::size_t cap)
{
    if (poset.size() > cap)
        throw CapExceeded("nerve: poset size", poset.size(), cap);
    Complex k;
    std::vector<std::vector<int>> level;
    for (std::size_t i = 0; i < poset.size(); ++i)
        level.push_back({static_cast<int>(i)});
    for (std::size_t d = 0; !level.empty(); ++d) {
        k.simplices.emplace_back();
        std::vector<std::vector<int>> next;
        for (auto& chain : level) {
            int c;
            if (d == 0) {
                c = k.set.add_vertex();
            } else {
                std::vector<Simplex> faces;
                for (std::size_t i = 0; i <= d; ++i) {
                    std::vector<int> f = chain;
                    f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
                    faces.push_back(Simplex::of_cell(k.lookup.at(f), d - 1));
                }
                c = k.set.add_cell(std::move(faces));
            }
            for (int j : poset.strictly_above(static_cast<std::size_t>(chain.back()))) {
                std::vector<int> longer = chain;
                longer.push_back(j);
                next.push_back(std::move(longer));
            }
            k.lookup.emplace(chain, c);
            k.simplices[d].push_back(std::move(chain));
        }
        level = std::move(next);
    }
    if (poset.size() > 0)
        k.set.basepoint = 0;
    return k;
}

CellSet boundary_cells(const PosetTable& poset, const Complex& nerve)
{
    CellSet s = empty_cells(nerve.set);
    if (poset.size() <= 1)
        return s;
    const int lo = static_cast<int>(poset.minimum()), hi = static_cast<int>(poset.maximum());
    for (std::size_t d = 0; d < nerve.simplices.size(); ++d)
        for (std::size_t c = 0; c < nerve.simplices[d].size(); ++c) {
            const auto& chain = nerve.simplices[d][c];
            const bool both = std::find(chain.begin(), chain.end(), lo) != chain.end() && std::find(chain.begin(), chain.end(), hi) != chain.end();
            s[d][c] = !both;
        }
    return s;
}

Restriction boundary_part(const PosetTable& poset, std::size_t cap)
{
    Complex k = nerve(poset, cap);
    return restrict_to(k.set, boundary_cells(poset, k));
}

namespace {

void check_support(const Partition& lambda, std::size_t cap)
{
    if (lambda.support_size() == 0)
        throw ValidationError("tree space needs a nonempty support");
    if (lambda.support_size() > cap)
        throw CapExceeded("tree space: support", lambda.support_size(), cap);
}

} // namespace

TreeSpace t_space(const Partition& lambda, std::size_t cap)
{
    check_support(lambda, cap);
    TreeSpace t{lambda, refinement_poset(lambda, cap), {}, {}, {}};
    t.nerve = nerve(t.poset);
    t.boundary = boundary_cells(t.poset, t.nerve);
    t.quotient = quotient(t.nerve.set, t.boundary);
    return t;
}

SuspensionModel t_space_suspension_model(const Partition& lambda, std::size_t cap)
{
    check_support(lambda, cap);
    if (lambda.is_discrete())
        throw PreconditionError("the suspension model needs a non-discrete partition, got " + lambda.to_string());
    PosetTable full = refinement_poset(lambda, cap);
    std::vector<int> keep;
    for (std::size_t i = 0; i + 1 < full.size(); ++i)
        keep.push_back(static_cast<int>(i));
    PosetTable without_top = subposet(full, keep);
    Complex k = nerve(without_top);
    // chains avoiding the bottom element
    CellSet below = empty_cells(k.set);
    for (std::size_t d = 0; d < k.simplices.size(); ++d)
        for (std::size_t c = 0; c < k.simplices[d].size(); ++c)
            below[d][c] = k.simplices[d][c].front() != 0;
    SuspensionModel m{lambda, minimal_circle(), quotient(k.set, below), {}};
    m.smash = smash(m.circle, m.inner.set);
    return m;
}

SimplicialMap nerve_map(const TreeSpace& source, const TreeSpace& target, const SetMap& f)
{
    if (f.source_size() != source.lambda.support_size() || f.target_size() != target.lambda.support_size() ||
        image_partition(f, source.lambda) != target.lambda)
        throw PreconditionError("map is not a fusion " + source.lambda.to_string() + " -> " + target.lambda.to_string());
    std::vector<int> on_elements(source.poset.size());
    for (std::size_t i = 0; i < source.poset.size(); ++i)
        on_elements[i] = target.poset.index_of(image_partition(f, source.poset[i]));

    SimplicialMap m;
    m.image.resize(source.nerve.simplices.size());
    for (std::size_t d = 0; d < source.nerve.simplices.size(); ++d)
        for (const auto& chain : source.nerve.simplices[d]) {
            std::vector<int> image, sigma;
            for (int p : chain) {
                const int q = on_elements[static_cast<std::size_t>(p)];
                if (image.empty() || image.back() != q)
                    image.push_back(q);
                sigma.push_back(static_cast<int>(image.size()) - 1);
            }
            m.image[d].push_back(Simplex{target.nerve.lookup.at(image), std::move(sigma)});
        }
    return m;
}

std::optional<std::vector<int>> boundary_violation(const TreeSpace& source, const TreeSpace& target, const SetMap& f)
{
    SimplicialMap m = nerve_map(source, target, f);
    for (std::size_t d = 0; d < m.image.size(); ++d)
        for (std::size_t c = 0; c < m.image[d].size(); ++c) {
            if (!source.boundary[d][c])
                continue;
            const Simplex& y = m.image[d][c];
            if (!contains(target.boundary, y.cell_dim(), y.cell))
                return source.nerve.simplices[d][c];
        }
    return std::nullopt;
}

SimplicialMap t_space_map(const TreeSpace& source, const TreeSpace& target, const SetMap& f)
{
    return induced_on_quotients(source.quotient, target.quotient, nerve_map(source, target, f));
}

std::vector<HomologyResult> t_space_homology(std::span<const Partition> lambdas, TreeModel model, const Coefficients& coeff,
                                             Execution exec, std::size_t cap)
{
    return map_indexed<HomologyResult>(lambdas.size(), exec, [&](std::size_t i) {
        if (model == TreeModel::quotient)
            return homology(t_space(lambdas[i], cap).set(), true, coeff);
        return homology(t_space_suspension_model(lambdas[i], cap).set(), true, coeff);
    });
}

std::size_t expected_tree_rank(const Partition& lambda)
{
    std::size_t rank = 1;
    for (const auto& block : lambda.blocks())
        for (std::size_t k = 2; k < block.size(); ++k)
            rank *= k;
    return rank;
}

} // namespace forestcalc
