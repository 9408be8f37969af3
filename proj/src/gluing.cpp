#include "forestcalc/gluing.hpp"

#include "forestcalc/error.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace forestcalc {

Gluing::Gluing(std::vector<const SimplicialSet*> pieces) : pieces_(std::move(pieces))
{
    for (const auto* p : pieces_)
        if (!p->empty())
            top_ = std::max(top_, p->dimension());
    // every nondegenerate cell gets a node, pieces and dimensions in order
    for (std::size_t p = 0; p < pieces_.size(); ++p)
        for (std::size_t d = 0; d <= pieces_[p]->dimension() && !pieces_[p]->empty(); ++d)
            for (std::size_t c = 0; c < pieces_[p]->count(d); ++c)
                node(p, Simplex::of_cell(static_cast<int>(c), d));
    std::optional<std::size_t> base;
    for (std::size_t p = 0; p < pieces_.size(); ++p)
        if (pieces_[p]->basepoint) {
            const std::size_t b = node(p, Simplex::of_cell(*pieces_[p]->basepoint, 0));
            if (base)
                pending_.emplace_back(*base, b);
            else
                base = b;
        }
    drain();
}

std::size_t Gluing::node(std::size_t piece, const Simplex& s)
{
    Key key{piece, s};
    auto it = ids_.find(key);
    if (it != ids_.end())
        return it->second;
    const std::size_t id = uf_.add();
    ids_.emplace(key, id);
    keys_.push_back(std::move(key));
    return id;
}

void Gluing::identify(std::size_t pa, const Simplex& a, std::size_t pb, const Simplex& b)
{
    if (a.dim() != b.dim())
        throw PreconditionError("identified simplices have different dimensions");
    pending_.emplace_back(node(pa, a), node(pb, b));
    drain();
}

void Gluing::drain()
{
    while (!pending_.empty()) {
        auto [x, y] = pending_.back();
        pending_.pop_back();
        if (!uf_.unite(x, y))
            continue;
        ++merges_;
        // copy: node() may grow keys_
        const Key kx = keys_[x], ky = keys_[y];
        const std::size_t k = kx.simplex.dim();
        for (std::size_t i = 0; k > 0 && i <= k; ++i)
            pending_.emplace_back(node(kx.piece, pieces_[kx.piece]->face(kx.simplex, i)),
                                  node(ky.piece, pieces_[ky.piece]->face(ky.simplex, i)));
        for (std::size_t i = 0; k < top_ && i <= k; ++i)
            pending_.emplace_back(node(kx.piece, degeneracy(kx.simplex, i)), node(ky.piece, degeneracy(ky.simplex, i)));
    }
}

Gluing::Result Gluing::finish()
{
    drain();
    Result out;
    out.merges = merges_;
    // nodes by level, in creation order
    std::vector<std::vector<std::size_t>> levels(top_ + 1);
    for (std::size_t id = 0; id < keys_.size(); ++id)
        if (keys_[id].simplex.dim() <= top_)
            levels[keys_[id].simplex.dim()].push_back(id);

    std::unordered_map<std::size_t, Simplex> normal;  // class root -> normal form
    auto normal_of = [&](std::size_t piece, const Simplex& s) -> Simplex {
        auto it = ids_.find(Key{piece, s});
        if (it != ids_.end())
            return normal.at(uf_.find(it->second));
        const Simplex& base = normal.at(uf_.find(ids_.at(Key{piece, Simplex::of_cell(s.cell, s.cell_dim())})));
        return {base.cell, compose_surjections(base.sigma, s.sigma)};
    };

    for (std::size_t k = 0; k <= top_; ++k) {
        // first degenerate member of each class, and first member overall
        std::map<std::size_t, std::size_t> degenerate, first;
        for (std::size_t id : levels[k]) {
            const std::size_t root = uf_.find(id);
            first.emplace(root, id);
            if (!keys_[id].simplex.is_nondegenerate())
                degenerate.emplace(root, id);
        }
        std::vector<std::pair<std::size_t, std::size_t>> fresh;  // (first member, root)
        for (const auto& [root, id] : first) {
            auto d = degenerate.find(root);
            if (d != degenerate.end()) {
                const Key& key = keys_[d->second];
                const Simplex& base =
                    normal.at(uf_.find(ids_.at(Key{key.piece, Simplex::of_cell(key.simplex.cell, key.simplex.cell_dim())})));
                normal.emplace(root, Simplex{base.cell, compose_surjections(base.sigma, key.simplex.sigma)});
            } else {
                fresh.emplace_back(id, root);
            }
        }
        // new cells numbered by their earliest node, which follows piece order
        std::sort(fresh.begin(), fresh.end());
        for (const auto& [id, root] : fresh) {
            const Key& key = keys_[id];
            int cell;
            if (k == 0) {
                cell = out.set.add_vertex();
            } else {
                std::vector<Simplex> faces;
                for (const auto& f : pieces_[key.piece]->faces(k, key.simplex.cell))
                    faces.push_back(normal_of(key.piece, f));
                cell = out.set.add_cell(std::move(faces));
            }
            normal.emplace(root, Simplex::of_cell(cell, k));
        }
    }

    for (std::size_t p = 0; p < pieces_.size(); ++p) {
        SimplicialMap inc;
        const auto* piece = pieces_[p];
        if (!piece->empty())
            for (std::size_t d = 0; d <= piece->dimension(); ++d) {
                inc.image.emplace_back();
                for (std::size_t c = 0; c < piece->count(d); ++c)
                    inc.image[d].push_back(normal_of(p, Simplex::of_cell(static_cast<int>(c), d)));
            }
        if (piece->basepoint && !out.set.basepoint)
            out.set.basepoint = inc.image[0][static_cast<std::size_t>(*piece->basepoint)].cell;
        out.inclusions.push_back(std::move(inc));
    }
    return out;
}

} // namespace forestcalc
