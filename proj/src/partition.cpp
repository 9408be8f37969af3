#include "forestcalc/partition.hpp"

#include "forestcalc/error.hpp"
#include "forestcalc/union_find.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace forestcalc {

// ---------------------------------------------------------------- SetMap

SetMap::SetMap(std::size_t target_size, std::vector<int> values)
    : target_size_(target_size), values_(std::move(values))
{
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (values_[i] < 0 || static_cast<std::size_t>(values_[i]) >= target_size_)
            throw ValidationError("set map: value " + std::to_string(values_[i]) + " at position "
                                  + std::to_string(i) + " outside target of size "
                                  + std::to_string(target_size_));
}

SetMap SetMap::identity(std::size_t n)
{
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return SetMap(n, std::move(v));
}

bool SetMap::is_identity() const
{
    if (target_size_ != values_.size())
        return false;
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (values_[i] != static_cast<int>(i))
            return false;
    return true;
}

bool SetMap::is_injective() const
{
    std::vector<bool> hit(target_size_, false);
    for (int v : values_) {
        if (hit[v])
            return false;
        hit[v] = true;
    }
    return true;
}

bool SetMap::is_surjective() const
{
    std::vector<bool> hit(target_size_, false);
    for (int v : values_)
        hit[v] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

SetMap SetMap::inverse() const
{
    if (!is_bijective())
        throw PreconditionError("set map: inverse of a non-bijection " + to_string());
    std::vector<int> inv(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i)
        inv[values_[i]] = static_cast<int>(i);
    return SetMap(values_.size(), std::move(inv));
}

std::string SetMap::to_string() const
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < values_.size(); ++i)
        os << (i ? " " : "") << values_[i];
    os << "]->" << target_size_;
    return os.str();
}

SetMap compose(const SetMap& g, const SetMap& f)
{
    if (f.target_size() != g.source_size())
        throw PreconditionError("compose: " + f.to_string() + " does not land in the source of "
                                + g.to_string());
    std::vector<int> v(f.source_size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = g(f(i));
    return SetMap(g.target_size(), std::move(v));
}

// ------------------------------------------------------------- Partition

Partition::Partition(std::vector<int> rgs) : labels_(std::move(rgs))
{
    int nb = 0;
    for (int l : labels_)
        nb = std::max(nb, l + 1);
    blocks_.assign(nb, {});
    for (std::size_t i = 0; i < labels_.size(); ++i)
        blocks_[labels_[i]].push_back(static_cast<int>(i));
}

Partition Partition::from_labels(std::span<const int> labels)
{
    std::map<int, int> renumber;
    std::vector<int> rgs(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, fresh] = renumber.try_emplace(labels[i], static_cast<int>(renumber.size()));
        rgs[i] = it->second;
    }
    return Partition(std::move(rgs));
}

Partition Partition::from_blocks(std::size_t m, const std::vector<std::vector<int>>& blocks)
{
    std::vector<int> owner(m, -1);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].empty())
            throw ValidationError("partition: block " + std::to_string(b) + " is empty");
        for (int x : blocks[b]) {
            if (x < 0 || static_cast<std::size_t>(x) >= m)
                throw ValidationError("partition: element " + std::to_string(x) + " in block "
                                      + std::to_string(b) + " is outside the support {0.."
                                      + std::to_string(static_cast<long>(m) - 1) + "}");
            if (owner[x] != -1)
                throw ValidationError("partition: element " + std::to_string(x) + " appears in blocks "
                                      + std::to_string(owner[x]) + " and " + std::to_string(b));
            owner[x] = static_cast<int>(b);
        }
    }
    for (std::size_t x = 0; x < m; ++x)
        if (owner[x] == -1)
            throw ValidationError("partition: element " + std::to_string(x) + " is not covered by any block");
    return from_labels(owner);
}

Partition Partition::discrete(std::size_t m)
{
    std::vector<int> v(m);
    std::iota(v.begin(), v.end(), 0);
    return Partition(std::move(v));
}

Partition Partition::indiscrete(std::size_t m) { return Partition(std::vector<int>(m, 0)); }

Partition Partition::with_block_sizes(std::span<const std::size_t> sizes)
{
    std::vector<int> v;
    for (std::size_t b = 0; b < sizes.size(); ++b) {
        if (sizes[b] == 0)
            throw ValidationError("partition: zero block size");
        v.insert(v.end(), sizes[b], static_cast<int>(b));
    }
    return Partition(std::move(v));
}

bool Partition::is_irreducible() const
{
    return std::all_of(blocks_.begin(), blocks_.end(), [](const auto& b) { return b.size() >= 2; });
}

std::vector<std::size_t> Partition::block_sizes() const
{
    std::vector<std::size_t> s;
    s.reserve(blocks_.size());
    for (const auto& b : blocks_)
        s.push_back(b.size());
    std::sort(s.begin(), s.end(), std::greater<>());
    return s;
}

std::string Partition::to_string() const
{
    if (blocks_.empty())
        return "()";
    std::ostringstream os;
    for (const auto& b : blocks_) {
        os << '(';
        for (std::size_t i = 0; i < b.size(); ++i)
            os << (i ? " " : "") << b[i];
        os << ')';
    }
    return os.str();
}

// --------------------------------------------------------- lattice algebra

namespace {

void require_same_support(const Partition& a, const Partition& b, const char* op)
{
    if (a.support_size() != b.support_size())
        throw ValidationError(std::string(op) + ": support mismatch (" + std::to_string(a.support_size())
                                + " vs " + std::to_string(b.support_size()) + ")");
}

Partition from_union_find(UnionFind& uf, std::size_t m)
{
    std::vector<int> labels(m);
    for (std::size_t i = 0; i < m; ++i)
        labels[i] = static_cast<int>(uf.find(i));
    return Partition::from_labels(labels);
}

} // namespace

bool refines(const Partition& fine, const Partition& coarse)
{
    if (fine.support_size() != coarse.support_size())
        return false;
    for (const auto& block : fine.blocks())
        for (int x : block)
            if (coarse.block_of(x) != coarse.block_of(block.front()))
                return false;
    return true;
}

Partition meet(const Partition& a, const Partition& b)
{
    require_same_support(a, b, "meet");
    UnionFind uf(a.support_size());
    for (const Partition* p : {&a, &b})
        for (const auto& block : p->blocks())
            for (int x : block)
                uf.unite(block.front(), x);
    return from_union_find(uf, a.support_size());
}

Partition join(const Partition& a, const Partition& b)
{
    require_same_support(a, b, "join");
    std::vector<int> labels(a.support_size());
    const int nb = static_cast<int>(b.num_blocks());
    for (std::size_t i = 0; i < labels.size(); ++i)
        labels[i] = a.block_of(i) * nb + b.block_of(i);
    return Partition::from_labels(labels);
}

Partition image_partition(const SetMap& f, const Partition& p)
{
    if (f.source_size() != p.support_size())
        throw PreconditionError("image_partition: map source size " + std::to_string(f.source_size())
                                + " differs from support size " + std::to_string(p.support_size()));
    UnionFind uf(f.target_size());
    for (const auto& block : p.blocks())
        for (int x : block)
            uf.unite(f(block.front()), f(x));
    return from_union_find(uf, f.target_size());
}

SetMap canonical_relabeling(const Partition& p)
{
    std::vector<int> order(p.num_blocks());
    std::iota(order.begin(), order.end(), 0);
    const auto& blocks = p.blocks();
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return blocks[a].size() > blocks[b].size(); });
    std::vector<int> v(p.support_size());
    int next = 0;
    for (int b : order)
        for (int x : blocks[b])
            v[x] = next++;
    return SetMap(p.support_size(), std::move(v));
}

Partition canonicalize(const Partition& p)
{
    auto sizes = p.block_sizes();
    return Partition::with_block_sizes(sizes);
}

bool are_isomorphic(const Partition& a, const Partition& b)
{
    return a.support_size() == b.support_size() && a.block_sizes() == b.block_sizes();
}

// ------------------------------------------------------------ enumeration

namespace {

void rgs_recurse(std::vector<int>& rgs, std::size_t pos, int used, const Partition* root,
                 std::vector<int>& block_root, const std::function<void(const Partition&)>& visit)
{
    if (pos == rgs.size()) {
        visit(Partition::from_labels(rgs));
        return;
    }
    for (int l = 0; l <= used; ++l) {
        if (root) {
            if (l < used && block_root[l] != root->block_of(pos))
                continue;
        }
        rgs[pos] = l;
        if (l == used) {
            block_root.push_back(root ? root->block_of(pos) : 0);
            rgs_recurse(rgs, pos + 1, used + 1, root, block_root, visit);
            block_root.pop_back();
        } else {
            rgs_recurse(rgs, pos + 1, used, root, block_root, visit);
        }
    }
}

} // namespace

std::vector<Partition> all_partitions(std::size_t m)
{
    std::vector<Partition> out;
    std::vector<int> rgs(m), block_root;
    rgs_recurse(rgs, 0, 0, nullptr, block_root, [&](const Partition& p) { out.push_back(p); });
    return out;
}

void for_each_refinement(const Partition& root, const std::function<void(const Partition&)>& visit)
{
    std::vector<int> rgs(root.support_size()), block_root;
    rgs_recurse(rgs, 0, 0, &root, block_root, visit);
}

std::vector<std::vector<std::size_t>> integer_partitions(std::size_t n)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t rest, std::size_t max_part) {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (std::size_t part = std::min(rest, max_part); part >= 1; --part) {
            cur.push_back(part);
            rec(rest - part, part);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

// ------------------------------------------------------------- PosetTable

PosetTable::PosetTable(std::vector<Partition> elements) : elements_(std::move(elements))
{
    const std::size_t n = elements_.size();
    const std::size_t words = (n + 63) / 64;
    order_.assign(n, std::vector<std::uint64_t>(words, 0));
    above_.assign(n, {});
    for (std::size_t i = 0; i < n; ++i)
        index_.emplace(elements_[i], static_cast<int>(i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (refines(elements_[j], elements_[i])) {
                order_[i][j / 64] |= std::uint64_t{1} << (j % 64);
                if (i != j)
                    above_[i].push_back(static_cast<int>(j));
            }
}

int PosetTable::index_of(const Partition& p) const
{
    auto it = index_.find(p);
    return it == index_.end() ? -1 : it->second;
}

PosetTable refinement_poset(const Partition& root, std::size_t cap)
{
    if (root.support_size() > cap)
        throw CapExceeded("refinement_poset: support", root.support_size(), cap);
    std::vector<Partition> elements;
    for_each_refinement(root, [&](const Partition& p) { elements.push_back(p); });
    std::stable_sort(elements.begin(), elements.end(), [](const Partition& a, const Partition& b) {
        if (a.num_blocks() != b.num_blocks())
            return a.num_blocks() < b.num_blocks();
        return a < b;
    });
    return PosetTable(std::move(elements));
}

PosetTable subposet(const PosetTable& poset, std::span<const int> keep)
{
    std::vector<Partition> elements;
    elements.reserve(keep.size());
    for (int i : keep)
        elements.push_back(poset[i]);
    return PosetTable(std::move(elements));
}

} // namespace forestcalc
