#include "forestcalc/fusion.hpp"

#include "forestcalc/error.hpp"
#include "forestcalc/union_find.hpp"

#include <algorithm>

namespace forestcalc {

PartitionMorphism PartitionMorphism::make(Partition source, Partition target, SetMap map)
{
    if (map.source_size() != source.support_size() || map.target_size() != target.support_size())
        throw ValidationError("morphism " + map.to_string() + " does not match supports " + std::to_string(source.support_size()) + " -> " +
                              std::to_string(target.support_size()));
    if (!refines(target, image_partition(map, source)))
        throw ValidationError("map " + map.to_string() + " sends " + source.to_string() + " to a relation not coarser than " + target.to_string());
    return {std::move(source), std::move(target), std::move(map)};
}

PartitionMorphism PartitionMorphism::identity(const Partition& p)
{
    return {p, p, SetMap::identity(p.support_size())};
}

bool PartitionMorphism::is_fusion() const
{
    return image_partition(map, source) == target;
}

bool PartitionMorphism::is_refinement() const
{
    return source.support_size() == target.support_size() && map.is_identity();
}

PartitionMorphism compose(const PartitionMorphism& g, const PartitionMorphism& f)
{
    if (!(f.target == g.source))
        throw PreconditionError("compose: target " + f.target.to_string() + " differs from source " + g.source.to_string());
    return {f.source, g.target, compose(g.map, f.map)};
}

Factorization factor(const PartitionMorphism& m)
{
    Partition image = image_partition(m.map, m.source);
    return {PartitionMorphism{m.source, image, m.map}, PartitionMorphism{image, m.target, SetMap::identity(m.target.support_size())}};
}

namespace {

void require_fusion(const PartitionMorphism& m, const char* op)
{
    if (!m.is_fusion())
        throw PreconditionError(std::string(op) + ": " + m.map.to_string() + " is not a fusion of " + m.source.to_string() + " into " +
                                m.target.to_string());
}

} // namespace

bool is_strict_fusion(const PartitionMorphism& m)
{
    require_fusion(m, "is_strict_fusion");
    return m.source.excess() == m.target.excess();
}

bool is_elementary(const PartitionMorphism& m)
{
    const auto& v = m.map.values();
    std::vector<int> hits(m.map.target_size(), 0);
    int collisions = 0;
    for (int y : v)
        if (hits[static_cast<std::size_t>(y)]++ > 0)
            ++collisions;
    return collisions == 1 && std::none_of(hits.begin(), hits.end(), [](int h) { return h > 2; });
}

std::vector<PartitionMorphism> decompose_elementary(const PartitionMorphism& m)
{
    require_fusion(m, "decompose_elementary");
    if (m.map.is_identity())
        return {};

    const std::size_t s = m.map.source_size();
    // where each source point currently sits; the working set is {0..size-1}
    std::vector<int> where(s);
    for (std::size_t x = 0; x < s; ++x)
        where[x] = static_cast<int>(x);
    std::size_t size = s;
    Partition current = m.source;
    std::vector<PartitionMorphism> steps;

    for (;;) {
        // first pair of working points with a common f-value
        int a = -1, b = -1;
        std::vector<int> rep(m.map.target_size(), -1);
        for (std::size_t x = 0; x < s && a < 0; ++x) {
            int y = m.map(x);
            int& r = rep[static_cast<std::size_t>(y)];
            if (r < 0)
                r = where[x];
            else if (r != where[x]) {
                a = std::min(r, where[x]);
                b = std::max(r, where[x]);
            }
        }
        if (a < 0)
            break;
        std::vector<int> glue(size);
        for (std::size_t p = 0; p < size; ++p) {
            int q = static_cast<int>(p);
            glue[p] = q == b ? a : (q > b ? q - 1 : q);
        }
        SetMap g(size - 1, glue);
        Partition next = image_partition(g, current);
        steps.push_back({current, next, g});
        for (int& w : where)
            w = glue[static_cast<std::size_t>(w)];
        current = std::move(next);
        --size;
    }

    // working set now embeds into the target
    std::vector<int> embed(size, -1);
    for (std::size_t x = 0; x < s; ++x)
        embed[static_cast<std::size_t>(where[x])] = m.map(x);
    SetMap h(m.map.target_size(), embed);
    if (!h.is_identity()) {
        if (steps.empty()) {
            steps.push_back({current, m.target, h});
        } else {
            auto& last = steps.back();
            last.map = compose(h, last.map);
            last.target = m.target;
        }
    }
    return steps;
}

std::vector<int> MarkedGraph::component_labels() const
{
    UnionFind uf(num_vertices);
    for (auto [a, b] : edges)
        uf.unite(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    std::vector<int> label(num_vertices, -1), root_label(num_vertices, -1);
    int next = 0;
    for (std::size_t v = 0; v < num_vertices; ++v) {
        auto r = uf.find(v);
        if (root_label[r] < 0)
            root_label[r] = next++;
        label[v] = root_label[r];
    }
    return label;
}

std::size_t MarkedGraph::num_components() const
{
    auto labels = component_labels();
    return labels.empty() ? 0 : static_cast<std::size_t>(*std::max_element(labels.begin(), labels.end()) + 1);
}

std::size_t MarkedGraph::first_betti() const
{
    return edges.size() + num_components() - num_vertices;
}

MarkedGraph MarkedGraph::collapse_marked() const
{
    std::vector<int> index(num_vertices);
    int next = 1;
    for (std::size_t v = 0; v < num_vertices; ++v)
        index[v] = marked[v] ? 0 : next++;
    MarkedGraph out;
    out.num_vertices = static_cast<std::size_t>(next);
    out.marked.assign(out.num_vertices, false);
    out.marked[0] = true;
    for (auto [a, b] : edges)
        out.edges.emplace_back(index[static_cast<std::size_t>(a)], index[static_cast<std::size_t>(b)]);
    return out;
}

IntMatrix MarkedGraph::boundary_matrix() const
{
    IntMatrix d(num_vertices, edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        d(static_cast<std::size_t>(edges[e].second), e) += 1;
        d(static_cast<std::size_t>(edges[e].first), e) -= 1;
    }
    return d;
}

MarkedGraph cylinder_graph(const Partition& p)
{
    const std::size_t m = p.support_size();
    MarkedGraph g;
    g.num_vertices = m + p.num_blocks();
    g.marked.assign(g.num_vertices, false);
    for (std::size_t x = 0; x < m; ++x) {
        g.marked[x] = true;
        g.edges.emplace_back(static_cast<int>(x), static_cast<int>(m) + p.block_of(x));
    }
    return g;
}

std::size_t collapsed_b1(const Partition& p)
{
    return cylinder_graph(p).collapse_marked().first_betti();
}

bool strictness_via_h1(const PartitionMorphism& m)
{
    require_fusion(m, "strictness_via_h1");
    // Edge x of the collapsed cylinder of the source goes to edge f(x) of the target's.
    MarkedGraph src = cylinder_graph(m.source).collapse_marked();
    MarkedGraph dst = cylinder_graph(m.target).collapse_marked();
    IntMatrix k_src = kernel_basis(src.boundary_matrix());
    IntMatrix k_dst = kernel_basis(dst.boundary_matrix());
    if (k_src.cols() != k_dst.cols())
        return false;
    const std::size_t r = k_src.cols();
    if (r == 0)
        return true;

    IntMatrix push(dst.edges.size(), src.edges.size());
    for (std::size_t x = 0; x < src.edges.size(); ++x)
        push(static_cast<std::size_t>(m.map(x)), x) = 1;
    IntMatrix image = push * k_src;

    IntMatrix coords(r, r);
    for (std::size_t j = 0; j < r; ++j) {
        std::vector<Integer> column(image.rows());
        for (std::size_t i = 0; i < image.rows(); ++i)
            column[i] = image(i, j);
        auto c = solve_integral(k_dst, column);
        if (!c)
            throw Error("strictness_via_h1: pushed cycle is not an integral cycle");
        for (std::size_t i = 0; i < r; ++i)
            coords(i, j) = (*c)[i];
    }
    Integer det = determinant(coords);
    return det == 1 || det == -1;
}

PartitionMorphism goodness_fusion(const Partition& delta, const Partition& lambda)
{
    if (delta.support_size() != lambda.support_size())
        throw ValidationError("goodness: supports differ (" + std::to_string(delta.support_size()) + " vs " +
                              std::to_string(lambda.support_size()) + ")");
    Partition both = meet(lambda, delta);
    std::vector<int> target_labels(delta.num_blocks());
    for (std::size_t b = 0; b < delta.num_blocks(); ++b)
        target_labels[b] = both.block_of(static_cast<std::size_t>(delta.blocks()[b].front()));
    return {lambda, Partition::from_labels(target_labels), SetMap(delta.num_blocks(), delta.labels())};
}

bool is_good(const Partition& delta, const Partition& lambda)
{
    if (delta.support_size() != lambda.support_size())
        throw ValidationError("goodness: supports differ (" + std::to_string(delta.support_size()) + " vs " +
                              std::to_string(lambda.support_size()) + ")");
    return lambda.excess() == delta.num_blocks() - meet(lambda, delta).num_blocks();
}

MarkedGraph pushout_graph(const Partition& delta, const Partition& lambda)
{
    if (delta.support_size() != lambda.support_size())
        throw ValidationError("goodness: supports differ (" + std::to_string(delta.support_size()) + " vs " +
                              std::to_string(lambda.support_size()) + ")");
    MarkedGraph g;
    const int k = static_cast<int>(lambda.num_blocks());
    g.num_vertices = lambda.num_blocks() + delta.num_blocks();
    g.marked.assign(g.num_vertices, false);
    for (std::size_t x = 0; x < lambda.support_size(); ++x)
        g.edges.emplace_back(lambda.block_of(x), k + delta.block_of(x));
    return g;
}

bool goodness_via_graph(const Partition& delta, const Partition& lambda)
{
    MarkedGraph g = pushout_graph(delta, lambda);
    return g.first_betti() == 0 && g.num_components() == meet(lambda, delta).num_blocks();
}

bool goodness_connected_tree(const Partition& delta, const Partition& lambda)
{
    MarkedGraph g = pushout_graph(delta, lambda);
    return g.first_betti() == 0 && g.num_components() == 1;
}

std::vector<Partition> bad_diagonals(const Partition& lambda, std::size_t cap)
{
    if (lambda.support_size() > cap)
        throw CapExceeded("bad_diagonals support", lambda.support_size(), cap);
    std::vector<Partition> out;
    for (auto& delta : all_partitions(lambda.support_size()))
        if (!is_good(delta, lambda))
            out.push_back(std::move(delta));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace forestcalc
