#include "forestcalc/layers.hpp"

#include "forestcalc/error.hpp"
#include "forestcalc/fusion.hpp"
#include "forestcalc/gluing.hpp"
#include "forestcalc/group.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace forestcalc {

namespace {

template <typename Pred>
CellSet cells_where(const Product& power, Pred pred)
{
    CellSet out = empty_cells(power.set);
    for (std::size_t d = 0; d < power.factors.size(); ++d)
        for (std::size_t c = 0; c < power.factors[d].size(); ++c)
            if (pred(power.factors[d][c]))
                out[d][c] = true;
    return out;
}

SimplicialSet unpointed(SimplicialSet x)
{
    x.basepoint.reset();
    return x;
}

std::vector<std::size_t> cell_census(const CellSet& s)
{
    std::vector<std::size_t> out;
    for (const auto& level : s)
        out.push_back(static_cast<std::size_t>(std::count(level.begin(), level.end(), true)));
    while (!out.empty() && out.back() == 0)
        out.pop_back();
    return out;
}

std::vector<std::size_t> trimmed(std::vector<std::size_t> census)
{
    while (!census.empty() && census.back() == 0)
        census.pop_back();
    return census;
}

void require_n(std::size_t n, const LayerOptions& options)
{
    if (n == 0)
        throw PreconditionError("layers need n >= 1");
    if (n > options.n_cap)
        throw CapExceeded("layer n", n, options.n_cap);
}

CategoryTable table_for(std::size_t n, const LayerOptions& options)
{
    EnumerateOptions eo;
    eo.n_cap = std::max(n, default_n_cap);
    eo.execution = options.execution;
    return enumerate_En(n, eo);
}

} // namespace

CellSet diagonal_cells(const Product& power, const Partition& delta)
{
    if (delta.support_size() != power.arity)
        throw PreconditionError("diagonal partition support differs from the power's arity");
    return cells_where(power, [&](const std::vector<Simplex>& t) {
        for (const auto& block : delta.blocks())
            for (int x : block)
                if (t[static_cast<std::size_t>(x)] != t[static_cast<std::size_t>(block.front())])
                    return false;
        return true;
    });
}

CellSet fat_diagonal(const Product& power)
{
    return cells_where(power, [](const std::vector<Simplex>& t) {
        for (std::size_t x = 0; x < t.size(); ++x)
            for (std::size_t y = x + 1; y < t.size(); ++y)
                if (t[x] == t[y])
                    return true;
        return false;
    });
}

SimplicialMap pullback_map(const Product& source, const Product& target, const SetMap& f)
{
    if (f.source_size() != target.arity || f.target_size() != source.arity)
        throw PreconditionError("pullback map " + f.to_string() + " does not match the powers");
    return map_of_products(source, target, [&](const std::vector<Simplex>& t) {
        std::vector<Simplex> out;
        out.reserve(target.arity);
        for (std::size_t i = 0; i < target.arity; ++i)
            out.push_back(t[static_cast<std::size_t>(f(i))]);
        return out;
    });
}

PowerPair power_pair(const SimplicialSet& m, const Partition& lambda, std::size_t dimension_cap)
{
    PowerPair pp;
    pp.lambda = lambda;
    pp.power = power(m, lambda.support_size(), dimension_cap);
    pp.bad_diagonal = empty_cells(pp.power.set);
    for (const auto& delta : bad_diagonals(lambda))
        pp.bad_diagonal = set_union(pp.bad_diagonal, diagonal_cells(pp.power, delta));
    pp.quotient = quotient(pp.power.set, pp.bad_diagonal);
    return pp;
}

bool carries_bad_diagonal(const PowerPair& source, const PowerPair& target, const SetMap& f)
{
    const SimplicialMap pull = pullback_map(source.power, target.power, f);
    for (std::size_t d = 0; d < source.bad_diagonal.size(); ++d)
        for (std::size_t c = 0; c < source.bad_diagonal[d].size(); ++c)
            if (source.bad_diagonal[d][c]) {
                const Simplex& y = pull.image[d][c];
                if (!contains(target.bad_diagonal, y.cell_dim(), y.cell))
                    return false;
            }
    return true;
}

namespace {

// Left action of σ on M^k/fat ∧ T_Λ: coordinates move by σ, chains map by σ.
SimplicialMap act_on_smash(const Product& power, const Quotient& reduced, const TreeSpace& tree, const Smash& s,
                           const Permutation& sigma)
{
    const std::size_t k = sigma.size();
    const SetMap forward(k, sigma);
    const SimplicialMap on_power = induced_on_quotients(reduced, reduced, pullback_map(power, power, forward.inverse()));
    const SimplicialMap on_tree = t_space_map(tree, tree, forward);
    return induced_on_quotients(s.quotient, s.quotient,
                                map_of_products(s.product, s.product, [&](const std::vector<Simplex>& t) {
                                    return std::vector<Simplex>{on_power(t[0]), on_tree(t[1])};
                                }));
}

} // namespace

StratumPiece stratum(const SimplicialSet& m, const Partition& lambda, std::size_t dimension_cap)
{
    StratumPiece piece;
    piece.index = lambda.num_blocks();
    piece.lambda = lambda;
    const Product pw = power(m, lambda.support_size(), dimension_cap);
    const Quotient reduced = quotient(pw.set, fat_diagonal(pw));
    const TreeSpace tree = t_space(lambda);
    const Smash s = smash(reduced.set, tree.set(), dimension_cap);

    const GroupPresentation aut = automorphism_group(lambda);
    piece.group_order = aut.order;
    PermutationAction action;
    for (const auto& g : aut.generators)
        action.generators.push_back(act_on_smash(pw, reduced, tree, s, g));
    std::vector<SimplicialMap> others;
    for (const auto& g : aut.elements())
        if (!is_identity(g))
            others.push_back(act_on_smash(pw, reduced, tree, s, g));
    piece.fixed = find_fixed_cell(s.set(), others);
    piece.set = quotient_by_group(s.set(), action).set;
    return piece;
}

// ------------------------------------------------------------------ coend

namespace {

struct ObjectData {
    PowerPair pair;
    TreeSpace tree;
    Smash piece;
};

struct MorphismData {
    std::size_t source = 0;
    std::size_t target = 0;
    SetMap map;
    // (x, y) pairs to identify, x in the source piece, y in the target piece
    std::vector<std::pair<Simplex, Simplex>> pairs;
};

SimplicialSet glue_stage(const CategoryTable& table, const std::vector<ObjectData>& objects,
                         const std::vector<MorphismData>& morphisms, std::size_t stage, std::vector<GluingRecord>* log)
{
    std::vector<const SimplicialSet*> pieces;
    for (std::size_t a = 0; a < table.size() && table.stratum(a) <= stage; ++a)
        pieces.push_back(&objects[a].piece.set());
    if (pieces.empty())
        return point();
    Gluing gl(pieces);
    for (const auto& md : morphisms) {
        if (md.source >= pieces.size() || md.target >= pieces.size())
            continue;
        const std::size_t before = gl.merges();
        for (const auto& [x, y] : md.pairs)
            gl.identify(md.source, x, md.target, y);
        if (log)
            log->push_back({md.source, md.target, md.map, gl.merges() - before});
    }
    return gl.finish().set;
}

} // namespace

CoendAssembly coend(const SimplicialSet& m, std::size_t n, const LayerOptions& options)
{
    require_n(n, options);
    const CategoryTable table = table_for(n, options);
    const std::size_t cap = options.dimension_cap;

    std::vector<ObjectData> objects = map_indexed<ObjectData>(table.size(), options.execution, [&](std::size_t a) {
        PowerPair pp = power_pair(m, table.objects[a], cap);
        TreeSpace ts = t_space(table.objects[a]);
        Smash sm = smash(pp.set(), ts.set(), cap);
        return ObjectData{std::move(pp), std::move(ts), std::move(sm)};
    });

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < table.size(); ++a)
        for (std::size_t b = 0; b < table.size(); ++b)
            if (table.hom_size[a][b] > 0)
                pairs.emplace_back(a, b);

    // generating identifications (f^*x, t) ~ (x, f_*t) over the cells of M^[Λ'] × T_Λ
    auto per_pair = map_indexed<std::vector<MorphismData>>(pairs.size(), options.execution, [&](std::size_t p) {
        const auto [a, b] = pairs[p];
        const ObjectData& src = objects[a];
        const ObjectData& dst = objects[b];
        const Product w = product(dst.pair.set(), src.tree.set(), cap);
        std::vector<MorphismData> out;
        for (const auto& f : table.hom[a][b]) {
            MorphismData md{a, b, f, {}};
            const SimplicialMap pull =
                induced_on_quotients(dst.pair.quotient, src.pair.quotient, pullback_map(dst.pair.power, src.pair.power, f));
            const SimplicialMap push = t_space_map(src.tree, dst.tree, f);
            for (const auto& level : w.factors)
                for (const auto& t : level)
                    md.pairs.emplace_back(src.piece(pull(t[0]), t[1]), dst.piece(t[0], push(t[1])));
            out.push_back(std::move(md));
        }
        return out;
    });
    std::vector<MorphismData> morphisms;
    for (auto& group : per_pair)
        for (auto& md : group)
            morphisms.push_back(std::move(md));

    CoendAssembly out;
    out.n = n;
    out.objects = table.objects;
    for (std::size_t i = 0; i <= n; ++i)
        out.stages.push_back(glue_stage(table, objects, morphisms, i, i == n ? &out.log : nullptr));
    out.total = out.stages.back();

    out.strata.resize(n + 1);
    auto pieces = map_indexed<StratumPiece>(table.size(), options.execution,
                                            [&](std::size_t a) { return stratum(m, table.objects[a], cap); });
    for (auto& piece : pieces)
        out.strata[piece.index].push_back(std::move(piece));
    return out;
}

// ------------------------------------------------------ fat diagonal check

std::vector<ReconstructionCheck> verify_essentially_cofibrant(const SimplicialSet& m, std::size_t n,
                                                              const LayerOptions& options)
{
    require_n(n, options);
    const CategoryTable table = table_for(n, options);
    const std::size_t cap = options.dimension_cap;
    std::vector<Product> powers = map_indexed<Product>(table.size(), options.execution, [&](std::size_t a) {
        return power(m, table.objects[a].support_size(), cap);
    });
    std::vector<SimplicialSet> bare;
    for (const auto& p : powers)
        bare.push_back(unpointed(p.set));

    return map_indexed<ReconstructionCheck>(table.size(), options.execution, [&](std::size_t a) {
        ReconstructionCheck check;
        check.lambda = table.objects[a];
        check.index = table.stratum(a);
        const Product& pw = powers[a];
        const CellSet fat = fat_diagonal(pw);
        CellSet bad = empty_cells(pw.set);
        for (const auto& delta : bad_diagonals(check.lambda))
            bad = set_union(bad, diagonal_cells(pw, delta));
        check.fat_cells = cell_count(fat);
        check.bad_cells = cell_count(bad);

        // one copy of M^{Λ''} per morphism into a lower stratum
        struct Copy {
            std::size_t object;
            SetMap map;
            SimplicialMap pull;
        };
        std::vector<Copy> copies;
        std::map<std::pair<std::size_t, SetMap>, std::size_t> copy_index;
        for (std::size_t b = 0; b < table.size(); ++b)
            if (table.stratum(b) < check.index)
                for (const auto& f : table.hom[a][b]) {
                    copy_index.emplace(std::pair{b, f}, copies.size());
                    copies.push_back({b, f, pullback_map(powers[b], pw, f)});
                }
        const Restriction bad_part = restrict_to(pw.set, bad);
        const SimplicialSet bad_set = unpointed(bad_part.set);

        std::vector<const SimplicialSet*> pieces;
        for (const auto& c : copies)
            pieces.push_back(&bare[c.object]);
        pieces.push_back(&bad_set);
        const std::size_t bad_piece = copies.size();
        Gluing gl(pieces);
        for (std::size_t i = 0; i < copies.size(); ++i) {
            const std::size_t b = copies[i].object;
            for (std::size_t b2 = 0; b2 < table.size(); ++b2) {
                if (table.stratum(b2) >= check.index)
                    continue;
                for (const auto& g : table.hom[b][b2]) {
                    auto it = copy_index.find({b2, compose(g, copies[i].map)});
                    if (it == copy_index.end())
                        throw std::logic_error("composite of listed fusions is not listed");
                    const SimplicialMap pull = pullback_map(powers[b2], powers[b], g);
                    for (std::size_t d = 0; d < pull.image.size(); ++d)
                        for (std::size_t c = 0; c < pull.image[d].size(); ++c)
                            gl.identify(it->second, Simplex::of_cell(static_cast<int>(c), d), i, pull.image[d][c]);
                }
            }
            const SimplicialMap& pull = copies[i].pull;
            for (std::size_t d = 0; d < pull.image.size(); ++d)
                for (std::size_t c = 0; c < pull.image[d].size(); ++c) {
                    const Simplex& z = pull.image[d][c];
                    if (contains(bad, z.cell_dim(), z.cell))
                        gl.identify(i, Simplex::of_cell(static_cast<int>(c), d), bad_piece,
                                    {bad_part.index[z.cell_dim()][static_cast<std::size_t>(z.cell)], z.sigma});
                }
        }
        const auto colimit = gl.finish();

        CellSet glued = bad;
        for (const auto& c : copies)
            glued = set_union(glued, image_cells(pw.set, c.pull));
        check.union_cells = cell_count(glued);
        check.colimit_cells = colimit.set.total_cells();
        check.equal = glued == fat;
        check.embeds = trimmed(colimit.set.census()) == cell_census(glued);
        for (std::size_t d = 0; d < fat.size() && !check.missing; ++d)
            for (std::size_t c = 0; c < fat[d].size(); ++c)
                if (fat[d][c] && !glued[d][c]) {
                    check.missing = std::pair{d, static_cast<int>(c)};
                    break;
                }

        const Quotient reduced = quotient(pw.set, fat);
        std::vector<SimplicialMap> others;
        for (const auto& g : automorphism_group(check.lambda).elements())
            if (!is_identity(g))
                others.push_back(induced_on_quotients(
                    reduced, reduced, pullback_map(pw, pw, SetMap(g.size(), g).inverse())));
        check.free = !find_fixed_cell(reduced.set, others);
        return check;
    });
}

// ------------------------------------------------------------------ report

bool LayerReport::additivity_pass() const
{
    return std::all_of(additivity.begin(), additivity.end(), [](const AdditivityRow& r) { return r.pass(); });
}

bool LayerReport::degree_support_pass() const
{
    for (int d : coend_homology.support())
        if (d < degree_lower || d > degree_upper)
            return false;
    return true;
}

bool LayerReport::layer_bound_pass() const
{
    return !contributing_supports ||
           (contributing_supports->first >= n + 1 && contributing_supports->second <= 2 * n);
}

LayerReport derivative_report(const SimplicialSet& m, std::size_t n, const Coefficients& coeff,
                              const LayerOptions& options)
{
    const CoendAssembly assembly = coend(m, n, options);
    LayerReport report;
    report.n = n;
    report.coefficients = coeff;
    report.coend_census = assembly.total.census();
    for (const auto& r : assembly.log)
        report.gluing_merges += r.merges;
    report.stage_homology = map_indexed<HomologyResult>(assembly.stages.size(), options.execution, [&](std::size_t i) {
        return homology(assembly.stages[i], true, coeff);
    });
    report.coend_homology = report.stage_homology.back();

    std::vector<const StratumPiece*> pieces;
    for (const auto& level : assembly.strata)
        for (const auto& piece : level)
            pieces.push_back(&piece);
    report.strata = map_indexed<StratumEntry>(pieces.size(), options.execution, [&](std::size_t k) {
        const StratumPiece& piece = *pieces[k];
        StratumEntry e;
        e.index = piece.index;
        e.lambda = piece.lambda;
        e.group_order = piece.group_order;
        e.free = piece.free();
        e.model = e.free ? "orbit" : "rational, invariants model";
        e.homology = homology(piece.set, true, e.free ? coeff : Coefficients::rationals());
        e.census = piece.set.census();
        return e;
    });

    for (std::size_t i = 1; i <= n; ++i) {
        AdditivityRow row;
        row.index = i;
        row.stage_difference =
            report.stage_homology[i].euler_characteristic() - report.stage_homology[i - 1].euler_characteristic();
        for (const auto& e : report.strata)
            if (e.index == i)
                row.strata_sum += e.homology.euler_characteristic();
        report.additivity.push_back(row);
    }

    report.degree_lower = static_cast<int>(n);
    report.degree_upper = static_cast<int>(n + 2 * n * (m.empty() ? 0 : m.dimension()));
    for (const auto& e : report.strata)
        if (!e.homology.is_zero()) {
            const std::size_t s = e.lambda.support_size();
            if (!report.contributing_supports)
                report.contributing_supports = std::pair{s, s};
            report.contributing_supports->first = std::min(report.contributing_supports->first, s);
            report.contributing_supports->second = std::max(report.contributing_supports->second, s);
        }
    return report;
}

} // namespace forestcalc
