#include "forestcalc/io.hpp"

#include "forestcalc/error.hpp"
#include "forestcalc/group.hpp"

#include <algorithm>
#include <charconv>

namespace forestcalc {

namespace {

[[noreturn]] void invalid(const std::string& where, const std::string& what)
{
    throw ValidationError(where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where)
{
    if (!j.is_object())
        invalid(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        invalid(where, std::string("missing field \"") + key + "\"");
    return *it;
}

std::size_t natural(const Json& j, const std::string& where)
{
    if (!j.is_number_integer() || j.get<long long>() < 0)
        invalid(where, "expected a non-negative integer");
    return j.get<std::size_t>();
}

std::vector<int> int_list(const Json& j, const std::string& where)
{
    if (!j.is_array())
        invalid(where, "expected an array");
    std::vector<int> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(static_cast<int>(natural(j[i], where + "/" + std::to_string(i))));
    return out;
}

std::vector<std::vector<int>> int_lists(const Json& j, const std::string& where)
{
    if (!j.is_array())
        invalid(where, "expected an array of arrays");
    std::vector<std::vector<int>> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(int_list(j[i], where + "/" + std::to_string(i)));
    return out;
}

Json integer_json(const Integer& v)
{
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return v.convert_to<long long>();
    return v.str();
}

std::optional<int> basepoint_of(const Json& j, const std::string& where)
{
    auto it = j.find("basepoint");
    if (it == j.end() || it->is_null())
        return std::nullopt;
    return static_cast<int>(natural(*it, where + "/basepoint"));
}

std::size_t parse_count(const std::string& text, const std::string& name)
{
    std::size_t k = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), k);
    if (ec != std::errc() || p != text.data() + text.size())
        throw ValidationError("builtin model " + name + ": bad count \"" + text + "\"");
    return k;
}

} // namespace

Json parse_json(const std::string& text, const std::string& source)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const std::size_t at = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
        const std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(at), '\n'));
        const std::size_t last_nl = text.rfind('\n', at == 0 ? 0 : at - 1);
        const std::size_t column = last_nl == std::string::npos ? at + 1 : at - last_nl;
        throw ValidationError(source + ": line " + std::to_string(line) + ", column " + std::to_string(column) +
                              ": malformed JSON");
    }
}

Json to_json(const Partition& p)
{
    return Json{{"support", p.support_size()}, {"blocks", p.blocks()}};
}

Partition partition_from_json(const Json& j, const std::string& where)
{
    const std::size_t support = natural(field(j, "support", where), where + "/support");
    const auto blocks = int_lists(field(j, "blocks", where), where + "/blocks");
    try {
        return Partition::from_blocks(support, blocks);
    } catch (const ValidationError& e) {
        invalid(where, e.what());
    }
}

Coefficients parse_coefficients(const std::string& text)
{
    if (text == "Z")
        return Coefficients::integers();
    if (text == "Q")
        return Coefficients::rationals();
    if (text.size() >= 2 && (text[0] == 'F' || text[0] == 'f')) {
        const std::size_t start = text[1] == '_' ? 2 : 1;
        std::uint32_t p = 0;
        auto [ptr, ec] = std::from_chars(text.data() + start, text.data() + text.size(), p);
        if (ec == std::errc() && ptr == text.data() + text.size() && is_prime(p))
            return Coefficients::prime_field(p);
    }
    throw ValidationError("coefficients must be Z, Q or F<p> (or F_<p>) with p prime, got \"" + text + "\"");
}

Json to_json(const HomologyResult& h)
{
    Json groups = Json::array();
    for (const auto& g : h.groups) {
        if (g.is_zero())
            continue;
        Json torsion = Json::array();
        for (const auto& t : g.torsion)
            torsion.push_back(integer_json(t));
        groups.push_back(Json{{"degree", g.degree}, {"rank", g.rank}, {"torsion", torsion}});
    }
    return groups;
}

SimplicialSet simplicial_set_from_json(const Json& j, const std::string& where)
{
    if (!j.is_object())
        invalid(where, "expected an object");
    SimplicialSet x;
    if (j.contains("facets")) {
        const std::size_t v = natural(field(j, "vertices", where), where + "/vertices");
        auto facets = int_lists(j["facets"], where + "/facets");
        for (std::size_t i = 0; i < facets.size(); ++i) {
            auto& f = facets[i];
            std::sort(f.begin(), f.end());
            if (f.empty() || std::adjacent_find(f.begin(), f.end()) != f.end())
                invalid(where + "/facets/" + std::to_string(i), "a facet needs distinct vertices");
            if (static_cast<std::size_t>(f.back()) >= v)
                invalid(where + "/facets/" + std::to_string(i), "vertex " + std::to_string(f.back()) + " out of range");
        }
        x = simplicial_complex(v, facets).set;
    } else if (j.contains("cells")) {
        const Json& cells = j["cells"];
        if (!cells.is_array() || cells.empty())
            invalid(where + "/cells", "expected [vertex count, cells of dimension 1, ...]");
        const std::size_t v = natural(cells[0], where + "/cells/0");
        for (std::size_t i = 0; i < v; ++i)
            x.add_vertex();
        for (std::size_t d = 1; d < cells.size(); ++d) {
            const std::string level = where + "/cells/" + std::to_string(d);
            if (!cells[d].is_array())
                invalid(level, "expected an array of cells");
            for (std::size_t c = 0; c < cells[d].size(); ++c) {
                const std::string here = level + "/" + std::to_string(c);
                const Json& faces = cells[d][c];
                if (!faces.is_array() || faces.size() != d + 1)
                    invalid(here, "a " + std::to_string(d) + "-cell needs " + std::to_string(d + 1) + " faces");
                std::vector<Simplex> list;
                for (std::size_t i = 0; i < faces.size(); ++i) {
                    const std::string fw = here + "/" + std::to_string(i);
                    if (faces[i].is_number_integer()) {
                        list.push_back(Simplex::of_cell(static_cast<int>(natural(faces[i], fw)), d - 1));
                    } else {
                        Simplex s{static_cast<int>(natural(field(faces[i], "cell", fw), fw + "/cell")),
                                  int_list(field(faces[i], "sigma", fw), fw + "/sigma")};
                        if (s.sigma.size() != d)
                            invalid(fw, "sigma must list " + std::to_string(d) + " values");
                        list.push_back(std::move(s));
                    }
                }
                try {
                    x.add_cell(std::move(list));
                } catch (const ValidationError& e) {
                    invalid(here, e.what());
                }
            }
        }
    } else {
        invalid(where, "expected \"facets\" or \"cells\"");
    }
    x.basepoint = basepoint_of(j, where);
    try {
        x.validate();
    } catch (const ValidationError& e) {
        invalid(where, e.what());
    }
    return x;
}

Json to_json(const SimplicialSet& x)
{
    Json cells = Json::array();
    cells.push_back(x.count(0));
    for (std::size_t d = 1; d <= x.dimension() && !x.empty(); ++d) {
        Json level = Json::array();
        for (std::size_t c = 0; c < x.count(d); ++c) {
            Json faces = Json::array();
            for (const auto& f : x.faces(d, static_cast<int>(c)))
                if (f.is_nondegenerate())
                    faces.push_back(f.cell);
                else
                    faces.push_back(Json{{"cell", f.cell}, {"sigma", f.sigma}});
            level.push_back(faces);
        }
        cells.push_back(level);
    }
    Json out{{"census", x.census()}, {"cells", cells}};
    out["basepoint"] = x.basepoint ? Json(*x.basepoint) : Json(nullptr);
    return out;
}

SimplicialSet builtin_model(const std::string& name)
{
    const auto colon = name.find(':');
    const std::string head = name.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : name.substr(colon + 1);
    if (head == "point" && arg.empty())
        return point();
    if (head == "circle" && arg.empty())
        return minimal_circle();
    if (head == "interval" && arg.empty())
        return interval();
    if (head == "points" && !arg.empty())
        return discrete_points(parse_count(arg, name));
    if (head == "wedge" && !arg.empty())
        return wedge_of_circles(parse_count(arg, name));
    throw ValidationError("unknown builtin model \"" + name + "\" (point, points:k, circle, interval, wedge:k)");
}

Cube cube_from_json(const Json& j)
{
    const std::string where = "cube";
    const std::size_t v = natural(field(j, "vertices", where), where + "/vertices");
    const auto facets = int_lists(field(j, "facets", where), where + "/facets");
    for (const auto& f : facets)
        for (int x : f)
            if (static_cast<std::size_t>(x) >= v)
                invalid(where + "/facets", "vertex " + std::to_string(x) + " out of range");
    const Complex complex = simplicial_complex(v, facets);
    auto piece = [&](const Json& list, const std::string& at) {
        auto lists = int_lists(list, at);
        for (auto& f : lists)
            std::sort(f.begin(), f.end());
        try {
            return subcomplex(complex, lists);
        } catch (const ValidationError& e) {
            invalid(at, e.what());
        }
    };
    const Json& cover = field(j, "cover", where);
    if (!cover.is_array())
        invalid(where + "/cover", "expected an array of facet lists");
    std::vector<CellSet> pieces;
    for (std::size_t i = 0; i < cover.size(); ++i)
        pieces.push_back(piece(cover[i], where + "/cover/" + std::to_string(i)));
    Cube cube = cover_cube(complex.set, pieces);
    if (auto it = j.find("corners"); it != j.end()) {
        if (!it->is_array())
            invalid(where + "/corners", "expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string at = where + "/corners/" + std::to_string(i);
            const std::size_t mask = natural(field((*it)[i], "mask", at), at + "/mask");
            if (mask >= cube.corners.size())
                invalid(at + "/mask", "no corner " + std::to_string(mask) + " in a " + std::to_string(cube.dimension) + "-cube");
            cube.corners[mask] = piece(field((*it)[i], "facets", at), at + "/facets");
        }
    }
    return cube;
}

Json to_json(const CategoryTable& table, bool with_maps)
{
    Json objects = Json::array();
    for (std::size_t a = 0; a < table.size(); ++a) {
        Json gens = Json::array();
        for (const auto& g : table.automorphisms[a].generators)
            gens.push_back(to_string(g));
        objects.push_back(Json{{"index", a},
                               {"partition", to_json(table.objects[a])},
                               {"stratum", table.stratum(a)},
                               {"automorphism_order", table.automorphisms[a].order},
                               {"automorphism_generators", gens}});
    }
    Json classes = Json::array();
    for (std::size_t a = 0; a < table.size(); ++a) {
        Json row = Json::array();
        for (std::size_t b = 0; b < table.size(); ++b)
            row.push_back(a == b ? table.hom_size[a][a] : table.kernels[a][b]);
        classes.push_back(row);
    }
    Json out{{"n", table.n},
             {"objects", objects},
             {"hom_sizes", table.hom_size},
             {"hom_classes", classes},
             {"total_morphisms", table.total_morphisms()}};
    if (with_maps) {
        Json homs = Json::array();
        for (std::size_t a = 0; a < table.size(); ++a)
            for (std::size_t b = 0; b < table.size(); ++b) {
                if (table.hom[a][b].empty())
                    continue;
                Json maps = Json::array();
                for (const auto& f : table.hom[a][b])
                    maps.push_back(f.values());
                homs.push_back(Json{{"source", a}, {"target", b}, {"maps", maps}});
            }
        out["morphisms"] = homs;
    }
    return out;
}

Json to_json(const CheckOutcome& c)
{
    Json out{{"name", c.name}, {"statement", c.statement}, {"pass", c.pass}, {"cases", c.cases}};
    out["counterexample"] = c.counterexample ? Json(*c.counterexample) : Json(nullptr);
    return out;
}

Json to_json(const ReconstructionCheck& c)
{
    Json out{{"lambda", to_json(c.lambda)},    {"stratum", c.index},          {"fat_diagonal_cells", c.fat_cells},
             {"bad_diagonal_cells", c.bad_cells}, {"union_cells", c.union_cells}, {"colimit_cells", c.colimit_cells},
             {"equal", c.equal},                {"embeds", c.embeds},          {"free", c.free},
             {"pass", c.pass()}};
    out["missing"] = c.missing ? Json{{"dimension", c.missing->first}, {"cell", c.missing->second}} : Json(nullptr);
    return out;
}

Json to_json(const LayerReport& r)
{
    Json stages = Json::array();
    for (std::size_t i = 0; i < r.stage_homology.size(); ++i)
        stages.push_back(Json{{"stage", i},
                              {"homology", to_json(r.stage_homology[i])},
                              {"reduced_euler_characteristic", r.stage_homology[i].euler_characteristic()}});
    Json strata = Json::array();
    for (const auto& e : r.strata)
        strata.push_back(Json{{"stratum", e.index},
                              {"lambda", to_json(e.lambda)},
                              {"support", e.lambda.support_size()},
                              {"group_order", e.group_order},
                              {"free", e.free},
                              {"model", e.model},
                              {"coefficients", e.free ? r.coefficients.name() : Coefficients::rationals().name()},
                              {"census", e.census},
                              {"homology", to_json(e.homology)},
                              {"reduced_euler_characteristic", e.homology.euler_characteristic()}});
    Json additivity = Json::array();
    for (const auto& row : r.additivity)
        additivity.push_back(Json{{"stage", row.index},
                                  {"stage_difference", row.stage_difference},
                                  {"strata_sum", row.strata_sum},
                                  {"pass", row.pass()}});
    Json out{{"n", r.n},
             {"coefficients", r.coefficients.name()},
             {"coend",
              Json{{"census", r.coend_census},
                   {"homology", to_json(r.coend_homology)},
                   {"reduced_euler_characteristic", r.coend_homology.euler_characteristic()},
                   {"gluing_merges", r.gluing_merges}}},
             {"stages", stages},
             {"strata", strata},
             {"euler_additivity", Json{{"rows", additivity}, {"pass", r.additivity_pass()}}},
             {"degree_support",
              Json{{"lower", r.degree_lower}, {"upper", r.degree_upper}, {"pass", r.degree_support_pass()}}}};
    Json bound{{"expected", Json{{"min", r.n + 1}, {"max", 2 * r.n}}}, {"pass", r.layer_bound_pass()}};
    bound["contributing"] = r.contributing_supports
                                ? Json{{"min", r.contributing_supports->first}, {"max", r.contributing_supports->second}}
                                : Json(nullptr);
    out["layer_support"] = bound;
    return out;
}

} // namespace forestcalc
