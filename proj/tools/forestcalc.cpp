#include "forestcalc/category.hpp"
#include "forestcalc/error.hpp"
#include "forestcalc/fusion.hpp"
#include "forestcalc/io.hpp"
#include "forestcalc/layers.hpp"
#include "forestcalc/tspace.hpp"
#include "forestcalc/verify.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace forestcalc;
namespace fs = std::filesystem;

namespace {

constexpr const char* tool_version = "1.0.0";

std::string sha256_hex(const std::string& data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i)
        os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return os.str();
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// A literal JSON argument, or @path to read one from a file.
Json json_argument(const std::string& text, const std::string& name)
{
    if (!text.empty() && text[0] == '@')
        return parse_json(read_file(text.substr(1)), text.substr(1));
    return parse_json(text, name);
}

struct Common {
    std::string format = "json";
    std::string out;
    std::string cache_dir;
    bool no_cache = false;
    bool timing = false;
    int threads = 0;
    std::size_t support_cap = default_tspace_cap;
    std::size_t dimension_cap = default_dimension_cap;
};

std::optional<fs::path> cache_directory(const Common& c)
{
    if (c.no_cache)
        return std::nullopt;
    if (!c.cache_dir.empty())
        return fs::path(c.cache_dir);
    if (const char* env = std::getenv("FORESTCALC_CACHE"); env && *env)
        return fs::path(env);
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
        return fs::path(xdg) / "forestcalc";
    if (const char* home = std::getenv("HOME"); home && *home)
        return fs::path(home) / ".cache" / "forestcalc";
    return std::nullopt;
}

// Result of one subcommand: the payload and whether its checks passed.
struct Outcome {
    Json payload;
    bool pass = true;
};

// Looks the payload up in the cache before computing it.
Outcome cached(const Common& common, const std::string& subcommand, const Json& config,
               const std::function<Outcome()>& compute)
{
    const auto dir = cache_directory(common);
    const std::string key = sha256_hex(std::string(tool_version) + "\n" + subcommand + "\n" + config.dump());
    if (dir) {
        std::ifstream in(*dir / (key + ".json"));
        if (in) {
            try {
                std::ostringstream os;
                os << in.rdbuf();
                Json entry = Json::parse(os.str());
                return {entry.at("payload"), entry.at("pass").get<bool>()};
            } catch (const std::exception&) {
                // unreadable entry: recompute and overwrite
            }
        }
    }
    Outcome result = compute();
    if (dir) {
        std::error_code ec;
        fs::create_directories(*dir, ec);
        const fs::path tmp = *dir / (key + ".tmp");
        std::ofstream outf(tmp);
        if (outf << Json{{"payload", result.payload}, {"pass", result.pass}}.dump()) {
            outf.close();
            fs::rename(tmp, *dir / (key + ".json"), ec);
        } else {
            fs::remove(tmp, ec);
        }
    }
    return result;
}

std::string homology_text(const Json& groups)
{
    if (groups.empty())
        return "0";
    std::string out;
    for (const auto& g : groups) {
        if (!out.empty())
            out += ", ";
        out += "H" + std::to_string(g["degree"].get<int>()) + " = ";
        std::string terms;
        if (g["rank"].get<std::size_t>() > 0)
            terms = g["rank"].get<std::size_t>() == 1 ? "Z" : "Z^" + std::to_string(g["rank"].get<std::size_t>());
        for (const auto& t : g["torsion"])
            terms += (terms.empty() ? "" : " + ") + std::string("Z/") + (t.is_string() ? t.get<std::string>() : t.dump());
        out += terms;
    }
    return out;
}

std::string partition_text(const Json& p)
{
    std::string out;
    for (const auto& b : p["blocks"]) {
        out += "(";
        for (std::size_t i = 0; i < b.size(); ++i)
            out += (i ? " " : "") + b[i].dump();
        out += ")";
    }
    return out;
}

std::string render_text(const std::string& subcommand, const Json& payload)
{
    std::ostringstream os;
    if (subcommand == "enumerate") {
        os << "n = " << payload["n"] << ", " << payload["objects"].size() << " objects, " << payload["total_morphisms"]
           << " morphisms\n";
        for (const auto& o : payload["objects"])
            os << "  [" << o["index"] << "] " << partition_text(o["partition"]) << "  stratum " << o["stratum"]
               << "  |Aut| = " << o["automorphism_order"] << "\n";
        os << "hom sizes:\n";
        for (const auto& row : payload["hom_sizes"])
            os << "  " << row.dump() << "\n";
        os << "hom classes (automorphisms on the diagonal, gluing patterns off it):\n";
        for (const auto& row : payload["hom_classes"])
            os << "  " << row.dump() << "\n";
    } else if (subcommand == "goodness") {
        os << "lambda = " << partition_text(payload["lambda"]) << "\n";
        for (const auto& v : payload["verdicts"])
            os << "  " << partition_text(v["delta"]) << "  " << (v["good"].get<bool>() ? "good" : "bad") << "\n";
    } else if (subcommand == "tspace") {
        os << "T" << partition_text(payload["lambda"]) << " (" << payload["model"].get<std::string>() << " model, "
           << payload["coefficients"].get<std::string>() << "): ~" << homology_text(payload["homology"]) << "\n";
        os << "cells by dimension: " << payload["census"].dump() << "\n";
    } else if (subcommand == "layer") {
        os << "n = " << payload["n"] << ", coefficients " << payload["coefficients"].get<std::string>() << "\n";
        os << "coend: ~" << homology_text(payload["coend"]["homology"]) << "  cells " << payload["coend"]["census"].dump()
           << "\n";
        for (const auto& s : payload["strata"])
            os << "  stratum " << s["stratum"] << " " << partition_text(s["lambda"]) << " (" << s["model"].get<std::string>()
               << "): ~" << homology_text(s["homology"]) << "\n";
        os << "Euler additivity: " << (payload["euler_additivity"]["pass"].get<bool>() ? "pass" : "FAIL") << "\n";
        os << "degree support [" << payload["degree_support"]["lower"] << ", " << payload["degree_support"]["upper"]
           << "]: " << (payload["degree_support"]["pass"].get<bool>() ? "pass" : "FAIL") << "\n";
        os << "layer support: " << (payload["layer_support"]["pass"].get<bool>() ? "pass" : "FAIL") << "\n";
        for (const auto& c : payload["essential_cofibrancy"])
            os << "  fat diagonal " << partition_text(c["lambda"]) << ": " << (c["pass"].get<bool>() ? "pass" : "FAIL")
               << " (" << c["fat_diagonal_cells"] << " cells)\n";
    } else if (subcommand == "cube-check") {
        os << payload["dimension"] << "-cube: " << (payload["acyclic"].get<bool>() ? "acyclic" : "NOT acyclic")
           << ", total cofiber ~" << homology_text(payload["homology"]) << "\n";
    } else if (subcommand == "verify") {
        for (const auto& c : payload["checks"]) {
            os << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>() << " (" << c["cases"]
               << " cases)";
            if (!c["counterexample"].is_null())
                os << ": " << c["counterexample"].get<std::string>();
            os << "\n";
        }
    }
    return os.str();
}

void emit(const Common& common, const std::string& text)
{
    if (common.out.empty()) {
        std::cout << text;
        return;
    }
    const fs::path target(common.out);
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!(f << text))
            throw ValidationError("cannot write " + common.out);
    }
    fs::rename(tmp, target);
}

int run(const Common& common, const std::string& subcommand, const Json& config, const std::function<Outcome()>& compute,
        bool cacheable)
{
#ifdef _OPENMP
    if (common.threads > 0)
        omp_set_num_threads(common.threads);
#endif
    const auto start = std::chrono::steady_clock::now();
    const Outcome result = cacheable ? cached(common, subcommand, config, compute) : compute();
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::string text;
    if (common.format == "text") {
        text = render_text(subcommand, result.payload);
        if (common.timing)
            text += "wall time: " + std::to_string(seconds) + " s\n";
    } else {
        Json envelope{{"tool", "forestcalc"},
                      {"version", tool_version},
                      {"schema", "forestcalc.envelope/1"},
                      {"subcommand", subcommand},
                      {"config", config},
                      {"status", result.pass ? "pass" : "fail"},
                      {"payload", result.payload},
                      {"digest", Json{{"algorithm", "sha256"}, {"payload", sha256_hex(result.payload.dump())}}}};
        if (common.timing)
            envelope["wall_time_seconds"] = seconds;
        text = envelope.dump(2) + "\n";
    }
    emit(common, text);
    return result.pass ? 0 : 1;
}

Json model_echo(const SimplicialSet& m, const std::string& builtin)
{
    if (!builtin.empty())
        return Json{{"builtin", builtin}};
    return Json{{"sha256", sha256_hex(to_json(m).dump())}, {"census", m.census()}};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Partition calculus: categories of strict fusions, tree spaces, coends and their homology"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "TOML/INI file with option values");

    Common common;
    app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--out", common.out, "Write the result here instead of stdout");
    app.add_option("--cache-dir", common.cache_dir, "Cache directory (default: $FORESTCALC_CACHE, then ~/.cache/forestcalc)");
    app.add_flag("--no-cache", common.no_cache, "Neither read nor write the cache");
    app.add_flag("--timing", common.timing, "Report wall time (makes output run-dependent)");
    app.add_option("--threads", common.threads, "OpenMP threads (0: runtime default)")->check(CLI::NonNegativeNumber);
    app.add_option("--support-cap", common.support_cap, "Largest support for tree spaces")->check(CLI::PositiveNumber);
    app.add_option("--dimension-cap", common.dimension_cap, "Largest product dimension")->check(CLI::PositiveNumber);

    // enumerate
    auto* en = app.add_subcommand("enumerate", "Objects and strict fusions of the category for excess n");
    std::size_t en_n = 0;
    std::optional<std::size_t> en_stratum;
    bool en_maps = false, en_full = false;
    en->add_option("--n", en_n, "Excess")->required()->check(CLI::PositiveNumber);
    en->add_option("--stratum", en_stratum, "Keep objects with at most this many blocks");
    en->add_flag("--morphisms", en_maps, "List every morphism");
    en->add_flag("--full", en_full, "All objects, not one per isomorphism class");

    // goodness
    auto* gd = app.add_subcommand("goodness", "Good and bad diagonals relative to a partition");
    std::string gd_lambda, gd_delta;
    bool gd_all = false;
    gd->add_option("--lambda", gd_lambda, "Partition JSON or @file")->required();
    auto* gd_delta_opt = gd->add_option("--delta", gd_delta, "Diagonal partition JSON or @file");
    gd->add_flag("--all", gd_all, "Every partition of the support")->excludes(gd_delta_opt);

    // tspace
    auto* ts = app.add_subcommand("tspace", "Reduced homology of the tree space of a partition");
    std::string ts_lambda, ts_model = "quotient", ts_coeff = "Z";
    bool ts_cells = false;
    ts->add_option("--lambda", ts_lambda, "Partition JSON or @file")->required();
    ts->add_option("--model", ts_model, "Construction")->check(CLI::IsMember({"quotient", "suspension"}));
    ts->add_option("--coeff", ts_coeff, "Z, Q or Fp");
    ts->add_flag("--emit-cells", ts_cells, "Include the simplicial set");

    // layer
    auto* ly = app.add_subcommand("layer", "Coend, strata and homology report for a model M");
    std::string ly_model, ly_builtin, ly_coeff = "Z";
    std::size_t ly_n = 0, ly_n_cap = default_layer_n_cap;
    bool ly_cells = false;
    auto* ly_m = ly->add_option("--m", ly_model, "Simplicial set JSON file");
    ly->add_option("--builtin", ly_builtin, "point, points:k, circle, interval or wedge:k")->excludes(ly_m);
    ly->add_option("--n", ly_n, "Excess")->required()->check(CLI::PositiveNumber);
    ly->add_option("--coeff", ly_coeff, "Z, Q or Fp");
    ly->add_option("--n-cap", ly_n_cap, "Largest n accepted")->check(CLI::PositiveNumber);
    ly->add_flag("--emit-cells", ly_cells, "Include the coend's cells");

    // cube-check
    auto* cc = app.add_subcommand("cube-check", "Total cofiber of a cube of subcomplexes");
    std::string cc_file, cc_coeff = "Z";
    cc->add_option("--cube", cc_file, "Cube JSON file")->required();
    cc->add_option("--coeff", cc_coeff, "Z, Q or Fp");

    // verify
    auto* vf = app.add_subcommand("verify", "Run every property sweep");
    bool vf_quick = false, vf_exhaustive = false;
    std::string vf_mutation = "none";
    auto* vq = vf->add_flag("--quick", vf_quick, "Supports up to 4 (default)");
    vf->add_flag("--exhaustive", vf_exhaustive, "Supports up to 5, tree spaces up to 6")->excludes(vq);
    vf->add_option("--inject-mutation", vf_mutation, "Test only: flip one strictness verdict")
        ->check(CLI::IsMember({"none", "strictness"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*en) {
            Json config{{"n", en_n}, {"morphisms", en_maps}, {"full", en_full}};
            config["stratum"] = en_stratum ? Json(*en_stratum) : Json(nullptr);
            return run(common, "enumerate", config, [&] {
                EnumerateOptions eo;
                eo.full = en_full;
                eo.with_morphisms = en_maps;
                CategoryTable table = enumerate_En(en_n, eo);
                if (en_stratum)
                    table = filtration(table, *en_stratum);
                return Outcome{to_json(table, en_maps), true};
            }, true);
        }
        if (*gd) {
            const Partition lambda = partition_from_json(json_argument(gd_lambda, "--lambda"), "lambda");
            std::vector<Partition> deltas;
            if (gd_all)
                deltas = all_partitions(lambda.support_size());
            else if (!gd_delta.empty())
                deltas.push_back(partition_from_json(json_argument(gd_delta, "--delta"), "delta"));
            else
                throw ValidationError("goodness needs --delta or --all");
            Json config{{"lambda", to_json(lambda)}, {"all", gd_all}};
            if (!gd_all)
                config["delta"] = to_json(deltas[0]);
            return run(common, "goodness", config, [&] {
                Json verdicts = Json::array();
                bool agree = true;
                for (const auto& d : deltas) {
                    const bool good = is_good(d, lambda);
                    const bool graph = goodness_via_graph(d, lambda);
                    agree = agree && good == graph;
                    verdicts.push_back(Json{{"delta", to_json(d)},
                                            {"good", good},
                                            {"graph_criterion", graph},
                                            {"induced_target", to_json(goodness_fusion(d, lambda).target)}});
                }
                return Outcome{Json{{"lambda", to_json(lambda)}, {"verdicts", verdicts}}, agree};
            }, false);
        }
        if (*ts) {
            const Partition lambda = partition_from_json(json_argument(ts_lambda, "--lambda"), "lambda");
            const Coefficients coeff = parse_coefficients(ts_coeff);
            if (lambda.support_size() > common.support_cap)
                throw CapExceeded("tree space support", lambda.support_size(), common.support_cap);
            Json config{{"lambda", to_json(lambda)}, {"model", ts_model}, {"coefficients", coeff.name()},
                        {"emit_cells", ts_cells}, {"support_cap", common.support_cap},
                        {"dimension_cap", common.dimension_cap}};
            return run(common, "tspace", config, [&] {
                SimplicialSet x;
                if (ts_model == "quotient") {
                    x = t_space(lambda, common.support_cap).set();
                } else {
                    x = t_space_suspension_model(lambda, common.support_cap).set();
                }
                const HomologyResult h = homology(x, true, coeff);
                Json payload{{"lambda", to_json(lambda)},
                             {"model", ts_model},
                             {"coefficients", coeff.name()},
                             {"census", x.census()},
                             {"homology", to_json(h)},
                             {"expected", Json{{"degree", lambda.excess()}, {"rank", expected_tree_rank(lambda)}}}};
                if (ts_cells)
                    payload["cells"] = to_json(x);
                return Outcome{payload, true};
            }, true);
        }
        if (*ly) {
            if (ly_model.empty() == ly_builtin.empty())
                throw ValidationError("layer needs exactly one of --m or --builtin");
            const SimplicialSet m =
                ly_builtin.empty() ? simplicial_set_from_json(parse_json(read_file(ly_model), ly_model), "model")
                                   : builtin_model(ly_builtin);
            const Coefficients coeff = parse_coefficients(ly_coeff);
            LayerOptions lo;
            lo.n_cap = ly_n_cap;
            lo.dimension_cap = common.dimension_cap;
            if (ly_n > ly_n_cap)
                throw CapExceeded("layer n", ly_n, ly_n_cap);
            Json config{{"model", model_echo(m, ly_builtin)}, {"n", ly_n}, {"coefficients", coeff.name()},
                        {"emit_cells", ly_cells}, {"n_cap", ly_n_cap}, {"dimension_cap", common.dimension_cap}};
            return run(common, "layer", config, [&] {
                const LayerReport report = derivative_report(m, ly_n, coeff, lo);
                Json payload = to_json(report);
                payload["schema"] = "forestcalc.layer/1";
                Json checks = Json::array();
                bool cofibrant = true;
                for (const auto& c : verify_essentially_cofibrant(m, ly_n, lo)) {
                    cofibrant = cofibrant && c.pass();
                    checks.push_back(to_json(c));
                }
                payload["essential_cofibrancy"] = checks;
                payload["model_assumptions"] = Json::array(
                    {"coend computed on the quotient model M^[Lambda] smash T_Lambda, not on pairs",
                     "strata with a non-free action report rational orbit homology (invariants model)",
                     "GL(Lambda) and the adjoint-sphere twist are not modeled: homology is the non-equivariant input"});
                if (ly_cells)
                    payload["cells"] = to_json(coend(m, ly_n, lo).total);
                return Outcome{payload, report.pass() && cofibrant};
            }, true);
        }
        if (*cc) {
            const Cube cube = cube_from_json(parse_json(read_file(cc_file), cc_file));
            const Coefficients coeff = parse_coefficients(cc_coeff);
            Json config{{"cube_sha256", sha256_hex(read_file(cc_file))}, {"coefficients", coeff.name()}};
            return run(common, "cube-check", config, [&] {
                const CubeCertificate cert = total_cofiber_check(cube, coeff);
                Json payload{{"dimension", cube.dimension}, {"coefficients", coeff.name()}, {"acyclic", cert.acyclic},
                             {"homology", to_json(cert.homology)}};
                payload["witness_degree"] = cert.witness_degree ? Json(*cert.witness_degree) : Json(nullptr);
                return Outcome{payload, cert.acyclic};
            }, false);
        }
        if (*vf) {
            VerifyOptions vo;
            vo.level = vf_exhaustive ? VerifyLevel::exhaustive : VerifyLevel::quick;
            vo.mutation = vf_mutation == "strictness" ? Mutation::flip_strictness : Mutation::none;
            Json config{{"level", vf_exhaustive ? "exhaustive" : "quick"}, {"mutation", vf_mutation}};
            return run(common, "verify", config, [&] {
                Json checks = Json::array();
                bool pass = true;
                for (const auto& c : verify_all(vo)) {
                    pass = pass && c.pass;
                    checks.push_back(to_json(c));
                }
                return Outcome{Json{{"checks", checks}, {"pass", pass}}, pass};
            }, false);
        }
    } catch (const ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
