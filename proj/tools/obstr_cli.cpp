// command line front end: Hochschild cohomology, deformations, obstruction
// classes, characteristic classes, and twisted Hodge diamonds of hypersurfaces
#include <CLI11.hpp>
#include <json.hpp>

#include "obstr/ainf.hpp"
#include "obstr/hodge.hpp"
#include "obstr/io.hpp"
#include "obstr/selftest.hpp"

#include <fstream>
#include <iostream>

using namespace obstr;
using nlohmann::json;

namespace {

FinCategory load_category(const std::string& arg) {
    if (io::is_stock_category(arg)) return io::stock_category(arg);
    return io::read_category(io::load_file(arg));
}

Bimodule load_bimodule(const std::string& arg, const FinCategory& c) {
    if (arg == "self") return canonical_bimodule(c);
    return io::read_bimodule(io::load_file(arg), c);
}

void emit(const json& j, bool as_json, const std::string& text) {
    if (as_json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

void write_output(const json& j, const std::string& path) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw input_error("cannot write file: " + path);
    out << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hochschild cohomology, infinitesimal deformations and twisted Hodge diamonds"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "structured output on stdout");

    // hh
    std::string hh_cat, hh_coeff = "self";
    int hh_degree = 0;
    auto* hh = app.add_subcommand("hh", "Hochschild cohomology dimension");
    hh->add_option("--category", hh_cat, "category file or stock name")->required();
    hh->add_option("--coeff", hh_coeff, "bimodule file or 'self'");
    hh->add_option("--degree", hh_degree, "cohomological degree")->required();

    // deform
    std::string df_cat, df_coeff = "self", df_cocycle, df_out;
    int df_mdeg = 3, df_check = 0;
    auto* df = app.add_subcommand("deform", "infinitesimal deformation along a cocycle");
    df->add_option("--category", df_cat)->required();
    df->add_option("--coeff", df_coeff);
    df->add_option("--cocycle", df_cocycle)->required();
    df->add_option("--mdeg", df_mdeg, "degree of the deformation cocycle");
    df->add_option("--check-arity", df_check, "relation check bound (default 2*mdeg)");
    df->add_option("-o,--output", df_out, "write the deformed category to a file");

    // obstruct
    std::string ob_src, ob_tgt, ob_functor;
    int ob_arity = 0;
    auto* ob = app.add_subcommand("obstruct", "obstruction class of a partial functor");
    ob->add_option("--source", ob_src, "source category (k-linear)")->required();
    ob->add_option("--target", ob_tgt, "target A-infinity category file")->required();
    ob->add_option("--functor", ob_functor, "partial functor file")->required();
    ob->add_option("--arity", ob_arity)->required();

    // tilde-f
    std::string tf_src, tf_tgt, tf_functor, tf_coeff = "self", tf_eta, tf_theta, tf_out;
    int tf_mdeg = 3;
    auto* tf = app.add_subcommand("tilde-f", "composite functor into the deformation");
    tf->add_option("--source", tf_src, "category Y")->required();
    tf->add_option("--target", tf_tgt, "category X")->required();
    tf->add_option("--functor", tf_functor, "linear functor Y -> X")->required();
    tf->add_option("--coeff", tf_coeff, "bimodule over X or 'self'");
    tf->add_option("--eta", tf_eta, "deformation cocycle over X")->required();
    tf->add_option("--theta", tf_theta, "nullhomotopy of the pulled back cocycle")->required();
    tf->add_option("--mdeg", tf_mdeg);
    tf->add_option("-o,--output", tf_out, "write the composite functor to a file");

    // charclass
    std::string cc_cat, cc_coeff = "self", cc_module, cc_cocycle;
    bool cc_dual = false;
    auto* cc = app.add_subcommand("charclass", "characteristic class of a cocycle on a module");
    cc->add_option("--category", cc_cat)->required();
    cc->add_option("--coeff", cc_coeff);
    cc->add_option("--module", cc_module)->required();
    cc->add_option("--cocycle", cc_cocycle)->required();
    cc->add_flag("--dual", cc_dual, "dual characteristic morphism");

    // diamond
    int dm_d = 0, dm_N = 0, dm_t = 0;
    auto* dm = app.add_subcommand("diamond", "twisted Hodge diamond of a hypersurface");
    dm->add_option("--degree", dm_d)->required();
    dm->add_option("--ambient", dm_N)->required();
    dm->add_option("--twist", dm_t)->required();

    // hkr
    int hk_d = 0, hk_N = 0, hk_t = 0, hk_k = 0;
    auto* hk = app.add_subcommand("hkr", "Hochschild cohomology dimension of a hypersurface");
    hk->add_option("--degree", hk_d)->required();
    hk->add_option("--ambient", hk_N)->required();
    hk->add_option("--twist", hk_t)->required();
    hk->add_option("--hh-degree", hk_k)->required();

    // kernel
    int kn_d = 0, kn_N = 0, kn_t = 0, kn_m = 0;
    auto* kn = app.add_subcommand("kernel", "kernel dimension of the pushforward on HH");
    kn->add_option("--degree", kn_d)->required();
    kn->add_option("--ambient", kn_N)->required();
    kn->add_option("--twist", kn_t)->required();
    kn->add_option("--hh-degree", kn_m)->required();

    // catalog
    int ct_d = 0, ct_N = 0, ct_t0 = 0, ct_t1 = 0, ct_m0 = 0, ct_m1 = 0;
    auto* ct = app.add_subcommand("catalog", "catalog of nonzero pushforward kernels");
    ct->add_option("--degree", ct_d)->required();
    ct->add_option("--ambient", ct_N)->required();
    ct->add_option("--twist-min", ct_t0)->required();
    ct->add_option("--twist-max", ct_t1)->required();
    ct->add_option("--hh-min", ct_m0)->required();
    ct->add_option("--hh-max", ct_m1)->required();

    // selftest
    unsigned st_seed = 20240817;
    auto* st = app.add_subcommand("selftest", "randomized invariant suite");
    st->add_option("--seed", st_seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*hh) {
            FinCategory c = load_category(hh_cat);
            Bimodule m = load_bimodule(hh_coeff, c);
            std::size_t dim = hh_dimension(c, m, hh_degree);
            json j{{"degree", hh_degree}, {"dimension", dim}};
            emit(j, as_json, std::to_string(dim) + "\n");
        } else if (*df) {
            FinCategory c = load_category(df_cat);
            Bimodule m = load_bimodule(df_coeff, c);
            Cochain eta = io::read_cochain(io::load_file(df_cocycle), c, m);
            if (eta.degree != df_mdeg) df_mdeg = eta.degree;
            Deformation d = deform(c, m, eta, df_mdeg);
            int bound = df_check > 0 ? df_check : 2 * df_mdeg;
            auto violations = check_ainf_relations(d.category, bound);
            json cat = io::write_ainf_category(d.category);
            json report = json::array();
            for (const auto& v : violations) {
                json tuple = json::array();
                for (auto o : v.tuple) tuple.push_back(c.objects[o]);
                report.push_back({{"arity", v.arity}, {"objects", tuple}});
            }
            json j{{"mdeg", df_mdeg},
                   {"relations_checked_to", bound},
                   {"violations", report},
                   {"category", cat}};
            write_output(cat, df_out);
            std::string text = "deformation of degree " + std::to_string(df_mdeg) +
                               "; relations checked through arity " + std::to_string(bound) +
                               ": " +
                               (violations.empty() ? "ok"
                                                   : std::to_string(violations.size()) +
                                                         " violation(s)") +
                               "\n";
            emit(j, as_json, text);
            if (!violations.empty()) return 1;
        } else if (*ob) {
            FinCategory src = load_category(ob_src);
            AInfCategory tgt = io::read_ainf_category(io::load_file(ob_tgt));
            AInfFunctor partial =
                io::read_ainf_functor(io::load_file(ob_functor), ainf_from_linear(src), tgt);
            ObstructionClass oc = obstruction_class(src, tgt, partial, ob_arity);
            auto ext = extendable(src, tgt, partial, ob_arity);
            json j{{"arity", oc.arity},
                   {"value_degree", oc.value_degree},
                   {"cocycle_certified", oc.cocycle_certified},
                   {"vanishes", static_cast<bool>(ext)},
                   {"representative",
                    io::write_cochain(src, oc.value_bimodule, oc.representative)}};
            std::string text = "obstruction at arity " + std::to_string(oc.arity) +
                               (oc.representative.is_zero() ? " (zero representative)" : "") +
                               "; cocycle certificate: " +
                               (oc.cocycle_certified ? "ok" : "FAILED") +
                               "; extendable: " + (ext ? "yes" : "no") + "\n";
            emit(j, as_json, text);
        } else if (*tf) {
            FinCategory y = load_category(tf_src);
            FinCategory x = load_category(tf_tgt);
            LinearFunctor f = io::read_linear_functor(io::load_file(tf_functor), y, x);
            auto rep = validate_functor(y, x, f);
            if (!rep.ok()) throw validation_error("functor invalid: " + rep.problems.front());
            Bimodule m = load_bimodule(tf_coeff, x);
            Cochain eta = io::read_cochain(io::load_file(tf_eta), x, m);
            Bimodule fm = restrict_bimodule(y, x, f, m);
            Cochain theta = io::read_cochain(io::load_file(tf_theta), y, fm);
            TildeF tfres = build_tilde_f(y, x, f, m, eta, theta, tf_mdeg);
            AInfCategory ylin = ainf_from_linear(y);
            auto violations = check_functor_relations(ylin, tfres.target.category, tfres.functor,
                                                      2 * tf_mdeg);
            // can o f~ must equal f on the nose
            AInfFunctor composite = compose_ainf(ylin, tfres.target.category,
                                                 ainf_from_linear(x), tfres.functor,
                                                 tfres.target.can, 2 * tf_mdeg);
            bool can_check = true;
            for (const auto& [k, blocks] : composite.components)
                for (const auto& [tuple, block] : blocks) {
                    if (k == 1) {
                        QMatrix expect = f.map(tuple[0], tuple[1], y.n_objects());
                        if (!(block == expect)) can_check = false;
                    } else if (!block.is_zero()) {
                        can_check = false;
                    }
                }
            json jf = io::write_ainf_functor(ylin, tfres.target.category, tfres.functor);
            write_output(jf, tf_out);
            json j{{"functor", jf},
                   {"relations_ok", violations.empty()},
                   {"can_compose_recovers_f", can_check}};
            emit(j, as_json,
                 std::string("tilde-f built; functor equations: ") +
                     (violations.empty() ? "ok" : "FAILED") +
                     "; can o f~ = f: " + (can_check ? "ok" : "FAILED") + "\n");
            if (!violations.empty() || !can_check) return 1;
        } else if (*cc) {
            FinCategory c = load_category(cc_cat);
            Bimodule m = load_bimodule(cc_coeff, c);
            Module g = io::read_module(io::load_file(cc_module), c);
            Cochain eta = io::read_cochain(io::load_file(cc_cocycle), c, m);
            CharacteristicClass cls = characteristic_class(c, m, g, eta, cc_dual);
            json j{{"dual", cc_dual},
                   {"degree", eta.degree},
                   {"cocycle_certified", cls.cocycle_certified},
                   {"vanishes", cls.vanishes}};
            emit(j, as_json,
                 std::string(cc_dual ? "dual " : "") + "characteristic class " +
                     (cls.vanishes ? "vanishes" : "does not vanish") + "\n");
        } else if (*dm) {
            Diamond d = diamond(make_spec(dm_d, dm_N, dm_t));
            json entries = json::array();
            for (int p = 0; p <= d.spec.n(); ++p)
                for (int q = 0; q <= d.spec.n(); ++q)
                    entries.push_back({{"p", p}, {"q", q}, {"value", d.at(p, q).str()}});
            json j{{"degree", dm_d}, {"ambient", dm_N}, {"twist", dm_t}, {"entries", entries}};
            emit(j, as_json, render_diamond(d));
        } else if (*hk) {
            Integer v = hkr_hh_dim(make_spec(hk_d, hk_N, hk_t), hk_k);
            json j{{"degree", hk_d},
                   {"ambient", hk_N},
                   {"twist", hk_t},
                   {"hh_degree", hk_k},
                   {"dimension", v.str()}};
            emit(j, as_json, v.str() + "\n");
        } else if (*kn) {
            Integer v = kernel_dim(make_spec(kn_d, kn_N, kn_t), kn_m);
            json j{{"degree", kn_d},
                   {"ambient", kn_N},
                   {"twist", kn_t},
                   {"hh_degree", kn_m},
                   {"kernel_dimension", v.str()}};
            emit(j, as_json, v.str() + "\n");
        } else if (*ct) {
            auto entries = catalog_non_fm(ct_d, ct_N, ct_t0, ct_t1, ct_m0, ct_m1);
            json arr = json::array();
            std::string text;
            for (const auto& e : entries) {
                arr.push_back({{"twist", e.t}, {"hh_degree", e.m}, {"kernel_dimension", e.dim.str()}});
                text += std::to_string(e.t) + "\t" + std::to_string(e.m) + "\t" + e.dim.str() +
                        "\n";
            }
            json j{{"degree", ct_d}, {"ambient", ct_N}, {"entries", arr}};
            emit(j, as_json, text);
        } else if (*st) {
            SelftestResult r = run_selftest(st_seed);
            json fails = json::array();
            for (const auto& f : r.failures) fails.push_back(f);
            json j{{"seed", st_seed}, {"checks", r.checks}, {"failures", fails}};
            emit(j, as_json,
                 "selftest: " + std::to_string(r.checks) + " checks, " +
                     std::to_string(r.failures.size()) + " failures\n");
            if (!r.ok()) {
                for (const auto& f : r.failures) std::cerr << "failure: " << f << "\n";
                return 1;
            }
        }
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const rule_not_applicable& e) {
        std::cerr << "rule not applicable: " << e.what() << "\n";
        return 1;
    } catch (const validation_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
