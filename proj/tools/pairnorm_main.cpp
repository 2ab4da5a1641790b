#include <chrono>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "pairnorm/report.hpp"
#include "pairnorm/verify.hpp"

namespace {

using namespace pairnorm;

cplx parse_complex(const std::string& s) {
    std::istringstream in(s);
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(in >> re)) throw ParseError("bad complex value '" + s + "', expected re[,im]");
    if (in >> comma) {
        if (comma != ',' || !(in >> im)) {
            throw ParseError("bad complex value '" + s + "', expected re[,im]");
        }
    }
    return {re, im};
}

std::string fmt_complex(cplx z) {
    std::ostringstream out;
    out.precision(12);
    out << z.real();
    if (z.imag() >= 0.0) {
        out << "+" << z.imag() << "i";
    } else {
        out << "-" << -z.imag() << "i";
    }
    return out.str();
}

struct Emit {
    bool as_json = false;
    bool stable = false;
    std::string out_path;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void operator()(Report& rep, const std::string& text) const {
        rep.stable = stable;
        rep.wall_time_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        if (as_json) {
            std::cout << rep.to_json().dump(2) << "\n";
        } else {
            std::cout << text;
        }
        if (!out_path.empty()) write_json_file(out_path, rep.to_json());
    }
};

bool is_parabola_pair(const MatrixPair& p) {
    if (p.dim() != 2) return false;
    CMat d1 = p.a1() - CMat::identity(2);
    CMat d2 = p.a2() - CMat{{0.0, 1.0}, {0.0, 0.0}};
    return hs_norm(d1) <= 1e-10 && hs_norm(d2) <= 1e-10;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pairnorm: norms induced by matrix pairs on C^2, contractivity and "
                 "complete-contractivity tests, pair classification, and certified "
                 "witness search"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    app.set_version_flag("--version", std::string(kToolVersion));

    double tol = kDefaultTol;
    uint64_t seed = 0;
    Emit emit;
    app.add_option("--tol", tol, "tolerance for verdicts")->capture_default_str();
    app.add_option("--seed", seed, "seed for seeded operations");
    app.add_flag("--json", emit.as_json, "emit the report as JSON on stdout");
    app.add_flag("--stable", emit.stable, "omit timing so identical runs emit identical bytes");
    app.add_option("--out", emit.out_path, "also write the report JSON to this file");

    int exit_code = 0;

    // norm <pair-file> --z1 re[,im] --z2 re[,im]
    auto* cnorm = app.add_subcommand("norm", "pair-induced norm of a point");
    std::string norm_pair, norm_z1 = "0", norm_z2 = "0";
    cnorm->add_option("pair", norm_pair, "pair JSON file")->required();
    cnorm->add_option("--z1", norm_z1, "first coordinate, re[,im]")->required();
    cnorm->add_option("--z2", norm_z2, "second coordinate, re[,im]")->required();
    cnorm->callback([&] {
        const MatrixPair pair = pair_from_json(load_json_file(norm_pair));
        const Vec2 z{parse_complex(norm_z1), parse_complex(norm_z2)};
        const double value = a_norm(pair, z);
        const bool inside = in_unit_ball(pair, z, tol);
        Report rep;
        rep.command = "norm";
        rep.inputs = {{"pair_file", norm_pair}, {"z", vec2_to_json(z)}};
        rep.outputs = {{"norm", value}, {"in_unit_ball", inside}};
        rep.tolerances = {{"tol", tol}};
        std::ostringstream text;
        text.precision(12);
        text << "norm(" << fmt_complex(z.x) << ", " << fmt_complex(z.y) << ") = " << value
             << "\nin_unit_ball: " << (inside ? "yes" : "no") << "\n";
        emit(rep, text.str());
    });

    // dual-norm <pair-file> --w1 --w2 [--closed-form]
    auto* cdual = app.add_subcommand("dual-norm", "dual norm of a functional");
    std::string dual_pair, dual_w1 = "0", dual_w2 = "0";
    bool closed_form = false;
    cdual->add_option("pair", dual_pair, "pair JSON file")->required();
    cdual->add_option("--w1", dual_w1, "first coefficient, re[,im]")->required();
    cdual->add_option("--w2", dual_w2, "second coefficient, re[,im]")->required();
    cdual->add_flag("--closed-form", closed_form,
                    "also evaluate the closed form (identity-plus-nilpotent pair only)");
    cdual->callback([&] {
        const MatrixPair pair = pair_from_json(load_json_file(dual_pair));
        const DualVector w{parse_complex(dual_w1), parse_complex(dual_w2)};
        const double numeric = dual_norm_numeric(pair, w);
        Report rep;
        rep.command = "dual-norm";
        rep.inputs = {{"pair_file", dual_pair},
                      {"w1", complex_to_json(w.w1)},
                      {"w2", complex_to_json(w.w2)}};
        rep.outputs = {{"dual_norm", numeric}};
        rep.tolerances = {{"grid", "129x257 + refinement"}, {"target_rel_accuracy", 1e-6}};
        std::ostringstream text;
        text.precision(12);
        text << "dual_norm = " << numeric << "\n";
        if (closed_form) {
            if (!is_parabola_pair(pair)) {
                throw InvalidPair("closed form unavailable: pair is not (I2, E12) within 1e-10");
            }
            const double cf = dual_norm_parabola(w);
            const char* branch =
                (std::abs(w.w2) >= 0.5 * std::abs(w.w1)) ? "interior-maximum" : "edge-maximum";
            rep.outputs["closed_form"] = cf;
            rep.outputs["branch"] = branch;
            text << "closed_form = " << cf << " (" << branch << " branch)\n";
        }
        emit(rep, text.str());
    });

    // classify <pair-file>
    auto* ccls = app.add_subcommand("classify", "canonical class of a 2x2 pair");
    std::string cls_pair;
    ccls->add_option("pair", cls_pair, "pair JSON file")->required();
    ccls->callback([&] {
        const MatrixPair pair = pair_from_json(load_json_file(cls_pair));
        const CanonicalClass cls = classify(pair);
        Report rep;
        rep.command = "classify";
        rep.inputs = {{"pair_file", cls_pair}, {"pair", pair_to_json(pair)}};
        rep.outputs = {{"class", canonical_class_to_json(cls)},
                       {"moves", cls.moves.size()}};
        rep.tolerances = {{"class_boundary", 1e-6}};
        std::ostringstream text;
        text.precision(12);
        text << "class: " << pair_class_name(cls.tag) << "\n";
        if (cls.tag != PairClass::SimultaneouslyDiagonalizable) {
            text << "d = " << fmt_complex(cls.d) << ", b = " << cls.b
                 << ", c = " << fmt_complex(cls.c) << "\n";
            if (cls.row_ambiguous) text << "note: more than one normal-form row matched\n";
        }
        emit(rep, text.str());
    });

    // check (<pair-file> <v-file> | <certificate-file>)
    auto* cchk = app.add_subcommand("check", "contractivity and amplification of a map");
    std::string chk_a, chk_b;
    cchk->add_option("pair-or-certificate", chk_a, "pair JSON file or persisted certificate")
        ->required();
    cchk->add_option("v", chk_b, "V-pair JSON file (omit for a certificate input)");
    cchk->callback([&] {
        const json top = load_json_file(chk_a);
        const bool cert_mode =
            top.contains("outputs") && top.at("outputs").contains("certificate");
        MatrixPair pair = cert_mode
                              ? pair_from_json(top.at("outputs").at("certificate").at("pair"))
                              : pair_from_json(top);
        GridSpec outer{}, inner{};
        json inputs;
        VPair v = [&] {
            if (cert_mode) {
                const Certificate cert =
                    certificate_from_json(top.at("outputs").at("certificate"));
                outer = kCertLvOuter;
                inner = kCertLvInner;
                inputs = {{"certificate_file", chk_a}};
                return uv_vpair(cert.uv);
            }
            if (chk_b.empty()) throw ParseError("check: missing V-pair file");
            inputs = {{"pair_file", chk_a}, {"v_file", chk_b}};
            return vpair_from_json(load_json_file(chk_b));
        }();

        const double lv = lv_norm(pair, v, outer, inner);
        const double cc = cc_bound(pair, v);
        const bool contractive = lv <= 1.0 + tol;
        const bool violated = cc > 1.0 + tol;
        Report rep;
        rep.command = "check";
        rep.inputs = inputs;
        rep.outputs = {{"lv_norm", lv},
                       {"cc_bound", cc},
                       {"contractive", contractive},
                       {"cc_violated", violated},
                       {"margin", cc - 1.0}};
        rep.tolerances = {{"tol", tol}};
        std::ostringstream text;
        text.precision(12);
        text << "lv_norm = " << lv << "\ncc_bound = " << cc << "\ncontractive: "
             << (contractive ? "yes" : "no") << "\ncc_violated: " << (violated ? "yes" : "no")
             << "\nmargin = " << cc - 1.0 << "\n";
        emit(rep, text.str());
    });

    // search <pair-file> [--margin eps]
    auto* csrch = app.add_subcommand("search", "certified witness search");
    std::string srch_pair;
    double srch_margin = 1e-4;
    csrch->add_option("pair", srch_pair, "pair JSON file")->required();
    csrch->add_option("--margin", srch_margin, "smallest violation worth certifying")
        ->capture_default_str();
    csrch->callback([&] {
        const MatrixPair pair = pair_from_json(load_json_file(srch_pair));
        SearchConfig config;
        config.cert_margin = srch_margin;
        config.seed = seed;
        const Certificate cert = search(pair, config);
        Report rep;
        rep.command = "search";
        rep.inputs = {{"pair_file", srch_pair}, {"pair", pair_to_json(pair)}, {"seed", seed}};
        rep.outputs = {{"certificate", certificate_to_json(cert)}};
        rep.tolerances = {{"cert_margin", srch_margin}, {"bisect_tol", config.bisect_tol}};
        std::ostringstream text;
        text.precision(12);
        text << "class: " << pair_class_name(cert.family.tag) << "\nu = " << cert.uv.u
             << ", v = " << cert.uv.v << "\nlv_value = " << cert.lv_value
             << "\nviolation = " << cert.violation << "\ninf_g = " << cert.inf_g_value
             << "\nschwarz_gap = " << cert.schwarz_gap_at_beta0 << "\n";
        emit(rep, text.str());
    });

    // verify-paper [--perturb eps]
    auto* cver = app.add_subcommand("verify-paper", "run the reference reproduction suite");
    double perturb = 0.0;
    cver->add_option("--perturb", perturb,
                     "shift the expected reference constants (harness sanity)");
    cver->callback([&] {
        VerifyOptions opts;
        opts.perturb = perturb;
        const std::vector<CheckRow> rows = run_reference_suite(opts);
        Report rep;
        rep.command = "verify-paper";
        rep.inputs = {{"perturb", perturb}};
        json jrows = json::array();
        bool all_pass = true;
        std::ostringstream text;
        for (const CheckRow& r : rows) {
            all_pass = all_pass && r.pass;
            jrows.push_back(json{
                {"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
            text << (r.pass ? "PASS" : "FAIL") << "  " << r.id << "  " << r.name;
            if (!r.pass) text << "  [" << r.detail << "]";
            text << "\n";
        }
        text << (all_pass ? "all checks passed\n" : "some checks FAILED\n");
        rep.outputs = {{"rows", jrows}, {"all_pass", all_pass}};
        emit(rep, text.str());
        if (!all_pass) exit_code = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const SearchFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const NotApplicable& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
