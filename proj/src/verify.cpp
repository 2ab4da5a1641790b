#include "pairnorm/verify.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "pairnorm/cex_search.hpp"
#include "pairnorm/opspace.hpp"
#include "pairnorm/rng.hpp"

namespace pairnorm {

namespace {

struct RowBuilder {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            append(what);
        }
    }

    void append(const std::string& what) {
        if (detail.tellp() > 0) detail << "; ";
        detail << what;
    }

    CheckRow row(const std::string& id, const std::string& name) {
        CheckRow r{id, name, pass, detail.str()};
        if (pass && r.detail.empty()) r.detail = "ok";
        return r;
    }
};

std::string num(double x) {
    std::ostringstream s;
    s.precision(12);
    s << x;
    return s.str();
}

MatrixPair random_pair2(Rng& rng) {
    for (;;) {
        try {
            return MatrixPair(rng.cmatrix(2, 2), rng.cmatrix(2, 2));
        } catch (const InvalidPair&) {
        }
    }
}

CheckRow check_triangular_witness(double perturb) {
    RowBuilder rb;
    const MatrixPair pair = parabola_pair();
    CMat v1(1, 2), v2(1, 2);
    v1(0, 0) = 1.0 / std::sqrt(2.0);
    v2(0, 1) = 1.0;
    const VPair v(v1, v2);
    const double lv = lv_norm(pair, v);
    const double cc = cc_bound(pair, v);
    rb.require(std::abs(lv - (1.0 + perturb)) <= 1e-5,
               "induced-map norm " + num(lv) + " != 1 within 1e-5");
    rb.require(std::abs(cc - (std::sqrt(1.5) + perturb)) <= 1e-9,
               "amplified norm " + num(cc) + " != sqrt(3/2) within 1e-9");
    rb.append("lv=" + num(lv) + " cc=" + num(cc));
    return rb.row("1", "triangular pair witness norms");
}

CheckRow check_euclidean_witness() {
    RowBuilder rb;
    const MatrixPair pair = euclidean_pair();
    CMat v1(1, 2), v2(1, 2);
    v1(0, 0) = 1.0;
    v2(0, 1) = 1.0;
    const double tf = testfn_sup(pair, VPair(v1, v2));
    const double cc = cc_bound(pair, VPair(v1, v2));
    rb.require(std::abs(tf - 1.0) <= 1e-5, "test-function sup " + num(tf) + " != 1 within 1e-5");
    rb.require(std::abs(cc - std::sqrt(2.0)) <= 1e-9,
               "amplified norm " + num(cc) + " != sqrt(2) within 1e-9");

    Rng rng(202);
    for (int i = 0; i < 20; ++i) {
        CMat w1 = rng.cmatrix(1, 2), w2 = rng.cmatrix(1, 2);
        const VPair vv(w1, w2);
        CMat stacked(2, 2);
        stacked(0, 0) = w1(0, 0);
        stacked(0, 1) = w1(0, 1);
        stacked(1, 0) = w2(0, 0);
        stacked(1, 1) = w2(0, 1);
        const double lhs = testfn_sup(pair, vv);
        const double rhs = op_norm(stacked);
        rb.require(std::abs(lhs - rhs) <= 1e-9,
                   "sup identity off by " + num(std::abs(lhs - rhs)));
        const double ccv = cc_bound(pair, vv);
        const double hs = hs_norm(stacked);
        rb.require(std::abs(ccv * ccv - hs * hs) <= 1e-9,
                   "amplified/HS identity off by " + num(std::abs(ccv * ccv - hs * hs)));
    }
    return rb.row("2", "euclidean pair witness and identities");
}

CheckRow check_transpose_gap() {
    RowBuilder rb;
    Rng rng(303);
    const double moduli[] = {0.0, 0.5, 1.0, 1.5, 2.0};
    for (double md : moduli) {
        for (double b : moduli) {
            for (double mc : moduli) {
                const cplx d = std::polar(md, kTwoPi * rng.uniform());
                const cplx c = std::polar(mc, kTwoPi * rng.uniform());
                const double crit = (b * b - mc * mc) * (1.0 - md * md);
                const TransposeGap gap = transpose_gap(d, b, c);
                if (std::abs(crit) <= 1e-9) {
                    rb.require(gap.equal, "norms differ where the criterion vanishes (|d|=" +
                                              num(md) + ", b=" + num(b) + ", |c|=" + num(mc) + ")");
                } else {
                    rb.require(!gap.equal, "norms agree where the criterion is nonzero (|d|=" +
                                               num(md) + ", b=" + num(b) + ", |c|=" + num(mc) + ")");
                }
            }
        }
    }
    const TransposeGap eg = transpose_gap(0.0, 1.0, 0.0);
    rb.require(std::abs(eg.norm_a * eg.norm_a - 3.0) <= 1e-9,
               "squared norm " + num(eg.norm_a * eg.norm_a) + " != 3");
    rb.require(std::abs(eg.norm_at * eg.norm_at - (3.0 + std::sqrt(5.0)) / 2.0) <= 1e-9,
               "squared transpose norm " + num(eg.norm_at * eg.norm_at) + " != (3+sqrt(5))/2");
    return rb.row("3", "transpose embedding gap criterion");
}

CheckRow check_dual_closed_form() {
    RowBuilder rb;
    const MatrixPair pair = parabola_pair();
    double worst = 0.0;
    for (int i = 0; i < 21; ++i) {
        for (int j = 0; j < 21; ++j) {
            const double w1 = 2.0 * i / 20.0;
            const double w2 = 2.0 * j / 20.0;
            const double cf = dual_norm_parabola({w1, w2});
            const double nm = dual_norm_numeric(pair, {w1, w2});
            if (cf == 0.0) {
                rb.require(nm == 0.0, "numeric dual nonzero at the origin");
                continue;
            }
            worst = std::max(worst, std::abs(nm - cf) / cf);
        }
    }
    rb.require(worst <= 1e-5, "worst relative deviation " + num(worst));
    rb.append("worst rel dev " + num(worst));
    return rb.row("4", "dual norm closed form vs numeric oracle");
}

CheckRow check_residual_search() {
    RowBuilder rb;
    struct Rep {
        const char* label;
        MatrixPair pair;
    };
    const cplx i1 = std::polar(1.0, kPi / 3.0);
    const std::vector<Rep> reps = {
        {"i", MatrixPair(CMat{{1.0, 0.0}, {0.0, i1}},
                         CMat{{1.0, 1.0}, {std::polar(0.5, 0.7), 0.0}})},
        {"ii", MatrixPair(CMat{{1.0, 0.0}, {0.0, std::polar(1.0, 1.1)}},
                          CMat{{0.0, 1.0}, {std::polar(0.6, 1.3), 0.0}})},
        {"iii", MatrixPair(CMat{{std::polar(1.0, 0.8), 0.0}, {0.0, 1.0}},
                           CMat{{1.0, 0.9}, {std::polar(0.4, -0.5), 0.0}})},
        {"iv", MatrixPair(CMat{{1.0, 0.0}, {0.0, std::polar(0.5, 0.3)}},
                          CMat{{1.0, 0.8}, {std::polar(0.8, 1.1), 0.0}})},
        {"v", MatrixPair(CMat{{1.0, 0.0}, {0.0, 0.45}},
                         CMat{{0.0, 0.7}, {std::polar(0.7, 2.0), 0.0}})},
        {"vi", MatrixPair(CMat{{std::polar(0.5, -0.9), 0.0}, {0.0, 1.0}},
                          CMat{{1.0, 0.65}, {std::polar(0.65, 0.4), 0.0}})},
    };

    const SearchConfig config;
    for (const Rep& rep : reps) {
        try {
            const Certificate cert = search(rep.pair, config);
            const std::string tag = std::string("family ") + rep.label + ": ";
            rb.require(is_residual(cert.family.tag), tag + "classified outside the residual set");

            const double oracle = uv_sup_oracle(cert.pair, cert.uv, 101, false);
            rb.require(oracle <= 1.0 + 1e-6, tag + "sphere oracle " + num(oracle) + " > 1+1e-6");
            const double cc = cc_bound(cert.pair, uv_vpair(cert.uv));
            rb.require(cc - 1.0 >= 1e-4, tag + "violation " + num(cc - 1.0) + " < 1e-4");
            rb.require(std::abs(cert.violation - (cc - 1.0)) <= 1e-12,
                       tag + "stored violation inconsistent");
            const GEval g = inf_g(cert.pair, cert.uv, {config.sphere_grid, config.sphere_grid});
            rb.require(std::abs(g.value) <= 10.0 * config.bisect_tol,
                       tag + "recomputed infimum " + num(g.value) + " not near zero");
            rb.require(cert.schwarz_gap_at_beta0 > 1e-8, tag + "Schwarz gap not positive");
            const GEval at_beta = g_eval(cert.pair, cert.uv, cert.beta0);
            rb.require(std::abs(at_beta.schwarz_gap - cert.schwarz_gap_at_beta0) <= 1e-9,
                       tag + "stored Schwarz gap inconsistent");
        } catch (const std::exception& e) {
            rb.require(false, std::string("family ") + rep.label + ": " + e.what());
        }
    }
    return rb.row("5", "residual family witness search");
}

CheckRow check_bidisc_control() {
    RowBuilder rb;
    const MatrixPair pair = bidisc_pair();
    bool threw = false;
    try {
        (void)search(pair, SearchConfig{});
    } catch (const NotApplicable&) {
        threw = true;
    } catch (const std::exception& e) {
        rb.require(false, std::string("unexpected error: ") + e.what());
    }
    rb.require(threw, "search did not report the diagonalizable class");

    Rng rng(606);
    int kept = 0, attempts = 0;
    while (kept < 200 && attempts < 4000) {
        ++attempts;
        const UVParams uv{rng.uniform(0.0, 1.2), rng.uniform(0.0, 1.2)};
        if (uv_sup_oracle(pair, uv, 51, true) > 1.0) continue;
        ++kept;
        const double cc = cc_bound(pair, uv_vpair(uv));
        rb.require(cc <= 1.0 + 1e-9,
                   "contractive (u,v)=(" + num(uv.u) + "," + num(uv.v) + ") has amplified norm " +
                       num(cc));
    }
    rb.require(kept == 200, "only drew " + std::to_string(kept) + " contractive samples");
    return rb.row("6", "bidisc negative control");
}

CheckRow check_block_criterion() {
    RowBuilder rb;
    Rng rng(707);
    for (int i = 0; i < 100; ++i) {
        const int m = 1 + static_cast<int>(rng.uniform() * 4);
        const int n = 1 + static_cast<int>(rng.uniform() * 4);
        const cplx a1 = std::polar(0.95 * rng.uniform(), kTwoPi * rng.uniform());
        const cplx a2 = std::polar(0.95 * rng.uniform(), kTwoPi * rng.uniform());
        CMat b = rng.cmatrix(m, n);
        if (op_norm(b) < 1e-6) {
            b(0, 0) += 1.0;
        }

        const NormPairResult red = block_norm_reduction(a1, a2, b);
        rb.require(std::abs(red.full - red.reduced) <= 1e-9,
                   "block reduction off by " + num(std::abs(red.full - red.reduced)));

        // Margin instance on alternating sides of the contraction boundary.
        const double defect = std::sqrt((1.0 - std::norm(a1)) * (1.0 - std::norm(a2)));
        const double target = defect * ((i % 2 == 0) ? 0.9 : 1.1);
        const CMat bs = b * cplx(target / op_norm(b));
        const bool criterion = dmp_contraction_ok(a1, a2, bs);
        const bool contraction = block_norm_reduction(a1, a2, bs).full <= 1.0 + 1e-9;
        rb.require(criterion == contraction,
                   std::string("criterion/contraction disagree on instance ") + num(i));
    }
    // Exact boundary instance.
    CMat bhalf(1, 1);
    bhalf(0, 0) = 0.5;
    rb.require(dmp_contraction_ok(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), bhalf),
               "boundary instance rejected");
    return rb.row("7", "triangular block contraction criterion");
}

CheckRow check_embedding_invariance() {
    RowBuilder rb;
    Rng rng(808);
    for (int i = 0; i < 50; ++i) {
        const int k = 1 + static_cast<int>(rng.uniform() * 3);
        const int m = 1 + static_cast<int>(rng.uniform() * 3);
        const int n = 1 + static_cast<int>(rng.uniform() * 3);
        const cplx a1 = std::polar(1.2 * rng.uniform(), kTwoPi * rng.uniform());
        const cplx a2 = std::polar(1.2 * rng.uniform(), kTwoPi * rng.uniform());
        CMat b = rng.cmatrix(m, n);
        if (op_norm(b) < 1e-6) b(0, 0) += 1.0;
        const LevelKElement z{rng.cmatrix(k, k), rng.cmatrix(k, k)};

        const EmbeddingSpec spec(a1, a2, b);
        const NormPairResult ee = embedding_equivalence(spec, z);
        rb.require(std::abs(ee.full - ee.reduced) <= 1e-8,
                   "full/reduced deviate by " + num(std::abs(ee.full - ee.reduced)));

        const double nb = op_norm(b);
        for (int rep = 0; rep < 5; ++rep) {
            CMat b2 = rng.cmatrix(m, n);
            if (op_norm(b2) < 1e-6) b2(0, 0) += 1.0;
            b2 *= cplx(nb / op_norm(b2));
            const NormPairResult e2 = embedding_equivalence(EmbeddingSpec(a1, a2, b2), z);
            rb.require(std::abs(e2.full - ee.full) <= 1e-8,
                       "full norm varies across equal-norm blocks by " +
                           num(std::abs(e2.full - ee.full)));
        }
    }
    return rb.row("8", "embedding invariance across equal-norm blocks");
}

CheckRow check_structural_invariants() {
    RowBuilder rb;

    {  // norm axioms: homogeneity and triangle inequality
        Rng rng(901);
        for (int i = 0; i < 100; ++i) {
            const MatrixPair pair = random_pair2(rng);
            const Vec2 z = rng.unit_vec2();
            const Vec2 w = rng.unit_vec2();
            const cplx lam = 2.0 * rng.cnormal();
            const double lhs = a_norm(pair, lam * z);
            const double rhs = std::abs(lam) * a_norm(pair, z);
            rb.require(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, rhs),
                       "homogeneity off by " + num(std::abs(lhs - rhs)));
            const double tri =
                a_norm(pair, {z.x + w.x, z.y + w.y}) - a_norm(pair, z) - a_norm(pair, w);
            rb.require(tri <= 1e-10, "triangle inequality violated by " + num(tri));
        }
    }

    {  // duality inequality
        Rng rng(902);
        for (int i = 0; i < 100; ++i) {
            const MatrixPair pair = random_pair2(rng);
            const Vec2 z = rng.unit_vec2();
            const Vec2 w = rng.unit_vec2();
            const double lhs = std::abs(w.x * z.x + w.y * z.y);
            const double rhs =
                dual_norm_numeric(pair, {w.x, w.y}, {65, 129}) * a_norm(pair, z) * (1.0 + 1e-6);
            rb.require(lhs <= rhs, "duality inequality violated by " + num(lhs - rhs));
        }
    }

    {  // unitary and transpose invariance
        Rng rng(903);
        for (int i = 0; i < 100; ++i) {
            const MatrixPair pair = random_pair2(rng);
            const Vec2 z = rng.unit_vec2();
            const double base = a_norm(pair, z);
            const MatrixPair tp(transpose(pair.a1()), transpose(pair.a2()));
            rb.require(std::abs(a_norm(tp, z) - base) <= 1e-10,
                       "transpose invariance off at instance " + num(i));
            const CMat u = rng.unitary(2), w = rng.unitary(2);
            const MatrixPair moved(u * pair.a1() * w, u * pair.a2() * w);
            rb.require(std::abs(a_norm(moved, z) - base) <= 1e-9,
                       "unitary invariance off at instance " + num(i));
        }
    }

    {  // covariance of the induced-map norm under linear moves
        Rng rng(904);
        const GridSpec outer{33, 65}, inner{33, 65};
        for (int i = 0; i < 100; ++i) {
            const MatrixPair pair = random_pair2(rng);
            cplx p, q, r, s;
            do {
                p = rng.cnormal();
                q = rng.cnormal();
                r = rng.cnormal();
                s = rng.cnormal();
            } while (std::abs(p * s - q * r) < 0.3);
            const CMat v1 = rng.cmatrix(1, 2), v2 = rng.cmatrix(1, 2);

            MatrixPair moved(p * pair.a1() + r * pair.a2(), q * pair.a1() + s * pair.a2());
            const VPair v(v1, v2);
            const VPair tv(p * v1 + q * v2, r * v1 + s * v2);
            const double lhs = lv_norm(moved, v, outer, inner);
            const double rhs = lv_norm(pair, tv, outer, inner);
            rb.require(std::abs(lhs - rhs) <= 1e-6 * std::max(1.0, rhs),
                       "covariance off by " + num(std::abs(lhs - rhs)) + " at instance " + num(i));
        }
    }

    {  // domination of the test-function sup by the amplified norm
        Rng rng(905);
        for (int i = 0; i < 100; ++i) {
            const MatrixPair pair = random_pair2(rng);
            const int pp = 1 + static_cast<int>(rng.uniform() * 3);
            const int qq = 1 + static_cast<int>(rng.uniform() * 3);
            const VPair v(rng.cmatrix(pp, qq), rng.cmatrix(pp, qq));
            const double tf = testfn_sup(pair, v, 10);
            const double cc = cc_bound(pair, v);
            rb.require(tf <= cc + 1e-7, "domination violated by " + num(tf - cc));
        }
    }

    return rb.row("9", "structural invariant suites");
}

}  // namespace

std::vector<CheckRow> run_reference_suite(const VerifyOptions& opts) {
    const std::pair<int, std::function<CheckRow()>> checks[] = {
        {1, [&] { return check_triangular_witness(opts.perturb); }},
        {2, check_euclidean_witness},
        {3, check_transpose_gap},
        {4, check_dual_closed_form},
        {5, check_residual_search},
        {6, check_bidisc_control},
        {7, check_block_criterion},
        {8, check_embedding_invariance},
        {9, check_structural_invariants},
    };
    std::vector<CheckRow> rows;
    for (const auto& [id, fn] : checks) {
        if (opts.only_id == 0 || opts.only_id == id) rows.push_back(fn());
    }
    return rows;
}

}  // namespace pairnorm
