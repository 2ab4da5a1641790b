#include "pairnorm/cex_search.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pairnorm/linalg.hpp"

namespace pairnorm {

namespace {

void validate_config(const SearchConfig& c) {
    if (c.sphere_grid < 3 || c.bisect_tol <= 0.0 || c.cert_margin <= 0.0 ||
        c.max_bisect_iters < 1 || !(c.bisect_tol < c.cert_margin)) {
        throw std::invalid_argument("SearchConfig: need positive fields and bisect_tol < cert_margin");
    }
}

struct BetaData {
    double x = 0.0;  // ||A1* b||^2
    double y = 0.0;  // ||A2* b||^2
    double c = 0.0;  // Schwarz gap
    double p = 0.0;  // |<A1 A2* b, b>|^2
};

BetaData beta_data(const MatrixPair& pair, Vec2 beta) {
    const Vec2 b = normalized(beta);
    const Vec2 b1 = matvec2(adjoint(pair.a1()), b);
    const Vec2 b2 = matvec2(adjoint(pair.a2()), b);
    BetaData d;
    d.x = std::norm(b1.x) + std::norm(b1.y);
    d.y = std::norm(b2.x) + std::norm(b2.y);
    d.p = std::norm(dot(matvec2(pair.a1() * adjoint(pair.a2()), b), b));
    d.c = d.x * d.y - d.p;
    return d;
}

struct CurveSample {
    double u = 0.0;
    double v = 0.0;
    double margin = 0.0;  // min_i f_i at the sample
};

UVParams ray_point(BetaMode mode, double lambda0, double s) {
    return (mode == BetaMode::APositive) ? UVParams{s, lambda0 * s} : UVParams{lambda0 * s, s};
}

// All admissible (u0, v0) on the zero curve of g(., ., beta_hat): the
// graph branch solved from the quadratic in the second parameter, plus the
// degenerate straight branch that appears when A1* beta_hat and A2* beta_hat
// are orthogonal.
std::vector<CurveSample> scan_zero_curve(const MatrixPair& pair, Vec2 beta_hat, BetaMode mode,
                                         const std::vector<Vec2>& etas) {
    const BetaData bd = beta_data(pair, beta_hat);
    const double n1 = op_norm(adjoint(pair.a1()));
    const double n2 = op_norm(adjoint(pair.a2()));
    // Caps: strict inequalities from the stage-2 construction.
    const double cap = (mode == BetaMode::APositive) ? (1.0 - 1e-9) / n2 : (1.0 - 1e-9) / n1;

    // In A mode the curve is parameterized by u; in B mode by v. Write
    // (F, S) for (first, second) parameter with F the curve parameter.
    const double xf = (mode == BetaMode::APositive) ? bd.x : bd.y;
    const double ys = (mode == BetaMode::APositive) ? bd.y : bd.x;
    if (xf <= 0.0) return {};
    const double fmax = 1.0 / std::sqrt(xf);

    std::vector<AbcCoeffs> coeffs;
    coeffs.reserve(etas.size());
    for (const Vec2& eta : etas) coeffs.push_back(abc_coeffs(pair, eta, beta_hat));
    const auto fmin = [&](double u, double v) {
        double m = 1e300;
        for (const AbcCoeffs& k : coeffs) {
            m = std::min(m, k.a * u * u + k.b * v * v - k.c * u * u * v * v);
        }
        return m;
    };

    std::vector<CurveSample> out;
    const auto consider = [&](double f, double s) {
        if (!(f > 0.0) || !(s > 0.0) || !std::isfinite(s)) return;
        if (s >= cap) return;
        const double u = (mode == BetaMode::APositive) ? f : s;
        const double v = (mode == BetaMode::APositive) ? s : f;
        const double m = fmin(u, v);
        if (m > 1e-10) out.push_back({u, v, m});
    };

    constexpr int kSamples = 4097;
    for (int k = 1; k <= kSamples; ++k) {
        const double f = fmax * k / (kSamples + 1.0);
        const double num = 1.0 - f * f * xf;
        const double den = ys - f * f * bd.c;
        if (std::abs(den) <= 1e-14 * std::max(1.0, ys)) continue;
        const double s2 = num / den;
        if (s2 <= 0.0) continue;
        consider(f, std::sqrt(s2));
    }

    // Orthogonal degenerate branch: the line F = fmax, S free, lies in the
    // zero set when the Schwarz term saturates at beta_hat.
    if (bd.p <= 1e-12 * std::max(bd.x * bd.y, 1e-30) && ys > 0.0) {
        for (int j = 1; j <= 64; ++j) consider(fmax, cap * j / 65.0);
    }
    return out;
}

std::vector<Vec2> search_etas(const MatrixPair& pair) {
    return dependency_directions(pair.a1(), pair.a2());
}

BisectResult bisect_with(const GSphere& gs, const MatrixPair& pair, double lambda0,
                         BetaMode mode, const SearchConfig& config) {
    if (!(lambda0 > 0.0) || !std::isfinite(lambda0)) {
        throw SearchFailure("bisect: lambda0 must be positive");
    }
    const double n1 = op_norm(adjoint(pair.a1()));
    const double n2 = op_norm(adjoint(pair.a2()));
    const double lb = (mode == BetaMode::APositive)
                          ? 1.0 / std::sqrt(n1 * n1 + lambda0 * lambda0 * n2 * n2)
                          : 1.0 / std::sqrt(lambda0 * lambda0 * n1 * n1 + n2 * n2);

    const auto h = [&](double s) { return gs.inf(ray_point(mode, lambda0, s)); };

    const double hlb = h(lb).value;
    if (hlb <= 0.0) {
        std::ostringstream msg;
        msg << "bisect: no bracket, h(lower bound " << lb << ") = " << hlb;
        throw SearchFailure(msg.str());
    }

    // Forward sweep for a nonpositive value, then a linear scan for the
    // first crossing inside the sweep step.
    double lo = lb, hi = 0.0;
    bool found = false;
    double s = lb;
    for (int step = 0; step < 60; ++step) {
        const double s2 = s * 1.15;
        if (h(s2).value <= 0.0) {
            lo = s;
            hi = s2;
            found = true;
            break;
        }
        s = s2;
    }
    if (!found) {
        std::ostringstream msg;
        msg << "bisect: no sign change on [" << lb << ", " << s << "], h(lb) = " << hlb
            << ", h(end) = " << h(s).value;
        throw SearchFailure(msg.str());
    }
    const double scan_lo = lo, scan_span = hi - lo;
    for (int j = 1; j <= 64; ++j) {
        const double sj = scan_lo + scan_span * j / 64.0;
        if (h(sj).value <= 0.0) {
            hi = sj;
            break;
        }
        lo = sj;
    }

    for (int it = 0; it < config.max_bisect_iters && hi - lo > config.bisect_tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (h(mid).value <= 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    // Report the strictly contractive side of the bracket.
    BisectResult out;
    out.x0 = lo;
    out.g_min = h(lo);
    if (std::abs(out.g_min.value) > 10.0 * config.bisect_tol) {
        std::ostringstream msg;
        msg << "bisect: infimum " << out.g_min.value << " not within 10*bisect_tol of zero";
        throw SearchFailure(msg.str());
    }
    if (!(out.g_min.schwarz_gap > 1e-8)) {
        std::ostringstream msg;
        msg << "bisect: extremal direction has Schwarz gap " << out.g_min.schwarz_gap
            << "; the infimum sits on the dependency set";
        throw SearchFailure(msg.str());
    }
    return out;
}

CMat diag2(cplx d0, cplx d1) {
    CMat m(2, 2);
    m(0, 0) = d0;
    m(1, 1) = d1;
    return m;
}

// Exact family-shaped pair from the classification parameters.
MatrixPair search_pair_for(const CanonicalClass& cls) {
    const cplx ph = std::polar(1.0, cls.theta);
    switch (cls.tag) {
        case PairClass::ResidualI:
            return MatrixPair(diag2(1.0, ph), CMat{{1.0, cls.b}, {cls.c, 0.0}});
        case PairClass::ResidualII:
            return MatrixPair(diag2(1.0, ph), CMat{{0.0, cls.b}, {cls.c, 0.0}});
        case PairClass::ResidualIII:
            return MatrixPair(diag2(ph, 1.0), CMat{{1.0, cls.b}, {cls.c, 0.0}});
        case PairClass::ResidualIV:
            return MatrixPair(diag2(1.0, cls.d), CMat{{1.0, cls.b}, {cls.c, 0.0}});
        case PairClass::ResidualV:
            return MatrixPair(diag2(1.0, cls.d), CMat{{0.0, cls.b}, {cls.c, 0.0}});
        case PairClass::ResidualVI:
            return MatrixPair(diag2(cls.d, 1.0), CMat{{1.0, cls.b}, {cls.c, 0.0}});
        case PairClass::OpSpaceDistinguishable:
            if (cls.reduced) return *cls.reduced;
            return MatrixPair(diag2(1.0, cls.d), CMat{{1.0, cls.b}, {cls.c, 0.0}});
        default:
            throw NotApplicable("search: no witness exists for this class");
    }
}

}  // namespace

AbcCoeffs abc_coeffs(const MatrixPair& pair, Vec2 eta, Vec2 beta) {
    if (pair.dim() != 2) throw ShapeError("abc_coeffs: 2x2 pair required");
    const BetaData db = beta_data(pair, beta);
    const BetaData de = beta_data(pair, eta);
    return {db.x - de.x, db.y - de.y, db.c};
}

double f_coeff(const MatrixPair& pair, Vec2 eta, UVParams uv, Vec2 beta) {
    const AbcCoeffs k = abc_coeffs(pair, eta, beta);
    return k.a * uv.u * uv.u + k.b * uv.v * uv.v - k.c * uv.u * uv.u * uv.v * uv.v;
}

std::pair<Vec2, BetaMode> choose_beta_hat(const CanonicalClass& cls, const MatrixPair& pair) {
    if (pair.dim() != 2) throw ShapeError("choose_beta_hat: 2x2 pair required");
    const bool unimodular_family = cls.tag == PairClass::ResidualI ||
                                   cls.tag == PairClass::ResidualII ||
                                   cls.tag == PairClass::ResidualIII;

    if (unimodular_family) {
        // Reduce by unitary moves only: A1 -> I (A1 must be essentially
        // unitary here), then A2 -> upper triangular by conjugation. The
        // chosen direction is the first Schur vector pulled back.
        const CMat gram = adjoint(pair.a1()) * pair.a1();
        CMat defect = gram;
        defect(0, 0) -= 1.0;
        defect(1, 1) -= 1.0;
        if (hs_norm(defect) > 1e-6) {
            throw SearchFailure("choose_beta_hat: family (i)-(iii) requires a unimodular A1");
        }
        const CMat u0 = adjoint(pair.a1());
        const Schur2 sch = schur2x2(u0 * pair.a2());
        const double scale = std::max(1.0, sch.t.max_abs());
        if (std::abs(sch.t(0, 1)) <= 1e-8 * scale) {
            throw SearchFailure(
                "choose_beta_hat: A2 is normal after reduction; the pair is a "
                "boundary case of the diagonalizable class");
        }
        const Vec2 q1{sch.q(0, 0), sch.q(1, 0)};
        const Vec2 beta_hat = normalized(matvec2(adjoint(u0), q1));

        double worst = 1e300;
        for (const Vec2& eta : search_etas(pair)) {
            worst = std::min(worst, abc_coeffs(pair, eta, beta_hat).b);
        }
        if (!(worst > 1e-8)) {
            throw SearchFailure("choose_beta_hat: B coefficient margin not positive");
        }
        return {beta_hat, BetaMode::BPositive};
    }

    const std::vector<Vec2> etas = search_etas(pair);
    if (cls.tag == PairClass::ResidualIV || cls.tag == PairClass::ResidualV ||
        cls.tag == PairClass::ResidualVI) {
        for (const Vec2& eta : etas) {
            if (std::min(std::abs(eta.x), std::abs(eta.y)) <= 1e-8) {
                throw DegenerateInput(
                    "choose_beta_hat: axis-aligned dependency direction; the pair "
                    "degenerates to the diagonalizable class");
            }
        }
    }

    // Grid over moduli and relative phase, maximizing the worst coefficient.
    const auto best_for = [&](bool use_a) {
        double best = -1e300;
        Vec2 arg{1.0, 0.0};
        constexpr int kS = 1025, kP = 17;
        for (int i = 0; i < kS; ++i) {
            const double s = static_cast<double>(i) / (kS - 1);
            const double c = std::sqrt(std::max(0.0, 1.0 - s * s));
            for (int j = 0; j < kP; ++j) {
                const double phi = kTwoPi * j / kP;
                const Vec2 beta{c, std::polar(s, phi)};
                double worst = 1e300;
                for (const Vec2& eta : etas) {
                    const AbcCoeffs k = abc_coeffs(pair, eta, beta);
                    worst = std::min(worst, use_a ? k.a : k.b);
                }
                if (worst > best) {
                    best = worst;
                    arg = beta;
                }
            }
        }
        return std::make_pair(best, arg);
    };

    auto [amargin, abeta] = best_for(true);
    if (amargin > 1e-8) return {abeta, BetaMode::APositive};
    auto [bmargin, bbeta] = best_for(false);
    if (bmargin > 1e-8) return {bbeta, BetaMode::BPositive};
    throw SearchFailure(
        "choose_beta_hat: no direction on the grid achieves a positive "
        "coefficient margin (boundary or degenerate instance)");
}

RegionParams region_params(const MatrixPair& pair, Vec2 beta_hat, BetaMode mode,
                           const SearchConfig& config) {
    validate_config(config);
    const auto samples = scan_zero_curve(pair, beta_hat, mode, search_etas(pair));
    if (samples.empty()) {
        throw SearchFailure(
            "region_params: no admissible point on the zero curve satisfies "
            "the caps and the strict f inequalities");
    }
    const auto best = std::max_element(
        samples.begin(), samples.end(),
        [](const CurveSample& a, const CurveSample& b) { return a.margin < b.margin; });
    RegionParams out;
    out.u0 = best->u;
    out.v0 = best->v;
    out.lambda0 = (mode == BetaMode::APositive) ? best->v / best->u : best->u / best->v;
    return out;
}

BisectResult bisect_x0(const MatrixPair& pair, double lambda0, BetaMode mode,
                       const SearchConfig& config) {
    validate_config(config);
    const GSphere gs(pair, config.sphere_grid);
    return bisect_with(gs, pair, lambda0, mode, config);
}

namespace {

Certificate search_on(const MatrixPair& target, const CanonicalClass& cls,
                      const SearchConfig& config);

}  // namespace

Certificate search(const MatrixPair& pair, const SearchConfig& config) {
    validate_config(config);
    CanonicalClass cls = classify(pair);
    if (cls.tag == PairClass::SimultaneouslyDiagonalizable) {
        throw NotApplicable(
            "search: the pair is simultaneously diagonalizable; every "
            "contractive map of this form is completely contractive");
    }

    // The diagonal-row ansatz is not transpose-symmetric while the norm is;
    // when the canonical coordinates defeat it (for instance when every
    // direction is a dependency direction), the transposed embedding of the
    // same normed space often still certifies.
    const MatrixPair target = search_pair_for(cls);
    try {
        return search_on(target, cls, config);
    } catch (const NotApplicable&) {
        throw;
    } catch (const std::exception& first) {
        try {
            return search_on(MatrixPair(transpose(target.a1()), transpose(target.a2())), cls,
                             config);
        } catch (const std::exception& second) {
            throw SearchFailure(std::string("search: ") + first.what() +
                                "; transposed retry: " + second.what());
        }
    }
}

namespace {

Certificate search_on(const MatrixPair& target, const CanonicalClass& cls,
                      const SearchConfig& config) {
    const auto [beta_hat, mode] = choose_beta_hat(cls, target);
    const auto samples = scan_zero_curve(target, beta_hat, mode, search_etas(target));
    if (samples.empty()) {
        throw SearchFailure("search/region: no admissible point on the zero curve");
    }

    const GSphere gs(target, config.sphere_grid);
    std::string last_error = "search: no ray candidate produced a certificate";
    bool have_best = false;
    UVParams best_uv;
    GEval best_g;
    double best_violation = -1.0;

    constexpr int kRays = 17;
    const size_t n = samples.size();
    size_t prev_idx = static_cast<size_t>(-1);
    for (int r = 0; r < kRays; ++r) {
        const size_t idx = (n == 1) ? 0 : (r * (n - 1)) / (kRays - 1);
        if (idx == prev_idx) continue;
        prev_idx = idx;
        const CurveSample& cand = samples[idx];
        const double lambda0 =
            (mode == BetaMode::APositive) ? cand.v / cand.u : cand.u / cand.v;
        try {
            const BisectResult br = bisect_with(gs, target, lambda0, mode, config);
            const UVParams uv = ray_point(mode, lambda0, br.x0);

            if (uv_sup_oracle(target, uv, 101, false) > 1.0 + 1e-6) {
                throw SearchFailure("search/verify: sphere oracle exceeds 1 + 1e-6");
            }
            if (!is_contractive_uv(target, uv, 10.0 * config.bisect_tol)) {
                throw SearchFailure("search/verify: contractivity conditions failed");
            }
            const double cc = cc_bound(target, uv_vpair(uv));
            if (cc - 1.0 < config.cert_margin) {
                std::ostringstream msg;
                msg << "search/verify: violation " << cc - 1.0 << " below cert_margin";
                throw SearchFailure(msg.str());
            }
            if (cc - 1.0 > best_violation) {
                best_violation = cc - 1.0;
                best_uv = uv;
                best_g = br.g_min;
                have_best = true;
            }
        } catch (const SearchFailure& e) {
            last_error = e.what();
        }
    }
    if (!have_best) throw SearchFailure(last_error);

    Certificate cert{target, best_uv, best_g.beta, 0.0, best_violation,
                     best_g.value, best_g.schwarz_gap, config, cls};
    cert.lv_value = lv_norm(target, uv_vpair(best_uv), kCertLvOuter, kCertLvInner);
    if (cert.lv_value > 1.0 + config.bisect_tol) {
        std::ostringstream msg;
        msg << "search/verify: induced-map norm " << cert.lv_value << " exceeds 1 + bisect_tol";
        throw SearchFailure(msg.str());
    }
    return cert;
}

}  // namespace

Certificate parabola_witness() {
    const MatrixPair pair = parabola_pair();
    const SearchConfig config;
    const UVParams uv{1.0 / std::sqrt(2.0), 1.0};

    Certificate cert{pair, uv, Vec2{1.0, 0.0}, 0.0, 0.0, 0.0, 0.0, config, classify(pair)};
    cert.lv_value = lv_norm(pair, uv_vpair(uv));
    if (std::abs(cert.lv_value - 1.0) > 1e-6) {
        throw SearchFailure("parabola_witness: induced-map norm is not 1 within 1e-6");
    }
    const double cc = cc_bound(pair, uv_vpair(uv));
    if (std::abs(cc - std::sqrt(1.5)) > 1e-9) {
        throw SearchFailure("parabola_witness: amplified norm is not sqrt(3/2) within 1e-9");
    }
    cert.violation = cc - 1.0;
    const GEval g = inf_g(pair, uv, {config.sphere_grid, config.sphere_grid});
    cert.beta0 = g.beta;
    cert.inf_g_value = g.value;
    cert.schwarz_gap_at_beta0 = g.schwarz_gap;
    if (std::abs(cert.inf_g_value) > 10.0 * config.bisect_tol ||
        !(cert.schwarz_gap_at_beta0 > 1e-8)) {
        throw SearchFailure("parabola_witness: extremal data failed verification");
    }
    return cert;
}

}  // namespace pairnorm
