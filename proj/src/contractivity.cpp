#include "pairnorm/contractivity.hpp"

#include <algorithm>
#include <cmath>

#include "pairnorm/rng.hpp"

namespace pairnorm {

VPair::VPair(CMat v1, CMat v2) : v1_(std::move(v1)), v2_(std::move(v2)) {
    if (!v1_.same_shape(v2_)) throw ShapeError("VPair: V1, V2 shapes differ");
    if (!v1_.is_finite() || !v2_.is_finite()) throw ShapeError("VPair: non-finite entries");
}

VPair uv_vpair(UVParams uv) {
    if (uv.u < 0.0 || uv.v < 0.0 || !std::isfinite(uv.u) || !std::isfinite(uv.v)) {
        throw std::invalid_argument("uv_vpair: u, v must be finite and nonnegative");
    }
    CMat v1(1, 2), v2(1, 2);
    v1(0, 0) = uv.u;
    v2(0, 1) = uv.v;
    return VPair(v1, v2);
}

double lv_norm(const MatrixPair& pair, const VPair& v, const GridSpec& outer,
               const GridSpec& inner) {
    return sup_over_dual_ball(pair, v.v1(), v.v2(), outer, inner);
}

double cc_bound(const MatrixPair& pair, const VPair& v) {
    return op_norm(kron(pair.a1(), v.v1()) + kron(pair.a2(), v.v2()));
}

double rowvec_cc_bound(const MatrixPair& pair, const VPair& v) {
    if (v.p() != 1 || v.q() != 2) {
        throw ShapeError("rowvec_cc_bound: V1, V2 must be 1x2 row vectors");
    }
    const int n = pair.dim();
    CMat concat(n, 2 * n);
    for (int j = 0; j < 2; ++j) {
        const CMat bj = v.v1()(0, j) * pair.a1() + v.v2()(0, j) * pair.a2();
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) concat(r, j * n + c) = bj(r, c);
        }
    }
    return op_norm(concat);
}

GSphere::GSphere(const MatrixPair& pair, int n) {
    if (pair.dim() != 2) throw ShapeError("GSphere: 2x2 pair required");
    a1h_ = adjoint(pair.a1());
    a2h_ = adjoint(pair.a2());
    a12_ = pair.a1() * a2h_;
    nt_ = std::max(2, n);
    nphi_ = std::max(2, n);
    dt_ = kHalfPi / (nt_ - 1);
    dphi_ = kTwoPi / nphi_;
    const size_t total = static_cast<size_t>(nt_) * nphi_;
    x_.reserve(total);
    y_.reserve(total);
    c_.reserve(total);
    for (int i = 0; i < nt_; ++i) {
        for (int j = 0; j < nphi_; ++j) {
            const Vec2 b = sphere_point(i * dt_, j * dphi_);
            const Vec2 b1 = matvec2(a1h_, b);
            const Vec2 b2 = matvec2(a2h_, b);
            const double x = std::norm(b1.x) + std::norm(b1.y);
            const double y = std::norm(b2.x) + std::norm(b2.y);
            const double p = std::norm(dot(matvec2(a12_, b), b));
            x_.push_back(x);
            y_.push_back(y);
            c_.push_back(x * y - p);
        }
    }
}

GEval GSphere::eval(UVParams uv, Vec2 beta) const {
    const Vec2 b = normalized(beta);
    const Vec2 b1 = matvec2(a1h_, b);
    const Vec2 b2 = matvec2(a2h_, b);
    const double x = std::norm(b1.x) + std::norm(b1.y);
    const double y = std::norm(b2.x) + std::norm(b2.y);
    const double p = std::norm(dot(matvec2(a12_, b), b));
    const double gap = x * y - p;
    const double u2 = uv.u * uv.u, v2 = uv.v * uv.v;
    return {1.0 - u2 * x - v2 * y + u2 * v2 * gap, b, gap};
}

GEval GSphere::inf(UVParams uv) const {
    const double u2 = uv.u * uv.u, v2 = uv.v * uv.v;

    detail::TopCells top(dt_, dphi_);
    size_t idx = 0;
    for (int i = 0; i < nt_; ++i) {
        for (int j = 0; j < nphi_; ++j, ++idx) {
            const double g = 1.0 - u2 * x_[idx] - v2 * y_[idx] + u2 * v2 * c_[idx];
            top.offer(-g, i * dt_, j * dphi_);
        }
    }

    const auto neg_g = [&](double t, double phi) {
        return -eval(uv, sphere_point(std::clamp(t, 0.0, kHalfPi), phi)).value;
    };

    GEval best;
    best.value = 1e300;
    for (const SphereOptResult& seed : top.cells) {
        if (seed.value <= -1e299) continue;
        const SphereOptResult r = sphere_refine(neg_g, seed.t, seed.phi, dt_, dphi_, nphi_);
        const GEval cand = eval(uv, sphere_point(std::clamp(r.t, 0.0, kHalfPi), r.phi));
        if (cand.value < best.value) best = cand;
        // the grid corner itself is also a certified sample
        const GEval corner = eval(uv, sphere_point(seed.t, seed.phi));
        if (corner.value < best.value) best = corner;
    }
    return best;
}

GEval g_eval(const MatrixPair& pair, UVParams uv, Vec2 beta) {
    if (uv.u < 0.0 || uv.v < 0.0) throw std::invalid_argument("g_eval: u, v must be nonnegative");
    if (pair.dim() != 2) throw ShapeError("g_eval: 2x2 pair required");
    const CMat a1h = adjoint(pair.a1());
    const CMat a2h = adjoint(pair.a2());
    const Vec2 b = normalized(beta);
    const Vec2 b1 = matvec2(a1h, b);
    const Vec2 b2 = matvec2(a2h, b);
    const double x = std::norm(b1.x) + std::norm(b1.y);
    const double y = std::norm(b2.x) + std::norm(b2.y);
    const double p = std::norm(dot(matvec2(pair.a1() * a2h, b), b));
    const double gap = x * y - p;
    const double u2 = uv.u * uv.u, v2 = uv.v * uv.v;
    return {1.0 - u2 * x - v2 * y + u2 * v2 * gap, b, gap};
}

GEval inf_g(const MatrixPair& pair, UVParams uv, const GridSpec& grid) {
    if (uv.u < 0.0 || uv.v < 0.0) throw std::invalid_argument("inf_g: u, v must be nonnegative");
    return GSphere(pair, std::max(grid.nt, grid.nphi)).inf(uv);
}

bool is_contractive_uv(const MatrixPair& pair, UVParams uv, double tol) {
    if (uv.u < 0.0 || uv.v < 0.0) {
        throw std::invalid_argument("is_contractive_uv: u, v must be nonnegative");
    }
    const double n1 = op_norm(adjoint(pair.a1()));
    const double n2 = op_norm(adjoint(pair.a2()));
    const bool cond_cap = (uv.u <= 1.0 / n1 + tol) || (uv.v <= 1.0 / n2 + tol);
    if (!cond_cap) return false;
    return inf_g(pair, uv).value >= -tol;
}

double uv_sup_oracle(const MatrixPair& pair, UVParams uv, int n, bool refine) {
    const auto f = [&](double t, double phi) {
        const Vec2 z = sphere_point(t, phi);
        return a_norm(pair, {uv.u * z.x, uv.v * z.y});
    };
    if (refine) return sphere_maximize(f, {n, n}).value;

    const int nt = std::max(2, n), nphi = std::max(2, n);
    const double dt = kHalfPi / (nt - 1), dphi = kTwoPi / nphi;
    double best = 0.0;
    for (int i = 0; i < nt; ++i) {
        for (int j = 0; j < nphi; ++j) best = std::max(best, f(i * dt, j * dphi));
    }
    return best;
}

namespace {

cplx col_dot(const CMat& a, const CMat& b) {
    cplx s(0.0);
    for (int i = 0; i < a.rows(); ++i) s += a(i, 0) * std::conj(b(i, 0));
    return s;
}

CMat random_unit_column(Rng& rng, int n) {
    CMat c(n, 1);
    double nrm = 0.0;
    while (nrm < 1e-6) {
        nrm = 0.0;
        for (int i = 0; i < n; ++i) {
            c(i, 0) = rng.cnormal();
            nrm += std::norm(c(i, 0));
        }
        nrm = std::sqrt(nrm);
    }
    for (int i = 0; i < n; ++i) c(i, 0) /= nrm;
    return c;
}

}  // namespace

double testfn_sup(const MatrixPair& pair, const VPair& v, int restarts) {
    double best = 0.0;
    for (int seed = 0; seed < restarts; ++seed) {
        Rng rng(static_cast<uint64_t>(seed));
        CMat u = random_unit_column(rng, v.q());
        CMat w = random_unit_column(rng, v.p());
        double value = 0.0;
        for (int it = 0; it < 200; ++it) {
            const cplx r1 = col_dot(v.v1() * u, w);
            const cplx r2 = col_dot(v.v2() * u, w);
            const SingularTriple sa = top_singular_triple(r1 * pair.a1() + r2 * pair.a2());
            // alpha = sa.v (right), beta = sa.u (left)
            const cplx s1 = col_dot(pair.a1() * sa.v, sa.u);
            const cplx s2 = col_dot(pair.a2() * sa.v, sa.u);
            const SingularTriple sv = top_singular_triple(s1 * v.v1() + s2 * v.v2());
            u = sv.v;
            w = sv.u;
            const double next = sv.sigma;
            if (next - value <= 1e-14 * std::max(1.0, next)) {
                value = next;
                break;
            }
            value = next;
        }
        best = std::max(best, value);
    }
    return best;
}

}  // namespace pairnorm
