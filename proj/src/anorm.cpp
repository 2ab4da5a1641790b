#include "pairnorm/anorm.hpp"

#include <cmath>

#include "pairnorm/rng.hpp"

namespace pairnorm {

MatrixPair::MatrixPair(CMat a1, CMat a2) : a1_(std::move(a1)), a2_(std::move(a2)) {
    if (a1_.rows() != a1_.cols()) throw InvalidPair("MatrixPair: A1 must be square");
    if (!a1_.same_shape(a2_)) throw InvalidPair("MatrixPair: A1, A2 shapes differ");
    if (!a1_.is_finite() || !a2_.is_finite()) throw InvalidPair("MatrixPair: non-finite entries");

    // Independence: smallest singular value of the 2-column matrix
    // [vec(A1) vec(A2)], computed from its 2x2 Gram matrix.
    cplx g01(0.0);
    double g00 = 0.0, g11 = 0.0;
    for (size_t i = 0; i < a1_.data().size(); ++i) {
        g00 += std::norm(a1_.data()[i]);
        g11 += std::norm(a2_.data()[i]);
        g01 += a1_.data()[i] * std::conj(a2_.data()[i]);
    }
    const double tr = g00 + g11;
    const double diff = g00 - g11;
    const double disc = std::sqrt(diff * diff + 4.0 * std::norm(g01));
    const double lmin = 0.5 * (tr - disc);
    if (std::sqrt(std::max(0.0, lmin)) <= 1e-10) {
        throw InvalidPair("MatrixPair: A1, A2 linearly dependent within 1e-10");
    }
}

double a_norm(const MatrixPair& pair, Vec2 z) {
    if (!z.is_finite()) throw std::invalid_argument("a_norm: non-finite point");
    const CMat& a1 = pair.a1();
    const CMat& a2 = pair.a2();
    if (pair.dim() == 2) {
        return op_norm2x2(z.x * a1(0, 0) + z.y * a2(0, 0), z.x * a1(0, 1) + z.y * a2(0, 1),
                          z.x * a1(1, 0) + z.y * a2(1, 0), z.x * a1(1, 1) + z.y * a2(1, 1));
    }
    return op_norm(z.x * a1 + z.y * a2);
}

bool in_unit_ball(const MatrixPair& pair, Vec2 z, double tol) {
    return a_norm(pair, z) < 1.0 + tol;
}

double dual_norm_numeric(const MatrixPair& pair, DualVector w, const GridSpec& grid) {
    if (std::abs(w.w1) == 0.0 && std::abs(w.w2) == 0.0) return 0.0;
    const auto objective = [&](double t, double phi) {
        const Vec2 d = sphere_point(t, phi);
        return std::abs(w.w1 * d.x + w.w2 * d.y) / a_norm(pair, d);
    };
    return sphere_maximize(objective, grid).value;
}

double dual_norm_parabola(DualVector w) {
    const double m1 = std::abs(w.w1);
    const double m2 = std::abs(w.w2);
    if (m2 >= 0.5 * m1 && m2 > 0.0) return (m1 * m1 + 4.0 * m2 * m2) / (4.0 * m2);
    return m1;
}

namespace {

// Tabulated a_norm over the inner sphere grid; the coarse dual evaluation
// is a scan of this table (squared objective, structure-of-arrays layout
// for the sake of the quadratic outer-times-inner scan cost), the full one
// adds golden refinement with exact a_norm evaluations.
struct DualOracle {
    const MatrixPair& pair;
    GridSpec grid;
    std::vector<double> d1re, d1im, d2re, d2im, aninv2;
    double dt, dphi;

    DualOracle(const MatrixPair& p, const GridSpec& g) : pair(p), grid(g) {
        grid.nt = std::max(2, grid.nt);
        grid.nphi = std::max(2, grid.nphi);
        dt = kHalfPi / (grid.nt - 1);
        dphi = kTwoPi / grid.nphi;
        const size_t n = static_cast<size_t>(grid.nt) * grid.nphi;
        d1re.reserve(n);
        d1im.reserve(n);
        d2re.reserve(n);
        d2im.reserve(n);
        aninv2.reserve(n);
        for (int i = 0; i < grid.nt; ++i) {
            for (int j = 0; j < grid.nphi; ++j) {
                const Vec2 d = sphere_point(i * dt, j * dphi);
                d1re.push_back(d.x.real());
                d1im.push_back(d.x.imag());
                d2re.push_back(d.y.real());
                d2im.push_back(d.y.imag());
                const double an = a_norm(pair, d);
                aninv2.push_back(1.0 / (an * an));
            }
        }
    }

    struct Eval {
        double value = 0.0;
        double t = 0.0;
        double phi = 0.0;
    };

    double exact(cplx e1, cplx e2, double t, double phi) const {
        const Vec2 d = sphere_point(t, phi);
        return std::abs(e1 * d.x + e2 * d.y) / a_norm(pair, d);
    }

    Eval refine_from(cplx e1, cplx e2, double t0, double phi0) const {
        const SphereOptResult r = sphere_refine(
            [&](double tt, double pp) { return exact(e1, e2, tt, pp); }, t0, phi0, dt, dphi,
            grid.nphi);
        return {r.value, r.t, r.phi};
    }

    double coarse(cplx e1, cplx e2, size_t* argmax = nullptr) const {
        const double ar = e1.real(), ai = e1.imag(), br = e2.real(), bi_ = e2.imag();
        double best2 = -1.0;
        size_t bi = 0;
        const size_t n = aninv2.size();
        for (size_t i = 0; i < n; ++i) {
            const double re = ar * d1re[i] - ai * d1im[i] + br * d2re[i] - bi_ * d2im[i];
            const double im = ar * d1im[i] + ai * d1re[i] + br * d2im[i] + bi_ * d2re[i];
            const double v2 = (re * re + im * im) * aninv2[i];
            if (v2 > best2) {
                best2 = v2;
                bi = i;
            }
        }
        if (argmax) *argmax = bi;
        return std::sqrt(std::max(0.0, best2));
    }

    Eval full(cplx e1, cplx e2) const {
        size_t bi = 0;
        const double cval = coarse(e1, e2, &bi);
        const double t = static_cast<double>(bi / grid.nphi) * dt;
        const double phi = static_cast<double>(bi % grid.nphi) * dphi;
        Eval r = refine_from(e1, e2, t, phi);
        if (cval > r.value) r = {cval, t, phi};
        return r;
    }
};

}  // namespace

double sup_over_dual_ball(const MatrixPair& pair, const CMat& m1, const CMat& m2,
                          const GridSpec& outer, const GridSpec& inner) {
    if (!m1.same_shape(m2)) throw ShapeError("sup_over_dual_ball: M1, M2 shapes differ");
    const DualOracle dual(pair, inner);

    const auto numerator = [&](cplx e1, cplx e2) {
        if (m1.rows() == 1 && m1.cols() == 1) return std::abs(e1 * m1(0, 0) + e2 * m2(0, 0));
        if (m1.rows() == 2 && m1.cols() == 2) {
            return op_norm2x2(e1 * m1(0, 0) + e2 * m2(0, 0), e1 * m1(0, 1) + e2 * m2(0, 1),
                              e1 * m1(1, 0) + e2 * m2(1, 0), e1 * m1(1, 1) + e2 * m2(1, 1));
        }
        return op_norm(e1 * m1 + e2 * m2);
    };

    const int nt = std::max(2, outer.nt);
    const int nphi = std::max(2, outer.nphi);
    const double dt = kHalfPi / (nt - 1);
    const double dphi = kTwoPi / nphi;

    // Coarse scan with the table-only dual (cheap, seed selection only).
    detail::TopCells top(dt, dphi);
    for (int i = 0; i < nt; ++i) {
        for (int j = 0; j < nphi; ++j) {
            const Vec2 e = sphere_point(i * dt, j * dphi);
            const double den = dual.coarse(e.x, e.y);
            if (den <= 0.0) continue;
            top.offer(numerator(e.x, e.y) / den, i * dt, j * dphi);
        }
    }

    // Refine the three best separated seeds against the fully scanned dual.
    // Every sample is a genuine objective value; the pattern floor is set
    // for value accuracy (the objective is locally quadratic at the top).
    const auto objective = [&](double t, double phi) {
        const Vec2 e = sphere_point(t, phi);
        const double den = dual.full(e.x, e.y).value;
        return (den > 0.0) ? numerator(e.x, e.y) / den : 0.0;
    };
    double best = 0.0;
    int refined = 0;
    for (const auto& seed : top.cells) {
        if (seed.value <= -1e299 || refined >= 3) continue;
        ++refined;
        const SphereOptResult r =
            sphere_refine(objective, seed.t, seed.phi, dt, dphi, nphi, 160, 3e-6);
        best = std::max(best, r.value);
    }
    return best;
}

Vec2 rescale_to_boundary(const MatrixPair& pair, Vec2 z) {
    const double n = a_norm(pair, z);
    if (n == 0.0) throw DegenerateInput("rescale_to_boundary: zero point");
    return {z.x / n, z.y / n};
}

std::vector<Vec2> boundary_sample(const MatrixPair& pair, int count, uint64_t seed) {
    if (count < 1) throw std::invalid_argument("boundary_sample: count must be >= 1");
    Rng rng(seed);
    std::vector<Vec2> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        out.push_back(rescale_to_boundary(pair, rng.unit_vec2()));
    }
    return out;
}

MatrixPair parabola_pair() {
    return MatrixPair(CMat::identity(2), CMat{{0.0, 1.0}, {0.0, 0.0}});
}

MatrixPair bidisc_pair() {
    return MatrixPair(CMat{{1.0, 0.0}, {0.0, 0.0}}, CMat{{0.0, 0.0}, {0.0, 1.0}});
}

MatrixPair euclidean_pair() {
    return MatrixPair(CMat{{1.0, 0.0}, {0.0, 0.0}}, CMat{{0.0, 1.0}, {0.0, 0.0}});
}

}  // namespace pairnorm
