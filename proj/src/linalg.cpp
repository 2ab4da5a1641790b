#include "pairnorm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pairnorm {

namespace {

// Orthonormal completion of a unit vector in C^2.
Vec2 complement(Vec2 v) { return {-std::conj(v.y), std::conj(v.x)}; }

CMat column(Vec2 v) {
    CMat c(2, 1);
    c(0, 0) = v.x;
    c(1, 0) = v.y;
    return c;
}

}  // namespace

double op_norm2x2(cplx m00, cplx m01, cplx m10, cplx m11) {
    // Eigenvalues of M*M by the quadratic formula.
    const double h00 = std::norm(m00) + std::norm(m10);
    const double h11 = std::norm(m01) + std::norm(m11);
    const cplx h01 = std::conj(m00) * m01 + std::conj(m10) * m11;
    const double tr = h00 + h11;
    const double diff = h00 - h11;
    const double disc = std::sqrt(diff * diff + 4.0 * std::norm(h01));
    return std::sqrt(std::max(0.0, 0.5 * (tr + disc)));
}

double op_norm(const CMat& m) {
    if (m.rows() < 1 || m.cols() < 1) throw DimensionError("op_norm: empty matrix");
    if (!m.is_finite()) throw std::invalid_argument("op_norm: non-finite entries");
    if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
    if (m.rows() == 1 || m.cols() == 1) return hs_norm(m);
    if (m.rows() == 2 && m.cols() == 2) {
        return op_norm2x2(m(0, 0), m(0, 1), m(1, 0), m(1, 1));
    }
    const CMat h = (m.rows() >= m.cols()) ? adjoint(m) * m : m * adjoint(m);
    const std::vector<double> ev = hermitian_eigenvalues(h);
    return std::sqrt(std::max(0.0, ev.back()));
}

EigenSys hermitian_eigensystem(CMat h) {
    const int n = h.rows();
    if (n != h.cols()) throw ShapeError("hermitian_eigensystem: square matrix required");
    CMat vecs = CMat::identity(n);
    const double fro = hs_norm(h);
    if (fro == 0.0) return {std::vector<double>(n, 0.0), vecs};

    const double stop = 1e-14 * fro;  // off-diagonal Frobenius mass target
    for (int sweep = 0; sweep < 200; ++sweep) {
        double off2 = 0.0;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) off2 += 2.0 * std::norm(h(p, q));
        }
        if (std::sqrt(off2) <= stop) break;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx hpq = h(p, q);
                const double habs = std::abs(hpq);
                if (habs <= 1e-18 * fro) continue;
                const cplx phase = hpq / habs;
                const double app = h(p, p).real();
                const double aqq = h(q, q).real();
                const double tau = (app - aqq) / (2.0 * habs);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx gpq = -s * phase;          // G(p,q)
                const cplx gqp = s * std::conj(phase);  // G(q,p)

                // H <- G* H G, rotating columns then rows of the (p,q) plane.
                for (int i = 0; i < n; ++i) {
                    const cplx hip = h(i, p), hiq = h(i, q);
                    h(i, p) = c * hip + gqp * hiq;
                    h(i, q) = gpq * hip + c * hiq;
                }
                for (int j = 0; j < n; ++j) {
                    const cplx hpj = h(p, j), hqj = h(q, j);
                    h(p, j) = c * hpj + std::conj(gqp) * hqj;
                    h(q, j) = std::conj(gpq) * hpj + c * hqj;
                }
                h(p, q) = 0.0;
                h(q, p) = 0.0;
                h(p, p) = h(p, p).real();
                h(q, q) = h(q, q).real();

                for (int i = 0; i < n; ++i) {
                    const cplx vip = vecs(i, p), viq = vecs(i, q);
                    vecs(i, p) = c * vip + gqp * viq;
                    vecs(i, q) = gpq * vip + c * viq;
                }
            }
        }
    }

    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return h(a, a).real() < h(b, b).real(); });

    EigenSys out{std::vector<double>(n), CMat(n, n)};
    for (int j = 0; j < n; ++j) {
        out.values[j] = h(idx[j], idx[j]).real();
        for (int i = 0; i < n; ++i) out.vectors(i, j) = vecs(i, idx[j]);
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const CMat& h) {
    return hermitian_eigensystem(h).values;
}

SingularTriple top_singular_triple(const CMat& m) {
    const EigenSys es = hermitian_eigensystem(adjoint(m) * m);
    const int q = m.cols();
    CMat v(q, 1);
    for (int i = 0; i < q; ++i) v(i, 0) = es.vectors(i, q - 1);
    const double sigma = std::sqrt(std::max(0.0, es.values.back()));

    CMat u(m.rows(), 1);
    const CMat mv = m * v;
    const double nmv = hs_norm(mv);
    if (nmv > 1e-150) {
        for (int i = 0; i < m.rows(); ++i) u(i, 0) = mv(i, 0) / nmv;
    } else {
        u(0, 0) = 1.0;
    }
    return {sigma, u, v};
}

Svd2 svd2x2(const CMat& m) {
    if (m.rows() != 2 || m.cols() != 2) throw ShapeError("svd2x2: 2x2 required");
    const EigenSys es = hermitian_eigensystem(adjoint(m) * m);

    // Right singular vectors, descending order, deterministic phase.
    Vec2 r1 = phase_normalized({es.vectors(0, 1), es.vectors(1, 1)});
    Vec2 r2 = phase_normalized({es.vectors(0, 0), es.vectors(1, 0)});
    const double scale = std::max(1.0, m.max_abs());

    Vec2 mr1 = matvec2(m, r1);
    Vec2 mr2 = matvec2(m, r2);
    const double s1 = mr1.norm();
    const double s2 = mr2.norm();

    Vec2 u1 = (s1 > 1e-15 * scale) ? Vec2{mr1.x / s1, mr1.y / s1} : Vec2{1.0, 0.0};
    Vec2 u2 = (s2 > 1e-15 * scale) ? Vec2{mr2.x / s2, mr2.y / s2} : complement(u1);

    Svd2 out;
    out.s1 = s1;
    out.s2 = s2;
    CMat uc(2, 2);
    uc(0, 0) = u1.x; uc(1, 0) = u1.y;
    uc(0, 1) = u2.x; uc(1, 1) = u2.y;
    out.u = adjoint(uc);
    out.w = CMat(2, 2);
    out.w(0, 0) = r1.x; out.w(1, 0) = r1.y;
    out.w(0, 1) = r2.x; out.w(1, 1) = r2.y;
    return out;
}

Schur2 schur2x2(const CMat& a) {
    if (a.rows() != 2 || a.cols() != 2) throw ShapeError("schur2x2: 2x2 required");
    const cplx tr = a(0, 0) + a(1, 1);
    const cplx det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    const cplx disc = std::sqrt(tr * tr - 4.0 * det);
    cplx l1 = 0.5 * (tr + disc);
    cplx l2 = 0.5 * (tr - disc);
    const auto before = [](cplx p, cplx q) {
        if (std::abs(std::abs(p) - std::abs(q)) > 1e-14 * (std::abs(p) + std::abs(q) + 1.0)) {
            return std::abs(p) > std::abs(q);
        }
        if (p.real() != q.real()) return p.real() > q.real();
        return p.imag() > q.imag();
    };
    if (!before(l1, l2)) std::swap(l1, l2);

    const double scale = std::max(1.0, a.max_abs());
    Vec2 c1{a(0, 1), l1 - a(0, 0)};
    Vec2 c2{l1 - a(1, 1), a(1, 0)};
    Vec2 v = (c1.norm() >= c2.norm()) ? c1 : c2;
    if (v.norm() <= 1e-14 * scale) v = {1.0, 0.0};  // a is (near) scalar
    v = phase_normalized(normalized(v));

    CMat q(2, 2);
    const Vec2 vp = complement(v);
    q(0, 0) = v.x; q(1, 0) = v.y;
    q(0, 1) = vp.x; q(1, 1) = vp.y;
    CMat t = adjoint(q) * a * q;
    t(1, 0) = 0.0;
    return {q, t};
}

std::vector<Vec2> dependency_directions(const CMat& a1, const CMat& a2, double tol) {
    if (a1.rows() != 2 || a1.cols() != 2 || a2.rows() != 2 || a2.cols() != 2) {
        throw ShapeError("dependency_directions: 2x2 pair required");
    }
    const CMat p = adjoint(a1);
    const CMat q = adjoint(a2);

    // det[A1* b | A2* b] = q20 b1^2 + q11 b1 b2 + q02 b2^2.
    const cplx q20 = p(0, 0) * q(1, 0) - p(1, 0) * q(0, 0);
    const cplx q11 = p(0, 0) * q(1, 1) + p(0, 1) * q(1, 0) - p(1, 0) * q(0, 1) - p(1, 1) * q(0, 0);
    const cplx q02 = p(0, 1) * q(1, 1) - p(1, 1) * q(0, 1);

    const double scale = std::max({std::abs(q20), std::abs(q11), std::abs(q02)});
    const double floor = tol * std::max(1.0, hs_norm(a1) * hs_norm(a2));
    if (scale <= floor) {
        throw DegenerateInput(
            "dependency_directions: dependence form vanishes identically; "
            "every direction is a dependency direction");
    }

    std::vector<Vec2> dirs;
    const double rel = 1e-12;
    if (std::abs(q20) > rel * scale) {
        const cplx disc = std::sqrt(q11 * q11 - 4.0 * q20 * q02);
        const cplx x1 = (-q11 + disc) / (2.0 * q20);
        const cplx x2 = (-q11 - disc) / (2.0 * q20);
        dirs.push_back({x1, 1.0});
        if (std::abs(x1 - x2) > 1e-8 * std::max({1.0, std::abs(x1), std::abs(x2)})) {
            dirs.push_back({x2, 1.0});
        }
    } else if (std::abs(q11) > rel * scale) {
        dirs.push_back({1.0, 0.0});
        dirs.push_back({-q02, q11});
    } else {
        dirs.push_back({1.0, 0.0});  // q02 b2^2 only: double root at b2 = 0
    }

    std::vector<Vec2> out;
    for (Vec2 d : dirs) {
        const Vec2 u = phase_normalized(normalized(d));
        bool dup = false;
        for (const Vec2& e : out) {
            if (std::abs(dot(u, e)) >= 1.0 - 1e-10) dup = true;
        }
        if (!dup) out.push_back(u);
    }
    return out;
}

}  // namespace pairnorm
