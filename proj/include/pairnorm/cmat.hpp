#pragma once

#include <cmath>
#include <complex>
#include <initializer_list>
#include <vector>

#include "pairnorm/errors.hpp"

namespace pairnorm {

using cplx = std::complex<double>;

inline constexpr double kDefaultTol = 1e-9;

/// Dense complex matrix with explicit shape, row-major storage.
/// The universal carrier for the small (<= ~32x32) matrices handled here.
class CMat {
public:
    CMat() : rows_(1), cols_(1), a_(1, cplx(0.0)) {}

    CMat(int rows, int cols) : rows_(rows), cols_(cols) {
        if (rows < 1 || cols < 1) {
            throw DimensionError("CMat: dimensions must be positive");
        }
        a_.assign(static_cast<size_t>(rows) * cols, cplx(0.0));
    }

    CMat(std::initializer_list<std::initializer_list<cplx>> rows) {
        rows_ = static_cast<int>(rows.size());
        if (rows_ == 0) throw DimensionError("CMat: empty initializer");
        cols_ = static_cast<int>(rows.begin()->size());
        if (cols_ == 0) throw DimensionError("CMat: empty row");
        a_.reserve(static_cast<size_t>(rows_) * cols_);
        for (const auto& r : rows) {
            if (static_cast<int>(r.size()) != cols_) {
                throw ShapeError("CMat: ragged initializer");
            }
            for (const cplx& v : r) a_.push_back(v);
        }
    }

    static CMat identity(int n) {
        CMat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    const std::vector<cplx>& data() const { return a_; }

    bool same_shape(const CMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

    bool is_finite() const {
        for (const cplx& v : a_) {
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        }
        return true;
    }

    double max_abs() const {
        double m = 0.0;
        for (const cplx& v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    CMat& operator+=(const CMat& o) {
        if (!same_shape(o)) throw ShapeError("CMat: shape mismatch in +=");
        for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    CMat& operator-=(const CMat& o) {
        if (!same_shape(o)) throw ShapeError("CMat: shape mismatch in -=");
        for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    CMat& operator*=(cplx s) {
        for (cplx& v : a_) v *= s;
        return *this;
    }

    friend CMat operator+(CMat a, const CMat& b) { return a += b; }
    friend CMat operator-(CMat a, const CMat& b) { return a -= b; }
    friend CMat operator*(cplx s, CMat a) { return a *= s; }
    friend CMat operator*(CMat a, cplx s) { return a *= s; }

    friend CMat operator*(const CMat& a, const CMat& b) {
        if (a.cols_ != b.rows_) throw ShapeError("CMat: shape mismatch in *");
        CMat c(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i) {
            for (int k = 0; k < a.cols_; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx(0.0)) continue;
                for (int j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        }
        return c;
    }

private:
    int rows_;
    int cols_;
    std::vector<cplx> a_;
};

inline CMat adjoint(const CMat& m) {
    CMat r(m.cols(), m.rows());
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) r(j, i) = std::conj(m(i, j));
    }
    return r;
}

inline CMat transpose(const CMat& m) {
    CMat r(m.cols(), m.rows());
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) r(j, i) = m(i, j);
    }
    return r;
}

/// Kronecker product; entry ((i-1)Nr+k, (j-1)Nc+l) = M(i,j) * N(k,l).
inline CMat kron(const CMat& m, const CMat& n) {
    CMat r(m.rows() * n.rows(), m.cols() * n.cols());
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            const cplx mij = m(i, j);
            if (mij == cplx(0.0)) continue;
            for (int k = 0; k < n.rows(); ++k) {
                for (int l = 0; l < n.cols(); ++l) {
                    r(i * n.rows() + k, j * n.cols() + l) = mij * n(k, l);
                }
            }
        }
    }
    return r;
}

inline double hs_norm(const CMat& m) {
    double s = 0.0;
    for (const cplx& v : m.data()) s += std::norm(v);
    return std::sqrt(s);
}

/// Point of C^2; also carries beta, omega and eta vectors.
struct Vec2 {
    cplx x{0.0};
    cplx y{0.0};

    double norm() const { return std::sqrt(std::norm(x) + std::norm(y)); }
    bool is_finite() const {
        return std::isfinite(x.real()) && std::isfinite(x.imag()) &&
               std::isfinite(y.real()) && std::isfinite(y.imag());
    }
};

inline Vec2 operator*(cplx s, Vec2 v) { return {s * v.x, s * v.y}; }

/// <a, b> = a1*conj(b1) + a2*conj(b2), linear in the first slot.
inline cplx dot(Vec2 a, Vec2 b) { return a.x * std::conj(b.x) + a.y * std::conj(b.y); }

inline Vec2 matvec2(const CMat& m, Vec2 v) {
    return {m(0, 0) * v.x + m(0, 1) * v.y, m(1, 0) * v.x + m(1, 1) * v.y};
}

inline Vec2 normalized(Vec2 v) {
    const double n = v.norm();
    if (n == 0.0) throw DegenerateInput("normalized: zero vector");
    return {v.x / n, v.y / n};
}

/// Representative up to phase: the first coordinate with modulus > tol is
/// rotated to the positive real axis.
inline Vec2 phase_normalized(Vec2 v, double tol = 1e-12) {
    cplx pivot = (std::abs(v.x) > tol) ? v.x : v.y;
    const double p = std::abs(pivot);
    if (p <= tol) return v;
    const cplx rot = std::conj(pivot) / p;
    return {rot * v.x, rot * v.y};
}

}  // namespace pairnorm
