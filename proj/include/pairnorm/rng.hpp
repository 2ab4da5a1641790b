#pragma once

#include <cstdint>

#include "pairnorm/cmat.hpp"

namespace pairnorm {

/// splitmix64 generator with explicit arithmetic so that streams are
/// bit-identical across platforms and standard libraries.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (fully specified, no library variance).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    cplx cnormal() { return {normal(), normal()}; }

    CMat cmatrix(int rows, int cols) {
        CMat m(rows, cols);
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < cols; ++j) m(i, j) = cnormal();
        }
        return m;
    }

    Vec2 unit_vec2() {
        Vec2 v{cnormal(), cnormal()};
        while (v.norm() < 1e-6) v = {cnormal(), cnormal()};
        return normalized(v);
    }

    /// Haar-flavored random unitary: Gram-Schmidt of a Gaussian matrix.
    CMat unitary(int n) {
        CMat g = cmatrix(n, n);
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < j; ++k) {
                cplx ip(0.0);
                for (int i = 0; i < n; ++i) ip += g(i, j) * std::conj(g(i, k));
                for (int i = 0; i < n; ++i) g(i, j) -= ip * g(i, k);
            }
            double nrm = 0.0;
            for (int i = 0; i < n; ++i) nrm += std::norm(g(i, j));
            nrm = std::sqrt(nrm);
            if (nrm < 1e-9) {  // re-draw a hopeless column
                for (int i = 0; i < n; ++i) g(i, j) = cnormal();
                --j;
                continue;
            }
            for (int i = 0; i < n; ++i) g(i, j) /= nrm;
        }
        return g;
    }

private:
    uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace pairnorm
