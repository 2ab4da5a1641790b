#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "pairnorm/cmat.hpp"

namespace pairnorm {

inline constexpr double kPi = 3.141592653589793238462643383280;
inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kHalfPi = 1.570796326794896619231321691640;

/// Grid resolution for optimizations over the phase-reduced unit sphere of
/// C^2, parameterized as d = (cos t, e^{i phi} sin t) with t in [0, pi/2]
/// and phi in [0, 2 pi). The global phase of d is irrelevant to every
/// objective optimized here, so this parameterization is complete.
struct GridSpec {
    int nt = 129;
    int nphi = 257;
};

inline Vec2 sphere_point(double t, double phi) {
    return {std::cos(t), cplx(std::cos(phi), std::sin(phi)) * std::sin(t)};
}

struct SphereOptResult {
    double value = 0.0;
    double t = 0.0;
    double phi = 0.0;
};

namespace detail {

inline constexpr double kGolden = 0.618033988749894848204586834366;

// Best grid cells kept pairwise separated (beyond two cells in each
// coordinate), so refinement seeds cover distinct basins instead of one.
struct TopCells {
    static constexpr int kMax = 6;
    SphereOptResult cells[kMax];
    int count = 0;
    double dt, dphi;

    TopCells(double dt_, double dphi_) : dt(dt_), dphi(dphi_) {
        for (auto& c : cells) c.value = -1e300;
    }

    bool near(const SphereOptResult& c, double t, double phi) const {
        if (std::abs(c.t - t) > 2.0 * dt) return false;
        const double dp = std::abs(c.phi - phi);
        return dp <= 2.0 * dphi || std::abs(dp - kTwoPi) <= 2.0 * dphi;
    }

    void sort_cells() {
        std::sort(cells, cells + kMax, [](const SphereOptResult& a, const SphereOptResult& b) {
            return a.value > b.value;
        });
    }

    void offer(double v, double t, double phi) {
        for (int k = 0; k < kMax; ++k) {
            if (cells[k].value > -1e299 && near(cells[k], t, phi)) {
                if (v > cells[k].value) {
                    cells[k] = {v, t, phi};
                    sort_cells();
                }
                return;
            }
        }
        if (v > cells[kMax - 1].value) {
            cells[kMax - 1] = {v, t, phi};
            sort_cells();
        }
    }
};

// Golden-section maximization of a 1-D slice; returns (x, f(x)).
template <class F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, int iters) {
    double a = lo, b = hi;
    double x1 = b - kGolden * (b - a);
    double x2 = a + kGolden * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = f(x1);
        }
    }
    return (f1 >= f2) ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

}  // namespace detail

/// Local refinement from one seed cell: coordinate-wise golden sections,
/// then a compass pattern phase whose diagonal moves follow the creases
/// that ratio objectives develop (where coordinate descent stalls).
///
/// The phi coordinate is degenerate at the poles t = 0 and t = pi/2, where
/// a grid argmax can sit with an arbitrary phi; seeds at a pole are
/// additionally re-aligned one cell away from it (full phi scan first).
template <class F>
SphereOptResult sphere_refine(F&& f, double t0, double phi0, double wt, double wphi,
                              int nphi_scan, int pattern_iters = 160,
                              double pattern_floor = 1e-11) {
    SphereOptResult best{f(t0, phi0), t0, phi0};
    const auto descend = [&](double tseed, double phiseed) {
        double t = tseed, phi = phiseed;
        double wt_ = wt, wphi_ = wphi;
        for (int round = 0; round < 3; ++round) {
            auto [t1, v1] = detail::golden_max(
                [&](double x) { return f(std::clamp(x, 0.0, kHalfPi), phi); }, t - wt_, t + wt_,
                45);
            t = std::clamp(t1, 0.0, kHalfPi);
            if (v1 > best.value) best = {v1, t, phi};
            auto [p1, v2] = detail::golden_max([&](double x) { return f(t, x); }, phi - wphi_,
                                               phi + wphi_, 45);
            phi = p1;
            if (v2 > best.value) best = {v2, t, phi};
            wt_ *= 0.25;
            wphi_ *= 0.25;
        }
    };
    descend(t0, phi0);
    if (t0 <= wt || t0 >= kHalfPi - wt) {
        const double tpull = (t0 <= wt) ? wt : kHalfPi - wt;
        double bphi = phi0, bval = -1e300;
        const int n = std::max(8, nphi_scan);
        for (int j = 0; j < n; ++j) {
            const double p = kTwoPi * j / n;
            const double v = f(tpull, p);
            if (v > bval) {
                bval = v;
                bphi = p;
            }
        }
        descend(tpull, bphi);
    }

    double t = best.t, phi = best.phi;
    double st = 0.5 * wt, sp = 0.5 * wphi;
    static constexpr int kDirs[8][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1},
                                        {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    for (int it = 0; it < pattern_iters && (st > pattern_floor || sp > pattern_floor); ++it) {
        bool moved = false;
        for (const auto& d : kDirs) {
            const double tt = std::clamp(t + d[0] * st, 0.0, kHalfPi);
            const double pp = phi + d[1] * sp;
            const double v = f(tt, pp);
            if (v > best.value) {
                best = {v, tt, pp};
                t = tt;
                phi = pp;
                moved = true;
            }
        }
        if (!moved) {
            st *= 0.4;
            sp *= 0.4;
        }
    }
    return best;
}

/// Coarse grid scan followed by pole-aware golden-section refinement from
/// the best cells. Certified from below: the result is the maximum of
/// actual evaluations of f. Parameters are resolved to ~1e-10.
template <class F>
SphereOptResult sphere_maximize(F&& f, const GridSpec& grid = {}) {
    const int nt = std::max(2, grid.nt);
    const int nphi = std::max(2, grid.nphi);
    const double dt = kHalfPi / (nt - 1);
    const double dphi = kTwoPi / nphi;

    detail::TopCells top(dt, dphi);
    for (int i = 0; i < nt; ++i) {
        const double t = i * dt;
        for (int j = 0; j < nphi; ++j) {
            const double phi = j * dphi;
            top.offer(f(t, phi), t, phi);
        }
    }

    SphereOptResult best = top.cells[0];
    for (const auto& seed : top.cells) {
        if (seed.value <= -1e299) continue;
        const SphereOptResult r = sphere_refine(f, seed.t, seed.phi, dt, dphi, nphi);
        if (r.value > best.value) best = r;
    }
    return best;
}

}  // namespace pairnorm
