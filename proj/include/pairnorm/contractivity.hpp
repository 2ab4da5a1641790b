#pragma once

#include "pairnorm/anorm.hpp"

namespace pairnorm {

/// Ordered pair (V1, V2) of p x q matrices defining the induced linear map
/// w -> w1 V1 + w2 V2 on the dual-normed C^2.
class VPair {
public:
    VPair(CMat v1, CMat v2);

    const CMat& v1() const { return v1_; }
    const CMat& v2() const { return v2_; }
    int p() const { return v1_.rows(); }
    int q() const { return v1_.cols(); }

private:
    CMat v1_;
    CMat v2_;
};

/// The (u, 0), (0, v) row-vector ansatz parameters.
struct UVParams {
    double u = 0.0;
    double v = 0.0;
};

VPair uv_vpair(UVParams uv);

struct GEval {
    double value = 0.0;
    Vec2 beta;               // unit vector where the value was taken
    double schwarz_gap = 0.0;  // ||A1*b||^2 ||A2*b||^2 - |<A1 A2* b, b>|^2
};

/// Norm of the induced map V on the dual-normed C^2, via the support
/// oracle: sup over directions e of ||e1 V1 + e2 V2||_op / dual_norm(e).
double lv_norm(const MatrixPair& pair, const VPair& v, const GridSpec& outer = {},
               const GridSpec& inner = {});

/// ||A1 (x) V1 + A2 (x) V2||_op, the level-n amplification norm of the
/// defining function (its value at 0 vanishes, so this is the whole norm).
double cc_bound(const MatrixPair& pair, const VPair& v);

/// Same bound through the row-vector reduction: the n x 2n concatenation
/// [B1 B2] with Bj = V1(0,j) A1 + V2(0,j) A2. Requires 1 x 2 blocks.
double rowvec_cc_bound(const MatrixPair& pair, const VPair& v);

/// The extremal function
/// g_{u,v}(b) = 1 - u^2 ||A1* b||^2 - v^2 ||A2* b||^2
///            + u^2 v^2 (||A1* b||^2 ||A2* b||^2 - |<A1 A2* b, b>|^2).
/// The input is normalized to the unit sphere; requires a 2x2 pair.
GEval g_eval(const MatrixPair& pair, UVParams uv, Vec2 beta);

/// Minimize g_{u,v} over the unit sphere of C^2 (grid plus refinement);
/// accuracy target 1e-7 absolute at the default 257 x 257 grid.
GEval inf_g(const MatrixPair& pair, UVParams uv, const GridSpec& grid = {257, 257});

/// Contractivity of the (u, v) ansatz map:
/// (u <= 1/||A1*|| + tol or v <= 1/||A2*|| + tol) and inf g >= -tol.
bool is_contractive_uv(const MatrixPair& pair, UVParams uv, double tol = kDefaultTol);

/// Direct oracle: sup over the Euclidean unit sphere of
/// ||z1 u A1 + z2 v A2||_op. Grid-only when refine is false (the
/// certified-from-below form used for certificate verification).
double uv_sup_oracle(const MatrixPair& pair, UVParams uv, int n = 101, bool refine = true);

/// sup over unit a, b, u, v of |<A1 a, b><V1 u, v> + <A2 a, b><V2 u, v>|
/// by alternating maximization: each half-step is an exact top-singular
/// solve for one block; seeded restarts, the best value is kept.
double testfn_sup(const MatrixPair& pair, const VPair& v, int restarts = 100);

/// Precomputed sphere tables for g_{u,v}; lets the search evaluate the
/// infimum for many (u, v) against one grid.
class GSphere {
public:
    GSphere(const MatrixPair& pair, int n = 257);

    GEval eval(UVParams uv, Vec2 beta) const;
    GEval inf(UVParams uv) const;

private:
    CMat a1h_, a2h_, a12_;
    int nt_, nphi_;
    double dt_, dphi_;
    std::vector<double> x_, y_, c_;  // ||A1*b||^2, ||A2*b||^2, Schwarz gap
};

}  // namespace pairnorm
