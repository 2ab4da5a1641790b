#pragma once

#include "pairnorm/canonical.hpp"

namespace pairnorm {

struct SearchConfig {
    int sphere_grid = 257;       // resolution of the inner infimum grid
    double bisect_tol = 1e-8;    // bracket width at termination
    double cert_margin = 1e-4;   // smallest violation worth certifying
    int max_bisect_iters = 200;
    uint64_t seed = 0;
};

enum class BetaMode { APositive, BPositive };

// Grid resolutions used for a certificate's recorded induced-map norm;
// re-verification uses the same grids to reproduce the value exactly.
inline constexpr GridSpec kCertLvOuter{33, 65};
inline constexpr GridSpec kCertLvInner{65, 129};

/// Machine-verified witness that the (u, v) ansatz map on the carried pair
/// is contractive while its level-2 amplification exceeds norm one.
struct Certificate {
    MatrixPair pair;   // the (canonical-form) pair the witness is issued for
    UVParams uv;
    Vec2 beta0;        // extremal direction, strictly off the dependency set
    double lv_value = 0.0;
    double violation = 0.0;  // cc_bound - 1
    double inf_g_value = 0.0;
    double schwarz_gap_at_beta0 = 0.0;
    SearchConfig config;
    CanonicalClass family;
};

struct AbcCoeffs {
    double a = 0.0;  // ||A1* b||^2 - ||A1* eta||^2
    double b = 0.0;  // ||A2* b||^2 - ||A2* eta||^2
    double c = 0.0;  // Schwarz gap at b, always >= 0 up to roundoff
};

AbcCoeffs abc_coeffs(const MatrixPair& pair, Vec2 eta, Vec2 beta);

/// a u^2 + b v^2 - c u^2 v^2 with the coefficients above.
double f_coeff(const MatrixPair& pair, Vec2 eta, UVParams uv, Vec2 beta);

/// Stage-1 direction selection. Families with unimodular diagonal reduce
/// (by unitary moves only) to A1 = I with A2 upper triangular, where the
/// first basis vector works; the remaining families and the distinguishable
/// class pick the direction maximizing the worst relevant coefficient over
/// a modulus/phase grid. Returns the direction in the coordinates of the
/// pair that was passed in.
std::pair<Vec2, BetaMode> choose_beta_hat(const CanonicalClass& cls, const MatrixPair& pair);

struct RegionParams {
    double u0 = 0.0;
    double v0 = 0.0;
    double lambda0 = 0.0;  // v0/u0 in A mode, u0/v0 in B mode
};

/// Stage-1 region selection: a point on the zero curve of g(., ., beta_hat)
/// satisfying the mode's cap and the strict positivity of every f_i;
/// among the curve samples the one with the largest worst-case f_i margin
/// is returned.
RegionParams region_params(const MatrixPair& pair, Vec2 beta_hat, BetaMode mode,
                           const SearchConfig& config);

struct BisectResult {
    double x0 = 0.0;
    GEval g_min;
};

/// Stage-2 bisection along the ray (u, lambda0 u) (A mode) or
/// (lambda0 v, v) (B mode) for the first parameter with inf g <= 0. The
/// bracket's upper end is located by a forward sweep with a sign-change
/// scan; the returned x0 is the strictly positive side of the final
/// bracket, so the map there is contractive.
BisectResult bisect_x0(const MatrixPair& pair, double lambda0, BetaMode mode,
                       const SearchConfig& config);

/// Full pipeline: classify, select direction and region, scan 17 ray
/// candidates along the zero curve, bisect each, verify candidates with the
/// independent sphere oracle, and keep the certificate with the largest
/// violation. Throws NotApplicable for simultaneously diagonalizable pairs
/// and SearchFailure (with the failing stage) when no candidate certifies.
Certificate search(const MatrixPair& pair, const SearchConfig& config = {});

/// The built-in witness for the pair (I2, E12) at u = 1/sqrt(2), v = 1.
Certificate parabola_witness();

}  // namespace pairnorm
