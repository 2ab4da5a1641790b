#pragma once

#include <cstdint>
#include <vector>

#include "pairnorm/linalg.hpp"
#include "pairnorm/sphere_opt.hpp"

namespace pairnorm {

/// Ordered pair (A1, A2) of n x n matrices defining the norm
/// z -> ||z1 A1 + z2 A2||_op on C^2.
///
/// Construction validates shape and linear independence over C (smallest
/// singular value of [vec(A1) vec(A2)] above 1e-10); below that threshold
/// the induced "norm" is degenerate and nothing downstream is meaningful.
class MatrixPair {
public:
    MatrixPair(CMat a1, CMat a2);

    const CMat& a1() const { return a1_; }
    const CMat& a2() const { return a2_; }
    int dim() const { return a1_.rows(); }

private:
    CMat a1_;
    CMat a2_;
};

struct DualVector {
    cplx w1{0.0};
    cplx w2{0.0};
};

double a_norm(const MatrixPair& pair, Vec2 z);

bool in_unit_ball(const MatrixPair& pair, Vec2 z, double tol = kDefaultTol);

/// Support-function oracle for the dual norm:
/// sup over directions d of |w . d| / a_norm(d), evaluated on the
/// phase-reduced sphere grid with golden-section refinement. Certified
/// lower bound converging to the supremum; accuracy target 1e-6 relative
/// at the default 129 x 257 grid.
double dual_norm_numeric(const MatrixPair& pair, DualVector w, const GridSpec& grid = {});

/// Closed-form dual norm for the pair (I2, E12):
/// (|w1|^2 + 4 |w2|^2) / (4 |w2|) when |w2| >= |w1| / 2, else |w1|.
/// Continuous across the branch boundary.
double dual_norm_parabola(DualVector w);

/// sup over the dual unit ball of ||e1 M1 + e2 M2||_op, realized as
/// sup over directions e of ||e1 M1 + e2 M2||_op / dual_norm(e) with the
/// dual norm evaluated by the support-function oracle. This is the engine
/// behind the induced-map norm and the matricial MIN norm.
double sup_over_dual_ball(const MatrixPair& pair, const CMat& m1, const CMat& m2,
                          const GridSpec& outer = {}, const GridSpec& inner = {});

/// z / a_norm(z): the radial projection onto the unit sphere of the norm.
Vec2 rescale_to_boundary(const MatrixPair& pair, Vec2 z);

/// Deterministic seeded points with a_norm = 1 (up to 1e-10).
std::vector<Vec2> boundary_sample(const MatrixPair& pair, int count, uint64_t seed);

/// The pair (I2, E12) whose unit ball is {|z1|^2 + |z2| < 1}.
MatrixPair parabola_pair();

/// The pair (diag(1,0), diag(0,1)); max-modulus norm.
MatrixPair bidisc_pair();

/// The pair (E11, E12); Euclidean norm on C^2.
MatrixPair euclidean_pair();

}  // namespace pairnorm
