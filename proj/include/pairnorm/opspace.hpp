#pragma once

#include "pairnorm/anorm.hpp"

namespace pairnorm {

/// Element of the level-k matrix space over C^2: a pair of k x k blocks.
struct LevelKElement {
    CMat z1;
    CMat z2;

    LevelKElement(CMat z1_, CMat z2_) : z1(std::move(z1_)), z2(std::move(z2_)) {
        if (z1.rows() != z1.cols() || !z1.same_shape(z2)) {
            throw ShapeError("LevelKElement: matching square blocks required");
        }
    }
    int k() const { return z1.rows(); }
};

/// Data of the triangular embedding family
/// (z1, z2) -> (z1 a1 I_m, z2 B; 0, z1 a2 I_n).
struct EmbeddingSpec {
    cplx alpha1{0.0};
    cplx alpha2{0.0};
    CMat b;

    EmbeddingSpec(cplx a1, cplx a2, CMat b_) : alpha1(a1), alpha2(a2), b(std::move(b_)) {
        if (b.max_abs() == 0.0) throw std::invalid_argument("EmbeddingSpec: B must be nonzero");
    }
};

/// ||A1 (x) Z1 + A2 (x) Z2||_op: the level-k norm of the defining function
/// under the embedding given by the pair (A-entries as block coefficients).
double level2_defining_norm(const MatrixPair& pair, const LevelKElement& z);

struct TransposeGap {
    double norm_a = 0.0;
    double norm_at = 0.0;
    bool equal = false;
};

/// For the first normal-form family A1 = diag(1, d), A2 = [[1, b],[c, 0]],
/// compares the level-2 norms of the pair and its transpose at the test
/// element Z1 = E11, Z2 = E12. The norms agree exactly when
/// (b^2 - |c|^2)(1 - |d|^2) = 0, and only then.
TransposeGap transpose_gap(cplx d, double b, cplx c);

/// Matricial MIN norm: sup over the dual unit ball of ||w1 Z1 + w2 Z2||_op.
double min_norm(const MatrixPair& pair, const LevelKElement& z, const GridSpec& outer = {},
                const GridSpec& inner = {});

/// Contraction criterion for the block (a1 I_m, B; 0, a2 I_n):
/// |a1| <= 1, |a2| <= 1 and ||B||^2 <= (1 - |a1|^2)(1 - |a2|^2).
bool dmp_contraction_ok(cplx alpha1, cplx alpha2, const CMat& b);

struct NormPairResult {
    double full = 0.0;
    double reduced = 0.0;
};

/// ||(a1 I_m, B; 0, a2 I_n)|| against the scalar compression
/// ||(a1, ||B||; 0, a2)||; the two agree.
NormPairResult block_norm_reduction(cplx alpha1, cplx alpha2, const CMat& b);

/// Level-k norm of the triangular embedding against its scalar-compressed
/// form (a1 Z1, ||B|| Z2; 0, a2 Z1); the two agree for every B of a given
/// operator norm.
NormPairResult embedding_equivalence(const EmbeddingSpec& spec, const LevelKElement& z);

}  // namespace pairnorm
