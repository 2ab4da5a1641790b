#include "pairnorm/opspace.hpp"

#include <cmath>

#include "pairnorm/linalg.hpp"

namespace pairnorm {

double level2_defining_norm(const MatrixPair& pair, const LevelKElement& z) {
    if (pair.dim() != 2) throw ShapeError("level2_defining_norm: 2x2 pair required");
    return op_norm(kron(pair.a1(), z.z1) + kron(pair.a2(), z.z2));
}

TransposeGap transpose_gap(cplx d, double b, cplx c) {
    if (b < 0.0) throw std::invalid_argument("transpose_gap: b must be nonnegative");
    const CMat a1{{1.0, 0.0}, {0.0, d}};
    const CMat a2{{1.0, b}, {c, 0.0}};
    const CMat z1{{1.0, 0.0}, {0.0, 0.0}};
    const CMat z2{{0.0, 1.0}, {0.0, 0.0}};

    // Computed without pair validation: degenerate parameter corners (for
    // instance d = b = c = 0) are legitimate grid points here.
    TransposeGap out;
    out.norm_a = op_norm(kron(a1, z1) + kron(a2, z2));
    out.norm_at = op_norm(kron(transpose(a1), z1) + kron(transpose(a2), z2));
    out.equal = std::abs(out.norm_a - out.norm_at) <= 1e-9;
    return out;
}

double min_norm(const MatrixPair& pair, const LevelKElement& z, const GridSpec& outer,
                const GridSpec& inner) {
    return sup_over_dual_ball(pair, z.z1, z.z2, outer, inner);
}

bool dmp_contraction_ok(cplx alpha1, cplx alpha2, const CMat& b) {
    const double m1 = std::abs(alpha1);
    const double m2 = std::abs(alpha2);
    if (m1 > 1.0 || m2 > 1.0) return false;
    const double nb = op_norm(b);
    return nb * nb <= (1.0 - m1 * m1) * (1.0 - m2 * m2) + 1e-12;
}

namespace {

// (a1 P, X; 0, a2 Q) from the given blocks.
CMat upper_block(const CMat& tl, const CMat& tr, const CMat& br) {
    const int m = tl.rows(), n = br.rows();
    if (tr.rows() != m || tr.cols() != n) throw ShapeError("upper_block: shape mismatch");
    CMat out(m + n, m + n);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) out(i, j) = tl(i, j);
        for (int j = 0; j < n; ++j) out(i, m + j) = tr(i, j);
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) out(m + i, m + j) = br(i, j);
    }
    return out;
}

}  // namespace

NormPairResult block_norm_reduction(cplx alpha1, cplx alpha2, const CMat& b) {
    const int m = b.rows(), n = b.cols();
    NormPairResult out;
    out.full = op_norm(upper_block(alpha1 * CMat::identity(m), b, alpha2 * CMat::identity(n)));
    out.reduced = op_norm(CMat{{alpha1, op_norm(b)}, {cplx(0.0), alpha2}});
    return out;
}

NormPairResult embedding_equivalence(const EmbeddingSpec& spec, const LevelKElement& z) {
    const int m = spec.b.rows(), n = spec.b.cols();
    NormPairResult out;
    out.full = op_norm(upper_block(spec.alpha1 * kron(z.z1, CMat::identity(m)),
                                   kron(z.z2, spec.b),
                                   spec.alpha2 * kron(z.z1, CMat::identity(n))));
    out.reduced = op_norm(upper_block(spec.alpha1 * z.z1, op_norm(spec.b) * z.z2,
                                      spec.alpha2 * z.z1));
    return out;
}

}  // namespace pairnorm
