#pragma once

#include <vector>

#include "pairnorm/cmat.hpp"

namespace pairnorm {

/// Largest singular value.
///
/// Closed forms for 1x1, single-row/column and 2x2 inputs; larger matrices
/// go through a cyclic Jacobi iteration on the Gram matrix of the shorter
/// side (off-diagonal Frobenius mass driven below 1e-14 relative, at most
/// 200 sweeps). Deterministic and exactly homogeneous under scaling.
double op_norm(const CMat& m);

/// Largest singular value of a 2x2 given by its entries; allocation-free.
double op_norm2x2(cplx m00, cplx m01, cplx m10, cplx m11);

struct EigenSys {
    std::vector<double> values;  // ascending
    CMat vectors;                // unitary, columns are eigenvectors
};

/// Jacobi eigendecomposition of a Hermitian matrix, H = V diag(values) V*.
EigenSys hermitian_eigensystem(CMat h);

std::vector<double> hermitian_eigenvalues(const CMat& h);

struct SingularTriple {
    double sigma;
    CMat u;  // rows x 1
    CMat v;  // cols x 1, with m v = sigma u
};

/// Top singular value with a left/right singular vector pair.
SingularTriple top_singular_triple(const CMat& m);

struct Svd2 {
    CMat u;  // 2x2 unitary
    CMat w;  // 2x2 unitary
    double s1;
    double s2;  // u m w = diag(s1, s2), s1 >= s2 >= 0
};

Svd2 svd2x2(const CMat& m);

struct Schur2 {
    CMat q;  // 2x2 unitary
    CMat t;  // q* a q = t upper triangular, |t00| >= |t11|
};

Schur2 schur2x2(const CMat& a);

/// All unit directions eta (up to phase) with A1* eta and A2* eta linearly
/// dependent, for a linearly independent 2x2 pair.
///
/// det[A1* b | A2* b] is a homogeneous quadratic in b; its root lines give
/// the directions (a double root gives one). Throws DegenerateInput when
/// the form vanishes identically, i.e. every direction is dependent.
std::vector<Vec2> dependency_directions(const CMat& a1, const CMat& a2,
                                        double tol = kDefaultTol);

}  // namespace pairnorm
