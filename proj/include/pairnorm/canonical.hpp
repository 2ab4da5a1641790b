#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pairnorm/contractivity.hpp"

namespace pairnorm {

/// Coordinate change z1 = p z1' + q z2', z2 = r z1' + s z2', acting on the
/// pair as A1' = p A1 + r A2, A2' = q A1 + s A2. Must be invertible.
struct LinearMove {
    cplx p{1.0}, q{0.0}, r{0.0}, s{1.0};

    LinearMove() = default;
    LinearMove(cplx p_, cplx q_, cplx r_, cplx s_) : p(p_), q(q_), r(r_), s(s_) {
        if (std::abs(p * s - q * r) <= 1e-12) {
            throw DegenerateInput("LinearMove: transform is singular");
        }
    }

    Vec2 apply(Vec2 zt) const { return {p * zt.x + q * zt.y, r * zt.x + s * zt.y}; }
};

struct UnitaryMove {
    CMat u;
    CMat w;
};

using Move = std::variant<UnitaryMove, LinearMove>;

enum class PairClass {
    SimultaneouslyDiagonalizable,
    OpSpaceDistinguishable,
    ResidualI,
    ResidualII,
    ResidualIII,
    ResidualIV,
    ResidualV,
    ResidualVI,
};

bool is_residual(PairClass t);
const char* pair_class_name(PairClass t);

/// Classification outcome with the extracted normal-form parameters and
/// the move chain that witnesses the reduction.
struct CanonicalClass {
    PairClass tag = PairClass::SimultaneouslyDiagonalizable;
    cplx d{0.0};
    double theta = 0.0;  // residual families with unimodular diagonal
    double b = 0.0;
    cplx c{0.0};
    bool row_ambiguous = false;  // more than one normal-form row matched
    std::vector<Move> moves;
    std::optional<MatrixPair> reduced;
};

/// Applies one two-sided unitary move followed by one linear move; U and W
/// are checked for unitarity within 1e-10.
MatrixPair apply_moves(const MatrixPair& pair, const CMat& u, const CMat& w,
                       const LinearMove& t);

MatrixPair replay_moves(const MatrixPair& pair, const std::vector<Move>& moves);

/// Composite of the linear parts, as the 2x2 matrix T with z = T z'; the
/// norm identity a_norm(original, T z') = a_norm(reduced, z') holds along
/// any recorded chain.
CMat composite_linear(const std::vector<Move>& moves);

/// Joint diagonalizability by one two-sided unitary move, decided by
/// diagonalizing a generic pencil member through its SVD (two seeded
/// draws). Off-diagonal mass is measured relative to the matrix scale.
bool is_simdiag(const MatrixPair& pair, double tol = 1e-8);

/// Reduction of a non-simultaneously-diagonalizable 2x2 pair to a
/// normal-form row (A1 diagonal with leading entry 1; A2 with diagonal
/// (1,0) or (0,0) and nonnegative upper-right entry), then refinement into
/// OpSpaceDistinguishable or a residual family.
CanonicalClass reduce_to_table1(const MatrixPair& pair);

CanonicalClass classify(const MatrixPair& pair);

}  // namespace pairnorm
