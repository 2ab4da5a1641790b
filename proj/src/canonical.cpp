#include "pairnorm/canonical.hpp"

#include <algorithm>
#include <cmath>

#include "pairnorm/rng.hpp"

namespace pairnorm {

namespace {

constexpr double kTolClass = 1e-6;

bool is_unitary(const CMat& u, double tol) {
    if (u.rows() != u.cols()) return false;
    const CMat g = adjoint(u) * u;
    CMat diff = g;
    for (int i = 0; i < u.rows(); ++i) diff(i, i) -= 1.0;
    return hs_norm(diff) <= tol;
}

LinearMove identity_move() { return {}; }

double offdiag_mass(const CMat& m) {
    double s = 0.0;
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (i != j) s += std::norm(m(i, j));
        }
    }
    return std::sqrt(s);
}

struct Reducer {
    std::vector<Move> moves;
    CMat a1, a2;

    explicit Reducer(const MatrixPair& p) : a1(p.a1()), a2(p.a2()) {}

    void unitary(const CMat& u, const CMat& w) {
        a1 = u * a1 * w;
        a2 = u * a2 * w;
        moves.push_back(UnitaryMove{u, w});
    }

    void linear(const LinearMove& t) {
        const CMat n1 = t.p * a1 + t.r * a2;
        const CMat n2 = t.q * a1 + t.s * a2;
        a1 = n1;
        a2 = n2;
        moves.push_back(t);
    }
};

// One reduction attempt; returns nothing when the (1,0)-diagonal target
// forces a singular move (caller retries after a generic remix).
std::optional<CanonicalClass> try_reduce(const MatrixPair& pair,
                                         const std::optional<LinearMove>& premix) {
    Reducer red(pair);
    if (premix) red.linear(*premix);

    // A1 -> diag(1, dt), dt in [0, 1], by SVD and rescaling.
    const Svd2 sv = svd2x2(red.a1);
    red.unitary(sv.u, sv.w);
    red.linear(LinearMove{1.0 / sv.s1, 0.0, 0.0, 1.0});
    const double dt = sv.s2 / sv.s1;

    int row = 0;
    if (dt > 1.0 - 1e-8) {
        // Unimodular diagonal: the leftover freedom is conjugation of A2,
        // canonicalized by its Schur form.
        const Schur2 sch = schur2x2(red.a2);
        red.unitary(adjoint(sch.q), sch.q);
        const cplx mu = red.a2(0, 0);
        const cplx nu = red.a2(1, 1);
        const double scale = std::max(1.0, red.a2.max_abs());
        if (std::abs(mu - nu) > 1e-8 * scale) {
            red.linear(LinearMove{1.0, -nu / (mu - nu), 0.0, 1.0 / (mu - nu)});
            row = 1;
        } else {
            red.linear(LinearMove{1.0, -mu, 0.0, 1.0});
            row = 3;
        }
    } else {
        // Solve q + s a = 1, q dt + s e = 0 for the diagonal target (1, 0).
        const cplx a = red.a2(0, 0);
        const cplx e = red.a2(1, 1);
        const cplx det = e - dt * a;
        if (std::abs(det) >= 1e-10) {
            if (dt <= 1e-8) return std::nullopt;  // would need s = 0
            red.linear(LinearMove{1.0, e / det, 0.0, -cplx(dt) / det});
            row = 1;
        } else {
            // (1,0) unreachable; (0,0) is, with q = -a, s = 1.
            red.linear(LinearMove{1.0, -a, 0.0, 1.0});
            row = 3;
        }
    }

    // Conjugate by diag(1, ph) to rotate the upper-right entry of A2 onto
    // the nonnegative real axis; the diagonal A1 is untouched.
    const cplx b0 = red.a2(0, 1);
    if (std::abs(b0) > 1e-12 * std::max(1.0, red.a2.max_abs())) {
        const cplx ph = b0 / std::abs(b0);
        CMat dmat = CMat::identity(2);
        dmat(1, 1) = ph;
        red.unitary(dmat, adjoint(dmat));
    }
    const double b = std::abs(red.a2(0, 1));
    const cplx c = red.a2(1, 0);

    CanonicalClass out;
    out.moves = std::move(red.moves);
    out.reduced = MatrixPair(red.a1, red.a2);

    const bool dnear1 = std::abs(dt - 1.0) <= kTolClass;
    const bool bceq = std::abs(b - std::abs(c)) <= kTolClass;
    if (!dnear1 && !bceq) {
        out.tag = PairClass::OpSpaceDistinguishable;
        out.d = dt;
        out.b = b;
        out.c = c;
        return out;
    }

    out.row_ambiguous = dnear1 && bceq;
    if (dnear1) {
        out.tag = (row == 1) ? PairClass::ResidualI : PairClass::ResidualII;
        out.theta = 0.0;
        out.d = 1.0;
        out.b = b;
        out.c = c;
    } else {
        const double m = 0.5 * (b + std::abs(c));
        if (m <= 1e-8) {
            throw DegenerateInput(
                "reduce_to_table1: residual family with vanishing off-diagonal; "
                "the pair is a boundary case of the diagonalizable class");
        }
        out.tag = (row == 1) ? PairClass::ResidualIV : PairClass::ResidualV;
        out.d = dt;
        out.b = m;
        out.c = (std::abs(c) > 0.0) ? c * (m / std::abs(c)) : cplx(m);
    }
    return out;
}

}  // namespace

bool is_residual(PairClass t) {
    switch (t) {
        case PairClass::ResidualI:
        case PairClass::ResidualII:
        case PairClass::ResidualIII:
        case PairClass::ResidualIV:
        case PairClass::ResidualV:
        case PairClass::ResidualVI:
            return true;
        default:
            return false;
    }
}

const char* pair_class_name(PairClass t) {
    switch (t) {
        case PairClass::SimultaneouslyDiagonalizable: return "simultaneously-diagonalizable";
        case PairClass::OpSpaceDistinguishable: return "opspace-distinguishable";
        case PairClass::ResidualI: return "residual-i";
        case PairClass::ResidualII: return "residual-ii";
        case PairClass::ResidualIII: return "residual-iii";
        case PairClass::ResidualIV: return "residual-iv";
        case PairClass::ResidualV: return "residual-v";
        case PairClass::ResidualVI: return "residual-vi";
    }
    return "unknown";
}

MatrixPair apply_moves(const MatrixPair& pair, const CMat& u, const CMat& w,
                       const LinearMove& t) {
    if (!is_unitary(u, 1e-10)) throw NotUnitary("apply_moves: U is not unitary within 1e-10");
    if (!is_unitary(w, 1e-10)) throw NotUnitary("apply_moves: W is not unitary within 1e-10");
    const CMat b1 = u * pair.a1() * w;
    const CMat b2 = u * pair.a2() * w;
    return MatrixPair(t.p * b1 + t.r * b2, t.q * b1 + t.s * b2);
}

MatrixPair replay_moves(const MatrixPair& pair, const std::vector<Move>& moves) {
    MatrixPair cur = pair;
    for (const Move& m : moves) {
        if (std::holds_alternative<UnitaryMove>(m)) {
            const auto& um = std::get<UnitaryMove>(m);
            cur = apply_moves(cur, um.u, um.w, identity_move());
        } else {
            cur = apply_moves(cur, CMat::identity(pair.dim()), CMat::identity(pair.dim()),
                              std::get<LinearMove>(m));
        }
    }
    return cur;
}

CMat composite_linear(const std::vector<Move>& moves) {
    CMat t = CMat::identity(2);
    for (const Move& m : moves) {
        if (std::holds_alternative<LinearMove>(m)) {
            const auto& lm = std::get<LinearMove>(m);
            CMat step(2, 2);
            step(0, 0) = lm.p;
            step(0, 1) = lm.q;
            step(1, 0) = lm.r;
            step(1, 1) = lm.s;
            t = t * step;
        }
    }
    return t;
}

bool is_simdiag(const MatrixPair& pair, double tol) {
    if (pair.dim() != 2) throw ShapeError("is_simdiag: 2x2 pair required");
    bool all_isotropic = true;
    for (const uint64_t seed : {uint64_t{7}, uint64_t{11}}) {
        Rng rng(seed);
        const cplx al = rng.cnormal();
        const cplx ap = rng.cnormal();
        const CMat g = al * pair.a1() + ap * pair.a2();
        const Svd2 sv = svd2x2(g);
        if (sv.s1 - sv.s2 > 1e-8 * std::max(1.0, sv.s1)) all_isotropic = false;
        const CMat t1 = sv.u * pair.a1() * sv.w;
        const CMat t2 = sv.u * pair.a2() * sv.w;
        const bool ok1 = offdiag_mass(t1) <= tol * std::max(1.0, hs_norm(t1));
        const bool ok2 = offdiag_mass(t2) <= tol * std::max(1.0, hs_norm(t2));
        if (ok1 && ok2) return true;
    }
    if (all_isotropic) {
        throw DegenerateInput(
            "is_simdiag: every sampled pencil member has equal singular values; "
            "the diagonalizing basis is not determined");
    }
    return false;
}

CanonicalClass reduce_to_table1(const MatrixPair& pair) {
    if (pair.dim() != 2) throw ShapeError("reduce_to_table1: 2x2 pair required");
    const std::optional<LinearMove> premixes[] = {
        std::nullopt,
        LinearMove{1.0, cplx(0.37, 0.41), cplx(0.53, -0.29), 1.0},
        LinearMove{1.0, cplx(0.23, -0.57), cplx(0.61, 0.17), 1.0},
    };
    for (const auto& premix : premixes) {
        if (auto out = try_reduce(pair, premix)) return *out;
    }
    throw DegenerateInput(
        "reduce_to_table1: diagonal normalization of A2 failed (singular move) "
        "even after generic remixes");
}

CanonicalClass classify(const MatrixPair& pair) {
    if (pair.dim() != 2) throw ShapeError("classify: 2x2 pair required");
    if (is_simdiag(pair)) {
        CanonicalClass out;
        out.tag = PairClass::SimultaneouslyDiagonalizable;
        return out;
    }
    return reduce_to_table1(pair);
}

}  // namespace pairnorm
