#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "pairnorm/opspace.hpp"
#include "pairnorm/rng.hpp"

using namespace pairnorm;
using doctest::Approx;

namespace {

const LevelKElement kTestZ{CMat{{1.0, 0.0}, {0.0, 0.0}}, CMat{{0.0, 1.0}, {0.0, 0.0}}};

// Largest eigenvalue of a 2x2 Hermitian PSD matrix, quadratic formula.
double top_eig2(double a, cplx b, double d) {
    const double tr = a + d;
    const double disc = std::sqrt((a - d) * (a - d) + 4.0 * std::norm(b));
    return 0.5 * (tr + disc);
}

}  // namespace

TEST_CASE("level-2 defining norm at the distinguishing element") {
    // First-family pair with d = 0, b = 1, c = 0: the nonzero rows of the
    // assembled block collapse to 2x2 Gram matrices [[3,0],[0,0]] and
    // [[2,1],[1,1]], whose top eigenvalues pin the two norms.
    const MatrixPair fam(CMat{{1.0, 0.0}, {0.0, 0.0}}, CMat{{1.0, 1.0}, {0.0, 0.0}});
    CHECK(level2_defining_norm(fam, kTestZ) ==
          Approx(std::sqrt(top_eig2(3.0, 0.0, 0.0))).epsilon(1e-12));

    const MatrixPair famt(transpose(fam.a1()), transpose(fam.a2()));
    CHECK(level2_defining_norm(famt, kTestZ) ==
          Approx(std::sqrt(top_eig2(2.0, 1.0, 1.0))).epsilon(1e-12));

    CHECK(level2_defining_norm(fam, LevelKElement{CMat(2, 2), CMat(2, 2)}) == Approx(0.0));
}

TEST_CASE("transpose gap criterion") {
    const TransposeGap eg = transpose_gap(0.0, 1.0, 0.0);
    CHECK_FALSE(eg.equal);
    CHECK(eg.norm_a * eg.norm_a == Approx(3.0).epsilon(1e-12));
    CHECK(eg.norm_at * eg.norm_at == Approx(0.5 * (3.0 + std::sqrt(5.0))).epsilon(1e-12));

    CHECK(transpose_gap(0.0, 1.0, std::polar(1.0, 0.7)).equal);
    CHECK(transpose_gap(std::polar(1.0, 1.2), 2.0, 0.0).equal);
}

TEST_CASE("matricial MIN norm") {
    // level 1 is the underlying norm
    Rng rng(127);
    for (const MatrixPair& pair : {parabola_pair(), euclidean_pair(), bidisc_pair()}) {
        for (int i = 0; i < 3; ++i) {
            const Vec2 z = rng.unit_vec2();
            CMat z1(1, 1), z2(1, 1);
            z1(0, 0) = z.x;
            z2(0, 0) = z.y;
            CHECK(min_norm(pair, LevelKElement{z1, z2}, {33, 65}, {65, 129}) ==
                  Approx(a_norm(pair, z)).epsilon(1e-4));
        }
    }

    const LevelKElement diag_z{CMat{{1.0, 0.0}, {0.0, 0.0}}, CMat{{0.0, 0.0}, {0.0, 1.0}}};
    CHECK(min_norm(bidisc_pair(), diag_z, {33, 65}, {65, 129}) == Approx(1.0).epsilon(1e-5));
    CHECK(min_norm(bidisc_pair(), LevelKElement{CMat(2, 2), CMat(2, 2)}, {17, 33}, {17, 33}) ==
          Approx(0.0));
}

TEST_CASE("MIN structure cannot see the transpose, level 2 can") {
    const MatrixPair fam(CMat{{1.0, 0.0}, {0.0, 0.0}}, CMat{{1.0, 1.0}, {0.0, 0.0}});
    const MatrixPair famt(transpose(fam.a1()), transpose(fam.a2()));
    const double mn = min_norm(fam, kTestZ, {33, 65}, {65, 129});
    const double mnt = min_norm(famt, kTestZ, {33, 65}, {65, 129});
    CHECK(mn == Approx(mnt).epsilon(1e-5));
    CHECK(std::abs(level2_defining_norm(fam, kTestZ) - level2_defining_norm(famt, kTestZ)) >
          0.1);
}

TEST_CASE("MIN norm is dominated by the defining embedding norm") {
    // the embedding through the pair is one operator-space structure over
    // the same level-1 norm, so the smallest structure sits below it
    Rng rng(167);
    for (const MatrixPair& pair : {parabola_pair(), euclidean_pair(), bidisc_pair()}) {
        for (int i = 0; i < 5; ++i) {
            const LevelKElement z{rng.cmatrix(2, 2), rng.cmatrix(2, 2)};
            const double mn = min_norm(pair, z, {33, 65}, {65, 129});
            const double embed = level2_defining_norm(pair, z);
            CHECK(mn <= embed * (1.0 + 1e-5) + 1e-9);
        }
    }
}

TEST_CASE("MIN norm does not increase under compression") {
    Rng rng(131);
    for (const MatrixPair& pair : {parabola_pair(), euclidean_pair()}) {
        CMat z1 = rng.cmatrix(2, 2), z2 = rng.cmatrix(2, 2);
        const double full = min_norm(pair, LevelKElement{z1, z2}, {33, 65}, {65, 129});
        CMat c1 = z1, c2 = z2;
        for (int i = 0; i < 2; ++i) {
            c1(1, i) = c1(i, 1) = 0.0;
            c2(1, i) = c2(i, 1) = 0.0;
        }
        const double compressed = min_norm(pair, LevelKElement{c1, c2}, {33, 65}, {65, 129});
        CHECK(compressed <= full + 1e-6);
    }
}

TEST_CASE("scalar contraction criterion") {
    CMat b1(1, 1);
    b1(0, 0) = 1.0;
    CHECK(dmp_contraction_ok(0.0, 0.0, b1));
    CHECK_FALSE(dmp_contraction_ok(1.0, 0.0, b1));
    CMat bh(1, 1);
    bh(0, 0) = 0.5;
    CHECK(dmp_contraction_ok(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), bh));
}

TEST_CASE("block norm reduction") {
    Rng rng(137);
    CMat b = rng.cmatrix(2, 3);
    NormPairResult r = block_norm_reduction(0.0, 0.0, b);
    CHECK(r.full == Approx(op_norm(b)).epsilon(1e-12));
    CHECK(r.reduced == Approx(op_norm(b)).epsilon(1e-12));

    r = block_norm_reduction(cplx(0.3), cplx(0.0, 0.5), CMat(2, 3));
    CHECK(r.full == Approx(0.5).epsilon(1e-12));
    CHECK(r.reduced == Approx(0.5).epsilon(1e-12));

    for (int i = 0; i < 100; ++i) {
        const int m = 1 + static_cast<int>(rng.uniform() * 4);
        const int n = 1 + static_cast<int>(rng.uniform() * 4);
        const cplx a1 = std::polar(1.3 * rng.uniform(), kTwoPi * rng.uniform());
        const cplx a2 = std::polar(1.3 * rng.uniform(), kTwoPi * rng.uniform());
        const NormPairResult rr = block_norm_reduction(a1, a2, rng.cmatrix(m, n));
        CHECK(std::abs(rr.full - rr.reduced) <= 1e-9);
    }
}

TEST_CASE("criterion matches block contractivity") {
    Rng rng(139);
    for (int i = 0; i < 100; ++i) {
        const int m = 1 + static_cast<int>(rng.uniform() * 3);
        const int n = 1 + static_cast<int>(rng.uniform() * 3);
        const cplx a1 = std::polar(0.95 * rng.uniform(), kTwoPi * rng.uniform());
        const cplx a2 = std::polar(0.95 * rng.uniform(), kTwoPi * rng.uniform());
        CMat b = rng.cmatrix(m, n);
        if (op_norm(b) < 1e-6) b(0, 0) += 1.0;
        const double defect =
            std::sqrt((1.0 - std::norm(a1)) * (1.0 - std::norm(a2)));
        b *= cplx(defect * ((i % 2 == 0) ? 0.9 : 1.1) / op_norm(b));
        const bool criterion = dmp_contraction_ok(a1, a2, b);
        const bool contraction = block_norm_reduction(a1, a2, b).full <= 1.0 + 1e-9;
        CHECK(criterion == contraction);
    }
}

TEST_CASE("embedding equivalence") {
    Rng rng(149);

    // k = 1 must agree with the scalar block reduction
    {
        const CMat b = rng.cmatrix(2, 2);
        CMat one(1, 1);
        one(0, 0) = 1.0;
        CMat zero(1, 1);
        const EmbeddingSpec spec(cplx(0.4, 0.1), cplx(-0.2, 0.6), b);
        const NormPairResult ee = embedding_equivalence(spec, LevelKElement{one, one});
        const NormPairResult br =
            block_norm_reduction(spec.alpha1 + 0.0, spec.alpha2 + 0.0, b);
        // with Z1 = Z2 = 1 the assembled blocks coincide
        CHECK(ee.full == Approx(br.full).epsilon(1e-12));
        CHECK(std::abs(ee.full - ee.reduced) <= 1e-9);

        const NormPairResult dz = embedding_equivalence(spec, LevelKElement{one, zero});
        CHECK(dz.full == Approx(std::max(std::abs(spec.alpha1), std::abs(spec.alpha2)))
                             .epsilon(1e-12));
    }

    // full/reduced equality and invariance across equal-norm blocks
    for (int i = 0; i < 25; ++i) {
        const int k = 1 + static_cast<int>(rng.uniform() * 3);
        const int m = 1 + static_cast<int>(rng.uniform() * 3);
        const int n = 1 + static_cast<int>(rng.uniform() * 3);
        CMat b = rng.cmatrix(m, n);
        if (op_norm(b) < 1e-6) b(0, 0) += 1.0;
        const EmbeddingSpec spec(std::polar(1.2 * rng.uniform(), kTwoPi * rng.uniform()),
                                 std::polar(1.2 * rng.uniform(), kTwoPi * rng.uniform()), b);
        const LevelKElement z{rng.cmatrix(k, k), rng.cmatrix(k, k)};
        const NormPairResult ee = embedding_equivalence(spec, z);
        CHECK(std::abs(ee.full - ee.reduced) <= 1e-8);

        CMat b2 = rng.cmatrix(m, n);
        if (op_norm(b2) < 1e-6) b2(0, 0) += 1.0;
        b2 *= cplx(op_norm(b) / op_norm(b2));
        const NormPairResult e2 = embedding_equivalence(EmbeddingSpec(spec.alpha1, spec.alpha2, b2), z);
        CHECK(std::abs(e2.full - ee.full) <= 1e-8);
    }

    CHECK_THROWS_AS(EmbeddingSpec(1.0, 1.0, CMat(2, 2)), std::invalid_argument);
}
