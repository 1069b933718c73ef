#include "costar/hkr.hpp"
#include "costar/rng.hpp"

#include <gtest/gtest.h>

using namespace costar;

namespace {

const SpaceConfig C21(2, 1);

Poly px() { return Poly::var(base_var(1)); }
Poly py() { return Poly::var(base_var(2)); }

TEST(Psi, Examples) {
    // psi of a function is the function
    MultiVec f = MultiVec::scalar(C21, px() * py());
    EXPECT_EQ(psi_hkr(f), PolyDiffOp::from_poly(C21, px() * py()));
    // psi(dx ^ dy) = (dx (x) dy - dy (x) dx)/2
    PolyDiffOp got = psi_hkr(MultiVec::basis(C21, {1, 2}));
    PolyDiffOp expect(C21, 2);
    expect.add_term({MultiIdx::unit(2, 1), MultiIdx::unit(2, 2)}, Poly(Rat(1, 2)));
    expect.add_term({MultiIdx::unit(2, 2), MultiIdx::unit(2, 1)}, Poly(Rat(-1, 2)));
    EXPECT_EQ(got, expect);
}

TEST(Psi, ImageConsistsOfCocycles) {
    Rng rng(3);
    SpaceConfig cfg(3, 1);
    for (int i = 0; i < 50; ++i) {
        MultiVec x = rng.multivec(cfg, rng.uniform(0, 3), 2);
        EXPECT_TRUE(hochschild_b(psi_hkr(x)).is_zero());
        EXPECT_TRUE(hochschild_b(psi1_hkr(x)).is_zero());
    }
}

TEST(Pi, Examples) {
    PolyDiffOp op(C21, 2);
    op.add_term({MultiIdx::unit(2, 1), MultiIdx::unit(2, 2)}, Poly(1));
    EXPECT_EQ(pi_hkr(op), MultiVec::basis(C21, {1, 2}));
    // second-order parts die
    PolyDiffOp second(C21, 1);
    MultiIdx two(2);
    two.o[0] = 2;
    second.add_term({two}, Poly(1));
    EXPECT_TRUE(pi_hkr(second).is_zero());
}

TEST(Pi, SectionOfPsiAndPsi1) {
    Rng rng(5);
    SpaceConfig cfg(3, 2);
    for (int i = 0; i < 50; ++i) {
        MultiVec x = rng.multivec(cfg, rng.uniform(0, 3), 2);
        EXPECT_EQ(pi_hkr(psi_hkr(x)), x);
        EXPECT_EQ(pi_hkr(psi1_hkr(x)), x);
    }
}

TEST(Pi, KillsCoboundaries) {
    Rng rng(7);
    SpaceConfig cfg(2, 1);
    for (int i = 0; i < 50; ++i) {
        PolyDiffOp xi = rng.diffop(cfg, rng.uniform(1, 2), 2, 2);
        EXPECT_TRUE(pi_hkr(hochschild_b(xi)).is_zero());
    }
}

TEST(Psi1, BlockExample) {
    // n=2, l=1: psi1(dx ^ dy) = -dy (x) dx
    PolyDiffOp got = psi1_hkr(MultiVec::basis(C21, {1, 2}));
    PolyDiffOp expect(C21, 2);
    expect.add_term({MultiIdx::unit(2, 2), MultiIdx::unit(2, 1)}, Poly(-1));
    EXPECT_EQ(got, expect);
    // purely tangential input: psi1 = psi
    SpaceConfig c31(3, 1);
    MultiVec tang = MultiVec::basis(c31, {1, 2}, px());
    EXPECT_EQ(psi1_hkr(tang), psi_hkr(tang));
}

TEST(Psi1, SendsAdaptedToAdapted) {
    Rng rng(11);
    for (const SpaceConfig &cfg : {SpaceConfig(2, 1), SpaceConfig(3, 2)})
        for (int i = 0; i < 50; ++i) {
            MultiVec x = rng.adapted_multivec(cfg, rng.uniform(0, 3), 2);
            ASSERT_TRUE(is_adapted_mv(x));
            EXPECT_TRUE(is_adapted_op(psi1_hkr(x)));
        }
}

TEST(Primitive, RoundTrip) {
    Rng rng(13);
    SpaceConfig cfg(2, 1);
    for (int i = 0; i < 10; ++i) {
        PolyDiffOp xi = rng.diffop(cfg, 1, 1, 1);
        PolyDiffOp phi = hochschild_b(xi);
        PolyDiffOp prim = primitive(phi);
        EXPECT_EQ(hochschild_b(prim), phi);
    }
}

TEST(Primitive, HarmonicInputReportsClass) {
    PolyDiffOp phi = psi_hkr(MultiVec::basis(C21, {1, 2}));
    try {
        primitive(phi);
        FAIL() << "expected NotExact";
    } catch (const NotExact &e) {
        EXPECT_EQ(e.cls, MultiVec::basis(C21, {1, 2}));
    }
}

TEST(Primitive, ZeroAndNotCocycle) {
    PolyDiffOp zero(C21, 2);
    EXPECT_TRUE(primitive(zero).is_zero());
    PolyDiffOp bad(C21, 1);
    bad.add_term({MultiIdx::unit(2, 1)}, px()); // x d/dx is not a cocycle? b(x d/dx) != 0
    // b of a vector field vanishes iff it is a derivation; x d/dx is one, so
    // use a genuinely non-closed cochain instead:
    PolyDiffOp nc(C21, 2);
    MultiIdx two(2);
    two.o[0] = 2;
    nc.add_term({two, MultiIdx(2)}, px());
    if (!hochschild_b(nc).is_zero())
        EXPECT_THROW(primitive(nc), NotACocycle);
}

TEST(Primitive, AdaptedCorrection) {
    Rng rng(17);
    SpaceConfig cfg(2, 1);
    int done = 0;
    for (int i = 0; done < 8 && i < 40; ++i) {
        PolyDiffOp xi = rng.adapted_diffop(cfg, rng.uniform(1, 2), 1, 1);
        if (!is_adapted_op(xi))
            continue;
        PolyDiffOp phi = hochschild_b(xi); // adapted cocycle, exact
        if (phi.is_zero())
            continue;
        PolyDiffOp prim = primitive(phi);
        EXPECT_EQ(hochschild_b(prim), phi);
        EXPECT_TRUE(is_adapted_op(prim));
        ++done;
    }
    EXPECT_GE(done, 5);
}

TEST(Decompose, RoundTrip) {
    Rng rng(19);
    SpaceConfig cfg(2, 1);
    for (int i = 0; i < 6; ++i) {
        MultiVec x = rng.multivec(cfg, 2, 1);
        PolyDiffOp eta = rng.diffop(cfg, 1, 1, 1);
        PolyDiffOp phi = psi1_hkr(x) + hochschild_b(eta);
        HkrDecomposition d = decompose(phi);
        EXPECT_EQ(d.harmonic, x);
        EXPECT_EQ(psi1_hkr(d.harmonic) + hochschild_b(d.primitive), phi);
    }
}

TEST(Decompose, MuHasTrivialClass) {
    PolyDiffOp mu = PolyDiffOp::mu(C21);
    HkrDecomposition d = decompose(mu);
    EXPECT_TRUE(d.harmonic.is_zero());
    EXPECT_EQ(hochschild_b(d.primitive), mu);
}

TEST(Decompose, BracketDefectApplHKR4) {
    // [psi1 X, psi1 Y]_G - psi1([X,Y]_S) is an exact adapted cocycle; its
    // decomposition has zero harmonic part and an adapted primitive.
    SpaceConfig cfg(2, 1);
    MultiVec X = MultiVec::basis(cfg, {1, 2});
    MultiVec Y = py() * MultiVec::basis(cfg, {2});
    ASSERT_TRUE(is_adapted_mv(X));
    ASSERT_TRUE(is_adapted_mv(Y));
    PolyDiffOp defect = gerst_bracket(psi1_hkr(X), psi1_hkr(Y)) - psi1_hkr(schouten(X, Y));
    ASSERT_TRUE(is_adapted_op(defect));
    HkrDecomposition d = decompose(defect);
    EXPECT_TRUE(d.harmonic.is_zero());
    EXPECT_TRUE(is_adapted_op(d.primitive));
    EXPECT_EQ(hochschild_b(d.primitive), defect);
}

TEST(Decompose, BracketDefectRandomAdapted) {
    Rng rng(23);
    SpaceConfig cfg(2, 1);
    int done = 0;
    for (int i = 0; done < 5 && i < 40; ++i) {
        MultiVec X = rng.adapted_multivec(cfg, rng.uniform(1, 2), 1, 1);
        MultiVec Y = rng.adapted_multivec(cfg, rng.uniform(1, 2), 1, 1);
        PolyDiffOp defect =
            gerst_bracket(psi1_hkr(X), psi1_hkr(Y)) - psi1_hkr(schouten(X, Y));
        if (defect.is_zero())
            continue;
        ASSERT_TRUE(is_adapted_op(defect));
        ASSERT_TRUE(hochschild_b(defect).is_zero());
        HkrDecomposition d = decompose(defect);
        EXPECT_TRUE(d.harmonic.is_zero());
        EXPECT_TRUE(is_adapted_op(d.primitive));
        EXPECT_EQ(hochschild_b(d.primitive), defect);
        ++done;
    }
    EXPECT_GE(done, 3);
}

TEST(Decompose, CupDefectApplHKR5) {
    // cup compatibility of the adapted HKR map, two exact defects: the graded
    // cup commutator and the multiplicativity defect. (Their three-term
    // combination carries the class -X^Y, so it cannot be exact; these two
    // are the statements with vanishing class.)
    Rng rng(29);
    SpaceConfig cfg(2, 1);
    int done = 0;
    for (int i = 0; done < 5 && i < 60; ++i) {
        int k = rng.uniform(1, 2), l = rng.uniform(1, 2);
        MultiVec X = rng.multivec(cfg, k, 1, 1);
        MultiVec Y = rng.multivec(cfg, l, 1, 1);
        int sgn = (k * l) % 2 ? -1 : 1;
        PolyDiffOp comm_defect =
            cup(psi1_hkr(X), psi1_hkr(Y)) - cup(psi1_hkr(Y), psi1_hkr(X)) * Rat(sgn);
        PolyDiffOp mult_defect = cup(psi1_hkr(X), psi1_hkr(Y)) - psi1_hkr(wedge(X, Y));
        for (PolyDiffOp *defect : {&comm_defect, &mult_defect}) {
            if (defect->is_zero())
                continue;
            ASSERT_TRUE(hochschild_b(*defect).is_zero());
            HkrDecomposition d = decompose(*defect);
            EXPECT_TRUE(d.harmonic.is_zero());
            EXPECT_EQ(hochschild_b(d.primitive), *defect);
            ++done;
        }
    }
    EXPECT_GE(done, 3);
}

} // namespace
