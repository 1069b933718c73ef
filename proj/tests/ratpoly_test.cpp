#include "costar/poly.hpp"
#include "costar/rng.hpp"
#include "costar/serialization.hpp"

#include <gtest/gtest.h>

using namespace costar;

namespace {

const Var X = base_var(1);
const Var Y = base_var(2);

Poly px() { return Poly::var(X); }
Poly py() { return Poly::var(Y); }

TEST(Rat, Normalization) {
    Rat r(-3, 6);
    EXPECT_EQ(rat_num(r), BigInt(-1));
    EXPECT_EQ(rat_den(r), BigInt(2));
    EXPECT_EQ(Rat(0, 5), Rat(0));
    EXPECT_EQ(rat_den(Rat(0)), BigInt(1));
}

TEST(Poly, BasicArithmetic) {
    EXPECT_EQ((px() + py()) + (px() - py()), Poly(2) * px());
    EXPECT_EQ(px() * px(), Poly::var(X, 2));
    EXPECT_EQ(Poly() * (px() + py()), Poly());
    Poly p = px() * py() + Poly(3);
    EXPECT_EQ(p - p, Poly());
}

TEST(Poly, RingAxiomsRandomized) {
    SpaceConfig cfg(3, 1);
    Rng rng(42);
    for (int i = 0; i < 50; ++i) {
        Poly a = rng.poly(cfg, 3), b = rng.poly(cfg, 3), c = rng.poly(cfg, 3);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
    }
}

TEST(Poly, Derive) {
    Poly p = Poly::var(X, 2) * py(); // x^2 y
    EXPECT_EQ(derive(p, X), Poly(2) * px() * py());
    EXPECT_EQ(derive(Poly(3), Y), Poly());
    SpaceConfig cfg(3, 1);
    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        Poly a = rng.poly(cfg, 3), b = rng.poly(cfg, 3);
        // derivation property
        EXPECT_EQ(derive(a * b, X), derive(a, X) * b + a * derive(b, X));
        // partials commute
        EXPECT_EQ(derive(derive(a, X), Y), derive(derive(a, Y), X));
    }
}

TEST(Poly, Substitute) {
    Var a = a_var(1);
    Poly p = px() - Poly::var(a);
    EXPECT_EQ(substitute(p, X, Poly::var(a)), Poly());
    // Phi(a,x,b) = x b, x -> a gives a b
    Poly q = px() * Poly::var(b_var(1));
    EXPECT_EQ(substitute(q, X, Poly::var(a)), Poly::var(a) * Poly::var(b_var(1)));
    SpaceConfig cfg(2, 1);
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        Poly r = rng.poly(cfg, 3);
        std::map<Var, Poly> id{{X, px()}, {Y, py()}};
        EXPECT_EQ(substitute(r, id), r);
    }
}

TEST(Poly, SimultaneousSubstitution) {
    // simultaneity: swap x and y in x*y^2
    Poly p = px() * Poly::var(Y, 2);
    std::map<Var, Poly> swap{{X, py()}, {Y, px()}};
    EXPECT_EQ(substitute(p, swap), py() * Poly::var(X, 2));
}

TEST(Poly, Integrate) {
    Var t = t_var(1), t2 = t_var(2);
    EXPECT_EQ(integrate(Poly::var(t), t, Poly(0), Poly(1)), Poly(Rat(1, 2)));
    // int_0^{t1} t2 dt2 = t1^2/2
    EXPECT_EQ(integrate(Poly::var(t2), t2, Poly(0), Poly::var(t)),
              Poly::var(t, 2) * Rat(1, 2));
    // int_0^1 (a + t(b-a)) dt = (a+b)/2
    Poly a = Poly::var(a_var(1)), b = Poly::var(b_var(1));
    Poly integrand = a + Poly::var(t) * (b - a);
    EXPECT_EQ(integrate(integrand, t, Poly(0), Poly(1)), (a + b) * Rat(1, 2));
    EXPECT_THROW(integrate(Poly::var(t), t, Poly(0), Poly::var(t)), std::invalid_argument);
}

TEST(Poly, FundamentalTheorem) {
    SpaceConfig cfg(2, 0);
    Rng rng(11);
    Var v = base_var(1), fresh = aux_var(3, 1);
    for (int i = 0; i < 30; ++i) {
        Poly p = rng.poly(cfg, 3);
        Poly F = integrate(p, v, Poly(0), Poly::var(fresh));
        EXPECT_EQ(derive(F, fresh), substitute(p, v, Poly::var(fresh)));
    }
}

TEST(Poly, StringRoundTrip) {
    Poly p = poly_from_string("-3/2*x1^2*y1");
    Poly expect = Poly::monomial(mono_mul(Monomial{{X, 2}}, Monomial{{aux_var(0, 1), 1}}),
                                 Rat(-3, 2));
    EXPECT_EQ(p, expect);
    EXPECT_EQ(p.str(), "-3/2*x1^2*y1");
    EXPECT_EQ(poly_from_string(p.str()), p);

    SpaceConfig cfg(3, 1);
    Rng rng(5);
    for (int i = 0; i < 50; ++i) {
        Poly q = rng.poly(cfg, 3, 4);
        EXPECT_EQ(poly_from_string(q.str()), q);
    }
    EXPECT_EQ(poly_from_string("0"), Poly());
    EXPECT_EQ(poly_from_string("x1 + x2 - x1"), Poly::var(base_var(2)));
}

TEST(Poly, JsonRoundTrip) {
    Json j = Json::parse(R"({"monomials":[{"exps":{"x1":2,"y1":1},"num":-3,"den":2}]})");
    Poly p = poly_from_json(j);
    EXPECT_EQ(p, Poly::monomial(mono_mul(Monomial{{X, 2}}, Monomial{{aux_var(0, 1), 1}}),
                                Rat(-3, 2)));
    // bit-exact round trip
    EXPECT_EQ(poly_to_json(p), poly_to_json(poly_from_json(poly_to_json(p))));
    SpaceConfig cfg(3, 2);
    Rng rng(9);
    for (int i = 0; i < 50; ++i) {
        Poly q = rng.poly(cfg, 3, 4);
        EXPECT_EQ(poly_from_json(poly_to_json(q)), q);
        EXPECT_EQ(poly_to_json(q).dump(), poly_to_json(poly_from_json(poly_to_json(q))).dump());
    }
}

TEST(Poly, BigCoefficients) {
    Rat big = rat_from_string("123456789012345678901234567890/7");
    Poly p = Poly::monomial(Monomial{{X, 1}}, big);
    EXPECT_EQ(poly_from_json(poly_to_json(p)), p);
    EXPECT_EQ(poly_from_string(p.str()), p);
}

} // namespace
