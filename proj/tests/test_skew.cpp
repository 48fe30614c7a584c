#include <catch2/catch_amalgamated.hpp>

#include "tmdual/random.hpp"
#include "tmdual/skew.hpp"

using namespace tmdual;

namespace {
SkewPoly random_skew(RandomSource& rng, std::uint32_t p, int deg) {
    return rng.skew_poly(p, deg);
}
}  // namespace

TEST_CASE("commutation rule") {
    std::uint32_t p = 3;
    RatFunc th = RatFunc::theta(p);
    SkewPoly tau = SkewPoly::tau(p);
    SkewPoly lhs = tau * SkewPoly::constant(th);
    REQUIRE(lhs == SkewPoly::monomial(th.pow(p), 1));
}

TEST_CASE("carlitz square expansion") {
    std::uint32_t p = 3;
    RatFunc th = RatFunc::theta(p);
    SkewPoly c = SkewPoly::constant(th) + SkewPoly::tau(p);
    SkewPoly sq = c * c;
    REQUIRE(sq.coeff(0) == th * th);
    REQUIRE(sq.coeff(1) == th.pow(p) + th);
    REQUIRE(sq.coeff(2) == RatFunc::one(p));
    REQUIRE(sq.degree() == 2);

    SkewPoly one = SkewPoly::constant(RatFunc::one(p));
    REQUIRE(c * one == c);
    REQUIRE(one * c == c);
}

TEST_CASE("skew ring laws and degree additivity") {
    RandomSource rng(23);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (int i = 0; i < 30; ++i) {
            SkewPoly a = random_skew(rng, p, 3), b = random_skew(rng, p, 3),
                     c = random_skew(rng, p, 3);
            REQUIRE((a * b) * c == a * (b * c));
            REQUIRE(a * (b + c) == a * b + a * c);
            REQUIRE((a + b) * c == a * c + b * c);
            if (!a.is_zero() && !b.is_zero())
                REQUIRE((a * b).degree() == a.degree() + b.degree());
        }
    }
}

TEST_CASE("skew matrices witness noncommutativity") {
    std::uint32_t p = 3;
    SkewMatrix tau_m(p, 1, 1), th_m(p, 1, 1);
    tau_m.at(0, 0) = SkewPoly::tau(p);
    th_m.at(0, 0) = SkewPoly::constant(RatFunc::theta(p));
    SkewMatrix ab = tau_m * th_m, ba = th_m * tau_m;
    REQUIRE(ab != ba);
    REQUIRE(ab.at(0, 0) == SkewPoly::monomial(RatFunc::theta(p).pow(p), 1));
    REQUIRE(ba.at(0, 0) == SkewPoly::monomial(RatFunc::theta(p), 1));

    RandomSource rng(5);
    SkewMatrix b(p, 2, 3);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j) b.at(i, j) = random_skew(rng, p, 2);
    REQUIRE(SkewMatrix::identity(p, 2) * b == b);
    REQUIRE_THROWS_AS(b * b, dimension_error);
}

TEST_CASE("constant term map") {
    std::uint32_t p = 3;
    RatFunc th = RatFunc::theta(p);
    SkewPoly c = SkewPoly::constant(th) + SkewPoly::tau(p);
    REQUIRE(c.partial() == th);
    REQUIRE(SkewPoly::tau(p, 2).partial().is_zero());

    // theta I_3 plus the single nilpotent entry survives as the tau^0 part
    LMatrix m0 = LMatrix::theta_identity(p, 3);
    m0.at(2, 0) = RatFunc::one(p);
    SkewMatrix act = SkewMatrix::from_coeffs({m0, LMatrix(p, 3, 3), LMatrix(p, 3, 3),
                                              LMatrix::identity(p, 3)});
    REQUIRE(act.partial() == m0);

    RandomSource rng(29);
    for (int i = 0; i < 20; ++i) {
        SkewMatrix a(p, 2, 2), b(p, 2, 2);
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t s = 0; s < 2; ++s) {
                a.at(r, s) = random_skew(rng, p, 2);
                b.at(r, s) = random_skew(rng, p, 2);
            }
        REQUIRE((a * b).partial() == a.partial() * b.partial());
    }
}

TEST_CASE("point application") {
    std::uint32_t p = 3;
    RatFunc th = RatFunc::theta(p);
    SkewPoly carlitz = SkewPoly::constant(th) + SkewPoly::tau(p);
    REQUIRE(carlitz.apply_point(RatFunc::one(p)) == th + RatFunc::one(p));
    REQUIRE(carlitz.apply_point(RatFunc::zero(p)).is_zero());
    REQUIRE(carlitz.apply_point(th) == th * th + th.pow(p));

    RandomSource rng(31);
    for (int i = 0; i < 25; ++i) {
        SkewPoly a = random_skew(rng, p, 2), b = random_skew(rng, p, 2);
        RatFunc x = rng.ratfunc(p, 1);
        REQUIRE((a * b).apply_point(x) == a.apply_point(b.apply_point(x)));
    }
}
