#include <catch2/catch_amalgamated.hpp>

#include "tmdual/random.hpp"
#include "tmdual/ratfunc.hpp"

using namespace tmdual;

TEST_CASE("prime field basics") {
    Fp a(7, 3), b(7, 5);
    REQUIRE((a * b).value() == 1);
    REQUIRE((a + b).value() == 1);
    REQUIRE((a - b).value() == 5);
    REQUIRE((a.inv() * a).value() == 1);
    REQUIRE_THROWS_AS(Fp(7, 0).inv(), arithmetic_error);
    REQUIRE_THROWS_AS(checked_prime(6), arithmetic_error);
    REQUIRE_THROWS_AS(checked_prime(1), arithmetic_error);
    REQUIRE(checked_prime(2) == 2);
}

TEST_CASE("dense polynomial division and gcd") {
    RandomSource rng(7);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (int i = 0; i < 50; ++i) {
            DensePoly a = rng.poly(p, 6);
            DensePoly b = rng.poly(p, 4, true);
            auto [q, r] = a.divmod(b);
            REQUIRE(q * b + r == a);
            REQUIRE(r.degree() < b.degree());
            DensePoly g = gcd(a, b);
            if (!a.is_zero()) REQUIRE(a.divmod(g).second.is_zero());
            REQUIRE(b.divmod(g).second.is_zero());
        }
    }
}

TEST_CASE("rational arithmetic canonical examples") {
    std::uint32_t p = 5;
    RatFunc th = RatFunc::theta(p);
    REQUIRE(th * th.inv() == RatFunc::one(p));

    RatFunc x = th + RatFunc::one(p);
    RatFunc sum = x;
    for (std::uint32_t i = 1; i < p; ++i) sum = sum + x;
    REQUIRE(sum.is_zero());

    RatFunc num = th * th - RatFunc::one(p);
    RatFunc den = th - RatFunc::one(p);
    RatFunc quot = num / den;
    REQUIRE(quot == th + RatFunc::one(p));
    REQUIRE(quot * den == num);
}

TEST_CASE("canonical form is representational") {
    std::uint32_t p = 3;
    // 2T / 2T^2 reduces to the monic-denominator form 1/T
    RatFunc a(DensePoly::monomial(p, 2, 1), DensePoly::monomial(p, 2, 2));
    REQUIRE(a == RatFunc::theta(p).inv());
    REQUIRE(a.den().lead() == 1);
}

TEST_CASE("field axioms on random triples") {
    RandomSource rng(11);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (int i = 0; i < 60; ++i) {
            RatFunc a = rng.ratfunc(p), b = rng.ratfunc(p), c = rng.ratfunc(p);
            REQUIRE((a + b) + c == a + (b + c));
            REQUIRE((a * b) * c == a * (b * c));
            REQUIRE(a * (b + c) == a * b + a * c);
            REQUIRE(a + (-a) == RatFunc::zero(p));
            if (!a.is_zero()) REQUIRE(a * a.inv() == RatFunc::one(p));
        }
    }
}

TEST_CASE("frobenius examples") {
    std::uint32_t p = 3;
    RatFunc th = RatFunc::theta(p);
    REQUIRE(th.frobenius(1) == th.pow(p));
    REQUIRE((th + RatFunc::one(p)).frobenius(1) == th.pow(p) + RatFunc::one(p));
    RatFunc c = RatFunc::integer(p, 2);
    REQUIRE(c.frobenius(4) == c);
    // 1/T twisted twice equals the power oracle x^(q^2)
    RatFunc inv_th = th.inv();
    REQUIRE(inv_th.frobenius(2) == inv_th.pow(p * p));
}

TEST_CASE("frobenius is a field homomorphism and composes") {
    RandomSource rng(13);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (int i = 0; i < 40; ++i) {
            RatFunc a = rng.ratfunc(p, 1), b = rng.ratfunc(p, 1);
            unsigned k = static_cast<unsigned>(rng.next(4));
            REQUIRE((a * b).frobenius(k) == a.frobenius(k) * b.frobenius(k));
            REQUIRE((a + b).frobenius(k) == a.frobenius(k) + b.frobenius(k));
            unsigned j = static_cast<unsigned>(rng.next(3));
            REQUIRE(a.frobenius(j + k) == a.frobenius(j).frobenius(k));
        }
    }
}

TEST_CASE("frobenius inverse detection") {
    std::uint32_t p = 3;
    RatFunc th = RatFunc::theta(p);
    auto y = th.pow(p).try_frobenius_inverse();
    REQUIRE(y);
    REQUIRE(*y == th);
    REQUIRE(!th.try_frobenius_inverse());
    RatFunc x = th.pow(2 * p) + RatFunc::one(p);
    auto z = x.try_frobenius_inverse();
    REQUIRE(z);
    REQUIRE(*z == th * th + RatFunc::one(p));
    REQUIRE(z->frobenius(1) == x);
}

TEST_CASE("frobenius inverse round trips") {
    RandomSource rng(17);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (int i = 0; i < 40; ++i) {
            RatFunc a = rng.ratfunc(p);
            auto back = a.frobenius(1).try_frobenius_inverse();
            REQUIRE(back);
            REQUIRE(*back == a);
            RatFunc b = rng.ratfunc(p);
            auto inv = b.try_frobenius_inverse();
            if (inv) REQUIRE(inv->frobenius(1) == b);
        }
    }
}
