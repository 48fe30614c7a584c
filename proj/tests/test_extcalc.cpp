#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace tmdual;
using testutil::expected_top_seed_action;

TEST_CASE("transform twist tracks the Frobenius of the value") {
    std::uint32_t p = 3;
    RandomSource rng(43);
    for (int i = 0; i < 20; ++i) {
        CoeffTransform t(rng.skew_poly(p, 3));
        RatFunc c = rng.ratfunc(p, 1);
        REQUIRE(t.twisted().eval(c) == t.eval(c).frobenius(1));
        RatFunc b = rng.ratfunc(p, 1);
        REQUIRE(t.scaled(b).eval(c) == b * t.eval(c));
        auto back = t.twisted().try_untwist();
        REQUIRE(back);
        REQUIRE(*back == t);
    }
}

TEST_CASE("inner biderivation of the d=1 quadratic source") {
    std::uint32_t p = 3;
    RatFunc a = RatFunc::theta(p) + RatFunc::one(p);
    LMatrix m0 = LMatrix::theta_identity(p, 1);
    LMatrix m1(p, 1, 1);
    m1.at(0, 0) = a;
    TModule phi = TModule::make({m0, m1, LMatrix::identity(p, 1)});

    BiderState u(p, 1);
    u.add_term(0, 0, CoeffTransform::unit(p));
    BiderState delta = inner_biderivation(u, phi);
    // (c a - c^(1)) tau + c tau^2: transforms a - tau at degree 1, 1 at degree 2
    REQUIRE(delta.term(0, 1).poly() == SkewPoly::constant(a) - SkewPoly::tau(p));
    REQUIRE(delta.term(0, 2).poly() == SkewPoly::constant(RatFunc::one(p)));
    REQUIRE(delta.term(0, 0).is_zero());

    BiderState zero(p, 1);
    REQUIRE(inner_biderivation(zero, phi).is_zero());
}

TEST_CASE("generator degree profile") {
    RandomSource rng(47);
    for (std::uint32_t p : {2u, 3u}) {
        for (int trial = 0; trial < 10; ++trial) {
            std::size_t d = 1 + rng.next(3);
            int n = 2 + static_cast<int>(rng.next(2));
            TModule phi = rng.strictly_pure(p, d, n);
            LMatrix b0 = phi.coeff(n).inverse();
            std::size_t i = rng.next(d);
            int k = static_cast<int>(rng.next(3));
            // U = c tau^k E_i B_0
            BiderState u(p, d);
            for (std::size_t j = 0; j < d; ++j)
                u.add_term(j, k,
                           CoeffTransform::constant(b0.at(i, j).frobenius(k)));
            BiderState delta = inner_biderivation(u, phi);
            for (std::size_t j = 0; j < d; ++j) {
                int deg = -1;
                for (const auto& [kk, t] : delta.column(j)) {
                    (void)t;
                    deg = std::max(deg, kk);
                }
                if (j == i) {
                    REQUIRE(deg == n + k);
                    REQUIRE(delta.term(j, n + k).poly() ==
                            SkewPoly::constant(RatFunc::one(p)));
                } else {
                    REQUIRE(deg < n + k);
                }
            }
        }
    }
}

TEST_CASE("inner classes reduce to zero with sound certificates") {
    RandomSource rng(53);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (int trial = 0; trial < 12; ++trial) {
            std::size_t d = 1 + rng.next(2);
            int n = 2 + static_cast<int>(rng.next(2));
            TModule phi = rng.strictly_pure(p, d, n);
            std::vector<SkewPoly> row;
            for (std::size_t j = 0; j < d; ++j) row.push_back(rng.skew_poly(p, n));
            BiderState u = BiderState::from_skew_row(row, p);
            BiderState delta = inner_biderivation(u, phi);
            StrictlyPureStrategy strat(phi, true);
            ReduceResult rr = reduce(delta, phi, strat, strat.zero_shape());
            REQUIRE(rr.state.is_zero());
            REQUIRE(certificate_matches(delta, rr, phi));
        }
    }
}

TEST_CASE("reduction is idempotent on canonical input") {
    std::uint32_t p = 3;
    RandomSource rng(59);
    TModule phi = rng.strictly_pure(p, 2, 3);

    StrictlyPureStrategy full(phi, false);
    CanonicalShape full_shape = full.full_shape();
    std::vector<SkewPoly> row{rng.skew_poly(p, 4), rng.skew_poly(p, 4)};
    BiderState s = BiderState::from_skew_row(row, p);
    ReduceResult rr = reduce(s, phi, full, full_shape);
    ReduceResult rr2 = reduce(rr.state, phi, full, full_shape);
    REQUIRE(rr2.state == rr.state);
    REQUIRE(rr2.kills == 0);

    // Der_0 variant on a vanishing tau^0 part
    StrictlyPureStrategy zero(phi, true);
    CanonicalShape zero_shape = zero.zero_shape();
    std::vector<SkewPoly> row0{SkewPoly::tau(p) * rng.skew_poly(p, 3),
                               SkewPoly::tau(p) * rng.skew_poly(p, 3)};
    BiderState s0 = BiderState::from_skew_row(row0, p);
    ReduceResult zr = reduce(s0, phi, zero, zero_shape);
    ReduceResult zr2 = reduce(zr.state, phi, zero, zero_shape);
    REQUIRE(zr2.state == zr.state);
    REQUIRE(zr2.kills == 0);

    // a tau^0 term in a Der_0 reduction is a named misuse
    std::vector<SkewPoly> bad{SkewPoly::constant(RatFunc::one(p)), SkewPoly::zero(p)};
    REQUIRE_THROWS_AS(reduce(BiderState::from_skew_row(bad, p), phi, zero, zero_shape),
                      precondition_error);
}

TEST_CASE("top seed action matches the matrix oracle") {
    RandomSource rng(61);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (int trial = 0; trial < 8; ++trial) {
            std::size_t d = 1 + rng.next(3);
            int n = 2 + static_cast<int>(rng.next(3));
            TModule phi = rng.strictly_pure(p, d, n);
            BiderState seed(p, d);
            seed.add_term(0, n - 1, CoeffTransform::unit(p));
            StrictlyPureStrategy strat(phi, true);
            ReduceResult rr = reduce(carlitz_t_times(seed), phi, strat, strat.zero_shape());
            REQUIRE(rr.state == expected_top_seed_action(phi));
        }
    }
}

TEST_CASE("generic strategy agrees with the strictly pure one") {
    RandomSource rng(67);
    for (std::uint32_t p : {2u, 3u}) {
        for (int trial = 0; trial < 6; ++trial) {
            std::size_t d = 1 + rng.next(2);
            int n = 2 + static_cast<int>(rng.next(2));
            TModule phi = rng.strictly_pure(p, d, n);
            StrictlyPureStrategy sp(phi, true);
            GenericStrategy gen(phi, true);
            CanonicalShape shape_sp = sp.zero_shape();
            CanonicalShape shape_gen = gen.zero_shape();
            REQUIRE(shape_sp.slots() == shape_gen.slots());
            SkewMatrix a = action_matrix(phi, shape_sp.slots(), sp, shape_sp);
            SkewMatrix b = action_matrix(phi, shape_gen.slots(), gen, shape_gen);
            REQUIRE(a == b);
        }
    }
}

TEST_CASE("evaluation commutes with reduction") {
    RandomSource rng(71);
    for (std::uint32_t p : {2u, 3u}) {
        for (int trial = 0; trial < 8; ++trial) {
            std::size_t d = 1 + rng.next(2);
            int n = 2 + static_cast<int>(rng.next(2));
            TModule phi = rng.strictly_pure(p, d, n);
            StrictlyPureStrategy strat(phi, true);
            CanonicalShape shape = strat.zero_shape();
            BiderState seed(p, d);
            seed.add_term(rng.next(d), 1 + static_cast<int>(rng.next(n - 1)),
                          CoeffTransform::unit(p));
            BiderState state = carlitz_t_times(seed);
            RatFunc c = rng.ratfunc(p, 1);
            BiderState sym = reduce(state, phi, strat, shape).state.substitute(c);
            BiderState conc = reduce(state.substitute(c), phi, strat, shape).state;
            REQUIRE(sym == conc);
        }
    }
}

TEST_CASE("tau-degree one sources have no terminating elimination") {
    // every generator's top term is semilinear there, so the strategies
    // refuse instead of looping
    std::uint32_t p = 3;
    TModule c = TModule::carlitz(p);
    REQUIRE_THROWS_AS(StrictlyPureStrategy(c, true), precondition_error);
    REQUIRE_THROWS_AS(GenericStrategy(c, true), precondition_error);
}

TEST_CASE("missing inverse Frobenius raises no_forward_pivot") {
    std::uint32_t p = 3;
    TModule dual = dual_via_reduction(nilpotent_counterexample(p, RatFunc::one(p)));
    GenericStrategy strat(dual, true);
    CanonicalShape shape = strat.zero_shape();
    // a concrete tau^2 term on the twist-pivot column; theta is not a cube
    std::vector<SkewPoly> row(7, SkewPoly::zero(p));
    row[4] = SkewPoly::monomial(RatFunc::theta(p), 2);
    BiderState s = BiderState::from_skew_row(row, p);
    REQUIRE_THROWS_AS(reduce(s, dual, strat, shape), no_forward_pivot_error);
}

TEST_CASE("full-shape reduction: certificates and canonicality under fuzz") {
    RandomSource rng(137);
    for (std::uint32_t p : {2u, 3u}) {
        for (int trial = 0; trial < 10; ++trial) {
            std::size_t d = 1 + rng.next(3);
            int n = 2 + static_cast<int>(rng.next(2));
            TModule phi = rng.strictly_pure(p, d, n);
            StrictlyPureStrategy strat(phi, false);
            CanonicalShape shape = strat.full_shape();
            // entries stay polynomial and low degree: every extra tau-level
            // nests one more Frobenius twist into the exact values
            std::vector<SkewPoly> row;
            for (std::size_t j = 0; j < d; ++j) {
                std::vector<RatFunc> cs;
                for (int k = 0; k <= n + 2; ++k)
                    cs.push_back(rng.small_entry(p));
                row.push_back(SkewPoly(p, std::move(cs)));
            }
            BiderState s = BiderState::from_skew_row(row, p);
            ReduceResult rr = reduce(s, phi, strat, shape);
            REQUIRE(certificate_matches(s, rr, phi));
            for (std::size_t j = 0; j < d; ++j)
                for (const auto& [k, t] : rr.state.column(j)) {
                    (void)t;
                    REQUIRE(shape.contains(j, k));
                }
            // the tau^0 part passes through reductions untouched
            for (std::size_t j = 0; j < d; ++j)
                REQUIRE(rr.state.term(j, 0) == s.term(j, 0));
        }
    }
}

TEST_CASE("dual-shaped full reduction under fuzz") {
    RandomSource rng(139);
    for (int trial = 0; trial < 8; ++trial) {
        std::uint32_t p = trial % 2 ? 2u : 3u;
        std::size_t d = 1 + rng.next(2);
        std::size_t n = 2 + rng.next(2);
        TModule phi = rng.strictly_pure(p, d, n);
        DualData dd = DualData::make(phi);
        DualSpecialStrategy strat(dd);
        CanonicalShape shape = strat.full_shape();
        std::vector<SkewPoly> row;
        for (std::size_t j = 0; j < dd.width(); ++j) {
            std::vector<RatFunc> cs;
            for (int k = 0; k <= 3; ++k) cs.push_back(rng.small_entry(p));
            row.push_back(SkewPoly(p, std::move(cs)));
        }
        BiderState s = BiderState::from_skew_row(row, p);
        ReduceResult rr = reduce(s, strat.source(), strat, shape);
        REQUIRE(certificate_matches(s, rr, strat.source()));
        for (std::size_t j = 0; j < dd.width(); ++j)
            for (const auto& [k, t] : rr.state.column(j)) {
                (void)t;
                REQUIRE(shape.contains(j, k));
            }
    }
}

TEST_CASE("action over all slots is block triangular with theta quotient") {
    std::uint32_t p = 3;
    RandomSource rng(73);
    TModule phi = rng.strictly_pure(p, 2, 3);
    StrictlyPureStrategy strat(phi, false);
    CanonicalShape full = strat.full_shape();
    std::vector<Slot> slots = strat.zero_shape().slots();
    for (std::size_t i = 0; i < phi.dim(); ++i) slots.push_back({i, 0});
    SkewMatrix act = action_matrix(phi, slots, strat, full);
    std::size_t s = phi.dim() * (phi.deg_tau() - 1);
    for (std::size_t i = s; i < slots.size(); ++i)
        for (std::size_t j = 0; j < s; ++j) REQUIRE(act.at(i, j).is_zero());
    for (std::size_t i = s; i < slots.size(); ++i)
        REQUIRE(act.at(i, i) == SkewPoly::constant(RatFunc::theta(p)));
}
