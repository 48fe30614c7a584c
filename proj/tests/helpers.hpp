#pragma once

// Shared builders and independent oracles for the test and acceptance
// suites. Everything here is constructed from plain matrix arithmetic so it
// stays independent of the reduction engine it checks.

#include <array>
#include <vector>

#include "tmdual/tmdual.hpp"

namespace testutil {

using namespace tmdual;

struct WorkedExample {
    std::array<RatFunc, 4> alpha;
    std::array<RatFunc, 4> beta;
    RatFunc gamma;

    std::uint32_t p() const { return gamma.modulus(); }

    TModule module() const {
        std::uint32_t q = p();
        LMatrix a1(q, 2, 2), a2(q, 2, 2), a3(q, 2, 2);
        a1.at(0, 0) = alpha[0];
        a1.at(0, 1) = alpha[1];
        a1.at(1, 0) = alpha[2];
        a1.at(1, 1) = alpha[3];
        a2.at(0, 0) = beta[0];
        a2.at(0, 1) = beta[1];
        a2.at(1, 0) = beta[2];
        a2.at(1, 1) = beta[3];
        a3.at(0, 0) = RatFunc::one(q);
        a3.at(1, 0) = gamma;
        a3.at(1, 1) = RatFunc::one(q);
        return TModule::make({LMatrix::theta_identity(q, 2), a1, a2, a3});
    }

    LMatrix gauge() const {
        LMatrix g = LMatrix::identity(p(), 2);
        g.at(1, 0) = gamma;
        return g;
    }

    // beta-tilde entries of B_2 = A_3^-1 A_2
    RatFunc beta3t() const { return beta[2] - gamma * beta[0]; }
    RatFunc beta4t() const { return beta[3] - gamma * beta[1]; }

    /// printed tau^1 coefficient of the dual
    LMatrix expected_dual_tau1() const {
        std::uint32_t q = p();
        LMatrix m(q, 4, 4);
        m.at(0, 1) = -alpha[0];
        m.at(0, 3) = -(alpha[2] - gamma * alpha[0]);
        m.at(1, 0) = RatFunc::one(q);
        m.at(1, 1) = -beta[0];
        m.at(1, 3) = -beta3t();
        m.at(2, 1) = -alpha[1];
        m.at(2, 3) = -(alpha[3] - gamma * alpha[1]);
        m.at(3, 1) = -beta[1];
        m.at(3, 2) = RatFunc::one(q);
        m.at(3, 3) = -beta4t();
        return m;
    }

    /// printed tau^2 coefficient of the dual
    LMatrix expected_dual_tau2() const {
        std::uint32_t q = p();
        LMatrix m(q, 4, 4);
        m.at(0, 1) = RatFunc::one(q);
        m.at(0, 3) = -gamma.frobenius(1);
        m.at(2, 3) = RatFunc::one(q);
        return m;
    }

    /// printed double dual: theta I + s tau + (B_2 twisted) tau^2 +
    /// [[1,0],[gamma^(3),1]] tau^3, with s = B_1 A_3^(1)
    TModule expected_bidual() const {
        std::uint32_t q = p();
        RatFunc g1 = gamma.frobenius(1), g2 = gamma.frobenius(2), g3 = gamma.frobenius(3);
        RatFunc a3t = alpha[2] - gamma * alpha[0];
        RatFunc a4t = alpha[3] - gamma * alpha[1];
        LMatrix s(q, 2, 2);
        s.at(0, 0) = alpha[0] + alpha[1] * g1;
        s.at(0, 1) = alpha[1];
        s.at(1, 0) = a3t + a4t * g1;
        s.at(1, 1) = a4t;
        LMatrix t2(q, 2, 2);
        t2.at(0, 0) = beta[0] + beta[1] * g2;
        t2.at(0, 1) = beta[1];
        t2.at(1, 0) = beta3t() + beta4t() * g2;
        t2.at(1, 1) = beta4t();
        LMatrix t3 = LMatrix::identity(q, 2);
        t3.at(1, 0) = g3;
        return TModule::make({LMatrix::theta_identity(q, 2), s, t2, t3});
    }
};

inline WorkedExample random_worked_example(RandomSource& rng, std::uint32_t p, int gamma_kind) {
    WorkedExample w{{RatFunc::zero(p), RatFunc::zero(p), RatFunc::zero(p), RatFunc::zero(p)},
                    {RatFunc::zero(p), RatFunc::zero(p), RatFunc::zero(p), RatFunc::zero(p)},
                    RatFunc::zero(p)};
    for (int i = 0; i < 4; ++i) {
        w.alpha[i] = rng.small_entry(p);
        w.beta[i] = rng.small_entry(p);
    }
    if (gamma_kind == 1)
        w.gamma = RatFunc::theta(p);
    else if (gamma_kind == 2)
        w.gamma = rng.small_entry(p);
    return w;  // gamma_kind 0: gamma stays zero
}

/// Independent oracle for the reduced action of t on the degree-(n-1) seed
/// of coordinate 0: built directly from the B-matrices.
inline BiderState expected_top_seed_action(const TModule& phi) {
    std::uint32_t p = phi.modulus();
    std::size_t d = phi.dim();
    int n = phi.deg_tau();
    LMatrix b0 = phi.coeff(n).inverse();
    BiderState out(p, d);
    RatFunc theta = RatFunc::theta(p);
    for (std::size_t j = 0; j < d; ++j) {
        LMatrix br = b0 * phi.coeff(1);
        SkewPoly t1 = SkewPoly::monomial(b0.frobenius(1).at(0, j), 2) -
                      SkewPoly::monomial(br.at(0, j), 1);
        out.add_term(j, 1, CoeffTransform(t1));
        for (int r = 2; r < n; ++r) {
            LMatrix brr = b0 * phi.coeff(r);
            out.add_term(j, r, CoeffTransform(SkewPoly::monomial(-brr.at(0, j), 1)));
        }
    }
    out.add_term(0, n - 1, CoeffTransform::constant(theta));
    return out;
}

/// The certified second-stage matrix of the nilpotent counterexample:
/// diag(theta + tau^3, theta + tau^3, theta^(2) + xi tau^3) plus the
/// eta tau^2 coupling, with eta = a^(2)/(theta^(1)-theta^(2)) and
/// xi = (theta^(4)-theta^(5))/(theta^(1)-theta^(2)).
inline SkewMatrix counterexample_verified_ext0(std::uint32_t p, const RatFunc& a) {
    RatFunc theta = RatFunc::theta(p);
    RatFunc t1 = theta.frobenius(1), t2 = theta.frobenius(2);
    RatFunc eta = a.frobenius(2) / (t1 - t2);
    RatFunc xi = (theta.frobenius(4) - theta.frobenius(5)) / (t1 - t2);
    SkewMatrix m(p, 3, 3);
    SkewPoly diag = SkewPoly::constant(theta) + SkewPoly::tau(p, 3);
    m.at(0, 0) = diag;
    m.at(1, 1) = diag;
    m.at(2, 0) = SkewPoly::monomial(eta, 2);
    m.at(2, 2) = SkewPoly::constant(t2) + SkewPoly::monomial(xi, 3);
    return m;
}

}  // namespace testutil
