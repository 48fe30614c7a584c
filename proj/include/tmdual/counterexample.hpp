#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "duality.hpp"

namespace tmdual {

/// theta I_3 + a E_31 + I_3 tau^3, the strictly pure module with nonzero
/// nilpotent part whose dual fails to dualize again.
inline TModule nilpotent_counterexample(std::uint32_t p, const RatFunc& a) {
    if (a.is_zero()) throw precondition_error("the nilpotent entry a must be nonzero");
    LMatrix m0 = LMatrix::theta_identity(p, 3);
    m0.at(2, 0) = a;
    std::vector<LMatrix> coeffs{m0, LMatrix(p, 3, 3), LMatrix(p, 3, 3), LMatrix::identity(p, 3)};
    return TModule::make(std::move(coeffs));
}

/// The expected 7x7 dual action of the counterexample: three blocks of
/// slots (two of width 2 and one of width 3, the nilpotent row keeping its
/// degree-3 slot), theta on the diagonal, tau / tau^2 ladders inside the
/// blocks, and the a-coupling in the last column.
inline SkewMatrix counterexample_reference_dual(std::uint32_t p, const RatFunc& a) {
    RatFunc theta = RatFunc::theta(p);
    SkewMatrix m(p, 7, 7);
    for (std::size_t i = 0; i < 7; ++i) m.at(i, i) = SkewPoly::constant(theta);
    m.at(1, 0) = SkewPoly::tau(p);
    m.at(0, 1) = SkewPoly::tau(p, 2);
    m.at(3, 2) = SkewPoly::tau(p);
    m.at(2, 3) = SkewPoly::tau(p, 2);
    m.at(5, 4) = SkewPoly::tau(p);
    m.at(6, 5) = SkewPoly::tau(p);
    m.at(5, 6) = SkewPoly::tau(p, 2);
    m.at(0, 6) = SkewPoly::monomial(-a.frobenius(1), 1);
    m.at(4, 6) = SkewPoly::monomial(theta - theta.frobenius(1), 1);
    return m;
}

/// diag(theta + tau^3, theta + tau^3, theta + tau^3 - 1): the reference
/// diagonal form the demo compares the second stage against. Exact
/// reduction provably cannot produce it (see counterexample_demo); the
/// comparison verdict is part of the report.
inline SkewMatrix counterexample_reference_ext0(std::uint32_t p) {
    RatFunc theta = RatFunc::theta(p);
    SkewMatrix m(p, 3, 3);
    SkewPoly diag = SkewPoly::constant(theta) + SkewPoly::tau(p, 3);
    m.at(0, 0) = diag;
    m.at(1, 1) = diag;
    m.at(2, 2) = diag + SkewPoly::constant(-RatFunc::one(p));
    return m;
}

struct CounterexampleReport {
    TModule source;
    TModule dual;                      // 7-dimensional Der_0 action
    bool dual_matches_reference;
    std::vector<Slot> ext0_slots;       // canonical slots of the second stage
    SkewMatrix ext0_action;             // computed Der_0 action over the dual
    SkewMatrix ext0_reference;          // the reference diagonal form
    bool ext0_matches_reference;
    bool rejected;                      // validate_tmodule refused the result
    std::optional<LMatrix> residue;     // the non-nilpotent witness
    bool residue_matches_reference;     // diag(0, 0, -1)
};

/// Full pipeline: dual by reduction, Der_0 action of the (non strictly
/// pure) dual by generic elimination, and the t-module validation that must
/// reject the result.
inline CounterexampleReport counterexample_demo(std::uint32_t p, const RatFunc& a) {
    TModule phi = nilpotent_counterexample(p, a);
    TModule dual = dual_via_reduction(phi);
    bool dual_ok = dual.action() == counterexample_reference_dual(p, a);

    GenericStrategy strat(dual, /*der0=*/true);
    CanonicalShape shape = strat.zero_shape();
    std::vector<Slot> slots = shape.slots();
    SkewMatrix ext0 = action_matrix(dual, slots, strat, shape);
    SkewMatrix ref = counterexample_reference_ext0(p);
    bool ext0_ok = ext0.rows() == ref.rows() && ext0 == ref;

    bool rejected = false;
    std::optional<LMatrix> residue;
    try {
        (void)TModule::make(ext0.coeff_matrices());
    } catch (const not_a_tmodule_error& e) {
        rejected = true;
        residue = e.residue;
    }

    bool residue_ok = false;
    if (residue) {
        LMatrix expect(p, residue->rows(), residue->cols());
        if (residue->rows() == 3) {
            expect.at(2, 2) = -RatFunc::one(p);
            residue_ok = (*residue == expect);
        }
    }

    return CounterexampleReport{std::move(phi),  std::move(dual), dual_ok,
                                std::move(slots), std::move(ext0), std::move(ref),
                                ext0_ok,          rejected,        std::move(residue),
                                residue_ok};
}

}  // namespace tmdual
