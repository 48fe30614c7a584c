#pragma once

#include <string>
#include <utility>
#include <vector>

#include "reduce.hpp"

namespace tmdual {

struct bidual_mismatch_error : std::runtime_error {
    std::size_t row, col;
    bidual_mismatch_error(std::size_t r, std::size_t c, const std::string& m)
        : std::runtime_error(m), row(r), col(c) {}
};

/// Closed-form dual: theta I_{d(n-1)} + A1v tau + A2v tau^2 for a strictly
/// pure source with zero nilpotent part and n >= 2.
inline TModule dual_closed_form(const TModule& phi) {
    return DualData::make(phi).dual_module();
}

/// Basis slots of the degree-zero dual picture, coordinate-major with
/// tau-powers ascending (1..n-1 per coordinate, plus the degree-n slots the
/// nilpotent part forces).
inline std::vector<Slot> dual_basis_slots(const CanonicalShape& shape) { return shape.slots(); }

/// Dual via the reduction engine. Nilpotence is allowed; the canonical
/// shape then grows extra degree-n slots on the columns whose k = 0
/// generators are unavailable.
inline TModule dual_via_reduction(const TModule& phi) {
    Classification c = phi.classify();
    if (!c.strictly_pure) throw precondition_error("source is not strictly pure");
    if (c.deg_tau < 2) throw precondition_error("source must have tau-degree >= 2");
    StrictlyPureStrategy strat(phi, /*der0=*/true);
    CanonicalShape shape = strat.zero_shape();
    SkewMatrix act = action_matrix(phi, shape.slots(), strat, shape);
    return TModule::make(act.coeff_matrices());
}

/// The nd-dimensional action on Ext with its exact-sequence structure:
/// basis = [dual slots] then [tau^0 slots], so the matrix is block
/// triangular with the dual in the top-left and theta I_d in the
/// bottom-right.
struct ExtStructure {
    SkewMatrix action;
    std::vector<Slot> basis;      // sub slots first, then quotient slots
    std::size_t sub_dim;          // leading block size
    SkewMatrix sub_block;
    SkewMatrix quotient_block;
};

namespace detail {

inline SkewMatrix sub_matrix(const SkewMatrix& m, std::size_t r0, std::size_t c0, std::size_t rows,
                             std::size_t cols) {
    SkewMatrix out(m.modulus(), rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) out.at(i, j) = m.at(r0 + i, c0 + j);
    return out;
}

inline ExtStructure build_ext(const TModule& source, const PivotStrategy& strat,
                              const CanonicalShape& full_shape, std::vector<Slot> sub_slots,
                              std::vector<Slot> quotient_slots, const SkewMatrix& expected_sub,
                              const char* what) {
    std::vector<Slot> basis = sub_slots;
    basis.insert(basis.end(), quotient_slots.begin(), quotient_slots.end());
    SkewMatrix act = action_matrix(source, basis, strat, full_shape);
    std::size_t s = sub_slots.size(), q = quotient_slots.size();
    ExtStructure ext{act, basis, s, detail::sub_matrix(act, 0, 0, s, s),
                     detail::sub_matrix(act, s, s, q, q)};
    if (!detail::sub_matrix(act, s, 0, q, s).is_zero())
        throw internal_error(std::string(what) + ": action is not block triangular");
    if (ext.quotient_block != SkewMatrix::from_lmatrix(LMatrix::theta_identity(act.modulus(), q)))
        throw internal_error(std::string(what) + ": quotient block is not theta I");
    if (ext.sub_block != expected_sub)
        throw internal_error(std::string(what) + ": sub-block does not match the dual action");
    return ext;
}

}  // namespace detail

/// Ext^1(Phi, C) as a t-module of dimension n d, sitting over the dual and
/// the tau^0 quotient theta I_d.
inline ExtStructure ext_full(const TModule& phi) {
    TModule dual = dual_closed_form(phi);  // also enforces the preconditions
    StrictlyPureStrategy strat(phi, /*der0=*/false);
    CanonicalShape shape = strat.full_shape();
    std::vector<Slot> sub = strat.zero_shape().slots();
    std::vector<Slot> quot;
    for (std::size_t i = 0; i < phi.dim(); ++i) quot.push_back({i, 0});
    return detail::build_ext(phi, strat, shape, std::move(sub), std::move(quot), dual.action(),
                             "ext_full");
}

struct BidualReport {
    TModule bidual;
    TModule conjugated;   // A_n^-1 Phi A_n
    std::vector<Slot> basis;
};

/// Double dual over the border tau^1 basis; exact equality with
/// conjugate(Phi, A_n) is asserted coefficient by coefficient.
inline BidualReport bidual(const TModule& phi) {
    DualData dd = DualData::make(phi);
    DualSpecialStrategy strat(dd);
    CanonicalShape shape = strat.zero_shape();
    std::vector<Slot> slots;
    for (std::size_t l = 0; l < dd.d(); ++l)
        slots.push_back({(l + 1) * (dd.n() - 1) - 1, 1});
    SkewMatrix act = action_matrix(strat.source(), slots, strat, shape);
    TModule dd_mod = TModule::make(act.coeff_matrices());
    TModule conj = phi.conjugate(phi.coeff(phi.deg_tau()));
    if (dd_mod != conj) {
        for (std::size_t i = 0; i < act.rows(); ++i)
            for (std::size_t j = 0; j < act.cols(); ++j)
                if (act.at(i, j) != conj.action().at(i, j))
                    throw bidual_mismatch_error(i, j, "double dual differs from the conjugate at (" +
                                                          std::to_string(i) + ", " +
                                                          std::to_string(j) + ")");
        throw bidual_mismatch_error(0, 0, "double dual differs from the conjugate");
    }
    return BidualReport{std::move(dd_mod), std::move(conj), std::move(slots)};
}

/// Ext^1(dual, C): dimension n d over basis [border tau^1 slots] then
/// [interior tau^0 block-by-block, border tau^0]; the sub-block is the
/// double dual (= conjugate of Phi), the quotient is theta I_{(n-1)d}.
inline ExtStructure ext_full_of_dual(const TModule& phi) {
    BidualReport br = bidual(phi);
    DualData dd = DualData::make(phi);
    DualSpecialStrategy strat(dd);
    CanonicalShape shape = strat.full_shape();
    std::vector<Slot> sub = br.basis;
    std::vector<Slot> quot;
    for (std::size_t j = 0; j < dd.width(); ++j)
        if (!dd.is_border(j)) quot.push_back({j, 0});
    for (std::size_t j = 0; j < dd.width(); ++j)
        if (dd.is_border(j)) quot.push_back({j, 0});
    return detail::build_ext(strat.source(), strat, shape, std::move(sub), std::move(quot),
                             br.bidual.action(), "ext_full_of_dual");
}

/// The induced morphism between duals: each target-side basis row is
/// multiplied by the matrix of f on the right and reduced on the source
/// side.
inline Morphism dual_morphism(const Morphism& f) {
    const TModule& phi = f.source();
    const TModule& psi = f.target();
    for (const TModule* m : {&phi, &psi}) {
        Classification c = m->classify();
        if (!c.strictly_pure || c.has_nilpotence || c.deg_tau < 2)
            throw precondition_error(
                "dual morphisms need strictly pure, no-nilpotence sources of tau-degree >= 2");
    }
    TModule phi_dual = dual_closed_form(phi);
    TModule psi_dual = dual_closed_form(psi);
    StrictlyPureStrategy strat(phi, /*der0=*/true);
    CanonicalShape shape = strat.zero_shape();
    std::vector<Slot> phi_slots = shape.slots();
    std::map<Slot, std::size_t> index;
    for (std::size_t i = 0; i < phi_slots.size(); ++i) index[phi_slots[i]] = i;

    std::size_t e = psi.dim();
    int m_deg = psi.deg_tau();
    std::uint32_t p = phi.modulus();
    SkewMatrix fd(p, phi_slots.size(), e * (m_deg - 1));
    std::size_t col_index = 0;
    for (std::size_t i = 0; i < e; ++i)
        for (int k = 1; k < m_deg; ++k, ++col_index) {
            // seed E_i tau^k on the target side, then pull back along f
            BiderState pulled(p, phi.dim());
            for (std::size_t jj = 0; jj < phi.dim(); ++jj) {
                const SkewPoly& entry = f.matrix().at(i, jj);
                for (int r = 0; r <= entry.degree(); ++r) {
                    if (entry.coeff(r).is_zero()) continue;
                    pulled.add_term(jj, k + r,
                                    CoeffTransform::constant(entry.coeff(r).frobenius(k)));
                }
            }
            ReduceResult rr = reduce(pulled, phi, strat, shape);
            for (std::size_t j = 0; j < rr.state.width(); ++j)
                for (const auto& [kk, t] : rr.state.column(j)) {
                    auto it = index.find(Slot{j, kk});
                    if (it == index.end())
                        throw internal_error("dual morphism column left the canonical slots");
                    fd.at(it->second, col_index) = t.poly();
                }
        }
    return Morphism::make(psi_dual, phi_dual, std::move(fd));
}

}  // namespace tmdual
