#pragma once

#include <map>
#include <utility>
#include <vector>

#include "strategy.hpp"

namespace tmdual {

/// delta^(U)(t) = U Phi_t - C_t U, with transform bookkeeping: the Carlitz
/// part left-multiplies transforms by theta and tau.
inline BiderState inner_biderivation(const BiderState& u, const TModule& src) {
    if (u.width() != src.dim()) throw dimension_error("generator width != source dimension");
    std::uint32_t p = u.modulus();
    RatFunc theta = RatFunc::theta(p);
    BiderState out(p, u.width(), u.concrete());
    for (std::size_t j = 0; j < u.width(); ++j) {
        for (const auto& [k, t] : u.column(j)) {
            for (int r = 0; r <= src.deg_tau(); ++r) {
                const LMatrix& w = src.coeff(static_cast<std::size_t>(r));
                for (std::size_t jj = 0; jj < src.dim(); ++jj) {
                    const RatFunc& e = w.at(j, jj);
                    if (e.is_zero()) continue;
                    out.add_term(jj, k + r, t.scaled(e.frobenius(static_cast<unsigned>(k))));
                }
            }
            out.sub_term(j, k, t.scaled(theta));
            out.sub_term(j, k + 1, t.twisted());
        }
    }
    return out;
}

struct ReduceResult {
    BiderState state;
    std::vector<BiderState> certificate;  // generators subtracted, in order
    int kills = 0;
};

/// Rewrite the class representative into the canonical shape by subtracting
/// inner biderivations chosen by the strategy. input - output equals the
/// re-expanded certificate exactly.
inline ReduceResult reduce(const BiderState& input, const TModule& src,
                           const PivotStrategy& strategy, const CanonicalShape& shape) {
    if (input.width() != shape.width()) throw dimension_error("state width != shape width");
    ReduceResult rr{input, {}, 0};
    long guard = (static_cast<long>(std::max(input.max_degree(), 1)) + 2) *
                     static_cast<long>(input.width()) * (src.deg_tau() + 3) +
                 64;
    while (true) {
        int deg = -1;
        for (std::size_t j = 0; j < rr.state.width(); ++j)
            for (const auto& [k, t] : rr.state.column(j)) {
                (void)t;
                if (!shape.contains(j, k)) deg = std::max(deg, k);
            }
        if (deg < 0) break;
        std::vector<std::size_t> order = strategy.level_order(deg);
        std::size_t col = rr.state.width();
        for (std::size_t cand : order) {
            if (!shape.contains(cand, deg) && !rr.state.term(cand, deg).is_zero()) {
                col = cand;
                break;
            }
        }
        if (col == rr.state.width()) {
            // an offending column outside the strategy's schedule
            for (std::size_t j = 0; j < rr.state.width(); ++j)
                if (!shape.contains(j, deg) && !rr.state.term(j, deg).is_zero()) col = j;
            throw no_forward_pivot_error(static_cast<int>(col), deg,
                                         "offending column is not in the elimination schedule");
        }
        BiderState gen = strategy.plan(rr.state, col, deg);
        rr.state = rr.state - inner_biderivation(gen, src);
        if (!rr.state.term(col, deg).is_zero())
            throw internal_error("pivot failed to cancel the offending term");
        rr.certificate.push_back(std::move(gen));
        ++rr.kills;
        if (--guard < 0) throw internal_error("reduction termination guard exceeded");
    }
    return rr;
}

/// Soundness check: input - output == sum of re-expanded certificate terms.
inline bool certificate_matches(const BiderState& input, const ReduceResult& rr,
                                const TModule& src) {
    BiderState acc(input.modulus(), input.width(), input.concrete());
    for (const auto& u : rr.certificate) acc = acc + inner_biderivation(u, src);
    return input - rr.state == acc;
}

/// Left-multiply a state by C_t = theta + tau (the t-action on Der(-, C)).
inline BiderState carlitz_t_times(const BiderState& s) {
    RatFunc theta = RatFunc::theta(s.modulus());
    BiderState out(s.modulus(), s.width(), s.concrete());
    for (std::size_t j = 0; j < s.width(); ++j)
        for (const auto& [k, t] : s.column(j)) {
            out.add_term(j, k, t.scaled(theta));
            out.add_term(j, k + 1, t.twisted());
        }
    return out;
}

/// For each basis slot, seed a unit transform, apply t, reduce, and read
/// the slot transforms off as the column of the induced action matrix.
inline SkewMatrix action_matrix(const TModule& src, const std::vector<Slot>& slots,
                                const PivotStrategy& strategy, const CanonicalShape& shape) {
    std::uint32_t p = src.modulus();
    std::map<Slot, std::size_t> index;
    for (std::size_t i = 0; i < slots.size(); ++i) index[slots[i]] = i;
    SkewMatrix out(p, slots.size(), slots.size());
    for (std::size_t sj = 0; sj < slots.size(); ++sj) {
        BiderState seed(p, src.dim());
        seed.add_term(slots[sj].col, slots[sj].deg, CoeffTransform::unit(p));
        ReduceResult rr = reduce(carlitz_t_times(seed), src, strategy, shape);
        for (std::size_t j = 0; j < rr.state.width(); ++j)
            for (const auto& [k, t] : rr.state.column(j)) {
                auto it = index.find(Slot{j, k});
                if (it == index.end())
                    throw internal_error("reduced state landed outside the basis slots");
                out.at(it->second, sj) = t.poly();
            }
    }
    return out;
}

}  // namespace tmdual
