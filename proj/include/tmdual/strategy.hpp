#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "dualdata.hpp"
#include "shape.hpp"
#include "transform.hpp"

namespace tmdual {

/// Supplies, per offending term, the inner-biderivation generator that
/// eliminates it, plus the column order that makes each elimination step
/// decrease the (degree, schedule position) measure.
class PivotStrategy {
  public:
    virtual ~PivotStrategy() = default;

    virtual const TModule& source() const = 0;

    /// Columns eligible for elimination at this tau-degree, in the order
    /// they must be processed.
    virtual std::vector<std::size_t> level_order(int deg) const = 0;

    /// Generator U (as a transform row) whose inner biderivation has the
    /// offending (col, deg) term as exact leading contribution.
    virtual BiderState plan(const BiderState& state, std::size_t col, int deg) const = 0;

  protected:
    /// Solve twisted(c) == -t for the coefficient transform of a
    /// tau-shifted pivot. Concrete states solve on values via the inverse
    /// Frobenius; symbolic states divide the transform by tau on the left.
    static CoeffTransform solve_twist(const BiderState& state, const CoeffTransform& t,
                                      std::size_t col, int deg) {
        if (state.concrete()) {
            RatFunc v = -t.eval(RatFunc::one(t.modulus()));
            auto y = v.try_frobenius_inverse();
            if (!y)
                throw no_forward_pivot_error(static_cast<int>(col), deg,
                                             "needed inverse Frobenius does not exist in F_q(T)");
            return CoeffTransform::constant(std::move(*y));
        }
        auto c = (-t).try_untwist();
        if (!c)
            throw no_forward_pivot_error(static_cast<int>(col), deg,
                                         "transform is not left-divisible by tau");
        return *c;
    }
};

/// Reductions over a strictly pure source Phi = theta I + N + sum A_i tau^i
/// (tau-degree n >= 2): a term at (col i, deg m >= n) is killed by the
/// generator t * tau^(m-n) E_i A_n^-1, whose only degree-(m) contribution
/// is the unit at column i.
///
/// In the partial-vanishing (Der_0) setting the k = 0 generators carry the
/// tau^0 term t * E_i B_0 N; rows where that is nonzero cannot be used, so
/// those columns keep an extra degree-n slot.
class StrictlyPureStrategy : public PivotStrategy {
  public:
    StrictlyPureStrategy(TModule src, bool der0)
        : src_(std::move(src)), der0_(der0), b0_(src_.modulus(), 0, 0) {
        Classification c = src_.classify();
        if (!c.strictly_pure) throw precondition_error("source is not strictly pure");
        if (c.deg_tau < 2)
            throw precondition_error("strictly pure reduction needs tau-degree >= 2");
        b0_ = src_.coeff(src_.deg_tau()).inverse();
        LMatrix b0n = b0_ * src_.nilpotent_part();
        row_clean_.resize(src_.dim());
        for (std::size_t i = 0; i < src_.dim(); ++i) {
            bool clean = true;
            for (std::size_t j = 0; j < src_.dim(); ++j)
                if (!b0n.at(i, j).is_zero()) clean = false;
            row_clean_[i] = clean;
        }
    }

    const TModule& source() const override { return src_; }

    /// degrees 1..n-1, plus n where the k = 0 generator is unavailable
    CanonicalShape zero_shape() const {
        CanonicalShape s(src_.dim());
        int n = src_.deg_tau();
        for (std::size_t i = 0; i < src_.dim(); ++i) {
            for (int k = 1; k < n; ++k) s.allow(i, k);
            if (der0_ && !row_clean_[i]) s.allow(i, n);
        }
        return s;
    }

    /// degrees 0..n-1
    CanonicalShape full_shape() const {
        CanonicalShape s(src_.dim());
        for (std::size_t i = 0; i < src_.dim(); ++i)
            for (int k = 0; k < src_.deg_tau(); ++k) s.allow(i, k);
        return s;
    }

    std::vector<std::size_t> level_order(int) const override {
        std::vector<std::size_t> o(src_.dim());
        for (std::size_t i = 0; i < o.size(); ++i) o[i] = i;
        return o;
    }

    BiderState plan(const BiderState& state, std::size_t col, int deg) const override {
        int n = src_.deg_tau();
        int k = deg - n;
        if (k < 0)
            throw precondition_error(
                "offending term below every generator's reach; Der_0 reductions need a "
                "vanishing tau^0 part");
        if (der0_ && k == 0 && !row_clean_[col])
            throw internal_error("k = 0 generator excluded by the Der_0 constraint");
        CoeffTransform t = state.term(col, deg);
        BiderState u(state.modulus(), state.width(), state.concrete());
        for (std::size_t j = 0; j < src_.dim(); ++j) {
            const RatFunc& b = b0_.at(col, j);
            if (!b.is_zero()) u.add_term(j, k, t.scaled(b.frobenius(static_cast<unsigned>(k))));
        }
        return u;
    }

  private:
    TModule src_;
    bool der0_;
    LMatrix b0_;
    std::vector<bool> row_clean_;
};

/// Reductions over the dual-shaped module of width d(n-1). Border terms
/// (deg m >= 2) are killed by the hat-matrix row generators, whose leading
/// term is the unit at the border; interior terms (deg m >= 1) by the
/// plain generator one column to the right, which pushes the same-degree
/// residue rightward and onto the borders. No inverse Frobenius is ever
/// required. Interior columns are processed left-to-right within each
/// block before the borders.
class DualSpecialStrategy : public PivotStrategy {
  public:
    explicit DualSpecialStrategy(DualData dd) : dd_(std::move(dd)), src_(dd_.dual_module()) {}

    const TModule& source() const override { return src_; }
    const DualData& data() const { return dd_; }

    /// border slots tau^1 only
    CanonicalShape zero_shape() const {
        CanonicalShape s(dd_.width());
        for (std::size_t j = 0; j < dd_.width(); ++j)
            if (dd_.is_border(j)) s.allow(j, 1);
        return s;
    }

    /// interior tau^0, border tau^0 and tau^1
    CanonicalShape full_shape() const {
        CanonicalShape s(dd_.width());
        for (std::size_t j = 0; j < dd_.width(); ++j) {
            s.allow(j, 0);
            if (dd_.is_border(j)) s.allow(j, 1);
        }
        return s;
    }

    std::vector<std::size_t> level_order(int) const override {
        std::vector<std::size_t> o;
        for (std::size_t j = 0; j < dd_.width(); ++j)
            if (!dd_.is_border(j)) o.push_back(j);
        for (std::size_t j = 0; j < dd_.width(); ++j)
            if (dd_.is_border(j)) o.push_back(j);
        return o;
    }

    BiderState plan(const BiderState& state, std::size_t col, int deg) const override {
        CoeffTransform t = state.term(col, deg);
        BiderState u(state.modulus(), state.width(), state.concrete());
        if (dd_.is_border(col)) {
            int k = deg - 2;
            if (k < 0) throw internal_error("border offender below the canonical bound");
            std::size_t lead = dd_.block_lead(col);
            for (std::size_t j = 0; j < dd_.width(); ++j) {
                const RatFunc& a = dd_.ahat().at(lead, j);
                if (!a.is_zero()) u.add_term(j, k, t.scaled(a.frobenius(static_cast<unsigned>(k))));
            }
        } else {
            int k = deg - 1;
            if (k < 0) throw internal_error("interior offender at tau^0");
            u.add_term(col + 1, k, t);
        }
        return u;
    }

  private:
    DualData dd_;
    TModule src_;
};

/// Leading-term elimination for a general source. Candidate pivots per
/// column, in preference order:
///   - combined: the row of W_n^-1 (needs an invertible top coefficient,
///     n >= 2); only contribution at the offending level.
///   - forward row: a single generator row whose top coefficient matrix
///     W_r hits the column (top-aligned, so nothing lands above the
///     offending level).
///   - twist: the column's own generator one degree down, solved through
///     the inverse Frobenius.
/// Within a level, columns are ordered so every same-level side effect
/// lands later in the order or inside the canonical shape; cycles are
/// broken by retiring twist pivots, which turns their columns into
/// canonical slots. Columns with no terminating pivot are slots.
class GenericStrategy : public PivotStrategy {
  public:
    GenericStrategy(TModule src, bool der0)
        : src_(std::move(src)), der0_(der0), shape_(src_.dim()) {
        build_tables();
        discover();
    }

    const TModule& source() const override { return src_; }

    CanonicalShape zero_shape() const { return shape_; }

    CanonicalShape full_shape() const {
        CanonicalShape s = shape_;
        for (std::size_t j = 0; j < src_.dim(); ++j) s.allow(j, 0);
        return s;
    }

    std::vector<std::size_t> level_order(int deg) const override {
        return plan_for(deg).order;
    }

    BiderState plan(const BiderState& state, std::size_t col, int deg) const override {
        const LevelPlan& lp = plan_for(deg);
        if (!lp.killer[col])
            throw no_forward_pivot_error(static_cast<int>(col), deg,
                                         "no admissible pivot for this column");
        const Killer& k = *lp.killer[col];
        CoeffTransform t = state.term(col, deg);
        BiderState u(state.modulus(), state.width(), state.concrete());
        int kk = deg - k.offset;
        if (kk < 0) throw internal_error("pivot offset below zero");
        switch (k.kind) {
            case Killer::Combined: {
                for (std::size_t j = 0; j < src_.dim(); ++j) {
                    const RatFunc& b = b0_.at(col, j);
                    if (!b.is_zero())
                        u.add_term(j, kk, t.scaled(b.frobenius(static_cast<unsigned>(kk))));
                }
                break;
            }
            case Killer::ForwardRow: {
                RatFunc coeff =
                    src_.coeff(k.offset).at(k.gen, col).frobenius(static_cast<unsigned>(kk));
                u.add_term(k.gen, kk, t.scaled(coeff.inv()));
                break;
            }
            case Killer::Twist: {
                u.add_term(col, kk, solve_twist(state, t, col, deg));
                break;
            }
        }
        return u;
    }

  private:
    struct Killer {
        enum Kind { Combined, ForwardRow, Twist } kind;
        std::size_t gen = 0;  // generator row for ForwardRow
        int offset = 0;       // deg - k
        std::vector<std::size_t> same_level;
    };

    struct LevelPlan {
        std::vector<std::optional<Killer>> killer;
        std::vector<std::size_t> order;
    };

    void build_tables() {
        std::size_t d = src_.dim();
        int n = src_.deg_tau();
        nil_ = std::make_unique<LMatrix>(src_.nilpotent_part());
        row_has_nil_.assign(d, false);
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t i = 0; i < d; ++i)
                if (!nil_->at(j, i).is_zero()) row_has_nil_[j] = true;
        ntop_.assign(d, 0);
        for (std::size_t j = 0; j < d; ++j)
            for (int r = 1; r <= n; ++r)
                for (std::size_t i = 0; i < d; ++i)
                    if (!src_.coeff(r).at(j, i).is_zero()) ntop_[j] = std::max(ntop_[j], r);
        combined_ok_ = false;
        if (n >= 2) {
            try {
                b0_ = src_.coeff(n).inverse();
                combined_ok_ = true;
                LMatrix b0n = b0_ * *nil_;
                combined_row_clean_.assign(d, true);
                for (std::size_t i = 0; i < d; ++i)
                    for (std::size_t j = 0; j < d; ++j)
                        if (!b0n.at(i, j).is_zero()) combined_row_clean_[i] = false;
            } catch (const singular_matrix_error&) {
            }
        }
    }

    std::optional<Killer> best_candidate(std::size_t col, int m,
                                         const std::vector<bool>& twist_retired) const {
        std::size_t d = src_.dim();
        int n = src_.deg_tau();
        if (combined_ok_ && m - n >= 0 &&
            !(der0_ && m == n && !combined_row_clean_[col])) {
            Killer k;
            k.kind = Killer::Combined;
            k.offset = n;
            return k;
        }
        // forward rows, deepest top first
        for (int r = n; r >= 1; --r) {
            for (std::size_t j = 0; j < d; ++j) {
                if (ntop_[j] != r || m - r < 0) continue;
                if (src_.coeff(r).at(j, col).is_zero()) continue;
                if (r == 1 && j == col) continue;  // the twist term makes this semilinear
                if (der0_ && m == r && row_has_nil_[j]) continue;
                Killer k;
                k.kind = Killer::ForwardRow;
                k.gen = j;
                k.offset = r;
                for (std::size_t i = 0; i < d; ++i)
                    if (i != col && !src_.coeff(r).at(j, i).is_zero()) k.same_level.push_back(i);
                if (r == 1 && j != col) k.same_level.push_back(j);
                return k;
            }
        }
        bool diag_clear = n < 1 || src_.coeff(1).at(col, col).is_zero();
        if (!twist_retired[col] && m >= 1 && ntop_[col] <= 1 && diag_clear &&
            !(der0_ && m == 1 && row_has_nil_[col])) {
            Killer k;
            k.kind = Killer::Twist;
            k.offset = 1;
            if (n >= 1)
                for (std::size_t i = 0; i < d; ++i)
                    if (i != col && !src_.coeff(1).at(col, i).is_zero()) k.same_level.push_back(i);
            return k;
        }
        return std::nullopt;
    }

    /// Kahn topological sort; returns nullopt and the residual cycle set on
    /// failure.
    static std::optional<std::vector<std::size_t>> toposort(
        const std::vector<std::size_t>& nodes,
        const std::map<std::size_t, std::vector<std::size_t>>& edges,
        std::vector<std::size_t>* cycle) {
        std::map<std::size_t, int> indeg;
        for (auto nd : nodes) indeg[nd] = 0;
        for (const auto& [from, tos] : edges)
            for (auto to : tos)
                if (indeg.count(to)) ++indeg[to];
        std::vector<std::size_t> ready, out;
        for (auto nd : nodes)
            if (indeg[nd] == 0) ready.push_back(nd);
        std::sort(ready.begin(), ready.end());
        while (!ready.empty()) {
            std::size_t nd = ready.front();
            ready.erase(ready.begin());
            out.push_back(nd);
            auto it = edges.find(nd);
            if (it != edges.end())
                for (auto to : it->second)
                    if (indeg.count(to) && --indeg[to] == 0) {
                        ready.push_back(to);
                        std::sort(ready.begin(), ready.end());
                    }
        }
        if (out.size() != nodes.size()) {
            for (auto nd : nodes)
                if (std::find(out.begin(), out.end(), nd) == out.end()) cycle->push_back(nd);
            return std::nullopt;
        }
        return out;
    }

    LevelPlan make_level_plan(int m, CanonicalShape& shape_out) {
        std::size_t d = src_.dim();
        std::vector<bool> twist_retired(d, false);
        while (true) {
            LevelPlan lp;
            lp.killer.assign(d, std::nullopt);
            std::vector<std::size_t> eligible;
            for (std::size_t col = 0; col < d; ++col) {
                if (shape_out.contains(col, m)) continue;
                auto k = best_candidate(col, m, twist_retired);
                if (!k) {
                    shape_out.allow(col, m);
                    continue;
                }
                lp.killer[col] = std::move(k);
                eligible.push_back(col);
            }
            std::map<std::size_t, std::vector<std::size_t>> edges;
            for (auto col : eligible) {
                for (auto tgt : lp.killer[col]->same_level) {
                    bool tgt_eligible =
                        std::find(eligible.begin(), eligible.end(), tgt) != eligible.end();
                    if (tgt_eligible) edges[col].push_back(tgt);
                }
            }
            std::vector<std::size_t> cycle;
            auto order = toposort(eligible, edges, &cycle);
            if (order) {
                lp.order = std::move(*order);
                return lp;
            }
            bool retired = false;
            for (auto col : cycle)
                if (lp.killer[col] && lp.killer[col]->kind == Killer::Twist && !twist_retired[col]) {
                    twist_retired[col] = true;
                    shape_out.allow(col, m);
                    retired = true;
                }
            if (!retired)
                throw precondition_error(
                    "no terminating elimination order exists for this source");
        }
    }

    void discover() {
        int cap = std::max(src_.deg_tau() + 2, 3);
        const int hard_cap = 48;
        int m = 1;
        for (;; ++m) {
            if (m > hard_cap)
                throw precondition_error("canonical shape does not stabilize for this source");
            std::size_t before = shape_.slot_count();
            plans_[m] = make_level_plan(m, shape_);
            bool added = shape_.slot_count() != before;
            bool all_killable = true;
            for (std::size_t col = 0; col < src_.dim(); ++col)
                if (!plans_[m].killer[col] && !shape_.contains(col, m)) all_killable = false;
            if (m >= cap && !added && all_killable) break;
        }
        stable_level_ = m;
    }

    const LevelPlan& plan_for(int deg) const {
        if (deg <= 0) throw internal_error("no plan below tau^1");
        auto it = plans_.find(std::min(deg, stable_level_));
        if (it == plans_.end()) throw internal_error("missing level plan");
        return it->second;
    }

    TModule src_;
    bool der0_;
    CanonicalShape shape_;
    std::unique_ptr<LMatrix> nil_;
    std::vector<bool> row_has_nil_;
    std::vector<int> ntop_;
    bool combined_ok_ = false;
    LMatrix b0_{src_.modulus(), 0, 0};
    std::vector<bool> combined_row_clean_;
    std::map<int, LevelPlan> plans_;
    int stable_level_ = 0;
};

}  // namespace tmdual
