#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "tmodule.hpp"

namespace tmdual {

/// Symbolic coefficient tracker: a skew polynomial w standing for the value
/// w|_{tau=c} = sum w_r c^(r) of a formal generator coefficient c.
/// Frobenius twist of the value is left-multiplication of w by tau; scalar
/// multiplication by b in L is left-multiplication by b.
class CoeffTransform {
  public:
    explicit CoeffTransform(std::uint32_t p) : w_(SkewPoly::zero(p)) {}
    explicit CoeffTransform(SkewPoly w) : w_(std::move(w)) {}

    static CoeffTransform unit(std::uint32_t p) {
        return CoeffTransform(SkewPoly::constant(RatFunc::one(p)));
    }
    static CoeffTransform constant(RatFunc v) {
        return CoeffTransform(SkewPoly::constant(std::move(v)));
    }

    const SkewPoly& poly() const { return w_; }
    std::uint32_t modulus() const { return w_.modulus(); }
    bool is_zero() const { return w_.is_zero(); }

    CoeffTransform twisted() const { return CoeffTransform(SkewPoly::tau(modulus()) * w_); }
    CoeffTransform scaled(const RatFunc& b) const { return CoeffTransform(w_.scaled_left(b)); }
    CoeffTransform operator+(const CoeffTransform& o) const { return CoeffTransform(w_ + o.w_); }
    CoeffTransform operator-(const CoeffTransform& o) const { return CoeffTransform(w_ - o.w_); }
    CoeffTransform operator-() const { return CoeffTransform(-w_); }

    bool operator==(const CoeffTransform& o) const { return w_ == o.w_; }
    bool operator!=(const CoeffTransform& o) const { return !(*this == o); }

    /// w|_{tau=c}
    RatFunc eval(const RatFunc& c) const { return w_.apply_point(c); }

    /// t' with twisted(t') == *this, when every tau-coefficient admits the
    /// inverse Frobenius and the tau^0 part vanishes.
    std::optional<CoeffTransform> try_untwist() const {
        if (is_zero()) return CoeffTransform(modulus());
        if (!w_.coeff(0).is_zero()) return std::nullopt;
        std::vector<RatFunc> out;
        out.reserve(w_.degree());
        for (int r = 1; r <= w_.degree(); ++r) {
            auto y = w_.coeff(r).try_frobenius_inverse();
            if (!y) return std::nullopt;
            out.push_back(std::move(*y));
        }
        return CoeffTransform(SkewPoly(modulus(), std::move(out)));
    }

  private:
    SkewPoly w_;
};

/// A 1 x D vector of per-position degree -> CoeffTransform maps: a
/// biderivation delta(t) in Mat_{1xD}(L{tau}) with symbolically tracked
/// coefficients. Zero transforms are never stored.
///
/// A state is either symbolic (transforms track a formal c) or concrete
/// (every transform is a constant, understood as evaluated; arithmetic
/// collapses entries back to constants so cancellation stays decidable).
class BiderState {
  public:
    BiderState(std::uint32_t p, std::size_t width, bool concrete = false)
        : p_(p), concrete_(concrete), cols_(width) {}

    std::uint32_t modulus() const { return p_; }
    std::size_t width() const { return cols_.size(); }
    bool concrete() const { return concrete_; }

    const std::map<int, CoeffTransform>& column(std::size_t j) const { return cols_[j]; }

    CoeffTransform term(std::size_t j, int deg) const {
        auto it = cols_[j].find(deg);
        return it == cols_[j].end() ? CoeffTransform(p_) : it->second;
    }

    void add_term(std::size_t j, int deg, const CoeffTransform& t) {
        if (t.is_zero()) return;
        auto it = cols_[j].find(deg);
        CoeffTransform s = it == cols_[j].end() ? t : it->second + t;
        s = collapse(s);
        if (s.is_zero())
            cols_[j].erase(deg);
        else
            cols_[j].insert_or_assign(deg, std::move(s));
    }

    void sub_term(std::size_t j, int deg, const CoeffTransform& t) { add_term(j, deg, -t); }

    BiderState operator+(const BiderState& o) const {
        BiderState r(*this);
        for (std::size_t j = 0; j < o.width(); ++j)
            for (const auto& [deg, t] : o.cols_[j]) r.add_term(j, deg, t);
        return r;
    }

    BiderState operator-(const BiderState& o) const {
        BiderState r(*this);
        for (std::size_t j = 0; j < o.width(); ++j)
            for (const auto& [deg, t] : o.cols_[j]) r.sub_term(j, deg, t);
        return r;
    }

    bool is_zero() const {
        for (const auto& col : cols_)
            if (!col.empty()) return false;
        return true;
    }

    bool operator==(const BiderState& o) const {
        return p_ == o.p_ && cols_ == o.cols_;
    }
    bool operator!=(const BiderState& o) const { return !(*this == o); }

    int max_degree() const {
        int d = -1;
        for (const auto& col : cols_)
            if (!col.empty()) d = std::max(d, col.rbegin()->first);
        return d;
    }

    /// Substitute a concrete c for the formal generator coefficient; the
    /// result is a concrete state.
    BiderState substitute(const RatFunc& c) const {
        BiderState r(p_, width(), true);
        for (std::size_t j = 0; j < width(); ++j)
            for (const auto& [deg, t] : cols_[j])
                r.add_term(j, deg, CoeffTransform::constant(t.eval(c)));
        return r;
    }

    /// Seed a concrete state from plain skew-polynomial entries.
    static BiderState from_skew_row(const std::vector<SkewPoly>& entries, std::uint32_t p) {
        BiderState r(p, entries.size(), true);
        for (std::size_t j = 0; j < entries.size(); ++j)
            for (int k = 0; k <= entries[j].degree(); ++k)
                r.add_term(j, k, CoeffTransform::constant(entries[j].coeff(k)));
        return r;
    }

    /// Flatten a concrete state back to plain skew-polynomial entries.
    std::vector<SkewPoly> to_skew_row() const {
        std::vector<SkewPoly> out;
        out.reserve(width());
        RatFunc one = RatFunc::one(p_);
        for (std::size_t j = 0; j < width(); ++j) {
            SkewPoly acc = SkewPoly::zero(p_);
            for (const auto& [deg, t] : cols_[j])
                acc = acc + SkewPoly::monomial(t.eval(one), deg);
            out.push_back(acc);
        }
        return out;
    }

  private:
    CoeffTransform collapse(const CoeffTransform& t) const {
        if (!concrete_) return t;
        RatFunc v = t.eval(RatFunc::one(p_));
        return CoeffTransform::constant(std::move(v));
    }

    std::uint32_t p_;
    bool concrete_;
    std::vector<std::map<int, CoeffTransform>> cols_;
};

}  // namespace tmdual
