#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "field.hpp"

namespace tmdual {

/// Dense polynomial over F_p in the indeterminate T. Coefficient index is
/// the degree; no trailing zeros are stored, the zero polynomial is the
/// empty sequence and has degree -1.
class DensePoly {
  public:
    explicit DensePoly(std::uint32_t p) : p_(p) {}
    DensePoly(std::uint32_t p, std::vector<std::uint32_t> coeffs) : p_(p), c_(std::move(coeffs)) {
        for (auto& x : c_) x %= p_;
        trim();
    }

    static DensePoly zero(std::uint32_t p) { return DensePoly(p); }
    static DensePoly constant(std::uint32_t p, std::int64_t v) {
        return DensePoly(p, {static_cast<std::uint32_t>(((v % p) + p) % p)});
    }
    /// c * T^k
    static DensePoly monomial(std::uint32_t p, std::int64_t c, std::size_t k) {
        std::vector<std::uint32_t> v(k + 1, 0);
        v[k] = static_cast<std::uint32_t>(((c % p) + p) % p);
        DensePoly r(p, std::move(v));
        return r;
    }

    std::uint32_t modulus() const { return p_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    std::uint32_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    std::uint32_t lead() const { return c_.empty() ? 0 : c_.back(); }
    const std::vector<std::uint32_t>& coeffs() const { return c_; }

    bool operator==(const DensePoly& o) const { return p_ == o.p_ && c_ == o.c_; }
    bool operator!=(const DensePoly& o) const { return !(*this == o); }

    DensePoly operator-() const {
        DensePoly r(p_);
        r.c_.resize(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] == 0 ? 0 : p_ - c_[i];
        return r;
    }

    DensePoly operator+(const DensePoly& o) const {
        match(o);
        DensePoly r(p_);
        r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
        for (std::size_t i = 0; i < r.c_.size(); ++i)
            r.c_[i] = (coeff(i) + o.coeff(i)) % p_;
        r.trim();
        return r;
    }

    DensePoly operator-(const DensePoly& o) const { return *this + (-o); }

    DensePoly operator*(const DensePoly& o) const {
        match(o);
        if (is_zero() || o.is_zero()) return zero(p_);
        DensePoly r(p_);
        r.c_.assign(c_.size() + o.c_.size() - 1, 0);
        // accumulate in uint64; (p-1)^2 * length stays below 2^64
        std::vector<std::uint64_t> acc(r.c_.size(), 0);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            std::uint64_t a = c_[i];
            for (std::size_t j = 0; j < o.c_.size(); ++j) acc[i + j] += a * o.c_[j];
        }
        for (std::size_t k = 0; k < acc.size(); ++k) r.c_[k] = static_cast<std::uint32_t>(acc[k] % p_);
        r.trim();
        return r;
    }

    DensePoly scaled(std::uint32_t s) const {
        DensePoly r(p_);
        s %= p_;
        if (s == 0) return r;
        r.c_.resize(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i)
            r.c_[i] = static_cast<std::uint32_t>(std::uint64_t(c_[i]) * s % p_);
        return r;
    }

    /// quotient, remainder with divisor != 0
    std::pair<DensePoly, DensePoly> divmod(const DensePoly& d) const {
        match(d);
        if (d.is_zero()) throw arithmetic_error("polynomial division by zero");
        DensePoly q(p_), r(*this);
        if (r.degree() < d.degree()) return {q, r};
        q.c_.assign(r.c_.size() - d.c_.size() + 1, 0);
        std::uint32_t inv_lead = Fp(p_, d.lead()).inv().value();
        for (int k = r.degree() - d.degree(); k >= 0; --k) {
            std::uint32_t top = r.coeff(k + d.degree());
            if (top == 0) continue;
            std::uint32_t f = static_cast<std::uint32_t>(std::uint64_t(top) * inv_lead % p_);
            q.c_[k] = f;
            for (std::size_t i = 0; i < d.c_.size(); ++i) {
                std::uint64_t sub = std::uint64_t(f) * d.c_[i] % p_;
                std::uint32_t& tgt = r.c_[k + i];
                tgt = static_cast<std::uint32_t>((tgt + p_ - sub) % p_);
            }
        }
        q.trim();
        r.trim();
        return {q, r};
    }

    DensePoly monic() const {
        if (is_zero()) return *this;
        return scaled(Fp(p_, lead()).inv().value());
    }

    /// f(T^m); exact degree spreading, no evaluation
    DensePoly substitute_power(std::uint64_t m) const {
        if (is_zero() || m == 1) return *this;
        DensePoly r(p_);
        r.c_.assign(static_cast<std::size_t>(m) * (c_.size() - 1) + 1, 0);
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i * m] = c_[i];
        return r;
    }

    DensePoly shifted(std::size_t k) const {
        if (is_zero()) return *this;
        DensePoly r(p_);
        r.c_.assign(c_.size() + k, 0);
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i + k] = c_[i];
        return r;
    }

    friend DensePoly gcd(DensePoly a, DensePoly b) {
        a.match(b);
        while (!b.is_zero()) {
            DensePoly r = a.divmod(b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    void match(const DensePoly& o) const {
        if (p_ != o.p_) throw arithmetic_error("mixed prime moduli");
    }

    std::uint32_t p_;
    std::vector<std::uint32_t> c_;
};

}  // namespace tmdual
