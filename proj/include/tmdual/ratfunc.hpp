#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "densepoly.hpp"

namespace tmdual {

/// Element of L = F_q(T) (q = p prime) as a reduced fraction. Canonical
/// form: denominator monic and nonzero, gcd(num, den) = 1, zero is 0/1.
/// Equality of representations coincides with field equality.
class RatFunc {
  public:
    explicit RatFunc(std::uint32_t p)
        : num_(DensePoly::zero(p)), den_(DensePoly::constant(p, 1)) {}
    RatFunc(DensePoly num, DensePoly den) : num_(std::move(num)), den_(std::move(den)) {
        normalize();
    }

    static RatFunc zero(std::uint32_t p) { return RatFunc(p); }
    static RatFunc one(std::uint32_t p) { return integer(p, 1); }
    static RatFunc integer(std::uint32_t p, std::int64_t v) {
        return RatFunc(DensePoly::constant(p, v), DensePoly::constant(p, 1));
    }
    static RatFunc theta(std::uint32_t p) {
        return RatFunc(DensePoly::monomial(p, 1, 1), DensePoly::constant(p, 1));
    }
    static RatFunc from_poly(DensePoly f) {
        std::uint32_t p = f.modulus();
        return RatFunc(std::move(f), DensePoly::constant(p, 1));
    }

    std::uint32_t modulus() const { return num_.modulus(); }
    std::uint32_t q() const { return num_.modulus(); }  // v1: q = p
    const DensePoly& num() const { return num_; }
    const DensePoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    RatFunc operator-() const { RatFunc r(*this); r.num_ = -r.num_; return r; }

    RatFunc operator+(const RatFunc& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
        return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }

    RatFunc operator-(const RatFunc& o) const { return *this + (-o); }

    RatFunc operator*(const RatFunc& o) const {
        if (is_zero() || o.is_zero()) return zero(modulus());
        if (is_polynomial() && o.is_polynomial()) {
            RatFunc r(modulus());
            r.num_ = num_ * o.num_;
            return r;
        }
        // cross-cancel to keep the single remaining gcd small
        DensePoly g1 = gcd(num_, o.den_);
        DensePoly g2 = gcd(o.num_, den_);
        DensePoly n = num_.divmod(g1).first * o.num_.divmod(g2).first;
        DensePoly d = den_.divmod(g2).first * o.den_.divmod(g1).first;
        RatFunc r(modulus());
        r.num_ = std::move(n);
        r.den_ = std::move(d);
        r.make_monic_den();
        return r;
    }

    RatFunc inv() const {
        if (is_zero()) throw arithmetic_error("division by zero in F_q(T)");
        RatFunc r(modulus());
        r.num_ = den_;
        r.den_ = num_;
        r.make_monic_den();
        return r;
    }

    RatFunc operator/(const RatFunc& o) const { return *this * o.inv(); }

    RatFunc pow(std::uint64_t e) const {
        RatFunc acc = one(modulus());
        RatFunc base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    /// x^(q^k), the k-fold Frobenius twist. Implemented as T -> T^(q^k) in
    /// numerator and denominator; F_q coefficients are Frobenius-fixed, and
    /// the substitution preserves the canonical form.
    RatFunc frobenius(unsigned k) const {
        if (k == 0 || is_zero()) return *this;
        if (num_.degree() <= 0 && den_.degree() <= 0) return *this;  // F_q is fixed
        std::uint64_t m = twist_exponent(k);
        RatFunc r(modulus());
        r.num_ = num_.substitute_power(m);
        r.den_ = den_.substitute_power(m);
        return r;
    }

    /// y with y^q = x, when x lies in F_q(T^q); detectable on the canonical
    /// form as all T-exponents divisible by q.
    std::optional<RatFunc> try_frobenius_inverse() const {
        if (is_zero()) return zero(modulus());
        auto contract = [this](const DensePoly& f) -> std::optional<DensePoly> {
            std::vector<std::uint32_t> out(f.degree() / q() + 1, 0);
            for (int i = 0; i <= f.degree(); ++i) {
                if (f.coeff(i) == 0) continue;
                if (i % static_cast<int>(q()) != 0) return std::nullopt;
                out[i / q()] = f.coeff(i);
            }
            return DensePoly(modulus(), std::move(out));
        };
        auto n = contract(num_);
        if (!n) return std::nullopt;
        auto d = contract(den_);
        if (!d) return std::nullopt;
        RatFunc r(modulus());
        r.num_ = std::move(*n);
        r.den_ = std::move(*d);
        return r;
    }

    std::uint64_t twist_exponent(unsigned k) const {
        std::uint64_t m = 1;
        for (unsigned i = 0; i < k; ++i) {
            m *= q();
            int deg = std::max(num_.degree(), den_.degree());
            if (deg > 0 && m > (1ull << 24) / static_cast<std::uint64_t>(deg))
                throw arithmetic_error("Frobenius twist exponent too large");
        }
        return m;
    }

  private:
    void normalize() {
        if (den_.is_zero()) throw arithmetic_error("zero denominator in F_q(T)");
        if (num_.is_zero()) {
            den_ = DensePoly::constant(modulus(), 1);
            return;
        }
        if (!den_.is_one()) {
            DensePoly g = gcd(num_, den_);
            if (!g.is_one()) {
                num_ = num_.divmod(g).first;
                den_ = den_.divmod(g).first;
            }
        }
        make_monic_den();
    }

    void make_monic_den() {
        if (den_.lead() != 1) {
            std::uint32_t s = Fp(modulus(), den_.lead()).inv().value();
            num_ = num_.scaled(s);
            den_ = den_.scaled(s);
        }
    }

    DensePoly num_;
    DensePoly den_;
};

inline RatFunc frobenius(const RatFunc& x, unsigned k) { return x.frobenius(k); }

}  // namespace tmdual
