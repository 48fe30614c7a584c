#pragma once

#include <cstdint>
#include <string>

#include "errors.hpp"

namespace tmdual {

/// Largest supported modulus. Keeps (p-1)^2 * length away from uint64
/// overflow in polynomial accumulation loops.
inline constexpr std::uint32_t max_prime = 32749;

inline bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline std::uint32_t checked_prime(std::uint64_t p) {
    if (!is_prime(p) || p > max_prime)
        throw arithmetic_error("modulus " + std::to_string(p) +
                               " is not a prime in [2, " + std::to_string(max_prime) + "]");
    return static_cast<std::uint32_t>(p);
}

/// Element of the prime field F_p, p a runtime prime. Value is always the
/// canonical residue in [0, p).
class Fp {
  public:
    Fp(std::uint32_t p, std::int64_t v) : p_(p) {
        std::int64_t r = v % static_cast<std::int64_t>(p);
        if (r < 0) r += p;
        v_ = static_cast<std::uint32_t>(r);
    }

    std::uint32_t modulus() const { return p_; }
    std::uint32_t value() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    Fp operator+(const Fp& o) const { return Fp(match(o), (std::uint64_t(v_) + o.v_) % p_); }
    Fp operator-(const Fp& o) const { return Fp(match(o), (std::uint64_t(v_) + p_ - o.v_) % p_); }
    Fp operator*(const Fp& o) const { return Fp(match(o), (std::uint64_t(v_) * o.v_) % p_); }
    Fp operator-() const { return Fp(p_, v_ == 0 ? 0 : p_ - v_); }

    Fp inv() const {
        if (v_ == 0) throw arithmetic_error("inverse of zero in F_" + std::to_string(p_));
        // extended Euclid on (v, p)
        std::int64_t a = v_, b = p_, x0 = 1, x1 = 0;
        while (b != 0) {
            std::int64_t q = a / b;
            std::int64_t t = a - q * b;
            a = b; b = t;
            t = x0 - q * x1;
            x0 = x1; x1 = t;
        }
        return Fp(p_, x0);
    }

    Fp operator/(const Fp& o) const { return *this * o.inv(); }

    bool operator==(const Fp& o) const { return p_ == o.p_ && v_ == o.v_; }
    bool operator!=(const Fp& o) const { return !(*this == o); }

  private:
    std::uint32_t match(const Fp& o) const {
        if (p_ != o.p_) throw arithmetic_error("mixed prime moduli");
        return p_;
    }

    std::uint32_t p_;
    std::uint32_t v_;
};

}  // namespace tmdual
