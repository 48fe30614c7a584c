#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "tmodule.hpp"

namespace tmdual {

/// Deterministic instance generator for randomized verification. Entry
/// degrees stay tiny; Frobenius twists blow degrees up by q^k on their own.
class RandomSource {
  public:
    explicit RandomSource(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t next(std::uint64_t bound) { return rng_() % bound; }

    DensePoly poly(std::uint32_t p, int max_deg, bool nonzero = false) {
        while (true) {
            std::vector<std::uint32_t> c(next(max_deg + 1) + 1);
            for (auto& x : c) x = static_cast<std::uint32_t>(next(p));
            DensePoly f(p, std::move(c));
            if (!nonzero || !f.is_zero()) return f;
        }
    }

    RatFunc ratfunc(std::uint32_t p, int max_deg = 2, bool with_den = true) {
        DensePoly num = poly(p, max_deg);
        if (!with_den || next(2) == 0) return RatFunc::from_poly(num);
        return RatFunc(num, poly(p, max_deg, true));
    }

    RatFunc nonzero_ratfunc(std::uint32_t p, int max_deg = 2) {
        while (true) {
            RatFunc x = ratfunc(p, max_deg);
            if (!x.is_zero()) return x;
        }
    }

    /// mostly constant entries; an occasional degree-1 polynomial
    RatFunc small_entry(std::uint32_t p) {
        if (next(10) < 7) return RatFunc::integer(p, static_cast<std::int64_t>(next(p)));
        return RatFunc::from_poly(poly(p, 1));
    }

    LMatrix matrix(std::uint32_t p, std::size_t rows, std::size_t cols) {
        LMatrix m(p, rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = small_entry(p);
        return m;
    }

    LMatrix invertible_matrix(std::uint32_t p, std::size_t n) {
        while (true) {
            LMatrix m = matrix(p, n, n);
            if (m.is_invertible()) return m;
        }
    }

    /// strictly lower triangular, hence nilpotent
    LMatrix nilpotent_matrix(std::uint32_t p, std::size_t n) {
        LMatrix m(p, n, n);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) m.at(i, j) = small_entry(p);
        return m;
    }

    TModule strictly_pure(std::uint32_t p, std::size_t d, std::size_t n, bool with_nilpotence = false) {
        std::vector<LMatrix> coeffs;
        LMatrix m0 = LMatrix::theta_identity(p, d);
        if (with_nilpotence && d > 1) m0 = m0 + nilpotent_matrix(p, d);
        coeffs.push_back(std::move(m0));
        for (std::size_t i = 1; i < n; ++i) coeffs.push_back(matrix(p, d, d));
        coeffs.push_back(invertible_matrix(p, d));
        return TModule::make(std::move(coeffs));
    }

    SkewPoly skew_poly(std::uint32_t p, int max_deg) {
        std::vector<RatFunc> c;
        std::size_t len = next(max_deg + 1) + 1;
        for (std::size_t i = 0; i < len; ++i) c.push_back(ratfunc(p, 1));
        return SkewPoly(p, std::move(c));
    }

  private:
    std::mt19937_64 rng_;
};

}  // namespace tmdual
