#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "lmatrix.hpp"

namespace tmdual {

/// Twisted polynomial in L{tau} with the commutation tau * c = c^(1) * tau.
/// Coefficient index is the tau-power; no trailing zeros.
class SkewPoly {
  public:
    explicit SkewPoly(std::uint32_t p) : p_(p) {}
    SkewPoly(std::uint32_t p, std::vector<RatFunc> coeffs) : p_(p), c_(std::move(coeffs)) { trim(); }

    static SkewPoly zero(std::uint32_t p) { return SkewPoly(p); }
    static SkewPoly constant(RatFunc v) {
        std::uint32_t p = v.modulus();
        return SkewPoly(p, {std::move(v)});
    }
    /// c * tau^k
    static SkewPoly monomial(RatFunc c, std::size_t k) {
        std::uint32_t p = c.modulus();
        std::vector<RatFunc> v(k + 1, RatFunc::zero(p));
        v[k] = std::move(c);
        return SkewPoly(p, std::move(v));
    }
    static SkewPoly tau(std::uint32_t p, std::size_t k = 1) {
        return monomial(RatFunc::one(p), k);
    }

    std::uint32_t modulus() const { return p_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    RatFunc coeff(std::size_t i) const { return i < c_.size() ? c_[i] : RatFunc::zero(p_); }
    const std::vector<RatFunc>& coeffs() const { return c_; }

    /// tau^0 coefficient
    RatFunc partial() const { return coeff(0); }

    bool operator==(const SkewPoly& o) const { return p_ == o.p_ && c_ == o.c_; }
    bool operator!=(const SkewPoly& o) const { return !(*this == o); }

    SkewPoly operator-() const {
        SkewPoly r(*this);
        for (auto& x : r.c_) x = -x;
        return r;
    }

    SkewPoly operator+(const SkewPoly& o) const {
        SkewPoly r(p_);
        std::size_t n = std::max(c_.size(), o.c_.size());
        r.c_.reserve(n);
        for (std::size_t i = 0; i < n; ++i) r.c_.push_back(coeff(i) + o.coeff(i));
        r.trim();
        return r;
    }

    SkewPoly operator-(const SkewPoly& o) const { return *this + (-o); }

    /// (c tau^i)(d tau^j) = c d^(i) tau^(i+j), extended bilinearly.
    SkewPoly operator*(const SkewPoly& o) const {
        if (is_zero() || o.is_zero()) return zero(p_);
        SkewPoly r(p_);
        r.c_.assign(c_.size() + o.c_.size() - 1, RatFunc::zero(p_));
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) {
                if (o.c_[j].is_zero()) continue;
                r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j].frobenius(static_cast<unsigned>(i));
            }
        }
        r.trim();
        return r;
    }

    SkewPoly scaled_left(const RatFunc& b) const {
        SkewPoly r(*this);
        for (auto& x : r.c_) x = b * x;
        r.trim();
        return r;
    }

    /// The F_q-linear map on points: sum c_i x^(q^i).
    RatFunc apply_point(const RatFunc& x) const {
        RatFunc acc = RatFunc::zero(p_);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            acc = acc + c_[i] * x.frobenius(static_cast<unsigned>(i));
        }
        return acc;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::uint32_t p_;
    std::vector<RatFunc> c_;
};

/// Rectangular matrix over L{tau}; the ring is noncommutative, so the order
/// of factors in products is preserved everywhere.
class SkewMatrix {
  public:
    SkewMatrix(std::uint32_t p, std::size_t rows, std::size_t cols)
        : p_(p), rows_(rows), cols_(cols), e_(rows * cols, SkewPoly::zero(p)) {}

    static SkewMatrix identity(std::uint32_t p, std::size_t n) {
        SkewMatrix m(p, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = SkewPoly::constant(RatFunc::one(p));
        return m;
    }

    static SkewMatrix from_lmatrix(const LMatrix& a, std::size_t tau_power = 0) {
        SkewMatrix m(a.modulus(), a.rows(), a.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                if (!a.at(i, j).is_zero()) m.at(i, j) = SkewPoly::monomial(a.at(i, j), tau_power);
        return m;
    }

    /// sum_i coeffs[i] tau^i
    static SkewMatrix from_coeffs(const std::vector<LMatrix>& coeffs) {
        SkewMatrix m(coeffs.front().modulus(), coeffs.front().rows(), coeffs.front().cols());
        for (std::size_t k = 0; k < coeffs.size(); ++k) m = m + from_lmatrix(coeffs[k], k);
        return m;
    }

    std::uint32_t modulus() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    SkewPoly& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const SkewPoly& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    int degree() const {
        int d = -1;
        for (const auto& x : e_) d = std::max(d, x.degree());
        return d;
    }

    bool is_zero() const {
        for (const auto& x : e_)
            if (!x.is_zero()) return false;
        return true;
    }

    bool operator==(const SkewMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool operator!=(const SkewMatrix& o) const { return !(*this == o); }

    SkewMatrix operator+(const SkewMatrix& o) const {
        check_same_shape(o);
        SkewMatrix r(*this);
        for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = r.e_[k] + o.e_[k];
        return r;
    }

    SkewMatrix operator-(const SkewMatrix& o) const {
        check_same_shape(o);
        SkewMatrix r(*this);
        for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = r.e_[k] - o.e_[k];
        return r;
    }

    SkewMatrix operator*(const SkewMatrix& o) const {
        if (cols_ != o.rows_) throw dimension_error("skew matrix product shape mismatch");
        SkewMatrix r(p_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const SkewPoly& a = at(i, k);
                if (a.is_zero()) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    const SkewPoly& b = o.at(k, j);
                    if (b.is_zero()) continue;
                    r.at(i, j) = r.at(i, j) + a * b;
                }
            }
        return r;
    }

    /// entrywise tau^0 coefficient
    LMatrix partial() const {
        LMatrix r(p_, rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j).partial();
        return r;
    }

    /// coefficient matrix of tau^k
    LMatrix coeff_matrix(std::size_t k) const {
        LMatrix r(p_, rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j).coeff(k);
        return r;
    }

    std::vector<LMatrix> coeff_matrices() const {
        std::vector<LMatrix> out;
        int d = std::max(degree(), 0);
        out.reserve(d + 1);
        for (int k = 0; k <= d; ++k) out.push_back(coeff_matrix(k));
        return out;
    }

  private:
    void check_same_shape(const SkewMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw dimension_error("skew matrix shape mismatch");
    }

    std::uint32_t p_;
    std::size_t rows_, cols_;
    std::vector<SkewPoly> e_;
};

inline SkewPoly skew_mul(const SkewPoly& a, const SkewPoly& b) { return a * b; }
inline SkewMatrix skew_matrix_mul(const SkewMatrix& a, const SkewMatrix& b) { return a * b; }
inline RatFunc apply_point(const SkewPoly& a, const RatFunc& x) { return a.apply_point(x); }

}  // namespace tmdual
