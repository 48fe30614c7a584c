#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ratfunc.hpp"

namespace tmdual {

/// Dense matrix over L = F_q(T). Row-major.
class LMatrix {
  public:
    LMatrix(std::uint32_t p, std::size_t rows, std::size_t cols)
        : p_(p), rows_(rows), cols_(cols), e_(rows * cols, RatFunc::zero(p)) {}

    static LMatrix identity(std::uint32_t p, std::size_t n) {
        LMatrix m(p, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = RatFunc::one(p);
        return m;
    }
    static LMatrix scalar(std::uint32_t p, std::size_t n, const RatFunc& s) {
        LMatrix m(p, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = s;
        return m;
    }
    static LMatrix theta_identity(std::uint32_t p, std::size_t n) {
        return scalar(p, n, RatFunc::theta(p));
    }

    std::uint32_t modulus() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    RatFunc& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const RatFunc& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    bool is_zero() const {
        for (const auto& x : e_)
            if (!x.is_zero()) return false;
        return true;
    }

    bool operator==(const LMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool operator!=(const LMatrix& o) const { return !(*this == o); }

    LMatrix operator+(const LMatrix& o) const {
        check_same_shape(o);
        LMatrix r(*this);
        for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = r.e_[k] + o.e_[k];
        return r;
    }

    LMatrix operator-(const LMatrix& o) const {
        check_same_shape(o);
        LMatrix r(*this);
        for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = r.e_[k] - o.e_[k];
        return r;
    }

    LMatrix operator-() const {
        LMatrix r(*this);
        for (auto& x : r.e_) x = -x;
        return r;
    }

    LMatrix operator*(const LMatrix& o) const {
        if (cols_ != o.rows_) throw dimension_error("matrix product shape mismatch");
        LMatrix r(p_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const RatFunc& a = at(i, k);
                if (a.is_zero()) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    const RatFunc& b = o.at(k, j);
                    if (b.is_zero()) continue;
                    r.at(i, j) = r.at(i, j) + a * b;
                }
            }
        return r;
    }

    LMatrix scaled(const RatFunc& s) const {
        LMatrix r(*this);
        for (auto& x : r.e_) x = x * s;
        return r;
    }

    /// entrywise k-fold Frobenius twist
    LMatrix frobenius(unsigned k) const {
        if (k == 0) return *this;
        LMatrix r(*this);
        for (auto& x : r.e_) x = x.frobenius(k);
        return r;
    }

    LMatrix transpose() const {
        LMatrix r(p_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    /// Gauss-Jordan inverse; throws singular_matrix_error.
    LMatrix inverse() const {
        if (rows_ != cols_) throw dimension_error("inverse of a non-square matrix");
        std::size_t n = rows_;
        LMatrix a(*this);
        LMatrix inv = identity(p_, n);
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t piv = col;
            while (piv < n && a.at(piv, col).is_zero()) ++piv;
            if (piv == n) throw singular_matrix_error("singular matrix");
            if (piv != col) {
                for (std::size_t j = 0; j < n; ++j) {
                    std::swap(a.at(piv, j), a.at(col, j));
                    std::swap(inv.at(piv, j), inv.at(col, j));
                }
            }
            RatFunc s = a.at(col, col).inv();
            for (std::size_t j = 0; j < n; ++j) {
                a.at(col, j) = a.at(col, j) * s;
                inv.at(col, j) = inv.at(col, j) * s;
            }
            for (std::size_t i = 0; i < n; ++i) {
                if (i == col || a.at(i, col).is_zero()) continue;
                RatFunc f = a.at(i, col);
                for (std::size_t j = 0; j < n; ++j) {
                    a.at(i, j) = a.at(i, j) - f * a.at(col, j);
                    inv.at(i, j) = inv.at(i, j) - f * inv.at(col, j);
                }
            }
        }
        return inv;
    }

    bool is_invertible() const {
        try {
            (void)inverse();
            return true;
        } catch (const singular_matrix_error&) {
            return false;
        }
    }

    /// M^d = 0 test by repeated squaring up to the dimension.
    bool is_nilpotent() const {
        if (rows_ != cols_) throw dimension_error("nilpotency of a non-square matrix");
        LMatrix m(*this);
        std::size_t e = 1;
        while (true) {
            if (m.is_zero()) return true;
            if (e >= rows_) return false;
            m = m * m;
            e *= 2;
        }
    }

  private:
    void check_same_shape(const LMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw dimension_error("matrix shape mismatch");
    }

    std::uint32_t p_;
    std::size_t rows_, cols_;
    std::vector<RatFunc> e_;
};

}  // namespace tmdual
