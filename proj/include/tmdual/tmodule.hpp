#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "skew.hpp"

namespace tmdual {

/// Rejection witness: the tau^0-part minus theta*I is not nilpotent.
struct not_a_tmodule_error : std::runtime_error {
    LMatrix residue;
    not_a_tmodule_error(LMatrix r, const std::string& m)
        : std::runtime_error(m), residue(std::move(r)) {}
};

struct Classification {
    bool strictly_pure;
    bool has_nilpotence;
    int deg_tau;
    std::size_t dim;
};

/// A t-module of dimension d: the action of t is
///   Phi_t = (theta I_d + N) tau^0 + M_1 tau + ... + M_n tau^n,
/// N nilpotent, M_n != 0. Trailing zero coefficients are stripped at
/// construction so deg_tau is well-defined.
class TModule {
  public:
    /// Validates and constructs; throws not_a_tmodule_error with the
    /// non-nilpotent residue M_0 - theta*I as witness.
    static TModule make(std::vector<LMatrix> coeffs) {
        if (coeffs.empty()) throw dimension_error("t-module needs at least M0");
        std::size_t d = coeffs[0].rows();
        if (d == 0) throw dimension_error("t-module dimension must be positive");
        for (const auto& m : coeffs)
            if (m.rows() != d || m.cols() != d)
                throw dimension_error("t-module coefficients must be square of equal size");
        while (coeffs.size() > 1 && coeffs.back().is_zero()) coeffs.pop_back();
        std::uint32_t p = coeffs[0].modulus();
        LMatrix residue = coeffs[0] - LMatrix::theta_identity(p, d);
        if (!residue.is_nilpotent())
            throw not_a_tmodule_error(residue, "tau^0 part is not theta*I + nilpotent");
        return TModule(std::move(coeffs));
    }

    static TModule carlitz(std::uint32_t p) {
        std::vector<LMatrix> c;
        c.push_back(LMatrix::theta_identity(p, 1));
        c.push_back(LMatrix::identity(p, 1));
        return make(std::move(c));
    }

    std::uint32_t modulus() const { return m_[0].modulus(); }
    std::size_t dim() const { return m_[0].rows(); }
    int deg_tau() const { return static_cast<int>(m_.size()) - 1; }
    const LMatrix& coeff(std::size_t i) const { return m_[i]; }
    const std::vector<LMatrix>& coeffs() const { return m_; }

    /// nilpotent part N = M_0 - theta*I
    LMatrix nilpotent_part() const {
        return m_[0] - LMatrix::theta_identity(modulus(), dim());
    }

    SkewMatrix action() const { return SkewMatrix::from_coeffs(m_); }

    Classification classify() const {
        Classification c;
        c.dim = dim();
        c.deg_tau = deg_tau();
        c.has_nilpotence = !nilpotent_part().is_zero();
        c.strictly_pure = deg_tau() >= 1 && m_.back().is_invertible();
        return c;
    }

    /// The t-module with action P^-1 Phi_t P; coefficient-wise
    /// M_i -> P^-1 M_i P^(i) since tau^i P = P^(i) tau^i.
    TModule conjugate(const LMatrix& p_mat) const {
        LMatrix pinv = p_mat.inverse();
        std::vector<LMatrix> out;
        out.reserve(m_.size());
        for (std::size_t i = 0; i < m_.size(); ++i)
            out.push_back(pinv * m_[i] * p_mat.frobenius(static_cast<unsigned>(i)));
        return make(std::move(out));
    }

    bool operator==(const TModule& o) const { return m_ == o.m_; }
    bool operator!=(const TModule& o) const { return !(*this == o); }

  private:
    explicit TModule(std::vector<LMatrix> coeffs) : m_(std::move(coeffs)) {}
    std::vector<LMatrix> m_;
};

/// Exact test of f Phi_t = Psi_t f, where f is stored with
/// rows = dim(target), cols = dim(source). This is the orientation the
/// pullback of biderivation rows needs: row * f maps Der(Psi, C) rows to
/// Der(Phi, C) rows.
inline bool check_morphism(const SkewMatrix& f, const TModule& source, const TModule& target) {
    if (f.rows() != target.dim() || f.cols() != source.dim())
        throw dimension_error("morphism matrix must be dim(target) x dim(source)");
    return f * source.action() == target.action() * f;
}

struct morphism_error : std::runtime_error {
    explicit morphism_error(const std::string& m) : std::runtime_error(m) {}
};

class Morphism {
  public:
    static Morphism make(TModule source, TModule target, SkewMatrix mat) {
        if (!check_morphism(mat, source, target))
            throw morphism_error("matrix does not intertwine the two t-actions");
        return Morphism(std::move(source), std::move(target), std::move(mat));
    }

    static Morphism identity(const TModule& phi) {
        return make(phi, phi, SkewMatrix::identity(phi.modulus(), phi.dim()));
    }

    /// multiplication by t as an endomorphism
    static Morphism mult_t(const TModule& phi) { return make(phi, phi, phi.action()); }

    const TModule& source() const { return src_; }
    const TModule& target() const { return tgt_; }
    const SkewMatrix& matrix() const { return mat_; }

    /// g after f; source(f) -> target(g), valid when target(f) = source(g)
    friend Morphism compose(const Morphism& g, const Morphism& f) {
        if (f.tgt_ != g.src_) throw dimension_error("morphisms are not composable");
        return Morphism(f.src_, g.tgt_, g.mat_ * f.mat_);
    }

  private:
    Morphism(TModule s, TModule t, SkewMatrix m)
        : src_(std::move(s)), tgt_(std::move(t)), mat_(std::move(m)) {}

    TModule src_, tgt_;
    SkewMatrix mat_;
};

}  // namespace tmdual
