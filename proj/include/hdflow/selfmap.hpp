#pragma once

#include <mutex>
#include <vector>

#include "hdflow/matrix.hpp"

// The multiplication-by-p self-map phi_{lambda,p} on P^1 over F_{p^f},
// realized two independent ways: pointwise through the delta_n kernel
// determinants, and globally as a reduced rational map of degree p^2.

namespace hdflow {

// delta_n(lambda, a) = (lambda^p (1 - a^p) - (lambda^p - a^p) lambda^n) / n.
// Every index the kernel matrix uses lies in 1..p-1, so 1/n is a unit mod p.
FieldElement delta(const FieldElement& lam, const FieldElement& a, u32 n);
BiPoly delta_bipoly(u32 p, u32 n);

// The m x (m+1) matrix with row r (1-indexed), column c entry delta_{m-r+c}:
// top row delta_m .. delta_{p-1}, bottom row delta_1 .. delta_{m+1}.
Matrix<FieldElement> build_A(const FieldElement& lam, const FieldElement& a);
Matrix<BiPoly> build_A_bipoly(u32 p);

// A_i for i in {m+1, ..., p}: A with its (i-m)-th column removed (1-indexed),
// i.e. internal 0-indexed column i-m-1.
Matrix<FieldElement> build_A_i(const FieldElement& lam, const FieldElement& a, u32 i);
Matrix<BiPoly> build_A_i_bipoly(u32 p, u32 i);

// alpha_i = (-1)^i det(A_i) for i = m+1..p; satisfies A alpha = 0
std::vector<FieldElement> alpha_vector(const FieldElement& lam, const FieldElement& a);
std::vector<BiPoly> alpha_vector_bipoly(u32 p);

// A quotient num/den of coprime polynomials with monic den (den = 1 when
// constant), acting on P^1 projectively.
class RationalMap {
  public:
    RationalMap() = default; // null placeholder
    RationalMap(UniPoly num, UniPoly den);

    const UniPoly& num() const { return num_; }
    const UniPoly& den() const { return den_; }
    int degree() const { return std::max(num_.deg(), den_.deg()); }

    ProjPoint eval(const ProjPoint& z) const;

    friend bool operator==(const RationalMap& a, const RationalMap& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalMap& a, const RationalMap& b) { return !(a == b); }

  private:
    UniPoly num_, den_;
};

class SelfMap {
  public:
    // lambda must avoid {0, 1}
    SelfMap(CtxPtr ctx, FieldElement lam);

    const CtxPtr& ctx() const { return ctx_; }
    const FieldElement& lambda() const { return lam_; }
    u32 m() const { return m_; }

    // phi(a) = (a^p / lambda^{p-1}) (det A_{m+1} / det A_p)^2 for finite a
    // with det A_p != 0; a = infinity and vanishing det A_p fall back to the
    // reduced rational map, and the vanishing points are recorded.
    ProjPoint eval(const ProjPoint& a) const;

    const RationalMap& rational() const { return rat_; }

    // P(t) = (alpha_p^2 / (lambda-1)) t - (alpha_{m+1}^2 / (lambda-1)) a^p / lambda^{p-1};
    // whenever alpha_p != 0 its root is phi(a)
    UniPoly grading_polynomial(const FieldElement& a) const;

    // finite points where det A_p vanished and the fallback resolved the value
    std::vector<u64> fallback_points() const;

  private:
    FieldElement det_A_removed(const FieldElement& a, size_t skip_col) const;

    CtxPtr ctx_;
    FieldElement lam_;
    u32 m_;
    std::vector<FieldElement> lam_pow_;   // lambda^0 .. lambda^p
    std::vector<FieldElement> inv_n_;     // 1/n for n = 1..p-1
    FieldElement lam_p_, inv_lam_pm1_;    // lambda^p, lambda^{-(p-1)}
    RationalMap rat_;
    mutable std::mutex log_mu_;
    mutable std::vector<u64> fallback_;
};

// the displayed degree-p^2 formulas for p = 3, 5, 7, reduced
RationalMap selfmap_closed_form(const CtxPtr& ctx, const FieldElement& lam);

} // namespace hdflow
