#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hdflow/ff.hpp"

namespace hdflow {

// Univariate polynomial over F_{p^f} with exact coefficient arithmetic.
// coeffs[i] is the coefficient of x^i; the vector carries no trailing zeros,
// so the zero polynomial is the empty vector and deg(zero) = -1.
class UniPoly {
  public:
    UniPoly() = default; // null; usable only as a placeholder
    static UniPoly zero(CtxPtr ctx);
    static UniPoly one(const CtxPtr& ctx);
    static UniPoly constant(const FieldElement& c);
    static UniPoly x(const CtxPtr& ctx);
    static UniPoly monomial(size_t degree, const FieldElement& c);
    static UniPoly from_coeffs(CtxPtr ctx, std::vector<FieldElement> coeffs);

    const CtxPtr& ctx() const { return ctx_; }
    int deg() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<FieldElement>& coeffs() const { return c_; }
    FieldElement coeff(size_t i) const; // zero beyond the degree
    FieldElement lc() const;            // leading coefficient; zero poly has none

    UniPoly monic() const;
    FieldElement eval(const FieldElement& x) const;

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const FieldElement& c, const UniPoly& a);
    UniPoly operator-() const;
    friend bool operator==(const UniPoly& a, const UniPoly& b);
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

  private:
    void trim();
    CtxPtr ctx_;
    std::vector<FieldElement> c_;
};

// quotient and remainder, deg(rem) < deg(b); b must be nonzero
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);

// exact quotient; raises ExactDivisionFailed if b does not divide a
UniPoly divexact(const UniPoly& a, const UniPoly& b);

// monic gcd via Euclid; gcd(P, 0) = monic(P); both zero not allowed
UniPoly gcd(UniPoly a, UniPoly b);

UniPoly upow(const UniPoly& a, u64 n);

// Bivariate polynomial over the prime field F_p in the two indeterminates
// l (the Legendre parameter lambda) and a (the base point abscissa).
// Row i holds the F_p[a] coefficient of l^i as a little-endian digit vector;
// rows and row tails carry no trailing zeros.
class BiPoly {
  public:
    BiPoly() : p_(0) {} // null
    static BiPoly zero(u32 p);
    static BiPoly one(u32 p);
    static BiPoly constant(u32 p, u32 c);
    static BiPoly lambda_var(u32 p);
    static BiPoly a_var(u32 p);
    static BiPoly monomial(u32 p, size_t deg_l, size_t deg_a, u32 c);

    u32 p() const { return p_; }
    bool is_zero() const { return rows_.empty(); }
    int deg_lambda() const { return static_cast<int>(rows_.size()) - 1; }
    int deg_a() const;
    u32 coeff(size_t deg_l, size_t deg_a) const;
    size_t term_count() const;

    // evaluation in any F_{p^k} of the same characteristic
    FieldElement eval(const FieldElement& lam, const FieldElement& a) const;

    std::string to_string() const;

    friend BiPoly operator+(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator-(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    BiPoly operator-() const;
    friend bool operator==(const BiPoly& a, const BiPoly& b);
    friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }

    friend BiPoly divexact(const BiPoly& a, const BiPoly& b);

  private:
    explicit BiPoly(u32 p) : p_(p) {}
    void trim();
    u32 p_;
    std::vector<zp::Vec> rows_;
};

// exact quotient in F_p[l,a]; raises ExactDivisionFailed if b does not divide a
BiPoly divexact(const BiPoly& a, const BiPoly& b);

BiPoly bpow(const BiPoly& a, u64 n);

} // namespace hdflow
