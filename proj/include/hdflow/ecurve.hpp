#pragma once

#include <optional>
#include <vector>

#include "hdflow/matrix.hpp"

// The Legendre curve C_lambda: y^2 = x(x-1)(x-lambda) over F_q, its group
// law (the independent oracle for the self-map), the gamma_n/B-matrix
// determinant formula for x([p]Q), and the f/g factorization identity.

namespace hdflow {

class QuadCtx;
using QuadPtr = std::shared_ptr<const QuadCtx>;

// F_{q^2} presented as F_q(s) with s^2 = nu, nu the least non-residue of F_q
// by integer encoding. Used to lift x-coordinates whose cubic value is not a
// square; base-field values embed as (u, 0).
class QuadCtx : public std::enable_shared_from_this<QuadCtx> {
  public:
    static QuadPtr make(const CtxPtr& base);

    const CtxPtr& base() const { return base_; }
    const FieldElement& nu() const { return nu_; }

  private:
    QuadCtx(CtxPtr base, FieldElement nu) : base_(std::move(base)), nu_(std::move(nu)) {}
    CtxPtr base_;
    FieldElement nu_;
};

class QuadElt {
  public:
    QuadElt() = default; // null placeholder
    QuadElt(QuadPtr ctx, FieldElement u, FieldElement v);
    static QuadElt embed(const QuadPtr& ctx, const FieldElement& u);

    const QuadPtr& ctx() const { return ctx_; }
    const FieldElement& u() const { return u_; } // base component
    const FieldElement& v() const { return v_; } // coefficient of s
    bool is_zero() const { return u_.is_zero() && v_.is_zero(); }
    bool in_base() const { return v_.is_zero(); }

    friend QuadElt operator+(const QuadElt& a, const QuadElt& b);
    friend QuadElt operator-(const QuadElt& a, const QuadElt& b);
    friend QuadElt operator*(const QuadElt& a, const QuadElt& b);
    friend QuadElt operator/(const QuadElt& a, const QuadElt& b);
    QuadElt operator-() const;
    friend bool operator==(const QuadElt& a, const QuadElt& b);
    friend bool operator!=(const QuadElt& a, const QuadElt& b) { return !(a == b); }

  private:
    QuadPtr ctx_;
    FieldElement u_, v_;
};

// A point of the curve: infinity or an affine pair. T is the coordinate
// field, FieldElement for F_q points and QuadElt for F_{q^2} lifts.
template <class T>
class EcPt {
  public:
    EcPt() = default; // infinity
    EcPt(T x, T y) : inf_(false), x_(std::move(x)), y_(std::move(y)) {}
    static EcPt infinity() { return {}; }

    bool is_infinity() const { return inf_; }
    const T& x() const {
        if (inf_) raise(errc::out_of_range, "coordinate of the point at infinity");
        return x_;
    }
    const T& y() const {
        if (inf_) raise(errc::out_of_range, "coordinate of the point at infinity");
        return y_;
    }

    friend bool operator==(const EcPt& a, const EcPt& b) {
        if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
        return a.x_ == b.x_ && a.y_ == b.y_;
    }
    friend bool operator!=(const EcPt& a, const EcPt& b) { return !(a == b); }

  private:
    bool inf_ = true;
    T x_, y_;
};

using CurvePoint = EcPt<FieldElement>;
using QuadPoint = EcPt<QuadElt>;

// chord-tangent law on y^2 = x^3 - (1+lambda) x^2 + lambda x, written with
// ring operations only so one body serves both coordinate fields
template <class T>
EcPt<T> ec_add_generic(const T& lam, const T& one, const EcPt<T>& P, const EcPt<T>& Q) {
    if (P.is_infinity()) return Q;
    if (Q.is_infinity()) return P;
    const T &x1 = P.x(), &y1 = P.y(), &x2 = Q.x(), &y2 = Q.y();
    T s;
    if (x1 == x2) {
        if (y1 == -y2) return EcPt<T>::infinity(); // covers the 2-torsion y = 0
        T xx = x1 * x1;
        s = (xx + xx + xx - (one + one) * (one + lam) * x1 + lam) / (y1 + y1);
    } else {
        s = (y2 - y1) / (x2 - x1);
    }
    T x3 = s * s + one + lam - x1 - x2;
    T y3 = s * (x1 - x3) - y1;
    return EcPt<T>(std::move(x3), std::move(y3));
}

template <class T>
EcPt<T> ec_mul_generic(const T& lam, const T& one, u64 n, const EcPt<T>& P) {
    EcPt<T> acc = EcPt<T>::infinity();
    EcPt<T> base = P;
    while (n) {
        if (n & 1) acc = ec_add_generic(lam, one, acc, base);
        base = ec_add_generic(lam, one, base, base);
        n >>= 1;
    }
    return acc;
}

template <class T>
u64 point_order_generic(const T& lam, const T& one, const EcPt<T>& P, u64 bound) {
    EcPt<T> acc = P;
    u64 n = 1;
    while (!acc.is_infinity()) {
        acc = ec_add_generic(lam, one, acc, P);
        ++n;
        if (n > bound) raise(errc::internal_error, "point order exceeds the Hasse bound");
    }
    return n;
}

class Curve {
  public:
    // lambda must avoid {0, 1} (discriminant nonzero)
    Curve(CtxPtr ctx, FieldElement lam);

    const CtxPtr& ctx() const { return ctx_; }
    const FieldElement& lambda() const { return lam_; }

    FieldElement rhs(const FieldElement& x) const; // x(x-1)(x-lambda)
    bool contains(const CurvePoint& P) const;

  private:
    CtxPtr ctx_;
    FieldElement lam_;
};

CurvePoint ec_neg(const CurvePoint& P);
CurvePoint ec_add(const Curve& c, const CurvePoint& P, const CurvePoint& Q);
CurvePoint ec_mul(const Curve& c, u64 n, const CurvePoint& P);

// smallest n >= 1 with [n]P = infinity, naive accumulation within the Hasse
// window; the overloads differ in the ambient group (F_q vs F_{q^2} points)
u64 point_order(const Curve& c, const CurvePoint& P);
u64 point_order(const Curve& c, const QuadPoint& P);
bool is_p_coprime_torsion(const Curve& c, const CurvePoint& P);
bool is_p_coprime_torsion(const Curve& c, const QuadPoint& P);

// gamma_m..gamma_3m from (x(x-1)(x-lambda))^m = sum gamma_n x^n, returned as
// values (index n-m). Both the binomial closed form and the direct expansion
// are computed and must agree.
std::vector<FieldElement> gamma_table(const FieldElement& lam);
std::vector<BiPoly> gamma_table_bipoly(u32 p); // entries are polynomials in l alone

// The (m+1) x (m+2) matrix whose row r (0-indexed, r = j-m for j = m..2m)
// and column i entry is gamma_{j-i} when j-i >= m and a^p gamma_{p+j-i}
// otherwise. B_i removes column i.
Matrix<FieldElement> build_B(const Curve& c, const FieldElement& a);
Matrix<FieldElement> build_B_i(const Curve& c, const FieldElement& a, u32 i);
Matrix<BiPoly> build_B_bipoly(u32 p);
Matrix<BiPoly> build_B_i_bipoly(u32 p, u32 i);

// x([p]Q) for Q = (a, b) via a_p = (1/a^p) (det B_0 / det B_{m+1})^2;
// infinity when det B_{m+1} = 0 and det B_0 != 0, Indeterminate if both die
ProjPoint xp_via_determinant(const Curve& c, const FieldElement& a);

// the same x-coordinate from double-and-add, lifting (a, b) to F_{q^2} when
// the cubic value is a non-residue; accepts every finite a
ProjPoint xp_via_group_law(const Curve& c, const FieldElement& a);

// beta_i = (-1)^i det(B minus column i); B beta = 0
std::vector<FieldElement> beta_vector(const Curve& c, const FieldElement& a);
std::vector<BiPoly> beta_vector_bipoly(u32 p);

// both curve points over x = a: in the base field when a(a-1)(a-lambda) is a
// square there, otherwise over the quadratic extension
struct LiftResult {
    std::vector<CurvePoint> base;
    std::vector<QuadPoint> ext;
    QuadPtr ext_ctx; // set when ext is used
};
LiftResult lift_x(const Curve& c, const FieldElement& a);

// reconstruction of (x-a)^p (x-a_p) = f^2 - x(x-1)(x-lambda) g^2 from the
// beta kernel vector; residual is the difference and must vanish. When
// a_p is infinite the right factor degenerates and the target is the monic
// proportionality f^2 - x(x-1)(x-lambda) g^2 ~ (x-a)^p.
struct FactorizationResult {
    UniPoly f, g;
    ProjPoint a_p;
    UniPoly residual;
    bool ok;
};
FactorizationResult factorization_check(const Curve& c, const CurvePoint& Q);

} // namespace hdflow
