#include "hdflow/ecurve.hpp"

#include <cmath>

namespace hdflow {

QuadPtr QuadCtx::make(const CtxPtr& base) {
    for (u64 e = 2; e < base->q(); ++e) {
        FieldElement c = base->encode(e);
        if (!is_square(c)) return QuadPtr(new QuadCtx(base, c));
    }
    raise(errc::internal_error, "no non-residue found"); // impossible for odd q
}

QuadElt::QuadElt(QuadPtr ctx, FieldElement u, FieldElement v)
    : ctx_(std::move(ctx)), u_(std::move(u)), v_(std::move(v)) {}

QuadElt QuadElt::embed(const QuadPtr& ctx, const FieldElement& u) {
    return QuadElt(ctx, u, ctx->base()->zero());
}

namespace {

void require_same_qctx(const QuadElt& a, const QuadElt& b) {
    if (!a.ctx() || !b.ctx() || !a.ctx()->base()->same(*b.ctx()->base()) || a.ctx()->nu() != b.ctx()->nu())
        raise(errc::ctx_mismatch, "operands from different quadratic extensions");
}

} // namespace

QuadElt operator+(const QuadElt& a, const QuadElt& b) {
    require_same_qctx(a, b);
    return QuadElt(a.ctx_, a.u_ + b.u_, a.v_ + b.v_);
}

QuadElt operator-(const QuadElt& a, const QuadElt& b) {
    require_same_qctx(a, b);
    return QuadElt(a.ctx_, a.u_ - b.u_, a.v_ - b.v_);
}

QuadElt QuadElt::operator-() const { return QuadElt(ctx_, -u_, -v_); }

QuadElt operator*(const QuadElt& a, const QuadElt& b) {
    require_same_qctx(a, b);
    const FieldElement& nu = a.ctx_->nu();
    return QuadElt(a.ctx_, a.u_ * b.u_ + nu * (a.v_ * b.v_), a.u_ * b.v_ + a.v_ * b.u_);
}

QuadElt operator/(const QuadElt& a, const QuadElt& b) {
    require_same_qctx(a, b);
    if (b.is_zero()) raise(errc::division_by_zero, "quadratic extension division by zero");
    // 1/(u + vs) = (u - vs)/(u^2 - nu v^2); the norm is nonzero off zero
    FieldElement norm = b.u_ * b.u_ - a.ctx_->nu() * (b.v_ * b.v_);
    FieldElement inv = ff_inv(norm);
    QuadElt conj(b.ctx_, b.u_, -b.v_);
    return QuadElt(a.ctx_, (a.u_ * conj.u_ + a.ctx_->nu() * (a.v_ * conj.v_)) * inv,
                   (a.u_ * conj.v_ + a.v_ * conj.u_) * inv);
}

bool operator==(const QuadElt& a, const QuadElt& b) {
    require_same_qctx(a, b);
    return a.u_ == b.u_ && a.v_ == b.v_;
}

Curve::Curve(CtxPtr ctx, FieldElement lam) : ctx_(std::move(ctx)), lam_(std::move(lam)) {
    if (!lam_.ctx() || !lam_.ctx()->same(*ctx_)) raise(errc::ctx_mismatch, "lambda from a different field");
    if (lam_.is_zero() || lam_ == ctx_->one()) raise(errc::out_of_range, "lambda must avoid 0 and 1");
}

FieldElement Curve::rhs(const FieldElement& x) const { return x * (x - ctx_->one()) * (x - lam_); }

bool Curve::contains(const CurvePoint& P) const {
    if (P.is_infinity()) return true;
    return P.y() * P.y() == rhs(P.x());
}

namespace {

void require_on_curve(const Curve& c, const CurvePoint& P) {
    if (!c.contains(P)) raise(errc::point_not_on_curve, "point fails the curve equation");
}

u64 hasse_bound(u64 q) {
    u64 r = static_cast<u64>(2.0 * std::sqrt(static_cast<double>(q))) + 2;
    return q + 1 + r;
}

} // namespace

CurvePoint ec_neg(const CurvePoint& P) {
    if (P.is_infinity()) return P;
    return CurvePoint(P.x(), -P.y());
}

CurvePoint ec_add(const Curve& c, const CurvePoint& P, const CurvePoint& Q) {
    require_on_curve(c, P);
    require_on_curve(c, Q);
    return ec_add_generic(c.lambda(), c.ctx()->one(), P, Q);
}

CurvePoint ec_mul(const Curve& c, u64 n, const CurvePoint& P) {
    require_on_curve(c, P);
    return ec_mul_generic(c.lambda(), c.ctx()->one(), n, P);
}

u64 point_order(const Curve& c, const CurvePoint& P) {
    require_on_curve(c, P);
    return point_order_generic(c.lambda(), c.ctx()->one(), P, hasse_bound(c.ctx()->q()));
}

u64 point_order(const Curve& c, const QuadPoint& P) {
    if (P.is_infinity()) return 1;
    const QuadPtr& qc = P.x().ctx();
    QuadElt lam = QuadElt::embed(qc, c.lambda());
    QuadElt one = QuadElt::embed(qc, c.ctx()->one());
    QuadElt rhs = P.x() * (P.x() - one) * (P.x() - lam);
    if (P.y() * P.y() != rhs) raise(errc::point_not_on_curve, "lifted point fails the curve equation");
    u64 q = c.ctx()->q();
    return point_order_generic(lam, one, P, hasse_bound(q * q));
}

bool is_p_coprime_torsion(const Curve& c, const CurvePoint& P) {
    return point_order(c, P) % c.ctx()->p() != 0;
}

bool is_p_coprime_torsion(const Curve& c, const QuadPoint& P) {
    return point_order(c, P) % c.ctx()->p() != 0;
}

namespace {

// C(m, i) for m < p, exact in F_p
std::vector<std::vector<u32>> pascal(u32 m, u32 p) {
    std::vector<std::vector<u32>> t(m + 1);
    for (u32 r = 0; r <= m; ++r) {
        t[r].assign(r + 1, 1);
        for (u32 c = 1; c < r; ++c) t[r][c] = zp::add(t[r - 1][c - 1], t[r - 1][c], p);
    }
    return t;
}

} // namespace

std::vector<FieldElement> gamma_table(const FieldElement& lam) {
    const CtxPtr& ctx = lam.ctx();
    u32 p = ctx->p();
    u32 m = (p - 1) / 2;
    auto binom = pascal(m, p);

    // closed form: gamma_n = (-1)^{m+n} sum_{i+j=n-m} C(m,i) C(m,j) lambda^{m-j}
    std::vector<FieldElement> g(2 * m + 1, ctx->zero());
    for (u32 n = m; n <= 3 * m; ++n) {
        FieldElement acc = ctx->zero();
        for (u32 i = 0; i <= m; ++i) {
            u32 d = n - m;
            if (i > d || d - i > m) continue;
            u32 j = d - i;
            acc = acc + ctx->from_int(zp::mul(binom[m][i], binom[m][j], p)) * ff_pow(lam, m - j);
        }
        g[n - m] = (m + n) % 2 ? -acc : acc;
    }

    // direct expansion of (x(x-1)(x-lambda))^m must give the same table
    auto x = UniPoly::x(ctx);
    auto cubic = x * (x - UniPoly::one(ctx)) * (x - UniPoly::constant(lam));
    auto expanded = upow(cubic, m);
    if (expanded.deg() != static_cast<int>(3 * m)) raise(errc::internal_error, "gamma expansion degree");
    for (u32 n = 0; n <= 3 * m; ++n) {
        FieldElement want = n < m ? ctx->zero() : g[n - m];
        if (expanded.coeff(n) != want) raise(errc::internal_error, "gamma closed form mismatch");
    }
    return g;
}

std::vector<BiPoly> gamma_table_bipoly(u32 p) {
    u32 m = (p - 1) / 2;
    auto binom = pascal(m, p);
    std::vector<BiPoly> g(2 * m + 1, BiPoly::zero(p));
    for (u32 n = m; n <= 3 * m; ++n) {
        BiPoly acc = BiPoly::zero(p);
        for (u32 i = 0; i <= m; ++i) {
            u32 d = n - m;
            if (i > d || d - i > m) continue;
            u32 j = d - i;
            acc = acc + BiPoly::monomial(p, m - j, 0, zp::mul(binom[m][i], binom[m][j], p));
        }
        g[n - m] = (m + n) % 2 ? -acc : acc;
    }

    // direct expansion with x in the second variable slot
    BiPoly cubic = BiPoly::monomial(p, 0, 3, 1) - BiPoly::monomial(p, 0, 2, 1) -
                   BiPoly::monomial(p, 1, 2, 1) + BiPoly::monomial(p, 1, 1, 1);
    BiPoly expanded = bpow(cubic, m);
    for (u32 n = 0; n <= 3 * m; ++n) {
        BiPoly col = BiPoly::zero(p);
        for (int i = 0; i <= expanded.deg_lambda(); ++i)
            col = col + BiPoly::monomial(p, i, 0, expanded.coeff(i, n));
        BiPoly want = n < m ? BiPoly::zero(p) : g[n - m];
        if (col != want) raise(errc::internal_error, "gamma closed form mismatch");
    }
    return g;
}

namespace {

void require_base_point(const Curve& c, const FieldElement& a) {
    if (a.is_zero() || a == c.ctx()->one() || a == c.lambda())
        raise(errc::degenerate_base_point, "base abscissa must avoid 0, 1, lambda");
}

} // namespace

Matrix<FieldElement> build_B(const Curve& c, const FieldElement& a) {
    require_base_point(c, a);
    const CtxPtr& ctx = c.ctx();
    u32 p = ctx->p();
    u32 m = (p - 1) / 2;
    auto g = gamma_table(c.lambda());
    FieldElement ap = ff_pow(a, p);
    Matrix<FieldElement> B(m + 1, m + 2, ctx->zero());
    for (u32 j = m; j <= 2 * m; ++j)
        for (u32 i = 0; i <= m + 1; ++i)
            B.at(j - m, i) = j >= m + i ? g[j - i - m] : ap * g[p + j - i - m];
    return B;
}

Matrix<BiPoly> build_B_bipoly(u32 p) {
    u32 m = (p - 1) / 2;
    auto g = gamma_table_bipoly(p);
    BiPoly ap = BiPoly::monomial(p, 0, p, 1);
    Matrix<BiPoly> B(m + 1, m + 2, BiPoly::zero(p));
    for (u32 j = m; j <= 2 * m; ++j)
        for (u32 i = 0; i <= m + 1; ++i)
            B.at(j - m, i) = j >= m + i ? g[j - i - m] : ap * g[p + j - i - m];
    return B;
}

Matrix<FieldElement> build_B_i(const Curve& c, const FieldElement& a, u32 i) {
    u32 m = (c.ctx()->p() - 1) / 2;
    if (i > m + 1) raise(errc::index_out_of_range, "B_i wants 0 <= i <= m+1");
    return build_B(c, a).remove_col(i);
}

Matrix<BiPoly> build_B_i_bipoly(u32 p, u32 i) {
    u32 m = (p - 1) / 2;
    if (i > m + 1) raise(errc::index_out_of_range, "B_i wants 0 <= i <= m+1");
    return build_B_bipoly(p).remove_col(i);
}

ProjPoint xp_via_determinant(const Curve& c, const FieldElement& a) {
    require_base_point(c, a);
    u32 m = (c.ctx()->p() - 1) / 2;
    auto B = build_B(c, a);
    FieldElement d0 = det_field(B.remove_col(0));
    FieldElement d1 = det_field(B.remove_col(m + 1));
    if (d1.is_zero()) {
        if (d0.is_zero())
            raise(errc::indeterminate, "det B_0 and det B_{m+1} both vanish at " + std::to_string(a.encode()));
        return ProjPoint::infinity();
    }
    FieldElement r = d0 / d1;
    return ProjPoint::finite(ff_inv(ff_pow(a, c.ctx()->p())) * r * r);
}

LiftResult lift_x(const Curve& c, const FieldElement& a) {
    LiftResult out;
    FieldElement rhs = c.rhs(a);
    auto roots = ff_sqrt(rhs);
    if (roots) {
        out.base.emplace_back(a, roots->first);
        if (roots->second != roots->first) out.base.emplace_back(a, roots->second);
        return out;
    }
    // rhs is a non-residue: rhs/nu is a residue, and b = t s with t^2 = rhs/nu
    out.ext_ctx = QuadCtx::make(c.ctx());
    auto t = ff_sqrt(rhs / out.ext_ctx->nu());
    if (!t) raise(errc::internal_error, "non-residue ratio fails to be a square");
    QuadElt xa = QuadElt::embed(out.ext_ctx, a);
    QuadElt b1(out.ext_ctx, c.ctx()->zero(), t->first);
    out.ext.emplace_back(xa, b1);
    out.ext.emplace_back(xa, -b1);
    return out;
}

ProjPoint xp_via_group_law(const Curve& c, const FieldElement& a) {
    u32 p = c.ctx()->p();
    auto lifts = lift_x(c, a);
    if (!lifts.base.empty()) {
        CurvePoint r = ec_mul(c, p, lifts.base.front());
        return r.is_infinity() ? ProjPoint::infinity() : ProjPoint::finite(r.x());
    }
    const QuadPtr& qc = lifts.ext_ctx;
    QuadElt lam = QuadElt::embed(qc, c.lambda());
    QuadElt one = QuadElt::embed(qc, c.ctx()->one());
    QuadPoint r = ec_mul_generic(lam, one, p, lifts.ext.front());
    if (r.is_infinity()) return ProjPoint::infinity();
    // x([p]Q) is Galois-stable because the conjugate of Q is -Q
    if (!r.x().in_base()) raise(errc::internal_error, "x([p]Q) escaped the base field");
    return ProjPoint::finite(r.x().u());
}

std::vector<FieldElement> beta_vector(const Curve& c, const FieldElement& a) {
    return kernel_cofactors(build_B(c, a));
}

std::vector<BiPoly> beta_vector_bipoly(u32 p) { return kernel_cofactors(build_B_bipoly(p)); }

FactorizationResult factorization_check(const Curve& c, const CurvePoint& Q) {
    require_on_curve(c, Q);
    if (Q.is_infinity()) raise(errc::degenerate_base_point, "factorization wants a finite point");
    const FieldElement& a = Q.x();
    const FieldElement& b = Q.y();
    require_base_point(c, a); // also excludes b = 0
    const CtxPtr& ctx = c.ctx();
    u32 p = ctx->p();
    u32 m = (p - 1) / 2;

    auto beta = beta_vector(c, a);
    UniPoly f = UniPoly::from_coeffs(ctx, std::move(beta));

    auto x = UniPoly::x(ctx);
    UniPoly cubic = x * (x - UniPoly::one(ctx)) * (x - UniPoly::constant(c.lambda()));
    UniPoly w = upow(cubic, m);
    UniPoly xa_p = upow(x - UniPoly::constant(a), p);

    // f (x(x-1)(x-lambda))^m = +-b^p g mod (x-a)^p with deg g <= m-1; the
    // sign only flips g, which enters squared
    UniPoly r = divmod(f * w, xa_p).second;
    if (r.deg() > static_cast<int>(m) - 1)
        raise(errc::sign_resolution_failed,
              "congruence remainder has degree " + std::to_string(r.deg()) + " at a = " + std::to_string(a.encode()));
    UniPoly g = ff_inv(ff_pow(b, p)) * r;

    ProjPoint ap = xp_via_determinant(c, a);
    UniPoly residual = UniPoly::zero(ctx);
    if (!ap.is_infinity()) {
        // deg f = m+1 here, so scaling f monic makes the combination monic
        FieldElement scale = ff_inv(f.lc());
        f = scale * f;
        g = scale * g;
        UniPoly h = f * f - cubic * (g * g);
        UniPoly target = xa_p * (x - UniPoly::constant(ap.value()));
        residual = h - target;
    } else {
        UniPoly h = f * f - cubic * (g * g);
        if (h.is_zero()) raise(errc::internal_error, "factorization combination vanished");
        residual = h - h.lc() * xa_p;
    }
    bool ok = residual.is_zero();
    return FactorizationResult{std::move(f), std::move(g), std::move(ap), std::move(residual), ok};
}

} // namespace hdflow
