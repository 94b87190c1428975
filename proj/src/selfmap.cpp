#include "hdflow/selfmap.hpp"

namespace hdflow {

namespace {

void require_lambda(const FieldElement& lam) {
    if (lam.is_zero() || lam == lam.ctx()->one())
        raise(errc::out_of_range, "lambda must avoid 0 and 1");
}

} // namespace

FieldElement delta(const FieldElement& lam, const FieldElement& a, u32 n) {
    const CtxPtr& ctx = lam.ctx();
    u32 p = ctx->p();
    if (n < 1 || n > p - 1) raise(errc::index_out_of_range, "delta index must lie in 1..p-1");
    FieldElement lp = ff_pow(lam, p);
    FieldElement ap = ff_pow(a, p);
    FieldElement val = lp * (ctx->one() - ap) - (lp - ap) * ff_pow(lam, n);
    return val / ctx->from_int(n);
}

BiPoly delta_bipoly(u32 p, u32 n) {
    if (n < 1 || n > p - 1) raise(errc::index_out_of_range, "delta index must lie in 1..p-1");
    BiPoly lp = BiPoly::monomial(p, p, 0, 1);
    BiPoly ap = BiPoly::monomial(p, 0, p, 1);
    BiPoly val = lp * (BiPoly::one(p) - ap) - (lp - ap) * BiPoly::monomial(p, n, 0, 1);
    return BiPoly::constant(p, zp::inv(n, p)) * val;
}

Matrix<FieldElement> build_A(const FieldElement& lam, const FieldElement& a) {
    const CtxPtr& ctx = lam.ctx();
    u32 p = ctx->p();
    u32 m = (p - 1) / 2;
    std::vector<FieldElement> d(p); // d[n] = delta_n, 1-indexed
    for (u32 n = 1; n < p; ++n) d[n] = delta(lam, a, n);
    Matrix<FieldElement> A(m, m + 1, ctx->zero());
    for (u32 r = 1; r <= m; ++r)
        for (u32 c = 1; c <= m + 1; ++c) A.at(r - 1, c - 1) = d[m - r + c];
    return A;
}

Matrix<BiPoly> build_A_bipoly(u32 p) {
    u32 m = (p - 1) / 2;
    std::vector<BiPoly> d(p);
    for (u32 n = 1; n < p; ++n) d[n] = delta_bipoly(p, n);
    Matrix<BiPoly> A(m, m + 1, BiPoly::zero(p));
    for (u32 r = 1; r <= m; ++r)
        for (u32 c = 1; c <= m + 1; ++c) A.at(r - 1, c - 1) = d[m - r + c];
    return A;
}

namespace {

u32 column_of(u32 p, u32 i) {
    u32 m = (p - 1) / 2;
    if (i < m + 1 || i > p) raise(errc::index_out_of_range, "A_i wants m+1 <= i <= p");
    return i - m - 1;
}

} // namespace

Matrix<FieldElement> build_A_i(const FieldElement& lam, const FieldElement& a, u32 i) {
    return build_A(lam, a).remove_col(column_of(lam.ctx()->p(), i));
}

Matrix<BiPoly> build_A_i_bipoly(u32 p, u32 i) { return build_A_bipoly(p).remove_col(column_of(p, i)); }

std::vector<FieldElement> alpha_vector(const FieldElement& lam, const FieldElement& a) {
    u32 m = (lam.ctx()->p() - 1) / 2;
    auto v = kernel_cofactors(build_A(lam, a));
    // v_j carries (-1)^j for the 0-indexed column j = i-(m+1); alpha_i wants
    // (-1)^i, so the whole vector flips by (-1)^{m+1}
    if (m % 2 == 0)
        for (auto& x : v) x = -x;
    return v;
}

std::vector<BiPoly> alpha_vector_bipoly(u32 p) {
    u32 m = (p - 1) / 2;
    auto v = kernel_cofactors(build_A_bipoly(p));
    if (m % 2 == 0)
        for (auto& x : v) x = -x;
    return v;
}

RationalMap::RationalMap(UniPoly num, UniPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) raise(errc::division_by_zero, "rational map with zero denominator");
    if (!num_.is_zero()) {
        UniPoly g = gcd(num_, den_);
        num_ = divexact(num_, g);
        den_ = divexact(den_, g);
    } else {
        den_ = UniPoly::one(den_.ctx());
    }
    FieldElement lead = den_.lc();
    den_ = den_.monic();
    num_ = ff_inv(lead) * num_;
}

ProjPoint RationalMap::eval(const ProjPoint& z) const {
    if (z.is_infinity()) {
        if (num_.deg() > den_.deg()) return ProjPoint::infinity();
        if (num_.deg() < den_.deg()) return ProjPoint::finite(num_.ctx()->zero());
        return ProjPoint::finite(num_.lc()); // den monic
    }
    FieldElement n = num_.eval(z.value());
    FieldElement d = den_.eval(z.value());
    if (!d.is_zero()) return ProjPoint::finite(n / d);
    if (!n.is_zero()) return ProjPoint::infinity();
    raise(errc::internal_error, "reduced rational map with a common root");
}

namespace {

// det of the m x m matrix over F_q[w] with entry (r, c) = the image of
// delta_{m-r+c'} under a^p -> w, skipping column skip; entries are linear in w
UniPoly hankel_det_in_w(const CtxPtr& ctx, const FieldElement& lam, size_t skip) {
    u32 p = ctx->p();
    u32 m = (p - 1) / 2;
    // delta_n(lambda, z) = (lambda^p - lambda^{p+n})/n + z^p (lambda^n - lambda^p)/n
    std::vector<UniPoly> d(p);
    FieldElement lp = ff_pow(lam, p);
    for (u32 n = 1; n < p; ++n) {
        FieldElement invn = ff_inv(ctx->from_int(n));
        FieldElement c0 = (lp - lp * ff_pow(lam, n)) * invn;
        FieldElement c1 = (ff_pow(lam, n) - lp) * invn;
        d[n] = UniPoly::from_coeffs(ctx, {c0, c1});
    }
    Matrix<UniPoly> M(m, m, UniPoly::zero(ctx));
    for (u32 r = 1; r <= m; ++r) {
        u32 o = 0;
        for (u32 c = 1; c <= m + 1; ++c) {
            if (c == skip + 1) continue;
            M.at(r - 1, o++) = d[m - r + c];
        }
    }
    return det_ring(M);
}

UniPoly substitute_w_zp(const UniPoly& f, u32 p) {
    const CtxPtr& ctx = f.ctx();
    std::vector<FieldElement> c(static_cast<size_t>(f.deg() < 0 ? 0 : f.deg() * p + 1), ctx->zero());
    for (int i = 0; i <= f.deg(); ++i) c[static_cast<size_t>(i) * p] = f.coeff(i);
    return UniPoly::from_coeffs(ctx, std::move(c));
}

} // namespace

SelfMap::SelfMap(CtxPtr ctx, FieldElement lam) : ctx_(std::move(ctx)), lam_(std::move(lam)) {
    if (!lam_.ctx() || !lam_.ctx()->same(*ctx_)) raise(errc::ctx_mismatch, "lambda from a different field");
    require_lambda(lam_);
    u32 p = ctx_->p();
    m_ = (p - 1) / 2;
    lam_pow_.resize(p + 1);
    lam_pow_[0] = ctx_->one();
    for (u32 i = 1; i <= p; ++i) lam_pow_[i] = lam_pow_[i - 1] * lam_;
    inv_n_.resize(p);
    for (u32 n = 1; n < p; ++n) inv_n_[n] = ff_inv(ctx_->from_int(n));
    lam_p_ = lam_pow_[p];
    inv_lam_pm1_ = ff_inv(lam_pow_[p - 1]);

    // the global form: num = z^p f(z^p)^2, den = lambda^{p-1} g(z^p)^2, where
    // f and g are det A_{m+1} and det A_p with a^p treated as the variable
    // (row reversal changes both dets by the same sign, which squares away)
    UniPoly f = hankel_det_in_w(ctx_, lam_, 0);
    UniPoly g = hankel_det_in_w(ctx_, lam_, m_);
    UniPoly fz = substitute_w_zp(f, p);
    UniPoly gz = substitute_w_zp(g, p);
    UniPoly num = UniPoly::monomial(p, ctx_->one()) * fz * fz;
    UniPoly den = UniPoly::constant(lam_pow_[p - 1]) * gz * gz;
    rat_ = RationalMap(std::move(num), std::move(den));
}

FieldElement SelfMap::det_A_removed(const FieldElement& a, size_t skip_col) const {
    u32 p = ctx_->p();
    FieldElement ap = ff_pow(a, p);
    FieldElement c1 = lam_p_ * (ctx_->one() - ap);
    FieldElement c2 = lam_p_ - ap;
    std::vector<FieldElement> d(p);
    for (u32 n = 1; n < p; ++n) d[n] = (c1 - c2 * lam_pow_[n]) * inv_n_[n];
    Matrix<FieldElement> M(m_, m_, ctx_->zero());
    for (u32 r = 1; r <= m_; ++r) {
        u32 o = 0;
        for (u32 c = 1; c <= m_ + 1; ++c) {
            if (c == skip_col + 1) continue;
            M.at(r - 1, o++) = d[m_ - r + c];
        }
    }
    return det_field(M);
}

ProjPoint SelfMap::eval(const ProjPoint& a) const {
    if (a.is_infinity()) return rat_.eval(a);
    const FieldElement& x = a.value();
    FieldElement dp = det_A_removed(x, m_); // det A_p
    if (dp.is_zero()) {
        {
            std::lock_guard<std::mutex> lk(log_mu_);
            fallback_.push_back(x.encode());
        }
        return rat_.eval(a);
    }
    FieldElement dm1 = det_A_removed(x, 0); // det A_{m+1}
    FieldElement ratio = dm1 / dp;
    FieldElement val = ff_pow(x, ctx_->p()) * inv_lam_pm1_ * ratio * ratio;
    return ProjPoint::finite(val);
}

UniPoly SelfMap::grading_polynomial(const FieldElement& a) const {
    FieldElement dp = det_A_removed(a, m_);
    FieldElement dm1 = det_A_removed(a, 0);
    FieldElement inv_lm1 = ff_inv(lam_ - ctx_->one());
    FieldElement c1 = dp * dp * inv_lm1;
    FieldElement c0 = -(dm1 * dm1 * inv_lm1) * ff_pow(a, ctx_->p()) * inv_lam_pm1_;
    return UniPoly::from_coeffs(ctx_, {c0, c1});
}

std::vector<u64> SelfMap::fallback_points() const {
    std::lock_guard<std::mutex> lk(log_mu_);
    return fallback_;
}

RationalMap selfmap_closed_form(const CtxPtr& ctx, const FieldElement& lam) {
    require_lambda(lam);
    u32 p = ctx->p();
    const FieldElement one = ctx->one();
    auto lp = [&](u32 e) { return ff_pow(lam, e); };
    auto mono = [&](size_t d, const FieldElement& c) { return UniPoly::monomial(d, c); };

    UniPoly num, den;
    if (p == 3) {
        UniPoly nf = mono(3, one) + UniPoly::constant(lam * (lam + one));
        UniPoly df = mono(3, lam + one) + UniPoly::constant(lp(2));
        num = mono(3, one) * nf * nf;
        den = df * df;
    } else if (p == 5) {
        FieldElement q6 = lp(2) - lam + one; // lambda^2 - lambda + 1
        UniPoly nf = mono(10, one) + mono(5, -(lam * (lam + one) * q6)) + UniPoly::constant(lp(4) * q6);
        UniPoly df = mono(10, q6) + mono(5, -(lp(2) * (lam + one) * q6)) + UniPoly::constant(lp(6));
        num = mono(5, one) * nf * nf;
        den = df * df;
    } else if (p == 7) {
        FieldElement c3 = lp(2) + lam + one;                 // lambda^2 + lambda + 1
        FieldElement s = lp(2) + ctx->from_int(3) * lam + one; // lambda^2 + 3 lambda + 1
        FieldElement t = lp(2) + one;
        FieldElement l1 = lam + one;
        UniPoly nf = mono(21, one) + mono(14, ctx->from_int(2) * lam * l1 * c3 * s) +
                     mono(7, lp(4) * l1 * l1 * c3 * t) + UniPoly::constant(lp(9) * l1 * c3);
        UniPoly df = mono(21, l1 * c3) + mono(14, lp(2) * l1 * l1 * c3 * t) +
                     mono(7, ctx->from_int(2) * lp(6) * l1 * c3 * s) + UniPoly::constant(lp(12));
        num = mono(7, one) * nf * nf;
        den = df * df;
    } else {
        raise(errc::unsupported_prime, "closed form available only for p = 3, 5, 7");
    }
    return RationalMap(std::move(num), std::move(den));
}

} // namespace hdflow
