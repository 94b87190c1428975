#include "hdflow/ff.hpp"

#include <algorithm>

namespace hdflow {

const char* errc_name(errc c) {
    switch (c) {
        case errc::not_prime: return "NotPrime";
        case errc::not_irreducible: return "NotIrreducible";
        case errc::not_monic: return "NotMonic";
        case errc::division_by_zero: return "DivisionByZero";
        case errc::ctx_mismatch: return "CtxMismatch";
        case errc::out_of_range: return "OutOfRange";
        case errc::both_zero: return "BothZero";
        case errc::char_mismatch: return "CharMismatch";
        case errc::not_square: return "NotSquare";
        case errc::exact_division_failed: return "ExactDivisionFailed";
        case errc::shape_mismatch: return "ShapeMismatch";
        case errc::index_out_of_range: return "IndexOutOfRange";
        case errc::unsupported_prime: return "UnsupportedPrime";
        case errc::degenerate_base_point: return "DegenerateBasePoint";
        case errc::indeterminate: return "Indeterminate";
        case errc::sign_resolution_failed: return "SignResolutionFailed";
        case errc::point_not_on_curve: return "PointNotOnCurve";
        case errc::field_too_large: return "FieldTooLarge";
        case errc::unsupported_mode: return "UnsupportedMode";
        case errc::bound_exceeded: return "BoundExceeded";
        case errc::internal_error: return "InternalError";
    }
    return "Error";
}

namespace {

void require_same_ctx(const FieldElement& a, const FieldElement& b) {
    if (!a.ctx() || !b.ctx() || !a.ctx()->same(*b.ctx()))
        raise(errc::ctx_mismatch, "operands from different fields");
}

} // namespace

FieldElement::FieldElement(CtxPtr ctx, std::vector<u32> digits) : ctx_(std::move(ctx)), d_(std::move(digits)) {}

u64 FieldElement::encode() const {
    u64 v = 0;
    for (size_t i = d_.size(); i-- > 0;) v = v * ctx_->p() + d_[i];
    return v;
}

bool FieldElement::is_zero() const {
    return std::all_of(d_.begin(), d_.end(), [](u32 x) { return x == 0; });
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    require_same_ctx(a, b);
    u32 p = a.ctx()->p();
    std::vector<u32> r(a.d_.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = zp::add(a.d_[i], b.d_[i], p);
    return FieldElement(a.ctx_, std::move(r));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    require_same_ctx(a, b);
    u32 p = a.ctx()->p();
    std::vector<u32> r(a.d_.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = zp::sub(a.d_[i], b.d_[i], p);
    return FieldElement(a.ctx_, std::move(r));
}

FieldElement FieldElement::operator-() const {
    u32 p = ctx_->p();
    std::vector<u32> r(d_.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = zp::neg(d_[i], p);
    return FieldElement(ctx_, std::move(r));
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    require_same_ctx(a, b);
    const FieldCtx& c = *a.ctx();
    u32 p = c.p(), f = c.f();
    if (f == 1) return FieldElement(a.ctx_, {zp::mul(a.d_[0], b.d_[0], p)});
    std::vector<u32> t(2 * f - 1, 0);
    for (u32 i = 0; i < f; ++i) {
        if (!a.d_[i]) continue;
        for (u32 j = 0; j < f; ++j) t[i + j] = zp::add(t[i + j], zp::mul(a.d_[i], b.d_[j], p), p);
    }
    // reduce by the monic modulus
    const auto& m = c.modulus();
    for (size_t i = t.size(); i-- > f;) {
        u32 coef = t[i];
        if (!coef) continue;
        t[i] = 0;
        for (u32 j = 0; j < f; ++j) t[i - f + j] = zp::sub(t[i - f + j], zp::mul(coef, m[j], p), p);
    }
    t.resize(f);
    return FieldElement(a.ctx_, std::move(t));
}

FieldElement ff_pow(const FieldElement& x, u64 n) {
    FieldElement r = x.ctx()->one();
    FieldElement b = x;
    while (n) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

FieldElement ff_inv(const FieldElement& x) {
    if (x.is_zero()) raise(errc::division_by_zero, "field inverse of zero");
    return ff_pow(x, x.ctx()->q() - 2);
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    require_same_ctx(a, b);
    return a * ff_inv(b);
}

bool operator==(const FieldElement& a, const FieldElement& b) {
    require_same_ctx(a, b);
    return a.d_ == b.d_;
}

FieldCtx::FieldCtx(u32 p, u32 f, std::vector<u32> mod) : p_(p), f_(f), mod_(std::move(mod)) {
    q_ = 1;
    for (u32 i = 0; i < f; ++i) q_ *= p;
}

CtxPtr FieldCtx::make(u32 p, u32 f, std::vector<u32> modulus) {
    if (p < 3 || p % 2 == 0 || !zp::is_prime(p)) raise(errc::not_prime, "p must be an odd prime");
    if (f < 1) raise(errc::out_of_range, "extension degree must be >= 1");
    if (modulus.size() != f + 1) raise(errc::not_monic, "modulus must have degree f");
    for (auto& c : modulus) c %= p;
    if (modulus.back() != 1) raise(errc::not_monic, "modulus must be monic");
    // keep p^f within u64 with headroom for arithmetic
    long double qd = 1;
    for (u32 i = 0; i < f; ++i) qd *= p;
    if (qd > 9e18L) raise(errc::field_too_large, "p^f exceeds the supported range");
    if (!zp::is_irreducible(modulus, p)) raise(errc::not_irreducible, "modulus is reducible");
    return CtxPtr(new FieldCtx(p, f, std::move(modulus)));
}

CtxPtr FieldCtx::make_default(u32 p, u32 f) {
    if (p < 3 || p % 2 == 0 || !zp::is_prime(p)) raise(errc::not_prime, "p must be an odd prime");
    return make(p, f, zp::find_irreducible(p, f));
}

CtxPtr FieldCtx::paper_f81() { return make(3, 4, {2, 0, 1, 0, 1}); }

bool FieldCtx::same(const FieldCtx& o) const { return p_ == o.p_ && f_ == o.f_ && mod_ == o.mod_; }

FieldElement FieldCtx::zero() const { return FieldElement(shared_from_this(), std::vector<u32>(f_, 0)); }

FieldElement FieldCtx::one() const {
    std::vector<u32> d(f_, 0);
    d[0] = 1;
    return FieldElement(shared_from_this(), std::move(d));
}

FieldElement FieldCtx::from_int(long long n) const {
    long long r = n % static_cast<long long>(p_);
    if (r < 0) r += p_;
    std::vector<u32> d(f_, 0);
    d[0] = static_cast<u32>(r);
    return FieldElement(shared_from_this(), std::move(d));
}

FieldElement FieldCtx::encode(u64 n) const {
    if (n >= q_) raise(errc::out_of_range, "encoding exceeds p^f - 1");
    std::vector<u32> d(f_);
    for (u32 i = 0; i < f_; ++i) {
        d[i] = static_cast<u32>(n % p_);
        n /= p_;
    }
    return FieldElement(shared_from_this(), std::move(d));
}

FieldElement FieldCtx::element(std::vector<u32> digits) const {
    if (digits.size() != f_) raise(errc::out_of_range, "digit count must equal f");
    for (auto& x : digits) x %= p_;
    return FieldElement(shared_from_this(), std::move(digits));
}

bool is_square(const FieldElement& x) {
    if (x.is_zero()) return true;
    return ff_pow(x, (x.ctx()->q() - 1) / 2) == x.ctx()->one();
}

namespace {

// Tonelli-Shanks in F_q, q odd; assumes x is a nonzero square
FieldElement sqrt_tonelli(const FieldElement& x) {
    const CtxPtr& ctx = x.ctx();
    u64 q = ctx->q();
    u64 t = q - 1;
    u32 s = 0;
    while (t % 2 == 0) {
        t /= 2;
        ++s;
    }
    // deterministic non-residue scan by encoding
    FieldElement n = ctx->one();
    for (u64 e = 2; e < q; ++e) {
        n = ctx->encode(e);
        if (!n.is_zero() && !is_square(n)) break;
    }
    FieldElement z = ff_pow(n, t);
    FieldElement r = ff_pow(x, (t + 1) / 2);
    FieldElement u = ff_pow(x, t);
    u32 m = s;
    const FieldElement one = ctx->one();
    while (!(u == one)) {
        u32 i = 0;
        FieldElement v = u;
        while (!(v == one)) {
            v = v * v;
            ++i;
        }
        FieldElement b = z;
        for (u32 j = 0; j + i + 1 < m; ++j) b = b * b;
        r = r * b;
        z = b * b;
        u = u * z;
        m = i;
    }
    return r;
}

} // namespace

std::optional<std::pair<FieldElement, FieldElement>> ff_sqrt(const FieldElement& x) {
    const CtxPtr& ctx = x.ctx();
    if (x.is_zero()) return std::make_pair(ctx->zero(), ctx->zero());
    FieldElement r = ctx->zero();
    if (ctx->q() <= (u64(1) << 20)) {
        bool found = false;
        for (u64 e = 1; e < ctx->q(); ++e) {
            FieldElement c = ctx->encode(e);
            if (c * c == x) {
                r = c;
                found = true;
                break;
            }
        }
        if (!found) return std::nullopt;
    } else {
        if (!is_square(x)) return std::nullopt;
        r = sqrt_tonelli(x);
    }
    FieldElement other = -r;
    if (other.encode() < r.encode()) std::swap(r, other);
    return std::make_pair(r, other);
}

const FieldElement& ProjPoint::value() const {
    if (!x_) raise(errc::out_of_range, "value() on the point at infinity");
    return *x_;
}

std::string ProjPoint::name() const { return x_ ? std::to_string(x_->encode()) : "inf"; }

ProjPoint ProjPoint::parse(const std::string& name, const CtxPtr& ctx) {
    if (name == "inf") return infinity();
    u64 v = 0;
    if (name.empty()) raise(errc::out_of_range, "empty node name");
    for (char ch : name) {
        if (ch < '0' || ch > '9') raise(errc::out_of_range, "node must be a decimal encoding or 'inf'");
        if (v > (~u64(0) - 9) / 10) raise(errc::out_of_range, "node encoding out of range");
        v = v * 10 + static_cast<u64>(ch - '0');
    }
    return finite(ctx->encode(v));
}

bool operator==(const ProjPoint& a, const ProjPoint& b) {
    if (a.is_infinity() || b.is_infinity()) return a.is_infinity() == b.is_infinity();
    return a.value() == b.value();
}

} // namespace hdflow
