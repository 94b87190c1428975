#include "hdflow/poly.hpp"

#include <algorithm>

namespace hdflow {

namespace {

void require_same_ctx(const UniPoly& a, const UniPoly& b) {
    if (!a.ctx() || !b.ctx() || !a.ctx()->same(*b.ctx()))
        raise(errc::ctx_mismatch, "polynomials over different fields");
}

void require_same_char(const BiPoly& a, const BiPoly& b) {
    if (a.p() == 0 || a.p() != b.p()) raise(errc::char_mismatch, "bivariate operands of different characteristic");
}

} // namespace

void UniPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UniPoly UniPoly::zero(CtxPtr ctx) {
    UniPoly r;
    r.ctx_ = std::move(ctx);
    return r;
}

UniPoly UniPoly::one(const CtxPtr& ctx) { return constant(ctx->one()); }

UniPoly UniPoly::constant(const FieldElement& c) {
    UniPoly r;
    r.ctx_ = c.ctx();
    if (!c.is_zero()) r.c_.push_back(c);
    return r;
}

UniPoly UniPoly::x(const CtxPtr& ctx) { return monomial(1, ctx->one()); }

UniPoly UniPoly::monomial(size_t degree, const FieldElement& c) {
    UniPoly r;
    r.ctx_ = c.ctx();
    if (!c.is_zero()) {
        r.c_.assign(degree, r.ctx_->zero());
        r.c_.push_back(c);
    }
    return r;
}

UniPoly UniPoly::from_coeffs(CtxPtr ctx, std::vector<FieldElement> coeffs) {
    UniPoly r;
    r.ctx_ = std::move(ctx);
    r.c_ = std::move(coeffs);
    r.trim();
    return r;
}

FieldElement UniPoly::coeff(size_t i) const { return i < c_.size() ? c_[i] : ctx_->zero(); }

FieldElement UniPoly::lc() const {
    if (c_.empty()) raise(errc::out_of_range, "leading coefficient of the zero polynomial");
    return c_.back();
}

UniPoly UniPoly::monic() const {
    if (c_.empty()) return *this;
    return ff_inv(c_.back()) * *this;
}

FieldElement UniPoly::eval(const FieldElement& x) const {
    FieldElement r = ctx_->zero();
    for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    require_same_ctx(a, b);
    UniPoly r = a.c_.size() >= b.c_.size() ? a : b;
    const UniPoly& s = a.c_.size() >= b.c_.size() ? b : a;
    for (size_t i = 0; i < s.c_.size(); ++i) r.c_[i] = r.c_[i] + s.c_[i];
    r.trim();
    return r;
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

UniPoly UniPoly::operator-() const {
    UniPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    require_same_ctx(a, b);
    if (a.is_zero() || b.is_zero()) return UniPoly::zero(a.ctx_);
    UniPoly r;
    r.ctx_ = a.ctx_;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, a.ctx_->zero());
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
}

UniPoly operator*(const FieldElement& c, const UniPoly& a) {
    UniPoly r = a;
    for (auto& x : r.c_) x = c * x;
    r.trim();
    return r;
}

bool operator==(const UniPoly& a, const UniPoly& b) {
    require_same_ctx(a, b);
    if (a.c_.size() != b.c_.size()) return false;
    for (size_t i = 0; i < a.c_.size(); ++i)
        if (a.c_[i] != b.c_[i]) return false;
    return true;
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) raise(errc::division_by_zero, "polynomial division by zero");
    if (a.deg() < b.deg()) return {UniPoly::zero(a.ctx()), a};
    const CtxPtr& ctx = a.ctx();
    FieldElement lead_inv = ff_inv(b.lc());
    std::vector<FieldElement> rem = a.coeffs();
    std::vector<FieldElement> quot(rem.size() - b.coeffs().size() + 1, ctx->zero());
    for (size_t k = quot.size(); k-- > 0;) {
        FieldElement c = rem[k + b.coeffs().size() - 1] * lead_inv;
        quot[k] = c;
        if (c.is_zero()) continue;
        for (size_t j = 0; j < b.coeffs().size(); ++j) rem[k + j] = rem[k + j] - c * b.coeffs()[j];
    }
    rem.resize(b.coeffs().size() - 1, ctx->zero());
    return {UniPoly::from_coeffs(ctx, std::move(quot)), UniPoly::from_coeffs(ctx, std::move(rem))};
}

UniPoly divexact(const UniPoly& a, const UniPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) raise(errc::exact_division_failed, "inexact univariate division");
    return q;
}

UniPoly gcd(UniPoly a, UniPoly b) {
    require_same_ctx(a, b);
    if (a.is_zero() && b.is_zero()) raise(errc::both_zero, "gcd(0, 0)");
    while (!b.is_zero()) {
        auto [q, r] = divmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

UniPoly upow(const UniPoly& a, u64 n) {
    UniPoly r = UniPoly::one(a.ctx());
    UniPoly base = a;
    while (n) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

// ---- bivariate ----

void BiPoly::trim() {
    for (auto& row : rows_) zp::trim(row);
    while (!rows_.empty() && rows_.back().empty()) rows_.pop_back();
}

BiPoly BiPoly::zero(u32 p) { return BiPoly(p); }

BiPoly BiPoly::one(u32 p) { return constant(p, 1); }

BiPoly BiPoly::constant(u32 p, u32 c) { return monomial(p, 0, 0, c); }

BiPoly BiPoly::lambda_var(u32 p) { return monomial(p, 1, 0, 1); }

BiPoly BiPoly::a_var(u32 p) { return monomial(p, 0, 1, 1); }

BiPoly BiPoly::monomial(u32 p, size_t deg_l, size_t deg_a, u32 c) {
    BiPoly r(p);
    c %= p;
    if (c) {
        r.rows_.resize(deg_l + 1);
        r.rows_[deg_l].assign(deg_a, 0);
        r.rows_[deg_l].push_back(c);
    }
    return r;
}

int BiPoly::deg_a() const {
    int d = -1;
    for (const auto& row : rows_) d = std::max(d, zp::deg(row));
    return d;
}

u32 BiPoly::coeff(size_t deg_l, size_t deg_a) const {
    if (deg_l >= rows_.size()) return 0;
    const auto& row = rows_[deg_l];
    return deg_a < row.size() ? row[deg_a] : 0;
}

size_t BiPoly::term_count() const {
    size_t n = 0;
    for (const auto& row : rows_)
        for (u32 c : row)
            if (c) ++n;
    return n;
}

FieldElement BiPoly::eval(const FieldElement& lam, const FieldElement& a) const {
    if (!lam.ctx() || lam.ctx()->p() != p_) raise(errc::char_mismatch, "evaluation point of wrong characteristic");
    if (!a.ctx() || !lam.ctx()->same(*a.ctx())) raise(errc::ctx_mismatch, "evaluation points from different fields");
    const CtxPtr& ctx = lam.ctx();
    FieldElement r = ctx->zero();
    for (size_t i = rows_.size(); i-- > 0;) {
        FieldElement c = ctx->zero();
        const auto& row = rows_[i];
        for (size_t j = row.size(); j-- > 0;) c = c * a + ctx->from_int(row[j]);
        r = r * lam + c;
    }
    return r;
}

BiPoly operator+(const BiPoly& a, const BiPoly& b) {
    require_same_char(a, b);
    BiPoly r = a.rows_.size() >= b.rows_.size() ? a : b;
    const BiPoly& s = a.rows_.size() >= b.rows_.size() ? b : a;
    for (size_t i = 0; i < s.rows_.size(); ++i) r.rows_[i] = zp::add(r.rows_[i], s.rows_[i], a.p_);
    r.trim();
    return r;
}

BiPoly operator-(const BiPoly& a, const BiPoly& b) { return a + (-b); }

BiPoly BiPoly::operator-() const {
    BiPoly r = *this;
    for (auto& row : r.rows_)
        for (auto& c : row) c = zp::neg(c, p_);
    return r;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    require_same_char(a, b);
    BiPoly r(a.p_);
    if (a.is_zero() || b.is_zero()) return r;
    r.rows_.resize(a.rows_.size() + b.rows_.size() - 1);
    for (size_t i = 0; i < a.rows_.size(); ++i) {
        if (a.rows_[i].empty()) continue;
        for (size_t j = 0; j < b.rows_.size(); ++j) {
            if (b.rows_[j].empty()) continue;
            r.rows_[i + j] = zp::add(r.rows_[i + j], zp::mul(a.rows_[i], b.rows_[j], a.p_), a.p_);
        }
    }
    r.trim();
    return r;
}

bool operator==(const BiPoly& a, const BiPoly& b) {
    require_same_char(a, b);
    return a.rows_ == b.rows_;
}

BiPoly divexact(const BiPoly& a, const BiPoly& b) {
    require_same_char(a, b);
    if (b.is_zero()) raise(errc::division_by_zero, "bivariate division by zero");
    BiPoly q(a.p_);
    if (a.is_zero()) return q;
    if (a.deg_lambda() < b.deg_lambda()) raise(errc::exact_division_failed, "inexact bivariate division");
    // long division along l; since the quotient exists in F_p[l,a], each
    // leading l-coefficient division in F_p[a] is itself exact
    const u32 p = a.p_;
    const size_t db = b.rows_.size() - 1;
    const zp::Vec& lead = b.rows_.back();
    std::vector<zp::Vec> rem = a.rows_;
    q.rows_.assign(rem.size() - db, {});
    for (size_t k = q.rows_.size(); k-- > 0;) {
        zp::Vec& top = rem[k + db];
        zp::trim(top);
        if (top.empty()) continue;
        auto [qa, ra] = zp::divmod(top, lead, p);
        if (!ra.empty()) raise(errc::exact_division_failed, "inexact bivariate division");
        q.rows_[k] = qa;
        for (size_t j = 0; j <= db; ++j) rem[k + j] = zp::sub(rem[k + j], zp::mul(qa, b.rows_[j], p), p);
    }
    for (auto& row : rem) {
        zp::trim(row);
        if (!row.empty()) raise(errc::exact_division_failed, "inexact bivariate division");
    }
    q.trim();
    return q;
}

BiPoly bpow(const BiPoly& a, u64 n) {
    BiPoly r = BiPoly::one(a.p());
    BiPoly base = a;
    while (n) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

std::string BiPoly::to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (size_t i = rows_.size(); i-- > 0;) {
        const auto& row = rows_[i];
        for (size_t j = row.size(); j-- > 0;) {
            if (!row[j]) continue;
            if (!s.empty()) s += " + ";
            bool named = i || j;
            if (row[j] != 1 || !named) s += std::to_string(row[j]);
            if (i) {
                if (row[j] != 1) s += "*";
                s += "l";
                if (i > 1) s += "^" + std::to_string(i);
            }
            if (j) {
                if (row[j] != 1 || i) s += "*";
                s += "a";
                if (j > 1) s += "^" + std::to_string(j);
            }
        }
    }
    return s;
}

} // namespace hdflow
