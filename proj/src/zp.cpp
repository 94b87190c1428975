#include "hdflow/zp.hpp"

namespace hdflow::zp {

Vec add(const Vec& a, const Vec& b, u32 p) {
    Vec r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        u32 x = i < a.size() ? a[i] : 0;
        u32 y = i < b.size() ? b[i] : 0;
        r[i] = add(x, y, p);
    }
    trim(r);
    return r;
}

Vec sub(const Vec& a, const Vec& b, u32 p) {
    Vec r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        u32 x = i < a.size() ? a[i] : 0;
        u32 y = i < b.size() ? b[i] : 0;
        r[i] = sub(x, y, p);
    }
    trim(r);
    return r;
}

Vec mul(const Vec& a, const Vec& b, u32 p) {
    if (a.empty() || b.empty()) return {};
    // accumulate in u64; p < 2^31 and the term count is bounded by the
    // shorter operand, so periodic reduction keeps the sum below 2^64
    std::vector<u64> acc(a.size() + b.size() - 1, 0);
    const u64 cap = ~u64(0) - u64(p - 1) * (p - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            u64& c = acc[i + j];
            c += u64(a[i]) * b[j];
            if (c >= cap) c %= p;
        }
    }
    Vec r(acc.size());
    for (size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<u32>(acc[i] % p);
    trim(r);
    return r;
}

Vec scale(const Vec& a, u32 c, u32 p) {
    c %= p;
    if (!c) return {};
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = mul(a[i], c, p);
    trim(r);
    return r;
}

std::pair<Vec, Vec> divmod(const Vec& a, const Vec& b, u32 p) {
    if (b.empty()) raise(errc::division_by_zero, "polynomial division by zero");
    Vec rem = a;
    trim(rem);
    if (rem.size() < b.size()) return {Vec{}, rem};
    Vec quot(rem.size() - b.size() + 1, 0);
    u32 lead_inv = inv(b.back(), p);
    for (size_t k = quot.size(); k-- > 0;) {
        u32 c = mul(rem[k + b.size() - 1], lead_inv, p);
        quot[k] = c;
        if (!c) continue;
        for (size_t j = 0; j < b.size(); ++j) rem[k + j] = sub(rem[k + j], mul(c, b[j], p), p);
    }
    rem.resize(b.size() - 1);
    trim(quot);
    trim(rem);
    return {quot, rem};
}

Vec gcd(Vec a, Vec b, u32 p) {
    trim(a);
    trim(b);
    if (a.empty() && b.empty()) raise(errc::both_zero, "gcd(0, 0)");
    while (!b.empty()) {
        Vec r = divmod(a, b, p).second;
        a = std::move(b);
        b = std::move(r);
    }
    return scale(a, inv(a.back(), p), p); // monic
}

u32 eval(const Vec& v, u32 x, u32 p) {
    u32 r = 0;
    for (size_t i = v.size(); i-- > 0;) r = add(mul(r, x, p), v[i], p);
    return r;
}

Vec powmod_x(u64 e, const Vec& m, u32 p) {
    auto reduce = [&](Vec v) {
        return divmod(v, m, p).second;
    };
    Vec r{1}, base = reduce(Vec{0, 1});
    while (e) {
        if (e & 1) r = reduce(mul(r, base, p));
        base = reduce(mul(base, base, p));
        e >>= 1;
    }
    return r;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool is_irreducible(const Vec& m, u32 p) {
    if (m.size() < 2 || m.back() != 1) return false;
    u32 f = static_cast<u32>(m.size()) - 1;
    if (f == 1) return true;
    auto pow_u64 = [](u64 b, u32 e) {
        u64 r = 1;
        while (e--) r *= b;
        return r;
    };
    Vec x{0, 1};
    if (powmod_x(pow_u64(p, f), m, p) != x) return false;
    std::vector<u32> prime_factors;
    u32 n = f;
    for (u32 d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            prime_factors.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) prime_factors.push_back(n);
    for (u32 l : prime_factors) {
        Vec g = sub(powmod_x(pow_u64(p, f / l), m, p), x, p);
        if (g.empty()) return false; // x^{p^{f/l}} = x: m splits into smaller factors
        if (deg(gcd(g, m, p)) != 0) return false;
    }
    return true;
}

Vec find_irreducible(u32 p, u32 f) {
    if (f == 1) return {0, 1};
    u64 total = 1;
    for (u32 i = 0; i < f; ++i) total *= p;
    for (u64 n = 0; n < total; ++n) {
        Vec m(f + 1, 0);
        u64 k = n;
        for (u32 i = 0; i < f; ++i) {
            m[i] = static_cast<u32>(k % p);
            k /= p;
        }
        m[f] = 1;
        if (is_irreducible(m, p)) return m;
    }
    raise(errc::internal_error, "no irreducible polynomial found"); // unreachable
}

} // namespace hdflow::zp
