#pragma once

#include <cstdint>
#include <vector>

#include "hdflow/errors.hpp"

// Scalar arithmetic mod p and dense F_p[x] coefficient vectors.
// This is the substrate shared by the field tower (ff) and the bivariate
// polynomials (poly); it is not part of the public surface.

namespace hdflow::zp {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

inline u32 add(u32 a, u32 b, u32 p) {
    u32 s = a + b;
    return s >= p ? s - p : s;
}

inline u32 sub(u32 a, u32 b, u32 p) { return a >= b ? a - b : a + p - b; }

inline u32 neg(u32 a, u32 p) { return a ? p - a : 0; }

inline u32 mul(u32 a, u32 b, u32 p) { return static_cast<u32>(u64(a) * b % p); }

inline u32 pow(u32 a, u64 e, u32 p) {
    u32 r = 1 % p;
    while (e) {
        if (e & 1) r = mul(r, a, p);
        a = mul(a, a, p);
        e >>= 1;
    }
    return r;
}

// p prime, a != 0 mod p
inline u32 inv(u32 a, u32 p) {
    if (a % p == 0) raise(errc::division_by_zero, "inverse of 0 mod p");
    return pow(a % p, p - 2, p);
}

// ---- dense polynomials over F_p, little-endian coefficient vectors ----
// The zero polynomial is the empty vector; otherwise the back is nonzero.

using Vec = std::vector<u32>;

inline void trim(Vec& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

inline int deg(const Vec& v) { return static_cast<int>(v.size()) - 1; } // -1 for zero

Vec add(const Vec& a, const Vec& b, u32 p);
Vec sub(const Vec& a, const Vec& b, u32 p);
Vec mul(const Vec& a, const Vec& b, u32 p);
Vec scale(const Vec& a, u32 c, u32 p);

// quotient/remainder by a nonzero divisor; exact when rem comes back empty
std::pair<Vec, Vec> divmod(const Vec& a, const Vec& b, u32 p);

// monic gcd (Euclid); gcd(0,0) not allowed
Vec gcd(Vec a, Vec b, u32 p);

u32 eval(const Vec& v, u32 x, u32 p);

// x^e mod (m) where m is monic of degree >= 1
Vec powmod_x(u64 e, const Vec& m, u32 p);

bool is_prime(u64 n);

// monic degree-f polynomial irreducibility over F_p, by the Frobenius
// criterion: x^{p^f} = x mod m, and gcd(x^{p^{f/l}} - x, m) = 1 for every
// prime l dividing f
bool is_irreducible(const Vec& m, u32 p);

// lexicographically first monic irreducible of degree f (by the base-p value
// of the non-leading coefficients); deterministic default modulus
Vec find_irreducible(u32 p, u32 f);

} // namespace hdflow::zp
