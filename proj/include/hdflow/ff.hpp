#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hdflow/errors.hpp"
#include "hdflow/zp.hpp"

// F_{p^f} = F_p[x]/(modulus), elements as little-endian digit vectors in the
// power basis 1, x, ..., x^{f-1}. Every element has an integer encoding
// enc(a) = sum a_i p^i, which is how nodes are named on the wire and in the
// orbit diagrams.

namespace hdflow {

using zp::u32;
using zp::u64;

class FieldCtx;
using CtxPtr = std::shared_ptr<const FieldCtx>;

class FieldElement {
  public:
    FieldElement() = default; // null element; usable only as a placeholder
    FieldElement(CtxPtr ctx, std::vector<u32> digits);

    const CtxPtr& ctx() const { return ctx_; }
    const std::vector<u32>& digits() const { return d_; }
    u64 encode() const;
    bool is_zero() const;

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
    FieldElement operator-() const;
    friend bool operator==(const FieldElement& a, const FieldElement& b);
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

  private:
    CtxPtr ctx_;
    std::vector<u32> d_;
    friend class FieldCtx;
};

class FieldCtx : public std::enable_shared_from_this<FieldCtx> {
  public:
    // p odd prime, modulus monic irreducible of degree f (little-endian
    // coefficients c_0..c_f). Throws NotPrime / NotMonic / NotIrreducible.
    static CtxPtr make(u32 p, u32 f, std::vector<u32> modulus);

    // deterministic modulus: lexicographically first monic irreducible
    static CtxPtr make_default(u32 p, u32 f);

    // the F_{3^4} context of the orbit diagrams: x^4 + x^2 + 2,
    // basis generator alpha with alpha^2 = 1 + sqrt(-1)
    static CtxPtr paper_f81();

    u32 p() const { return p_; }
    u32 f() const { return f_; }
    u64 q() const { return q_; }
    const std::vector<u32>& modulus() const { return mod_; }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_int(long long n) const;        // image of an integer
    FieldElement encode(u64 n) const;                // inverse of FieldElement::encode
    FieldElement element(std::vector<u32> digits) const;

    bool same(const FieldCtx& other) const;

  private:
    FieldCtx(u32 p, u32 f, std::vector<u32> mod);
    u32 p_, f_;
    u64 q_;
    std::vector<u32> mod_;
    friend FieldElement operator*(const FieldElement&, const FieldElement&);
};

FieldElement ff_pow(const FieldElement& x, u64 n);
FieldElement ff_inv(const FieldElement& x);

// both square roots of x, ordered by integer encoding; nullopt if x is not a
// square; {0, 0} for x = 0. Exhaustive below 2^20 elements, Tonelli-Shanks
// above.
std::optional<std::pair<FieldElement, FieldElement>> ff_sqrt(const FieldElement& x);

bool is_square(const FieldElement& x); // true for 0

// A point of P^1(F_{p^f}): a field element or the point at infinity. Also
// serves as a moduli point (the zero locus of a Higgs field).
class ProjPoint {
  public:
    static ProjPoint infinity() { return ProjPoint(); }
    static ProjPoint finite(FieldElement x) {
        ProjPoint pt;
        pt.x_ = std::move(x);
        return pt;
    }

    bool is_infinity() const { return !x_.has_value(); }
    const FieldElement& value() const;

    // "inf" or the decimal encoding
    std::string name() const;
    static ProjPoint parse(const std::string& name, const CtxPtr& ctx);

    friend bool operator==(const ProjPoint& a, const ProjPoint& b);
    friend bool operator!=(const ProjPoint& a, const ProjPoint& b) { return !(a == b); }

  private:
    ProjPoint() = default;
    std::optional<FieldElement> x_;
};

} // namespace hdflow
