#pragma once

#include <string>

#include <json.hpp>

#include "hdflow/dynamics.hpp"
#include "hdflow/ecurve.hpp"

// Machine checks of the identities tying the self-map to the curve: the
// commutation with multiplication by p, the determinant identity relating
// det A_p to det B_{m+1} with its explicit constant c, the equivalence of
// the two x([p]Q) expressions, the torsion/periodicity correspondence, and
// the experimental transpose symmetries. Each check emits a reproducible
// report; randomized modes are seeded and record their failure bounds.

namespace hdflow {

enum class Verdict { holds, fails, indeterminate };
std::string verdict_name(Verdict v);

struct ConjectureReport {
    std::string conjecture;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    Verdict verdict = Verdict::holds;
    nlohmann::ordered_json counterexamples = nlohmann::ordered_json::array();
    nlohmann::ordered_json stats = nlohmann::ordered_json::object();

    std::string to_json() const;
};

// c = (-1)^m det [ 1/(m+s-r) ]_{r,s=1..m} over F_p; every denominator lies
// in 1..p-2
struct ConstantC {
    u32 p;
    u32 value;
};
ConstantC constant_c(u32 p);

enum class CheckMode { symbolic, grid, random, exhaustive, sample };
CheckMode parse_mode(const std::string& name);
std::string mode_name(CheckMode m);

// degree bounds of both sides of the det identity, and the smallest
// extension degree k with p^k > 4 (bound_lambda + bound_a)
struct SzBounds {
    u64 bound_lambda;
    u64 bound_a;
    u32 k;
};
SzBounds sz_bounds(u32 p);

// det(A_p) = c lambda^{m^2} (lambda-1)^{m^2} det(B_{m+1}) in F_p[lambda, a].
// symbolic: coefficientwise via fraction-free determinants (p <= max_symbolic_p);
// grid: evaluation on a grid larger than the degree bounds in each variable;
// random: seeded Schwartz-Zippel with failure probability <= 4^-trials.
ConjectureReport check_var_conj(u32 p, CheckMode mode, u32 trials = 20, u64 seed = 0,
                                u32 max_symbolic_p = 13);

// (1/a^p)(det B_0 / det B_{m+1})^2 = (a^p/lambda^{p-1})(det A_{m+1} / det A_p)^2
// at every a outside {0, 1, lambda} where both denominators survive; vanishing
// points are skipped and logged
ConjectureReport check_equ_main(const CtxPtr& ctx, const FieldElement& lam);

// phi(pi(Q)) = pi([p] Q) over every curve point with x in F_q, including the
// quadratic-extension lifts; sample mode draws x values instead
ConjectureReport check_commutativity(const CtxPtr& ctx, const FieldElement& lam,
                                     CheckMode mode = CheckMode::exhaustive, u32 trials = 100,
                                     u64 seed = 0);

// graph periodicity of a versus p-coprime order of a point over a; the
// correspondence is conjectural, so mismatches become counterexamples in the
// report rather than exceptions
ConjectureReport check_torsion_periodicity(const CtxPtr& ctx, const FieldElement& lam,
                                           u64 max_nodes = kDefaultNodeBound);

// entrywise comparison of A_{m+1}(lambda,a)^T against lambda^{2p} a^p
// A_p(1/lambda,1/a) and of B_0^T against lambda^m a^p B_{m+1}(1/lambda,1/a):
// the observed ratio tables are reported without a pass/fail claim, and the
// determinant-level consequence det A_{m+1} = c lambda^{m^2+m} (1-lambda)^{m^2}
// a^{-p} det B_0 is checked exactly
ConjectureReport check_symmetries(const FieldElement& lam, const FieldElement& a);

} // namespace hdflow
