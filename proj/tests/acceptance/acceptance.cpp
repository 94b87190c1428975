// End-to-end acceptance gate. Each numbered check prints one pass/fail line;
// time budgets are pinned here, not in the harness. Exit status is the number
// of failed checks.

#include <chrono>
#include <cstdio>
#include <initializer_list>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hdflow/conjectures.hpp"
#include "hdflow/rng.hpp"

using namespace hdflow;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

std::vector<std::string> g_notes;

void note(std::string s) { g_notes.push_back(std::move(s)); }

FieldElement random_lambda(const CtxPtr& ctx, Rng& rng) {
    return ctx->encode(2 + rng.below(ctx->q() - 2)); // encodings 0 and 1 are 0 and 1
}

std::set<u64> distinct_lambdas(const CtxPtr& ctx, Rng& rng, size_t n) {
    std::set<u64> out;
    while (out.size() < n) out.insert(2 + rng.below(ctx->q() - 2));
    return out;
}

std::string at(u32 p, u64 lam_enc) {
    return "p=" + std::to_string(p) + " lambda=" + std::to_string(lam_enc);
}

// 1. the reduced determinant-formula map equals the displayed closed forms
void check_closed_form() {
    for (u32 p : {3u, 5u, 7u}) {
        auto ctx = FieldCtx::make_default(p, 2);
        Rng rng(100 + p);
        for (int t = 0; t < 50; ++t) {
            FieldElement lam = random_lambda(ctx, rng);
            SelfMap sm(ctx, lam);
            require(sm.rational() == selfmap_closed_form(ctx, lam),
                    "closed form mismatch at " + at(p, lam.encode()));
        }
    }
}

bool degenerate_lambda(u32 p, const CtxPtr& ctx, const FieldElement& lam) {
    const FieldElement one = ctx->one();
    if (p == 3) return lam == ctx->from_int(-1);
    if (p == 5) // primitive 6th root of unity
        return ff_pow(lam, 6) == one && ff_pow(lam, 2) != one && ff_pow(lam, 3) != one;
    return ((lam + one) * (lam * lam + lam + one)).is_zero(); // p = 7
}

// 2. phi collapses to the q-power Frobenius z^{p^2} exactly at the
// characterized lambda, both directions, every admissible lambda in F_{p^2}
void check_degenerate_lambda() {
    const u64 expected_count[] = {1, 2, 3}; // -1; two primitive 6th roots; -1 and two cube roots
    size_t idx = 0;
    for (u32 p : {3u, 5u, 7u}) {
        auto ctx = FieldCtx::make_default(p, 2);
        RationalMap frob(UniPoly::monomial(size_t(p) * p, ctx->one()), UniPoly::one(ctx));
        u64 found = 0;
        for (u64 e = 2; e < ctx->q(); ++e) {
            FieldElement lam = ctx->encode(e);
            bool collapses = SelfMap(ctx, lam).rational() == frob;
            bool predicted = degenerate_lambda(p, ctx, lam);
            require(collapses == predicted,
                    (collapses ? "unpredicted collapse at " : "predicted collapse missing at ") +
                        at(p, e));
            if (collapses) ++found;
        }
        require(found == expected_count[idx++],
                "p=" + std::to_string(p) + ": wrong number of degenerate lambda");
    }
}

u64 succ_enc(const OrbitGraph& g, u64 from) {
    ProjPoint s = g.successor(ProjPoint::finite(g.ctx()->encode(from)));
    require(!s.is_infinity(), std::to_string(from) + " maps to infinity");
    return s.value().encode();
}

void expect_edges(const OrbitGraph& g, std::initializer_list<std::pair<u64, u64>> edges) {
    for (auto [from, to] : edges)
        require(succ_enc(g, from) == to, "edge " + std::to_string(from) + " -> " +
                                             std::to_string(to) + " missing (got " +
                                             std::to_string(succ_enc(g, from)) + ")");
}

void expect_cycle(const OrbitGraph& g, const std::vector<u64>& nodes) {
    for (const Cycle& c : g.cycles()) {
        if (c.period != nodes.size()) continue;
        if (c.nodes[0].is_infinity() || c.nodes[0].value().encode() != nodes[0]) continue;
        for (size_t i = 0; i < nodes.size(); ++i)
            require(!c.nodes[i].is_infinity() && c.nodes[i].value().encode() == nodes[i],
                    "cycle through " + std::to_string(nodes[0]) + " deviates at position " +
                        std::to_string(i));
        return;
    }
    throw Failure("no " + std::to_string(nodes.size()) + "-cycle starting at " +
                  std::to_string(nodes[0]));
}

std::set<u64> fixed_finite(const OrbitGraph& g) {
    std::set<u64> out;
    for (const Cycle& c : g.cycles())
        if (c.period == 1 && !c.nodes[0].is_infinity()) out.insert(c.nodes[0].value().encode());
    return out;
}

// 3. the three F_81 orbit diagrams, edge for edge
void check_f81_diagrams() {
    auto ctx = FieldCtx::paper_f81();

    SelfMap s6(ctx, ctx->encode(6));
    OrbitGraph g6 = functional_graph(s6);
    require(fixed_finite(g6) == std::set<u64>{0, 1, 6, 45, 65}, "lambda=6 finite fixed set");
    require(g6.successor(ProjPoint::infinity()).is_infinity(), "lambda=6: infinity not fixed");
    expect_edges(g6, {{21, 27}, {43, 27}, {54, 27}, {27, 6},
                      {34, 15}, {61, 15}, {62, 15}, {15, 65},
                      {38, 35}, {47, 35}, {25, 35}, {35, 65}});
    note("lambda=6: finite fixed set is {0,1,6,45,65}; the diagram depicts the pair {6,65}");

    SelfMap s11(ctx, ctx->encode(11));
    OrbitGraph g11 = functional_graph(s11);
    expect_cycle(g11, {15, 31});
    expect_cycle(g11, {21, 64, 48, 53, 24, 37, 78, 77});
    expect_edges(g11, {{47, 31}, {60, 31}, {35, 15}, {57, 15}});

    SelfMap s5(ctx, ctx->encode(5));
    OrbitGraph g5 = functional_graph(s5);
    expect_cycle(g5, {32, 59, 35});
    expect_cycle(g5, {15, 58, 38, 31});
    expect_edges(g5, {{33, 32}, {34, 32}, {65, 35}, {74, 35}, {60, 59}, {61, 59}});
    note("lambda=5: the 4-cycle runs 31 -> 15 -> 58 -> 38 -> 31 (reference diagrams draw "
         "these arrows reversed); feeders computed as 74 -> 35 and 61 -> 59, each confirmed "
         "by the elliptic-curve oracle");
}

// 4. x([p]Q) from the B determinants equals double-and-add everywhere
void check_xp_oracle() {
    for (u32 p : {3u, 5u, 7u, 11u}) {
        auto ctx = FieldCtx::make_default(p, 2);
        Rng rng(400 + p);
        for (u64 le : distinct_lambdas(ctx, rng, 5)) {
            Curve c(ctx, ctx->encode(le));
            for (u64 ae = 0; ae < ctx->q(); ++ae) {
                if (ae == 0 || ae == 1 || ae == le) continue;
                FieldElement a = ctx->encode(ae);
                require(xp_via_determinant(c, a) == xp_via_group_law(c, a),
                        "oracle split at " + at(p, le) + " a=" + std::to_string(ae));
            }
        }
    }
}

// 5. phi . pi = pi . [p] over every curve point
void check_commutation() {
    for (u32 p : {3u, 5u, 7u, 11u, 13u}) {
        auto ctx = FieldCtx::make_default(p, 2);
        Rng rng(500 + p);
        for (u64 le : distinct_lambdas(ctx, rng, 5)) {
            ConjectureReport rep = check_commutativity(ctx, ctx->encode(le));
            require(rep.verdict == Verdict::holds, "commutation fails at " + at(p, le) + ": " +
                                                       rep.counterexamples.dump());
        }
    }
    auto f81 = FieldCtx::paper_f81();
    for (u64 le : {6ull, 11ull, 5ull}) {
        ConjectureReport rep = check_commutativity(f81, f81->encode(le));
        require(rep.verdict == Verdict::holds,
                "commutation fails over F_81 at lambda=" + std::to_string(le));
    }
}

// 6. det(A_p) = c lambda^{m^2} (lambda-1)^{m^2} det(B_{m+1}): symbolic for
// p <= 13, seeded Schwartz-Zippel for every odd prime below 50
void check_det_identity() {
    for (u32 p : {3u, 5u, 7u, 11u, 13u}) {
        ConjectureReport rep = check_var_conj(p, CheckMode::symbolic);
        require(rep.verdict == Verdict::holds, "symbolic identity fails at p=" + std::to_string(p));
    }
    for (u32 p : {3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u, 43u, 47u}) {
        ConjectureReport rep = check_var_conj(p, CheckMode::random, 20, 20260000 + p);
        require(rep.verdict == Verdict::holds, "randomized identity fails at p=" + std::to_string(p));
        require(rep.stats.at("failure_bound") == "4^-20",
                "failure bound not recorded at p=" + std::to_string(p));
    }
}

// 7. the cofactor vectors really span the kernels: A alpha = 0, B beta = 0
void check_kernels() {
    for (u32 p : {3u, 5u, 7u}) {
        Matrix<BiPoly> A = build_A_bipoly(p);
        std::vector<BiPoly> al = alpha_vector_bipoly(p);
        require(al.size() == A.cols(), "alpha length");
        for (size_t r = 0; r < A.rows(); ++r) {
            BiPoly acc = A.at(r, 0) * al[0];
            for (size_t c = 1; c < A.cols(); ++c) acc = acc + A.at(r, c) * al[c];
            require(acc.is_zero(), "A alpha != 0 symbolically, p=" + std::to_string(p) +
                                       " row " + std::to_string(r));
        }
        Matrix<BiPoly> B = build_B_bipoly(p);
        std::vector<BiPoly> be = beta_vector_bipoly(p);
        require(be.size() == B.cols(), "beta length");
        for (size_t r = 0; r < B.rows(); ++r) {
            BiPoly acc = B.at(r, 0) * be[0];
            for (size_t c = 1; c < B.cols(); ++c) acc = acc + B.at(r, c) * be[c];
            require(acc.is_zero(), "B beta != 0 symbolically, p=" + std::to_string(p) +
                                       " row " + std::to_string(r));
        }
    }
    for (u32 p : {3u, 5u, 7u, 11u, 13u}) {
        auto ctx = FieldCtx::make_default(p, 2);
        Rng rng(700 + p);
        for (int t = 0; t < 200; ++t) {
            FieldElement lam = random_lambda(ctx, rng);
            u64 ae;
            do ae = rng.below(ctx->q());
            while (ae == 0 || ae == 1 || ae == lam.encode());
            FieldElement a = ctx->encode(ae);
            std::string where = at(p, lam.encode()) + " a=" + std::to_string(ae);

            Matrix<FieldElement> A = build_A(lam, a);
            std::vector<FieldElement> al = alpha_vector(lam, a);
            for (size_t r = 0; r < A.rows(); ++r) {
                FieldElement acc = A.at(r, 0) * al[0];
                for (size_t c = 1; c < A.cols(); ++c) acc = acc + A.at(r, c) * al[c];
                require(acc.is_zero(), "A alpha != 0 at " + where);
            }

            Curve curve(ctx, lam);
            Matrix<FieldElement> B = build_B(curve, a);
            std::vector<FieldElement> be = beta_vector(curve, a);
            for (size_t r = 0; r < B.rows(); ++r) {
                FieldElement acc = B.at(r, 0) * be[0];
                for (size_t c = 1; c < B.cols(); ++c) acc = acc + B.at(r, c) * be[c];
                require(acc.is_zero(), "B beta != 0 at " + where);
            }
        }
    }
}

// 8. (x-a)^p (x-a_p) = f^2 - x(x-1)(x-lambda) g^2 reconstructs exactly
void check_factorization() {
    for (u32 p : {3u, 5u, 7u}) {
        auto ctx = FieldCtx::make_default(p, 2);
        Rng rng(800 + p);
        int done = 0;
        while (done < 20) {
            FieldElement lam = random_lambda(ctx, rng);
            u64 ae = rng.below(ctx->q());
            if (ae == 0 || ae == 1 || ae == lam.encode()) continue;
            Curve c(ctx, lam);
            FieldElement a = ctx->encode(ae);
            auto roots = ff_sqrt(c.rhs(a));
            if (!roots) continue; // point lives over the quadratic extension
            FactorizationResult fr = factorization_check(c, CurvePoint(a, roots->first));
            require(fr.ok && fr.residual.is_zero(),
                    "residual nonzero at " + at(p, lam.encode()) + " a=" + std::to_string(ae));
            ++done;
        }
    }
}

// 9. degree p^2, p^2 + 1 fixed points with multiplicity
void check_degrees() {
    for (u32 p : {3u, 5u, 7u}) {
        // F_9 has only 7 admissible lambda, so p = 3 draws from F_27
        auto ctx = FieldCtx::make_default(p, p == 3 ? 3 : 2);
        Rng rng(900 + p);
        for (u64 le : distinct_lambdas(ctx, rng, 10)) {
            SelfMap sm(ctx, ctx->encode(le));
            const RationalMap& r = sm.rational();
            require(r.degree() == int(p * p), "degree != p^2 at " + at(p, le));
            UniPoly diff = r.num() - UniPoly::x(ctx) * r.den();
            require(diff.deg() == int(p * p), "num - z den degree at " + at(p, le));
            require(sm.eval(ProjPoint::infinity()).is_infinity(), "infinity moves at " + at(p, le));
        }
    }
    note("fixed-point count p^2+1 with multiplicity = the p^2 roots of num - z*den "
         "plus the always-fixed point at infinity");
}

// 10. torsion/periodicity tables for the three F_81 lambda; a mismatch is a
// finding to report, not a failure, so only report integrity is asserted
void check_torsion_tables() {
    auto ctx = FieldCtx::paper_f81();
    std::string verdicts;
    for (u64 le : {6ull, 11ull, 5ull}) {
        ConjectureReport rep = check_torsion_periodicity(ctx, ctx->encode(le));
        nlohmann::json parsed = nlohmann::json::parse(rep.to_json());
        for (const char* key : {"conjecture", "params", "verdict", "counterexamples", "stats"})
            require(parsed.contains(key), std::string("report lacks ") + key);
        require(parsed["stats"]["table"].is_array() && parsed["stats"]["table"].size() == 81,
                "table incomplete for lambda=" + std::to_string(le));
        require(parsed["stats"].contains("agreements"), "agreement count missing");
        if (rep.verdict != Verdict::holds)
            note("lambda=" + std::to_string(le) +
                 ": periodicity and p-coprime torsion disagree somewhere (recorded finding)");
        verdicts += (verdicts.empty() ? "" : ",") + verdict_name(rep.verdict);
    }
    note("torsion/periodicity verdicts for lambda=6,11,5: " + verdicts);
}

struct Check {
    int id;
    const char* label;
    double budget_sec; // 0 = untimed
    void (*fn)();
};

const Check kChecks[] = {
    {1, "closed-form regression, 50 random lambda each for p=3,5,7", 5.0, check_closed_form},
    {2, "Frobenius collapse iff the degenerate lambda, exhaustive over F_{p^2}", 5.0,
     check_degenerate_lambda},
    {3, "F_81 orbit diagrams for lambda=6,11,5, edge-exact", 1.0, check_f81_diagrams},
    {4, "x([p]Q) determinant formula vs group law, all a, 5 curves, p=3,5,7,11", 60.0,
     check_xp_oracle},
    {5, "phi commutes with multiplication by p, exhaustive, p=3..13 and F_81", 300.0,
     check_commutation},
    {6, "det identity symbolic p<=13 and seeded random for odd p<=47", 600.0, check_det_identity},
    {7, "kernel identities A alpha = 0 and B beta = 0, symbolic and 200 random per p", 0,
     check_kernels},
    {8, "factorization identity residual = 0, 20 random points per p=3,5,7", 0,
     check_factorization},
    {9, "degree p^2 and p^2+1 fixed points, 10 lambda per p=3,5,7", 0, check_degrees},
    {10, "torsion/periodicity tables over F_81, report integrity", 0, check_torsion_tables},
};

} // namespace

int main() {
    int failed = 0;
    for (const Check& c : kChecks) {
        g_notes.clear();
        std::string verdict = "PASS", detail;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.fn();
        } catch (const Failure& e) {
            verdict = "FAIL";
            detail = e.what();
        } catch (const std::exception& e) {
            verdict = "FAIL";
            detail = std::string("unexpected error: ") + e.what();
        }
        double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (verdict == "PASS" && c.budget_sec > 0 && sec > c.budget_sec) {
            verdict = "FAIL";
            detail = "over the time budget";
        }
        char timing[64];
        if (c.budget_sec > 0)
            std::snprintf(timing, sizeof timing, "%.2fs of %.0fs", sec, c.budget_sec);
        else
            std::snprintf(timing, sizeof timing, "%.2fs", sec);
        std::printf("[%s] %2d. %s (%s)%s%s\n", verdict.c_str(), c.id, c.label, timing,
                    detail.empty() ? "" : ": ", detail.c_str());
        for (const std::string& n : g_notes) std::printf("         note: %s\n", n.c_str());
        if (verdict == "FAIL") ++failed;
    }
    std::printf("%d/10 checks passed\n", 10 - failed);
    return failed;
}
