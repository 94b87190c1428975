#include "hdflow/conjectures.hpp"

#include <algorithm>

#include "hdflow/rng.hpp"

namespace hdflow {

namespace {

using json = nlohmann::ordered_json;

std::string enc_str(const FieldElement& x) { return std::to_string(x.encode()); }

Matrix<FieldElement> eval_matrix(const Matrix<BiPoly>& M, const FieldElement& lam,
                                 const FieldElement& a) {
    Matrix<FieldElement> W(M.rows(), M.cols(), lam.ctx()->zero());
    for (size_t r = 0; r < M.rows(); ++r)
        for (size_t c = 0; c < M.cols(); ++c) W.at(r, c) = M.at(r, c).eval(lam, a);
    return W;
}

u64 pow_u64(u64 b, u32 e) {
    u64 r = 1;
    while (e--) r *= b;
    return r;
}

json field_params(const CtxPtr& ctx, const FieldElement& lam) {
    json p;
    p["p"] = ctx->p();
    p["f"] = ctx->f();
    p["modulus"] = ctx->modulus();
    p["lambda"] = lam.encode();
    return p;
}

// right-hand side of the det identity at one numeric point
FieldElement var_conj_rhs(const FieldElement& cval, const Matrix<BiPoly>& bm1_sym,
                          const FieldElement& lam, const FieldElement& a, u32 m) {
    FieldElement det_b = det_field(eval_matrix(bm1_sym, lam, a));
    return cval * ff_pow(lam, u64(m) * m) * ff_pow(lam - lam.ctx()->one(), u64(m) * m) * det_b;
}

} // namespace

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::fails: return "fails";
        case Verdict::indeterminate: return "indeterminate";
    }
    raise(errc::internal_error, "unnamed verdict");
}

std::string ConjectureReport::to_json() const {
    json j;
    j["conjecture"] = conjecture;
    j["params"] = params;
    j["verdict"] = verdict_name(verdict);
    j["counterexamples"] = counterexamples;
    j["stats"] = stats;
    return j.dump(2) + "\n";
}

ConstantC constant_c(u32 p) {
    auto ctx = FieldCtx::make_default(p, 1); // validates p odd prime
    u32 m = (p - 1) / 2;
    Matrix<FieldElement> M(m, m, ctx->zero());
    for (u32 r = 1; r <= m; ++r)
        for (u32 s = 1; s <= m; ++s) M.at(r - 1, s - 1) = ff_inv(ctx->from_int(m + s - r));
    FieldElement d = det_field(M);
    if (m % 2) d = -d;
    return {p, static_cast<u32>(d.encode())};
}

CheckMode parse_mode(const std::string& name) {
    if (name == "symbolic") return CheckMode::symbolic;
    if (name == "grid") return CheckMode::grid;
    if (name == "random") return CheckMode::random;
    if (name == "exhaustive") return CheckMode::exhaustive;
    if (name == "sample") return CheckMode::sample;
    raise(errc::unsupported_mode, "unknown mode: " + name);
}

std::string mode_name(CheckMode m) {
    switch (m) {
        case CheckMode::symbolic: return "symbolic";
        case CheckMode::grid: return "grid";
        case CheckMode::random: return "random";
        case CheckMode::exhaustive: return "exhaustive";
        case CheckMode::sample: return "sample";
    }
    raise(errc::internal_error, "unnamed mode");
}

SzBounds sz_bounds(u32 p) {
    u64 m = (p - 1) / 2;
    SzBounds b;
    b.bound_lambda = m * (2 * u64(p) - 1) + m * m + m;
    b.bound_a = (m + 1) * u64(p);
    u64 need = 4 * (b.bound_lambda + b.bound_a);
    b.k = 1;
    u64 q = p;
    while (q <= need) {
        q *= p;
        ++b.k;
    }
    return b;
}

ConjectureReport check_var_conj(u32 p, CheckMode mode, u32 trials, u64 seed, u32 max_symbolic_p) {
    ConstantC c = constant_c(p); // also validates p
    u32 m = (p - 1) / 2;

    ConjectureReport rep;
    rep.conjecture = "var";
    rep.params["p"] = p;
    rep.params["mode"] = mode_name(mode);
    rep.stats["c"] = c.value;

    if (mode == CheckMode::symbolic) {
        if (p > max_symbolic_p)
            raise(errc::bound_exceeded,
                  "symbolic determinants are limited to p <= " + std::to_string(max_symbolic_p));
        BiPoly lhs = det_ring(build_A_i_bipoly(p, p));
        BiPoly lm1 = BiPoly::monomial(p, 1, 0, 1) - BiPoly::one(p);
        BiPoly rhs = BiPoly::monomial(p, u32(m) * m, 0, c.value) * bpow(lm1, u64(m) * m) *
                     det_ring(build_B_i_bipoly(p, m + 1));
        bool ok = lhs == rhs;
        rep.verdict = ok ? Verdict::holds : Verdict::fails;
        if (!ok) {
            json ce;
            ce["difference"] = (lhs - rhs).to_string();
            rep.counterexamples.push_back(std::move(ce));
        }
        rep.stats["lhs_terms"] = lhs.term_count();
        rep.stats["rhs_terms"] = rhs.term_count();
        return rep;
    }

    SzBounds b = sz_bounds(p);
    rep.stats["bound_lambda"] = b.bound_lambda;
    rep.stats["bound_a"] = b.bound_a;
    auto cval_in = [&](const CtxPtr& ctx) { return ctx->from_int(static_cast<long long>(c.value)); };
    Matrix<BiPoly> bm1_sym = build_B_i_bipoly(p, m + 1);

    auto check_point = [&](const FieldElement& lam, const FieldElement& a, const FieldElement& cv) {
        FieldElement lhs = det_field(build_A_i(lam, a, p));
        FieldElement rhs = var_conj_rhs(cv, bm1_sym, lam, a, m);
        if (lhs == rhs) return true;
        json ce;
        ce["lambda"] = enc_str(lam);
        ce["a"] = enc_str(a);
        ce["lhs"] = enc_str(lhs);
        ce["rhs"] = enc_str(rhs);
        rep.counterexamples.push_back(std::move(ce));
        return false;
    };

    if (mode == CheckMode::grid) {
        if (p > max_symbolic_p)
            raise(errc::bound_exceeded,
                  "grid evaluation is limited to p <= " + std::to_string(max_symbolic_p));
        u64 need = std::max(b.bound_lambda, b.bound_a) + 1;
        u32 k = 1;
        while (pow_u64(p, k) < need) ++k;
        auto ctx = FieldCtx::make_default(p, k);
        auto cv = cval_in(ctx);
        u64 points = 0;
        for (u64 le = 0; le <= b.bound_lambda; ++le)
            for (u64 ae = 0; ae <= b.bound_a; ++ae) {
                check_point(ctx->encode(le), ctx->encode(ae), cv);
                ++points;
            }
        rep.stats["extension_degree"] = k;
        rep.stats["grid_lambda"] = b.bound_lambda + 1;
        rep.stats["grid_a"] = b.bound_a + 1;
        rep.stats["points_checked"] = points;
    } else if (mode == CheckMode::random) {
        auto ctx = FieldCtx::make_default(p, b.k);
        auto cv = cval_in(ctx);
        rep.params["trials"] = trials;
        rep.params["seed"] = seed;
        Rng rng(seed);
        for (u32 t = 0; t < trials; ++t)
            check_point(ctx->encode(rng.below(ctx->q())), ctx->encode(rng.below(ctx->q())), cv);
        rep.stats["extension_degree"] = b.k;
        rep.stats["field_size"] = ctx->q();
        rep.stats["points_checked"] = trials;
        rep.stats["failure_bound"] = "4^-" + std::to_string(trials);
    } else {
        raise(errc::unsupported_mode, "var check supports symbolic, grid, and random modes");
    }

    rep.verdict = rep.counterexamples.empty() ? Verdict::holds : Verdict::fails;
    return rep;
}

ConjectureReport check_equ_main(const CtxPtr& ctx, const FieldElement& lam) {
    if (lam.is_zero() || lam == ctx->one())
        raise(errc::out_of_range, "lambda must avoid {0, 1}");
    u32 p = ctx->p();
    u32 m = (p - 1) / 2;
    Curve c(ctx, lam);

    ConjectureReport rep;
    rep.conjecture = "equ_main";
    rep.params = field_params(ctx, lam);

    FieldElement lam_pm1 = ff_pow(lam, p - 1);
    u64 points = 0;
    auto skipped = json::array();
    for (u64 e = 0; e < ctx->q(); ++e) {
        FieldElement a = ctx->encode(e);
        if (a.is_zero() || a == ctx->one() || a == lam) continue;
        FieldElement ap = ff_pow(a, p);
        FieldElement b0 = det_field(build_B_i(c, a, 0));
        FieldElement bm1 = det_field(build_B_i(c, a, m + 1));
        FieldElement am1 = det_field(build_A_i(lam, a, m + 1));
        FieldElement dap = det_field(build_A_i(lam, a, p));
        if (bm1.is_zero() || dap.is_zero()) {
            json sk;
            sk["a"] = enc_str(a);
            sk["reason"] = bm1.is_zero() ? "det B_{m+1} = 0" : "det A_p = 0";
            skipped.push_back(std::move(sk));
            continue;
        }
        FieldElement lhs = ff_inv(ap) * (b0 / bm1) * (b0 / bm1);
        FieldElement rhs = ap / lam_pm1 * (am1 / dap) * (am1 / dap);
        ++points;
        if (lhs != rhs) {
            json ce;
            ce["a"] = enc_str(a);
            ce["lhs"] = enc_str(lhs);
            ce["rhs"] = enc_str(rhs);
            rep.counterexamples.push_back(std::move(ce));
        }
    }
    rep.stats["points_checked"] = points;
    rep.stats["skipped"] = std::move(skipped);
    rep.verdict = rep.counterexamples.empty() ? Verdict::holds : Verdict::fails;
    return rep;
}

ConjectureReport check_commutativity(const CtxPtr& ctx, const FieldElement& lam, CheckMode mode,
                                     u32 trials, u64 seed) {
    if (mode != CheckMode::exhaustive && mode != CheckMode::sample)
        raise(errc::unsupported_mode, "commutativity supports exhaustive and sample modes");
    Curve c(ctx, lam);
    SelfMap sm(ctx, lam);
    u32 p = ctx->p();

    ConjectureReport rep;
    rep.conjecture = "commute";
    rep.params = field_params(ctx, lam);
    rep.params["mode"] = mode_name(mode);

    u64 points = 0;
    auto record = [&](const FieldElement& a, const char* lift, const ProjPoint& phi,
                      const ProjPoint& pi) {
        ++points;
        if (phi == pi) return;
        json ce;
        ce["a"] = enc_str(a);
        ce["lift"] = lift;
        ce["phi"] = phi.name();
        ce["x_mulp"] = pi.name();
        rep.counterexamples.push_back(std::move(ce));
    };

    auto check_x = [&](const FieldElement& a) {
        ProjPoint phi = sm.eval(ProjPoint::finite(a));
        LiftResult L = lift_x(c, a);
        for (const auto& Q : L.base) {
            CurvePoint R = ec_mul(c, p, Q);
            record(a, "base", phi,
                   R.is_infinity() ? ProjPoint::infinity() : ProjPoint::finite(R.x()));
        }
        if (!L.ext.empty()) {
            QuadElt lamq = QuadElt::embed(L.ext_ctx, lam);
            QuadElt oneq = QuadElt::embed(L.ext_ctx, ctx->one());
            for (const auto& Q : L.ext) {
                QuadPoint R = ec_mul_generic(lamq, oneq, p, Q);
                if (!R.is_infinity() && !R.x().in_base()) {
                    ++points;
                    json ce;
                    ce["a"] = enc_str(a);
                    ce["lift"] = "ext";
                    ce["phi"] = phi.name();
                    ce["x_mulp"] = "outside the base field";
                    rep.counterexamples.push_back(std::move(ce));
                    continue;
                }
                ProjPoint pi =
                    R.is_infinity() ? ProjPoint::infinity() : ProjPoint::finite(R.x().u());
                record(a, "ext", phi, pi);
            }
        }
    };

    if (mode == CheckMode::exhaustive) {
        for (u64 e = 0; e < ctx->q(); ++e) check_x(ctx->encode(e));
    } else {
        rep.params["trials"] = trials;
        rep.params["seed"] = seed;
        Rng rng(seed);
        for (u32 t = 0; t < trials; ++t) check_x(ctx->encode(rng.below(ctx->q())));
    }
    // the point at infinity maps to itself on both paths
    record(ctx->zero(), "infinity", sm.eval(ProjPoint::infinity()), ProjPoint::infinity());

    rep.stats["points_checked"] = points;
    rep.verdict = rep.counterexamples.empty() ? Verdict::holds : Verdict::fails;
    return rep;
}

ConjectureReport check_torsion_periodicity(const CtxPtr& ctx, const FieldElement& lam,
                                           u64 max_nodes) {
    Curve c(ctx, lam);
    SelfMap sm(ctx, lam);
    OrbitGraph g = functional_graph(sm, max_nodes);

    ConjectureReport rep;
    rep.conjecture = "torsion";
    rep.params = field_params(ctx, lam);

    auto table = json::array();
    u64 agreements = 0;
    for (u64 e = 0; e < ctx->q(); ++e) {
        FieldElement a = ctx->encode(e);
        bool periodic = g.is_periodic(ProjPoint::finite(a));
        LiftResult L = lift_x(c, a);
        u64 order = L.base.empty() ? point_order(c, L.ext[0]) : point_order(c, L.base[0]);
        bool coprime = order % ctx->p() != 0;
        bool agree = periodic == coprime;
        json row;
        row["a"] = enc_str(a);
        row["periodic"] = periodic;
        row["order"] = order;
        row["p_coprime"] = coprime;
        row["agree"] = agree;
        if (agree)
            ++agreements;
        else
            rep.counterexamples.push_back(row);
        table.push_back(std::move(row));
    }
    rep.stats["nodes"] = ctx->q();
    rep.stats["agreements"] = agreements;
    rep.stats["table"] = std::move(table);
    rep.verdict = rep.counterexamples.empty() ? Verdict::holds : Verdict::fails;
    return rep;
}

ConjectureReport check_symmetries(const FieldElement& lam, const FieldElement& a) {
    const CtxPtr& ctx = lam.ctx();
    if (lam.is_zero() || a.is_zero()) raise(errc::out_of_range, "lambda and a must be invertible");
    u32 p = ctx->p();
    u32 m = (p - 1) / 2;
    FieldElement li = ff_inv(lam), ai = ff_inv(a);

    ConjectureReport rep;
    rep.conjecture = "symmetry";
    rep.params = field_params(ctx, lam);
    rep.params["a"] = a.encode();

    auto ratio_table = [&](const Matrix<FieldElement>& lhs_t, const Matrix<FieldElement>& rhs,
                           const FieldElement& scale) {
        auto rows = json::array();
        for (size_t r = 0; r < rhs.rows(); ++r) {
            auto row = json::array();
            for (size_t cidx = 0; cidx < rhs.cols(); ++cidx) {
                FieldElement denom = lhs_t.at(cidx, r); // transposed read
                FieldElement numer = scale * rhs.at(r, cidx);
                if (denom.is_zero())
                    row.push_back(numer.is_zero() ? "0/0" : "inf");
                else
                    row.push_back(enc_str(numer / denom));
            }
            rows.push_back(std::move(row));
        }
        return rows;
    };

    Matrix<FieldElement> am1 = eval_matrix(build_A_i_bipoly(p, m + 1), lam, a);
    Matrix<FieldElement> ap_inv = eval_matrix(build_A_i_bipoly(p, p), li, ai);
    rep.stats["ratio_A"] = ratio_table(am1, ap_inv, ff_pow(lam, 2 * u64(p)) * ff_pow(a, p));

    Matrix<FieldElement> b0 = eval_matrix(build_B_i_bipoly(p, 0), lam, a);
    Matrix<FieldElement> bm1_inv = eval_matrix(build_B_i_bipoly(p, m + 1), li, ai);
    rep.stats["ratio_B"] = ratio_table(b0, bm1_inv, ff_pow(lam, m) * ff_pow(a, p));

    ConstantC c = constant_c(p);
    FieldElement lhs = det_field(am1);
    FieldElement rhs = ctx->from_int(static_cast<long long>(c.value)) *
                       ff_pow(lam, u64(m) * m + m) * ff_pow(ctx->one() - lam, u64(m) * m) *
                       ff_inv(ff_pow(a, p)) * det_field(b0);
    rep.stats["det_consequence"] = lhs == rhs ? "holds" : "fails";
    rep.stats["det_lhs"] = enc_str(lhs);
    rep.stats["det_rhs"] = enc_str(rhs);

    rep.verdict = Verdict::indeterminate;
    return rep;
}

} // namespace hdflow
