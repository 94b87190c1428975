#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hdflow/conjectures.hpp"

namespace py = pybind11;
using namespace hdflow;

namespace {

CtxPtr make_ctx(u32 p, u32 f, const std::optional<std::vector<u32>>& modulus) {
    if (modulus) return FieldCtx::make(p, f, *modulus);
    return FieldCtx::make_default(p, f);
}

std::vector<u64> encodings(const UniPoly& poly) {
    std::vector<u64> out;
    for (int i = 0; i <= poly.deg(); ++i) out.push_back(poly.coeff(static_cast<size_t>(i)).encode());
    return out;
}

} // namespace

PYBIND11_MODULE(_hdflow, m) {
    m.doc() = "exact multiplication-by-p self-maps on P^1 over finite fields";

    py::register_exception<Error>(m, "HdflowError");

    m.def(
        "eval_self_map",
        [](u32 p, u64 lam, const std::string& z, u32 f, std::optional<std::vector<u32>> modulus) {
            auto ctx = make_ctx(p, f, modulus);
            SelfMap sm(ctx, ctx->encode(lam));
            return sm.eval(ProjPoint::parse(z, ctx)).name();
        },
        py::arg("p"), py::arg("lam"), py::arg("z"), py::arg("f") = 1,
        py::arg("modulus") = py::none(),
        "phi_{lambda,p}(z); nodes are decimal encodings or \"inf\"");

    m.def(
        "rational_map",
        [](u32 p, u64 lam, u32 f, std::optional<std::vector<u32>> modulus) {
            auto ctx = make_ctx(p, f, modulus);
            SelfMap sm(ctx, ctx->encode(lam));
            py::dict out;
            out["num"] = encodings(sm.rational().num());
            out["den"] = encodings(sm.rational().den());
            return out;
        },
        py::arg("p"), py::arg("lam"), py::arg("f") = 1, py::arg("modulus") = py::none(),
        "reduced numerator/denominator coefficient encodings, little-endian");

    m.def(
        "closed_form",
        [](u32 p, u64 lam, u32 f, std::optional<std::vector<u32>> modulus) {
            auto ctx = make_ctx(p, f, modulus);
            auto r = selfmap_closed_form(ctx, ctx->encode(lam));
            py::dict out;
            out["num"] = encodings(r.num());
            out["den"] = encodings(r.den());
            return out;
        },
        py::arg("p"), py::arg("lam"), py::arg("f") = 1, py::arg("modulus") = py::none(),
        "the displayed degree-p^2 formula, p in {3, 5, 7}");

    m.def(
        "orbit",
        [](u32 p, u64 lam, const std::string& start, u32 f,
           std::optional<std::vector<u32>> modulus) {
            auto ctx = make_ctx(p, f, modulus);
            SelfMap sm(ctx, ctx->encode(lam));
            auto path = hdflow::orbit(sm, ProjPoint::parse(start, ctx));
            std::vector<std::string> tail, cycle;
            for (const auto& pt : path.tail) tail.push_back(pt.name());
            for (const auto& pt : path.cycle) cycle.push_back(pt.name());
            return py::make_tuple(tail, cycle);
        },
        py::arg("p"), py::arg("lam"), py::arg("start"), py::arg("f") = 1,
        py::arg("modulus") = py::none(), "(tail, cycle) of the forward orbit");

    m.def(
        "graph_json",
        [](u32 p, u64 lam, u32 f, std::optional<std::vector<u32>> modulus, u64 max_nodes,
           u32 jobs) {
            auto ctx = make_ctx(p, f, modulus);
            SelfMap sm(ctx, ctx->encode(lam));
            return export_json(functional_graph(sm, max_nodes, jobs));
        },
        py::arg("p"), py::arg("lam"), py::arg("f") = 1, py::arg("modulus") = py::none(),
        py::arg("max_nodes") = kDefaultNodeBound, py::arg("jobs") = 1);

    m.def(
        "graph_dot",
        [](u32 p, u64 lam, u32 f, std::optional<std::vector<u32>> modulus, u64 max_nodes,
           u32 jobs) {
            auto ctx = make_ctx(p, f, modulus);
            SelfMap sm(ctx, ctx->encode(lam));
            return export_dot(functional_graph(sm, max_nodes, jobs));
        },
        py::arg("p"), py::arg("lam"), py::arg("f") = 1, py::arg("modulus") = py::none(),
        py::arg("max_nodes") = kDefaultNodeBound, py::arg("jobs") = 1);

    m.def(
        "xp_both",
        [](u32 p, u64 lam, u64 a, u32 f, std::optional<std::vector<u32>> modulus) {
            auto ctx = make_ctx(p, f, modulus);
            Curve c(ctx, ctx->encode(lam));
            ProjPoint det = xp_via_determinant(c, ctx->encode(a));
            ProjPoint law = xp_via_group_law(c, ctx->encode(a));
            py::dict out;
            out["det"] = det.name();
            out["group_law"] = law.name();
            out["agree"] = det == law;
            return out;
        },
        py::arg("p"), py::arg("lam"), py::arg("a"), py::arg("f") = 1,
        py::arg("modulus") = py::none(),
        "x([p]Q) over x = a, by the determinant formula and by the group law");

    m.def(
        "point_order",
        [](u32 p, u64 lam, u64 x, u64 y, u32 f, std::optional<std::vector<u32>> modulus) {
            auto ctx = make_ctx(p, f, modulus);
            Curve c(ctx, ctx->encode(lam));
            CurvePoint P(ctx->encode(x), ctx->encode(y));
            if (!c.contains(P)) raise(errc::point_not_on_curve, "(x, y) is not on the curve");
            return hdflow::point_order(c, P);
        },
        py::arg("p"), py::arg("lam"), py::arg("x"), py::arg("y"), py::arg("f") = 1,
        py::arg("modulus") = py::none());

    m.def(
        "factorization",
        [](u32 p, u64 lam, u64 x, u64 y, u32 f, std::optional<std::vector<u32>> modulus) {
            auto ctx = make_ctx(p, f, modulus);
            Curve c(ctx, ctx->encode(lam));
            CurvePoint P(ctx->encode(x), ctx->encode(y));
            if (!c.contains(P)) raise(errc::point_not_on_curve, "(x, y) is not on the curve");
            auto res = factorization_check(c, P);
            py::dict out;
            out["a_p"] = res.a_p.name();
            out["f"] = encodings(res.f);
            out["g"] = encodings(res.g);
            out["residual_is_zero"] = res.residual.is_zero();
            out["ok"] = res.ok;
            return out;
        },
        py::arg("p"), py::arg("lam"), py::arg("x"), py::arg("y"), py::arg("f") = 1,
        py::arg("modulus") = py::none(),
        "reconstructs (x-a)^p (x-a_p) = f^2 - x(x-1)(x-lambda) g^2 at the point");

    m.def(
        "constant_c", [](u32 p) { return hdflow::constant_c(p).value; }, py::arg("p"),
        "the constant of the determinant identity, as an integer mod p");

    m.def(
        "check_var",
        [](u32 p, const std::string& mode, u32 trials, u64 seed) {
            return check_var_conj(p, parse_mode(mode), trials, seed).to_json();
        },
        py::arg("p"), py::arg("mode") = "symbolic", py::arg("trials") = 20, py::arg("seed") = 0,
        "JSON report for the det(A_p) identity");

    m.def(
        "check_commutativity",
        [](u32 p, u64 lam, u32 f, std::optional<std::vector<u32>> modulus, const std::string& mode,
           u32 trials, u64 seed) {
            auto ctx = make_ctx(p, f, modulus);
            return hdflow::check_commutativity(ctx, ctx->encode(lam), parse_mode(mode), trials,
                                               seed)
                .to_json();
        },
        py::arg("p"), py::arg("lam"), py::arg("f") = 1, py::arg("modulus") = py::none(),
        py::arg("mode") = "exhaustive", py::arg("trials") = 100, py::arg("seed") = 0,
        "JSON report for phi(pi(Q)) = pi([p]Q)");

    m.def(
        "check_equ_main",
        [](u32 p, u64 lam, u32 f, std::optional<std::vector<u32>> modulus) {
            auto ctx = make_ctx(p, f, modulus);
            return hdflow::check_equ_main(ctx, ctx->encode(lam)).to_json();
        },
        py::arg("p"), py::arg("lam"), py::arg("f") = 1, py::arg("modulus") = py::none());

    m.def(
        "check_torsion",
        [](u32 p, u64 lam, u32 f, std::optional<std::vector<u32>> modulus, u64 max_nodes) {
            auto ctx = make_ctx(p, f, modulus);
            return check_torsion_periodicity(ctx, ctx->encode(lam), max_nodes).to_json();
        },
        py::arg("p"), py::arg("lam"), py::arg("f") = 1, py::arg("modulus") = py::none(),
        py::arg("max_nodes") = kDefaultNodeBound);

    m.def(
        "check_symmetries",
        [](u32 p, u64 lam, u64 a, u32 f, std::optional<std::vector<u32>> modulus) {
            auto ctx = make_ctx(p, f, modulus);
            return hdflow::check_symmetries(ctx->encode(lam), ctx->encode(a)).to_json();
        },
        py::arg("p"), py::arg("lam"), py::arg("a"), py::arg("f") = 1,
        py::arg("modulus") = py::none());
}
