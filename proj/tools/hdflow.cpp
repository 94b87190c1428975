#include <cstdlib>
#include <iostream>
#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hdflow/conjectures.hpp"

using namespace hdflow;
using json = nlohmann::ordered_json;

namespace {

struct FieldOpts {
    u32 p = 0;
    u32 f = 1;
    std::string modulus;
    std::string preset;
};

void add_field_opts(CLI::App* cmd, FieldOpts& o) {
    cmd->add_option("--p", o.p, "field characteristic (odd prime)");
    cmd->add_option("--f", o.f, "extension degree (default 1)");
    cmd->add_option("--modulus", o.modulus,
                    "comma-separated little-endian modulus coefficients c0,..,cf");
    cmd->add_option("--preset", o.preset, "named field; paper-f81 is F_{3^4} with x^4+x^2+2");
}

std::vector<u32> parse_modulus(const std::string& text) {
    std::vector<u32> out;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        std::string piece = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        try {
            out.push_back(static_cast<u32>(std::stoul(piece)));
        } catch (const std::exception&) {
            raise(errc::out_of_range, "bad modulus coefficient: " + piece);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

CtxPtr resolve_field(const FieldOpts& o) {
    if (!o.preset.empty()) {
        if (o.preset != "paper-f81") raise(errc::out_of_range, "unknown preset: " + o.preset);
        return FieldCtx::paper_f81();
    }
    if (o.p == 0) raise(errc::out_of_range, "provide --p (with --f/--modulus) or --preset");
    if (o.modulus.empty()) return FieldCtx::make_default(o.p, o.f);
    return FieldCtx::make(o.p, o.f, parse_modulus(o.modulus));
}

u64 node_bound() {
    if (const char* env = std::getenv("HDFLOW_MAX_NODES")) {
        char* end = nullptr;
        u64 v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
        raise(errc::out_of_range, "HDFLOW_MAX_NODES must be a positive integer");
    }
    return kDefaultNodeBound;
}

std::string poly_str(const UniPoly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (int i = 0; i <= f.deg(); ++i) {
        u64 c = f.coeff(static_cast<size_t>(i)).encode();
        if (c == 0) continue;
        if (!out.empty()) out += " + ";
        if (i == 0)
            out += std::to_string(c);
        else {
            if (c != 1) out += std::to_string(c) + "*";
            out += i == 1 ? "x" : "x^" + std::to_string(i);
        }
    }
    return out;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) raise(errc::out_of_range, "cannot open output file: " + out_path);
    file << text;
}

CurvePoint read_point(const Curve& c, u64 xe, u64 ye) {
    CurvePoint P(c.ctx()->encode(xe), c.ctx()->encode(ye));
    if (!c.contains(P)) raise(errc::point_not_on_curve, "the given (x, y) is not on the curve");
    return P;
}

int verdict_status(Verdict v) {
    switch (v) {
        case Verdict::holds: return 0;
        case Verdict::fails: return 1;
        case Verdict::indeterminate: return 3;
    }
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact multiplication-by-p self-map on P^1 over finite fields"};
    app.require_subcommand(1);

    FieldOpts field;
    u64 lambda_enc = 0;
    std::string z_name, start_name, format = "json", out_path, mode_name_opt;
    u64 a_enc = 0, x_enc = 0, y_enc = 0, seed = 0;
    u32 trials = 20, jobs = 1, prime = 0;

    auto* c_selfmap = app.add_subcommand("selfmap", "evaluate phi at one point");
    add_field_opts(c_selfmap, field);
    c_selfmap->add_option("--lambda", lambda_enc, "lambda as an integer encoding")->required();
    c_selfmap->add_option("--z", z_name, "input node (encoding or inf)")->required();

    auto* c_graph = app.add_subcommand("graph", "full functional graph of phi");
    add_field_opts(c_graph, field);
    c_graph->add_option("--lambda", lambda_enc)->required();
    c_graph->add_option("--format", format, "dot or json (default json)");
    c_graph->add_option("--jobs", jobs, "worker threads for the node sweep");
    c_graph->add_option("--out", out_path, "write to a file instead of stdout");

    auto* c_orbit = app.add_subcommand("orbit", "tail and cycle of one forward orbit");
    add_field_opts(c_orbit, field);
    c_orbit->add_option("--lambda", lambda_enc)->required();
    c_orbit->add_option("--start", start_name, "start node (encoding or inf)")->required();

    auto* c_ec = app.add_subcommand("ec", "Legendre curve operations");
    c_ec->require_subcommand(1);
    auto* c_mulp = c_ec->add_subcommand("mulp", "x([p]Q) by determinants and by the group law");
    add_field_opts(c_mulp, field);
    c_mulp->add_option("--lambda", lambda_enc)->required();
    c_mulp->add_option("--a", a_enc, "abscissa of the base point")->required();
    auto* c_order = c_ec->add_subcommand("order", "order of a rational point");
    add_field_opts(c_order, field);
    c_order->add_option("--lambda", lambda_enc)->required();
    c_order->add_option("--x", x_enc)->required();
    c_order->add_option("--y", y_enc)->required();
    auto* c_fact = c_ec->add_subcommand("check-fact", "f/g factorization residual at a point");
    add_field_opts(c_fact, field);
    c_fact->add_option("--lambda", lambda_enc)->required();
    c_fact->add_option("--x", x_enc)->required();
    c_fact->add_option("--y", y_enc)->required();

    auto* c_conj = app.add_subcommand("conj", "conjecture and identity reports");
    c_conj->require_subcommand(1);
    auto* c_var = c_conj->add_subcommand("var", "det(A_p) = c l^{m^2} (l-1)^{m^2} det(B_{m+1})");
    c_var->add_option("--p", prime, "odd prime")->required();
    c_var->add_option("--mode", mode_name_opt, "symbolic, grid, or random")->required();
    c_var->add_option("--trials", trials, "random-mode sample count (default 20)");
    c_var->add_option("--seed", seed, "random-mode seed (default 0)");
    auto* c_commute = c_conj->add_subcommand("commute", "phi(pi(Q)) = pi([p]Q)");
    add_field_opts(c_commute, field);
    c_commute->add_option("--lambda", lambda_enc)->required();
    c_commute->add_option("--mode", mode_name_opt, "exhaustive (default) or sample");
    c_commute->add_option("--trials", trials);
    c_commute->add_option("--seed", seed);
    auto* c_equ = c_conj->add_subcommand("equ-main", "the two x([p]Q) expressions agree");
    add_field_opts(c_equ, field);
    c_equ->add_option("--lambda", lambda_enc)->required();
    auto* c_torsion = c_conj->add_subcommand("torsion", "periodicity versus p-coprime order");
    add_field_opts(c_torsion, field);
    c_torsion->add_option("--lambda", lambda_enc)->required();
    auto* c_sym = c_conj->add_subcommand("symmetry", "transpose relations, reported entrywise");
    add_field_opts(c_sym, field);
    c_sym->add_option("--lambda", lambda_enc)->required();
    c_sym->add_option("--a", a_enc)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (*c_selfmap) {
            auto ctx = resolve_field(field);
            SelfMap sm(ctx, ctx->encode(lambda_enc));
            json out;
            out["phi"] = sm.eval(ProjPoint::parse(z_name, ctx)).name();
            std::cout << out.dump() << "\n";
        } else if (*c_graph) {
            auto ctx = resolve_field(field);
            SelfMap sm(ctx, ctx->encode(lambda_enc));
            auto g = functional_graph(sm, node_bound(), jobs == 0 ? 1 : jobs);
            if (format == "dot")
                emit(export_dot(g), out_path);
            else if (format == "json")
                emit(export_json(g), out_path);
            else
                raise(errc::out_of_range, "unknown format: " + format);
        } else if (*c_orbit) {
            auto ctx = resolve_field(field);
            SelfMap sm(ctx, ctx->encode(lambda_enc));
            auto path = orbit(sm, ProjPoint::parse(start_name, ctx));
            json out;
            auto tail = json::array();
            for (const auto& pt : path.tail) tail.push_back(pt.name());
            auto cyc = json::array();
            for (const auto& pt : path.cycle) cyc.push_back(pt.name());
            out["tail"] = std::move(tail);
            out["cycle"] = std::move(cyc);
            std::cout << out.dump() << "\n";
        } else if (*c_mulp) {
            auto ctx = resolve_field(field);
            Curve curve(ctx, ctx->encode(lambda_enc));
            FieldElement a = ctx->encode(a_enc);
            ProjPoint det = xp_via_determinant(curve, a);
            ProjPoint law = xp_via_group_law(curve, a);
            json out;
            out["a"] = std::to_string(a_enc);
            out["det"] = det.name();
            out["group_law"] = law.name();
            out["agree"] = det == law;
            std::cout << out.dump() << "\n";
            return det == law ? 0 : 1;
        } else if (*c_order) {
            auto ctx = resolve_field(field);
            Curve curve(ctx, ctx->encode(lambda_enc));
            u64 n = point_order(curve, read_point(curve, x_enc, y_enc));
            json out;
            out["order"] = n;
            out["p_coprime"] = n % ctx->p() != 0;
            std::cout << out.dump() << "\n";
        } else if (*c_fact) {
            auto ctx = resolve_field(field);
            Curve curve(ctx, ctx->encode(lambda_enc));
            auto res = factorization_check(curve, read_point(curve, x_enc, y_enc));
            json out;
            out["a_p"] = res.a_p.name();
            out["f"] = poly_str(res.f);
            out["g"] = poly_str(res.g);
            out["residual"] = poly_str(res.residual);
            out["ok"] = res.ok;
            std::cout << out.dump() << "\n";
            return res.ok ? 0 : 1;
        } else if (*c_var) {
            auto rep = check_var_conj(prime, parse_mode(mode_name_opt), trials, seed);
            std::cout << rep.to_json();
            return verdict_status(rep.verdict);
        } else if (*c_commute) {
            auto ctx = resolve_field(field);
            auto mode = mode_name_opt.empty() ? CheckMode::exhaustive : parse_mode(mode_name_opt);
            auto rep = check_commutativity(ctx, ctx->encode(lambda_enc), mode, trials, seed);
            std::cout << rep.to_json();
            return verdict_status(rep.verdict);
        } else if (*c_equ) {
            auto ctx = resolve_field(field);
            auto rep = check_equ_main(ctx, ctx->encode(lambda_enc));
            std::cout << rep.to_json();
            return verdict_status(rep.verdict);
        } else if (*c_torsion) {
            auto ctx = resolve_field(field);
            auto rep = check_torsion_periodicity(ctx, ctx->encode(lambda_enc), node_bound());
            std::cout << rep.to_json();
            return verdict_status(rep.verdict);
        } else if (*c_sym) {
            auto ctx = resolve_field(field);
            auto rep = check_symmetries(ctx->encode(lambda_enc), ctx->encode(a_enc));
            std::cout << rep.to_json();
            return verdict_status(rep.verdict);
        }
    } catch (const Error& e) {
        json out;
        out["error"] = e.what();
        out["code"] = errc_name(e.code());
        std::cout << out.dump() << "\n";
        return e.code() == errc::indeterminate ? 3 : 2;
    }
    return 0;
}
