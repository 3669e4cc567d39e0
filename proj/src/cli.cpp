#include "kap/cli.hpp"
#include "kap/error.hpp"
#include "kap/perturb.hpp"
#include "kap/pillowcase.hpp"
#include "kap/repsys.hpp"
#include "kap/slicecheck.hpp"
#include "kap/svg.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace kap::cli {

namespace {

constexpr double kPi = std::numbers::pi;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::IoError, "cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::IoError, "cannot write " + path);
    out << content;
}

int exit_code_for(Errc c) {
    switch (c) {
        case Errc::MalformedFraction:
        case Errc::EvenP:
        case Errc::NotCoprime:
        case Errc::EmptyWord:
        case Errc::MultiComponentLink:
        case Errc::BadConfig:
        case Errc::IoError:
            return 2;
        case Errc::Infeasible:
        case Errc::SliceBlocked:
        case Errc::CorridorTooNarrow:
            return 1;
        default:
            return 3;
    }
}

void check_bounds(int n, double tol) {
    if (n < 8 || n > 100000)
        throw Error(Errc::BadConfig, "grid size must be in [8, 100000]");
    if (!(tol > 0)) throw Error(Errc::BadConfig, "tolerances must be positive");
}

std::string apoly_json(const std::string& label, const APolyResult& r) {
    nlohmann::ordered_json j;
    j["label"] = label;
    j["a_poly"] = nlohmann::ordered_json::parse(r.a_poly.to_json());
    j["nontrivial_factor"] = nlohmann::ordered_json::parse(r.nontrivial_factor.to_json());
    j["factored"] = r.factored_str();
    j["diagnostics"] = r.diagnostics;
    return j.dump(2) + "\n";
}

IntPoly2 load_apoly_file(const std::string& path) {
    auto text = read_file(path);
    try {
        auto j = nlohmann::json::parse(text);
        if (j.contains("a_poly")) return IntPoly2::from_json(j.at("a_poly").dump());
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::BadConfig, std::string("apoly JSON: ") + e.what());
    }
    return IntPoly2::from_json(text);
}

PillowSet load_pillow_csv(const std::string& path, double delta) {
    PillowSet s = pillowset_from_csv(read_file(path), path);
    s.delta = delta;
    return s;
}

int dispatch(const std::vector<std::string>& args);

// RunConfig document: {"subcommand": "...", "args": ["...", ...]}
int run_config(const std::string& path) {
    auto text = read_file(path);
    std::vector<std::string> argv;
    try {
        auto j = nlohmann::json::parse(text);
        argv.push_back(j.at("subcommand").get<std::string>());
        if (j.contains("args"))
            for (const auto& a : j.at("args")) argv.push_back(a.get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::BadConfig, std::string("config JSON: ") + e.what());
    }
    return dispatch(argv);
}

int dispatch(const std::vector<std::string>& args) {
    CLI::App app{"knot A-polynomials and SU(2) pillowcase toolkit"};
    app.require_subcommand(0, 1);

    std::string config_path;
    app.add_option("--config", config_path, "run a RunConfig JSON document");

    // ---- apoly
    auto* cmd_apoly = app.add_subcommand("apoly", "compute the A-polynomial of a knot");
    std::string ap_spec, ap_json;
    cmd_apoly->add_option("knot", ap_spec, "knot spec: p/q, torus:p,q, braid:<letters>")
        ->required();
    cmd_apoly->add_option("--json", ap_json, "write the result as JSON");

    // ---- pillowcase
    auto* cmd_pc = app.add_subcommand("pillowcase", "sample the SU(2) pillowcase image");
    std::string pc_spec, pc_csv, pc_json, pc_method = "quat";
    int pc_n = 360;
    double pc_tol = 1e-10;
    bool pc_wit = false;
    cmd_pc->add_option("knot", pc_spec)->required();
    cmd_pc->add_option("--n", pc_n, "number of theta slices");
    cmd_pc->add_option("--tol", pc_tol, "solver tolerance");
    cmd_pc->add_option("--csv", pc_csv, "write theta,eta,residual CSV");
    cmd_pc->add_option("--json", pc_json, "write JSON");
    cmd_pc->add_flag("--witnesses", pc_wit, "include witness quaternions in JSON");
    cmd_pc->add_option("--method", pc_method, "quat (slice solver) or riley");

    // ---- plan
    auto* cmd_plan = app.add_subcommand("plan", "perturbation planners");
    std::string pl_spec, pl_gout = "g.json", pl_set, pl_g1out = "g1.json", pl_g2out = "g2.json";
    double pl_eta0 = kPi;
    int pl_n = 360;
    double pl_tol = 1e-10, pl_delta = 2 * kPi / 360;
    bool pl_avoid = false;
    cmd_plan->add_option("--knot", pl_spec, "knot spec for the slice-path planner");
    cmd_plan->add_option("--eta0", pl_eta0, "slice angle");
    cmd_plan->add_option("--n", pl_n);
    cmd_plan->add_option("--tol", pl_tol);
    cmd_plan->add_option("--g-out", pl_gout, "output shear JSON");
    cmd_plan->add_flag("--avoid", pl_avoid, "finite-avoidance planner on a point set");
    cmd_plan->add_option("--set", pl_set, "pillowcase CSV for --avoid");
    cmd_plan->add_option("--delta", pl_delta, "declared sampling resolution of --set");
    cmd_plan->add_option("--g1-out", pl_g1out);
    cmd_plan->add_option("--g2-out", pl_g2out);

    // ---- certify
    auto* cmd_cert = app.add_subcommand("certify", "non-intersection certificate");
    std::string ce_set, ce_g1, ce_g2;
    double ce_delta = 2 * kPi / 360;
    cmd_cert->add_option("--set", ce_set)->required();
    cmd_cert->add_option("--g1", ce_g1)->required();
    cmd_cert->add_option("--g2", ce_g2)->required();
    cmd_cert->add_option("--delta", ce_delta);

    // ---- critical
    auto* cmd_crit = app.add_subcommand("critical", "enumerate glued critical points");
    std::string cr_p1, cr_p2, cr_g1, cr_g2;
    double cr_tol = 1e-6, cr_delta = 2 * kPi / 360;
    cmd_crit->add_option("--p1", cr_p1)->required();
    cmd_crit->add_option("--p2", cr_p2)->required();
    cmd_crit->add_option("--g1", cr_g1)->required();
    cmd_crit->add_option("--g2", cr_g2)->required();
    cmd_crit->add_option("--tol", cr_tol);
    cmd_crit->add_option("--delta", cr_delta);

    // ---- slices
    auto* cmd_slices = app.add_subcommand("slices", "unit-torus slice check");
    std::string sl_apoly, sl_csv;
    int sl_n = 360;
    double sl_tol = 1e-8;
    cmd_slices->add_option("apoly", sl_apoly, "A-polynomial JSON file")->required();
    cmd_slices->add_option("--n", sl_n);
    cmd_slices->add_option("--tol", sl_tol);
    cmd_slices->add_option("--csv", sl_csv, "write per-slice CSV");

    // ---- validate
    auto* cmd_val = app.add_subcommand("validate", "pillowcase vs A-polynomial");
    std::string va_apoly, va_csv;
    double va_tol = 1e-6, va_delta = 2 * kPi / 360;
    cmd_val->add_option("apoly", va_apoly)->required();
    cmd_val->add_option("pillowcase", va_csv)->required();
    cmd_val->add_option("--tol", va_tol);
    cmd_val->add_option("--delta", va_delta);

    // ---- render
    auto* cmd_render = app.add_subcommand("render", "SVG pillowcase diagram");
    std::string re_csv, re_out = "out.svg", re_g, re_set2;
    int re_w = 720, re_h = 720;
    double re_r = 2.0, re_eta0 = -1, re_corr = 0.0;
    cmd_render->add_option("pillowcase", re_csv)->required();
    cmd_render->add_option("-o,--out", re_out)->required();
    cmd_render->add_option("--width", re_w);
    cmd_render->add_option("--height", re_h);
    cmd_render->add_option("--radius", re_r);
    cmd_render->add_option("--g", re_g, "shear JSON overlay");
    cmd_render->add_option("--path-eta0", re_eta0, "overlay the c1..c5 path");
    cmd_render->add_option("--corridor", re_corr, "corridor half-width band");
    cmd_render->add_option("--set2", re_set2, "second point set CSV");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (!config_path.empty()) return run_config(config_path);

    if (cmd_apoly->parsed()) {
        auto pres = parse_knot_spec(ap_spec);
        auto r = apoly(pres);
        std::printf("A(%s) = %s\n", pres.label.c_str(), r.factored_str().c_str());
        std::printf("expanded: %s\n", r.a_poly.str().c_str());
        if (!ap_json.empty()) write_file(ap_json, apoly_json(pres.label, r));
        return 0;
    }
    if (cmd_pc->parsed()) {
        check_bounds(pc_n, pc_tol);
        auto pres = parse_knot_spec(pc_spec);
        PillowSet s = pc_method == "riley" ? compute_pillowcase_riley(pres, pc_n, pc_tol)
                                           : compute_pillowcase(pres, pc_n, pc_tol);
        std::printf("%s: %zu points at n_theta=%d\n", s.label.c_str(), s.points.size(),
                    pc_n);
        if (!pc_csv.empty()) write_file(pc_csv, pillowset_to_csv(s));
        if (!pc_json.empty()) write_file(pc_json, pillowset_to_json(s, pc_wit));
        return 0;
    }
    if (cmd_plan->parsed()) {
        if (pl_avoid) {
            if (pl_set.empty()) throw Error(Errc::BadConfig, "--avoid needs --set");
            if (!(pl_delta > 0)) throw Error(Errc::BadConfig, "delta must be positive");
            PillowSet s = load_pillow_csv(pl_set, pl_delta);
            auto plan = plan_finite_avoidance(s);
            write_file(pl_g1out, plan.g1.to_json());
            write_file(pl_g2out, plan.g2.to_json());
            std::printf("margin=%.17g lipschitz=%.17g pass=%d\n", plan.cert.margin,
                        plan.cert.lipschitz, plan.cert.pass ? 1 : 0);
            return plan.cert.pass ? 0 : 1;
        }
        if (pl_spec.empty()) throw Error(Errc::BadConfig, "plan needs --knot or --avoid");
        check_bounds(pl_n, pl_tol);
        auto pres = parse_knot_spec(pl_spec);
        PillowSet rk = compute_pillowcase(pres, pl_n, pl_tol);
        PillowSet sk = pillow_translate(rk, 0.0, -kPi);
        double margin = 0;
        ShearFn g = plan_slice_path(sk, pl_eta0, &margin);
        write_file(pl_gout, g.to_json());
        std::printf("slice path planned: margin=%.17g knots=%zu\n", margin,
                    g.knots().size());
        return 0;
    }
    if (cmd_cert->parsed()) {
        if (!(ce_delta > 0)) throw Error(Errc::BadConfig, "delta must be positive");
        PillowSet s = load_pillow_csv(ce_set, ce_delta);
        ShearFn g1 = ShearFn::from_json(read_file(ce_g1));
        ShearFn g2 = ShearFn::from_json(read_file(ce_g2));
        Certificate c = check_certificate(s, g1, g2);
        std::printf("margin=%.17g threshold=%.17g pass=%d\n", c.margin,
                    2 * c.delta * (1 + c.lipschitz), c.pass ? 1 : 0);
        return c.pass ? 0 : 1;
    }
    if (cmd_crit->parsed()) {
        PillowSet p1 = load_pillow_csv(cr_p1, cr_delta);
        PillowSet p2 = load_pillow_csv(cr_p2, cr_delta);
        ShearFn g1 = ShearFn::from_json(read_file(cr_g1));
        ShearFn g2 = ShearFn::from_json(read_file(cr_g2));
        auto matches = enumerate_critical_points(p1, p2, g1, g2, cr_tol);
        std::printf("critical matches: %zu\n", matches.size());
        for (const auto& m : matches)
            std::printf("  (%.6f,%.6f) -> (%.6f,%.6f) -> %c(%.6f,%.6f) -> (%.6f,%.6f) "
                        "resid=%.3g\n",
                        m.theta_m1, m.eta_m1, m.theta_0, m.eta_0,
                        m.sign_branch > 0 ? '+' : '-', m.theta_h0, m.eta_h0, m.theta_1,
                        m.eta_1, m.residual);
        return 0;
    }
    if (cmd_slices->parsed()) {
        check_bounds(sl_n, sl_tol);
        IntPoly2 a = load_apoly_file(sl_apoly);
        SliceReport rep = check_all_slices(a, sl_n, sl_tol);
        double worst = 0;
        for (const auto& s : rep.slices) worst = std::max(worst, s.min_unit_distance);
        std::printf("slices=%d worst_unit_distance=%.17g pass=%d\n", sl_n, worst,
                    rep.pass ? 1 : 0);
        if (!sl_csv.empty()) write_file(sl_csv, slice_report_to_csv(rep));
        return rep.pass ? 0 : 1;
    }
    if (cmd_val->parsed()) {
        if (!(va_tol > 0)) throw Error(Errc::BadConfig, "tolerances must be positive");
        IntPoly2 a = load_apoly_file(va_apoly);
        PillowSet s = load_pillow_csv(va_csv, va_delta);
        CrossValidation cv = cross_validate(a, s, va_tol);
        std::printf("checked=%d flagged=%d pass=%d\n", cv.total, cv.flagged,
                    cv.pass ? 1 : 0);
        for (const auto& p : cv.flagged_points)
            std::printf("  candidate 0-dimensional component at (%.6f, %.6f)\n", p.theta,
                        p.eta);
        return cv.pass ? 0 : 1;
    }
    if (cmd_render->parsed()) {
        PillowSet s = load_pillow_csv(re_csv, 2 * kPi / 360);
        RenderOptions opt;
        opt.width = re_w;
        opt.height = re_h;
        opt.point_radius = re_r;
        ShearFn g;
        PillowSet s2;
        if (!re_g.empty()) {
            g = ShearFn::from_json(read_file(re_g));
            opt.shear_graph = &g;
        }
        if (re_eta0 >= 0) {
            opt.path_eta0 = re_eta0;
            opt.corridor_halfwidth = re_corr;
        }
        if (!re_set2.empty()) {
            s2 = load_pillow_csv(re_set2, 2 * kPi / 360);
            opt.second_set = &s2;
        }
        write_file(re_out, render_pillowcase(s, opt));
        std::printf("wrote %s\n", re_out.c_str());
        return 0;
    }
    std::cout << app.help();
    return 2;
}

} // namespace

int run(const std::vector<std::string>& args) {
    try {
        return dispatch(args);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}

} // namespace kap::cli
