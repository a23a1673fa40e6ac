#include "srpl/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "srpl/acceptance.hpp"
#include "srpl/harness.hpp"

namespace srpl {

namespace {

using nlohmann::json;

struct CommonOpts {
    std::string space = "grushin";
    int n = 1;
    double a = 0.25, b = -0.5, c = 1.5;
    std::string op;
    std::string family;
    std::vector<double> p_list;
    std::vector<double> L_list;
    double tolerance = -1.0;  // sentinel: pick the mode default
    std::string mode = "vanish";
    std::string sign = "plus_np";
    GridSpec grid;
    std::string format = "json";
    std::string output;
};

void add_space_options(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--space", o.space, "Space: grushin or heisenberg")
        ->check(CLI::IsMember({"grushin", "heisenberg"}));
    cmd->add_option("--n", o.n, "Space index n >= 1");
    cmd->add_option("--a", o.a, "Plane frame offset a (grushin only)");
    cmd->add_option("--b", o.b, "Plane center offset b (grushin only)");
    cmd->add_option("--c", o.c, "Plane frame scale c != 0 (grushin only)");
}

void add_grid_options(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--count", o.grid.count, "Grid point count");
    cmd->add_option("--seed", o.grid.seed, "Grid RNG seed");
    cmd->add_option("--r-min", o.grid.r_min, "Minimum sampling radius");
    cmd->add_option("--r-max", o.grid.r_max, "Maximum sampling radius");
    cmd->add_option("--axis-margin", o.grid.axis_margin, "Minimum |y1 - a| (plane)");
    cmd->add_option("--planar-margin", o.grid.planar_margin, "Minimum sum x_i^2 (group)");
    cmd->add_option("--arg-margin", o.grid.arg_margin,
                    "Minimum kernel argument distance from the branch cut (radians)");
}

void add_output_options(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--output", o.output,
                    "Output path (default stdout; relative paths resolve under "
                    "$SRPL_OUT_DIR when set)");
}

void add_sweep_options(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--op", o.op,
                    "Operator: p-laplacian, bgg, modified-p-laplacian, modified-infinity, "
                    "negg, negg-truncated, negh");
    cmd->add_option("--family", o.family,
                    "Solution family (default: the natural operand of --op)");
    cmd->add_option("--p", o.p_list, "Exponent sweep values, each in (1, inf)");
    cmd->add_option("--L", o.L_list, "Spectral parameter sweep values");
    cmd->add_option("--tolerance", o.tolerance, "Relative residual tolerance");
    cmd->add_option("--mode", o.mode, "vanish: require rel <= tol; nonzero: require rel > tol")
        ->check(CLI::IsMember({"vanish", "nonzero"}));
    cmd->add_option("--sign", o.sign, "Three-term identity sign variant: plus_np or minus_np");
}

void validate_parameters(const CommonOpts& o) {
    for (double p : o.p_list) {
        if (!(p > 1.0) || !std::isfinite(p)) {
            throw ParameterError("--p must lie in (1, inf): got " + std::to_string(p));
        }
    }
    for (double L : o.L_list) {
        if (!std::isfinite(L)) throw ParameterError("--L must be finite");
    }
}

VerificationConfig build_config(const CommonOpts& o) {
    validate_parameters(o);
    const auto kind = space_from_name(o.space);
    if (!kind) throw ParameterError("unknown space: " + o.space);
    VerificationConfig cfg;
    cfg.space = *kind == Space::Grushin
                    ? SpaceParams::grushin(o.n, o.a, o.b, o.c, 2.0, 0.0)
                    : SpaceParams::heisenberg(o.n, 2.0, 0.0);
    if (!o.op.empty()) {
        const auto op = operator_from_name(o.op);
        if (!op) throw ParameterError("unknown operator: " + o.op);
        cfg.op = *op;
    }
    if (o.family.empty()) {
        cfg.family = default_family(cfg.op, cfg.space.kind);
    } else {
        const auto fam = family_from_name(o.family);
        if (!fam) throw ParameterError("unknown family: " + o.family);
        cfg.family = *fam;
    }
    if (!o.p_list.empty()) cfg.p_list = o.p_list;
    if (!o.L_list.empty()) cfg.L_list = o.L_list;
    const auto mode = mode_from_name(o.mode);
    if (!mode) throw ParameterError("unknown mode: " + o.mode);
    cfg.mode = *mode;
    cfg.tolerance =
        o.tolerance >= 0.0 ? o.tolerance : (cfg.mode == CheckMode::Vanish ? 1e-8 : 1e-3);
    const auto sign = negg_sign_from_name(o.sign);
    if (!sign) throw ParameterError("unknown sign variant: " + o.sign);
    cfg.negg_sign = *sign;
    cfg.grid = o.grid;
    return cfg;
}

void emit(const std::string& body, const CommonOpts& o) {
    if (o.output.empty()) {
        std::cout << body;
        return;
    }
    namespace fs = std::filesystem;
    fs::path path(o.output);
    if (path.is_relative()) {
        if (const char* dir = std::getenv("SRPL_OUT_DIR")) path = fs::path(dir) / path;
    }
    std::ofstream f(path);
    if (!f) throw Error("cannot open output file: " + path.string());
    f << body;
}

int do_verify(const CommonOpts& o, bool all) {
    const VerificationConfig cfg = build_config(o);  // validates every flag
    if (all || o.op.empty()) {
        return run_acceptance(std::cout) ? 0 : 1;
    }
    const ResidualReport rep = run_verification(cfg);
    emit(o.format == "csv" ? report_to_csv(rep) : report_to_json(rep), o);
    return rep.pass ? 0 : 1;
}

int do_sweep(const CommonOpts& o) {
    const VerificationConfig cfg = build_config(o);
    const ResidualReport rep = run_verification(cfg);
    emit(o.format == "csv" ? report_to_csv(rep) : report_to_json(rep), o);
    return rep.pass ? 0 : 1;
}

json edge_to_json(const LimitEdge& e) {
    return json{{"name", e.name},
                {"worst", e.worst},
                {"threshold", e.threshold},
                {"pass", e.pass}};
}

int do_limits(const CommonOpts& o, bool space_given) {
    validate_parameters(o);
    std::vector<SpaceParams> bases;
    const auto make_base = [&](Space kind) {
        return kind == Space::Grushin ? SpaceParams::grushin(o.n, o.a, o.b, o.c, 2.0, 0.0)
                                      : SpaceParams::heisenberg(o.n, 2.0, 0.0);
    };
    if (space_given) {
        const auto kind = space_from_name(o.space);
        if (!kind) throw ParameterError("unknown space: " + o.space);
        bases.push_back(make_base(*kind));
    } else {
        bases.push_back(make_base(Space::Grushin));
        bases.push_back(make_base(Space::Heisenberg));
    }
    bool all_pass = true;
    json out = json::array();
    std::string csv = "space,n,edge,worst,threshold,pass\n";
    for (const auto& base : bases) {
        const LimitDiagramReport rep =
            o.L_list.empty() ? limit_diagram_check(base, o.grid)
                             : limit_diagram_check(base, o.grid, o.L_list);
        all_pass = all_pass && rep.pass;
        json edges = json::array();
        for (const auto& e : rep.edges) {
            edges.push_back(edge_to_json(e));
            csv += std::string(space_name(base.kind)) + "," + std::to_string(base.n) + "," +
                   e.name + "," + std::to_string(e.worst) + "," + std::to_string(e.threshold) +
                   "," + (e.pass ? "true" : "false") + "\n";
        }
        out.push_back(json{{"space", std::string(space_name(base.kind))},
                           {"n", base.n},
                           {"edges", std::move(edges)},
                           {"pass", rep.pass}});
    }
    emit(o.format == "csv" ? csv : out.dump(2) + "\n", o);
    return all_pass ? 0 : 1;
}

int do_oracle_compare(const CommonOpts& o, bool family_given, bool n_given) {
    validate_parameters(o);
    const double p = o.p_list.empty() ? 2.5 : o.p_list.front();
    const double L = o.L_list.empty() ? 0.5 : o.L_list.front();
    struct Combo {
        SpaceParams sp;
        Family fam;
    };
    std::vector<Combo> combos;
    const auto add = [&](int n, Family fam) {
        const SpaceParams sp = family_space(fam) == Space::Grushin
                                   ? SpaceParams::grushin(n, o.a, o.b, o.c, p, L)
                                   : SpaceParams::heisenberg(n, p, L);
        combos.push_back({sp, fam});
    };
    const std::vector<int> ns = n_given ? std::vector<int>{o.n} : std::vector<int>{1, 2};
    if (family_given) {
        const auto fam = family_from_name(o.family);
        if (!fam) throw ParameterError("unknown family: " + o.family);
        for (int n : ns) add(n, *fam);
    } else {
        for (int n : ns) {
            for (Family fam : {Family::PsiP, Family::FpL, Family::FInfL, Family::ZetaP,
                               Family::UpL, Family::UInfL}) {
                add(n, fam);
            }
        }
    }
    bool all_pass = true;
    json out = json::array();
    std::string csv = "space,n,family,p,L,grad_dev,hess_dev,grad_tolerance,hess_tolerance,pass\n";
    for (const auto& combo : combos) {
        const AdFdReport rep = ad_vs_fd_report(combo.sp, combo.fam, o.grid);
        all_pass = all_pass && rep.pass;
        out.push_back(json{{"space", std::string(space_name(combo.sp.kind))},
                           {"n", combo.sp.n},
                           {"family", family_name(combo.fam)},
                           {"p", p},
                           {"L", L},
                           {"grad_dev", rep.grad_dev},
                           {"hess_dev", rep.hess_dev},
                           {"grad_tolerance", rep.grad_tolerance},
                           {"hess_tolerance", rep.hess_tolerance},
                           {"pass", rep.pass}});
        csv += std::string(space_name(combo.sp.kind)) + "," + std::to_string(combo.sp.n) +
               "," + family_name(combo.fam) + "," + std::to_string(p) + "," +
               std::to_string(L) + "," + std::to_string(rep.grad_dev) + "," +
               std::to_string(rep.hess_dev) + "," + std::to_string(rep.grad_tolerance) + "," +
               std::to_string(rep.hess_tolerance) + "," + (rep.pass ? "true" : "false") + "\n";
    }
    emit(o.format == "csv" ? csv : out.dump(2) + "\n", o);
    return all_pass ? 0 : 1;
}

json complex_to_json(cdouble z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json audit_entry_to_json(const AuditEntry& e) {
    return json{{"jet", complex_to_json(e.jet)},
                {"closed", complex_to_json(e.closed)},
                {"ratio", complex_to_json(e.ratio)},
                {"scale", e.scale},
                {"rel_dev", e.rel_dev}};
}

int do_audit(const CommonOpts& o, bool count_given) {
    validate_parameters(o);
    const double p = o.p_list.empty() ? 3.5 : o.p_list.front();
    const double L = o.L_list.empty() ? 0.5 : o.L_list.front();
    const SpaceParams sp = SpaceParams::heisenberg(o.n, p, L);
    if (log_dispatch(sp)) {
        throw ParameterError("audit: the closed forms are undefined at the critical exponent");
    }
    GridSpec grid = o.grid;
    if (!count_given) grid.count = 5;
    const auto pts = generate_grid(sp, grid);
    json out;
    out["space"] = std::string(space_name(sp.kind));
    out["n"] = sp.n;
    out["p"] = p;
    out["L"] = L;
    out["points"] = pts;
    json audits = json::array();
    for (const auto& pt : pts) {
        const ClosedFormAudit audit = closed_form_audit(sp, pt);
        audits.push_back(json{{"norm2", audit_entry_to_json(audit.norm2)},
                              {"part1", audit_entry_to_json(audit.part1)},
                              {"part2", audit_entry_to_json(audit.part2)},
                              {"part2_combined_closed",
                               complex_to_json(audit.part2_combined_closed)},
                              {"combine_consistency", audit.combine_consistency}});
    }
    out["closed_form_audits"] = std::move(audits);
    if (sp.n == 1 && sp.p != 4.0) {
        json rows = json::array();
        for (const auto& pt : pts) {
            const NeghValue nv = negh_residual(sp, pt);
            rows.push_back(json{{"computed", complex_to_json(nv.computed)},
                                {"candidate_rhs", complex_to_json(nv.candidate_rhs)},
                                {"scale", nv.scale},
                                {"rel", nv.rel}});
        }
        out["two_term_group_operator"] = std::move(rows);
    }
    std::string csv = "point_index,quantity,jet_re,jet_im,closed_re,closed_im,ratio_re,"
                      "ratio_im,rel_dev\n";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const ClosedFormAudit audit = closed_form_audit(sp, pts[i]);
        const auto row = [&](const char* name, const AuditEntry& e) {
            csv += std::to_string(i) + "," + name + "," + std::to_string(e.jet.real()) + "," +
                   std::to_string(e.jet.imag()) + "," + std::to_string(e.closed.real()) + "," +
                   std::to_string(e.closed.imag()) + "," + std::to_string(e.ratio.real()) +
                   "," + std::to_string(e.ratio.imag()) + "," + std::to_string(e.rel_dev) +
                   "\n";
        };
        row("norm2", audit.norm2);
        row("part1", audit.part1);
        row("part2", audit.part2);
    }
    emit(o.format == "csv" ? csv : out.dump(2) + "\n", o);
    return 0;  // findings are informational by design
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Verification toolkit for p-Laplace-type identities on the Heisenberg "
                 "group and Grushin plane"};
    app.require_subcommand(0, 1);

    CommonOpts vo;
    bool verify_all = false;
    CLI::App* verify = app.add_subcommand(
        "verify", "Run the acceptance suite (default) or one operator/family check");
    verify->add_flag("--all", verify_all, "Run the full acceptance suite");
    add_space_options(verify, vo);
    add_sweep_options(verify, vo);
    add_grid_options(verify, vo);
    add_output_options(verify, vo);

    CommonOpts so;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "Evaluate one operator/family over a full (p, L) product sweep");
    add_space_options(sweep, so);
    add_sweep_options(sweep, so);
    add_grid_options(sweep, so);
    add_output_options(sweep, so);

    CommonOpts lo;
    CLI::App* limits =
        app.add_subcommand("limits", "Check the commuting limit diagram edges");
    add_space_options(limits, lo);
    limits->add_option("--L", lo.L_list, "Spectral parameter sweep values");
    add_grid_options(limits, lo);
    add_output_options(limits, lo);

    CommonOpts oo;
    CLI::App* oracle = app.add_subcommand(
        "oracle-compare", "Cross-check forward-mode jets against finite differences");
    add_space_options(oracle, oo);
    oracle->add_option("--family", oo.family, "Restrict to one family");
    oracle->add_option("--p", oo.p_list, "Exponent (single value)");
    oracle->add_option("--L", oo.L_list, "Spectral parameter (single value)");
    add_grid_options(oracle, oo);
    add_output_options(oracle, oo);

    CommonOpts ao;
    CLI::App* audit = app.add_subcommand(
        "audit", "Report jet evaluations against the candidate closed forms (informational)");
    audit->add_option("--n", ao.n, "Group index n >= 1");
    audit->add_option("--p", ao.p_list, "Exponent (single value)");
    audit->add_option("--L", ao.L_list, "Spectral parameter (single value)");
    add_grid_options(audit, ao);
    add_output_options(audit, ao);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) return do_verify(vo, verify_all);
        if (sweep->parsed()) return do_sweep(so);
        if (limits->parsed()) return do_limits(lo, limits->count("--space") > 0);
        if (oracle->parsed()) {
            return do_oracle_compare(oo, oracle->count("--family") > 0,
                                     oracle->count("--n") > 0);
        }
        if (audit->parsed()) return do_audit(ao, audit->count("--count") > 0);
        std::cerr << app.help();
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace srpl
