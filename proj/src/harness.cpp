#include "srpl/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include <json.hpp>

namespace srpl {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double real_ipow(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

constexpr double kPi = std::numbers::pi;

}  // namespace

std::string_view operator_name(OperatorTag tag) {
    switch (tag) {
        case OperatorTag::PLaplacian: return "p-laplacian";
        case OperatorTag::Bgg: return "bgg";
        case OperatorTag::ModifiedPLaplacian: return "modified-p-laplacian";
        case OperatorTag::ModifiedInfinity: return "modified-infinity";
        case OperatorTag::Negg: return "negg";
        case OperatorTag::NeggTruncated: return "negg-truncated";
        case OperatorTag::Negh: return "negh";
    }
    return "?";
}

std::optional<OperatorTag> operator_from_name(std::string_view name) {
    for (OperatorTag t : {OperatorTag::PLaplacian, OperatorTag::Bgg,
                          OperatorTag::ModifiedPLaplacian, OperatorTag::ModifiedInfinity,
                          OperatorTag::Negg, OperatorTag::NeggTruncated, OperatorTag::Negh}) {
        if (operator_name(t) == name) return t;
    }
    return std::nullopt;
}

std::string_view mode_name(CheckMode mode) {
    return mode == CheckMode::Vanish ? "vanish" : "nonzero";
}

std::optional<CheckMode> mode_from_name(std::string_view name) {
    if (name == "vanish") return CheckMode::Vanish;
    if (name == "nonzero") return CheckMode::Nonzero;
    return std::nullopt;
}

std::optional<Family> family_from_name(std::string_view name) {
    for (Family f : {Family::PsiP, Family::ZetaP, Family::FpL, Family::UpL, Family::FInfL,
                     Family::UInfL}) {
        if (family_name(f) == name) return f;
    }
    return std::nullopt;
}

std::optional<NeggSign> negg_sign_from_name(std::string_view name) {
    for (NeggSign s : {NeggSign::PlusNp, NeggSign::MinusNp}) {
        if (negg_sign_name(s) == name) return s;
    }
    if (name == "plus-np") return NeggSign::PlusNp;
    if (name == "minus-np") return NeggSign::MinusNp;
    return std::nullopt;
}

std::string_view space_name(Space kind) {
    return kind == Space::Grushin ? "grushin" : "heisenberg";
}

std::optional<Space> space_from_name(std::string_view name) {
    if (name == "grushin") return Space::Grushin;
    if (name == "heisenberg") return Space::Heisenberg;
    return std::nullopt;
}

std::vector<double> default_p_list() { return {1.5, 2.0, 2.5, 3.0, 4.0, 6.0, 10.0}; }

std::vector<double> default_L_list() { return {0.0, 0.5, -0.5, 1.5, -1.5, 2.0, -2.0}; }

Family default_family(OperatorTag op, Space kind) {
    const bool plane = kind == Space::Grushin;
    switch (op) {
        case OperatorTag::PLaplacian: return plane ? Family::PsiP : Family::ZetaP;
        case OperatorTag::Bgg:
        case OperatorTag::ModifiedPLaplacian: return plane ? Family::FpL : Family::UpL;
        case OperatorTag::ModifiedInfinity: return plane ? Family::FInfL : Family::UInfL;
        case OperatorTag::Negg:
        case OperatorTag::NeggTruncated: return Family::FpL;
        case OperatorTag::Negh: return Family::UpL;
    }
    return Family::PsiP;
}

std::vector<std::vector<double>> generate_grid(const SpaceParams& sp, const GridSpec& spec) {
    if (spec.count == 0) throw ParameterError("generate_grid: count must be positive");
    if (!(spec.r_min > 0.0) || !(spec.r_max >= spec.r_min)) {
        throw ParameterError("generate_grid: need 0 < r_min <= r_max");
    }
    if (!(spec.axis_margin > 0.0) || !(spec.planar_margin > 0.0) || !(spec.arg_margin > 0.0)) {
        throw ParameterError("generate_grid: margins must be positive");
    }

    std::mt19937_64 rng(spec.seed);
    // Fixed bit-to-double mapping so the stream does not depend on library
    // distribution internals.
    auto uniform01 = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    auto normal_pair = [&](double& g1, double& g2) {
        double u1;
        do {
            u1 = uniform01();
        } while (u1 <= 0.0);
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        g1 = r * std::cos(2.0 * kPi * u2);
        g2 = r * std::sin(2.0 * kPi * u2);
    };
    const double log_lo = std::log(spec.r_min);
    const double log_hi = std::log(spec.r_max);
    auto radius = [&]() { return std::exp(log_lo + uniform01() * (log_hi - log_lo)); };

    std::vector<std::vector<double>> pts;
    pts.reserve(spec.count);
    const std::size_t budget = 100 * spec.count;
    const std::size_t d = sp.dim();

    for (std::size_t attempt = 0; attempt < budget && pts.size() < spec.count; ++attempt) {
        if (sp.kind == Space::Grushin) {
            const double rho = radius();
            const double theta = 2.0 * kPi * uniform01();
            const double y1 = sp.a + rho * std::cos(theta);
            const double y2 = sp.b + rho * std::sin(theta);
            if (std::abs(y1 - sp.a) < spec.axis_margin) continue;
            const cdouble g(sp.c * real_ipow(y1 - sp.a, sp.n + 1),
                            (sp.n + 1.0) * (y2 - sp.b));
            if (g == cdouble{} || std::abs(std::arg(g)) > kPi - spec.arg_margin) continue;
            pts.push_back({y1, y2});
        } else {
            // Uniform direction, then one anisotropic dilation making the
            // homogeneous norm exactly the sampled radius.
            std::vector<double> u(d);
            for (std::size_t k = 0; k + 1 < d; k += 2) normal_pair(u[k], u[k + 1]);
            if (d % 2 == 1) {
                double extra;
                normal_pair(u[d - 1], extra);
            }
            double euclid = 0.0;
            for (double x : u) euclid += x * x;
            euclid = std::sqrt(euclid);
            if (euclid == 0.0) continue;
            for (double& x : u) x /= euclid;
            const double hom = homogeneous_norm_estimate(sp, u);
            if (hom == 0.0) continue;
            const double rho = radius();
            const double s = rho / hom;
            for (std::size_t k = 0; k + 1 < d; ++k) u[k] *= s;
            u[d - 1] *= s * s;
            double sumsq = 0.0;
            for (std::size_t k = 0; k + 1 < d; ++k) sumsq += u[k] * u[k];
            if (sumsq < spec.planar_margin) continue;
            const cdouble v(sumsq, -4.0 * u[d - 1]);
            if (std::abs(std::arg(v)) > kPi - spec.arg_margin) continue;
            pts.push_back(std::move(u));
        }
    }
    if (pts.size() < spec.count) {
        throw GridError("generate_grid: only " + std::to_string(pts.size()) + " of " +
                        std::to_string(spec.count) +
                        " points survived the exclusion margins within the oversampling budget");
    }
    return pts;
}

namespace {

bool is_mixed_family(Family f) {
    return f == Family::FpL || f == Family::UpL || f == Family::FInfL || f == Family::UInfL;
}

std::optional<std::string> skip_reason(const VerificationConfig& cfg, double p, double L) {
    const double crit = cfg.space.with(p, L).critical_p();
    const bool unit_L = L == 1.0 || L == -1.0;
    switch (cfg.op) {
        case OperatorTag::PLaplacian:
            if (p == crit) {
                return "log family replaces the power family at the critical exponent";
            }
            return std::nullopt;
        case OperatorTag::Bgg:
            if (p != 2.0) return "defined at p = 2 only";
            return std::nullopt;
        case OperatorTag::ModifiedPLaplacian:
        case OperatorTag::ModifiedInfinity:
            if (unit_L && is_mixed_family(cfg.family)) {
                return "mixed frame vector vanishes identically at |L| = 1";
            }
            return std::nullopt;
        case OperatorTag::Negg:
        case OperatorTag::NeggTruncated:
            if (L == 0.0 || unit_L) return "requires L outside {0, +-1}";
            if (p == crit) return "undefined at the critical exponent";
            if (cfg.op == OperatorTag::NeggTruncated && p == 2.0) {
                return "truncation coincides with the vanishing second-order identity at p = 2";
            }
            return std::nullopt;
        case OperatorTag::Negh:
            if (p == crit) return "undefined at the critical exponent";
            return std::nullopt;
    }
    return std::nullopt;
}

ResidualValue dispatch(const VerificationConfig& cfg, const SpaceParams& sp,
                       std::span<const double> pt) {
    switch (cfg.op) {
        case OperatorTag::PLaplacian: return p_laplacian(sp, cfg.family, pt);
        case OperatorTag::Bgg: return bgg_operator(sp, cfg.family, pt);
        case OperatorTag::ModifiedPLaplacian: return modified_p_laplacian(sp, cfg.family, pt);
        case OperatorTag::ModifiedInfinity: return modified_infinity(sp, cfg.family, pt);
        case OperatorTag::Negg: return negg_identity(sp, pt, cfg.negg_sign).identity;
        case OperatorTag::NeggTruncated: return negg_identity(sp, pt, cfg.negg_sign).truncated;
        case OperatorTag::Negh: {
            const NeghValue nv = negh_residual(sp, pt);
            ResidualValue rv;
            rv.point.assign(pt.begin(), pt.end());
            rv.lambda = nv.computed;
            rv.scale = nv.scale;
            rv.rel = nv.rel;
            return rv;
        }
    }
    throw ParameterError("run_verification: unknown operator tag");
}

}  // namespace

ResidualReport run_verification(const VerificationConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    if (family_space(config.family) != config.space.kind) {
        throw ParameterError(std::string("run_verification: family ") +
                             family_name(config.family) + " does not live on " +
                             std::string(space_name(config.space.kind)));
    }
    if ((config.op == OperatorTag::Negg || config.op == OperatorTag::NeggTruncated) &&
        config.space.kind != Space::Grushin) {
        throw ParameterError("run_verification: the three-term identity lives on the plane");
    }
    if (config.op == OperatorTag::Negh &&
        (config.space.kind != Space::Heisenberg || config.space.n != 1)) {
        throw ParameterError("run_verification: negh lives on the first group (n = 1)");
    }
    if (config.p_list.empty() || config.L_list.empty()) {
        throw ParameterError("run_verification: p and L sweeps must be non-empty");
    }
    for (double p : config.p_list) {
        if (!(p > 1.0) || !std::isfinite(p)) {
            throw ParameterError("run_verification: p must lie in (1, inf)");
        }
    }
    for (double L : config.L_list) {
        if (!std::isfinite(L)) throw ParameterError("run_verification: L must be finite");
    }

    ResidualReport report;
    report.config = config;
    report.points = generate_grid(config.space, config.grid);

    for (double p : config.p_list) {
        for (double L : config.L_list) {
            if (auto reason = skip_reason(config, p, L)) {
                report.skipped.push_back({p, L, *reason});
                continue;
            }
            const SpaceParams sp = config.space.with(p, L);
            for (std::size_t idx = 0; idx < report.points.size(); ++idx) {
                ResidualValue rv;
                try {
                    rv = dispatch(config, sp, report.points[idx]);
                } catch (const Error& e) {
                    throw Error(std::string(e.what()) + " [" +
                                std::string(operator_name(config.op)) + " on " +
                                family_name(config.family) + ", p=" + fmt_double(p) +
                                ", L=" + fmt_double(L) + ", point #" + std::to_string(idx) +
                                "]");
                }
                report.records.push_back({p, L, idx, rv.lambda, rv.scale, rv.rel});
            }
        }
    }

    bool ok = !report.records.empty();
    double max_rel = 0.0;
    double min_rel = report.records.empty() ? 0.0 : report.records.front().rel;
    for (const auto& r : report.records) {
        max_rel = std::max(max_rel, r.rel);
        min_rel = std::min(min_rel, r.rel);
        ok = ok && (config.mode == CheckMode::Vanish ? r.rel <= config.tolerance
                                                     : r.rel > config.tolerance);
    }
    report.max_rel = max_rel;
    report.min_rel = min_rel;
    report.pass = ok;
    report.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

namespace {

json space_to_json(const SpaceParams& sp) {
    return json{{"kind", std::string(space_name(sp.kind))},
                {"n", sp.n},
                {"a", sp.a},
                {"b", sp.b},
                {"c", sp.c}};
}

json grid_to_json(const GridSpec& g) {
    return json{{"count", g.count},        {"seed", g.seed},
                {"r_min", g.r_min},        {"r_max", g.r_max},
                {"axis_margin", g.axis_margin}, {"planar_margin", g.planar_margin},
                {"arg_margin", g.arg_margin}};
}

GridSpec grid_from_json(const json& j) {
    GridSpec g;
    g.count = j.at("count").get<std::size_t>();
    g.seed = j.at("seed").get<std::uint64_t>();
    g.r_min = j.at("r_min").get<double>();
    g.r_max = j.at("r_max").get<double>();
    g.axis_margin = j.at("axis_margin").get<double>();
    g.planar_margin = j.at("planar_margin").get<double>();
    g.arg_margin = j.at("arg_margin").get<double>();
    return g;
}

}  // namespace

std::string report_to_json(const ResidualReport& report) {
    const VerificationConfig& cfg = report.config;
    json j;
    j["operator"] = std::string(operator_name(cfg.op));
    j["family"] = family_name(cfg.family);
    j["params"] = json{{"space", space_to_json(cfg.space)},
                       {"p_list", cfg.p_list},
                       {"L_list", cfg.L_list},
                       {"tolerance", cfg.tolerance},
                       {"mode", std::string(mode_name(cfg.mode))},
                       {"negg_sign", negg_sign_name(cfg.negg_sign)},
                       {"grid", grid_to_json(cfg.grid)}};
    j["points"] = report.points;
    json residuals = json::array();
    for (const auto& r : report.records) {
        residuals.push_back(json{{"p", r.p},
                                 {"L", r.L},
                                 {"point_index", r.point_index},
                                 {"lambda_re", r.lambda.real()},
                                 {"lambda_im", r.lambda.imag()},
                                 {"scale", r.scale},
                                 {"rel", r.rel}});
    }
    j["residuals"] = std::move(residuals);
    json skipped = json::array();
    for (const auto& s : report.skipped) {
        skipped.push_back(json{{"p", s.p}, {"L", s.L}, {"reason", s.reason}});
    }
    j["skipped"] = std::move(skipped);
    j["max_rel"] = report.max_rel;
    j["min_rel"] = report.min_rel;
    j["pass"] = report.pass;
    j["meta"] = json{{"duration_seconds", report.duration_seconds}};
    return j.dump(2) + "\n";
}

ResidualReport report_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw Error(std::string("report_from_json: ") + e.what());
    }
    try {
        ResidualReport report;
        VerificationConfig cfg;
        const auto op = operator_from_name(j.at("operator").get<std::string>());
        const auto fam = family_from_name(j.at("family").get<std::string>());
        if (!op || !fam) throw Error("report_from_json: unknown operator or family name");
        cfg.op = *op;
        cfg.family = *fam;
        const json& params = j.at("params");
        const json& sj = params.at("space");
        const auto kind = space_from_name(sj.at("kind").get<std::string>());
        if (!kind) throw Error("report_from_json: unknown space kind");
        const int n = sj.at("n").get<int>();
        cfg.space = *kind == Space::Grushin
                        ? SpaceParams::grushin(n, sj.at("a").get<double>(),
                                               sj.at("b").get<double>(),
                                               sj.at("c").get<double>(), 2.0, 0.0)
                        : SpaceParams::heisenberg(n, 2.0, 0.0);
        cfg.p_list = params.at("p_list").get<std::vector<double>>();
        cfg.L_list = params.at("L_list").get<std::vector<double>>();
        cfg.tolerance = params.at("tolerance").get<double>();
        const auto mode = mode_from_name(params.at("mode").get<std::string>());
        const auto sign = negg_sign_from_name(params.at("negg_sign").get<std::string>());
        if (!mode || !sign) throw Error("report_from_json: unknown mode or sign name");
        cfg.mode = *mode;
        cfg.negg_sign = *sign;
        cfg.grid = grid_from_json(params.at("grid"));
        report.config = cfg;
        report.points = j.at("points").get<std::vector<std::vector<double>>>();
        for (const auto& rj : j.at("residuals")) {
            ResidualRecord r;
            r.p = rj.at("p").get<double>();
            r.L = rj.at("L").get<double>();
            r.point_index = rj.at("point_index").get<std::size_t>();
            r.lambda = cdouble(rj.at("lambda_re").get<double>(), rj.at("lambda_im").get<double>());
            r.scale = rj.at("scale").get<double>();
            r.rel = rj.at("rel").get<double>();
            report.records.push_back(std::move(r));
        }
        for (const auto& sjk : j.at("skipped")) {
            report.skipped.push_back({sjk.at("p").get<double>(), sjk.at("L").get<double>(),
                                      sjk.at("reason").get<std::string>()});
        }
        report.max_rel = j.at("max_rel").get<double>();
        report.min_rel = j.at("min_rel").get<double>();
        report.pass = j.at("pass").get<bool>();
        report.duration_seconds = j.at("meta").at("duration_seconds").get<double>();
        return report;
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error(std::string("report_from_json: ") + e.what());
    }
}

std::string report_to_csv(const ResidualReport& report) {
    const VerificationConfig& cfg = report.config;
    const std::size_t d = cfg.space.dim();
    std::string out = "operator,family,space,n,p,L,point_index";
    for (std::size_t k = 0; k < d; ++k) out += ",c" + std::to_string(k);
    out += ",lambda_re,lambda_im,scale,rel\n";
    for (const auto& r : report.records) {
        out += std::string(operator_name(cfg.op));
        out += ',';
        out += family_name(cfg.family);
        out += ',';
        out += std::string(space_name(cfg.space.kind));
        out += ',';
        out += std::to_string(cfg.space.n);
        out += ',';
        out += fmt_double(r.p);
        out += ',';
        out += fmt_double(r.L);
        out += ',';
        out += std::to_string(r.point_index);
        for (double x : report.points[r.point_index]) {
            out += ',';
            out += fmt_double(x);
        }
        out += ',';
        out += fmt_double(r.lambda.real());
        out += ',';
        out += fmt_double(r.lambda.imag());
        out += ',';
        out += fmt_double(r.scale);
        out += ',';
        out += fmt_double(r.rel);
        out += '\n';
    }
    return out;
}

LimitDiagramReport limit_diagram_check(const SpaceParams& base, const GridSpec& grid,
                                       const std::vector<double>& L_list,
                                       const std::vector<double>& p_ladder) {
    if (p_ladder.size() < 2) {
        throw ParameterError("limit_diagram_check: p ladder needs at least two rungs");
    }
    for (std::size_t k = 0; k < p_ladder.size(); ++k) {
        if (!(p_ladder[k] > 1.0)) {
            throw ParameterError("limit_diagram_check: ladder exponents must exceed 1");
        }
        if (k > 0 && !(p_ladder[k] > p_ladder[k - 1])) {
            throw ParameterError("limit_diagram_check: p ladder must be strictly increasing");
        }
        if (p_ladder[k] == base.critical_p()) {
            throw ParameterError(
                "limit_diagram_check: ladder may not touch the critical exponent");
        }
    }
    if (L_list.empty()) throw ParameterError("limit_diagram_check: L list must be non-empty");

    LimitDiagramReport rep;
    rep.base = base;
    rep.L_list = L_list;
    rep.p_ladder = p_ladder;
    const bool plane = base.kind == Space::Grushin;
    const Family fam_p = plane ? Family::FpL : Family::UpL;
    const Family fam_inf = plane ? Family::FInfL : Family::UInfL;
    const Family fam_rad = plane ? Family::PsiP : Family::ZetaP;
    const auto pts = generate_grid(base, grid);

    LimitEdge approach{"power-family-approaches-infinity-family", 0.0, 1.0, false};
    for (double L : L_list) {
        const SpaceParams sp_inf = base.with(2.0, L);
        for (const auto& pt : pts) {
            const cdouble fi = solution_value(sp_inf, fam_inf, pt);
            double prev = -1.0;
            for (double p : p_ladder) {
                const double dist = std::abs(solution_value(base.with(p, L), fam_p, pt) - fi);
                if (prev >= 0.0) {
                    approach.worst = std::max(approach.worst, dist / std::max(prev, kTinyScale));
                }
                prev = dist;
            }
        }
    }
    approach.pass = approach.worst < approach.threshold;

    LimitEdge inf_res{"infinity-residual", 0.0, 1e-8, false};
    for (double L : L_list) {
        if (L == 1.0 || L == -1.0) continue;  // mixed vector vanishes identically
        const SpaceParams sp = base.with(2.0, L);
        for (const auto& pt : pts) {
            inf_res.worst = std::max(inf_res.worst, modified_infinity(sp, fam_inf, pt).rel);
        }
    }
    inf_res.pass = inf_res.worst <= inf_res.threshold;

    LimitEdge fin0{"finite-collapse-at-L-zero", 0.0, 1e-13, false};
    for (double p : p_ladder) {
        const SpaceParams sp = base.with(p, 0.0);
        for (const auto& pt : pts) {
            const ResidualValue rm = modified_p_laplacian(sp, fam_p, pt);
            const ResidualValue rp = p_laplacian(sp, fam_p, pt);
            const double op_dev =
                std::abs(rm.lambda - rp.lambda) / std::max(rp.scale, kTinyScale);
            const cdouble mixed = solution_value(sp, fam_p, pt);
            const cdouble radial = solution_value(sp, fam_rad, pt);
            const double val_dev =
                std::abs(mixed - radial) / std::max(std::abs(radial), kTinyScale);
            fin0.worst = std::max({fin0.worst, op_dev, val_dev});
        }
    }
    fin0.pass = fin0.worst <= fin0.threshold;

    LimitEdge inf0{"infinity-collapse-at-L-zero", 0.0, 1e-13, false};
    {
        const SpaceParams sp = base.with(2.0, 0.0);
        for (const auto& pt : pts) {
            const CJet2 u = eval_solution(sp, fam_inf, pt);
            const HorizontalFrame fr = frame_at(sp, pt);
            const std::vector<cdouble> hg = horizontal_gradient(fr, u);
            const HorizontalVectorValue xi = build_xi_upsilon(sp, u, pt);
            double num = 0.0;
            double den = 0.0;
            for (std::size_t jdx = 0; jdx < hg.size(); ++jdx) {
                num = std::max(num, std::abs(xi.entries[jdx] - hg[jdx]));
                den = std::max(den, std::abs(hg[jdx]));
            }
            inf0.worst = std::max(inf0.worst, num / std::max(den, kTinyScale));
        }
    }
    inf0.pass = inf0.worst <= inf0.threshold;

    rep.edges = {approach, inf_res, fin0, inf0};
    rep.pass = true;
    for (const auto& e : rep.edges) rep.pass = rep.pass && e.pass;
    return rep;
}

AdFdReport ad_vs_fd_report(const SpaceParams& sp, Family fam, const GridSpec& grid) {
    if (family_space(fam) != sp.kind) {
        throw ParameterError(std::string("ad_vs_fd_report: family ") + family_name(fam) +
                             " does not live on " + std::string(space_name(sp.kind)));
    }
    AdFdReport rep;
    rep.space = sp;
    rep.family = fam;
    const auto pts = generate_grid(sp, grid);
    constexpr double kFloor = 1e-12;
    for (const auto& pt : pts) {
        const CJet2 ad = eval_solution(sp, fam, pt);
        const CJet2 fd = finite_difference_jet(
            [&sp, fam](std::span<const double> x) { return solution_value(sp, fam, x); }, pt);
        double gnum = 0.0;
        double gden = 0.0;
        for (std::size_t k = 0; k < ad.dim; ++k) {
            gnum = std::max(gnum, std::abs(ad.grad[k] - fd.grad[k]));
            gden = std::max(gden, std::abs(ad.grad[k]));
        }
        rep.grad_dev = std::max(rep.grad_dev, gnum / std::max(gden, kFloor));
        double hnum = 0.0;
        double hden = 0.0;
        for (std::size_t k = 0; k < ad.dim * ad.dim; ++k) {
            hnum = std::max(hnum, std::abs(ad.hess[k] - fd.hess[k]));
            hden = std::max(hden, std::abs(ad.hess[k]));
        }
        rep.hess_dev = std::max(rep.hess_dev, hnum / std::max(hden, kFloor));
    }
    rep.pass = rep.grad_dev <= rep.grad_tolerance && rep.hess_dev <= rep.hess_tolerance;
    return rep;
}

}  // namespace srpl
