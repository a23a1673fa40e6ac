#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "srpl/harness.hpp"

using srpl::cdouble;
using srpl::Family;
using srpl::GridSpec;
using srpl::OperatorTag;
using srpl::SpaceParams;

namespace {

SpaceParams plane1() { return SpaceParams::grushin(1, 0.25, -0.5, 1.5, 2.0, 0.0); }
SpaceParams group1() { return SpaceParams::heisenberg(1, 2.0, 0.0); }

}  // namespace

TEST_CASE("name tables round-trip and reject junk") {
    using srpl::operator_from_name;
    using srpl::operator_name;
    for (const auto tag :
         {OperatorTag::PLaplacian, OperatorTag::Bgg, OperatorTag::ModifiedPLaplacian,
          OperatorTag::ModifiedInfinity, OperatorTag::Negg, OperatorTag::NeggTruncated,
          OperatorTag::Negh}) {
        const auto name = operator_name(tag);
        REQUIRE(operator_from_name(name).has_value());
        CHECK(*operator_from_name(name) == tag);
    }
    CHECK(operator_name(OperatorTag::PLaplacian) == "p-laplacian");
    CHECK(operator_name(OperatorTag::ModifiedPLaplacian) == "modified-p-laplacian");
    CHECK(operator_name(OperatorTag::ModifiedInfinity) == "modified-infinity");
    CHECK(operator_name(OperatorTag::NeggTruncated) == "negg-truncated");
    CHECK_FALSE(operator_from_name("bogus").has_value());

    for (const auto fam : {Family::PsiP, Family::ZetaP, Family::FpL, Family::UpL,
                           Family::FInfL, Family::UInfL}) {
        REQUIRE(srpl::family_from_name(srpl::family_name(fam)).has_value());
        CHECK(*srpl::family_from_name(srpl::family_name(fam)) == fam);
    }
    CHECK_FALSE(srpl::family_from_name("f_qL").has_value());

    CHECK(srpl::mode_name(srpl::CheckMode::Vanish) == "vanish");
    CHECK(srpl::mode_name(srpl::CheckMode::Nonzero) == "nonzero");
    CHECK(*srpl::mode_from_name("nonzero") == srpl::CheckMode::Nonzero);
    CHECK_FALSE(srpl::mode_from_name("fuzzy").has_value());

    CHECK(*srpl::negg_sign_from_name("plus_np") == srpl::NeggSign::PlusNp);
    CHECK(*srpl::negg_sign_from_name("minus_np") == srpl::NeggSign::MinusNp);
    CHECK(srpl::space_name(srpl::Space::Grushin) == "grushin");
    CHECK(srpl::space_name(srpl::Space::Heisenberg) == "heisenberg");
    CHECK(*srpl::space_from_name("heisenberg") == srpl::Space::Heisenberg);

    // Sensible default operands.
    CHECK(srpl::default_family(OperatorTag::PLaplacian, srpl::Space::Grushin) == Family::PsiP);
    CHECK(srpl::default_family(OperatorTag::PLaplacian, srpl::Space::Heisenberg) ==
          Family::ZetaP);
    CHECK(srpl::default_family(OperatorTag::ModifiedPLaplacian, srpl::Space::Grushin) ==
          Family::FpL);
    CHECK(srpl::default_family(OperatorTag::ModifiedInfinity, srpl::Space::Heisenberg) ==
          Family::UInfL);
    CHECK(srpl::default_family(OperatorTag::Negg, srpl::Space::Grushin) == Family::FpL);
    CHECK(srpl::default_family(OperatorTag::Negh, srpl::Space::Heisenberg) == Family::UpL);
}

TEST_CASE("grids are deterministic, sized, and respect every margin") {
    for (const auto& sp : {plane1(), group1(), SpaceParams::heisenberg(2, 2.0, 0.0)}) {
        GridSpec spec;
        spec.count = 48;
        const auto a = srpl::generate_grid(sp, spec);
        const auto b = srpl::generate_grid(sp, spec);
        REQUIRE(a.size() == 48);
        CHECK(a == b);  // bit-identical reproduction

        GridSpec other = spec;
        other.seed = 43;
        CHECK(srpl::generate_grid(sp, other) != a);

        for (const auto& pt : a) {
            REQUIRE(pt.size() == sp.dim());
            if (sp.kind == srpl::Space::Grushin) {
                CHECK(std::abs(pt[0] - sp.a) >= spec.axis_margin - 1e-12);
                const double dy1 = pt[0] - sp.a;
                const double dy2 = pt[1] - sp.b;
                const double rho = std::hypot(dy1, dy2);
                CHECK(rho >= spec.r_min - 1e-9);
                CHECK(rho <= spec.r_max + 1e-9);
            } else {
                double sq = 0.0;
                for (std::size_t k = 0; k + 1 < pt.size(); ++k) sq += pt[k] * pt[k];
                CHECK(sq >= spec.planar_margin - 1e-12);
                const double hom = srpl::homogeneous_norm_estimate(sp, pt);
                CHECK(hom >= spec.r_min * (1.0 - 1e-9));
                CHECK(hom <= spec.r_max * (1.0 + 1e-9));
            }
            // All kernel logarithms stay clear of the branch cut.
            const auto [k1, k2] = srpl::eval_kernels(sp, pt);
            CHECK(std::abs(std::abs(std::arg(k1.value)) - std::acos(-1.0)) >=
                  spec.arg_margin - 1e-12);
        }
    }
}

TEST_CASE("grid rejects impossible or malformed specs") {
    GridSpec bad;
    bad.axis_margin = 3.0;  // exceeds r_max: every candidate is rejected
    CHECK_THROWS_AS(srpl::generate_grid(plane1(), bad), srpl::GridError);

    GridSpec zero;
    zero.count = 0;
    CHECK_THROWS_AS(srpl::generate_grid(plane1(), zero), srpl::ParameterError);

    GridSpec inverted;
    inverted.r_min = 2.0;
    inverted.r_max = 0.5;
    CHECK_THROWS_AS(srpl::generate_grid(plane1(), inverted), srpl::ParameterError);

    GridSpec nonpos;
    nonpos.r_min = 0.0;
    CHECK_THROWS_AS(srpl::generate_grid(plane1(), nonpos), srpl::ParameterError);
}

TEST_CASE("verification sweeps skip incompatible parameter pairs with reasons") {
    srpl::VerificationConfig cfg;
    cfg.space = plane1();
    cfg.family = Family::FpL;
    cfg.op = OperatorTag::Negg;
    cfg.p_list = {3.0, 3.5};
    cfg.L_list = {0.0, 0.5, 1.0};
    cfg.grid.count = 4;
    const auto rep = srpl::run_verification(cfg);

    // Evaluated: only (3.5, 0.5). Skipped: L in {0, 1} everywhere plus the
    // critical exponent p = 3 at L = 0.5.
    CHECK(rep.records.size() == 4);
    for (const auto& r : rep.records) {
        CHECK(r.p == 3.5);
        CHECK(r.L == 0.5);
    }
    REQUIRE(rep.skipped.size() == 5);
    const auto find_reason = [&](double p, double L) -> std::string {
        for (const auto& s : rep.skipped)
            if (s.p == p && s.L == L) return s.reason;
        return {};
    };
    CHECK(find_reason(3.0, 0.5).find("critical") != std::string::npos);
    CHECK(find_reason(3.5, 0.0) != "");
    CHECK(find_reason(3.5, 1.0) != "");
    CHECK(rep.pass);  // the evaluated pair vanishes

    // The power family at its critical exponent is skipped for the plain
    // operator (the log family takes over there).
    srpl::VerificationConfig pl;
    pl.space = plane1();
    pl.family = Family::PsiP;
    pl.op = OperatorTag::PLaplacian;
    pl.p_list = {2.0, 3.0};
    pl.L_list = {0.0};
    pl.grid.count = 4;
    const auto rep2 = srpl::run_verification(pl);
    CHECK(rep2.records.size() == 4);
    REQUIRE(rep2.skipped.size() == 1);
    CHECK(rep2.skipped[0].p == 3.0);

    // The second-order coupled operator only exists at p = 2.
    srpl::VerificationConfig bg;
    bg.space = group1();
    bg.family = Family::UpL;
    bg.op = OperatorTag::Bgg;
    bg.p_list = {2.0, 3.0};
    bg.L_list = {0.5};
    bg.grid.count = 4;
    const auto rep3 = srpl::run_verification(bg);
    CHECK(rep3.records.size() == 4);
    REQUIRE(rep3.skipped.size() == 1);
    CHECK(rep3.skipped[0].p == 3.0);

    // Mixed families at |L| = 1 are excluded: the mixed vector vanishes.
    srpl::VerificationConfig mx;
    mx.space = group1();
    mx.family = Family::UpL;
    mx.op = OperatorTag::ModifiedPLaplacian;
    mx.p_list = {2.5};
    mx.L_list = {0.5, 1.0, -1.0};
    mx.grid.count = 4;
    const auto rep4 = srpl::run_verification(mx);
    CHECK(rep4.records.size() == 4);
    CHECK(rep4.skipped.size() == 2);
}

TEST_CASE("a report that evaluated nothing never passes") {
    srpl::VerificationConfig cfg;
    cfg.space = group1();
    cfg.family = Family::UpL;
    cfg.op = OperatorTag::Bgg;
    cfg.p_list = {3.0};  // skipped: wrong exponent for this operator
    cfg.L_list = {0.5};
    cfg.grid.count = 4;
    const auto rep = srpl::run_verification(cfg);
    CHECK(rep.records.empty());
    CHECK(rep.skipped.size() == 1);
    CHECK_FALSE(rep.pass);
}

TEST_CASE("nonzero mode asserts residuals stay away from zero") {
    srpl::VerificationConfig cfg;
    cfg.space = plane1();
    cfg.family = Family::FpL;
    cfg.op = OperatorTag::NeggTruncated;
    cfg.p_list = {4.0};
    cfg.L_list = {0.5};
    cfg.mode = srpl::CheckMode::Nonzero;
    cfg.tolerance = 1e-3;
    cfg.grid.count = 6;
    const auto rep = srpl::run_verification(cfg);
    CHECK(rep.pass);
    CHECK(rep.min_rel > 1e-3);

    cfg.mode = srpl::CheckMode::Vanish;
    cfg.tolerance = 1e-8;
    const auto rep2 = srpl::run_verification(cfg);
    CHECK_FALSE(rep2.pass);
    CHECK(rep2.max_rel > 1e-3);

    // And the full three-term identity vanishes on the same sweep.
    cfg.op = OperatorTag::Negg;
    const auto rep3 = srpl::run_verification(cfg);
    CHECK(rep3.pass);
    CHECK(rep3.max_rel <= 1e-8);
}

TEST_CASE("config validation rejects bad sweeps early") {
    srpl::VerificationConfig cfg;
    cfg.space = plane1();
    cfg.family = Family::FpL;
    cfg.op = OperatorTag::ModifiedPLaplacian;
    cfg.grid.count = 2;

    cfg.p_list = {};
    CHECK_THROWS_AS(srpl::run_verification(cfg), srpl::ParameterError);
    cfg.p_list = {0.5};
    CHECK_THROWS_AS(srpl::run_verification(cfg), srpl::ParameterError);
    cfg.p_list = {2.5};
    cfg.L_list = {};
    CHECK_THROWS_AS(srpl::run_verification(cfg), srpl::ParameterError);
    cfg.L_list = {std::nan("")};
    CHECK_THROWS_AS(srpl::run_verification(cfg), srpl::ParameterError);

    // Family living on the other space.
    cfg.L_list = {0.5};
    cfg.family = Family::UpL;
    CHECK_THROWS_AS(srpl::run_verification(cfg), srpl::ParameterError);

    // Operators bound to one space reject the other.
    cfg.family = Family::UpL;
    cfg.space = group1();
    cfg.op = OperatorTag::Negg;
    CHECK_THROWS_AS(srpl::run_verification(cfg), srpl::ParameterError);
    cfg.space = plane1();
    cfg.family = Family::FpL;
    cfg.op = OperatorTag::Negh;
    CHECK_THROWS_AS(srpl::run_verification(cfg), srpl::ParameterError);
}

TEST_CASE("reports serialize to stable JSON and parse back losslessly") {
    srpl::VerificationConfig cfg;
    cfg.space = group1();
    cfg.family = Family::UpL;
    cfg.op = OperatorTag::ModifiedPLaplacian;
    cfg.p_list = {2.5, 4.0};
    cfg.L_list = {0.0, 0.5};
    cfg.grid.count = 5;
    const auto rep = srpl::run_verification(cfg);

    const std::string text = srpl::report_to_json(rep);
    const auto parsed = nlohmann::json::parse(text);
    CHECK(parsed.at("operator") == "modified-p-laplacian");
    CHECK(parsed.at("family") == "u_pL");
    CHECK(parsed.at("pass").get<bool>() == rep.pass);
    CHECK(parsed.at("points").size() == 5);
    CHECK(parsed.at("residuals").size() == rep.records.size());
    CHECK(parsed.at("params").at("space").at("kind") == "heisenberg");
    CHECK(parsed.at("params").at("grid").at("seed") == 42);
    CHECK(parsed.contains("meta"));

    // Round-trip: parse back, reserialize, compare without the meta block.
    const auto back = srpl::report_from_json(text);
    auto j1 = nlohmann::json::parse(text);
    auto j2 = nlohmann::json::parse(srpl::report_to_json(back));
    j1.erase("meta");
    j2.erase("meta");
    CHECK(j1 == j2);
    CHECK(j1.dump(2) == j2.dump(2));  // byte-stable modulo metadata

    CHECK(back.records.size() == rep.records.size());
    for (std::size_t i = 0; i < rep.records.size(); ++i) {
        CHECK(back.records[i].lambda == rep.records[i].lambda);
        CHECK(back.records[i].rel == rep.records[i].rel);
        CHECK(back.records[i].point_index == rep.records[i].point_index);
    }
    CHECK(back.config.tolerance == rep.config.tolerance);
    CHECK(back.config.grid.seed == rep.config.grid.seed);

    CHECK_THROWS_AS(srpl::report_from_json("{not json"), srpl::Error);
    CHECK_THROWS_AS(srpl::report_from_json("{}"), srpl::Error);
}

TEST_CASE("CSV export carries one row per record with full precision") {
    srpl::VerificationConfig cfg;
    cfg.space = plane1();
    cfg.family = Family::FpL;
    cfg.op = OperatorTag::ModifiedPLaplacian;
    cfg.p_list = {2.5};
    cfg.L_list = {0.5};
    cfg.grid.count = 3;
    const auto rep = srpl::run_verification(cfg);
    const std::string csv = srpl::report_to_csv(rep);

    std::istringstream in(csv);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line ==
          "operator,family,space,n,p,L,point_index,c0,c1,lambda_re,lambda_im,scale,rel");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 12);
        CHECK(line.rfind("modified-p-laplacian,f_pL,grushin,1,", 0) == 0);
    }
    CHECK(rows == rep.records.size());

    // %.17g is lossless: the rel column of row 1 reparses to the exact value.
    std::istringstream again(csv);
    std::getline(again, line);
    std::getline(again, line);
    const auto last_comma = line.rfind(',');
    const double rel = std::stod(line.substr(last_comma + 1));
    CHECK(rel == rep.records[0].rel);
}

TEST_CASE("limit diagram: all four edges pass on both spaces") {
    GridSpec grid;
    grid.count = 12;
    for (const auto& sp : {plane1(), group1()}) {
        const auto rep = srpl::limit_diagram_check(sp, grid);
        REQUIRE(rep.edges.size() == 4);
        CHECK(rep.pass);
        for (const auto& e : rep.edges) {
            INFO(e.name, " worst=", e.worst, " threshold=", e.threshold);
            CHECK(e.pass);
            CHECK(e.worst < e.threshold);
        }
        const auto has_edge = [&](std::string_view name) {
            return std::any_of(rep.edges.begin(), rep.edges.end(),
                               [&](const auto& e) { return e.name == name; });
        };
        CHECK(has_edge("power-family-approaches-infinity-family"));
        CHECK(has_edge("infinity-residual"));
        CHECK(has_edge("finite-collapse-at-L-zero"));
        CHECK(has_edge("infinity-collapse-at-L-zero"));
    }
}

TEST_CASE("limit diagram validates its exponent ladder") {
    GridSpec grid;
    grid.count = 4;
    CHECK_THROWS_AS(srpl::limit_diagram_check(plane1(), grid, srpl::default_L_list(),
                                              {10.0, 5.0, 100.0}),
                    srpl::ParameterError);
    CHECK_THROWS_AS(srpl::limit_diagram_check(plane1(), grid, srpl::default_L_list(), {10.0}),
                    srpl::ParameterError);
    CHECK_THROWS_AS(srpl::limit_diagram_check(plane1(), grid, srpl::default_L_list(),
                                              {3.0, 10.0, 100.0}),
                    srpl::ParameterError);  // ladder may not touch the critical exponent
}

TEST_CASE("jets agree with finite differences over a sampled grid") {
    GridSpec grid;
    grid.count = 6;
    const auto repg = srpl::ad_vs_fd_report(plane1().with(2.5, 0.5), Family::FpL, grid);
    CHECK(repg.pass);
    CHECK(repg.grad_dev < repg.grad_tolerance);
    CHECK(repg.hess_dev < repg.hess_tolerance);
    CHECK(repg.grad_dev > 0.0);  // finite differences are not exact

    const auto reph = srpl::ad_vs_fd_report(group1().with(2.5, 0.5), Family::UInfL, grid);
    CHECK(reph.pass);

    CHECK_THROWS_AS(srpl::ad_vs_fd_report(plane1().with(2.5, 0.5), Family::UpL, grid),
                    srpl::ParameterError);
}

TEST_CASE("default sweeps cover the advertised ranges") {
    const auto ps = srpl::default_p_list();
    const auto Ls = srpl::default_L_list();
    CHECK(std::count(ps.begin(), ps.end(), 2.0) == 1);
    CHECK(std::count(ps.begin(), ps.end(), 3.0) == 1);  // plane critical, n = 1
    CHECK(std::count(ps.begin(), ps.end(), 4.0) == 1);  // group critical, n = 1
    CHECK(std::count(ps.begin(), ps.end(), 6.0) == 1);  // group critical, n = 2
    CHECK(std::any_of(ps.begin(), ps.end(), [](double p) { return p < 2.0; }));
    CHECK(std::any_of(ps.begin(), ps.end(), [](double p) { return p > 6.0; }));
    CHECK(std::count(Ls.begin(), Ls.end(), 0.0) == 1);
    CHECK(std::any_of(Ls.begin(), Ls.end(), [](double L) { return std::abs(L) < 1.0 && L != 0.0; }));
    CHECK(std::any_of(Ls.begin(), Ls.end(), [](double L) { return std::abs(L) > 1.0; }));
    CHECK(std::none_of(Ls.begin(), Ls.end(), [](double L) { return std::abs(L) == 1.0; }));
}
