#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "srpl/fd.hpp"
#include "srpl/operators.hpp"

namespace srpl {

/// The exclusion margins rejected so many samples that the requested point
/// count could not be met within the oversampling budget.
class GridError : public Error {
  public:
    using Error::Error;
};

/// Deterministic sampling plan around the singular point of a space.
///
/// Radii are log-uniform in [r_min, r_max]; directions are uniform (polar on
/// the plane, uniform on the anisotropic unit sphere on the group). Samples
/// are rejected when they come too close to a frame degeneracy, a vanishing
/// square sum, or the branch cut of the kernel logarithms. The same seed and
/// spec always produce the identical point list.
struct GridSpec {
    std::size_t count = 64;
    std::uint64_t seed = 42;
    double r_min = 0.5;
    double r_max = 2.0;
    double axis_margin = 0.1;     // plane: minimum |y_1 - a|
    double planar_margin = 0.01;  // group: minimum sum_i x_i^2
    double arg_margin = 0.1;      // minimum |arg(kernel)| distance from +-pi
};

std::vector<std::vector<double>> generate_grid(const SpaceParams& sp, const GridSpec& spec = {});

/// The checkable operators.
enum class OperatorTag {
    PLaplacian,
    Bgg,
    ModifiedPLaplacian,
    ModifiedInfinity,
    Negg,
    NeggTruncated,
    Negh,
};

/// Whether a report asserts that residuals vanish (rel <= tol) or that they
/// stay away from zero (rel > tol at every point).
enum class CheckMode { Vanish, Nonzero };

std::string_view operator_name(OperatorTag tag);
std::optional<OperatorTag> operator_from_name(std::string_view name);
std::string_view mode_name(CheckMode mode);
std::optional<CheckMode> mode_from_name(std::string_view name);
std::optional<Family> family_from_name(std::string_view name);
std::optional<NeggSign> negg_sign_from_name(std::string_view name);
std::string_view space_name(Space kind);
std::optional<Space> space_from_name(std::string_view name);

/// Sweep defaults: p covers sub-quadratic, quadratic, super-quadratic and
/// both critical exponents for n in {1, 2}; L covers 0, |L| < 1 and |L| > 1.
std::vector<double> default_p_list();
std::vector<double> default_L_list();

/// Default operand family for an operator on a space.
Family default_family(OperatorTag op, Space kind);

/// One verification run: an operator applied to a family over a grid and a
/// (p, L) product sweep, judged against a tolerance in the given mode.
/// space.p and space.L are placeholders; the sweep overrides them.
struct VerificationConfig {
    SpaceParams space = SpaceParams::grushin(1, 0.25, -0.5, 1.5, 2.0, 0.0);
    Family family = Family::FpL;
    OperatorTag op = OperatorTag::ModifiedPLaplacian;
    std::vector<double> p_list = default_p_list();
    std::vector<double> L_list = default_L_list();
    double tolerance = 1e-8;
    CheckMode mode = CheckMode::Vanish;
    NeggSign negg_sign = NeggSign::PlusNp;
    GridSpec grid;
};

struct ResidualRecord {
    double p = 0.0;
    double L = 0.0;
    std::size_t point_index = 0;
    cdouble lambda{};
    double scale = 0.0;
    double rel = 0.0;
};

/// A (p, L) pair excluded by an operator precondition, with the reason.
struct SkippedCombo {
    double p = 0.0;
    double L = 0.0;
    std::string reason;
};

/// Aggregated result. pass requires at least one evaluated record and every
/// record individually within tolerance (Vanish) or beyond it (Nonzero); a
/// report that evaluated nothing never passes.
struct ResidualReport {
    VerificationConfig config;
    std::vector<std::vector<double>> points;
    std::vector<ResidualRecord> records;
    std::vector<SkippedCombo> skipped;
    double max_rel = 0.0;
    double min_rel = 0.0;
    bool pass = false;
    double duration_seconds = 0.0;  // metadata, excluded from comparisons
};

/// Evaluates config.op on config.family at every grid point for every
/// (p, L), recording residuals and skipping incompatible pairs. Any
/// unexpected evaluation error is rethrown with point and parameter context.
ResidualReport run_verification(const VerificationConfig& config);

/// JSON body: operator, family, params{space, p_list, L_list, tolerance,
/// mode, negg_sign, grid}, points[], residuals[], skipped[], max_rel,
/// min_rel, pass, meta{duration_seconds}. Serialization is lossless and
/// byte-stable for a fixed report ignoring meta.
std::string report_to_json(const ResidualReport& report);
ResidualReport report_from_json(const std::string& text);

/// Flat CSV, one row per evaluated point x parameter pair.
std::string report_to_csv(const ResidualReport& report);

/// One edge of the commuting limit diagram.
struct LimitEdge {
    std::string name;
    double worst = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

/// Result of the four-edge limit check for one space:
///   power-family-approaches-infinity-family : |f_p - f_inf| strictly
///     decreasing along the p ladder at every point and L (worst is the
///     largest consecutive ratio; threshold 1).
///   infinity-residual : modified infinity operator annihilates the
///     infinity family (worst relative residual).
///   finite-collapse-at-L-zero : at L = 0 the modified operator equals the
///     plain one and the mixed family equals the radial one.
///   infinity-collapse-at-L-zero : at L = 0 the mixed frame vector equals
///     the plain horizontal gradient.
struct LimitDiagramReport {
    SpaceParams base;
    std::vector<double> L_list;
    std::vector<double> p_ladder;
    std::vector<LimitEdge> edges;
    bool pass = false;
};

LimitDiagramReport limit_diagram_check(const SpaceParams& base, const GridSpec& grid = {},
                                       const std::vector<double>& L_list = default_L_list(),
                                       const std::vector<double>& p_ladder = {10.0, 100.0,
                                                                              1000.0});

/// Cross-check of the forward-mode jets against central finite differences
/// for one family over a grid, reported as the worst relative deviation of
/// the gradient and of the Hessian separately.
struct AdFdReport {
    SpaceParams space;
    Family family = Family::PsiP;
    double grad_dev = 0.0;
    double hess_dev = 0.0;
    double grad_tolerance = 1e-5;
    double hess_tolerance = 1e-4;
    bool pass = false;
};

AdFdReport ad_vs_fd_report(const SpaceParams& sp, Family fam, const GridSpec& grid = {});

}  // namespace srpl
