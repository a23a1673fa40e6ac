#pragma once

#include "srpl/solutions.hpp"

namespace srpl {

/// The horizontal gradient (or a modified-operator vector) vanished at the
/// evaluation point, so the identity under test is vacuous there.
class VanishingNormError : public Error {
  public:
    using Error::Error;
};

/// Smallest condition scale used as a division floor in relative residuals.
inline constexpr double kTinyScale = 1e-300;

/// Squared-norm floor below which a frame vector counts as vanished.
inline constexpr double kVanishingNorm2 = 1e-250;

/// A modified-operator vector at one point: the entries and the Hermitian
/// square sum ||.||^2 = sum entry_k conj(entry_k), which is real.
struct HorizontalVectorValue {
    std::vector<cdouble> entries;
    double norm2 = 0.0;
};

/// One operator evaluation: the residual Lambda (the reduced bracket of the
/// identity, free of the ||.||^{p-4} prefactor), the condition scale S (sum
/// of the absolute values of the finest additive summands of Lambda), and
/// the relative residual |Lambda| / max(S, tiny). Since Lambda is the sum of
/// the very terms S measures, rel always lies in [0, 1].
struct ResidualValue {
    std::vector<double> point;
    cdouble lambda{};
    double scale = 0.0;
    double rel = 0.0;
};

/// Residual of the p-Laplace identity in reduced form:
///   Lambda = (p-2)/2 sum_i X_i(||grad_0 u||^2) X_i u
///          + ||grad_0 u||^2 sum_i X_i X_i u.
/// The full operator is ||grad_0 u||^{p-4} Lambda; the zero test lives on
/// Lambda so large |p| cannot overflow through the prefactor.
ResidualValue p_laplacian(const SpaceParams& sp, Family fam, std::span<const double> pt);
ResidualValue p_laplacian(const SpaceParams& sp, const CJet2& u, std::span<const double> pt);

/// Residual of the p = 2 operator with complex zero-order coupling:
///   Lambda = sum_i X_i X_i u + i L B u,
/// where B is [Y_1, Y_2] on the plane and sum_{j<=n} [X_j, X_{j+n}] on the
/// group. Requires sp.p == 2.
ResidualValue bgg_operator(const SpaceParams& sp, Family fam, std::span<const double> pt);
ResidualValue bgg_operator(const SpaceParams& sp, const CJet2& u, std::span<const double> pt);

/// The modified-operator vector: on the plane
///   xi = (Y_1 u + i L Y_2 u,  Y_2 u - i L Y_1 u),
/// on the group the same mixing within each pair (X_k, X_{n+k}).
HorizontalVectorValue build_xi_upsilon(const SpaceParams& sp, Family fam,
                                       std::span<const double> pt);
HorizontalVectorValue build_xi_upsilon(const SpaceParams& sp, const CJet2& u,
                                       std::span<const double> pt);

/// Residual of the modified p-Laplace identity in reduced form:
///   Lambda = (p-2)/2 sum_j X_j(||xi||^2) xi_j + ||xi||^2 sum_j X_j xi_j.
/// At L = 0 this is exactly the p_laplacian residual.
ResidualValue modified_p_laplacian(const SpaceParams& sp, Family fam,
                                   std::span<const double> pt);
ResidualValue modified_p_laplacian(const SpaceParams& sp, const CJet2& u,
                                   std::span<const double> pt);

/// Residual of the modified infinity operator
///   Lambda = sum_j X_j(||xi||^2) xi_j.
/// p is ignored.
ResidualValue modified_infinity(const SpaceParams& sp, Family fam, std::span<const double> pt);
ResidualValue modified_infinity(const SpaceParams& sp, const CJet2& u,
                                std::span<const double> pt);

/// The two displayed sign variants of the correction coefficient in the
/// three-term plane identity: (1 + n p) versus (1 - n p).
enum class NeggSign { PlusNp, MinusNp };

const char* negg_sign_name(NeggSign s);

/// Three-term identity for the plane power family f = g^alpha h^beta with
/// L outside {0, +-1} and p != n+2. `identity` is the residual of
///   Delta_p f + i L (p-1) ||grad_0 f||^{p-2} [Y_1, Y_2] f
///   - ||grad_0 f||^{p-2} (L^2/(L^2-1)) (-4) ((p-2)(1 +- n p)/(2+n-p))
///     (Y_2 g^alpha)(Y_2 h^beta),
/// divided through by ||grad_0 f||^{p-4}. `truncated` is the two-term
/// operator Delta_p f + i L [Y_1, Y_2] f, kept for the non-vanishing check:
/// dropping the correction must leave a residual that is NOT small.
struct NeggResidual {
    ResidualValue identity;
    ResidualValue truncated;
};

NeggResidual negg_identity(const SpaceParams& sp, std::span<const double> pt, NeggSign sign);

/// The natural complex operator on the group power family for n = 1:
///   computed = Delta_p u + i L Z u,
/// with its additive condition scale, next to a candidate closed form
///   candidate_rhs = -8 L v^{(L-3)/2} (L (x_1^2+x_2^2) - 4 i z) w^{(-L-3)/2}.
/// The two are reported side by side and never asserted equal; the checks
/// that matter are rel > tol for L != 0, p not in {2, 4}, and rel <= tol at
/// L = 0 and at p = 2.
struct NeghValue {
    cdouble computed{};
    cdouble candidate_rhs{};
    double scale = 0.0;
    double rel = 0.0;
};

NeghValue negh_residual(const SpaceParams& sp, std::span<const double> pt);

/// One audited quantity: the jet evaluation, the candidate closed form, the
/// ratio jet/closed (1 when both vanish), and |jet - closed| relative to the
/// additive scale of the jet computation.
struct AuditEntry {
    cdouble jet{};
    cdouble closed{};
    cdouble ratio{};
    double scale = 0.0;
    double rel_dev = 0.0;
};

/// Audit of the candidate group closed forms for the power family:
///   norm2 : ||Upsilon||^2
///   part1 : sum_j X_j(||Upsilon||^2) Upsilon_j
///   part2 : sum_j X_j Upsilon_j
/// plus the candidate product form for norm2 * part2 and its internal
/// consistency. Informational: a constant-factor discrepancy in a candidate
/// form shows up as a constant ratio != 1 without failing anything.
struct ClosedFormAudit {
    AuditEntry norm2, part1, part2;
    cdouble part2_combined_closed{};
    double combine_consistency = 0.0;
};

ClosedFormAudit closed_form_audit(const SpaceParams& sp, std::span<const double> pt);

}  // namespace srpl
