#pragma once

#include <utility>

#include "srpl/geometry.hpp"

namespace srpl {

/// Power-family exponents requested at the critical p, where the family is
/// logarithmic and the power constants are undefined.
class CriticalExponentError : public Error {
  public:
    using Error::Error;
};

/// The closed-form solution families.
///
///   PsiP  : Grushin, real radial power (log of the kernel at p = n+2)
///   ZetaP : Heisenberg, real radial power (log at p = 2n+2)
///   FpL   : Grushin, complex power g^alpha h^beta (log pair at p = n+2)
///   UpL   : Heisenberg, complex power v^eta w^tau (log pair at p = 2n+2)
///   FInfL : Grushin, infinity-operator family g^A h^B
///   UInfL : Heisenberg, infinity-operator family v^B w^A
enum class Family { PsiP, ZetaP, FpL, UpL, FInfL, UInfL };

const char* family_name(Family f);
Space family_space(Family f);

/// Exponents of the power families. The Grushin fields alpha/beta/tau_p and
/// the Heisenberg fields eta/tau/eta_p are populated for their own space;
/// the infinity exponents A/B are always populated.
struct ExponentSet {
    double alpha = 0.0, beta = 0.0;  // Grushin: exponents on (g, h)
    double eta = 0.0, tau = 0.0;     // Heisenberg: exponents on (v, w)
    double tau_p = 0.0;              // Grushin radial exponent (alpha = beta at L = 0)
    double eta_p = 0.0;              // Heisenberg radial exponent (eta = tau at L = 0)
    double A = 0.0, B = 0.0;         // infinity-family exponents
};

/// Power-family exponents for sp. CriticalExponentError when p equals the
/// critical exponent exactly (the dispatch test is equality, not a ball).
ExponentSet exponent_set(const SpaceParams& sp);

/// Infinity-family exponents (A, B); defined for every p since the infinity
/// operators ignore p.
std::pair<double, double> infinity_exponents(const SpaceParams& sp);

/// True when sp.p equals the critical exponent exactly, so the power
/// families give way to their logarithmic forms.
bool log_dispatch(const SpaceParams& sp);

/// The kernel pair as jets: Grushin (g, h) with
///   g = c (y_1 - a)^{n+1} + i (n+1)(y_2 - b),  h = conj g,
/// Heisenberg (v, w) with
///   v = sum x_j^2 - 4 i z,  w = conj v.
/// Built with integer powers only, so they are total and exact.
std::pair<CJet2, CJet2> eval_kernels(const SpaceParams& sp, std::span<const double> pt);

/// Jet of the family at pt. Logarithmic dispatch at the critical p is
/// automatic; the log pair forms are evaluated as weighted sums of logs of
/// the kernels, never as the log of a product. SingularValueError at the
/// singular point of the family.
CJet2 eval_solution(const SpaceParams& sp, Family fam, std::span<const double> pt);

/// Value-only evaluation (for difference oracles and limit diagrams).
cdouble solution_value(const SpaceParams& sp, Family fam, std::span<const double> pt);

}  // namespace srpl
