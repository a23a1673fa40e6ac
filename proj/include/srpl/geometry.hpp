#pragma once

#include <functional>

#include "srpl/jet.hpp"

namespace srpl {

/// Invalid configuration: bad index, zero Grushin scale, exponent out of
/// range, or an operation applied to the wrong space or family.
class ParameterError : public Error {
  public:
    using Error::Error;
};

enum class Space { Heisenberg, Grushin };

/// Ambient space plus the analytic parameters every operator needs.
///
/// Heisenberg: coordinates (x_1..x_2n, z) on R^{2n+1}; the singular point of
/// the solution families is the origin.
/// Grushin: coordinates (y_1, y_2) on R^2 with plane data (a, b, c, n); the
/// frame degenerates on the line y_1 = a and the families are singular at
/// (a, b).
///
/// p is the integrability exponent, p in (1, inf); L is the real spectral
/// parameter of the modified operators.
struct SpaceParams {
    Space kind = Space::Grushin;
    int n = 1;
    double a = 0.0, b = 0.0, c = 1.0;  // Grushin plane data, c != 0
    double p = 2.0;
    double L = 0.0;

    static SpaceParams heisenberg(int n, double p, double L);
    static SpaceParams grushin(int n, double a, double b, double c, double p, double L);

    std::size_t dim() const { return kind == Space::Heisenberg ? 2 * n + 1 : 2; }
    std::size_t frame_size() const { return kind == Space::Heisenberg ? 2 * n : 2; }
    /// Exponent at which the power families give way to logarithms.
    double critical_p() const { return kind == Space::Heisenberg ? 2.0 * n + 2.0 : n + 2.0; }

    SpaceParams with(double p_, double L_) const {
        SpaceParams s = *this;
        s.p = p_;
        s.L = L_;
        return s;
    }
};

/// Horizontal frame evaluated at one point: m fields expressed in the
/// coordinate basis, X_j = sum_k coeff(j, k) d/dx_k, together with the first
/// derivatives of the coefficients (all the curvature data second-order
/// operators need). Rows may degenerate (Grushin at y_1 = a); that is a
/// property of the geometry, not an error.
struct HorizontalFrame {
    std::size_t m = 0, d = 0;
    std::vector<double> coeff;       // m*d
    std::vector<double> coeff_grad;  // m*d*d, (j, k, l) = d coeff(j, k) / d x_l

    double c(std::size_t j, std::size_t k) const { return coeff[j * d + k]; }
    double cg(std::size_t j, std::size_t k, std::size_t l) const {
        return coeff_grad[(j * d + k) * d + l];
    }
};

HorizontalFrame frame_at(const SpaceParams& sp, std::span<const double> pt);

/// First-order data (value and Euclidean gradient) of a derived scalar
/// quantity: enough to apply one more horizontal field to it.
struct CJet1 {
    cdouble value{};
    std::vector<cdouble> grad;
};

/// X_j u for every frame field, each with its Euclidean gradient:
/// value = sum_k coeff(j,k) du_k, grad_l = sum_k (d_l coeff(j,k)) du_k +
/// coeff(j,k) d2u_{lk}. This is the single code path both spaces share.
std::vector<CJet1> horizontal_field_jets(const HorizontalFrame& fr, const CJet2& u);

/// Value of X_j applied to a first-order quantity.
cdouble apply_field(const HorizontalFrame& fr, std::size_t j, std::span<const cdouble> grad);

/// (X_1 u, ..., X_m u).
std::vector<cdouble> horizontal_gradient(const HorizontalFrame& fr, const CJet2& u);

/// Full m*m matrix of X_i X_j u (row-major). Not symmetric in general; the
/// antisymmetric part is the bracket.
std::vector<cdouble> horizontal_hessian(const HorizontalFrame& fr, const CJet2& u);

/// ((D^2 u)*)_{ij} = (X_i X_j u + X_j X_i u) / 2, symmetric bit for bit.
std::vector<cdouble> symmetrized_horizontal_hessian(const HorizontalFrame& fr, const CJet2& u);

/// [X_i, X_j] u = X_i X_j u - X_j X_i u.
cdouble lie_bracket_apply(const HorizontalFrame& fr, const CJet2& u, std::size_t i,
                          std::size_t j);

/// Component evaluator for divergence: receives the seeded coordinate jets.
using JetFn = std::function<CJet2(std::span<const CJet2>)>;

/// div F = sum_{i=1}^{2n} X_i f_i for a field with 2n+1 frame components
/// (f_1..f_2n horizontal, the last along the center). The center component
/// never enters the sum. Heisenberg only.
cdouble heisenberg_divergence(const SpaceParams& sp, std::span<const JetFn> components,
                              std::span<const double> pt);

/// Heisenberg group law: coordinates add, the center picks up half the
/// symplectic form of the horizontal parts.
std::vector<double> group_multiply(const SpaceParams& sp, std::span<const double> pt,
                                   std::span<const double> qt);

/// Group inverse: coordinate negation.
std::vector<double> group_inverse(const SpaceParams& sp, std::span<const double> pt);

/// Homogeneous norm estimate sum |x_i| + |z|^{1/2}, degree one under the
/// anisotropic dilation (x, z) -> (r x, r^2 z). Used for grid scaling.
double homogeneous_norm_estimate(const SpaceParams& sp, std::span<const double> pt);

}  // namespace srpl
