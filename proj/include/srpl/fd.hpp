#pragma once

#include <functional>

#include "srpl/jet.hpp"

namespace srpl {

/// Central-difference step sizes. Each axis k uses the step scaled by
/// max(1, |x_k|), fixed rather than adaptive so oracle runs are reproducible.
struct FdSteps {
    double grad = 1e-6;
    double hess = 1e-4;
};

/// Pointwise evaluator of a complex-valued function of real variables.
using ValueFn = std::function<cdouble(std::span<const double>)>;

/// Independent oracle for the algebraic jets: samples f on central-difference
/// stencils and assembles value, gradient, and a symmetric Hessian.
///
/// Gradient entries use the two-point formula, diagonal Hessian entries the
/// three-point formula, and mixed entries the four-point formula. f must be
/// evaluable on the full stencil; evaluator failures propagate with the
/// offending stencil point appended to the message.
CJet2 finite_difference_jet(const ValueFn& f, std::span<const double> x,
                            const FdSteps& steps = {});

}  // namespace srpl
