#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace srpl {

using cdouble = std::complex<double>;

/// Base class for every evaluation failure raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Zero-length input, or operands of mismatched dimension.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// Division by a jet whose value is exactly zero, or evaluation of a
/// family at its singular point. Carries the offending value.
class SingularValueError : public Error {
  public:
    SingularValueError(const std::string& what, cdouble value)
        : Error(what), value_(value) {}
    cdouble value() const { return value_; }

  private:
    cdouble value_{};
};

/// pow or log evaluated at zero or on the closed negative real axis, where
/// the principal branch is undefined or not differentiable. Carries the
/// offending value; callers are expected to fail loudly, not continue with
/// NaN.
class BranchCutError : public Error {
  public:
    BranchCutError(const std::string& what, cdouble value)
        : Error(what), value_(value) {}
    cdouble value() const { return value_; }

  private:
    cdouble value_{};
};

/// Second-order jet of a complex-valued function of d real variables:
/// value, gradient, and dense symmetric Hessian at a point.
///
/// Differentiation is with respect to the real coordinates only; the values
/// are complex and conjugation acts entrywise. There is no holomorphic
/// calculus here: conj is a perfectly smooth operation on these jets.
struct CJet2 {
    std::size_t dim = 0;
    cdouble value{};
    std::vector<cdouble> grad;  // d entries
    std::vector<cdouble> hess;  // d*d entries, row-major, kept symmetric

    CJet2() = default;
    explicit CJet2(std::size_t d, cdouble v = {})
        : dim(d), value(v), grad(d, cdouble{}), hess(d * d, cdouble{}) {}

    cdouble h(std::size_t i, std::size_t j) const { return hess[i * dim + j]; }

    /// Writes both (i, j) and (j, i) so symmetry holds bit for bit.
    void set_h(std::size_t i, std::size_t j, cdouble v) {
        hess[i * dim + j] = v;
        hess[j * dim + i] = v;
    }
};

/// Jet of the constant v: zero gradient and Hessian.
CJet2 constant_jet(std::size_t dim, cdouble v);

/// Jet of the k-th coordinate function evaluated at x: unit gradient entry
/// k, zero Hessian.
CJet2 seed_variable(std::size_t dim, std::size_t k, double x);

/// One seeded jet per coordinate of x. Errors on empty input.
std::vector<CJet2> seed_point(std::span<const double> x);

CJet2 operator+(const CJet2& a, const CJet2& b);
CJet2 operator-(const CJet2& a, const CJet2& b);
CJet2 operator*(const CJet2& a, const CJet2& b);
CJet2 operator/(const CJet2& a, const CJet2& b);
CJet2 operator-(const CJet2& a);

CJet2 operator+(const CJet2& a, cdouble s);
CJet2 operator+(cdouble s, const CJet2& a);
CJet2 operator-(const CJet2& a, cdouble s);
CJet2 operator-(cdouble s, const CJet2& a);
CJet2 operator*(const CJet2& a, cdouble s);
CJet2 operator*(cdouble s, const CJet2& a);
CJet2 operator/(const CJet2& a, cdouble s);
CJet2 operator/(cdouble s, const CJet2& a);

/// Entrywise complex conjugate of value, gradient, and Hessian.
CJet2 conj(const CJet2& a);

/// Principal-branch logarithm. BranchCutError at zero or on the closed
/// negative real axis.
CJet2 log(const CJet2& a);

/// Principal-branch power z^s = exp(s log z) for complex s. Same branch
/// policy as log.
CJet2 pow(const CJet2& a, cdouble s);
CJet2 pow(const CJet2& a, double s);

/// Non-negative integer power by repeated multiplication: total (no branch
/// cut) and exact for polynomial arguments.
CJet2 ipow(const CJet2& a, unsigned k);

}  // namespace srpl
