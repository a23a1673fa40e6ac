#include "srpl/jet.hpp"

#include <cmath>
#include <utility>

namespace srpl {

namespace {

void check_dim(const CJet2& a, const CJet2& b, const char* op) {
    if (a.dim == 0 || b.dim == 0) {
        throw DimensionError(std::string("jet ") + op + ": zero-dimensional operand");
    }
    if (a.dim != b.dim) {
        throw DimensionError(std::string("jet ") + op + ": dimension mismatch " +
                             std::to_string(a.dim) + " vs " + std::to_string(b.dim));
    }
}

bool on_principal_cut(cdouble v) {
    // The principal branch is undefined at zero and not differentiable on
    // the closed negative real axis.
    if (v == cdouble{}) return true;
    return v.imag() == 0.0 && v.real() < 0.0;
}

std::string show(cdouble v) {
    return "(" + std::to_string(v.real()) + ", " + std::to_string(v.imag()) + ")";
}

}  // namespace

CJet2 constant_jet(std::size_t dim, cdouble v) {
    if (dim == 0) throw DimensionError("constant_jet: dimension must be positive");
    return CJet2(dim, v);
}

CJet2 seed_variable(std::size_t dim, std::size_t k, double x) {
    if (dim == 0) throw DimensionError("seed_variable: dimension must be positive");
    if (k >= dim) throw DimensionError("seed_variable: index out of range");
    CJet2 j(dim, cdouble(x, 0.0));
    j.grad[k] = 1.0;
    return j;
}

std::vector<CJet2> seed_point(std::span<const double> x) {
    if (x.empty()) throw DimensionError("seed_point: empty point");
    std::vector<CJet2> out;
    out.reserve(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        out.push_back(seed_variable(x.size(), k, x[k]));
    }
    return out;
}

CJet2 operator+(const CJet2& a, const CJet2& b) {
    check_dim(a, b, "+");
    CJet2 r(a.dim, a.value + b.value);
    for (std::size_t i = 0; i < a.dim; ++i) r.grad[i] = a.grad[i] + b.grad[i];
    for (std::size_t i = 0; i < a.dim * a.dim; ++i) r.hess[i] = a.hess[i] + b.hess[i];
    return r;
}

CJet2 operator-(const CJet2& a, const CJet2& b) {
    check_dim(a, b, "-");
    CJet2 r(a.dim, a.value - b.value);
    for (std::size_t i = 0; i < a.dim; ++i) r.grad[i] = a.grad[i] - b.grad[i];
    for (std::size_t i = 0; i < a.dim * a.dim; ++i) r.hess[i] = a.hess[i] - b.hess[i];
    return r;
}

CJet2 operator*(const CJet2& a, const CJet2& b) {
    check_dim(a, b, "*");
    CJet2 r(a.dim, a.value * b.value);
    // d(fg) = f dg + df g
    for (std::size_t i = 0; i < a.dim; ++i) {
        r.grad[i] = a.grad[i] * b.value + a.value * b.grad[i];
    }
    // d2(fg)_ij = f'' g + f'_i g'_j + f'_j g'_i + f g''
    for (std::size_t i = 0; i < a.dim; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            r.set_h(i, j, a.h(i, j) * b.value + a.grad[i] * b.grad[j] +
                              a.grad[j] * b.grad[i] + a.value * b.h(i, j));
        }
    }
    return r;
}

CJet2 operator/(const CJet2& a, const CJet2& b) {
    check_dim(a, b, "/");
    if (b.value == cdouble{}) {
        throw SingularValueError("jet /: division by jet with zero value " + show(b.value),
                                 b.value);
    }
    CJet2 q(a.dim, a.value / b.value);
    // From f = q g: q' = (f' - q g') / g
    for (std::size_t i = 0; i < a.dim; ++i) {
        q.grad[i] = (a.grad[i] - q.value * b.grad[i]) / b.value;
    }
    // From f'' = q'' g + q'_i g'_j + q'_j g'_i + q g''
    for (std::size_t i = 0; i < a.dim; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            q.set_h(i, j, (a.h(i, j) - q.grad[i] * b.grad[j] - q.grad[j] * b.grad[i] -
                           q.value * b.h(i, j)) /
                              b.value);
        }
    }
    return q;
}

CJet2 operator-(const CJet2& a) {
    CJet2 r(a.dim, -a.value);
    for (std::size_t i = 0; i < a.dim; ++i) r.grad[i] = -a.grad[i];
    for (std::size_t i = 0; i < a.dim * a.dim; ++i) r.hess[i] = -a.hess[i];
    return r;
}

CJet2 operator+(const CJet2& a, cdouble s) {
    CJet2 r = a;
    r.value += s;
    return r;
}

CJet2 operator+(cdouble s, const CJet2& a) { return a + s; }

CJet2 operator-(const CJet2& a, cdouble s) { return a + (-s); }

CJet2 operator-(cdouble s, const CJet2& a) { return (-a) + s; }

CJet2 operator*(const CJet2& a, cdouble s) {
    CJet2 r(a.dim, a.value * s);
    for (std::size_t i = 0; i < a.dim; ++i) r.grad[i] = a.grad[i] * s;
    for (std::size_t i = 0; i < a.dim * a.dim; ++i) r.hess[i] = a.hess[i] * s;
    return r;
}

CJet2 operator*(cdouble s, const CJet2& a) { return a * s; }

CJet2 operator/(const CJet2& a, cdouble s) {
    if (s == cdouble{}) {
        throw SingularValueError("jet /: division by zero scalar", s);
    }
    return a * (1.0 / s);
}

CJet2 operator/(cdouble s, const CJet2& a) { return constant_jet(a.dim, s) / a; }

CJet2 conj(const CJet2& a) {
    CJet2 r(a.dim, std::conj(a.value));
    for (std::size_t i = 0; i < a.dim; ++i) r.grad[i] = std::conj(a.grad[i]);
    for (std::size_t i = 0; i < a.dim * a.dim; ++i) r.hess[i] = std::conj(a.hess[i]);
    return r;
}

CJet2 log(const CJet2& a) {
    if (on_principal_cut(a.value)) {
        throw BranchCutError("log: value on branch cut or zero " + show(a.value), a.value);
    }
    CJet2 r(a.dim, std::log(a.value));
    const cdouble inv = 1.0 / a.value;
    // d log z = dz / z
    for (std::size_t i = 0; i < a.dim; ++i) r.grad[i] = a.grad[i] * inv;
    // d2 log z = z'' / z - z'_i z'_j / z^2
    for (std::size_t i = 0; i < a.dim; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            r.set_h(i, j, a.h(i, j) * inv - a.grad[i] * a.grad[j] * inv * inv);
        }
    }
    return r;
}

CJet2 pow(const CJet2& a, cdouble s) {
    if (on_principal_cut(a.value)) {
        throw BranchCutError("pow: value on branch cut or zero " + show(a.value), a.value);
    }
    const cdouble w = std::exp(s * std::log(a.value));
    CJet2 r(a.dim, w);
    const cdouble inv = 1.0 / a.value;
    const cdouble c1 = s * w * inv;                // d z^s = s z^{s-1} dz
    const cdouble c2 = s * (s - 1.0) * w * inv * inv;
    for (std::size_t i = 0; i < a.dim; ++i) r.grad[i] = c1 * a.grad[i];
    for (std::size_t i = 0; i < a.dim; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            r.set_h(i, j, c2 * a.grad[i] * a.grad[j] + c1 * a.h(i, j));
        }
    }
    return r;
}

CJet2 pow(const CJet2& a, double s) { return pow(a, cdouble(s, 0.0)); }

CJet2 ipow(const CJet2& a, unsigned k) {
    if (a.dim == 0) throw DimensionError("ipow: zero-dimensional operand");
    if (k == 0) return constant_jet(a.dim, 1.0);
    CJet2 r = a;
    for (unsigned i = 1; i < k; ++i) r = r * a;
    return r;
}

}  // namespace srpl
