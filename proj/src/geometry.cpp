#include "srpl/geometry.hpp"

#include <cmath>

namespace srpl {

namespace {

void check_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw ParameterError(std::string("space parameter ") + name + " must be finite");
    }
}

void validate_common(int n, double p, double L) {
    if (n < 1) throw ParameterError("space index n must be at least 1");
    check_finite(p, "p");
    check_finite(L, "L");
    if (!(p > 1.0)) throw ParameterError("exponent p must lie in (1, inf)");
}

void check_point(const SpaceParams& sp, std::span<const double> pt, const char* where) {
    if (pt.size() != sp.dim()) {
        throw DimensionError(std::string(where) + ": point has dimension " +
                             std::to_string(pt.size()) + ", expected " +
                             std::to_string(sp.dim()));
    }
}

double real_ipow(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

}  // namespace

SpaceParams SpaceParams::heisenberg(int n, double p, double L) {
    validate_common(n, p, L);
    SpaceParams sp;
    sp.kind = Space::Heisenberg;
    sp.n = n;
    sp.p = p;
    sp.L = L;
    return sp;
}

SpaceParams SpaceParams::grushin(int n, double a, double b, double c, double p, double L) {
    validate_common(n, p, L);
    check_finite(a, "a");
    check_finite(b, "b");
    check_finite(c, "c");
    if (c == 0.0) throw ParameterError("Grushin scale c must be nonzero");
    SpaceParams sp;
    sp.kind = Space::Grushin;
    sp.n = n;
    sp.a = a;
    sp.b = b;
    sp.c = c;
    sp.p = p;
    sp.L = L;
    return sp;
}

HorizontalFrame frame_at(const SpaceParams& sp, std::span<const double> pt) {
    check_point(sp, pt, "frame_at");
    HorizontalFrame fr;
    fr.m = sp.frame_size();
    fr.d = sp.dim();
    fr.coeff.assign(fr.m * fr.d, 0.0);
    fr.coeff_grad.assign(fr.m * fr.d * fr.d, 0.0);

    auto set_c = [&](std::size_t j, std::size_t k, double v) { fr.coeff[j * fr.d + k] = v; };
    auto set_cg = [&](std::size_t j, std::size_t k, std::size_t l, double v) {
        fr.coeff_grad[(j * fr.d + k) * fr.d + l] = v;
    };

    if (sp.kind == Space::Heisenberg) {
        const std::size_t n = static_cast<std::size_t>(sp.n);
        const std::size_t zi = fr.d - 1;
        for (std::size_t j = 0; j < 2 * n; ++j) {
            set_c(j, j, 1.0);
            if (j < n) {
                // X_j = d_j - x_{n+j}/2 d_z
                set_c(j, zi, -pt[n + j] / 2.0);
                set_cg(j, zi, n + j, -0.5);
            } else {
                // X_j = d_j + x_{j-n}/2 d_z
                set_c(j, zi, pt[j - n] / 2.0);
                set_cg(j, zi, j - n, 0.5);
            }
        }
    } else {
        // Y_1 = d_1, Y_2 = c (y_1 - a)^n d_2
        const double t = pt[0] - sp.a;
        set_c(0, 0, 1.0);
        set_c(1, 1, sp.c * real_ipow(t, sp.n));
        set_cg(1, 1, 0, sp.c * sp.n * real_ipow(t, sp.n - 1));
    }
    return fr;
}

std::vector<CJet1> horizontal_field_jets(const HorizontalFrame& fr, const CJet2& u) {
    if (u.dim != fr.d) {
        throw DimensionError("horizontal_field_jets: jet dimension does not match frame");
    }
    std::vector<CJet1> out(fr.m);
    for (std::size_t j = 0; j < fr.m; ++j) {
        out[j].grad.assign(fr.d, cdouble{});
        cdouble v{};
        for (std::size_t k = 0; k < fr.d; ++k) {
            const double a = fr.c(j, k);
            if (a != 0.0) v += a * u.grad[k];
        }
        out[j].value = v;
        for (std::size_t l = 0; l < fr.d; ++l) {
            cdouble g{};
            for (std::size_t k = 0; k < fr.d; ++k) {
                const double dcoeff = fr.cg(j, k, l);
                if (dcoeff != 0.0) g += dcoeff * u.grad[k];
                const double a = fr.c(j, k);
                if (a != 0.0) g += a * u.h(l, k);
            }
            out[j].grad[l] = g;
        }
    }
    return out;
}

cdouble apply_field(const HorizontalFrame& fr, std::size_t j, std::span<const cdouble> grad) {
    if (j >= fr.m) throw DimensionError("apply_field: field index out of range");
    if (grad.size() != fr.d) throw DimensionError("apply_field: gradient size mismatch");
    cdouble v{};
    for (std::size_t k = 0; k < fr.d; ++k) {
        const double a = fr.c(j, k);
        if (a != 0.0) v += a * grad[k];
    }
    return v;
}

std::vector<cdouble> horizontal_gradient(const HorizontalFrame& fr, const CJet2& u) {
    if (u.dim != fr.d) {
        throw DimensionError("horizontal_gradient: jet dimension does not match frame");
    }
    std::vector<cdouble> out(fr.m);
    for (std::size_t j = 0; j < fr.m; ++j) {
        cdouble v{};
        for (std::size_t k = 0; k < fr.d; ++k) {
            const double a = fr.c(j, k);
            if (a != 0.0) v += a * u.grad[k];
        }
        out[j] = v;
    }
    return out;
}

std::vector<cdouble> horizontal_hessian(const HorizontalFrame& fr, const CJet2& u) {
    const auto fj = horizontal_field_jets(fr, u);
    std::vector<cdouble> h(fr.m * fr.m);
    for (std::size_t i = 0; i < fr.m; ++i) {
        for (std::size_t j = 0; j < fr.m; ++j) {
            h[i * fr.m + j] = apply_field(fr, i, fj[j].grad);  // X_i X_j u
        }
    }
    return h;
}

std::vector<cdouble> symmetrized_horizontal_hessian(const HorizontalFrame& fr,
                                                    const CJet2& u) {
    auto h = horizontal_hessian(fr, u);
    for (std::size_t i = 0; i < fr.m; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            const cdouble s = (h[i * fr.m + j] + h[j * fr.m + i]) / 2.0;
            h[i * fr.m + j] = s;
            h[j * fr.m + i] = s;
        }
    }
    return h;
}

cdouble lie_bracket_apply(const HorizontalFrame& fr, const CJet2& u, std::size_t i,
                          std::size_t j) {
    if (i >= fr.m || j >= fr.m) {
        throw DimensionError("lie_bracket_apply: field index out of range");
    }
    const auto fj = horizontal_field_jets(fr, u);
    return apply_field(fr, i, fj[j].grad) - apply_field(fr, j, fj[i].grad);
}

cdouble heisenberg_divergence(const SpaceParams& sp, std::span<const JetFn> components,
                              std::span<const double> pt) {
    if (sp.kind != Space::Heisenberg) {
        throw ParameterError("heisenberg_divergence: Heisenberg group only");
    }
    check_point(sp, pt, "heisenberg_divergence");
    if (components.size() != sp.dim()) {
        throw DimensionError("heisenberg_divergence: expected " + std::to_string(sp.dim()) +
                             " components, got " + std::to_string(components.size()));
    }
    const auto jets = seed_point(pt);
    const auto fr = frame_at(sp, pt);
    cdouble div{};
    for (std::size_t i = 0; i < fr.m; ++i) {
        const CJet2 fi = components[i](jets);
        if (fi.dim != fr.d) {
            throw DimensionError("heisenberg_divergence: component jet dimension mismatch");
        }
        div += apply_field(fr, i, fi.grad);
    }
    return div;
}

std::vector<double> group_multiply(const SpaceParams& sp, std::span<const double> pt,
                                   std::span<const double> qt) {
    if (sp.kind != Space::Heisenberg) {
        throw ParameterError("group_multiply: Heisenberg group only");
    }
    check_point(sp, pt, "group_multiply");
    check_point(sp, qt, "group_multiply");
    const std::size_t n = static_cast<std::size_t>(sp.n);
    const std::size_t zi = sp.dim() - 1;
    std::vector<double> r(sp.dim());
    for (std::size_t i = 0; i < 2 * n; ++i) r[i] = pt[i] + qt[i];
    double twist = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        twist += pt[i] * qt[n + i] - pt[n + i] * qt[i];
    }
    r[zi] = pt[zi] + qt[zi] + twist / 2.0;
    return r;
}

std::vector<double> group_inverse(const SpaceParams& sp, std::span<const double> pt) {
    if (sp.kind != Space::Heisenberg) {
        throw ParameterError("group_inverse: Heisenberg group only");
    }
    check_point(sp, pt, "group_inverse");
    std::vector<double> r(pt.size());
    for (std::size_t i = 0; i < pt.size(); ++i) r[i] = -pt[i];
    return r;
}

double homogeneous_norm_estimate(const SpaceParams& sp, std::span<const double> pt) {
    if (sp.kind != Space::Heisenberg) {
        throw ParameterError("homogeneous_norm_estimate: Heisenberg group only");
    }
    check_point(sp, pt, "homogeneous_norm_estimate");
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < pt.size(); ++i) s += std::abs(pt[i]);
    return s + std::sqrt(std::abs(pt.back()));
}

}  // namespace srpl
