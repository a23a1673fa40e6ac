#include "srpl/fd.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

namespace srpl {

namespace {

std::string show_point(std::span<const double> x) {
    std::string s = "(";
    char buf[32];
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", x[i]);
        s += buf;
        if (i + 1 < x.size()) s += ", ";
    }
    return s + ")";
}

cdouble eval(const ValueFn& f, const std::vector<double>& q) {
    try {
        return f(q);
    } catch (const Error& e) {
        throw Error(std::string(e.what()) + " [finite-difference stencil at " +
                    show_point(q) + "]");
    }
}

}  // namespace

CJet2 finite_difference_jet(const ValueFn& f, std::span<const double> x,
                            const FdSteps& steps) {
    if (x.empty()) throw DimensionError("finite_difference_jet: empty point");
    const std::size_t d = x.size();

    std::vector<double> scale(d);
    for (std::size_t k = 0; k < d; ++k) scale[k] = std::max(1.0, std::abs(x[k]));

    std::vector<double> q(x.begin(), x.end());
    CJet2 r(d, eval(f, q));

    for (std::size_t k = 0; k < d; ++k) {
        const double h = steps.grad * scale[k];
        q[k] = x[k] + h;
        const cdouble fp = eval(f, q);
        q[k] = x[k] - h;
        const cdouble fm = eval(f, q);
        q[k] = x[k];
        r.grad[k] = (fp - fm) / (2.0 * h);
    }

    for (std::size_t k = 0; k < d; ++k) {
        const double h = steps.hess * scale[k];
        q[k] = x[k] + h;
        const cdouble fp = eval(f, q);
        q[k] = x[k] - h;
        const cdouble fm = eval(f, q);
        q[k] = x[k];
        r.set_h(k, k, (fp - 2.0 * r.value + fm) / (h * h));
    }

    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            const double hi = steps.hess * scale[i];
            const double hj = steps.hess * scale[j];
            q[i] = x[i] + hi;
            q[j] = x[j] + hj;
            const cdouble fpp = eval(f, q);
            q[j] = x[j] - hj;
            const cdouble fpm = eval(f, q);
            q[i] = x[i] - hi;
            q[j] = x[j] + hj;
            const cdouble fmp = eval(f, q);
            q[j] = x[j] - hj;
            const cdouble fmm = eval(f, q);
            q[i] = x[i];
            q[j] = x[j];
            r.set_h(i, j, (fpp - fpm - fmp + fmm) / (4.0 * hi * hj));
        }
    }
    return r;
}

}  // namespace srpl
