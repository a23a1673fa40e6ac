#include "srpl/solutions.hpp"

namespace srpl {

namespace {

constexpr cdouble kImag{0.0, 1.0};

void check_family_space(const SpaceParams& sp, Family fam, const char* where) {
    if (family_space(fam) != sp.kind) {
        throw ParameterError(std::string(where) + ": family " + family_name(fam) +
                             " does not live on this space");
    }
}

}  // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::PsiP: return "psi_p";
        case Family::ZetaP: return "zeta_p";
        case Family::FpL: return "f_pL";
        case Family::UpL: return "u_pL";
        case Family::FInfL: return "f_infL";
        case Family::UInfL: return "u_infL";
    }
    return "?";
}

Space family_space(Family f) {
    switch (f) {
        case Family::PsiP:
        case Family::FpL:
        case Family::FInfL: return Space::Grushin;
        default: return Space::Heisenberg;
    }
}

bool log_dispatch(const SpaceParams& sp) { return sp.p == sp.critical_p(); }

ExponentSet exponent_set(const SpaceParams& sp) {
    if (log_dispatch(sp)) {
        throw CriticalExponentError(
            "exponent_set: power-family constants undefined at the critical exponent p = " +
            std::to_string(sp.p));
    }
    ExponentSet e;
    const double n = sp.n;
    const double p = sp.p;
    const double L = sp.L;
    if (sp.kind == Space::Grushin) {
        e.alpha = (n + 2.0 - p) * (1.0 + L) / ((1.0 - p) * (2.0 * n + 2.0));
        e.beta = (n + 2.0 - p) * (1.0 - L) / ((1.0 - p) * (2.0 * n + 2.0));
        e.tau_p = (n + 2.0 - p) / ((2.0 * n + 2.0) * (1.0 - p));
        e.A = (1.0 + L) / (2.0 * n + 2.0);
        e.B = (1.0 - L) / (2.0 * n + 2.0);
    } else {
        e.eta = (2.0 * n + 2.0 - p) * (1.0 - L) / (4.0 * (1.0 - p));
        e.tau = (2.0 * n + 2.0 - p) * (1.0 + L) / (4.0 * (1.0 - p));
        e.eta_p = (2.0 * n + 2.0 - p) / (4.0 * (1.0 - p));
        e.A = (1.0 + L) / 4.0;
        e.B = (1.0 - L) / 4.0;
    }
    return e;
}

std::pair<double, double> infinity_exponents(const SpaceParams& sp) {
    const double L = sp.L;
    if (sp.kind == Space::Grushin) {
        const double d = 2.0 * sp.n + 2.0;
        return {(1.0 + L) / d, (1.0 - L) / d};
    }
    return {(1.0 + L) / 4.0, (1.0 - L) / 4.0};
}

std::pair<CJet2, CJet2> eval_kernels(const SpaceParams& sp, std::span<const double> pt) {
    if (pt.size() != sp.dim()) {
        throw DimensionError("eval_kernels: point has dimension " + std::to_string(pt.size()) +
                             ", expected " + std::to_string(sp.dim()));
    }
    const auto jets = seed_point(pt);
    if (sp.kind == Space::Grushin) {
        const CJet2 t = jets[0] - cdouble(sp.a);
        const CJet2 s = jets[1] - cdouble(sp.b);
        const CJet2 radial = cdouble(sp.c) * ipow(t, sp.n + 1);
        const CJet2 imag_part = cdouble(sp.n + 1.0) * s;
        return {radial + kImag * imag_part, radial - kImag * imag_part};
    }
    const std::size_t m = sp.frame_size();
    CJet2 sq = constant_jet(sp.dim(), 0.0);
    for (std::size_t j = 0; j < m; ++j) sq = sq + ipow(jets[j], 2);
    const CJet2 zterm = cdouble(4.0) * kImag * jets[m];
    return {sq - zterm, sq + zterm};
}

CJet2 eval_solution(const SpaceParams& sp, Family fam, std::span<const double> pt) {
    check_family_space(sp, fam, "eval_solution");
    auto [k1, k2] = eval_kernels(sp, pt);
    if (k1.value == cdouble{}) {
        throw SingularValueError(std::string("eval_solution: family ") + family_name(fam) +
                                     " evaluated at its singular point",
                                 k1.value);
    }

    switch (fam) {
        case Family::PsiP: {
            // real kernel g h = c^2 (y_1-a)^{2n+2} + (n+1)^2 (y_2-b)^2
            const auto jets = seed_point(pt);
            const CJet2 t = jets[0] - cdouble(sp.a);
            const CJet2 s = jets[1] - cdouble(sp.b);
            const CJet2 base = cdouble(sp.c * sp.c) * ipow(t, 2 * sp.n + 2) +
                               cdouble((sp.n + 1.0) * (sp.n + 1.0)) * ipow(s, 2);
            if (log_dispatch(sp)) return log(base);
            return pow(base, exponent_set(sp).tau_p);
        }
        case Family::ZetaP: {
            // real kernel v w = (sum x^2)^2 + 16 z^2
            const auto jets = seed_point(pt);
            const std::size_t m = sp.frame_size();
            CJet2 sq = constant_jet(sp.dim(), 0.0);
            for (std::size_t j = 0; j < m; ++j) sq = sq + ipow(jets[j], 2);
            const CJet2 base = ipow(sq, 2) + cdouble(16.0) * ipow(jets[m], 2);
            if (log_dispatch(sp)) return log(base);
            return pow(base, exponent_set(sp).eta_p);
        }
        case Family::FpL: {
            if (log_dispatch(sp)) {
                return cdouble(1.0 + sp.L) * log(k1) + cdouble(1.0 - sp.L) * log(k2);
            }
            const auto e = exponent_set(sp);
            return pow(k1, e.alpha) * pow(k2, e.beta);
        }
        case Family::UpL: {
            if (log_dispatch(sp)) {
                return cdouble(1.0 - sp.L) * log(k1) + cdouble(1.0 + sp.L) * log(k2);
            }
            const auto e = exponent_set(sp);
            return pow(k1, e.eta) * pow(k2, e.tau);
        }
        case Family::FInfL: {
            const auto [A, B] = infinity_exponents(sp);
            return pow(k1, A) * pow(k2, B);
        }
        case Family::UInfL: {
            const auto [A, B] = infinity_exponents(sp);
            return pow(k1, B) * pow(k2, A);
        }
    }
    throw ParameterError("eval_solution: unknown family");
}

cdouble solution_value(const SpaceParams& sp, Family fam, std::span<const double> pt) {
    return eval_solution(sp, fam, pt).value;
}

}  // namespace srpl
