#include "srpl/operators.hpp"

#include <cmath>

namespace srpl {

namespace {

constexpr cdouble kImag{0.0, 1.0};

void check_point(const SpaceParams& sp, std::span<const double> pt, const char* where) {
    if (pt.size() != sp.dim()) {
        throw DimensionError(std::string(where) + ": point has dimension " +
                             std::to_string(pt.size()) + ", expected " +
                             std::to_string(sp.dim()));
    }
}

/// Real first-order data of a Hermitian square sum.
struct RealJet1 {
    double value = 0.0;
    std::vector<double> grad;
};

// ||xi||^2 = sum xi_j conj(xi_j); d |f|^2 = 2 Re(conj(f) df), so both the
// value and the gradient are real by construction.
RealJet1 hermitian_norm2_jet(const std::vector<CJet1>& xi, std::size_t d) {
    RealJet1 n2;
    n2.grad.assign(d, 0.0);
    for (const auto& e : xi) {
        n2.value += std::norm(e.value);
        for (std::size_t l = 0; l < d; ++l) {
            n2.grad[l] += 2.0 * (e.grad[l] * std::conj(e.value)).real();
        }
    }
    return n2;
}

double apply_field_real(const HorizontalFrame& fr, std::size_t j,
                        const std::vector<double>& grad) {
    double v = 0.0;
    for (std::size_t k = 0; k < fr.d; ++k) {
        const double a = fr.c(j, k);
        if (a != 0.0) v += a * grad[k];
    }
    return v;
}

// The L-mixing: within each frame pair (first, second) the entries are
// (first + i L second, second - i L first).
std::vector<CJet1> mixed_entries(const SpaceParams& sp, const std::vector<CJet1>& fj,
                                 double L) {
    const cdouble iL(0.0, L);
    std::vector<CJet1> xi(fj.size());
    auto mix = [&](std::size_t target, std::size_t partner, double sgn) {
        const cdouble w = sgn * iL;
        const std::size_t d = fj[target].grad.size();
        xi[target].value = fj[target].value + w * fj[partner].value;
        xi[target].grad.resize(d);
        for (std::size_t l = 0; l < d; ++l) {
            xi[target].grad[l] = fj[target].grad[l] + w * fj[partner].grad[l];
        }
    };
    if (sp.kind == Space::Grushin) {
        mix(0, 1, 1.0);
        mix(1, 0, -1.0);
    } else {
        const std::size_t n = static_cast<std::size_t>(sp.n);
        for (std::size_t k = 0; k < n; ++k) {
            mix(k, n + k, 1.0);
            mix(n + k, k, -1.0);
        }
    }
    return xi;
}

ResidualValue finish(std::span<const double> pt, cdouble lambda, double scale) {
    ResidualValue rv;
    rv.point.assign(pt.begin(), pt.end());
    rv.lambda = lambda;
    rv.scale = scale;
    rv.rel = std::abs(lambda) / std::max(scale, kTinyScale);
    return rv;
}

void check_norm2(double n2, const char* where) {
    if (n2 < kVanishingNorm2) {
        throw VanishingNormError(std::string(where) +
                                 ": frame vector vanished at the evaluation point");
    }
}

// Residual of the reduced form over a given entry vector xi:
//   (p-2)/2 sum_j X_j(||xi||^2) xi_j + ||xi||^2 sum_j X_j xi_j,
// accumulated term by term in field order so reports are reproducible.
ResidualValue reduced_lambda(const SpaceParams& sp, const HorizontalFrame& fr,
                             const std::vector<CJet1>& xi, std::span<const double> pt,
                             const char* where) {
    const RealJet1 n2 = hermitian_norm2_jet(xi, fr.d);
    check_norm2(n2.value, where);
    const double half = 0.5 * (sp.p - 2.0);
    cdouble lambda{};
    double scale = 0.0;
    for (std::size_t j = 0; j < fr.m; ++j) {
        const cdouble t = half * apply_field_real(fr, j, n2.grad) * xi[j].value;
        lambda += t;
        scale += std::abs(t);
    }
    for (std::size_t j = 0; j < fr.m; ++j) {
        const cdouble t = n2.value * apply_field(fr, j, xi[j].grad);
        lambda += t;
        scale += std::abs(t);
    }
    return finish(pt, lambda, scale);
}

// Principal-branch power of a plain value, same branch policy as the jets.
cdouble cpow_value(cdouble z, cdouble s, const char* where) {
    if (z == cdouble{} || (z.imag() == 0.0 && z.real() < 0.0)) {
        throw BranchCutError(std::string(where) + ": value on branch cut or zero", z);
    }
    return std::exp(s * std::log(z));
}

}  // namespace

const char* negg_sign_name(NeggSign s) {
    return s == NeggSign::PlusNp ? "plus_np" : "minus_np";
}

ResidualValue p_laplacian(const SpaceParams& sp, const CJet2& u, std::span<const double> pt) {
    check_point(sp, pt, "p_laplacian");
    const auto fr = frame_at(sp, pt);
    const auto fj = horizontal_field_jets(fr, u);
    return reduced_lambda(sp, fr, fj, pt, "p_laplacian");
}

ResidualValue p_laplacian(const SpaceParams& sp, Family fam, std::span<const double> pt) {
    return p_laplacian(sp, eval_solution(sp, fam, pt), pt);
}

ResidualValue bgg_operator(const SpaceParams& sp, const CJet2& u, std::span<const double> pt) {
    check_point(sp, pt, "bgg_operator");
    if (sp.p != 2.0) throw ParameterError("bgg_operator: defined at p = 2 only");
    const auto fr = frame_at(sp, pt);
    const auto fj = horizontal_field_jets(fr, u);
    cdouble lambda{};
    double scale = 0.0;
    for (std::size_t j = 0; j < fr.m; ++j) {
        const cdouble t = apply_field(fr, j, fj[j].grad);  // X_j X_j u
        lambda += t;
        scale += std::abs(t);
    }
    const std::size_t pairs = sp.kind == Space::Grushin ? 1 : static_cast<std::size_t>(sp.n);
    const std::size_t stride = sp.kind == Space::Grushin ? 1 : static_cast<std::size_t>(sp.n);
    for (std::size_t k = 0; k < pairs; ++k) {
        const cdouble brk = apply_field(fr, k, fj[k + stride].grad) -
                            apply_field(fr, k + stride, fj[k].grad);
        const cdouble t = kImag * sp.L * brk;
        lambda += t;
        scale += std::abs(t);
    }
    return finish(pt, lambda, scale);
}

ResidualValue bgg_operator(const SpaceParams& sp, Family fam, std::span<const double> pt) {
    return bgg_operator(sp, eval_solution(sp, fam, pt), pt);
}

HorizontalVectorValue build_xi_upsilon(const SpaceParams& sp, const CJet2& u,
                                       std::span<const double> pt) {
    check_point(sp, pt, "build_xi_upsilon");
    const auto fr = frame_at(sp, pt);
    const auto fj = horizontal_field_jets(fr, u);
    const auto xi = mixed_entries(sp, fj, sp.L);
    HorizontalVectorValue out;
    out.entries.reserve(xi.size());
    for (const auto& e : xi) {
        out.entries.push_back(e.value);
        out.norm2 += std::norm(e.value);
    }
    return out;
}

HorizontalVectorValue build_xi_upsilon(const SpaceParams& sp, Family fam,
                                       std::span<const double> pt) {
    return build_xi_upsilon(sp, eval_solution(sp, fam, pt), pt);
}

ResidualValue modified_p_laplacian(const SpaceParams& sp, const CJet2& u,
                                   std::span<const double> pt) {
    check_point(sp, pt, "modified_p_laplacian");
    const auto fr = frame_at(sp, pt);
    const auto fj = horizontal_field_jets(fr, u);
    const auto xi = mixed_entries(sp, fj, sp.L);
    return reduced_lambda(sp, fr, xi, pt, "modified_p_laplacian");
}

ResidualValue modified_p_laplacian(const SpaceParams& sp, Family fam,
                                   std::span<const double> pt) {
    return modified_p_laplacian(sp, eval_solution(sp, fam, pt), pt);
}

ResidualValue modified_infinity(const SpaceParams& sp, const CJet2& u,
                                std::span<const double> pt) {
    check_point(sp, pt, "modified_infinity");
    const auto fr = frame_at(sp, pt);
    const auto fj = horizontal_field_jets(fr, u);
    const auto xi = mixed_entries(sp, fj, sp.L);
    const RealJet1 n2 = hermitian_norm2_jet(xi, fr.d);
    check_norm2(n2.value, "modified_infinity");
    cdouble lambda{};
    double scale = 0.0;
    for (std::size_t j = 0; j < fr.m; ++j) {
        const cdouble t = apply_field_real(fr, j, n2.grad) * xi[j].value;
        lambda += t;
        scale += std::abs(t);
    }
    return finish(pt, lambda, scale);
}

ResidualValue modified_infinity(const SpaceParams& sp, Family fam, std::span<const double> pt) {
    return modified_infinity(sp, eval_solution(sp, fam, pt), pt);
}

NeggResidual negg_identity(const SpaceParams& sp, std::span<const double> pt, NeggSign sign) {
    check_point(sp, pt, "negg_identity");
    if (sp.kind != Space::Grushin) {
        throw ParameterError("negg_identity: Grushin plane only");
    }
    if (sp.L == 0.0 || sp.L == 1.0 || sp.L == -1.0) {
        throw ParameterError("negg_identity: requires L outside {0, +-1}");
    }
    if (log_dispatch(sp)) {
        throw CriticalExponentError("negg_identity: undefined at the critical exponent");
    }
    const auto e = exponent_set(sp);
    auto [g, h] = eval_kernels(sp, pt);
    if (g.value == cdouble{}) {
        throw SingularValueError("negg_identity: evaluated at the singular point", g.value);
    }
    const CJet2 ga = pow(g, e.alpha);
    const CJet2 hb = pow(h, e.beta);
    const CJet2 f = ga * hb;

    const auto fr = frame_at(sp, pt);
    const auto fj = horizontal_field_jets(fr, f);
    const RealJet1 n2 = hermitian_norm2_jet(fj, fr.d);
    check_norm2(n2.value, "negg_identity");

    const double p = sp.p;
    const double L = sp.L;
    const double n = sp.n;
    const double half = 0.5 * (p - 2.0);
    cdouble base[4];
    base[0] = half * apply_field_real(fr, 0, n2.grad) * fj[0].value;
    base[1] = half * apply_field_real(fr, 1, n2.grad) * fj[1].value;
    base[2] = n2.value * apply_field(fr, 0, fj[0].grad);
    base[3] = n2.value * apply_field(fr, 1, fj[1].grad);

    const cdouble brk = apply_field(fr, 0, fj[1].grad) - apply_field(fr, 1, fj[0].grad);
    const cdouble coupling = kImag * L * (p - 1.0) * n2.value * brk;

    const double s = sign == NeggSign::PlusNp ? 1.0 : -1.0;
    const double coef =
        (L * L / (L * L - 1.0)) * (-4.0) * ((p - 2.0) * (1.0 + s * n * p) / (2.0 + n - p));
    const cdouble y2ga = apply_field(fr, 1, ga.grad);
    const cdouble y2hb = apply_field(fr, 1, hb.grad);
    const cdouble correction = -(n2.value * coef) * y2ga * y2hb;

    cdouble lambda{};
    double scale = 0.0;
    for (const cdouble& t : base) {
        lambda += t;
        scale += std::abs(t);
    }
    lambda += coupling;
    scale += std::abs(coupling);
    lambda += correction;
    scale += std::abs(correction);

    NeggResidual out;
    out.identity = finish(pt, lambda, scale);

    // Two-term truncation Delta_p f + i L [Y_1, Y_2] f; p stays small here,
    // so the prefactor is safe to apply.
    const double pre = std::pow(n2.value, (p - 4.0) / 2.0);
    cdouble lam_t{};
    double scale_t = 0.0;
    for (const cdouble& t : base) {
        lam_t += pre * t;
        scale_t += pre * std::abs(t);
    }
    const cdouble t_brk = kImag * L * brk;
    lam_t += t_brk;
    scale_t += std::abs(t_brk);
    out.truncated = finish(pt, lam_t, scale_t);
    return out;
}

NeghValue negh_residual(const SpaceParams& sp, std::span<const double> pt) {
    check_point(sp, pt, "negh_residual");
    if (sp.kind != Space::Heisenberg || sp.n != 1) {
        throw ParameterError("negh_residual: first Heisenberg group only");
    }
    if (log_dispatch(sp)) {
        throw CriticalExponentError("negh_residual: undefined at the critical exponent");
    }
    const CJet2 u = eval_solution(sp, Family::UpL, pt);
    const auto fr = frame_at(sp, pt);
    const auto fj = horizontal_field_jets(fr, u);
    const RealJet1 n2 = hermitian_norm2_jet(fj, fr.d);
    check_norm2(n2.value, "negh_residual");

    const double p = sp.p;
    const double L = sp.L;
    const double half = 0.5 * (p - 2.0);
    const double pre = std::pow(n2.value, (p - 4.0) / 2.0);
    cdouble computed{};
    double scale = 0.0;
    for (std::size_t j = 0; j < fr.m; ++j) {
        const cdouble t = pre * half * apply_field_real(fr, j, n2.grad) * fj[j].value;
        computed += t;
        scale += std::abs(t);
    }
    for (std::size_t j = 0; j < fr.m; ++j) {
        const cdouble t = pre * n2.value * apply_field(fr, j, fj[j].grad);
        computed += t;
        scale += std::abs(t);
    }
    const cdouble zu = u.grad[2];
    const cdouble t_z = kImag * L * zu;
    computed += t_z;
    scale += std::abs(t_z);

    const double sq = pt[0] * pt[0] + pt[1] * pt[1];
    const cdouble v(sq, -4.0 * pt[2]);
    const cdouble w(sq, 4.0 * pt[2]);
    NeghValue out;
    out.computed = computed;
    out.scale = scale;
    out.rel = std::abs(computed) / std::max(scale, kTinyScale);
    out.candidate_rhs = -8.0 * L * cpow_value(v, cdouble((L - 3.0) / 2.0), "negh_residual") *
                        cdouble(L * sq, -4.0 * pt[2]) *
                        cpow_value(w, cdouble((-L - 3.0) / 2.0), "negh_residual");
    return out;
}

ClosedFormAudit closed_form_audit(const SpaceParams& sp, std::span<const double> pt) {
    check_point(sp, pt, "closed_form_audit");
    if (sp.kind != Space::Heisenberg) {
        throw ParameterError("closed_form_audit: Heisenberg group only");
    }
    if (log_dispatch(sp)) {
        throw CriticalExponentError("closed_form_audit: power family only");
    }
    const CJet2 u = eval_solution(sp, Family::UpL, pt);
    const auto fr = frame_at(sp, pt);
    const auto fj = horizontal_field_jets(fr, u);
    const auto xi = mixed_entries(sp, fj, sp.L);
    const RealJet1 n2 = hermitian_norm2_jet(xi, fr.d);

    cdouble part1{};
    double part1_scale = 0.0;
    for (std::size_t j = 0; j < fr.m; ++j) {
        const cdouble t = apply_field_real(fr, j, n2.grad) * xi[j].value;
        part1 += t;
        part1_scale += std::abs(t);
    }
    cdouble part2{};
    double part2_scale = 0.0;
    for (std::size_t j = 0; j < fr.m; ++j) {
        const cdouble t = apply_field(fr, j, xi[j].grad);
        part2 += t;
        part2_scale += std::abs(t);
    }

    const double n = sp.n;
    const double p = sp.p;
    const double L = sp.L;
    const double q = p - (2.0 * n + 2.0);
    const double pm1 = p - 1.0;
    const double lfac = L * L - 1.0;
    double sq = 0.0;
    for (std::size_t i = 0; i + 1 < pt.size(); ++i) sq += pt[i] * pt[i];
    const cdouble v(sq, -4.0 * pt.back());
    const cdouble w(sq, 4.0 * pt.back());
    auto vw_pow = [&](double ev, double ew) {
        return cpow_value(v, cdouble(ev), "closed_form_audit") *
               cpow_value(w, cdouble(ew), "closed_form_audit");
    };

    const double e0 = (2.0 * n + p) / (2.0 - 2.0 * p);
    const cdouble n2_cf = (q * q / (pm1 * pm1)) * lfac * lfac * sq * vw_pow(e0, e0);

    const double M = (L * q + (6.0 * n - 2.0) + 5.0 * p) / (4.0 * (1.0 - p));
    const double Mf = (-L * q + 5.0 * p + (6.0 * n - 2.0)) / (4.0 * (1.0 - p));
    const cdouble part1_cf = (4.0 * n + 2.0) * (q * q * q / (pm1 * pm1 * pm1 * pm1)) * lfac *
                             lfac * lfac * sq * sq * vw_pow(M, Mf);

    const double C = (L * q + (2.0 * n - 2.0) + 3.0 * p) / (4.0 * (1.0 - p));
    const double Cf = (-L * q + 3.0 * p + (2.0 * n - 2.0)) / (4.0 * (1.0 - p));
    const cdouble part2_cf =
        -(2.0 * n + 1.0) * ((p - 2.0) * q / (pm1 * pm1)) * lfac * sq * vw_pow(C, Cf);

    const cdouble comb_cf = -(2.0 * n + 1.0) * (p - 2.0) *
                            (q * q * q / (pm1 * pm1 * pm1 * pm1)) * lfac * lfac * lfac * sq *
                            sq * vw_pow(M, Mf);

    auto entry = [](cdouble jet, cdouble closed, double scale) {
        AuditEntry e;
        e.jet = jet;
        e.closed = closed;
        e.scale = scale;
        // A vanished closed form with a vanished jet is consistent; report
        // ratio 1 there and let rel_dev carry the information.
        e.ratio = std::abs(closed) > kTinyScale * std::max(scale, 1.0) ? jet / closed
                                                                       : cdouble(1.0);
        e.rel_dev = std::abs(jet - closed) / std::max(scale, kTinyScale);
        return e;
    };

    ClosedFormAudit audit;
    audit.norm2 = entry(cdouble(n2.value), n2_cf, n2.value);
    audit.part1 = entry(part1, part1_cf, part1_scale);
    audit.part2 = entry(part2, part2_cf, part2_scale);
    audit.part2_combined_closed = comb_cf;
    audit.combine_consistency =
        std::abs(n2_cf * part2_cf - comb_cf) / std::max(std::abs(comb_cf), kTinyScale);
    return audit;
}

}  // namespace srpl
