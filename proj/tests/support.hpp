#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "srpl/jet.hpp"

namespace testsupport {

/// |got - want| relative to max(1, |want|).
inline double rel_err(srpl::cdouble got, srpl::cdouble want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

/// Deterministic uniform stream with a fixed bit-to-double mapping.
struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    double uniform01() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }
    unsigned uint_below(unsigned n) { return static_cast<unsigned>(gen() % n); }
};

/// Sparse complex polynomial with exact symbolic derivatives; the reference
/// test function for jet and geometry checks.
struct PolyTerm {
    srpl::cdouble coef{};
    std::vector<unsigned> exp;
};

struct Poly {
    std::size_t dim = 0;
    std::vector<PolyTerm> terms;

    srpl::CJet2 eval(std::span<const srpl::CJet2> vars) const {
        srpl::CJet2 acc = srpl::constant_jet(dim, srpl::cdouble{});
        for (const auto& t : terms) {
            srpl::CJet2 m = srpl::constant_jet(dim, t.coef);
            for (std::size_t k = 0; k < dim; ++k) {
                if (t.exp[k] > 0) m = m * srpl::ipow(vars[k], t.exp[k]);
            }
            acc = acc + m;
        }
        return acc;
    }

    srpl::CJet2 jet_at(std::span<const double> pt) const {
        const auto vars = srpl::seed_point(pt);
        return eval(vars);
    }

    srpl::cdouble value_at(std::span<const double> pt) const {
        srpl::cdouble acc{};
        for (const auto& t : terms) {
            srpl::cdouble m = t.coef;
            for (std::size_t k = 0; k < dim; ++k) {
                for (unsigned e = 0; e < t.exp[k]; ++e) m *= pt[k];
            }
            acc += m;
        }
        return acc;
    }

    Poly derivative(std::size_t k) const {
        Poly d;
        d.dim = dim;
        for (const auto& t : terms) {
            if (t.exp[k] == 0) continue;
            PolyTerm dt = t;
            dt.coef *= static_cast<double>(t.exp[k]);
            dt.exp[k] -= 1;
            d.terms.push_back(std::move(dt));
        }
        return d;
    }
};

inline Poly random_poly(Rng& rng, std::size_t dim, unsigned max_deg, std::size_t nterms) {
    Poly p;
    p.dim = dim;
    for (std::size_t t = 0; t < nterms; ++t) {
        PolyTerm term;
        term.coef = srpl::cdouble(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        term.exp.resize(dim);
        for (std::size_t k = 0; k < dim; ++k) term.exp[k] = rng.uint_below(max_deg + 1);
        p.terms.push_back(std::move(term));
    }
    return p;
}

inline std::vector<double> random_point(Rng& rng, std::size_t dim, double half_width) {
    std::vector<double> pt(dim);
    for (auto& x : pt) x = rng.uniform(-half_width, half_width);
    return pt;
}

}  // namespace testsupport
