#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "srpl/fd.hpp"
#include "srpl/jet.hpp"
#include "support.hpp"

using srpl::cdouble;
using srpl::CJet2;
using testsupport::Poly;
using testsupport::PolyTerm;
using testsupport::Rng;

namespace {

double max_dev(const CJet2& a, const CJet2& b) {
    REQUIRE(a.dim == b.dim);
    double m = std::abs(a.value - b.value);
    for (std::size_t k = 0; k < a.dim; ++k) m = std::max(m, std::abs(a.grad[k] - b.grad[k]));
    for (std::size_t k = 0; k < a.dim * a.dim; ++k)
        m = std::max(m, std::abs(a.hess[k] - b.hess[k]));
    return m;
}

}  // namespace

TEST_CASE("seeded variables and constants carry the expected jet data") {
    const CJet2 x = srpl::seed_variable(3, 1, 2.5);
    CHECK(x.dim == 3);
    CHECK(x.value == cdouble(2.5, 0.0));
    CHECK(x.grad[0] == cdouble(0.0, 0.0));
    CHECK(x.grad[1] == cdouble(1.0, 0.0));
    CHECK(x.grad[2] == cdouble(0.0, 0.0));
    for (std::size_t k = 0; k < 9; ++k) CHECK(x.hess[k] == cdouble(0.0, 0.0));

    const CJet2 c = srpl::constant_jet(2, cdouble(3.0, 4.0));
    CHECK(c.value == cdouble(3.0, 4.0));
    for (const auto& g : c.grad) CHECK(g == cdouble(0.0, 0.0));
    for (const auto& h : c.hess) CHECK(h == cdouble(0.0, 0.0));

    const std::vector<double> pt{1.0, -2.0};
    const auto vars = srpl::seed_point(pt);
    REQUIRE(vars.size() == 2);
    CHECK(vars[0].value == cdouble(1.0, 0.0));
    CHECK(vars[1].value == cdouble(-2.0, 0.0));
    CHECK(vars[1].grad[1] == cdouble(1.0, 0.0));
}

TEST_CASE("seed_point rejects empty input and mixed dimensions error out") {
    CHECK_THROWS_AS(srpl::seed_point(std::vector<double>{}), srpl::DimensionError);
    const CJet2 a = srpl::seed_variable(2, 0, 1.0);
    const CJet2 b = srpl::seed_variable(3, 0, 1.0);
    CHECK_THROWS_AS(a + b, srpl::DimensionError);
    CHECK_THROWS_AS(a * b, srpl::DimensionError);
    CHECK_THROWS_AS(srpl::seed_variable(2, 5, 1.0), srpl::DimensionError);
}

TEST_CASE("|x + i y|^2 built with conj has the euclidean jet") {
    const std::vector<double> pt{1.0, 1.0};
    const auto v = srpl::seed_point(pt);
    const CJet2 w = v[0] + cdouble(0.0, 1.0) * v[1];
    const CJet2 n2 = w * srpl::conj(w);
    CHECK(n2.value == cdouble(2.0, 0.0));
    CHECK(n2.grad[0] == cdouble(2.0, 0.0));
    CHECK(n2.grad[1] == cdouble(2.0, 0.0));
    CHECK(n2.h(0, 0) == cdouble(2.0, 0.0));
    CHECK(n2.h(1, 1) == cdouble(2.0, 0.0));
    CHECK(n2.h(0, 1) == cdouble(0.0, 0.0));
}

TEST_CASE("integer, fractional, and logarithmic powers match hand values") {
    const CJet2 x2 = srpl::seed_variable(1, 0, 2.0);
    const CJet2 cube = srpl::ipow(x2, 3);
    CHECK(cube.value == cdouble(8.0, 0.0));
    CHECK(cube.grad[0] == cdouble(12.0, 0.0));
    CHECK(cube.h(0, 0) == cdouble(12.0, 0.0));

    const CJet2 one = srpl::ipow(x2, 0);
    CHECK(one.value == cdouble(1.0, 0.0));
    CHECK(one.grad[0] == cdouble(0.0, 0.0));

    const CJet2 x4 = srpl::seed_variable(1, 0, 4.0);
    const CJet2 r = srpl::pow(x4, 0.5);
    CHECK(std::abs(r.value - cdouble(2.0, 0.0)) < 1e-15);
    CHECK(std::abs(r.grad[0] - cdouble(0.25, 0.0)) < 1e-15);
    CHECK(std::abs(r.h(0, 0) - cdouble(-1.0 / 32.0, 0.0)) < 1e-15);

    const CJet2 x1 = srpl::seed_variable(1, 0, 1.0);
    const CJet2 lg = srpl::log(x1);
    CHECK(std::abs(lg.value) < 1e-15);
    CHECK(std::abs(lg.grad[0] - cdouble(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(lg.h(0, 0) - cdouble(-1.0, 0.0)) < 1e-15);
}

TEST_CASE("branch cut and zero arguments raise hard errors that carry the value") {
    const CJet2 zero = srpl::seed_variable(1, 0, 0.0);
    CHECK_THROWS_AS(srpl::log(zero), srpl::BranchCutError);
    CHECK_THROWS_AS(srpl::pow(zero, 0.5), srpl::BranchCutError);

    const CJet2 neg = srpl::seed_variable(1, 0, -2.0);
    bool caught = false;
    try {
        srpl::log(neg);
    } catch (const srpl::BranchCutError& e) {
        caught = true;
        CHECK(e.value() == cdouble(-2.0, 0.0));
    }
    CHECK(caught);
    CHECK_THROWS_AS(srpl::pow(srpl::seed_variable(1, 0, -1.0), 0.7), srpl::BranchCutError);

    // Just off the axis the principal branch is fine.
    const CJet2 near = srpl::constant_jet(1, cdouble(-1.0, 1e-6)) + zero;
    CHECK_NOTHROW(srpl::log(near));

    // ipow is total: no cut anywhere, exact on the axis.
    const CJet2 cube = srpl::ipow(neg, 3);
    CHECK(cube.value == cdouble(-8.0, 0.0));
}

TEST_CASE("division by an exactly-zero value raises SingularValueError") {
    const CJet2 x = srpl::seed_variable(1, 0, 1.5);
    const CJet2 zero = srpl::seed_variable(1, 0, 0.0);
    CHECK_THROWS_AS(x / zero, srpl::SingularValueError);
    CHECK_THROWS_AS(cdouble(1.0, 0.0) / zero, srpl::SingularValueError);
    CHECK_THROWS_AS(x / cdouble(0.0, 0.0), srpl::SingularValueError);
    bool caught = false;
    try {
        (void)(x / zero);
    } catch (const srpl::SingularValueError& e) {
        caught = true;
        CHECK(e.value() == cdouble(0.0, 0.0));
    }
    CHECK(caught);
}

TEST_CASE("scalar arithmetic works from both sides") {
    const CJet2 x = srpl::seed_variable(2, 0, 3.0);
    const cdouble s(2.0, -1.0);
    CHECK(max_dev(x + s, s + x) == 0.0);
    CHECK(max_dev(x * s, s * x) == 0.0);
    CHECK(max_dev(-(s - x), x - s) < 1e-15);
    const CJet2 q = s / x;
    const CJet2 qr = srpl::constant_jet(2, s) / x;
    CHECK(max_dev(q, qr) == 0.0);
    CHECK(std::abs((x / s).value - cdouble(3.0, 0.0) / s) < 1e-15);
}

TEST_CASE("random polynomial jets agree with exact symbolic derivatives") {
    Rng rng(101);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t dim = 1 + rng.uint_below(4);
        const Poly p = testsupport::random_poly(rng, dim, 3, 5);
        const auto pt = testsupport::random_point(rng, dim, 1.5);
        const CJet2 jet = p.jet_at(pt);

        CHECK(std::abs(jet.value - p.value_at(pt)) < 1e-13);
        for (std::size_t k = 0; k < dim; ++k) {
            const Poly dk = p.derivative(k);
            CHECK(std::abs(jet.grad[k] - dk.value_at(pt)) < 1e-12);
            for (std::size_t l = 0; l <= k; ++l) {
                const Poly dkl = dk.derivative(l);
                CHECK(std::abs(jet.h(k, l) - dkl.value_at(pt)) < 1e-11);
            }
        }
    }
}

TEST_CASE("multiplication and division round-trip") {
    Rng rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t dim = 1 + rng.uint_below(3);
        const Poly pa = testsupport::random_poly(rng, dim, 2, 4);
        const Poly pb = testsupport::random_poly(rng, dim, 2, 4);
        const auto pt = testsupport::random_point(rng, dim, 1.0);
        const CJet2 a = pa.jet_at(pt);
        CJet2 b = pb.jet_at(pt);
        if (std::abs(b.value) < 1e-3) b = b + cdouble(1.0, 1.0);
        const CJet2 back = (a * b) / b;
        CHECK(max_dev(back, a) < 1e-12 * (1.0 + std::abs(a.value)));
    }
}

TEST_CASE("conjugation is entrywise and commutes with arithmetic") {
    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t dim = 2;
        const Poly pa = testsupport::random_poly(rng, dim, 2, 4);
        const Poly pb = testsupport::random_poly(rng, dim, 2, 4);
        const auto pt = testsupport::random_point(rng, dim, 1.2);
        const CJet2 a = pa.jet_at(pt);
        const CJet2 b = pb.jet_at(pt);
        CHECK(max_dev(srpl::conj(a + b), srpl::conj(a) + srpl::conj(b)) == 0.0);
        CHECK(max_dev(srpl::conj(a * b), srpl::conj(a) * srpl::conj(b)) < 1e-13);
        CHECK(max_dev(srpl::conj(srpl::conj(a)), a) == 0.0);
        // conj never touches the real part: value check entrywise.
        CHECK(srpl::conj(a).value == std::conj(a.value));
        CHECK(srpl::conj(a).grad[0] == std::conj(a.grad[0]));
    }
}

TEST_CASE("hessians stay symmetric bit for bit through expression trees") {
    Rng rng(555);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t dim = 3;
        const auto pt = testsupport::random_point(rng, dim, 0.8);
        const auto v = srpl::seed_point(pt);
        // An asymmetric-looking tree: products, powers of shifted values, a quotient.
        const CJet2 shifted = v[0] * v[1] + cdouble(3.0, 0.5);
        const CJet2 expr =
            srpl::pow(shifted, 1.3) * srpl::conj(v[2] + cdouble(0.0, 2.0) * v[0]) /
            (srpl::ipow(v[1], 2) + cdouble(2.0, 0.0)) +
            srpl::log(shifted);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) {
                CHECK(expr.h(i, j) == expr.h(j, i));  // bitwise, not approximate
            }
    }
}

TEST_CASE("central differences confirm the algebraic jets") {
    const std::vector<double> pt{1.3, 2.1};
    const auto jet_fn = [](std::span<const srpl::CJet2> vars) {
        return srpl::pow(vars[0], 1.7) * srpl::log(vars[1]);
    };
    const auto value_fn = [](std::span<const double> x) {
        return cdouble(std::pow(x[0], 1.7) * std::log(x[1]), 0.0);
    };
    const auto vars = srpl::seed_point(pt);
    const CJet2 ad = jet_fn(vars);
    const CJet2 fd = srpl::finite_difference_jet(value_fn, pt);
    for (std::size_t k = 0; k < 2; ++k) CHECK(std::abs(ad.grad[k] - fd.grad[k]) < 1e-5);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(std::abs(ad.h(i, j) - fd.h(i, j)) < 1e-4);

    // A constant function: every stencil difference cancels to roundoff.
    const auto const_fn = [](std::span<const double>) { return cdouble(4.0, -1.0); };
    const CJet2 cfd = srpl::finite_difference_jet(const_fn, pt);
    CHECK(std::abs(cfd.value - cdouble(4.0, -1.0)) == 0.0);
    for (std::size_t k = 0; k < 2; ++k) CHECK(std::abs(cfd.grad[k]) < 1e-12);
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(cfd.hess[k]) < 1e-9);
}

TEST_CASE("principal powers compose like the scalar library functions") {
    Rng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        const std::vector<double> pt{rng.uniform(0.2, 2.0), rng.uniform(-1.5, 1.5)};
        const auto v = srpl::seed_point(pt);
        const CJet2 w = v[0] + cdouble(0.0, 1.0) * v[1];  // right half-plane: x > 0
        const double e = rng.uniform(-2.0, 2.0);
        const CJet2 pw = srpl::pow(w, e);
        CHECK(std::abs(pw.value - std::pow(w.value, cdouble(e, 0.0))) <
              1e-13 * std::abs(pw.value));
        const CJet2 via_log = srpl::log(w) * cdouble(e, 0.0);
        CHECK(std::abs(pw.value - std::exp(via_log.value)) < 1e-13 * std::abs(pw.value));
        // d/dx w^e = e w^{e-1} dw/dx with dw/dx = 1.
        const CJet2 pm1 = srpl::pow(w, e - 1.0);
        CHECK(std::abs(pw.grad[0] - cdouble(e, 0.0) * pm1.value) < 1e-12 * std::abs(pm1.value));
    }
}
