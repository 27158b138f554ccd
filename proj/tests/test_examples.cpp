#include <cmath>

#include "doctest.h"
#include "ringbif/errors.hpp"
#include "ringbif/fixtures.hpp"
#include "ringbif/params.hpp"
#include "ringbif/reduction.hpp"

using namespace ringbif;
using namespace ringbif::examples;
using doctest::Approx;

namespace {

ReductionResult run(const ExampleFixture& fx, double lo = 0.01, double hi = 0.1) {
    ReductionOptions o;
    o.direction = fx.reduction_direction;
    return reduce(fx.functional, symmetric_grid(lo, hi, 10), o);
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("finite-dimensional example closed forms") {
    auto fx = finite_dim_example();
    CHECK(fx.closed_form_h(0.5) == Approx(-0.2).epsilon(1e-15).scale(0));
    CHECK(fx.closed_form_g(0.5) == Approx(-0.05).epsilon(1e-15).scale(0));
    // h'(0) = 0: slaving starts at second order
    CHECK(std::abs(fx.closed_form_h(1e-4) - fx.closed_form_h(-1e-4)) / 2e-4 < 1e-12);
    Vec z(2);
    z << 0.5, fx.closed_form_h(0.5);
    CHECK(fx.functional.energy(z) == Approx(-0.05).epsilon(1e-14).scale(0));
    CHECK(std::abs(fx.functional.gradient(z)(1)) < 1e-14);
}

TEST_CASE("finite-dimensional example through the engine") {
    auto fx = finite_dim_example();
    auto r = run(fx);
    CHECK(std::abs(r.fitted.a2) < 1e-8);
    CHECK(r.fitted.a4 == Approx(-1.0).epsilon(1e-6).scale(0));
    CHECK(r.fitted.a6 == Approx(1.0).epsilon(1e-4).scale(0));
    CHECK(r.fitted.determinacy == 4);
    for (std::size_t i = 0; i < r.alphas.size(); ++i) {
        const double a = r.alphas[i];
        CHECK(r.slaved_solutions[i](1) == Approx(fx.closed_form_h(a)).scale(1e-12).epsilon(1e-10));
        CHECK(r.g_samples[i].second == Approx(fx.closed_form_g(a)).scale(1e-14).epsilon(1e-10));
    }
    auto w = slaved_taylor(r, 3);
    CHECK(std::abs(w[0](1)) < 1e-8);
    CHECK(w[1](1) == Approx(-1.0).epsilon(1e-6).scale(0));
}

TEST_CASE("Euler rod critical load") {
    CHECK(euler_critical_force(1.0, kPi) == Approx(1.0).epsilon(1e-15).scale(0));
    CHECK(euler_critical_force(2.0, 1.0) == Approx(2.0 * kPi * kPi).scale(0));
    CHECK_THROWS_AS(euler_elastica(-1.0), DomainError);
    auto fx = euler_elastica(1.0);
    REQUIRE(fx.closed_form_coeffs);
    CHECK(fx.closed_form_coeffs->a2 == Approx(0.0).scale(1.0));
    CHECK(fx.closed_form_coeffs->a4 == Approx(kPi / 64.0).scale(0));
    CHECK(fx.closed_form_coeffs->determinacy == 4);
}

TEST_CASE("Euler rod reduction at the buckling load") {
    auto fx = euler_elastica(1.0);
    auto r = run(fx);
    const double a4 = kPi * kPi * 1.0 / (64.0 * kPi);
    CHECK(std::abs(r.fitted.a2) / a4 < 1e-6);
    CHECK(rel(r.fitted.a4, a4) < 1e-6);
    auto w = slaved_taylor(r, 3);
    CHECK(w[1].lpNorm<Eigen::Infinity>() < 1e-8);
    CHECK(w[2][3] == Approx(euler_w3_amplitude()).epsilon(1e-6).scale(0));
    CHECK(euler_w3_amplitude() == Approx(-0.0052083333).epsilon(1e-8).scale(0));
    // only the third cosine is excited at third order
    for (int j = 0; j < w[2].size(); ++j)
        if (j != 1 && j != 3) CHECK(std::abs(w[2][j]) < 1e-6);
}

TEST_CASE("Euler rod below the buckling load") {
    for (double F : {0.5, 0.9}) {
        auto fx = euler_elastica(F);
        auto r = run(fx);
        CHECK(rel(r.fitted.a2, fx.closed_form_coeffs->a2) < 1e-6);
        CHECK(rel(r.fitted.a4, fx.closed_form_coeffs->a4) < 1e-6);
        CHECK(r.fitted.a2 > 0.0);
    }
}

TEST_CASE("extensible rod critical values") {
    auto [lo, hi] = extensible_critical_mu1(16.0 / 3.0);
    CHECK(lo == Approx(0.25).epsilon(1e-14).scale(0));
    CHECK(hi == Approx(0.75).epsilon(1e-14).scale(0));
    CHECK(lo * (16.0 / 3.0) * (1.0 - lo) == Approx(1.0).scale(0));
    CHECK_THROWS_AS(extensible_critical_mu1(3.9), NoBifurcation);
    CHECK_THROWS_AS(extensible_rod(0.3, 4.0), NoBifurcation);
    CHECK_THROWS_AS(extensible_rod(1.2, 8.0), DomainError);
}

TEST_CASE("extensible rod degenerate point") {
    auto fx = extensible_rod(0.25, 16.0 / 3.0);
    const auto& c = *fx.closed_form_coeffs;
    CHECK(std::abs(c.a2) < 1e-15);
    CHECK(std::abs(c.a4) < 1e-15);
    CHECK(c.a6 > 0.0);
    CHECK(c.a6 == Approx(16.0 / 9216.0).epsilon(1e-12).scale(0));
    CHECK(c.determinacy == 6);
    auto r = run(fx);
    const double k = fx.closed_form_scale;
    CHECK(std::abs(r.fitted.a2 * k) < 1e-6);
    CHECK(std::abs(r.fitted.a4 * k) < 1e-6);
    CHECK(rel(r.fitted.a6 * k, c.a6) < 1e-4);
}

TEST_CASE("extensible rod against closed forms") {
    struct P {
        double m1, m2;
    };
    for (P p : {P{0.2, 6.0}, P{0.3, 5.0}, P{0.6, 8.0}}) {
        auto fx = extensible_rod(p.m1, p.m2);
        auto r = run(fx);
        const double k = fx.closed_form_scale;
        const auto& c = *fx.closed_form_coeffs;
        INFO("mu1_hat = " << p.m1 << ", mu2_hat = " << p.m2);
        CHECK(rel(r.fitted.a2 * k, c.a2) < 1e-6);
        CHECK(rel(r.fitted.a4 * k, c.a4) < 1e-6);
    }
    // on the neutral curve: a2 vanishes and the sextic matches
    for (double m1 : {0.2, 0.3, 0.6}) {
        const double m2 = 1.0 / (m1 * (1.0 - m1));
        auto fx = extensible_rod(m1, m2);
        auto r = run(fx);
        const double k = fx.closed_form_scale;
        const auto& c = *fx.closed_form_coeffs;
        CHECK(std::abs(c.a2) < 1e-14);
        CHECK(std::abs(r.fitted.a2 * k) / std::abs(c.a4) < 1e-6);
        CHECK(rel(r.fitted.a4 * k, c.a4) < 1e-6);
        auto w = slaved_taylor(r, 3);
        CHECK(w[2][3] == Approx(extensible_w3_amplitude(m1)).epsilon(1e-5).scale(0));
    }
}

TEST_CASE("extensible rod approaches the Euler rod when stiff") {
    // closed forms in units of L g / (pi^2 k): the Euler rod has a4 = 1/64 at buckling
    double prev = 1.0;
    for (double m2 : {1e2, 1e4, 1e6}) {
        auto [lo, hi] = extensible_critical_mu1(m2);
        auto c = *extensible_rod(lo, m2).closed_form_coeffs;
        double dev = std::abs(c.a4 - 1.0 / 64.0);
        CHECK(dev < prev);
        prev = dev;
        (void)hi;
    }
    CHECK(prev < 1e-5);
    auto [lo, hi] = extensible_critical_mu1(1e4);
    auto fx = extensible_rod(lo, 1e4);
    auto r = run(fx, 0.005, 0.05);
    CHECK(r.fitted.a4 * fx.closed_form_scale == Approx(1.0 / 64.0).epsilon(1e-3).scale(0));
    CHECK(extensible_w3_amplitude(0.0) == Approx(euler_w3_amplitude()).scale(0));
    (void)hi;
}
