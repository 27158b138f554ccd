#include <cmath>

#include "doctest.h"
#include "ringbif/bvp.hpp"
#include "ringbif/errors.hpp"
#include "ringbif/landau.hpp"
#include "ringbif/params.hpp"
#include "ringbif/shapes.hpp"

using namespace ringbif;
using namespace ringbif::shapes;
using doctest::Approx;

TEST_CASE("linear mode amplitudes") {
    auto m = linear_mode(2, 0.0);
    CHECK(m.theta_amp == Approx(-3.0 * kPi).epsilon(1e-15).scale(0));
    CHECK(m.eta_amp == 1.0);
    CHECK(std::abs(linear_mode(2, 3.0 - 1e-9).theta_amp) < 1e-7);
    auto m3 = linear_mode(3, 1.0);
    CHECK(m3.theta_amp == Approx(-(2.0 * kPi / 3.0) * 7.0 * 2.0).scale(0));
    CHECK_THROWS_AS(linear_mode(2, 3.0), DomainError);
    CHECK_THROWS_AS(linear_mode(2, -0.1), DomainError);
    CHECK_THROWS_AS(linear_mode(1, 0.5), DomainError);
}

TEST_CASE("linear mode solves the linearized equations") {
    for (int n : {2, 3, 4})
        for (double m : {0.05, 0.1, 0.3, 1.0, 2.5})
            if (m < n * n - 1.0) CHECK(linearized_residual(linear_mode(n, m), m) < 1e-10);
    // with the opposite xi sign the tangential equation is violated
    auto flipped = linear_mode(2, 0.3);
    flipped.xi_amp = -flipped.xi_amp;
    CHECK(linearized_residual(flipped, 0.3) > 1.0);
}

TEST_CASE("asymptotic state at zero amplitude is the circle") {
    for (double m : {0.0, 0.3, 2.0}) {
        auto s = asymptotic_state(m, 0.0, 1.0, 12);
        CHECK(s.radius == Approx(circular_solution(m).radius).scale(0));
        auto f = sample_fields(s, 32);
        for (int i = 0; i < 32; ++i) {
            CHECK(f.theta[i] == Approx(2.0 * kPi * f.s[i]).epsilon(1e-14).scale(1.0));
            CHECK(std::abs(f.xi[i]) < 1e-15);
            CHECK(f.eta[i] == Approx(-1.0 / (2.0 * kPi * (1.0 + m))).epsilon(1e-14).scale(0));
        }
    }
}

TEST_CASE("second-order constant shift of eta") {
    for (double L : {1.0, 2.0}) {
        for (double m : {0.0, 0.3, 1.2}) {
            const double a = 0.01;
            auto s = asymptotic_state(m, a, L);
            CHECK(s.eta.cos[0] == Approx(-kPi * a * a * (m - 3.0) * L).epsilon(1e-12).scale(0));
            CHECK(asymptotic_coeffs(m).eta2_const == Approx(-kPi * (m - 3.0)).epsilon(1e-14).scale(0));
        }
    }
}

TEST_CASE("higher-order corrections are orthogonal to the kernel mode") {
    for (double m : {0.1, 0.3, 1.0}) {
        auto t = asymptotic_terms(m);
        const double vv = l2_pairing(t.v, t.v);
        CHECK(vv > 0.0);
        CHECK(std::abs(l2_pairing(t.w2, t.v)) < 1e-12 * vv);
        CHECK(std::abs(l2_pairing(t.w3, t.v)) < 1e-12 * std::sqrt(vv * l2_pairing(t.w3, t.w3)));
        // the series is their sum
        const double a = 0.03;
        auto s = asymptotic_state(m, a);
        CHECK(s.theta.sin[2] == Approx(a * t.v.theta.sin[2] + a * a * t.w2.theta.sin[2] + a * a * a * t.w3.theta.sin[2]).scale(0));
        CHECK(s.xi.sin[6] == Approx(a * a * a * t.w3.xi.sin[6]).scale(0));
    }
}

TEST_CASE("circular profile through the bottom point") {
    auto prof = to_cartesian(FourierState::circular(0.0, 8, 2.0 * kPi), 64);
    CHECK(std::abs(prof.samples[0].x) < 1e-15);
    CHECK(prof.samples[0].y == Approx(-1.0).epsilon(1e-14).scale(0));
    for (const auto& p : prof.samples) CHECK(std::hypot(p.x, p.y) == Approx(1.0).epsilon(1e-13).scale(0));
    CHECK(prof.samples.size() == 65);
    CHECK(prof.samples.back().s == Approx(2.0 * kPi).scale(0));
}

TEST_CASE("two-lobe profile symmetry") {
    auto prof = to_cartesian(asymptotic_state(0.3, 0.08), 256);
    REQUIRE(prof.closed);
    // point symmetry about the center: half a ring length apart
    double cx = 0.0, cy = 0.0;
    for (int i = 0; i < 256; ++i) {
        cx += prof.samples[i].x / 256.0;
        cy += prof.samples[i].y / 256.0;
    }
    for (int i = 0; i < 128; ++i) {
        const auto& a = prof.samples[i];
        const auto& b = prof.samples[i + 128];
        CHECK(a.x - cx == Approx(-(b.x - cx)).scale(1e-3).epsilon(1e-9));
        CHECK(a.y - cy == Approx(-(b.y - cy)).scale(1e-3).epsilon(1e-9));
    }
    // distinct axes: distance from the center oscillates twice per turn
    double rmin = 1e9, rmax = 0.0;
    for (const auto& p : prof.samples) {
        double r = std::hypot(p.x - cx, p.y - cy);
        rmin = std::min(rmin, r);
        rmax = std::max(rmax, r);
    }
    CHECK(rmax - rmin > 0.1 * rmax);
}

TEST_CASE("profile closure and sampling guard") {
    for (double L : {1.0, 3.0}) {
        auto prof = to_cartesian(asymptotic_state(0.3, 0.05, L), 128);
        CHECK(prof.closure_gap < 1e-8 * L);
        CHECK(prof.closed);
        CHECK(prof.warnings.empty());
    }
    CHECK_THROWS_AS(to_cartesian(asymptotic_state(0.3, 0.05), 15), DomainError);
    // two-fold symmetry closes any even-mode state, even far from equilibrium
    auto s = asymptotic_state(0.3, 0.05);
    s.theta.sin[1] += 0.3;
    s.theta.cos[2] += 0.2;
    CHECK(to_cartesian(s, 128).closure_gap < 1e-12);
}

TEST_CASE("enclosed area formula") {
    CHECK(enclosed_area(0.0, 0.05) == Approx(1.0 / (4.0 * kPi) * (1.0 - 2.0 * kPi * kPi * 0.0025 * 3.0)).epsilon(1e-14).scale(0));
    CHECK(enclosed_area(0.0, 0.05) == Approx(0.0677965).epsilon(1e-6).scale(0));
    for (double m : {0.0, 0.5, 2.0}) {
        double R = circular_solution(m, 2.0).radius;
        CHECK(enclosed_area(m, 0.0, 2.0) == Approx(kPi * R * R).epsilon(1e-14).scale(0));
    }
}

TEST_CASE("shoelace area converges to the formula") {
    for (double m : {0.1, 0.3, 0.8}) {
        auto err = [&](double a) {
            return std::abs(shoelace_area(to_cartesian(asymptotic_state(m, a), 512)) - enclosed_area(m, a));
        };
        double e1 = err(0.04), e2 = err(0.02), e3 = err(0.01);
        CHECK(e1 / e2 >= 8.0);
        CHECK(e2 / e3 >= 8.0);
    }
}

TEST_CASE("area functional in field form agrees with the shoelace integral") {
    for (double a : {0.0, 0.02, 0.06}) {
        auto s = asymptotic_state(0.3, a);
        CHECK(state_area(s) == Approx(shoelace_area(to_cartesian(s, 512))).epsilon(1e-12).scale(0));
    }
}

TEST_CASE("linear mode leaves the area unchanged to first order") {
    const double m = 0.3;
    auto t = asymptotic_terms(m);
    auto circle = FourierState::circular(m, t.v.num_modes);
    const double A0 = kPi * circle.radius * circle.radius;
    auto with = [&](double a) {
        FourierState s = circle;
        for (std::size_t j = 0; j < s.theta.sin.size(); ++j) {
            s.theta.sin[j] += a * t.v.theta.sin[j];
            s.xi.sin[j] += a * t.v.xi.sin[j];
            s.eta.cos[j] += a * t.v.eta.cos[j];
        }
        return shoelace_area(to_cartesian(s, 256));
    };
    for (double a : {1e-3, 1e-4}) {
        CHECK(std::abs(with(a) - with(-a)) / (2.0 * a) < 1e-10);
        CHECK(std::abs(with(a) - A0) < 1e3 * a * a * A0);
    }
}

TEST_CASE("series residual in the equilibrium equations") {
    // at the tricritical point the series is consistent through third order
    const double mt = landau::tricritical_mu1();
    auto res = [](double m, double a) {
        return bvp::residual(asymptotic_state(m, a), make_params(m, landau::critical_mu2(2, m))).lpNorm<Eigen::Infinity>();
    };
    CHECK(res(mt, 0.04) / res(mt, 0.02) >= 12.0);
    CHECK(res(mt, 0.02) / res(mt, 0.01) >= 12.0);
    // elsewhere on the curve it is at least third-order accurate
    for (double m : {0.2, 0.5, 1.0}) CHECK(res(m, 0.02) / res(m, 0.01) >= 6.0);
}
