#include "ringbif/shapes.hpp"

#include <cmath>
#include <string>

#include "ringbif/errors.hpp"
#include "ringbif/landau.hpp"
#include "ringbif/params.hpp"

namespace ringbif::shapes {

namespace {
constexpr double pi = kPi;
}

LinearMode linear_mode(int n, double mu1) {
    if (n < 2) throw DomainError("mode number must be >= 2");
    if (!(mu1 >= 0.0) || !(mu1 < n * n - 1.0)) throw DomainError("mu1 outside [0, n^2-1)");
    LinearMode m;
    m.n = n;
    m.theta_amp = -(2.0 * pi / n) * (n * n - mu1 - 1.0) * (1.0 + mu1);
    m.xi_amp = n;
    m.eta_amp = 1.0;
    return m;
}

double linearized_residual(const LinearMode& mode, double mu1, int samples) {
    const double mu2 = landau::critical_mu2(mode.n, mu1);
    const double w = 2.0 * pi * mode.n;
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        double s = static_cast<double>(i) / samples;
        double sn = std::sin(w * s), cs = std::cos(w * s);
        double th1 = mode.theta_amp * w * cs, th2 = -mode.theta_amp * w * w * sn;
        double xi = mode.xi_amp * sn, dxi = mode.xi_amp * w * cs;
        double eta = mode.eta_amp * cs, deta = -mode.eta_amp * w * sn;
        double r1 = th2 - 2.0 * pi * mu1 * mu2 / (1.0 + mu1) * xi;
        double r2 = deta + 2.0 * pi * xi;
        double r3 = dxi + th1 / (2.0 * pi * (1.0 + mu1)) - 2.0 * pi * (1.0 + mu1) * eta;
        worst = std::max({worst, std::abs(r1) / (w * w), std::abs(r2) / w, std::abs(r3) / w});
    }
    return worst;
}

AsymptoticShapeCoeffs asymptotic_coeffs(double m1) {
    if (!(m1 >= 0.0) || !(m1 < 3.0)) throw DomainError("mu1 outside [0, 3)");
    AsymptoticShapeCoeffs c;
    c.linear = linear_mode(2, m1);
    const double p2 = pi * pi, p3 = p2 * pi;
    const double u = m1 + 1.0, d = m1 - 3.0;

    c.theta2 = p2 / 16.0 * d * u * u * (5.0 * m1 - 3.0);
    c.xi2 = pi / 2.0 * d * u;
    c.eta2 = 5.0 / 8.0 * pi * d * u;
    c.eta2_const = -pi * d;

    const double den = 4.0 * (-m1 + 24.0 * pi + 3.0) * (p2 * d * d * u * u + 5.0);
    c.b11 = -p3 * d * d * u * u / den *
            (m1 * (-6.0 * m1 * m1 + m1 - 90.0) + 4.0 * pi * (m1 * (80.0 * m1 - 93.0) + 99.0) + 63.0);
    c.b12 = 7.0 / 768.0 * p3 * d * d * u * u * u * (13.0 * m1 - 3.0);
    c.b21 = -p2 * d * d * u / den *
            (-8.0 * p3 * d * (m1 * (20.0 * m1 - 33.0) + 27.0) * u * u +
             p2 * d * (m1 * (m1 * (3.0 * m1 - 1.0) + 33.0) - 27.0) * u * u + 3.0 * u * u +
             32.0 * pi * (3.0 - 5.0 * m1));
    c.b22 = 7.0 / 128.0 * p2 * d * u * u * (7.0 * m1 - 9.0);
    c.b31 = p2 * d * d * u / den *
            (12.0 * p3 * d * (13.0 * m1 - 3.0) * u * u - p2 * d * (m1 * (m1 + 24.0) - 9.0) * u * u +
             6.0 * u * u + 64.0 * pi * (3.0 - 5.0 * m1));
    c.b32 = 13.0 / 256.0 * p2 * u * u * (7.0 * m1 - 9.0) * d;
    return c;
}

AsymptoticTerms asymptotic_terms(double mu1, double L, int num_modes) {
    if (num_modes < 6) throw DomainError("asymptotic_state needs at least 6 harmonics of 2 pi S/L");
    auto c = asymptotic_coeffs(mu1);
    AsymptoticTerms t{FourierState(num_modes, L, 0.0), FourierState(num_modes, L, 0.0),
                      FourierState(num_modes, L, 0.0)};
    t.v.theta.sin[2] = c.linear.theta_amp;
    t.v.xi.sin[2] = L * c.linear.xi_amp;
    t.v.eta.cos[2] = L * c.linear.eta_amp;

    t.w2.theta.sin[4] = c.theta2;
    t.w2.xi.sin[4] = L * c.xi2;
    t.w2.eta.cos[4] = L * c.eta2;
    t.w2.eta.cos[0] = L * c.eta2_const;

    t.w3.theta.sin[2] = c.b11;
    t.w3.theta.sin[6] = c.b12;
    t.w3.xi.sin[2] = L * c.b21;
    t.w3.xi.sin[6] = L * c.b22;
    t.w3.eta.cos[2] = L * c.b31;
    t.w3.eta.cos[6] = L * c.b32;
    return t;
}

FourierState asymptotic_state(double mu1, double alpha, double L, int num_modes) {
    auto t = asymptotic_terms(mu1, L, num_modes);
    FourierState s = FourierState::circular(mu1, num_modes, L);
    double a2 = alpha * alpha, a3 = a2 * alpha;
    auto combine = [&](SeriesBank& out, const SeriesBank& v, const SeriesBank& w2, const SeriesBank& w3) {
        for (int j = 0; j <= num_modes; ++j) {
            out.sin[j] = alpha * v.sin[j] + a2 * w2.sin[j] + a3 * w3.sin[j];
            out.cos[j] = alpha * v.cos[j] + a2 * w2.cos[j] + a3 * w3.cos[j];
        }
    };
    combine(s.theta, t.v.theta, t.w2.theta, t.w3.theta);
    combine(s.xi, t.v.xi, t.w2.xi, t.w3.xi);
    combine(s.eta, t.v.eta, t.w2.eta, t.w3.eta);
    return s;
}

ShapeProfile to_cartesian(const FourierState& state, int samples) {
    if (samples < 16) throw DomainError("to_cartesian needs at least 16 samples");
    auto f = sample_fields(state, samples);
    ShapeProfile prof;
    prof.samples.reserve(samples + 1);
    for (int i = 0; i < samples; ++i) {
        double c = std::cos(f.theta[i]), s = std::sin(f.theta[i]);
        prof.samples.push_back({f.s[i], f.xi[i] * c - f.eta[i] * s, f.xi[i] * s + f.eta[i] * c});
    }
    // closing sample evaluated at S = L, not copied
    const double L = state.length;
    const double w = 2.0 * kPi / L;
    double th = w * L + eval_series(state.theta, w, L);
    double xi = eval_series(state.xi, w, L);
    double eta = -state.radius + eval_series(state.eta, w, L);
    ProfileSample end{L, xi * std::cos(th) - eta * std::sin(th), xi * std::sin(th) + eta * std::cos(th)};
    prof.samples.push_back(end);
    prof.closure_gap = std::hypot(end.x - prof.samples.front().x, end.y - prof.samples.front().y);
    prof.closed = prof.closure_gap < 1e-8 * L;
    if (!prof.closed)
        prof.warnings.push_back("profile not closed: gap " + std::to_string(prof.closure_gap) +
                                " (gauge or truncation)");
    prof.area = shoelace_area(prof);
    return prof;
}

double enclosed_area(double mu1, double alpha, double L) {
    if (!(mu1 >= 0.0)) throw DomainError("mu1 must be non-negative");
    return L * L / (4.0 * pi * (1.0 + mu1) * (1.0 + mu1)) *
           (1.0 - 2.0 * pi * pi * alpha * alpha * (2.0 * mu1 * mu1 * mu1 - mu1 * mu1 + 3.0));
}

double state_area(const FourierState& state, int quadrature) {
    auto f = sample_fields(state, quadrature);
    double acc = 0.0;
    for (int i = 0; i < quadrature; ++i)
        acc += f.xi[i] * (f.xi[i] * f.dtheta[i] + f.deta[i]) + f.eta[i] * (f.eta[i] * f.dtheta[i] - f.dxi[i]);
    return 0.5 * acc * state.length / quadrature;
}

double l2_pairing(const FourierState& a, const FourierState& b) {
    if (a.num_modes != b.num_modes) throw DomainError("l2_pairing: mode count mismatch");
    const double L = a.length;
    double acc = 0.0;
    auto add = [&](const SeriesBank& x, const SeriesBank& y, double scale) {
        acc += x.cos[0] * y.cos[0] / (scale * scale);
        for (std::size_t j = 1; j < x.sin.size(); ++j)
            acc += 0.5 * (x.sin[j] * y.sin[j] + x.cos[j] * y.cos[j]) / (scale * scale);
    };
    add(a.theta, b.theta, 1.0);
    add(a.xi, b.xi, L);
    add(a.eta, b.eta, L);
    return acc * L;
}

}  // namespace ringbif::shapes
