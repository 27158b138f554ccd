#include "ringbif/fixtures.hpp"

#include <cmath>
#include <memory>
#include <string>

#include "ringbif/errors.hpp"

namespace ringbif::examples {

namespace {

constexpr double pi = kPi;

// Cosine series on [0, L] with Neumann ends, integrated by the endpoint-weighted
// trapezoid rule (the periodic rule for the even extension).
struct CosineRod {
    int N;
    double L;
    int M;
    Mat val, der;  // (M+1) x (N+1)
    Vec wq;

    CosineRod(int harmonics, double length) : N(harmonics), L(length), M(16 * (harmonics + 1)) {
        val.resize(M + 1, N + 1);
        der.resize(M + 1, N + 1);
        wq = Vec::Constant(M + 1, L / M);
        wq[0] = wq[M] = 0.5 * L / M;
        for (int i = 0; i <= M; ++i) {
            double s = L * i / M;
            val(i, 0) = 1.0 / std::sqrt(2.0);
            der(i, 0) = 0.0;
            for (int j = 1; j <= N; ++j) {
                double w = j * pi / L;
                val(i, j) = std::cos(w * s);
                der(i, j) = -w * std::sin(w * s);
            }
        }
    }
};

// Density k/2 t'^2 + V(t) with V(0) = V'(0) = 0.
EnergyFunctional rod_functional(const std::string& name, int harmonics, double L, double k,
                                std::function<double(double)> V, std::function<double(double)> dV,
                                std::function<double(double)> d2V) {
    auto rod = std::make_shared<CosineRod>(harmonics, L);
    EnergyFunctional f;
    f.name = name;
    f.dimension = harmonics + 1;
    f.trivial_point = Vec::Zero(f.dimension);
    f.energy = [rod, k, V](const Vec& c) {
        Vec t = rod->val * c, dt = rod->der * c;
        double acc = 0.0;
        for (int i = 0; i <= rod->M; ++i) acc += rod->wq[i] * (0.5 * k * dt[i] * dt[i] + V(t[i]));
        return acc;
    };
    f.gradient = [rod, k, dV](const Vec& c) {
        Vec t = rod->val * c, dt = rod->der * c;
        Vec a(rod->M + 1), b(rod->M + 1);
        for (int i = 0; i <= rod->M; ++i) {
            a[i] = rod->wq[i] * k * dt[i];
            b[i] = rod->wq[i] * dV(t[i]);
        }
        return Vec(rod->der.transpose() * a + rod->val.transpose() * b);
    };
    f.hessian = [rod, k, d2V](const Vec& c) {
        Vec t = rod->val * c;
        Vec d(rod->M + 1);
        for (int i = 0; i <= rod->M; ++i) d[i] = rod->wq[i] * d2V(t[i]);
        Mat H = k * rod->der.transpose() * rod->wq.asDiagonal() * rod->der + rod->val.transpose() * d.asDiagonal() * rod->val;
        return H;
    };
    return f;
}

Vec first_mode(int harmonics) {
    Vec v = Vec::Zero(harmonics + 1);
    v[1] = 1.0;
    return v;
}

}  // namespace

ExampleFixture finite_dim_example() {
    ExampleFixture fx;
    fx.name = "finite_dim";
    EnergyFunctional& f = fx.functional;
    f.name = "finite_dim";
    f.dimension = 2;
    f.trivial_point = Vec::Zero(2);
    f.energy = [](const Vec& z) {
        double x = z[0], y = z[1];
        return y * y + 2.0 * y * x * x + x * x * y * y;
    };
    f.gradient = [](const Vec& z) {
        double x = z[0], y = z[1];
        Vec g(2);
        g << 4.0 * x * y + 2.0 * x * y * y, 2.0 * y + 2.0 * x * x + 2.0 * x * x * y;
        return g;
    };
    fx.closed_form_h = [](double x) { return -x * x / (1.0 + x * x); };
    fx.closed_form_g = [](double x) { return -std::pow(x, 4) / (1.0 + x * x); };
    LandauPolynomial p;
    p.a2 = 0.0;
    p.a4 = -1.0;
    p.a6 = 1.0;
    p.determinacy = 4;
    fx.closed_form_coeffs = p;
    fx.reduction_direction = Vec::Unit(2, 0);
    validate_functional(f);
    return fx;
}

double euler_critical_force(double k, double L) { return k * (pi / L) * (pi / L); }

ExampleFixture euler_elastica(double F, double k, double L, int harmonics) {
    if (!(F > 0.0) || !(k > 0.0) || !(L > 0.0)) throw DomainError("euler_elastica needs F, k, L > 0");
    if (harmonics < 3) throw DomainError("euler_elastica needs at least 3 harmonics");
    ExampleFixture fx;
    fx.name = "euler_elastica";
    fx.harmonics = harmonics;
    fx.functional = rod_functional(
        "euler_elastica", harmonics, L, k, [F](double t) { return F * (std::cos(t) - 1.0); },
        [F](double t) { return -F * std::sin(t); }, [F](double t) { return -F * std::cos(t); });
    LandauPolynomial p;
    p.a2 = pi * pi * k / (4.0 * L) - F * L / 4.0;
    p.a4 = F * L / 64.0;
    p.a6 = 0.0;
    double fcr = euler_critical_force(k, L);
    p.determinacy = std::abs(F - fcr) <= 1e-12 * fcr ? 4 : 2;
    fx.closed_form_coeffs = p;
    fx.critical_parameters = {{"F", fcr}};
    fx.reduction_direction = first_mode(harmonics);
    validate_functional(fx.functional);
    return fx;
}

std::pair<double, double> extensible_critical_mu1(double mu2_hat) {
    if (!(mu2_hat >= 4.0)) throw NoBifurcation("mode 1 cannot bifurcate when mu2_hat < 4");
    double disc = std::sqrt(1.0 - 4.0 / mu2_hat);
    return {0.5 * (1.0 - disc), 0.5 * (1.0 + disc)};
}

ExampleFixture extensible_rod(double mu1_hat, double mu2_hat, int harmonics) {
    if (!(mu2_hat > 4.0)) throw NoBifurcation("bL^2 <= 4 k pi^2: mode 1 cannot bifurcate");
    if (!(mu1_hat > 0.0) || !(mu1_hat < 1.0)) throw DomainError("mu1_hat must lie in (0, 1)");
    const double k = 1.0, L = 1.0;
    const double b = pi * pi * mu2_hat, F = mu1_hat * b;
    const double c = F * F / (2.0 * b);
    ExampleFixture fx;
    fx.name = "extensible_rod";
    fx.harmonics = harmonics;
    fx.functional = rod_functional(
        "extensible_rod", harmonics, L, k,
        [F, c](double t) { return F * (std::cos(t) - 1.0) - c * (std::cos(t) * std::cos(t) - 1.0); },
        [F, c](double t) { return -F * std::sin(t) + c * std::sin(2.0 * t); },
        [F, c](double t) { return -F * std::cos(t) + 2.0 * c * std::cos(2.0 * t); });
    const double m1 = mu1_hat, m2 = mu2_hat;
    LandauPolynomial p;
    p.a2 = 0.25 * (1.0 - m1 * m2 + m1 * m1 * m2);
    p.a4 = m1 * m2 * (1.0 - 4.0 * m1) / 64.0;
    p.a6 = (144.0 * std::pow(m1, 4) * m2 - 280.0 * std::pow(m1, 3) * m2 + m1 * m1 * (145.0 * m2 + 16.0) -
            m1 * (9.0 * m2 + 8.0) + 1.0) /
           (16384.0 * (m1 - 1.0) * (m1 - 1.0));
    double s2 = 0.25 * (1.0 + m1 * m2 + m1 * m1 * m2), s4 = m1 * m2 * (1.0 + 4.0 * m1) / 64.0;
    try {
        p.determinacy = determinacy_degree(p.a2, p.a4, p.a6, s2, s4, std::abs(p.a6) + 1e-300);
    } catch (const DeterminacyFailure&) {
        p.determinacy = 0;
    }
    fx.closed_form_coeffs = p;
    fx.closed_form_scale = L / (pi * pi * k);
    auto [lo, hi] = extensible_critical_mu1(mu2_hat);
    fx.critical_parameters = {{"mu1_hat_lower", lo}, {"mu1_hat_upper", hi}};
    fx.reduction_direction = first_mode(harmonics);
    validate_functional(fx.functional);
    return fx;
}

double euler_w3_amplitude() { return -1.0 / 192.0; }

double extensible_w3_amplitude(double mu1_hat) { return -(1.0 - 4.0 * mu1_hat) / (192.0 * (1.0 - mu1_hat)); }

}  // namespace ringbif::examples
