#include "ringbif/fourier.hpp"

#include <cmath>
#include <complex>

#include "ringbif/errors.hpp"
#include "ringbif/params.hpp"
#include "ringbif/types.hpp"

namespace ringbif {

FourierState FourierState::circular(double mu1, int num_modes, double L) {
    if (num_modes < 1) throw DomainError("num_modes must be positive");
    return FourierState(num_modes, L, circular_solution(mu1, L).radius);
}

void FourierState::validate() const {
    const std::size_t n = static_cast<std::size_t>(num_modes) + 1;
    for (const SeriesBank* b : {&theta, &xi, &eta}) {
        if (b->sin.size() != n || b->cos.size() != n)
            throw DomainError("FourierState banks must hold num_modes + 1 harmonics");
    }
    if (theta.cos[0] != 0.0) throw DomainError("theta perturbation must have zero mean (gauge)");
    if (!(length > 0.0)) throw DomainError("FourierState length must be positive");
}

double eval_series(const SeriesBank& bank, double omega, double s) {
    double v = 0.0;
    for (std::size_t j = 0; j < bank.sin.size(); ++j) {
        double a = omega * static_cast<double>(j) * s;
        v += bank.sin[j] * std::sin(a) + bank.cos[j] * std::cos(a);
    }
    return v;
}

double eval_series_derivative(const SeriesBank& bank, double omega, double s) {
    double v = 0.0;
    for (std::size_t j = 1; j < bank.sin.size(); ++j) {
        double w = omega * static_cast<double>(j);
        double a = w * s;
        v += w * (bank.sin[j] * std::cos(a) - bank.cos[j] * std::sin(a));
    }
    return v;
}

FieldSamples sample_fields(const FourierState& state, int samples) {
    state.validate();
    if (samples < 1) throw DomainError("need at least one sample");
    const double L = state.length;
    const double omega = 2.0 * kPi / L;
    const int N = state.num_modes;
    FieldSamples f;
    f.s.resize(samples);
    for (auto* v : {&f.theta, &f.dtheta, &f.xi, &f.dxi, &f.eta, &f.deta}) v->assign(samples, 0.0);

    std::vector<double> sn(N + 1), cs(N + 1);
    for (int i = 0; i < samples; ++i) {
        double s = L * i / samples;
        f.s[i] = s;
        for (int j = 0; j <= N; ++j) {
            sn[j] = std::sin(omega * j * s);
            cs[j] = std::cos(omega * j * s);
        }
        auto accumulate = [&](const SeriesBank& b, double& val, double& der) {
            for (int j = 0; j <= N; ++j) {
                val += b.sin[j] * sn[j] + b.cos[j] * cs[j];
                der += omega * j * (b.sin[j] * cs[j] - b.cos[j] * sn[j]);
            }
        };
        f.theta[i] = omega * s;
        f.dtheta[i] = omega;
        f.eta[i] = -state.radius;
        accumulate(state.theta, f.theta[i], f.dtheta[i]);
        accumulate(state.xi, f.xi[i], f.dxi[i]);
        accumulate(state.eta, f.eta[i], f.deta[i]);
    }
    return f;
}

std::vector<double> spectral_derivative(const std::vector<double>& f, double length) {
    const int M = static_cast<int>(f.size());
    std::vector<std::complex<double>> c(M);
    for (int k = 0; k < M; ++k) {
        std::complex<double> acc = 0.0;
        for (int i = 0; i < M; ++i) acc += f[i] * std::polar(1.0, -2.0 * kPi * k * i / M);
        c[k] = acc / static_cast<double>(M);
    }
    std::vector<double> df(M, 0.0);
    for (int k = 0; k < M; ++k) {
        int kk = k <= M / 2 ? k : k - M;
        if (2 * k == M) kk = 0;  // drop Nyquist
        c[k] *= std::complex<double>(0.0, 2.0 * kPi * kk / length);
    }
    for (int i = 0; i < M; ++i) {
        std::complex<double> acc = 0.0;
        for (int k = 0; k < M; ++k) acc += c[k] * std::polar(1.0, 2.0 * kPi * k * i / M);
        df[i] = acc.real();
    }
    return df;
}

double coefficient_distance(const FourierState& a, const FourierState& b) {
    if (a.num_modes != b.num_modes) throw DomainError("coefficient_distance: mode count mismatch");
    const double L = a.length;
    double acc = 0.0;
    auto add = [&](const SeriesBank& x, const SeriesBank& y, double scale) {
        for (std::size_t j = 0; j < x.sin.size(); ++j) {
            double ds = (x.sin[j] - y.sin[j]) / scale, dc = (x.cos[j] - y.cos[j]) / scale;
            acc += ds * ds + dc * dc;
        }
    };
    add(a.theta, b.theta, 1.0);
    add(a.xi, b.xi, L);
    add(a.eta, b.eta, L);
    // eta's constant is relative to each state's own base radius
    double dr = (a.radius - b.radius) / L;
    double de0 = (a.eta.cos[0] - b.eta.cos[0]) / L;
    acc += (de0 - dr) * (de0 - dr) - de0 * de0;
    return std::sqrt(acc);
}

double shoelace_area(const ShapeProfile& profile) {
    const auto& smp = profile.samples;
    if (smp.size() < 3) return 0.0;
    int M = static_cast<int>(smp.size()) - 1;
    double L = smp.back().s - smp.front().s;
    std::vector<double> x(M), y(M);
    for (int i = 0; i < M; ++i) {
        x[i] = smp[i].x;
        y[i] = smp[i].y;
    }
    auto dx = spectral_derivative(x, L), dy = spectral_derivative(y, L);
    double acc = 0.0;
    for (int i = 0; i < M; ++i) acc += x[i] * dy[i] - y[i] * dx[i];
    return 0.5 * acc * L / M;
}

int determinacy_degree(double a2, double a4, double a6, double scale2, double scale4, double scale6,
                       double rel_tol) {
    if (std::abs(a2) > rel_tol * scale2) return 2;
    if (std::abs(a4) > rel_tol * scale4) return 4;
    if (std::abs(a6) > rel_tol * scale6) return 6;
    throw DeterminacyFailure("reduced function is not 6-determined: a2, a4, a6 all vanish");
}

std::string to_string(TransitionOrder order) {
    switch (order) {
        case TransitionOrder::SecondOrder: return "second";
        case TransitionOrder::FirstOrder: return "first";
        case TransitionOrder::Tricritical: return "tricritical";
        case TransitionOrder::NoBifurcation: return "none";
    }
    return "none";
}

}  // namespace ringbif
