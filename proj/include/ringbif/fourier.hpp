#pragma once

#include <vector>

namespace ringbif {

// Sine and cosine amplitudes for harmonics 0..N of 2 pi S / L.
struct SeriesBank {
    std::vector<double> sin;
    std::vector<double> cos;

    explicit SeriesBank(int num_modes = 0) : sin(num_modes + 1, 0.0), cos(num_modes + 1, 0.0) {}
};

// Perturbation of the circular branch:
//   theta = 2 pi S/L + theta~,  xi = xi~,  eta = -R + eta~.
struct FourierState {
    int num_modes = 0;
    double length = 1.0;
    double radius = 0.0;  // base circle radius
    SeriesBank theta, xi, eta;

    FourierState() = default;
    FourierState(int n, double L, double R) : num_modes(n), length(L), radius(R), theta(n), xi(n), eta(n) {}

    static FourierState circular(double mu1, int num_modes, double L = 1.0);

    void validate() const;
};

// Full fields (base included) and their S-derivatives on S_i = i L / M.
struct FieldSamples {
    std::vector<double> s;
    std::vector<double> theta, dtheta, xi, dxi, eta, deta;
};

FieldSamples sample_fields(const FourierState& state, int samples);

// Evaluate sum_j (a_j sin(w j S) + b_j cos(w j S)) and its derivative.
double eval_series(const SeriesBank& bank, double omega, double s);
double eval_series_derivative(const SeriesBank& bank, double omega, double s);

// Spectral derivative of periodic samples f(i L / M), i = 0..M-1.
std::vector<double> spectral_derivative(const std::vector<double>& f, double length);

// L2 distance of perturbation coefficients, (theta, xi/L, eta/L) weighted equally.
double coefficient_distance(const FourierState& a, const FourierState& b);

}  // namespace ringbif
