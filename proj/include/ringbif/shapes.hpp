#pragma once

#include "ringbif/fourier.hpp"
#include "ringbif/types.hpp"

namespace ringbif::shapes {

// theta1 = theta_amp sin(2 pi n S/L), xi1/L = xi_amp sin(.), eta1/L = eta_amp cos(.)
struct LinearMode {
    int n = 2;
    double theta_amp = 0.0;
    double xi_amp = 0.0;
    double eta_amp = 1.0;
};

LinearMode linear_mode(int n, double mu1);

// Max-norm residual of the linearized equilibrium equations at mu2 = critical_mu2(n, mu1), L = 1.
double linearized_residual(const LinearMode& mode, double mu1, int samples = 64);

struct AsymptoticShapeCoeffs {
    LinearMode linear;
    double theta2 = 0.0, xi2 = 0.0, eta2 = 0.0, eta2_const = 0.0;  // harmonic 2 of 4 pi S/L
    double b11 = 0.0, b12 = 0.0, b21 = 0.0, b22 = 0.0, b31 = 0.0, b32 = 0.0;
};

AsymptoticShapeCoeffs asymptotic_coeffs(double mu1);

// Series through O(alpha^3) about the circle; num_modes counts harmonics of 2 pi S/L (>= 6).
FourierState asymptotic_state(double mu1, double alpha, double L = 1.0, int num_modes = 24);

// Orders of the series separately: v, w2, w3 in the same layout (radius 0, no base).
struct AsymptoticTerms {
    FourierState v, w2, w3;
};
AsymptoticTerms asymptotic_terms(double mu1, double L = 1.0, int num_modes = 24);

ShapeProfile to_cartesian(const FourierState& state, int samples);

double enclosed_area(double mu1, double alpha, double L = 1.0);

// Area functional in (theta, xi, eta) form by trapezoid quadrature.
double state_area(const FourierState& state, int quadrature = 256);

// L2 pairing on the coefficient triple (theta, xi/L, eta/L) of two perturbations.
double l2_pairing(const FourierState& a, const FourierState& b);

}  // namespace ringbif::shapes
