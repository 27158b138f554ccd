#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ringbif/functional.hpp"
#include "ringbif/params.hpp"
#include "ringbif/types.hpp"

namespace ringbif::examples {

struct ExampleFixture {
    std::string name;
    EnergyFunctional functional;
    std::function<double(double)> closed_form_g;  // may be empty
    std::function<double(double)> closed_form_h;  // slaved coordinate, finite-dim example only
    std::optional<LandauPolynomial> closed_form_coeffs;
    std::vector<std::pair<std::string, double>> critical_parameters;
    Vec reduction_direction;       // the mode the closed forms are expanded along
    double closed_form_scale = 1.0;  // closed-form units per engine energy unit
    int harmonics = 0;             // cosine-basis size, 0 for the finite-dim example
};

// W(x, y) = y^2 + 2 y x^2 + x^2 y^2.
ExampleFixture finite_dim_example();

// theta(s) = c_0/sqrt(2) + sum_j c_j cos(j pi s / L), energy int k/2 theta'^2 + F (cos theta - 1).
ExampleFixture euler_elastica(double F, double k = 1.0, double L = kPi, int harmonics = 12);

// Extensible rod with lambda eliminated; k = L = 1, b = pi^2 mu2_hat, F = mu1_hat b.
// Closed forms are in units of L g / (pi^2 k).
ExampleFixture extensible_rod(double mu1_hat, double mu2_hat, int harmonics = 12);

// Critical mu1_hat values on mu1_hat mu2_hat (1 - mu1_hat) = 1 (smaller root first).
std::pair<double, double> extensible_critical_mu1(double mu2_hat);

double euler_critical_force(double k, double L);

// Coefficient of cos(3 pi s / L) at O(alpha^3) in the slaved correction.
double euler_w3_amplitude();
double extensible_w3_amplitude(double mu1_hat);


}  // namespace ringbif::examples
