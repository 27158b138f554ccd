#pragma once

#include <optional>

namespace ringbif {

inline constexpr double kPi = 3.14159265358979323846;

struct DimensionalParams {
    double k = 1.0;  // bending modulus
    double b = 1.0;  // stretching modulus
    double L = 1.0;  // referential length
    double p = 0.0;  // pressure
};

// mu1 = pL/(2 pi b), mu2 = b L^2 / k.
struct ModelParams {
    double mu1 = 0.0;
    double mu2 = 1.0;
    std::optional<DimensionalParams> dimensional;

    double length() const { return dimensional ? dimensional->L : 1.0; }
};

ModelParams make_params(double mu1, double mu2);
ModelParams params_from_dimensional(double k, double b, double L, double p);

// Moduli and pressure that realize (mu1, mu2) for a chosen k and L.
DimensionalParams to_dimensional(const ModelParams& params, double k = 1.0, double L = 1.0);

struct CircularSolution {
    double radius = 0.0;
    double area = 0.0;
    double stretch = 0.0;
};

CircularSolution circular_solution(const ModelParams& params);
CircularSolution circular_solution(double mu1, double L = 1.0);

}  // namespace ringbif
