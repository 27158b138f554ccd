#include "ringbif/params.hpp"

#include <cmath>
#include <string>

#include "ringbif/errors.hpp"

namespace ringbif {

namespace {

void check_dimensionless(double mu1, double mu2) {
    if (!std::isfinite(mu1) || mu1 < 0.0)
        throw DomainError("mu1 must be finite and non-negative, got " + std::to_string(mu1));
    if (!std::isfinite(mu2) || mu2 <= 0.0)
        throw DomainError("mu2 must be finite and positive, got " + std::to_string(mu2));
}

}  // namespace

ModelParams make_params(double mu1, double mu2) {
    check_dimensionless(mu1, mu2);
    return ModelParams{mu1, mu2, std::nullopt};
}

ModelParams params_from_dimensional(double k, double b, double L, double p) {
    if (!(k > 0.0) || !(b > 0.0)) throw DomainError("moduli k and b must be positive");
    if (!(L > 0.0)) throw DomainError("length L must be positive");
    if (!(p >= 0.0)) throw DomainError("pressure p must be non-negative");
    ModelParams out;
    out.mu1 = p * L / (2.0 * kPi * b);
    out.mu2 = b * L * L / k;
    out.dimensional = DimensionalParams{k, b, L, p};
    return out;
}

DimensionalParams to_dimensional(const ModelParams& params, double k, double L) {
    if (!(k > 0.0) || !(L > 0.0)) throw DomainError("k and L must be positive");
    check_dimensionless(params.mu1, params.mu2);
    DimensionalParams d;
    d.k = k;
    d.L = L;
    d.b = params.mu2 * k / (L * L);
    d.p = 2.0 * kPi * d.b * params.mu1 / L;
    return d;
}

CircularSolution circular_solution(double mu1, double L) {
    if (!(mu1 >= 0.0)) throw DomainError("mu1 must be non-negative");
    if (!(L > 0.0)) throw DomainError("length L must be positive");
    CircularSolution c;
    c.radius = L / (2.0 * kPi * (1.0 + mu1));
    c.area = kPi * c.radius * c.radius;
    c.stretch = 1.0 / (1.0 + mu1);
    return c;
}

CircularSolution circular_solution(const ModelParams& params) {
    check_dimensionless(params.mu1, params.mu2);
    return circular_solution(params.mu1, params.length());
}

}  // namespace ringbif
