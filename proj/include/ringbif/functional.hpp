#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

namespace ringbif {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct EnergyFunctional {
    std::string name;
    int dimension = 0;
    std::function<double(const Vec&)> energy;
    std::function<Vec(const Vec&)> gradient;  // optional; central differences otherwise
    std::function<Mat(const Vec&)> hessian;   // optional; differences of the gradient otherwise
    Vec trivial_point;
    std::vector<Vec> symmetry_modes;
    double fd_step = 1e-5;
};

// Throws DomainError if the trivial point is not an equilibrium with zero energy.
void validate_functional(const EnergyFunctional& f, double gtol = 1e-10);

Vec central_gradient(const EnergyFunctional& f, const Vec& x, double h);
Vec evaluate_gradient(const EnergyFunctional& f, const Vec& x);

// Symmetrized Hessian from central differences of the gradient (or the supplied Hessian).
// Throws DiscretizationError when the raw asymmetry exceeds 1e-6 relative.
Mat assemble_hessian(const EnergyFunctional& f, const Vec& at, double h_fd);
Mat assemble_hessian(const EnergyFunctional& f, double h_fd);

}  // namespace ringbif
