#include "ringbif/functional.hpp"

#include <cmath>
#include <string>

#include "ringbif/errors.hpp"

namespace ringbif {

void validate_functional(const EnergyFunctional& f, double gtol) {
    if (f.dimension <= 0 || f.trivial_point.size() != f.dimension)
        throw DomainError(f.name + ": trivial point has wrong dimension");
    if (!f.energy) throw DomainError(f.name + ": energy map missing");
    double e0 = f.energy(f.trivial_point);
    if (std::abs(e0) > 1e-12) throw DomainError(f.name + ": energy at trivial point is not normalized to 0");
    Vec g = evaluate_gradient(f, f.trivial_point);
    if (g.lpNorm<Eigen::Infinity>() > gtol)
        throw DomainError(f.name + ": trivial point is not an equilibrium (|grad| = " +
                          std::to_string(g.lpNorm<Eigen::Infinity>()) + ")");
}

Vec central_gradient(const EnergyFunctional& f, const Vec& x, double h) {
    Vec g(f.dimension);
    Vec y = x;
    for (int i = 0; i < f.dimension; ++i) {
        double hi = h * std::max(1.0, std::abs(x[i]));
        y[i] = x[i] + hi;
        double ep = f.energy(y);
        y[i] = x[i] - hi;
        double em = f.energy(y);
        y[i] = x[i];
        g[i] = (ep - em) / (2.0 * hi);
    }
    return g;
}

Vec evaluate_gradient(const EnergyFunctional& f, const Vec& x) {
    if (f.gradient) return f.gradient(x);
    return central_gradient(f, x, f.fd_step);
}

Mat assemble_hessian(const EnergyFunctional& f, const Vec& at, double h_fd) {
    const int n = f.dimension;
    Mat H(n, n);
    if (f.hessian) {
        H = f.hessian(at);
    } else {
        Vec y = at;
        for (int j = 0; j < n; ++j) {
            double hj = h_fd * std::max(1.0, std::abs(at[j]));
            y[j] = at[j] + hj;
            Vec gp = evaluate_gradient(f, y);
            y[j] = at[j] - hj;
            Vec gm = evaluate_gradient(f, y);
            y[j] = at[j];
            H.col(j) = (gp - gm) / (2.0 * hj);
        }
    }
    double scale = H.cwiseAbs().maxCoeff();
    double asym = (H - H.transpose()).cwiseAbs().maxCoeff();
    if (scale > 0.0 && asym > 1e-6 * scale)
        throw DiscretizationError(f.name + ": Hessian asymmetry " + std::to_string(asym / scale) +
                                  " exceeds 1e-6 relative");
    return 0.5 * (H + H.transpose());
}

Mat assemble_hessian(const EnergyFunctional& f, double h_fd) { return assemble_hessian(f, f.trivial_point, h_fd); }

}  // namespace ringbif
