#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ringbif/fourier.hpp"
#include "ringbif/functional.hpp"
#include "ringbif/params.hpp"

namespace ringbif::bvp {

// Unknowns: theta, xi sines and eta cosines on harmonics j = 1..N of 4 pi S (eta also j = 0),
// with L = k = 1; the eta constant is the full value (base radius included).
class RingBvp {
public:
    explicit RingBvp(int harmonics = 12, int nodes = 0);

    int harmonics() const { return N_; }
    int size() const { return 3 * N_ + 1; }
    int nodes() const { return M_; }

    Vec pack(const FourierState& s) const;
    FourierState unpack(const Vec& u, double mu1) const;

    // Nodal values of the three equations stacked [r1; r2; r3].
    Vec nodal_residual(const Vec& u, double mu1, double mu2) const;
    // Projection of the nodal residuals on the basis (sines of r1, r2; cosines of r3).
    Vec residual(const Vec& u, double mu1, double mu2) const;
    Mat jacobian(const Vec& u, double mu1, double mu2) const;
    Vec dresidual_dmu1(const Vec& u, double mu1, double mu2) const;
    Vec dresidual_dmu2(const Vec& u, double mu1, double mu2) const;

    int eta1_index() const { return 2 * N_ + 1; }

private:
    struct Fields {
        Vec th1, th2, xi, dxi, eta, deta;  // th1 = theta' (full), th2 = theta''
    };
    Fields fields(const Vec& u) const;
    Vec project(const Vec& r1, const Vec& r2, const Vec& r3) const;

    int N_, M_;
    Mat S_, C_;   // M x (N+1): sin, cos of 4 pi j S_i
    Vec w_;       // wavenumbers 4 pi j
};

// Nodal collocation residual for a FourierState (L = 1); stacks the three equations.
Vec residual(const FourierState& state, const ModelParams& params, int nodes = 0);

struct BvpOptions {
    int harmonics = 12;
    double tol = 1e-10;
    int max_iter = 50;
    int max_backtracks = 40;
};

struct SolveResult {
    FourierState state;
    double mu1 = 0.0, mu2 = 0.0;
    double residual = 0.0;
    int iterations = 0;
    double smallest_singular = 0.0;
    int jacobian_sign = 1;
    double energy = 0.0;
    double area = 0.0;
    double alpha_proxy = 0.0;
};

SolveResult solve(const ModelParams& params, const FourierState& initial_guess, const BvpOptions& opts = {});

enum class FreeParameter { Mu1, Mu2 };
enum class AmplitudeMeasure { KernelProjection, EtaProxy };

// Equilibrium with a prescribed amplitude; the free parameter is solved for.
SolveResult solve_at_amplitude(double mu1, double mu2, FreeParameter free, AmplitudeMeasure measure, double alpha,
                               const FourierState& initial_guess, const BvpOptions& opts = {});

// Energy (units k/L) relative to the circle at the same parameters and the enclosed area.
double state_energy(const FourierState& state, double mu1, double mu2, int harmonics = 12);
double alpha_proxy(const FourierState& state);

enum class PointStatus { Converged, Fold, Diverged };
std::string to_string(PointStatus s);

struct BranchPoint {
    double mu1 = 0.0;
    FourierState state;
    double area = 0.0;
    double energy = 0.0;
    double alpha_proxy = 0.0;
    double smallest_singular = 0.0;
    PointStatus status = PointStatus::Converged;
};

struct EquilibriumBranch {
    int mode = 2;
    double mu2 = 0.0;
    std::vector<BranchPoint> points;
    std::vector<double> singular_crossings;  // mu1 where det J changed sign between points
    bool terminated_at_fold = false;
};

struct StepControl {
    double mu1_end = 1.0;
    double step = 0.01;
    double min_step = 1e-6;
};

EquilibriumBranch continue_branch(double mu2, double mu1_start, const FourierState& start, const StepControl& control,
                                  const BvpOptions& opts = {});

std::string branch_csv(const EquilibriumBranch& branch);

}  // namespace ringbif::bvp
