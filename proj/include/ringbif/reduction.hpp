#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ringbif/functional.hpp"
#include "ringbif/types.hpp"

namespace ringbif {

struct KernelInfo {
    std::vector<Vec> basis;
    std::vector<double> eigenvalues;  // deflated spectrum, ascending |lambda|
    Vec soft_vector;                  // eigenvector of smallest |lambda| after deflation
    double spectral_norm = 0.0;
};

KernelInfo detect_kernel(const Mat& H, const std::vector<Vec>& symmetry_modes, double rank_tol = 1e-7,
                         int max_dim = 1);

struct NormalizationConvention {
    // Scale so that component `index` equals +1; if unset, unit norm with first
    // significant component positive.
    std::optional<int> index;
};

Vec normalize_basis(const Vec& v, const NormalizationConvention& convention);

struct ReductionOptions {
    double h_fd = 1e-5;
    double rank_tol = 1e-7;
    double gtol = 1e-12;  // relative to Hessian norm
    int max_newton = 40;
    int max_halvings = 12;
    int even_degree = 14;  // highest even power in the fit
    int odd_degree = 5;    // highest odd power in the separate odd-part fit
    double fit_rtol = 1e-8;
    NormalizationConvention normalization;
    std::optional<Vec> direction;  // reduction direction override
    bool allow_near_critical = true;  // use the soft mode when the kernel is empty
};

struct SlavedSolve {
    Vec w;
    int iterations = 0;
    bool converged = false;
    std::vector<double> residual_history;  // projected-gradient inf-norms
};

// Newton on Q grad W(alpha v + w) = 0 with <w, v> = 0, from w_start.
SlavedSolve solve_slaved(const EnergyFunctional& f, const Vec& v, double alpha, const Vec& w_start,
                         const ReductionOptions& opts = {});

struct ReductionResult {
    std::vector<Vec> kernel_basis;
    std::vector<double> kernel_eigenvalues;
    bool near_critical = false;
    Vec direction;
    std::vector<double> alphas;
    std::vector<Vec> slaved_solutions;
    std::vector<std::pair<double, double>> g_samples;
    std::vector<SlavedSolve> solves;
    LandauPolynomial fitted;
    std::vector<double> even_coefficients;    // a2, a4, ..., a_even_degree
    std::vector<double> odd_contributions;    // c1, c3, ... scaled to alpha_max
    std::vector<double> odd_significance;     // |odd contribution| / its uncertainty from a joint even+odd fit
    double fit_residual = 0.0;
    double alpha_max = 0.0;
    std::vector<std::string> warnings;
};

ReductionResult reduce(const EnergyFunctional& f, const std::vector<double>& alphas,
                       const ReductionOptions& opts = {});

// Kernel and slaved corrections from `slave`; g evaluated with `evaluate` on those states.
ReductionResult reduce_frozen(const EnergyFunctional& slave, const EnergyFunctional& evaluate,
                              const std::vector<double>& alphas, const ReductionOptions& opts = {});

// Taylor coefficients of w(alpha) per component, orders 1..max_order (index k-1 holds order k).
std::vector<Vec> slaved_taylor(const ReductionResult& r, int max_order = 5);

// Symmetric grid 0, +/-a_i with a_i evenly spaced in [lo, hi].
std::vector<double> symmetric_grid(double lo, double hi, int count);

nlohmann::json to_json(const ReductionResult& r);

}  // namespace ringbif
