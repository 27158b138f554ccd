#pragma once

#include <memory>
#include <vector>

#include "ringbif/fourier.hpp"
#include "ringbif/functional.hpp"
#include "ringbif/reduction.hpp"

namespace ringbif {

enum class RingField { Theta, Xi, Eta };

// Unknowns are perturbation coefficients of (theta, xi/L, eta/L) on harmonics of 2 pi fold S / L.
// Symmetric: theta, xi sines j = 1..N and eta cosines j = 0..N (3N+1 unknowns).
// Full: sines j = 1..N and cosines j = 0..N for every field (3(2N+1) unknowns).
enum class RingBasisKind { Symmetric, Full };

struct RingBasisEntry {
    RingField field;
    bool is_sin;
    int harmonic;  // in units of the base wavenumber 2 pi fold / L
};

struct RingBasis {
    int harmonics = 12;
    int fold = 2;
    RingBasisKind kind = RingBasisKind::Symmetric;
    std::vector<RingBasisEntry> entries;

    int size() const { return static_cast<int>(entries.size()); }
    int index_of(RingField f, bool is_sin, int harmonic) const;  // -1 if absent
};

RingBasis make_ring_basis(int harmonics = 12, int fold = 2, RingBasisKind kind = RingBasisKind::Symmetric);

// Ring energy relative to the circular branch, in units of k/L with L = 1.
class RingModel {
public:
    RingModel(double mu1, double mu2, RingBasis basis, int quadrature = 0);

    double mu1() const { return mu1_; }
    double mu2() const { return mu2_; }
    const RingBasis& basis() const { return basis_; }
    double radius() const { return radius_; }

    double energy(const Vec& c) const;
    Vec gradient(const Vec& c) const;
    Mat hessian(const Vec& c) const;

    EnergyFunctional functional() const;

    FourierState to_state(const Vec& c) const;
    Vec from_state(const FourierState& s) const;

    // n = 2 linear mode (theta, xi/L, eta/L) = (-pi(3-mu1)(1+mu1), 2, 1) on harmonic 1; symmetric basis, fold 2.
    Vec linear_mode_vector() const;
    int eta1_index() const;

    std::vector<Vec> symmetry_modes() const;

private:
    void nodal(const Vec& c, Vec& dphi, Vec& X, Vec& dX, Vec& E, Vec& dE) const;

    double mu1_, mu2_, p_, b_, radius_;
    RingBasis basis_;
    int M_;
    Mat Dth_, Vxi_, Dxi_, Veta_, Deta_;  // M x n nodal maps, zero outside their field
};

enum class SlavingMode { Reslaved, Frozen };

struct RingReductionOptions {
    int harmonics = 12;
    SlavingMode mode = SlavingMode::Frozen;
    std::vector<double> alphas;  // empty: symmetric_grid(0.002, 0.02, 10)
    ReductionOptions engine;
};

struct RingReduction {
    ReductionResult result;
    LandauPolynomial landau_units;  // fitted coefficients times landau::kEnergyScale
    double mu2_slaving = 0.0;
};

RingReduction reduce_ring(double mu1, double mu2, const RingReductionOptions& opts = {});

}  // namespace ringbif
