#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ringbif/bvp.hpp"
#include "ringbif/output.hpp"
#include "ringbif/types.hpp"

namespace ringbif::bvp {

enum class AreaSource { Asymptotic, Bvp, Both };

AreaSource parse_area_source(const std::string& s);

// Missing values are NaN. kind: "sample", "maxwell" (first-order jump),
// "critical" (second-order onset), "bvp_maxwell" (equal BVP energies).
struct AreaCurveRow {
    std::string kind = "sample";
    double mu1 = 0.0;
    double alpha_stable = 0.0, area_stable = 0.0;
    double alpha_metastable = 0.0, area_metastable = 0.0;
    double bvp_alpha_stable = 0.0, bvp_area_stable = 0.0;
    double bvp_alpha_metastable = 0.0, bvp_area_metastable = 0.0;
};

struct AreaCurve {
    double mu2 = 0.0;
    TransitionOrder order = TransitionOrder::NoBifurcation;
    AreaSource source = AreaSource::Asymptotic;
    std::vector<AreaCurveRow> rows;
    std::vector<std::string> warnings;

    Table to_table() const;
};

AreaCurve area_pressure_curve(double mu2, double mu1_min, double mu1_max, int samples,
                              AreaSource source = AreaSource::Asymptotic, const BvpOptions& opts = {});

struct BuckledPoint {
    double alpha = 0.0;  // eta cos(4 pi S) amplitude
    double mu1 = 0.0;
    double energy = 0.0, area = 0.0;
    bool stable = false;  // d mu1 / d alpha > 0
    FourierState state;
};

// Buckled n = 2 branch at fixed mu2 parametrized by amplitude, starting from the circle at the
// critical mu1 (alpha = 0). Folds of mu1(alpha) are passed without special treatment.
struct BuckledBranch {
    double mu2 = 0.0;
    std::vector<BuckledPoint> points;  // ascending alpha

    // Stable buckled equilibrium at mu1 refined by Newton from the branch, if one exists.
    std::optional<SolveResult> stable_at(double mu1, const BvpOptions& opts = {}) const;
    // Branch mu1 range covered by stable points.
    std::optional<std::pair<double, double>> stable_range() const;
};

BuckledBranch trace_buckled_branch(double mu2, double alpha_max = 0.12, double dalpha = 0.004,
                                   const BvpOptions& opts = {});

// mu1 on the stable buckled branch where the BVP energy equals that of the circle.
std::optional<SolveResult> bvp_maxwell(double mu2, const BvpOptions& opts = {});

}  // namespace ringbif::bvp
