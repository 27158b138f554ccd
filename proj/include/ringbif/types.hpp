#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ringbif {

enum class CoefficientSource { ClosedForm, EngineFit };

struct LandauPolynomial {
    double a2 = 0.0, a4 = 0.0, a6 = 0.0;
    int determinacy = 0;
    CoefficientSource source = CoefficientSource::ClosedForm;

    double operator()(double alpha) const {
        double t = alpha * alpha;
        return t * (a2 + t * (a4 + t * a6));
    }
};

// A coefficient is treated as zero below rel_tol times its scale.
// Throws DeterminacyFailure when none of a2, a4, a6 is resolved.
int determinacy_degree(double a2, double a4, double a6, double scale2, double scale4, double scale6,
                       double rel_tol = 1e-9);

enum class TransitionOrder { SecondOrder, FirstOrder, Tricritical, NoBifurcation };

std::string to_string(TransitionOrder order);

struct TransitionReport {
    TransitionOrder order = TransitionOrder::NoBifurcation;
    double mu2 = 0.0;
    double mu1_critical = 0.0;
    std::optional<double> maxwell_mu1;
    std::optional<std::pair<double, double>> spinodal_mu1;
    std::optional<double> alpha_star;
};

struct ProfileSample {
    double s, x, y;
};

struct ShapeProfile {
    std::vector<ProfileSample> samples;  // last sample repeats S = L
    bool closed = false;
    double closure_gap = 0.0;
    double area = 0.0;
    std::vector<std::string> warnings;
};

// (1/2) \oint (x y' - y x') dS by the periodic trapezoid rule with spectral derivatives.
double shoelace_area(const ShapeProfile& profile);

}  // namespace ringbif
