#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ringbif/types.hpp"

namespace ringbif::landau {

// Closed-form coefficients refer to the reduced energy in units of 2 W L / k;
// engine energies (W L / k) are multiplied by this before comparison.
inline constexpr double kEnergyScale = 2.0;

struct NamedTerm {
    std::string name;
    double value;
};

// prefactor * sum(terms); magnitude = |prefactor| * sum |terms| for cancellation-aware zero tests.
struct CoefficientTerms {
    double prefactor = 1.0;
    std::vector<NamedTerm> terms;

    double value() const;
    double magnitude() const;
};

// Multiplies one named sub-term by `factor`; used for fault-injection checks.
struct TermFault {
    std::string coefficient;  // "a2", "a4" or "a6"
    std::string term;
    double factor = 1.0;
};

void set_term_fault(std::optional<TermFault> fault);
std::optional<TermFault> term_fault();

double critical_mu2(int n, double mu1);
double inextensible_limit(int n);

// mu1 in (0, n^2 - 1) where the circular branch of mode n loses stability at this mu2.
double critical_mu1(int n, double mu2);

CoefficientTerms a2_terms(double mu1, double mu2);
CoefficientTerms a4_terms(double mu1, double mu2);
CoefficientTerms a6_terms(double mu1, double mu2);

double coeff_a2(double mu1, double mu2);
double coeff_a4(double mu1, double mu2);
double coeff_a6(double mu1, double mu2);

LandauPolynomial landau_polynomial(double mu1, double mu2);

// Exact radical (45 - 24 sqrt 3) / 11.
double tricritical_mu1();
std::pair<double, double> tricritical_point();

std::pair<double, double> normal_form(double mu1, double mu2);

struct LocalMinimum {
    double alpha;
    double g;
};

struct MinimizeResult {
    double alpha_star = 0.0;
    double g_min = 0.0;
    std::vector<LocalMinimum> local_minima;  // alpha >= 0, ascending alpha
};

MinimizeResult minimize_g(const LandauPolynomial& poly);

std::pair<double, double> spinodal_bounds(double mu2);
double maxwell_locus(double mu2);

TransitionReport classify_transition(double mu2);

struct BifurcationPoint {
    double mu1;
    double mu2;
};

struct BifurcationCurve {
    int n = 2;
    std::vector<BifurcationPoint> points;
};

BifurcationCurve bifurcation_curve(int n, const std::vector<double>& mu1_grid);

// "first", "second" or "tricritical" for n = 2 by the sign of a4 on the curve.
std::string branch_label(double mu1);

}  // namespace ringbif::landau
