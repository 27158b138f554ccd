#include "ringbif/landau.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ringbif/errors.hpp"
#include "ringbif/params.hpp"

namespace ringbif::landau {

namespace {

constexpr double pi = kPi;
constexpr double kRootTol = 1e-10;
constexpr double kZeroTol = 1e-9;

thread_local std::optional<TermFault> g_fault;

void apply_fault(const char* coefficient, CoefficientTerms& c) {
    if (!g_fault || g_fault->coefficient != coefficient) return;
    for (auto& t : c.terms)
        if (t.name == g_fault->term) t.value *= g_fault->factor;
}

double bisect(const auto& f, double lo, double hi) {
    double flo = f(lo);
    for (int it = 0; it < 200 && hi - lo > kRootTol; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

void check_point(double mu1, double mu2) {
    if (!(mu1 >= 0.0) || !(mu2 > 0.0)) throw DomainError("Landau coefficients need mu1 >= 0, mu2 > 0");
}

}  // namespace

double CoefficientTerms::value() const {
    double s = 0.0;
    for (const auto& t : terms) s += t.value;
    return prefactor * s;
}

double CoefficientTerms::magnitude() const {
    double s = 0.0;
    for (const auto& t : terms) s += std::abs(t.value);
    return std::abs(prefactor) * s;
}

void set_term_fault(std::optional<TermFault> fault) { g_fault = std::move(fault); }
std::optional<TermFault> term_fault() { return g_fault; }

double critical_mu2(int n, double mu1) {
    if (n < 2) throw DomainError("mode number must be >= 2");
    double top = n * n - 1.0;
    if (mu1 == 0.0) throw NoBifurcation("mu1 = 0 is the inextensible limit; use inextensible_limit");
    if (!(mu1 > 0.0) || !(mu1 < top))
        throw NoBifurcation("mu1 outside (0, n^2-1) for n = " + std::to_string(n));
    return 4.0 * pi * pi * (1.0 + mu1) * (1.0 + mu1) * (top - mu1) / mu1;
}

double inextensible_limit(int n) {
    if (n < 2) throw DomainError("mode number must be >= 2");
    return n * n - 1.0;
}

double critical_mu1(int n, double mu2) {
    if (n < 2) throw DomainError("mode number must be >= 2");
    if (!(mu2 > 0.0)) throw DomainError("mu2 must be positive");
    double top = n * n - 1.0;
    auto f = [&](double m) { return 4.0 * pi * pi * (1.0 + m) * (1.0 + m) * (top - m) - m * mu2; };
    return bisect(f, 0.0, top);
}

CoefficientTerms a2_terms(double mu1, double mu2) {
    check_point(mu1, mu2);
    CoefficientTerms c;
    c.prefactor = 2.0 * pi * pi * (3.0 - mu1);
    c.terms = {{"bending", 4.0 * pi * pi * (1.0 + mu1) * (1.0 + mu1) * (3.0 - mu1)},
               {"pressure", -mu1 * mu2}};
    apply_fault("a2", c);
    return c;
}

CoefficientTerms a4_terms(double m1, double m2) {
    check_point(m1, m2);
    const double p2 = pi * pi, p3 = p2 * pi, p4 = p2 * p2, p5 = p4 * pi;
    const double u = m1 + 1.0, d = m1 - 3.0, q = m1 * m1 - 2.0 * m1 - 3.0;
    const double s = 3.0 - 5.0 * m1;
    const double m1_2 = m1 * m1, m1_3 = m1_2 * m1, m1_4 = m1_3 * m1, m1_5 = m1_4 * m1;

    CoefficientTerms c;
    c.prefactor = -p4 * d * u / (32.0 * (-m1 + 24.0 * pi + 3.0) * (p2 * q * q + 5.0));
    c.terms = {
        {"t1", 4.0 * p4 * s * s * std::pow(d, 4) * std::pow(u, 5)},
        {"t2", -96.0 * p5 * s * s * std::pow(d, 3) * std::pow(u, 5)},
        {"t3", -8.0 * p3 * d *
                   (75.0 * m2 * m1_5 - 372.0 * m2 * m1_4 + 2.0 * (729.0 * m2 - 1810.0) * m1_3 +
                    (21012.0 - 3348.0 * m2) * m1_2 + 9.0 * (99.0 * m2 - 2828.0) * m1 + 19548.0) *
                   u * u},
        {"t4", 8.0 * pi * m1 * (905.0 * m1_3 - 4593.0 * m1_2 + 963.0 * m1 - 3267.0) * m2},
        {"t5", -m1 * (67.0 * m1_4 + 12.0 * m1_3 + 546.0 * m1_2 - 5076.0 * m1 + 4563.0) * m2},
        {"t6", p2 * q * q *
                   (25.0 * m2 * m1_5 - 124.0 * m2 * m1_4 + (486.0 * m2 - 268.0) * m1_3 -
                    4.0 * (279.0 * m2 - 7.0) * m1_2 + 3.0 * (99.0 * m2 - 3980.0) * m1 + 8244.0)},
    };
    apply_fault("a4", c);
    return c;
}

CoefficientTerms a6_terms(double m1, double m2) {
    check_point(m1, m2);
    const double p2 = pi * pi, p3 = p2 * pi, p4 = p2 * p2, p5 = p4 * pi, p6 = p4 * p2;
    const double p7 = p6 * pi, p8 = p4 * p4;
    const double u = m1 + 1.0, d = m1 - 3.0, q = m1 * m1 - 2.0 * m1 - 3.0;
    const double r = 3.0 - 13.0 * m1;
    double mp[13];
    mp[0] = 1.0;
    for (int i = 1; i < 13; ++i) mp[i] = mp[i - 1] * m1;
    const double q2 = q * q, q4 = q2 * q2;
    const double den = (m1 - 24.0 * pi - 3.0) * (p2 * q2 + 5.0);

    CoefficientTerms c;
    c.prefactor = p6 * d * d * u * u / (32768.0 * den * den);
    c.terms = {
        {"t1", -9408.0 * p7 * r * r * std::pow(d, 7) * std::pow(u, 8)},
        {"t2", 112896.0 * p8 * r * r * std::pow(d, 6) * std::pow(u, 8)},
        {"t3", d * d * m1 *
                   (354481.0 * mp[5] + 756721.0 * mp[4] + 4947034.0 * mp[3] + 24449106.0 * mp[2] -
                    26947611.0 * m1 + 5576877.0) *
                   m2},
        {"t4", -16.0 * pi * m1 *
                   (1604115.0 * mp[6] - 2550374.0 * mp[5] - 23872107.0 * mp[4] + 111841740.0 * mp[3] -
                    254712627.0 * mp[2] + 235371258.0 * m1 - 49445397.0) *
                   m2},
        {"t5", -48.0 * p5 * q4 *
                   (8281.0 * m2 * mp[7] - 64370.0 * m2 * mp[6] + (381343.0 * m2 + 331240.0) * mp[5] -
                    4.0 * (119943.0 * m2 + 121030.0) * mp[4] + (1865799.0 * m2 - 1485680.0) * mp[3] -
                    18.0 * (73377.0 * m2 + 13720.0) * mp[2] + 27.0 * (2739.0 * m2 + 13720.0) * m1 - 52920.0)},
        {"t6", -32.0 * p3 * q2 *
                   (124215.0 * m2 * mp[7] - 312238.0 * m2 * mp[6] - 9.0 * (170487.0 * m2 - 356470.0) * mp[5] +
                    2.0 * (7599150.0 * m2 - 2214349.0) * mp[4] - 9.0 * (2533599.0 * m2 - 2970428.0) * mp[3] +
                    18.0 * (1332369.0 * m2 - 3125498.0) * mp[2] + (61882974.0 - 8221905.0 * m2) * m1 -
                    25745202.0)},
        {"t7", 4.0 * p6 * q4 *
                   (8281.0 * mp[10] - 70070.0 * mp[9] + 130389.0 * mp[8] + 281848.0 * mp[7] +
                    98.0 * (12168.0 * m2 - 7759.0) * mp[6] - 4.0 * (3405436.0 * m2 + 173313.0) * mp[5] +
                    18.0 * (8319824.0 * m2 + 2723273.0) * mp[4] - 72.0 * (3984828.0 * m2 - 1037575.0) * mp[3] +
                    9.0 * (17087184.0 * m2 + 678013.0) * mp[2] - 54.0 * (286920.0 * m2 + 317569.0) * m1 +
                    2575881.0)},
        {"t8", 2.0 * p2 *
                   (41405.0 * m2 * mp[12] - 476517.0 * m2 * mp[11] + (2499091.0 * m2 + 708962.0) * mp[10] -
                    (6424643.0 * m2 + 4781452.0) * mp[9] + (15178394.0 - 6443198.0 * m2) * mp[8] +
                    6.0 * (15084045.0 * m2 - 4210328.0) * mp[7] + (95619590.0 * m2 + 43802596.0) * mp[6] -
                    2.0 * (496619875.0 * m2 + 138196068.0) * mp[5] + 567.0 * (3615575.0 * m2 + 569724.0) * mp[4] +
                    (861527664.0 - 6024009177.0 * m2) * mp[3] - 81.0 * (19657465.0 * m2 + 7144038.0) * mp[2] +
                    1701.0 * (572357.0 * m2 - 268444.0) * m1 + 294412482.0)},
        {"t9", p4 * q2 *
                   (8281.0 * m2 * mp[12] - 122337.0 * m2 * mp[11] + (914743.0 * m2 + 331240.0) * mp[10] -
                    35.0 * (104109.0 * m2 + 80080.0) * mp[9] + (7655386.0 * m2 + 5215560.0) * mp[8] -
                    2.0 * (5400261.0 * m2 - 5636960.0) * mp[7] + (58481838.0 * m2 - 30415280.0) * mp[6] -
                    2.0 * (88161623.0 * m2 + 13865040.0) * mp[5] + 5.0 * (539280153.0 * m2 + 441504272.0) * mp[4] -
                    3.0 * (2306970711.0 * m2 + 1037986240.0) * mp[3] +
                    9.0 * (188236755.0 * m2 + 719716744.0) * mp[2] + 81.0 * (5300277.0 * m2 - 61790576.0) * m1 +
                    2596103784.0)},
    };
    apply_fault("a6", c);
    return c;
}

double coeff_a2(double mu1, double mu2) { return a2_terms(mu1, mu2).value(); }
double coeff_a4(double mu1, double mu2) { return a4_terms(mu1, mu2).value(); }
double coeff_a6(double mu1, double mu2) { return a6_terms(mu1, mu2).value(); }

LandauPolynomial landau_polynomial(double mu1, double mu2) {
    auto t2 = a2_terms(mu1, mu2), t4 = a4_terms(mu1, mu2), t6 = a6_terms(mu1, mu2);
    LandauPolynomial p;
    p.a2 = t2.value();
    p.a4 = t4.value();
    p.a6 = t6.value();
    p.source = CoefficientSource::ClosedForm;
    p.determinacy = determinacy_degree(p.a2, p.a4, p.a6, t2.magnitude(), t4.magnitude(), t6.magnitude(), kZeroTol);
    return p;
}

double tricritical_mu1() { return (45.0 - 24.0 * std::sqrt(3.0)) / 11.0; }

std::pair<double, double> tricritical_point() {
    double m1 = tricritical_mu1();
    return {m1, critical_mu2(2, m1)};
}

std::pair<double, double> normal_form(double mu1, double mu2) {
    double a6 = coeff_a6(mu1, mu2);
    if (!(a6 > 0.0)) throw DeterminacyFailure("a6 <= 0: sextic truncation does not bound g from below");
    return {coeff_a2(mu1, mu2) / a6, coeff_a4(mu1, mu2) / a6};
}

MinimizeResult minimize_g(const LandauPolynomial& poly) {
    const double a2 = poly.a2, a4 = poly.a4, a6 = poly.a6;
    if (!(a6 > 0.0)) throw DeterminacyFailure("minimize_g requires a6 > 0");
    MinimizeResult r;
    if (a2 >= 0.0) r.local_minima.push_back({0.0, 0.0});
    double disc = a4 * a4 - 3.0 * a2 * a6;
    if (disc >= 0.0) {
        // stable root of g'(t)/t written to avoid cancellation when a4 > 0
        double sq = std::sqrt(disc);
        double t = a4 <= 0.0 ? (-a4 + sq) / (3.0 * a6) : (-a2) / (a4 + sq);
        if (t > 0.0) {
            double alpha = std::sqrt(t);
            r.local_minima.push_back({alpha, poly(alpha)});
        }
    }
    r.alpha_star = 0.0;
    r.g_min = 0.0;
    bool first = true;
    for (const auto& m : r.local_minima) {
        if (first || m.g < r.g_min) {
            r.alpha_star = m.alpha;
            r.g_min = m.g;
            first = false;
        }
    }
    return r;
}

std::pair<double, double> spinodal_bounds(double mu2) {
    double upper = critical_mu1(2, mu2);
    double a4u = coeff_a4(upper, mu2);
    if (!(a4u < 0.0)) throw NotFirstOrder("a4 >= 0 where a2 = 0: transition is not first order");
    auto D = [&](double m) { return coeff_a4(m, mu2) * coeff_a4(m, mu2) - 3.0 * coeff_a2(m, mu2) * coeff_a6(m, mu2); };
    double step = 1e-4, hi = upper, lo = upper;
    while (true) {
        lo = std::max(upper - step, 0.0);
        if (!(coeff_a6(lo, mu2) > 0.0))
            throw DeterminacyFailure("a6 <= 0 in the hysteresis window: sextic truncation cannot place the spinodal");
        if (!(coeff_a4(lo, mu2) < 0.0))
            throw NotFirstOrder("no metastable buckled minimum below the a2 = 0 pressure");
        if (D(lo) < 0.0) break;
        if (lo == 0.0) throw NotFirstOrder("spinodal bracket expansion reached mu1 = 0");
        hi = lo;
        step *= 2.0;
    }
    double lower = bisect(D, lo, hi);
    return {lower, upper};
}

double maxwell_locus(double mu2) {
    auto [lower, upper] = spinodal_bounds(mu2);
    auto F = [&](double m) { return 4.0 * coeff_a2(m, mu2) * coeff_a6(m, mu2) - coeff_a4(m, mu2) * coeff_a4(m, mu2); };
    if ((F(lower) > 0.0) == (F(upper) > 0.0)) throw NotFirstOrder("no Maxwell sign change between spinodals");
    return bisect(F, lower, upper);
}

TransitionReport classify_transition(double mu2) {
    if (!(mu2 > 0.0)) throw DomainError("mu2 must be positive");
    TransitionReport rep;
    rep.mu2 = mu2;
    rep.mu1_critical = critical_mu1(2, mu2);
    auto t4 = a4_terms(rep.mu1_critical, mu2);
    auto [mt, m2t] = tricritical_point();
    if (std::abs(mu2 - m2t) <= 1e-9 * m2t || std::abs(t4.value()) < kZeroTol * t4.magnitude()) {
        rep.order = TransitionOrder::Tricritical;
        rep.mu1_critical = mt;
        rep.alpha_star = 0.0;
        return rep;
    }
    if (t4.value() > 0.0) {
        rep.order = TransitionOrder::SecondOrder;
        rep.alpha_star = 0.0;
        return rep;
    }
    rep.order = TransitionOrder::FirstOrder;
    try {
        rep.spinodal_mu1 = spinodal_bounds(mu2);
    } catch (const DeterminacyFailure&) {
        return rep;  // first order, but the Maxwell construction needs a6 > 0
    }
    rep.maxwell_mu1 = maxwell_locus(mu2);
    double m = *rep.maxwell_mu1;
    rep.alpha_star = std::sqrt(-coeff_a4(m, mu2) / (2.0 * coeff_a6(m, mu2)));
    return rep;
}

BifurcationCurve bifurcation_curve(int n, const std::vector<double>& mu1_grid) {
    BifurcationCurve c;
    c.n = n;
    for (double m : mu1_grid) c.points.push_back({m, critical_mu2(n, m)});
    return c;
}

std::string branch_label(double mu1) {
    double mt = tricritical_mu1();
    if (std::abs(mu1 - mt) <= 1e-12) return "tricritical";
    auto t4 = a4_terms(mu1, critical_mu2(2, mu1));
    if (std::abs(t4.value()) < kZeroTol * t4.magnitude()) return "tricritical";
    return t4.value() > 0.0 ? "second" : "first";
}

}  // namespace ringbif::landau
