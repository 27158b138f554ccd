// Acceptance run: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ringbif/area_curve.hpp"
#include "ringbif/cli.hpp"
#include "ringbif/errors.hpp"
#include "ringbif/fixtures.hpp"
#include "ringbif/landau.hpp"
#include "ringbif/params.hpp"
#include "ringbif/reduction.hpp"
#include "ringbif/ring_functional.hpp"
#include "ringbif/shapes.hpp"
#include "ringbif/verify.hpp"

using namespace ringbif;

namespace {

const double pi = std::acos(-1.0);

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) pass = false;
        if (!detail.empty()) detail += "; ";
        detail += (ok ? "" : "!") + what;
    }
};

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ReductionResult reduce_fixture(const examples::ExampleFixture& fx) {
    ReductionOptions o;
    o.direction = fx.reduction_direction;
    return reduce(fx.functional, symmetric_grid(0.01, 0.1, 10), o);
}

Verdict tricritical() {
    Verdict v;
    const double m_exact = (45.0 - 24.0 * std::sqrt(3.0)) / 11.0;
    const double m2_exact = 4.0 * pi * pi * (1.0 + m_exact) * (1.0 + m_exact) * (3.0 - m_exact) / m_exact;
    auto t0 = std::chrono::steady_clock::now();
    auto [m, m2] = landau::tricritical_point();
    const double dt = seconds_since(t0);
    v.require(std::abs(m - m_exact) < 1e-9, "mu1 = " + num(m) + " vs (45-24 sqrt 3)/11");
    v.require(std::abs(m2 - m2_exact) < 1e-6 * m2_exact, "mu2 = " + num(m2));
    v.require(std::abs(m - 0.312) < 5e-4, "|mu1 - 0.312| = " + num(std::abs(m - 0.312)));
    v.require(std::abs(m2 - 585.0) < 1.0, "|mu2 - 585| = " + num(std::abs(m2 - 585.0)));
    v.require(dt < 1e-3, "runtime " + num(dt * 1e3) + " ms");
    return v;
}

Verdict inextensible() {
    Verdict v;
    v.require(landau::inextensible_limit(2) == 3.0, "inextensible_limit(2) = " + num(landau::inextensible_limit(2)));
    // the neutral curve reaches mu1 -> 3 as mu2 -> 0
    v.require(landau::critical_mu2(2, 3.0 - 1e-9) < 1e-6, "mu2_c(3-) = " + num(landau::critical_mu2(2, 3.0 - 1e-9)));
    return v;
}

Verdict closed_form_oracle() {
    Verdict v;
    auto t0 = std::chrono::steady_clock::now();
    auto [mt, m2t] = landau::tricritical_point();
    struct P {
        double mu1, mu2;
        bool on_curve, tricritical;
    };
    std::vector<P> pts{{mt, m2t, true, true}};
    for (double m : {0.30, 0.32, 0.33}) pts.push_back({m, landau::critical_mu2(2, m), true, false});
    pts.push_back({mt, 0.99 * m2t, false, false});
    pts.push_back({mt, 1.01 * m2t, false, false});
    double w2 = 0.0, w4 = 0.0, w6 = 0.0;
    for (const auto& p : pts) {
        RingReductionOptions o;
        o.harmonics = 12;
        auto e = reduce_ring(p.mu1, p.mu2, o).landau_units;
        auto c = landau::landau_polynomial(p.mu1, p.mu2);
        const double s6 = std::abs(c.a6);
        const double d2 = p.on_curve ? std::abs(e.a2 - c.a2) / s6 / 1e-6 : rel(e.a2, c.a2) / 1e-4;
        const double d4 = p.tricritical ? std::abs(e.a4 - c.a4) / s6 / 1e-6 : rel(e.a4, c.a4) / 1e-4;
        const double d6 = rel(e.a6, c.a6) / 1e-2;
        w2 = std::max(w2, d2);
        w4 = std::max(w4, d4);
        w6 = std::max(w6, d6);
    }
    const double dt = seconds_since(t0);
    v.require(pts.size() >= 5, std::to_string(pts.size()) + " points");
    v.require(w2 <= 1.0, "worst a2 / tolerance " + num(w2));
    v.require(w4 <= 1.0, "worst a4 / tolerance " + num(w4));
    v.require(w6 <= 1.0, "worst a6 / tolerance " + num(w6));
    v.require(dt < 60.0, "runtime " + num(dt) + " s");
    return v;
}

Verdict example_oracles() {
    Verdict v;
    {
        auto r = reduce_fixture(examples::finite_dim_example());
        double d = std::max({std::abs(r.fitted.a2), std::abs(r.fitted.a4 + 1.0), std::abs(r.fitted.a6 - 1.0)});
        v.require(d < 1e-6, "g = -a^4 + a^6 coefficient error " + num(d));
    }
    for (double F : {1.0, 0.9}) {
        const double k = 1.0, L = pi;
        auto r = reduce_fixture(examples::euler_elastica(F, k, L));
        const double a2 = pi * pi * k / (4.0 * L) - F * L / 4.0, a4 = F * L / 64.0;
        double d2 = a2 == 0.0 ? std::abs(r.fitted.a2) / a4 : rel(r.fitted.a2, a2);
        double d4 = rel(r.fitted.a4, a4);
        v.require(d2 < 1e-6 && d4 < 1e-6, "Euler F = " + num(F) + " errors " + num(d2) + ", " + num(d4));
    }
    {
        auto fx = examples::extensible_rod(0.25, 16.0 / 3.0);
        auto r = reduce_fixture(fx);
        const double s = fx.closed_form_scale;
        double d = std::max(std::abs(r.fitted.a2 * s), std::abs(r.fitted.a4 * s));
        v.require(d < 1e-6, "extensible (1/4, 16/3) leading coefficients " + num(d));
        v.require(r.fitted.a6 > 0.0, "a6 = " + num(r.fitted.a6 * s));
    }
    return v;
}

Verdict slaved_signatures() {
    Verdict v;
    auto r = reduce_fixture(examples::euler_elastica(1.0));
    auto w = slaved_taylor(r, 3);
    const double w2 = w[1].lpNorm<Eigen::Infinity>();
    const double w3 = w[2][3];
    v.require(w2 < 1e-8, "w2 = " + num(w2));
    v.require(std::abs(w3 + 1.0 / 192.0) < 1e-6, "w3 cos(3 pi s/L) = " + num(w3));
    return v;
}

Verdict transition_order() {
    Verdict v;
    for (double m2 : {500.0, 600.0}) {
        const double m = landau::critical_mu1(2, m2);
        auto c = landau::landau_polynomial(m, m2);
        const bool ok = m2 == 500.0 ? c.a4 < 0.0 : c.a4 > 0.0;
        v.require(ok, "mu2 = " + num(m2) + " a4 = " + num(c.a4));
        v.require(std::abs(c.a2) < 1e-6 * std::abs(c.a6), "a2 = " + num(c.a2));
    }
    try {
        double mx = landau::maxwell_locus(500.0);
        v.require(mx < landau::critical_mu1(2, 500.0), "maxwell_locus(500) = " + num(mx));
    } catch (const std::exception& e) {
        v.require(false, std::string("maxwell_locus(500) threw: ") + e.what());
    }
    try {
        landau::maxwell_locus(600.0);
        v.require(false, "maxwell_locus(600) returned");
    } catch (const NotFirstOrder&) {
        v.require(true, "maxwell_locus(600) raises NotFirstOrder");
    }
    auto a = bvp::area_pressure_curve(500.0, 0.30, 0.45, 16);
    auto b = bvp::area_pressure_curve(600.0, 0.25, 0.40, 16);
    int ja = 0, jb = 0;
    for (const auto& r : a.rows) ja += r.kind == "maxwell";
    for (const auto& r : b.rows) jb += r.kind == "maxwell";
    v.require(ja == 1 && jb == 0, "area jump rows " + std::to_string(ja) + " / " + std::to_string(jb));
    return v;
}

Verdict asymptotic_vs_bvp() {
    Verdict v;
    auto t0 = std::chrono::steady_clock::now();
    // the tricritical point and the onsets of the two transition panels
    std::vector<std::pair<std::string, double>> where{{"tricritical", landau::tricritical_mu1()},
                                                      {"onset mu2=600", landau::critical_mu1(2, 600.0)},
                                                      {"onset mu2=500", landau::critical_mu1(2, 500.0)}};
    for (const auto& [name, m] : where) {
        auto g = verify::asymptotic_gap_ratio(m, 0.04);
        v.require(g.ratio >= 12.0, name + " (mu1 = " + num(m) + ") ratio " + num(g.ratio));
    }
    const double dt = seconds_since(t0);
    v.require(dt < 120.0, "runtime " + num(dt) + " s");
    return v;
}

Verdict area_formula() {
    Verdict v;
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double m = 0.05 + 0.1 * i;
        const double R = 1.0 / (2.0 * pi * (1.0 + m));
        worst = std::max(worst, std::abs(shapes::enclosed_area(m, 0.0) - pi * R * R));
    }
    v.require(worst <= 1e-12, "alpha = 0 worst " + num(worst));
    double lowest = 1e300;
    for (double m : {0.1, 0.3, 0.8}) {
        auto err = [&](double a) {
            return std::abs(shoelace_area(shapes::to_cartesian(shapes::asymptotic_state(m, a), 512)) -
                            shapes::enclosed_area(m, a));
        };
        lowest = std::min({lowest, err(0.04) / err(0.02), err(0.02) / err(0.01)});
    }
    v.require(lowest >= 8.0, "smallest halving ratio " + num(lowest));
    return v;
}

Verdict invariant_suites() {
    Verdict v;
    std::ostringstream out, err;
    int code = run_cli({"verify"}, out, err);
    v.require(code == 0, "verify exit " + std::to_string(code));
    const std::string text = out.str();
    for (const char* name : {"slaved_orthogonal_to_kernel", "g_even_odd_vs_residual_uncertainty", "hessian_symmetry",
                             "cli_output_byte_identical"}) {
        const bool ok = text.find(std::string("PASS invariants/") + name + " ") != std::string::npos;
        v.require(ok, name);
    }
    return v;
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"tricritical point", tricritical},
        {"inextensible limit", inextensible},
        {"closed-form oracle", closed_form_oracle},
        {"example oracles", example_oracles},
        {"slaved-mode signatures", slaved_signatures},
        {"transition-order classification", transition_order},
        {"asymptotic vs BVP", asymptotic_vs_bvp},
        {"area formula", area_formula},
        {"invariant suites", invariant_suites},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail = std::string("exception: ") + e.what();
        }
        if (!v.pass) ++failed;
        std::printf("%s %zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), v.detail.c_str());
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
