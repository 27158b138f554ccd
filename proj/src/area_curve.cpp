#include "ringbif/area_curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ringbif/errors.hpp"
#include "ringbif/landau.hpp"
#include "ringbif/shapes.hpp"

namespace ringbif::bvp {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

void blank(AreaCurveRow& r) {
    r.alpha_stable = r.area_stable = r.alpha_metastable = r.area_metastable = nan;
    r.bvp_alpha_stable = r.bvp_area_stable = r.bvp_alpha_metastable = r.bvp_area_metastable = nan;
}

struct Minimum {
    double alpha, area, energy;
};

void assign(const std::vector<Minimum>& mins, double& a_st, double& A_st, double& a_me, double& A_me) {
    if (mins.empty()) return;
    auto best = std::min_element(mins.begin(), mins.end(), [](auto& x, auto& y) { return x.energy < y.energy; });
    a_st = best->alpha;
    A_st = best->area;
    for (auto it = mins.begin(); it != mins.end(); ++it) {
        if (it == best) continue;
        a_me = it->alpha;
        A_me = it->area;
    }
}

}  // namespace

AreaSource parse_area_source(const std::string& s) {
    if (s == "asymptotic") return AreaSource::Asymptotic;
    if (s == "bvp") return AreaSource::Bvp;
    if (s == "both") return AreaSource::Both;
    throw DomainError("unknown area source '" + s + "' (asymptotic, bvp, both)");
}

namespace {

FourierState blend(const RingBvp& bvp, const FourierState& a, const FourierState& b, double t, double mu1) {
    return bvp.unpack((1.0 - t) * bvp.pack(a) + t * bvp.pack(b), mu1);
}

BuckledPoint to_point(const SolveResult& r) {
    BuckledPoint p;
    p.alpha = r.alpha_proxy;
    p.mu1 = r.mu1;
    p.energy = r.energy;
    p.area = r.area;
    p.state = r.state;
    return p;
}

}  // namespace

BuckledBranch trace_buckled_branch(double mu2, double alpha_max, double dalpha, const BvpOptions& opts) {
    if (!(mu2 > 0.0) || !(alpha_max > 0.0) || !(dalpha > 0.0)) throw DomainError("invalid branch trace request");
    BuckledBranch br;
    br.mu2 = mu2;
    const double mc = landau::critical_mu1(2, mu2);
    BuckledPoint origin;
    origin.mu1 = mc;
    origin.area = circular_solution(mc).area;
    origin.state = FourierState::circular(mc, 2 * opts.harmonics);
    br.points.push_back(origin);

    const RingBvp bvp(opts.harmonics);
    double step = dalpha, alpha = 0.0;
    while (alpha < alpha_max - 1e-12 && step > dalpha * 1e-3) {
        const double next = std::min(alpha + step, alpha_max);
        FourierState guess;
        double mu1_guess;
        if (br.points.size() < 2) {
            guess = shapes::asymptotic_state(mc, next, 1.0, 2 * opts.harmonics);
            mu1_guess = mc;
        } else {
            const auto& p0 = br.points[br.points.size() - 2];
            const auto& p1 = br.points.back();
            const double t = 1.0 + (next - p1.alpha) / (p1.alpha - p0.alpha);
            mu1_guess = p0.mu1 + t * (p1.mu1 - p0.mu1);
            guess = blend(bvp, p0.state, p1.state, t, mu1_guess);
        }
        try {
            auto r = solve_at_amplitude(mu1_guess, mu2, FreeParameter::Mu1, AmplitudeMeasure::EtaProxy, next, guess,
                                        opts);
            br.points.push_back(to_point(r));
            alpha = next;
            step = std::min(step * 1.5, dalpha);
        } catch (const Diverged&) {
            step *= 0.5;
        }
    }
    const auto n = br.points.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = br.points[i == 0 ? 0 : i - 1];
        const auto& b = br.points[i + 1 < n ? i + 1 : n - 1];
        br.points[i].stable = b.mu1 > a.mu1;
    }
    return br;
}

std::optional<std::pair<double, double>> BuckledBranch::stable_range() const {
    std::optional<std::pair<double, double>> out;
    for (const auto& p : points) {
        if (!p.stable || p.alpha <= 0.0) continue;
        if (!out) out = std::make_pair(p.mu1, p.mu1);
        out->first = std::min(out->first, p.mu1);
        out->second = std::max(out->second, p.mu1);
    }
    return out;
}

std::optional<SolveResult> BuckledBranch::stable_at(double mu1, const BvpOptions& opts) const {
    const RingBvp bvp(opts.harmonics);
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const auto& a = points[i];
        const auto& b = points[i + 1];
        if (!a.stable || !b.stable || !(b.mu1 > a.mu1) || mu1 < a.mu1 || mu1 > b.mu1) continue;
        const double t = (mu1 - a.mu1) / (b.mu1 - a.mu1);
        const double alpha = a.alpha + t * (b.alpha - a.alpha);
        try {
            auto r = solve_at_amplitude(mu1, mu2, FreeParameter::Mu1, AmplitudeMeasure::EtaProxy, alpha,
                                        blend(bvp, a.state, b.state, t, mu1), opts);
            // fix mu1 exactly by a plain solve from the bordered result
            r = solve(make_params(mu1, mu2), r.state, opts);
            const double slack = b.alpha - a.alpha;
            if (r.alpha_proxy > 1e-6 && r.alpha_proxy > a.alpha - slack && r.alpha_proxy < b.alpha + slack) return r;
        } catch (const Diverged&) {
        }
    }
    return std::nullopt;
}

std::optional<SolveResult> bvp_maxwell(double mu2, const BvpOptions& opts) {
    BuckledBranch br = trace_buckled_branch(mu2, 0.12, 0.004, opts);
    const RingBvp bvp(opts.harmonics);
    for (std::size_t i = 1; i + 1 < br.points.size(); ++i) {
        auto lo = br.points[i], hi = br.points[i + 1];
        if (!lo.stable || !hi.stable || !(lo.energy > 0.0 && hi.energy <= 0.0)) continue;
        SolveResult mid;
        for (int it = 0; it < 60 && hi.alpha - lo.alpha > 1e-12; ++it) {
            const double a = 0.5 * (lo.alpha + hi.alpha);
            const double m = 0.5 * (lo.mu1 + hi.mu1);
            try {
                mid = solve_at_amplitude(m, mu2, FreeParameter::Mu1, AmplitudeMeasure::EtaProxy, a,
                                         blend(bvp, lo.state, hi.state, 0.5, m), opts);
            } catch (const Diverged&) {
                return std::nullopt;
            }
            (mid.energy > 0.0 ? lo : hi) = to_point(mid);
        }
        return mid;
    }
    return std::nullopt;
}

AreaCurve area_pressure_curve(double mu2, double mu1_min, double mu1_max, int samples, AreaSource source,
                              const BvpOptions& opts) {
    if (!(mu2 > 0.0)) throw DomainError("mu2 must be positive");
    if (!(mu1_min >= 0.0) || !(mu1_max > mu1_min) || samples < 2) throw DomainError("invalid mu1 range");
    AreaCurve curve;
    curve.mu2 = mu2;
    curve.source = source;
    TransitionReport rep = landau::classify_transition(mu2);
    curve.order = rep.order;
    const bool asym = source != AreaSource::Bvp, num = source != AreaSource::Asymptotic;

    std::vector<double> grid;
    for (int i = 0; i < samples; ++i) grid.push_back(mu1_min + (mu1_max - mu1_min) * i / (samples - 1));

    std::optional<BuckledBranch> branch;
    if (num) branch = trace_buckled_branch(mu2, 0.12, 0.004, opts);
    for (double m : grid) {
        AreaCurveRow row;
        blank(row);
        row.mu1 = m;
        const double Acirc = circular_solution(m).area;
        const bool circle_stable = landau::coeff_a2(m, mu2) > 0.0;
        try {
            auto mins = landau::minimize_g(landau::landau_polynomial(m, mu2));
            std::vector<Minimum> ms;
            for (const auto& lm : mins.local_minima) {
                ms.push_back({lm.alpha, shapes::enclosed_area(m, lm.alpha), lm.g});
            }
            if (asym) assign(ms, row.alpha_stable, row.area_stable, row.alpha_metastable, row.area_metastable);
        } catch (const DeterminacyFailure&) {
            curve.warnings.push_back("a6 <= 0 at mu1 = " + fmt_num(m) + ": asymptotic minimizer undefined");
        }
        if (num) {
            std::vector<Minimum> ms;
            if (circle_stable) ms.push_back({0.0, Acirc, 0.0});
            if (auto b = branch->stable_at(m, opts)) ms.push_back({b->alpha_proxy, b->area, b->energy});
            assign(ms, row.bvp_alpha_stable, row.bvp_area_stable, row.bvp_alpha_metastable, row.bvp_area_metastable);
        }
        curve.rows.push_back(row);
    }

    auto in_range = [&](double m) { return m >= mu1_min && m <= mu1_max; };
    if (rep.order == TransitionOrder::FirstOrder && rep.maxwell_mu1 && in_range(*rep.maxwell_mu1) && asym) {
        AreaCurveRow row;
        blank(row);
        row.kind = "maxwell";
        row.mu1 = *rep.maxwell_mu1;
        row.alpha_stable = *rep.alpha_star;
        row.area_stable = shapes::enclosed_area(row.mu1, row.alpha_stable);
        row.alpha_metastable = 0.0;
        row.area_metastable = circular_solution(row.mu1).area;
        curve.rows.push_back(row);
    }
    if (rep.order != TransitionOrder::FirstOrder && in_range(rep.mu1_critical)) {
        AreaCurveRow row;
        blank(row);
        row.kind = "critical";
        row.mu1 = rep.mu1_critical;
        row.alpha_stable = 0.0;
        row.area_stable = circular_solution(row.mu1).area;
        curve.rows.push_back(row);
    }
    if (rep.order == TransitionOrder::FirstOrder && num) {
        if (auto mb = bvp_maxwell(mu2, opts); mb && in_range(mb->mu1)) {
            AreaCurveRow row;
            blank(row);
            row.kind = "bvp_maxwell";
            row.mu1 = mb->mu1;
            row.bvp_alpha_stable = mb->alpha_proxy;
            row.bvp_area_stable = mb->area;
            row.bvp_alpha_metastable = 0.0;
            row.bvp_area_metastable = circular_solution(row.mu1).area;
            curve.rows.push_back(row);
        } else {
            curve.warnings.push_back("BVP Maxwell point not found in the spinodal window");
        }
    }
    std::stable_sort(curve.rows.begin(), curve.rows.end(), [](auto& a, auto& b) { return a.mu1 < b.mu1; });
    return curve;
}

Table AreaCurve::to_table() const {
    Table t;
    const bool asym = source != AreaSource::Bvp, num = source != AreaSource::Asymptotic;
    t.header = {"kind", "mu1"};
    if (asym) t.header.insert(t.header.end(), {"alpha_stable", "area_stable", "alpha_metastable", "area_metastable"});
    if (num)
        t.header.insert(t.header.end(),
                        {"bvp_alpha_stable", "bvp_area_stable", "bvp_alpha_metastable", "bvp_area_metastable"});
    for (const auto& r : rows) {
        std::vector<std::string> cells{r.kind, fmt_num(r.mu1)};
        if (asym)
            for (double v : {r.alpha_stable, r.area_stable, r.alpha_metastable, r.area_metastable})
                cells.push_back(fmt_num(v));
        if (num)
            for (double v : {r.bvp_alpha_stable, r.bvp_area_stable, r.bvp_alpha_metastable, r.bvp_area_metastable})
                cells.push_back(fmt_num(v));
        t.rows.push_back(cells);
    }
    return t;
}

}  // namespace ringbif::bvp
