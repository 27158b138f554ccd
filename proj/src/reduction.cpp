#include "ringbif/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "ringbif/errors.hpp"

namespace ringbif {

namespace {

// Least squares on columns u^p, u = alpha / alpha_max, returning unscaled coefficients.
Vec fit_monomials(const std::vector<double>& x, const std::vector<double>& y, const std::vector<int>& powers,
                  double xmax, double* rms) {
    const int m = static_cast<int>(x.size()), k = static_cast<int>(powers.size());
    Mat A(m, k);
    Vec b(m);
    for (int i = 0; i < m; ++i) {
        double u = x[i] / xmax;
        for (int j = 0; j < k; ++j) A(i, j) = std::pow(u, powers[j]);
        b[i] = y[i];
    }
    Vec c = A.colPivHouseholderQr().solve(b);
    if (rms) *rms = m > 0 ? std::sqrt((A * c - b).squaredNorm() / m) : 0.0;
    for (int j = 0; j < k; ++j) c[j] /= std::pow(xmax, powers[j]);
    return c;
}

void check_grid(const std::vector<double>& alphas) {
    if (alphas.empty()) throw DomainError("empty alpha grid");
    bool has_zero = false;
    std::vector<double> pos, neg;
    for (double a : alphas) {
        if (a == 0.0) has_zero = true;
        else if (a > 0.0) pos.push_back(a);
        else neg.push_back(-a);
    }
    std::sort(pos.begin(), pos.end());
    std::sort(neg.begin(), neg.end());
    if (!has_zero) throw DomainError("alpha grid must include 0");
    if (pos.size() < 3 || pos.size() != neg.size()) throw DomainError("alpha grid must be symmetric about 0");
    for (std::size_t i = 0; i < pos.size(); ++i)
        if (std::abs(pos[i] - neg[i]) > 1e-14 * pos[i]) throw DomainError("alpha grid must be symmetric about 0");
}

struct Direction {
    Vec v;
    KernelInfo kernel;
    bool near_critical = false;
};

Direction reduction_direction(const EnergyFunctional& f, const ReductionOptions& opts) {
    Direction d;
    Mat H = assemble_hessian(f, opts.h_fd);
    d.kernel = detect_kernel(H, f.symmetry_modes, opts.rank_tol, 1);
    if (opts.direction) {
        d.v = *opts.direction;
    } else if (!d.kernel.basis.empty()) {
        d.v = d.kernel.basis.front();
    } else if (opts.allow_near_critical) {
        d.v = d.kernel.soft_vector;
        d.near_critical = true;
    } else {
        throw NoBifurcation(f.name + ": Hessian kernel is empty at this parameter point");
    }
    d.v = normalize_basis(d.v, opts.normalization);
    return d;
}

ReductionResult run_reduction(const EnergyFunctional& slave, const EnergyFunctional& eval,
                              const std::vector<double>& alphas, const ReductionOptions& opts) {
    check_grid(alphas);
    validate_functional(slave);
    if (eval.dimension != slave.dimension) throw DomainError("frozen evaluation dimension mismatch");

    ReductionResult r;
    Direction dir = reduction_direction(slave, opts);
    r.direction = dir.v;
    r.kernel_basis = dir.kernel.basis;
    r.kernel_eigenvalues = dir.kernel.eigenvalues;
    r.near_critical = dir.near_critical;
    const Vec& v = dir.v;
    const int n = slave.dimension;

    // sweep each side outward from 0 so every solve is warm-started
    std::map<double, std::pair<Vec, SlavedSolve>> solved;
    for (int side : {1, -1}) {
        std::vector<double> targets;
        for (double a : alphas)
            if (a * side > 0.0) targets.push_back(a);
        std::sort(targets.begin(), targets.end(), [](double x, double y) { return std::abs(x) < std::abs(y); });
        double a_prev = 0.0;
        Vec w_prev = Vec::Zero(n);
        for (double a : targets) {
            double step = a - a_prev;
            int halvings = 0;
            double cur = a_prev;
            Vec w = w_prev;
            SlavedSolve last;
            while (cur != a) {
                double next = std::abs(a - cur) <= std::abs(step) ? a : cur + step;
                SlavedSolve s = solve_slaved(slave, v, next, w, opts);
                if (s.converged) {
                    cur = next;
                    w = s.w;
                    last = s;
                } else {
                    if (++halvings > opts.max_halvings)
                        throw TrustRegionExceeded(slave.name + ": slaved Newton failed near alpha = " +
                                                      std::to_string(next),
                                                  next);
                    step *= 0.5;
                }
            }
            solved[a] = {w, last};
            a_prev = a;
            w_prev = w;
        }
    }
    SlavedSolve zero;
    zero.w = Vec::Zero(n);
    zero.converged = true;
    solved[0.0] = {Vec::Zero(n), zero};

    std::vector<double> xs, gs;
    const double e0 = eval.energy(eval.trivial_point);
    for (auto& [a, entry] : solved) {
        Vec x = slave.trivial_point + a * v + entry.first;
        double g = eval.energy(x) - e0;
        r.alphas.push_back(a);
        r.slaved_solutions.push_back(entry.first);
        r.solves.push_back(entry.second);
        r.g_samples.push_back({a, g});
        xs.push_back(a);
        gs.push_back(g);
    }
    r.alpha_max = 0.0;
    for (double a : xs) r.alpha_max = std::max(r.alpha_max, std::abs(a));

    std::vector<int> even;
    for (int p = 2; p <= opts.even_degree; p += 2) even.push_back(p);
    Vec ce = fit_monomials(xs, gs, even, r.alpha_max, &r.fit_residual);
    r.even_coefficients.assign(ce.data(), ce.data() + ce.size());

    std::vector<double> xo, go;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] <= 0.0) continue;
        auto it = std::find_if(xs.begin(), xs.end(), [&](double y) { return std::abs(y + xs[i]) <= 1e-14 * xs[i]; });
        xo.push_back(xs[i]);
        go.push_back(0.5 * (gs[i] - gs[it - xs.begin()]));
    }
    std::vector<int> odd;
    for (int p = 1; p <= opts.odd_degree; p += 2) odd.push_back(p);
    if (odd.size() > xo.size()) odd.resize(xo.size());
    Vec co = fit_monomials(xo, go, odd, r.alpha_max, nullptr);
    for (int j = 0; j < co.size(); ++j) r.odd_contributions.push_back(co[j] * std::pow(r.alpha_max, odd[j]));
    // uncertainty of each scaled odd coefficient implied by the residual of a joint even+odd fit
    {
        std::vector<int> all = even;
        all.insert(all.end(), odd.begin(), odd.end());
        double noise = 0.0;
        fit_monomials(xs, gs, all, r.alpha_max, &noise);
        Mat A(xo.size(), odd.size());
        for (std::size_t i = 0; i < xo.size(); ++i)
            for (std::size_t j = 0; j < odd.size(); ++j) A(i, j) = std::pow(xo[i] / r.alpha_max, odd[j]);
        Mat cov = (A.transpose() * A).inverse();
        for (std::size_t j = 0; j < odd.size(); ++j) {
            double sigma = noise * std::sqrt(cov(j, j));
            double c = std::abs(r.odd_contributions[j]);
            r.odd_significance.push_back(sigma > 0.0 ? c / sigma : (c == 0.0 ? 0.0 : INFINITY));
        }
    }

    double gmax = 0.0;
    for (double g : gs) gmax = std::max(gmax, std::abs(g));
    r.fitted.a2 = ce.size() > 0 ? ce[0] : 0.0;
    r.fitted.a4 = ce.size() > 1 ? ce[1] : 0.0;
    r.fitted.a6 = ce.size() > 2 ? ce[2] : 0.0;
    r.fitted.source = CoefficientSource::EngineFit;
    double floor = std::max(10.0 * r.fit_residual, 1e-9 * gmax);
    double am = r.alpha_max;
    try {
        r.fitted.determinacy = determinacy_degree(r.fitted.a2 * am * am, r.fitted.a4 * std::pow(am, 4),
                                                  r.fitted.a6 * std::pow(am, 6), floor, floor, floor, 1.0);
    } catch (const DeterminacyFailure&) {
        r.fitted.determinacy = 0;
        r.warnings.push_back("reduced function not 6-determined on this grid");
    }
    if (r.fit_residual > opts.fit_rtol * std::max(gmax, 1e-300))
        r.warnings.push_back("fit residual " + std::to_string(r.fit_residual) +
                             " exceeds tolerance: grid too wide or too few harmonics");
    return r;
}

}  // namespace

KernelInfo detect_kernel(const Mat& H, const std::vector<Vec>& symmetry_modes, double rank_tol, int max_dim) {
    const int n = static_cast<int>(H.rows());
    if ((H - H.transpose()).cwiseAbs().maxCoeff() > 1e-8 * std::max(1.0, H.cwiseAbs().maxCoeff()))
        throw DomainError("detect_kernel: matrix is not symmetric");
    Mat B;
    if (symmetry_modes.empty()) {
        B = Mat::Identity(n, n);
    } else {
        Mat S(n, static_cast<int>(symmetry_modes.size()));
        for (std::size_t j = 0; j < symmetry_modes.size(); ++j) S.col(j) = symmetry_modes[j];
        Eigen::HouseholderQR<Mat> qr(S);
        Mat Q = qr.householderQ() * Mat::Identity(n, n);
        int m = static_cast<int>(symmetry_modes.size());
        B = Q.rightCols(n - m);
    }
    Mat Hc = B.transpose() * H * B;
    Eigen::SelfAdjointEigenSolver<Mat> es(Hc);
    const Vec& lam = es.eigenvalues();
    KernelInfo k;
    k.spectral_norm = lam.cwiseAbs().maxCoeff();
    std::vector<int> order(lam.size());
    for (int i = 0; i < lam.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return std::abs(lam[a]) < std::abs(lam[b]); });
    for (int i : order) k.eigenvalues.push_back(lam[i]);
    k.soft_vector = B * es.eigenvectors().col(order.front());
    for (int i : order) {
        if (std::abs(lam[i]) < rank_tol * k.spectral_norm) k.basis.push_back(B * es.eigenvectors().col(i));
    }
    if (static_cast<int>(k.basis.size()) > max_dim) {
        std::vector<double> small(k.eigenvalues.begin(),
                                  k.eigenvalues.begin() + std::min<std::size_t>(k.eigenvalues.size(), k.basis.size() + 2));
        throw DegenerateKernel("kernel dimension " + std::to_string(k.basis.size()) + " exceeds expected " +
                                   std::to_string(max_dim),
                               small);
    }
    return k;
}

Vec normalize_basis(const Vec& v, const NormalizationConvention& convention) {
    double nv = v.norm();
    if (!(nv > 0.0)) throw NormalizationAmbiguous("zero kernel vector");
    if (convention.index) {
        int i = *convention.index;
        if (i < 0 || i >= v.size()) throw NormalizationAmbiguous("normalization index out of range");
        if (std::abs(v[i]) < 1e-12 * nv)
            throw NormalizationAmbiguous("reference component vanishes under the chosen convention");
        return v / v[i];
    }
    Vec u = v / nv;
    for (int i = 0; i < u.size(); ++i) {
        if (std::abs(u[i]) > 1e-8) return u[i] > 0.0 ? u : Vec(-u);
    }
    return u;
}

SlavedSolve solve_slaved(const EnergyFunctional& f, const Vec& v, double alpha, const Vec& w_start,
                         const ReductionOptions& opts) {
    const int n = f.dimension;
    SlavedSolve s;
    s.w = w_start - v * (v.dot(w_start) / v.dot(v));
    const double vv = v.dot(v);
    double hnorm = 0.0;
    Mat K = Mat::Zero(n + 1, n + 1);
    for (int it = 0; it <= opts.max_newton; ++it) {
        Vec x = f.trivial_point + alpha * v + s.w;
        Vec g = evaluate_gradient(f, x);
        double lambda = v.dot(g) / vv;
        Vec qg = g - lambda * v;
        double res = qg.lpNorm<Eigen::Infinity>();
        s.residual_history.push_back(res);
        Mat H = assemble_hessian(f, x, opts.h_fd);
        if (it == 0) hnorm = std::max(1.0, H.cwiseAbs().maxCoeff());
        double tol = opts.gtol * hnorm * std::max(std::abs(alpha), 1e-3);
        if (!std::isfinite(res)) break;
        if (res <= tol) {
            s.converged = true;
            s.iterations = it;
            return s;
        }
        if (it == opts.max_newton) break;
        K.topLeftCorner(n, n) = H;
        K.block(0, n, n, 1) = -v;
        K.block(n, 0, 1, n) = v.transpose();
        K(n, n) = 0.0;
        Vec rhs(n + 1);
        rhs.head(n) = -qg;
        rhs[n] = -v.dot(s.w);
        Vec d = K.partialPivLu().solve(rhs);
        if (!d.allFinite()) break;
        s.w += d.head(n);
        // divergence guard
        if (it > 3 && res > 1e3 * s.residual_history.front() + tol) break;
        if (d.head(n).norm() < 1e-15 * (1.0 + s.w.norm()) && res < 1e3 * tol) {
            s.converged = true;
            s.iterations = it + 1;
            return s;
        }
    }
    s.converged = false;
    s.iterations = static_cast<int>(s.residual_history.size());
    return s;
}

ReductionResult reduce(const EnergyFunctional& f, const std::vector<double>& alphas, const ReductionOptions& opts) {
    return run_reduction(f, f, alphas, opts);
}

ReductionResult reduce_frozen(const EnergyFunctional& slave, const EnergyFunctional& evaluate,
                              const std::vector<double>& alphas, const ReductionOptions& opts) {
    return run_reduction(slave, evaluate, alphas, opts);
}

std::vector<Vec> slaved_taylor(const ReductionResult& r, int max_order) {
    if (r.slaved_solutions.empty()) return {};
    const int n = static_cast<int>(r.slaved_solutions.front().size());
    std::vector<int> powers;
    for (int p = 1; p <= max_order + 4; ++p) powers.push_back(p);
    std::vector<Vec> out(max_order, Vec::Zero(n));
    std::vector<double> y(r.alphas.size());
    for (int i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < r.alphas.size(); ++k) y[k] = r.slaved_solutions[k][i];
        Vec c = fit_monomials(r.alphas, y, powers, r.alpha_max, nullptr);
        for (int k = 0; k < max_order; ++k) out[k][i] = c[k];
    }
    return out;
}

std::vector<double> symmetric_grid(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 3) throw DomainError("symmetric_grid needs 0 < lo < hi, count >= 3");
    std::vector<double> g{0.0};
    for (int i = 0; i < count; ++i) {
        double a = lo + (hi - lo) * i / (count - 1);
        g.push_back(a);
        g.push_back(-a);
    }
    std::sort(g.begin(), g.end());
    return g;
}

nlohmann::json to_json(const ReductionResult& r) {
    nlohmann::json j;
    j["kernel_dimension"] = r.kernel_basis.size();
    j["near_critical"] = r.near_critical;
    j["kernel_eigenvalues"] = std::vector<double>(
        r.kernel_eigenvalues.begin(), r.kernel_eigenvalues.begin() + std::min<std::size_t>(3, r.kernel_eigenvalues.size()));
    j["direction"] = std::vector<double>(r.direction.data(), r.direction.data() + r.direction.size());
    nlohmann::json samples = nlohmann::json::array();
    for (auto [a, g] : r.g_samples) samples.push_back({{"alpha", a}, {"g", g}});
    j["g_samples"] = samples;
    j["fitted"] = {{"a2", r.fitted.a2}, {"a4", r.fitted.a4}, {"a6", r.fitted.a6},
                   {"determinacy", r.fitted.determinacy}};
    j["odd_contributions"] = r.odd_contributions;
    j["odd_significance"] = r.odd_significance;
    j["fit_residual"] = r.fit_residual;
    j["warnings"] = r.warnings;
    return j;
}

}  // namespace ringbif
