#include "ringbif/bvp.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "ringbif/errors.hpp"
#include "ringbif/output.hpp"
#include "ringbif/ring_functional.hpp"
#include "ringbif/shapes.hpp"

namespace ringbif::bvp {

namespace {

constexpr double pi = kPi;

struct Coefs {
    double p, q;  // pressure and p/b with k = L = 1
};

Coefs coefs(double mu1, double mu2) {
    if (!(mu1 >= 0.0) || !(mu2 > 0.0)) throw DomainError("bvp needs mu1 >= 0, mu2 > 0");
    return {2.0 * pi * mu1 * mu2, 2.0 * pi * mu1};
}

}  // namespace

RingBvp::RingBvp(int harmonics, int nodes) : N_(harmonics) {
    if (harmonics < 1) throw DomainError("bvp needs at least one harmonic");
    M_ = nodes > 0 ? nodes : 8 * N_ + 1;
    if (M_ <= 6 * N_) throw DomainError("bvp node count too small for exact projection");
    S_.resize(M_, N_ + 1);
    C_.resize(M_, N_ + 1);
    w_.resize(N_ + 1);
    for (int j = 0; j <= N_; ++j) w_[j] = 4.0 * pi * j;
    for (int i = 0; i < M_; ++i) {
        double s = static_cast<double>(i) / M_;
        for (int j = 0; j <= N_; ++j) {
            S_(i, j) = std::sin(w_[j] * s);
            C_(i, j) = std::cos(w_[j] * s);
        }
    }
}

Vec RingBvp::pack(const FourierState& s) const {
    if (std::abs(s.length - 1.0) > 1e-14) throw DomainError("bvp works with L = 1 states");
    Vec u = Vec::Zero(size());
    for (int j = 1; j <= N_; ++j) {
        int h = 2 * j;
        if (h > s.num_modes) break;
        u[j - 1] = s.theta.sin[h];
        u[N_ + j - 1] = s.xi.sin[h];
        u[2 * N_ + j] = s.eta.cos[h];
    }
    u[2 * N_] = s.eta.cos[0] - s.radius;
    return u;
}

FourierState RingBvp::unpack(const Vec& u, double mu1) const {
    FourierState s = FourierState::circular(mu1, 2 * N_, 1.0);
    for (int j = 1; j <= N_; ++j) {
        s.theta.sin[2 * j] = u[j - 1];
        s.xi.sin[2 * j] = u[N_ + j - 1];
        s.eta.cos[2 * j] = u[2 * N_ + j];
    }
    s.eta.cos[0] = u[2 * N_] + s.radius;
    return s;
}

RingBvp::Fields RingBvp::fields(const Vec& u) const {
    Vec th = Vec::Zero(N_ + 1), xs = Vec::Zero(N_ + 1), ec = Vec::Zero(N_ + 1);
    th.tail(N_) = u.segment(0, N_);
    xs.tail(N_) = u.segment(N_, N_);
    ec = u.segment(2 * N_, N_ + 1);
    Fields f;
    f.th1 = Vec::Constant(M_, 2.0 * pi) + C_ * th.cwiseProduct(w_);
    f.th2 = -(S_ * th.cwiseProduct(w_).cwiseProduct(w_));
    f.xi = S_ * xs;
    f.dxi = C_ * xs.cwiseProduct(w_);
    f.eta = C_ * ec;
    f.deta = -(S_ * ec.cwiseProduct(w_));
    return f;
}

Vec RingBvp::nodal_residual(const Vec& u, double mu1, double mu2) const {
    auto [p, q] = coefs(mu1, mu2);
    Fields f = fields(u);
    Vec r(3 * M_);
    for (int i = 0; i < M_; ++i) {
        r[i] = f.th2[i] - p * (f.xi[i] * f.dxi[i] + f.eta[i] * f.deta[i]);
        r[M_ + i] = f.deta[i] + f.th1[i] * f.xi[i];
        r[2 * M_ + i] = f.dxi[i] - (q + f.th1[i]) * f.eta[i] - 1.0;
    }
    return r;
}

Vec RingBvp::project(const Vec& r1, const Vec& r2, const Vec& r3) const {
    Vec out(size());
    Vec s1 = (2.0 / M_) * (S_.transpose() * r1), s2 = (2.0 / M_) * (S_.transpose() * r2);
    Vec c3 = (2.0 / M_) * (C_.transpose() * r3);
    c3[0] *= 0.5;
    out.segment(0, N_) = s1.tail(N_);
    out.segment(N_, N_) = s2.tail(N_);
    out.segment(2 * N_, N_ + 1) = c3;
    return out;
}

Vec RingBvp::residual(const Vec& u, double mu1, double mu2) const {
    Vec r = nodal_residual(u, mu1, mu2);
    return project(r.segment(0, M_), r.segment(M_, M_), r.segment(2 * M_, M_));
}

Mat RingBvp::jacobian(const Vec& u, double mu1, double mu2) const {
    auto [p, q] = coefs(mu1, mu2);
    Fields f = fields(u);
    const int n = size();
    Mat J(n, n);
    Vec d1(M_), d2(M_), d3(M_);
    for (int k = 0; k < n; ++k) {
        if (k < N_) {
            int j = k + 1;
            for (int i = 0; i < M_; ++i) {
                double dth1 = w_[j] * C_(i, j), dth2 = -w_[j] * w_[j] * S_(i, j);
                d1[i] = dth2;
                d2[i] = dth1 * f.xi[i];
                d3[i] = -dth1 * f.eta[i];
            }
        } else if (k < 2 * N_) {
            int j = k - N_ + 1;
            for (int i = 0; i < M_; ++i) {
                double dx = S_(i, j), ddx = w_[j] * C_(i, j);
                d1[i] = -p * (dx * f.dxi[i] + f.xi[i] * ddx);
                d2[i] = f.th1[i] * dx;
                d3[i] = ddx;
            }
        } else {
            int j = k - 2 * N_;
            for (int i = 0; i < M_; ++i) {
                double de = C_(i, j), dde = -w_[j] * S_(i, j);
                d1[i] = -p * (de * f.deta[i] + f.eta[i] * dde);
                d2[i] = dde;
                d3[i] = -(q + f.th1[i]) * de;
            }
        }
        J.col(k) = project(d1, d2, d3);
    }
    return J;
}

Vec RingBvp::dresidual_dmu1(const Vec& u, double mu1, double mu2) const {
    Fields f = fields(u);
    // dp/dmu1 = 2 pi mu2, dq/dmu1 = 2 pi
    Vec d1(M_), d2 = Vec::Zero(M_), d3(M_);
    for (int i = 0; i < M_; ++i) {
        d1[i] = -2.0 * pi * mu2 * (f.xi[i] * f.dxi[i] + f.eta[i] * f.deta[i]);
        d3[i] = -2.0 * pi * f.eta[i];
    }
    (void)mu1;
    return project(d1, d2, d3);
}

Vec RingBvp::dresidual_dmu2(const Vec& u, double mu1, double mu2) const {
    Fields f = fields(u);
    Vec d1(M_), d2 = Vec::Zero(M_), d3 = Vec::Zero(M_);
    for (int i = 0; i < M_; ++i) d1[i] = -2.0 * pi * mu1 * (f.xi[i] * f.dxi[i] + f.eta[i] * f.deta[i]);
    (void)mu2;
    return project(d1, d2, d3);
}

Vec residual(const FourierState& state, const ModelParams& params, int nodes) {
    if (state.num_modes % 2 != 0) throw DomainError("bvp residual expects an even number of harmonics");
    RingBvp bvp(state.num_modes / 2, nodes);
    return bvp.nodal_residual(bvp.pack(state), params.mu1, params.mu2);
}

double state_energy(const FourierState& state, double mu1, double mu2, int harmonics) {
    RingModel model(mu1, mu2, make_ring_basis(harmonics, 2, RingBasisKind::Symmetric));
    return model.energy(model.from_state(state));
}

double alpha_proxy(const FourierState& state) { return state.eta.cos.size() > 2 ? state.eta.cos[2] / state.length : 0.0; }

namespace {

void finish(SolveResult& r, const RingBvp& bvp, const Vec& u, const Mat& J, const BvpOptions& opts) {
    r.state = bvp.unpack(u, r.mu1);
    Eigen::JacobiSVD<Mat> svd(J);
    r.smallest_singular = svd.singularValues().minCoeff();
    Eigen::PartialPivLU<Mat> lu(J);
    r.jacobian_sign = lu.determinant() >= 0.0 ? 1 : -1;
    r.energy = state_energy(r.state, r.mu1, r.mu2, opts.harmonics);
    r.area = shapes::state_area(r.state, 8 * opts.harmonics + 1);
    r.alpha_proxy = alpha_proxy(r.state);
}

// Newton with halving backtracking on F(z) = 0; jac returns the full square Jacobian.
template <class ResFn, class JacFn>
bool newton(Vec& z, const ResFn& res, const JacFn& jac, const BvpOptions& opts, int& iters, double& last) {
    Vec F = res(z);
    last = F.lpNorm<Eigen::Infinity>();
    for (iters = 0; iters < opts.max_iter; ++iters) {
        if (!std::isfinite(last)) return false;
        if (last < opts.tol) return true;
        Mat J = jac(z);
        Eigen::PartialPivLU<Mat> lu(J);
        Vec d = lu.solve(-F);
        if (!d.allFinite()) return false;
        double t = 1.0, fn = F.norm();
        bool accepted = false;
        for (int b = 0; b <= opts.max_backtracks; ++b) {
            Vec zt = z + t * d;
            Vec Ft = res(zt);
            if (Ft.allFinite() && Ft.norm() < (1.0 - 1e-4 * t) * fn) {
                z = zt;
                F = Ft;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        last = F.lpNorm<Eigen::Infinity>();
        if (!accepted) return last < opts.tol;
    }
    return last < opts.tol;
}

}  // namespace

SolveResult solve(const ModelParams& params, const FourierState& initial_guess, const BvpOptions& opts) {
    RingBvp bvp(opts.harmonics);
    FourierState guess = initial_guess;
    if (guess.num_modes != 2 * opts.harmonics) {
        FourierState g(2 * opts.harmonics, 1.0, initial_guess.radius);
        int top = std::min(guess.num_modes, g.num_modes);
        for (int j = 0; j <= top; ++j) {
            g.theta.sin[j] = guess.theta.sin[j];
            g.xi.sin[j] = guess.xi.sin[j];
            g.eta.cos[j] = guess.eta.cos[j];
        }
        guess = g;
    }
    Vec u = bvp.pack(guess);
    const double mu1 = params.mu1, mu2 = params.mu2;
    SolveResult r;
    r.mu1 = mu1;
    r.mu2 = mu2;
    auto res = [&](const Vec& z) { return bvp.residual(z, mu1, mu2); };
    auto jac = [&](const Vec& z) { return bvp.jacobian(z, mu1, mu2); };
    bool ok = newton(u, res, jac, opts, r.iterations, r.residual);
    Mat J = jac(u);
    if (!ok) {
        Eigen::JacobiSVD<Mat> svd(J);
        double smin = svd.singularValues().minCoeff(), smax = svd.singularValues().maxCoeff();
        std::string hint = smin < 1e-8 * smax
                               ? " (Jacobian nearly singular: near a bifurcation, seed from asymptotic_state)"
                               : "";
        throw Diverged("bvp Newton did not converge, residual " + std::to_string(r.residual) + hint, r.residual);
    }
    finish(r, bvp, u, J, opts);
    return r;
}

SolveResult solve_at_amplitude(double mu1, double mu2, FreeParameter free, AmplitudeMeasure measure, double alpha,
                               const FourierState& initial_guess, const BvpOptions& opts) {
    RingBvp bvp(opts.harmonics);
    const int n = bvp.size();
    Vec ell = Vec::Zero(n);
    if (measure == AmplitudeMeasure::EtaProxy) {
        ell[bvp.eta1_index()] = 1.0;
    } else {
        if (free == FreeParameter::Mu1) throw DomainError("kernel projection needs mu1 fixed");
        RingModel model(mu1, mu2, make_ring_basis(opts.harmonics, 2, RingBasisKind::Symmetric));
        Vec v = model.linear_mode_vector();  // same layout as the bvp unknowns
        ell = v / v.squaredNorm();
    }
    Vec z(n + 1);
    z.head(n) = bvp.pack(initial_guess);
    z[n] = free == FreeParameter::Mu1 ? mu1 : mu2;
    auto split = [&](const Vec& y, double& m1, double& m2) {
        m1 = free == FreeParameter::Mu1 ? y[n] : mu1;
        m2 = free == FreeParameter::Mu2 ? y[n] : mu2;
    };
    auto res = [&](const Vec& y) {
        double m1, m2;
        split(y, m1, m2);
        Vec F(n + 1);
        if (!(m1 >= 0.0) || !(m2 > 0.0)) return Vec(Vec::Constant(n + 1, std::nan("")));
        F.head(n) = bvp.residual(y.head(n), m1, m2);
        F[n] = ell.dot(y.head(n)) - alpha;
        return F;
    };
    auto jac = [&](const Vec& y) {
        double m1, m2;
        split(y, m1, m2);
        Mat J = Mat::Zero(n + 1, n + 1);
        J.topLeftCorner(n, n) = bvp.jacobian(y.head(n), m1, m2);
        J.block(0, n, n, 1) = free == FreeParameter::Mu1 ? bvp.dresidual_dmu1(y.head(n), m1, m2)
                                                          : bvp.dresidual_dmu2(y.head(n), m1, m2);
        J.block(n, 0, 1, n) = ell.transpose();
        return J;
    };
    SolveResult r;
    bool ok = newton(z, res, jac, opts, r.iterations, r.residual);
    if (!ok) throw Diverged("amplitude-constrained Newton did not converge", r.residual);
    split(z, r.mu1, r.mu2);
    finish(r, bvp, z.head(n), bvp.jacobian(z.head(n), r.mu1, r.mu2), opts);
    return r;
}

std::string to_string(PointStatus s) {
    switch (s) {
        case PointStatus::Converged: return "converged";
        case PointStatus::Fold: return "fold";
        case PointStatus::Diverged: return "diverged";
    }
    return "diverged";
}

EquilibriumBranch continue_branch(double mu2, double mu1_start, const FourierState& start, const StepControl& control,
                                  const BvpOptions& opts) {
    EquilibriumBranch br;
    br.mu2 = mu2;
    auto to_point = [](const SolveResult& s) {
        BranchPoint p;
        p.mu1 = s.mu1;
        p.state = s.state;
        p.area = s.area;
        p.energy = s.energy;
        p.alpha_proxy = s.alpha_proxy;
        p.smallest_singular = s.smallest_singular;
        return p;
    };
    SolveResult cur;
    try {
        cur = solve(make_params(mu1_start, mu2), start, opts);
    } catch (const Diverged&) {
        BranchPoint p;
        p.mu1 = mu1_start;
        p.state = start;
        p.status = PointStatus::Diverged;
        br.points.push_back(p);
        return br;
    }
    br.points.push_back(to_point(cur));
    const double dir = control.mu1_end >= mu1_start ? 1.0 : -1.0;
    double h = std::abs(control.step);
    std::optional<SolveResult> prev;
    while (dir * (control.mu1_end - cur.mu1) > 1e-14) {
        double target = cur.mu1 + dir * std::min(h, std::abs(control.mu1_end - cur.mu1));
        FourierState guess = cur.state;
        if (prev) {
            // secant predictor in mu1
            RingBvp bvp(opts.harmonics);
            double t = (target - cur.mu1) / (cur.mu1 - prev->mu1);
            Vec u = bvp.pack(cur.state) + t * (bvp.pack(cur.state) - bvp.pack(prev->state));
            guess = bvp.unpack(u, target);
        }
        try {
            SolveResult next = solve(make_params(target, mu2), guess, opts);
            if (next.jacobian_sign != cur.jacobian_sign) br.singular_crossings.push_back(0.5 * (cur.mu1 + next.mu1));
            prev = cur;
            cur = next;
            br.points.push_back(to_point(cur));
            h = std::min(h * 1.5, std::abs(control.step));
        } catch (const Diverged&) {
            h *= 0.5;
            if (h < control.min_step) {
                br.points.back().status = PointStatus::Fold;
                br.terminated_at_fold = true;
                break;
            }
        }
    }
    return br;
}

std::string branch_csv(const EquilibriumBranch& branch) {
    std::ostringstream os;
    os << "mu1,alpha_proxy,area,energy,status\n";
    for (const auto& p : branch.points)
        os << fmt_num(p.mu1) << ',' << fmt_num(p.alpha_proxy) << ',' << fmt_num(p.area) << ',' << fmt_num(p.energy)
           << ',' << to_string(p.status) << '\n';
    return os.str();
}

}  // namespace ringbif::bvp
