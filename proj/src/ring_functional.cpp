#include "ringbif/ring_functional.hpp"

#include <cmath>

#include "ringbif/errors.hpp"
#include "ringbif/landau.hpp"
#include "ringbif/params.hpp"

namespace ringbif {

namespace {
constexpr double pi = kPi;
}

int RingBasis::index_of(RingField f, bool is_sin, int harmonic) const {
    for (int i = 0; i < size(); ++i) {
        const auto& e = entries[i];
        if (e.field == f && e.is_sin == is_sin && e.harmonic == harmonic) return i;
    }
    return -1;
}

RingBasis make_ring_basis(int harmonics, int fold, RingBasisKind kind) {
    if (harmonics < 1 || fold < 1) throw DomainError("ring basis needs harmonics >= 1 and fold >= 1");
    RingBasis b;
    b.harmonics = harmonics;
    b.fold = fold;
    b.kind = kind;
    if (kind == RingBasisKind::Symmetric) {
        for (int j = 1; j <= harmonics; ++j) b.entries.push_back({RingField::Theta, true, j});
        for (int j = 1; j <= harmonics; ++j) b.entries.push_back({RingField::Xi, true, j});
        for (int j = 0; j <= harmonics; ++j) b.entries.push_back({RingField::Eta, false, j});
    } else {
        for (RingField f : {RingField::Theta, RingField::Xi, RingField::Eta}) {
            for (int j = 1; j <= harmonics; ++j) b.entries.push_back({f, true, j});
            for (int j = 0; j <= harmonics; ++j) b.entries.push_back({f, false, j});
        }
    }
    return b;
}

RingModel::RingModel(double mu1, double mu2, RingBasis basis, int quadrature)
    : mu1_(mu1), mu2_(mu2), basis_(std::move(basis)) {
    if (!(mu1 >= 0.0) || !(mu2 > 0.0)) throw DomainError("ring model needs mu1 >= 0, mu2 > 0");
    b_ = mu2;
    p_ = 2.0 * pi * mu1 * mu2;
    radius_ = 1.0 / (2.0 * pi * (1.0 + mu1));
    const int top = basis_.harmonics * basis_.fold;
    M_ = quadrature > 0 ? quadrature : 4 * top + 1;
    if (M_ <= 3 * top) throw DomainError("ring quadrature too coarse for a cubic density");
    const int n = basis_.size();
    for (Mat* m : {&Dth_, &Vxi_, &Dxi_, &Veta_, &Deta_}) *m = Mat::Zero(M_, n);
    for (int i = 0; i < M_; ++i) {
        double s = static_cast<double>(i) / M_;
        for (int k = 0; k < n; ++k) {
            const auto& e = basis_.entries[k];
            double w = 2.0 * pi * basis_.fold * e.harmonic;
            double val = e.is_sin ? std::sin(w * s) : std::cos(w * s);
            double der = e.is_sin ? w * std::cos(w * s) : -w * std::sin(w * s);
            switch (e.field) {
                case RingField::Theta: Dth_(i, k) = der; break;
                case RingField::Xi:
                    Vxi_(i, k) = val;
                    Dxi_(i, k) = der;
                    break;
                case RingField::Eta:
                    Veta_(i, k) = val;
                    Deta_(i, k) = der;
                    break;
            }
        }
    }
}

void RingModel::nodal(const Vec& c, Vec& dphi, Vec& X, Vec& dX, Vec& E, Vec& dE) const {
    if (c.size() != basis_.size()) throw DomainError("ring coefficient vector has wrong size");
    dphi = Dth_ * c;
    X = Vxi_ * c;
    dX = Dxi_ * c;
    E = Veta_ * c;
    dE = Deta_ * c;
}

double RingModel::energy(const Vec& c) const {
    Vec dphi, X, dX, E, dE;
    nodal(c, dphi, X, dX, E, dE);
    const double p = p_, R = radius_, tc = 2.0 * pi;
    double acc = 0.0;
    for (int i = 0; i < M_; ++i) {
        double r2 = X[i] * X[i] + E[i] * E[i];
        acc += 0.5 * dphi[i] * dphi[i] - 0.5 * p * p / b_ * E[i] * E[i] - 0.5 * p * (X[i] * dE[i] - E[i] * dX[i]) -
               0.5 * p * r2 * (tc + dphi[i]) + p * R * E[i] * dphi[i];
    }
    return acc / M_;
}

Vec RingModel::gradient(const Vec& c) const {
    Vec dphi, X, dX, E, dE;
    nodal(c, dphi, X, dX, E, dE);
    const double p = p_, R = radius_, tc = 2.0 * pi;
    Vec f_dphi(M_), f_X(M_), f_dX(M_), f_E(M_), f_dE(M_);
    for (int i = 0; i < M_; ++i) {
        double th = tc + dphi[i];
        f_dphi[i] = dphi[i] - 0.5 * p * (X[i] * X[i] + E[i] * E[i]) + p * R * E[i];
        f_X[i] = -0.5 * p * dE[i] - p * X[i] * th;
        f_dX[i] = 0.5 * p * E[i];
        f_E[i] = -p * p / b_ * E[i] + 0.5 * p * dX[i] - p * E[i] * th + p * R * dphi[i];
        f_dE[i] = -0.5 * p * X[i];
    }
    Vec g = Dth_.transpose() * f_dphi + Vxi_.transpose() * f_X + Dxi_.transpose() * f_dX +
            Veta_.transpose() * f_E + Deta_.transpose() * f_dE;
    return g / M_;
}

Mat RingModel::hessian(const Vec& c) const {
    Vec dphi, X, dX, E, dE;
    nodal(c, dphi, X, dX, E, dE);
    const double p = p_, R = radius_, tc = 2.0 * pi;
    Vec dpX = -p * X, dpE = -p * E + Vec::Constant(M_, p * R);
    Vec XX(M_), EE(M_);
    for (int i = 0; i < M_; ++i) {
        XX[i] = -p * (tc + dphi[i]);
        EE[i] = -p * p / b_ - p * (tc + dphi[i]);
    }
    Mat H = Dth_.transpose() * Dth_;
    Mat cross = Dth_.transpose() * dpX.asDiagonal() * Vxi_ + Dth_.transpose() * dpE.asDiagonal() * Veta_ +
                (-0.5 * p) * (Vxi_.transpose() * Deta_) + (0.5 * p) * (Dxi_.transpose() * Veta_);
    H += cross + cross.transpose();
    H += Vxi_.transpose() * XX.asDiagonal() * Vxi_ + Veta_.transpose() * EE.asDiagonal() * Veta_;
    return H / M_;
}

EnergyFunctional RingModel::functional() const {
    auto self = std::make_shared<RingModel>(*this);
    EnergyFunctional f;
    f.name = "ring";
    f.dimension = basis_.size();
    f.energy = [self](const Vec& c) { return self->energy(c); };
    f.gradient = [self](const Vec& c) { return self->gradient(c); };
    f.hessian = [self](const Vec& c) { return self->hessian(c); };
    f.trivial_point = Vec::Zero(f.dimension);
    if (basis_.kind == RingBasisKind::Full) f.symmetry_modes = symmetry_modes();
    return f;
}

FourierState RingModel::to_state(const Vec& c) const {
    const int top = basis_.harmonics * basis_.fold;
    FourierState s(top, 1.0, radius_);
    for (int k = 0; k < basis_.size(); ++k) {
        const auto& e = basis_.entries[k];
        SeriesBank& bank = e.field == RingField::Theta ? s.theta : e.field == RingField::Xi ? s.xi : s.eta;
        int h = e.harmonic * basis_.fold;
        (e.is_sin ? bank.sin : bank.cos)[h] = c[k];
    }
    return s;
}

Vec RingModel::from_state(const FourierState& s) const {
    if (std::abs(s.length - 1.0) > 1e-14) throw DomainError("ring model works with L = 1 states");
    Vec c = Vec::Zero(basis_.size());
    for (int k = 0; k < basis_.size(); ++k) {
        const auto& e = basis_.entries[k];
        const SeriesBank& bank = e.field == RingField::Theta ? s.theta : e.field == RingField::Xi ? s.xi : s.eta;
        int h = e.harmonic * basis_.fold;
        if (h > s.num_modes) continue;
        c[k] = (e.is_sin ? bank.sin : bank.cos)[h];
    }
    // eta constant relative to this model's circle
    int i0 = basis_.index_of(RingField::Eta, false, 0);
    if (i0 >= 0) c[i0] += radius_ - s.radius;
    return c;
}

Vec RingModel::linear_mode_vector() const {
    if (basis_.fold != 2) throw DomainError("linear_mode_vector expects the n = 2 basis");
    Vec v = Vec::Zero(basis_.size());
    v[basis_.index_of(RingField::Theta, true, 1)] = -pi * (3.0 - mu1_) * (1.0 + mu1_);
    v[basis_.index_of(RingField::Xi, true, 1)] = 2.0;
    v[basis_.index_of(RingField::Eta, false, 1)] = 1.0;
    return v;
}

int RingModel::eta1_index() const { return basis_.index_of(RingField::Eta, false, 1); }

std::vector<Vec> RingModel::symmetry_modes() const {
    std::vector<Vec> modes;
    const int n = basis_.size();
    int rot = basis_.index_of(RingField::Theta, false, 0);
    if (rot >= 0) {
        Vec r = Vec::Zero(n);
        r[rot] = 1.0;
        modes.push_back(r);
    }
    if (basis_.fold == 1) {
        int xc = basis_.index_of(RingField::Xi, false, 1), xs = basis_.index_of(RingField::Xi, true, 1);
        int ec = basis_.index_of(RingField::Eta, false, 1), es = basis_.index_of(RingField::Eta, true, 1);
        if (xc >= 0 && xs >= 0 && ec >= 0 && es >= 0) {
            Vec tx = Vec::Zero(n), ty = Vec::Zero(n);
            tx[xc] = 1.0;
            tx[es] = -1.0;
            ty[xs] = 1.0;
            ty[ec] = 1.0;
            modes.push_back(tx);
            modes.push_back(ty);
        }
    }
    return modes;
}

RingReduction reduce_ring(double mu1, double mu2, const RingReductionOptions& opts) {
    RingBasis basis = make_ring_basis(opts.harmonics, 2, RingBasisKind::Symmetric);
    RingModel eval(mu1, mu2, basis);
    RingReduction out;
    ReductionOptions eo = opts.engine;
    eo.normalization.index = eval.eta1_index();
    std::vector<double> grid = opts.alphas.empty() ? symmetric_grid(0.002, 0.02, 10) : opts.alphas;
    if (opts.mode == SlavingMode::Frozen) {
        out.mu2_slaving = landau::critical_mu2(2, mu1);
        RingModel slave(mu1, out.mu2_slaving, basis);
        out.result = reduce_frozen(slave.functional(), eval.functional(), grid, eo);
    } else {
        out.mu2_slaving = mu2;
        out.result = reduce(eval.functional(), grid, eo);
    }
    out.landau_units = out.result.fitted;
    out.landau_units.a2 *= landau::kEnergyScale;
    out.landau_units.a4 *= landau::kEnergyScale;
    out.landau_units.a6 *= landau::kEnergyScale;
    return out;
}

}  // namespace ringbif
