#include "oresim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace oresim::dynamics {

using std::complex;

Eigen::MatrixXd OverlapTable::spin_block(model::Spin s) const {
    Eigen::MatrixXd block(basis.n_bath, basis.dim);
    for (int m = 0; m < basis.n_bath; ++m) {
        block.row(m) = c.row(basis.row(s, m));
    }
    return block;
}

OverlapTable overlap_table(const spectral::EigenSystem& eig,
                           const model::BareBasis& basis,
                           const spectral::ThermalWeights& weights) {
    if (eig.dim != basis.dim) {
        throw std::invalid_argument("overlap_table: eigensystem dimension " +
                                    std::to_string(eig.dim) + " does not match basis dim " +
                                    std::to_string(basis.dim));
    }
    if (weights.weights.size() != basis.n_bath) {
        throw std::invalid_argument("overlap_table: thermal weights do not match n_bath");
    }
    OverlapTable table;
    table.basis = basis;
    table.weights = weights;
    table.energies = eig.energies;
    table.c = eig.vectors;  // the bare row index is already the vector row index
    return table;
}

SpinState SpinState::from_polar(double c_plus_abs, double theta) {
    if (!std::isfinite(c_plus_abs) || !std::isfinite(theta)) {
        throw std::invalid_argument("SpinState: non-finite polar input");
    }
    if (c_plus_abs < -1e-12 || c_plus_abs > 1.0 + 1e-12) {
        throw std::invalid_argument("SpinState: |c_plus| must lie in [0, 1]");
    }
    const double cp = std::clamp(c_plus_abs, 0.0, 1.0);
    const double cm = std::sqrt(std::max(0.0, 1.0 - cp * cp));
    SpinState psi;
    if (cm == 0.0) {
        psi.c_plus = cp;  // phase is global here; canonical gauge keeps it real
        psi.c_minus = 0.0;
        return psi;
    }
    psi.c_plus = std::polar(cp, theta);
    psi.c_minus = cm;
    return psi;
}

void SpinState::validate() const {
    const double norm2 = std::norm(c_plus) + std::norm(c_minus);
    if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > 1e-12) {
        throw std::invalid_argument("SpinState: state is not normalized");
    }
}

// ------------------------------ channel kernel ------------------------------

ChannelKernel::ChannelKernel(const OverlapTable& table) {
    energies_ = table.energies;
    const Eigen::MatrixXd cp = table.spin_block(model::Spin::plus);
    const Eigen::MatrixXd cm = table.spin_block(model::Spin::minus);
    const Eigen::VectorXd& p = table.weights.weights;

    // F_kl sums the propagated level m, G_x thermally averages the start level n
    const Eigen::MatrixXd blocks[2] = {cp, cm};
    Eigen::MatrixXd f[2][2];
    for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
            f[k][l] = blocks[k].transpose() * blocks[l];
        }
    }
    const Eigen::MatrixXd wp = p.asDiagonal() * cm;  // diag(p) C_- etc.
    const Eigen::MatrixXd wq = p.asDiagonal() * cp;
    Eigen::MatrixXd g[4];
    g[0] = cp.transpose() * wp;  // P: (+, -)
    g[1] = cp.transpose() * wq;  // Q: (+, +)
    g[2] = cm.transpose() * wp;  // R: (-, -)
    g[3] = cm.transpose() * wq;  // T: (-, +)

    for (int x = 0; x < 4; ++x) {
        for (int k = 0; k < 2; ++k) {
            for (int l = 0; l < 2; ++l) {
                w_[x][k][l] = f[k][l].cwiseProduct(g[x]);
            }
        }
    }
}

ChannelMatrices ChannelKernel::at(double t) const {
    if (!std::isfinite(t)) {
        throw std::invalid_argument("ChannelKernel: time must be finite");
    }
    const Eigen::VectorXd cvec = (energies_.array() * t).cos();
    const Eigen::VectorXd svec = (energies_.array() * t).sin();

    ChannelMatrices ch;
    ch.t = t;
    Eigen::Matrix2cd* out[4] = {&ch.P, &ch.Q, &ch.R, &ch.T};
    for (int x = 0; x < 4; ++x) {
        for (int k = 0; k < 2; ++k) {
            for (int l = 0; l < 2; ++l) {
                // X_kl = sum_{g,g'} exp(-i (E_g - E_g') t) W(g, g'), evaluated as
                // u^T (W conj(u)) with u = exp(-i E t), using real products only
                const Eigen::VectorXd va = w_[x][k][l] * cvec;
                const Eigen::VectorXd vb = w_[x][k][l] * svec;
                (*out[x])(k, l) = complex<double>(cvec.dot(va) + svec.dot(vb),
                                                  cvec.dot(vb) - svec.dot(va));
            }
        }
    }
    return ch;
}

ChannelMatrices channel_matrices(const OverlapTable& table, double t) {
    return ChannelKernel(table).at(t);
}

// ------------------------------- density, purity -------------------------------

Eigen::Matrix2cd reduced_density(const ChannelMatrices& ch, const SpinState& psi) {
    psi.validate();
    const double a = std::norm(psi.c_plus);
    const double b = std::norm(psi.c_minus);
    const complex<double> z = psi.c_plus * std::conj(psi.c_minus);
    return a * ch.Q + b * ch.R + z * ch.P + std::conj(z) * ch.T;
}

double purity(const Eigen::Matrix2cd& rho_s) {
    return rho_s.cwiseAbs2().sum();
}

double purity_expanded(const ChannelMatrices& ch, const SpinState& psi) {
    psi.validate();
    const double a = std::norm(psi.c_plus);
    const double b = std::norm(psi.c_minus);
    const complex<double> z = psi.c_plus * std::conj(psi.c_minus);

    const double sq = ch.Q.cwiseAbs2().sum();
    const double sr = ch.R.cwiseAbs2().sum();
    const double sp = ch.P.cwiseAbs2().sum();
    const double st = ch.T.cwiseAbs2().sum();
    const complex<double> s_qr = ch.Q.cwiseProduct(ch.R.conjugate()).sum();

    // interference sums; P_kl P_lk pairs the two off-diagonal orders
    const complex<double> s_pp = ch.P.cwiseProduct(ch.P.transpose()).sum();
    const complex<double> s_qp = ch.Q.cwiseProduct(ch.P.conjugate()).sum();
    const complex<double> s_qpl = ch.Q.cwiseProduct(ch.P.transpose()).sum();
    const complex<double> s_rp = ch.R.cwiseProduct(ch.P.conjugate()).sum();
    const complex<double> s_rpl = ch.R.cwiseProduct(ch.P.transpose()).sum();

    double s = a * a * sq + b * b * sr + a * b * (sp + st + 2.0 * s_qr.real());
    s += 2.0 * (z * z * s_pp).real();
    s += 2.0 * (a * std::conj(z) * s_qp + a * z * s_qpl).real();
    s += 2.0 * (b * std::conj(z) * s_rp + b * z * s_rpl).real();
    return s;
}

}  // namespace oresim::dynamics
