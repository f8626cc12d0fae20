// dynamics.hpp - thermally averaged channel matrices P/Q/R/T, the reduced spin
// density matrix, and purity.

#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

#include "oresim/model.hpp"
#include "oresim/spectral.hpp"

namespace oresim::dynamics {

// Eigenvector overlaps <s,m|gamma> addressed through the bare-basis index map,
// bundled with the energies and thermal weights needed downstream. c is the
// eigenvector matrix itself, re-indexed, with no numerical distortion.
struct OverlapTable {
    model::BareBasis basis;
    spectral::ThermalWeights weights;
    Eigen::VectorXd energies;  // ascending [rad/ns]
    Eigen::MatrixXd c;         // c(basis.row(s, m), gamma) = <s,m|gamma>

    // n_bath x dim block of rows belonging to one spin
    Eigen::MatrixXd spin_block(model::Spin s) const;
};

OverlapTable overlap_table(const spectral::EigenSystem& eig,
                           const model::BareBasis& basis,
                           const spectral::ThermalWeights& weights);

// Initial qubit superposition c_plus |+> + c_minus |->, normalized to 1e-12.
// Canonical gauge: c_minus real >= 0; when c_minus = 0, c_plus real >= 0.
struct SpinState {
    std::complex<double> c_plus{1.0, 0.0};
    std::complex<double> c_minus{0.0, 0.0};

    // canonical-gauge state from |c_plus| and the relative phase theta
    static SpinState from_polar(double c_plus_abs, double theta);
    void validate() const;
};

// The four 2x2 complex matrices that express rho_s(t) as a linear map of the
// initial spin coefficients. Indexed by spin pair (k, l) with + = 0, - = 1.
// Identities: T(l,k) = conj(P(k,l)); Q and R Hermitian, unit trace, PSD;
// at t = 0 they collapse to |+><+|, |-><-|, |+><-|, |-><+|.
struct ChannelMatrices {
    double t{0.0};  // ns
    Eigen::Matrix2cd P, Q, R, T;
};

// Precomputed kernel for channel evaluation at many times. For each matrix
// X in {P,Q,R,T} and spin pair (k,l), stores the real weight matrix
//   W[x][k][l](g, g') = F_kl(g, g') * G_x(g, g'),
// where F_kl = C_k^T C_l sums bare overlaps over the propagated level m and
// G_x = C_a^T diag(p) C_b carries the thermal average over the initial level.
// Then X_kl(t) = sum_{g,g'} exp(-i (E_g - E_g') t) W[x][k][l](g, g').
// Building costs O(dim^3); each evaluation O(dim^2) per matrix element.
class ChannelKernel {
  public:
    explicit ChannelKernel(const OverlapTable& table);

    ChannelMatrices at(double t) const;  // t in ns, negative allowed, finite

    const Eigen::VectorXd& energies() const { return energies_; }

  private:
    Eigen::VectorXd energies_;
    // w_[x][k][l], x in P,Q,R,T order
    std::array<std::array<std::array<Eigen::MatrixXd, 2>, 2>, 4> w_;
};

// One-shot convenience; builds the kernel and evaluates once.
ChannelMatrices channel_matrices(const OverlapTable& table, double t);

// rho_s(t) = |c+|^2 Q + |c-|^2 R + c+ conj(c-) P + c- conj(c+) T.
// Hermitian with unit trace; eigenvalues in [-1e-10, 1 + 1e-10].
Eigen::Matrix2cd reduced_density(const ChannelMatrices& ch, const SpinState& psi);

// S = sum_{k,l} |rho_kl|^2 = Tr(rho^2) for Hermitian input.
double purity(const Eigen::Matrix2cd& rho_s);

// Purity through the explicit magnitude/interference expansion in the initial
// coefficients. Algebraically identical to purity(reduced_density(...)); both
// paths are kept so they can check each other.
double purity_expanded(const ChannelMatrices& ch, const SpinState& psi);

}  // namespace oresim::dynamics
