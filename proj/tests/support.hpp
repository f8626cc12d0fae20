// support.hpp - shared test helpers: independent reference implementations
// (literal channel sums, full-space evolution, brute-force overlap metric),
// rank correlation, and a seeded parameter source.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "oresim/dynamics.hpp"
#include "oresim/model.hpp"
#include "oresim/spectral.hpp"

namespace support {

using oresim::dynamics::OverlapTable;
using oresim::dynamics::SpinState;
using oresim::model::HamiltonianParams;
using oresim::model::Spin;

inline constexpr double k_two_pi = 6.283185307179586476925286766559;

// ------------------------------ random draws ------------------------------

inline HamiltonianParams random_params(std::mt19937_64& gen, int n_bath_lo,
                                       int n_bath_hi) {
    std::uniform_real_distribution<double> freq(0.2, 3.0);
    std::uniform_real_distribution<double> split(0.0, 1.0);
    std::uniform_real_distribution<double> coupling(-2.0, 2.0);
    std::uniform_int_distribution<int> levels(n_bath_lo, n_bath_hi);
    HamiltonianParams p;
    p.omega = k_two_pi * freq(gen);
    p.omega0 = k_two_pi * split(gen);
    p.g_r = k_two_pi * coupling(gen);
    p.g_nr = k_two_pi * coupling(gen);
    p.g_ph = k_two_pi * coupling(gen);
    p.n_bath = levels(gen);
    return p;
}

inline SpinState random_state(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double c_plus_abs = std::sqrt(u01(gen));
    const double theta = (2.0 * u01(gen) - 1.0) * 3.14159265358979323846;
    return SpinState::from_polar(c_plus_abs, theta);
}

inline OverlapTable make_table(const HamiltonianParams& p, double temperature_k = 0.025) {
    const auto basis = oresim::model::build_basis(p.n_bath);
    const auto eig = oresim::spectral::eigh(oresim::model::build_hamiltonian(p));
    return oresim::dynamics::overlap_table(
        eig, basis, oresim::spectral::thermal_weights(p.omega, temperature_k, p.n_bath));
}

// -------------------------- reference evaluations --------------------------

// Literal quadruple sum over (gamma, gamma', m, n), straight from the channel
// definition. O(dim^2 n_bath^2) per matrix; keep n_bath small.
inline Eigen::Matrix2cd reference_channel(const OverlapTable& table, Spin a, Spin b,
                                          double t) {
    const int nb = table.basis.n_bath;
    const int dim = table.basis.dim;
    Eigen::Matrix2cd x = Eigen::Matrix2cd::Zero();
    for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
            for (int g = 0; g < dim; ++g) {
                for (int gp = 0; gp < dim; ++gp) {
                    double f = 0.0;
                    for (int m = 0; m < nb; ++m) {
                        f += table.c(table.basis.row(static_cast<Spin>(k), m), g) *
                             table.c(table.basis.row(static_cast<Spin>(l), m), gp);
                    }
                    double w = 0.0;
                    for (int n = 0; n < nb; ++n) {
                        w += table.weights.weights(n) *
                             table.c(table.basis.row(a, n), g) *
                             table.c(table.basis.row(b, n), gp);
                    }
                    const double phase = -(table.energies(g) - table.energies(gp)) * t;
                    x(k, l) += std::polar(f * w, phase);
                }
            }
        }
    }
    return x;
}

inline oresim::dynamics::ChannelMatrices reference_channel_matrices(
    const OverlapTable& table, double t) {
    oresim::dynamics::ChannelMatrices ch;
    ch.t = t;
    ch.P = reference_channel(table, Spin::plus, Spin::minus, t);
    ch.Q = reference_channel(table, Spin::plus, Spin::plus, t);
    ch.R = reference_channel(table, Spin::minus, Spin::minus, t);
    ch.T = reference_channel(table, Spin::minus, Spin::plus, t);
    return ch;
}

// Full-space check: evolve rho_s(0) (x) diag(p) with the exact propagator in
// the 2 n_bath dimensional space, then trace out the oscillator.
inline Eigen::Matrix2cd full_evolution(const HamiltonianParams& p,
                                       const oresim::spectral::ThermalWeights& weights,
                                       const SpinState& psi, double t) {
    const auto basis = oresim::model::build_basis(p.n_bath);
    const auto eig = oresim::spectral::eigh(oresim::model::build_hamiltonian(p));
    const int dim = basis.dim;

    Eigen::Matrix2cd rho_s0;
    const std::complex<double> amp[2] = {psi.c_plus, psi.c_minus};
    for (int s = 0; s < 2; ++s) {
        for (int sp = 0; sp < 2; ++sp) {
            rho_s0(s, sp) = amp[s] * std::conj(amp[sp]);
        }
    }

    Eigen::MatrixXcd rho0 = Eigen::MatrixXcd::Zero(dim, dim);
    for (int m = 0; m < p.n_bath; ++m) {
        for (int s = 0; s < 2; ++s) {
            for (int sp = 0; sp < 2; ++sp) {
                rho0(basis.row(static_cast<Spin>(s), m),
                     basis.row(static_cast<Spin>(sp), m)) =
                    rho_s0(s, sp) * weights.weights(m);
            }
        }
    }

    Eigen::VectorXcd u(dim);
    for (int g = 0; g < dim; ++g) u(g) = std::polar(1.0, -eig.energies(g) * t);
    const Eigen::MatrixXcd v = eig.vectors.cast<std::complex<double>>();
    const Eigen::MatrixXcd propagator = v * u.asDiagonal() * v.transpose();
    const Eigen::MatrixXcd rho_t = propagator * rho0 * propagator.adjoint();

    Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
    for (int m = 0; m < p.n_bath; ++m) {
        for (int s = 0; s < 2; ++s) {
            for (int sp = 0; sp < 2; ++sp) {
                out(s, sp) += rho_t(basis.row(static_cast<Spin>(s), m),
                                    basis.row(static_cast<Spin>(sp), m));
            }
        }
    }
    return out;
}

// Brute-force pair metric, triple loop over (m, n, gamma), ordered m != n.
inline double reference_a_pm(const OverlapTable& table) {
    const int nb = table.basis.n_bath;
    double total = 0.0;
    for (int m = 0; m < nb; ++m) {
        for (int n = 0; n < nb; ++n) {
            if (m == n) continue;
            double a_plus = 0.0, a_minus = 0.0;
            for (int g = 0; g < table.basis.dim; ++g) {
                a_plus += std::abs(table.c(table.basis.row(Spin::plus, m), g) *
                                   table.c(table.basis.row(Spin::plus, n), g));
                a_minus += std::abs(table.c(table.basis.row(Spin::minus, m), g) *
                                    table.c(table.basis.row(Spin::minus, n), g));
            }
            total += a_plus * a_minus;
        }
    }
    return total;
}

// ---------------------------- rank correlation ----------------------------

// 1-based ranks; exact ties get the average rank of their run
inline std::vector<double> ranks_with_ties(const std::vector<double>& values) {
    const size_t n = values.size();
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double mean_rank = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
        for (size_t k = i; k <= j; ++k) ranks[order[k]] = mean_rank;
        i = j + 1;
    }
    return ranks;
}

inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
    const auto ra = ranks_with_ties(a);
    const auto rb = ranks_with_ties(b);
    const size_t n = ra.size();
    double ma = 0.0, mb = 0.0;
    for (size_t i = 0; i < n; ++i) {
        ma += ra[i];
        mb += rb[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0.0, sa = 0.0, sb = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sab += (ra[i] - ma) * (rb[i] - mb);
        sa += (ra[i] - ma) * (ra[i] - ma);
        sb += (rb[i] - mb) * (rb[i] - mb);
    }
    return sab / std::sqrt(sa * sb);
}

}  // namespace support
