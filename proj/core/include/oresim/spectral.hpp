// spectral.hpp - dense real-symmetric eigendecomposition with a deterministic
// sign gauge, and thermal occupation weights for the truncated oscillator.

#pragma once

#include <Eigen/Dense>

namespace oresim::spectral {

// Exact SI values (2019 redefinition). Used only to form hbar*omega/(kB*T).
inline constexpr double k_hbar_js = 1.054571817e-34;
inline constexpr double k_boltzmann_j_per_k = 1.380649e-23;

struct EigenSystem {
    int dim{0};
    Eigen::VectorXd energies;  // ascending [rad/ns]
    Eigen::MatrixXd vectors;   // column gamma is |gamma> over the bare basis
};

// Eigendecomposition of a symmetric matrix.
//  - input must be symmetric to 1e-12 relative, else std::invalid_argument
//  - energies ascending; vectors orthonormal (checked to 1e-12 elementwise)
//  - residual ||H v - E v|| <= 1e-10 * max|E| per column, else std::runtime_error
//  - sign gauge: the largest-magnitude entry of each vector (first index on
//    ties) is made positive, so repeated runs are bit-identical
EigenSystem eigh(const Eigen::MatrixXd& matrix);

struct ThermalWeights {
    double temperature_k{0.0};  // 0 marks the zero-temperature limit
    double omega{0.0};          // rad/ns
    Eigen::VectorXd weights;    // p_n over n = 0 .. n_bath-1, sums to 1
};

// Boltzmann weights p_n proportional to exp(-(n + 1/2) x) with
// x = hbar * (omega * 1e9 rad/s) / (kB * T), normalized over the truncated
// ladder. The zero-point half cancels in the ratio but is computed literally.
// Rejects temperature <= 0; for the T -> 0 limit use thermal_weights_zero.
ThermalWeights thermal_weights(double omega, double temperature_k, int n_bath);

// T -> 0 limit: all weight in the ground level.
ThermalWeights thermal_weights_zero(double omega, int n_bath);

}  // namespace oresim::spectral
