// optimize.hpp - purity maximization over initial superpositions, the phase
// sensitivity range S_diff, and purity trajectories.

#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "oresim/dynamics.hpp"

namespace oresim::optimize {

// Affine Bloch-vector form of the channel: a state with Bloch vector r maps to
// M r + b, and the purity of the output is S = (1 + |M r + b|^2) / 2. Makes
// the optimization a quadratic on the unit sphere.
struct BlochChannel {
    double t{0.0};  // ns
    Eigen::Matrix3d m;
    Eigen::Vector3d b;

    double purity_of(const Eigen::Vector3d& r) const;
};

BlochChannel bloch_channel(const dynamics::ChannelMatrices& ch);

struct SolverDiagnostics {
    int grid_theta{0};          // polar grid lines
    int grid_phi{0};            // azimuthal grid lines
    int candidates{0};          // grid-local maxima taken into refinement
    int refine_iterations{0};   // total refinement steps across candidates
    double final_step_rad{0.0}; // step size at which the winning search stopped
};

// Result of the purity optimization at one time. The argmax state is reported
// in canonical gauge (c_minus real >= 0): magnitude |c_plus| and relative
// phase theta = arg(c_plus) in (-pi, pi]. s_diff is NaN until computed.
struct PurityReport {
    double t{0.0};
    double s_max{0.0};
    double c_plus_abs{0.0};
    double theta{0.0};
    double s_diff{0.0};
    SolverDiagnostics diagnostics;
};

// Deterministic maximization of S over the unit Bloch sphere: a 1-degree
// (theta in [0, pi], phi in [0, 2pi)) grid, then compass refinement of every
// grid-local maximum with the step halved on failure until it drops below
// 1e-10 rad (improvements below 1e-12 cannot survive that). Refining every
// grid-local maximum matters: the landscape can carry two nearly degenerate
// maxima, and a single-basin descent may converge to the lower one.
PurityReport max_purity(const dynamics::ChannelMatrices& ch);

// Exact maximizer of the same quadratic through the secular equation of the
// shifted linear system (lambda I - M^T M) r = M^T b, lambda above the top
// eigenvalue, including the hard case where M^T b is orthogonal to the top
// eigenspace. Cross-check for max_purity; they agree to 1e-8 in S.
PurityReport max_purity_exact(const dynamics::ChannelMatrices& ch);

// Range of S over the relative phase at fixed magnitudes |c+| (and |c-| =
// sqrt(1 - |c+|^2)), normally taken from the max_purity argmax: 720-point
// phase sweep, both extrema refined with the same stopping rule.
// Always >= 0; zero when |c+| is 0 or 1 (no superposition, phase unphysical).
double s_diff(const dynamics::ChannelMatrices& ch, double c_plus_abs);

// S(t) over a sorted time grid for one initial state. The eigensystem and
// channel kernel are built once and reused across times; S(0) = 1.
std::vector<std::pair<double, double>> purity_trajectory(
    const model::HamiltonianParams& params, const spectral::ThermalWeights& weights,
    const dynamics::SpinState& psi, const std::vector<double>& times);

}  // namespace oresim::optimize
