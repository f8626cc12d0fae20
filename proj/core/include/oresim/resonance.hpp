// resonance.hpp - resonance profiles of bare states over the exact eigenstates
// and the scalar overlapping-resonance metric A_{+-}.

#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "oresim/dynamics.hpp"

namespace oresim::resonance {

// Squared overlaps of one bare state with every eigenstate, sorted by energy.
// No binning or smoothing; weights sum to 1 by completeness.
struct ResonanceProfile {
    model::Spin spin{model::Spin::plus};
    int level{0};
    std::vector<std::pair<double, double>> points;  // (E_gamma [rad/ns], weight)
};

ResonanceProfile resonance_profile(const dynamics::OverlapTable& table,
                                   model::Spin s, int level);

// A_{+-} = sum_{m != n} A_+^{m,n} A_-^{m,n} with
// A_s^{m,n} = sum_gamma |<s,m|gamma><gamma|s,n>|.
// The sum runs over ordered pairs, so each unordered pair counts twice (the
// pair table is symmetric); downstream use only cares about shape, not scale.
// Thermal weights play no role here: the metric is temperature independent.
struct OverlapMetric {
    double a_plus_minus{0.0};
    Eigen::MatrixXd pair_plus;   // A_+^{m,n}, symmetric n_bath x n_bath
    Eigen::MatrixXd pair_minus;  // A_-^{m,n}
};

OverlapMetric overlap_metric(const dynamics::OverlapTable& table);

}  // namespace oresim::resonance
