#include "oresim/resonance.hpp"

#include <stdexcept>
#include <string>

namespace oresim::resonance {

ResonanceProfile resonance_profile(const dynamics::OverlapTable& table,
                                   model::Spin s, int level) {
    if (level < 0 || level >= table.basis.n_bath) {
        throw std::invalid_argument("resonance_profile: level " + std::to_string(level) +
                                    " outside the retained ladder");
    }
    const int row = table.basis.row(s, level);

    ResonanceProfile profile;
    profile.spin = s;
    profile.level = level;
    profile.points.reserve(table.basis.dim);
    for (int gamma = 0; gamma < table.basis.dim; ++gamma) {
        const double overlap = table.c(row, gamma);
        profile.points.emplace_back(table.energies(gamma), overlap * overlap);
    }
    // energies are ascending already; keep that ordering
    return profile;
}

OverlapMetric overlap_metric(const dynamics::OverlapTable& table) {
    const Eigen::MatrixXd ap = table.spin_block(model::Spin::plus).cwiseAbs();
    const Eigen::MatrixXd am = table.spin_block(model::Spin::minus).cwiseAbs();

    OverlapMetric metric;
    // A_s^{m,n} = sum_gamma |<s,m|gamma>| |<s,n|gamma>| since the overlaps are
    // real: one rank-n_bath product per spin
    metric.pair_plus = ap * ap.transpose();
    metric.pair_minus = am * am.transpose();

    double total = 0.0;
    const int n = table.basis.n_bath;
    for (int m = 0; m < n; ++m) {
        for (int k = 0; k < n; ++k) {
            if (k != m) {
                total += metric.pair_plus(m, k) * metric.pair_minus(m, k);
            }
        }
    }
    metric.a_plus_minus = total;  // ordered pairs: each unordered pair twice
    return metric;
}

}  // namespace oresim::resonance
