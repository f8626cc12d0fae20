#include "oresim/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace oresim::model {

int BareBasis::row(Spin s, int level) const {
    if (level < 0 || level >= n_bath) {
        throw std::invalid_argument("BareBasis: level " + std::to_string(level) +
                                    " outside [0, " + std::to_string(n_bath) + ")");
    }
    return 2 * level + spin_index(s);
}

Spin BareBasis::spin_of(int row) const {
    if (row < 0 || row >= dim) {
        throw std::invalid_argument("BareBasis: row out of range");
    }
    return static_cast<Spin>(row % 2);
}

int BareBasis::level_of(int row) const {
    if (row < 0 || row >= dim) {
        throw std::invalid_argument("BareBasis: row out of range");
    }
    return row / 2;
}

BareBasis build_basis(int n_bath) {
    if (n_bath < 1) {
        throw std::invalid_argument("build_basis: n_bath must be >= 1");
    }
    return BareBasis{n_bath, 2 * n_bath};
}

void HamiltonianParams::validate() const {
    if (!(std::isfinite(omega) && std::isfinite(omega0) && std::isfinite(g_r) &&
          std::isfinite(g_nr) && std::isfinite(g_ph))) {
        throw std::invalid_argument("HamiltonianParams: non-finite entry");
    }
    if (!(omega > 0.0)) {
        throw std::invalid_argument("HamiltonianParams: omega must be > 0");
    }
    if (n_bath < 1) {
        throw std::invalid_argument("HamiltonianParams: n_bath must be >= 1");
    }
}

Eigen::MatrixXd build_hamiltonian(const HamiltonianParams& p) {
    p.validate();
    const BareBasis basis = build_basis(p.n_bath);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(basis.dim, basis.dim);

    auto set_sym = [&h](int i, int j, double v) {
        h(i, j) = v;
        h(j, i) = v;
    };

    for (int n = 0; n < p.n_bath; ++n) {
        const int rp = basis.row(Spin::plus, n);
        const int rm = basis.row(Spin::minus, n);
        h(rp, rp) = n * p.omega + 0.5 * p.omega0;
        h(rm, rm) = n * p.omega - 0.5 * p.omega0;

        if (n + 1 < p.n_bath) {
            const double root = std::sqrt(double(n + 1));
            // <+, n|H|-, n+1> = g_r sqrt(n+1): rotating term
            set_sym(rp, basis.row(Spin::minus, n + 1), p.g_r * root);
            // <+, n+1|H|-, n> = g_nr sqrt(n+1): counter-rotating term
            set_sym(basis.row(Spin::plus, n + 1), rm, p.g_nr * root);
            // <s, n+1|H|s, n> = +- g_ph sqrt(n+1): dephasing term
            set_sym(basis.row(Spin::plus, n + 1), rp, p.g_ph * root);
            set_sym(basis.row(Spin::minus, n + 1), rm, -p.g_ph * root);
        }
    }
    return h;
}

InteractionMatrix interaction_matrix(const HamiltonianParams& p) {
    p.validate();
    const double scale = std::max(std::abs(p.g_r), std::abs(p.g_nr));
    if (std::abs(p.g_r - p.g_nr) > 1e-12 * std::max(scale, 1.0)) {
        throw std::invalid_argument(
            "interaction_matrix: g_r != g_nr, interaction does not factorize off the locked plane");
    }
    const double g = p.g_r;

    InteractionMatrix out;
    out.matrix << p.g_ph, g, g, -p.g_ph;

    const double lambda = std::hypot(g, p.g_ph);
    out.eigenvalues << -lambda, lambda;

    if (lambda == 0.0) {
        out.eigenvectors = Eigen::Matrix2d::Identity();
        return out;
    }
    // closed-form eigenvectors; column 0 pairs with -lambda. The branch keeps
    // the unnormalized components away from catastrophic cancellation.
    Eigen::Vector2d lo, hi;
    if (p.g_ph >= 0.0) {
        lo << g, -(p.g_ph + lambda);
        hi << p.g_ph + lambda, g;
    } else {
        lo << lambda - p.g_ph, -g;
        hi << g, lambda - p.g_ph;
    }
    lo.normalize();
    hi.normalize();
    // match the global sign gauge: largest-magnitude entry (first on ties)
    // positive
    for (Eigen::Vector2d* v : {&lo, &hi}) {
        const int idx = std::abs((*v)(0)) >= std::abs((*v)(1)) ? 0 : 1;
        if ((*v)(idx) < 0.0) *v = -(*v);
    }
    out.eigenvectors.col(0) = lo;
    out.eigenvectors.col(1) = hi;
    return out;
}

HamiltonianParams map_cpb(const CPBParams& c, int n_bath) {
    if (c.delta_n != 0.0) {
        throw std::invalid_argument(
            "map_cpb: mapping is only defined at the degeneracy point delta_n = 0");
    }
    if (std::abs(c.delta_n) > 0.5) {
        throw std::invalid_argument("map_cpb: delta_n outside [-1/2, 1/2]");
    }
    HamiltonianParams p;
    p.omega = c.omega;
    p.omega0 = c.e_j;
    p.g_r = c.g;
    p.g_nr = c.g;
    p.g_ph = 0.0;
    p.n_bath = n_bath;
    p.validate();
    return p;
}

}  // namespace oresim::model
