// model.hpp - bare basis indexing, spin-boson Hamiltonian assembly, the locked-plane
// interaction matrix, and the Cooper-pair-box parameter mapping.

#pragma once

#include <Eigen/Dense>

namespace oresim::model {

enum class Spin : int { plus = 0, minus = 1 };

inline int spin_index(Spin s) { return static_cast<int>(s); }

// Bare product basis |s, n> = |spin> (x) |Fock level n>, oscillator-major:
// row = 2*n + s_idx with s_idx = 0 for |+>, 1 for |->. This keeps the
// (a + a-dagger) couplings near the diagonal.
struct BareBasis {
    int n_bath{0};  // oscillator levels kept, n = 0 .. n_bath-1
    int dim{0};     // 2 * n_bath

    int row(Spin s, int level) const;
    Spin spin_of(int row) const;
    int level_of(int row) const;
};

BareBasis build_basis(int n_bath);

// All energies are angular frequencies in rad/ns (the Hamiltonian is H/hbar).
// User-facing GHz values convert at the boundary as omega = 2*pi*nu, so that
// exp(-i E t) is dimensionless with t in ns.
struct HamiltonianParams {
    double omega{0.0};   // bath mode quantum
    double omega0{0.0};  // spin splitting
    double g_r{0.0};     // rotating coupling, S+ a + S- a†
    double g_nr{0.0};    // counter-rotating coupling, S+ a† + S- a
    double g_ph{0.0};    // dephasing coupling, Sz (a + a†)
    int n_bath{1};       // oscillator truncation, >= 1

    // omega > 0, n_bath >= 1, everything finite; couplings are unrestricted
    // (zero and strong coupling are both in scope).
    void validate() const;
};

// Dense symmetric matrix over the bare basis. Nonzeros per row: the diagonal
// n*omega +- omega0/2 plus at most four couplings,
//   <+, n-1|H|-, n> = g_r sqrt(n)
//   <+, n+1|H|-, n> = g_nr sqrt(n+1)
//   <+-, n+1|H|+-, n> = +- g_ph sqrt(n+1)
// Ladder operators are truncated to the retained subspace. Both triangles are
// assigned from the same computed value, so the output is bitwise symmetric.
Eigen::MatrixXd build_hamiltonian(const HamiltonianParams& p);

// 2x2 spin-sector coupling matrix [[g_ph, g], [g, -g_ph]] on the locked plane
// g_r = g_nr = g, where the interaction factorizes and the eigenvectors of
// this matrix are the decoherence-free candidate states.
struct InteractionMatrix {
    Eigen::Matrix2d matrix;
    Eigen::Vector2d eigenvalues;   // ascending, -lambda then +lambda
    Eigen::Matrix2d eigenvectors;  // columns; largest-magnitude entry positive
};

// Requires |g_r - g_nr| <= 1e-12 relative; off the locked plane the
// interaction does not factorize and no such matrix exists.
InteractionMatrix interaction_matrix(const HamiltonianParams& p);

// Cooper-pair-box + resonator parameters, angular units [rad/ns].
struct CPBParams {
    double e_c{0.0};      // charging energy; drops out at the degeneracy point
    double e_j{0.0};      // Josephson energy
    double omega{0.0};    // resonator frequency
    double g{0.0};        // resonator coupling
    double delta_n{0.0};  // gate offset in [-1/2, 1/2]; mapping needs exactly 0
};

// At the charge degeneracy point delta_n = 0 the box maps onto the generic
// model with omega0 = E_J, g_r = g_nr = g, g_ph = 0. Rejects delta_n != 0.
HamiltonianParams map_cpb(const CPBParams& c, int n_bath = 20);

}  // namespace oresim::model
