#include "oresim/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace oresim::spectral {

namespace {

void apply_sign_gauge(Eigen::MatrixXd& vectors) {
    for (Eigen::Index col = 0; col < vectors.cols(); ++col) {
        Eigen::Index pivot = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
            const double mag = std::abs(vectors(i, col));
            if (mag > best) {  // strict: first index wins ties
                best = mag;
                pivot = i;
            }
        }
        if (vectors(pivot, col) < 0.0) {
            vectors.col(col) = -vectors.col(col);
        }
    }
}

}  // namespace

EigenSystem eigh(const Eigen::MatrixXd& matrix) {
    if (matrix.rows() != matrix.cols()) {
        throw std::invalid_argument("eigh: matrix must be square");
    }
    if (matrix.rows() < 1) {
        throw std::invalid_argument("eigh: dimension must be >= 1");
    }
    const double scale = matrix.cwiseAbs().maxCoeff();
    const double asym = (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * std::max(scale, 1.0)) {
        throw std::invalid_argument("eigh: matrix is not symmetric");
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigh: eigendecomposition failed to converge at dim " +
                                 std::to_string(matrix.rows()));
    }

    EigenSystem out;
    out.dim = static_cast<int>(matrix.rows());
    out.energies = solver.eigenvalues();  // ascending
    out.vectors = solver.eigenvectors();
    apply_sign_gauge(out.vectors);

    // contract checks: orthonormality and per-column residual
    const double ortho = (out.vectors.transpose() * out.vectors -
                          Eigen::MatrixXd::Identity(out.dim, out.dim))
                             .cwiseAbs()
                             .maxCoeff();
    if (ortho > 1e-12) {
        throw std::runtime_error("eigh: eigenvectors not orthonormal, deviation " +
                                 std::to_string(ortho));
    }
    const double spectral_norm = out.energies.cwiseAbs().maxCoeff();
    const Eigen::MatrixXd residual =
        matrix * out.vectors - out.vectors * out.energies.asDiagonal();
    for (int col = 0; col < out.dim; ++col) {
        const double r = residual.col(col).norm();
        if (r > 1e-10 * std::max(spectral_norm, 1e-300)) {
            throw std::runtime_error("eigh: residual " + std::to_string(r) +
                                     " too large in column " + std::to_string(col));
        }
    }
    return out;
}

ThermalWeights thermal_weights(double omega, double temperature_k, int n_bath) {
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw std::invalid_argument("thermal_weights: omega must be positive and finite");
    }
    if (n_bath < 1) {
        throw std::invalid_argument("thermal_weights: n_bath must be >= 1");
    }
    if (!(temperature_k > 0.0)) {
        throw std::invalid_argument(
            "thermal_weights: temperature must be > 0 (use thermal_weights_zero for the limit)");
    }

    // omega is rad/ns = 1e9 rad/s
    const double x = k_hbar_js * (omega * 1e9) / (k_boltzmann_j_per_k * temperature_k);

    ThermalWeights out;
    out.temperature_k = temperature_k;
    out.omega = omega;
    out.weights.resize(n_bath);
    for (int n = 0; n < n_bath; ++n) {
        out.weights(n) = std::exp(-(n + 0.5) * x);  // zero-point part cancels below
    }
    const double z = out.weights.sum();
    if (!(z > 0.0)) {
        // x so large that even the ground term underflows; the limit is unambiguous
        out.weights.setZero();
        out.weights(0) = 1.0;
        return out;
    }
    out.weights /= z;
    return out;
}

ThermalWeights thermal_weights_zero(double omega, int n_bath) {
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw std::invalid_argument("thermal_weights_zero: omega must be positive and finite");
    }
    if (n_bath < 1) {
        throw std::invalid_argument("thermal_weights_zero: n_bath must be >= 1");
    }
    ThermalWeights out;
    out.temperature_k = 0.0;
    out.omega = omega;
    out.weights = Eigen::VectorXd::Zero(n_bath);
    out.weights(0) = 1.0;
    return out;
}

}  // namespace oresim::spectral
