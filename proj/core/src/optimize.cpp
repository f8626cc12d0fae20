#include "oresim/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

namespace oresim::optimize {

namespace {

constexpr double k_pi = 3.14159265358979323846264338328;
constexpr double k_min_step = 1e-10;       // rad; refinement stops below this
constexpr double k_flat_improvement = 1e-12;  // gains below this shrink the step

Eigen::Vector3d unit_from_angles(double theta, double phi) {
    const double st = std::sin(theta);
    return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

// squared output length |M r + b|^2; S = (1 + f) / 2
struct Objective {
    const BlochChannel& bc;
    double operator()(double theta, double phi) const {
        return (bc.m * unit_from_angles(theta, phi) + bc.b).squaredNorm();
    }
};

struct RefineResult {
    double theta{0.0};
    double phi{0.0};
    double value{0.0};
    int iterations{0};
    double final_step{0.0};
};

// Compass search over the two sphere angles. Moves are tried in a fixed order
// and accepted only on strict improvement, so the path is deterministic; the
// step halves whenever no move improves (or the gain is below the flat
// threshold) and the search stops once it drops under k_min_step.
RefineResult compass_refine(const Objective& f, double theta, double phi) {
    RefineResult res;
    res.value = f(theta, phi);
    double step = k_pi / 180.0;
    while (step >= k_min_step && res.iterations < 20000) {
        ++res.iterations;
        double best_v = res.value;
        double best_th = theta, best_ph = phi;
        const double cand[4][2] = {{theta + step, phi},
                                   {theta - step, phi},
                                   {theta, phi + step},
                                   {theta, phi - step}};
        for (const auto& c : cand) {
            const double v = f(c[0], c[1]);
            if (v > best_v) {
                best_v = v;
                best_th = c[0];
                best_ph = c[1];
            }
        }
        if (best_v > res.value) {
            const double gain = best_v - res.value;
            theta = best_th;
            phi = best_ph;
            res.value = best_v;
            if (gain < k_flat_improvement) {
                step *= 0.5;
            }
        } else {
            step *= 0.5;
        }
    }
    res.theta = theta;
    res.phi = phi;
    res.final_step = step;
    return res;
}

void fill_state(PurityReport& rep, Eigen::Vector3d r) {
    if (r.norm() > 0.0) {
        r.normalize();
    }
    const double rz = std::clamp(r.z(), -1.0, 1.0);
    rep.c_plus_abs = std::sqrt(0.5 * (1.0 + rz));
    const double transverse = std::hypot(r.x(), r.y());
    // rho_01 = c+ conj(c-) = (r_x - i r_y) / 2; theta = arg(c+) with c- real
    rep.theta = transverse > 0.0 ? std::atan2(-r.y(), r.x()) : 0.0;
}

}  // namespace

double BlochChannel::purity_of(const Eigen::Vector3d& r) const {
    return 0.5 * (1.0 + (m * r + b).squaredNorm());
}

BlochChannel bloch_channel(const dynamics::ChannelMatrices& ch) {
    using Eigen::Matrix2cd;
    const Matrix2cd sigma[3] = {(Matrix2cd() << 0, 1, 1, 0).finished(),
                                (Matrix2cd() << 0, std::complex<double>(0, -1),
                                 std::complex<double>(0, 1), 0)
                                    .finished(),
                                (Matrix2cd() << 1, 0, 0, -1).finished()};

    // linear extension of the channel to arbitrary 2x2 inputs
    auto apply = [&ch](const Matrix2cd& rho0) -> Matrix2cd {
        return rho0(0, 0) * ch.Q + rho0(1, 1) * ch.R + rho0(0, 1) * ch.P +
               rho0(1, 0) * ch.T;
    };

    BlochChannel bc;
    bc.t = ch.t;
    const Matrix2cd img_id = apply(0.5 * Matrix2cd::Identity());
    for (int i = 0; i < 3; ++i) {
        bc.b(i) = (sigma[i] * img_id).trace().real();
    }
    for (int j = 0; j < 3; ++j) {
        const Matrix2cd img = apply(0.5 * sigma[j]);
        for (int i = 0; i < 3; ++i) {
            bc.m(i, j) = (sigma[i] * img).trace().real();
        }
    }
    return bc;
}

PurityReport max_purity(const dynamics::ChannelMatrices& ch) {
    const BlochChannel bc = bloch_channel(ch);
    const Objective f{bc};

    constexpr int n_th = 181;  // 0 .. pi inclusive, 1 degree
    constexpr int n_ph = 360;  // 0 .. 2 pi exclusive

    // grid pass
    std::vector<double> vals(static_cast<size_t>(n_th) * n_ph);
    double th_table[n_th], ph_table[n_ph];
    for (int i = 0; i < n_th; ++i) th_table[i] = k_pi * i / (n_th - 1);
    for (int j = 0; j < n_ph; ++j) ph_table[j] = 2.0 * k_pi * j / n_ph;

    int best_i = 0, best_j = 0;
    double best_v = -1.0;
    for (int i = 0; i < n_th; ++i) {
        for (int j = 0; j < n_ph; ++j) {
            const double v = f(th_table[i], ph_table[j]);
            vals[static_cast<size_t>(i) * n_ph + j] = v;
            if (v > best_v) {
                best_v = v;
                best_i = i;
                best_j = j;
            }
        }
    }

    // candidates: both poles, the grid argmax, and every interior strict
    // 4-neighbor local maximum. The objective is a quadratic restricted to the
    // sphere, so it can hold two almost-degenerate maxima; refining only the
    // single best grid point could converge into the wrong basin.
    std::vector<std::pair<int, int>> candidates = {{0, 0}, {n_th - 1, 0}, {best_i, best_j}};
    auto at = [&vals](int i, int j) {
        return vals[static_cast<size_t>(i) * n_ph + ((j % n_ph) + n_ph) % n_ph];
    };
    for (int i = 1; i < n_th - 1; ++i) {
        for (int j = 0; j < n_ph; ++j) {
            const double v = at(i, j);
            if (v > at(i - 1, j) && v > at(i + 1, j) && v > at(i, j - 1) &&
                v > at(i, j + 1)) {
                candidates.emplace_back(i, j);
            }
        }
    }

    PurityReport rep;
    rep.t = ch.t;
    rep.s_diff = std::numeric_limits<double>::quiet_NaN();
    rep.diagnostics.grid_theta = n_th;
    rep.diagnostics.grid_phi = n_ph;

    RefineResult winner;
    winner.value = -1.0;
    std::vector<std::pair<int, int>> seen;
    for (const auto& [i, j] : candidates) {
        if (std::find(seen.begin(), seen.end(), std::make_pair(i, j)) != seen.end()) {
            continue;
        }
        seen.emplace_back(i, j);
        const RefineResult r = compass_refine(f, th_table[i], ph_table[j]);
        rep.diagnostics.refine_iterations += r.iterations;
        ++rep.diagnostics.candidates;
        if (r.value > winner.value) {
            winner = r;
        }
    }

    rep.s_max = 0.5 * (1.0 + winner.value);
    rep.diagnostics.final_step_rad = winner.final_step;
    fill_state(rep, unit_from_angles(winner.theta, winner.phi));
    return rep;
}

PurityReport max_purity_exact(const dynamics::ChannelMatrices& ch) {
    const BlochChannel bc = bloch_channel(ch);
    const Eigen::Matrix3d a = bc.m.transpose() * bc.m;
    const Eigen::Vector3d g = bc.m.transpose() * bc.b;
    const double c = bc.b.squaredNorm();

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(a);
    const Eigen::Vector3d d = solver.eigenvalues();  // ascending
    const Eigen::Matrix3d v = solver.eigenvectors();
    const Eigen::Vector3d gh = v.transpose() * g;

    const double d_top = d(2);
    const double scale = std::max({1.0, std::abs(d_top), g.norm()});
    // eigenvalue cluster at the top counts as one eigenspace
    std::array<bool, 3> top{};
    for (int i = 0; i < 3; ++i) {
        top[i] = (d_top - d(i)) <= 1e-12 * scale;
    }

    // stationary condition (lambda I - A) r = g with lambda >= d_top;
    // phi(lambda) = sum_i gh_i^2 / (lambda - d_i)^2 is decreasing above d_top
    auto r_of = [&](double lambda) {
        Eigen::Vector3d r = Eigen::Vector3d::Zero();
        for (int i = 0; i < 3; ++i) {
            if (gh(i) != 0.0) {
                r += (gh(i) / (lambda - d(i))) * v.col(i);
            }
        }
        return r;
    };

    Eigen::Vector3d r_star;
    // a root of ||r(lambda)|| = 1 with lambda > d_top exists iff the norm still
    // reaches 1 just above d_top; otherwise the multiplier sticks at d_top (the
    // hard case) and the top eigenspace makes up the missing length
    const double lambda_floor = d_top + 1e-16 * scale;
    bool regular = r_of(lambda_floor).squaredNorm() >= 1.0;

    if (regular) {
        double lo = lambda_floor;
        double hi = d_top + std::max(g.norm(), 1e-16 * scale);
        while (r_of(hi).squaredNorm() > 1.0) {
            hi = d_top + 2.0 * (hi - d_top);
        }
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            if (r_of(mid).squaredNorm() > 1.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        r_star = r_of(0.5 * (lo + hi));
        if (r_star.norm() > 0.0) r_star.normalize();
    } else {
        // hard case: g is orthogonal to the top eigenspace and the orthogonal
        // part alone stays inside the sphere; pad with the top eigenvector
        Eigen::Vector3d r_perp = Eigen::Vector3d::Zero();
        for (int i = 0; i < 3; ++i) {
            if (!top[i] && gh(i) != 0.0) {
                r_perp += (gh(i) / (d_top - d(i))) * v.col(i);
            }
        }
        int first_top = 2;
        for (int i = 0; i < 3; ++i) {
            if (top[i]) {
                first_top = i;
                break;
            }
        }
        const double alpha = std::sqrt(std::max(0.0, 1.0 - r_perp.squaredNorm()));
        r_star = r_perp + alpha * v.col(first_top);
    }

    PurityReport rep;
    rep.t = ch.t;
    rep.s_diff = std::numeric_limits<double>::quiet_NaN();
    const double fval = r_star.dot(a * r_star) + 2.0 * g.dot(r_star) + c;
    rep.s_max = 0.5 * (1.0 + fval);
    fill_state(rep, r_star);
    return rep;
}

double s_diff(const dynamics::ChannelMatrices& ch, double c_plus_abs) {
    if (!std::isfinite(c_plus_abs) || c_plus_abs < -1e-12 || c_plus_abs > 1.0 + 1e-12) {
        throw std::invalid_argument("s_diff: |c_plus| must lie in [0, 1]");
    }
    const double cp = std::clamp(c_plus_abs, 0.0, 1.0);
    const double cm = std::sqrt(std::max(0.0, 1.0 - cp * cp));
    const double rz = cp * cp - cm * cm;
    const double rho = 2.0 * cp * cm;  // transverse radius of the phase circle
    if (rho == 0.0) {
        return 0.0;  // no superposition, the phase is unobservable
    }

    const BlochChannel bc = bloch_channel(ch);
    auto f = [&](double theta) {
        const Eigen::Vector3d r(rho * std::cos(theta), -rho * std::sin(theta), rz);
        return (bc.m * r + bc.b).squaredNorm();
    };

    constexpr int n = 720;
    double best_max = -1.0, best_min = std::numeric_limits<double>::infinity();
    double th_max = 0.0, th_min = 0.0;
    for (int j = 0; j < n; ++j) {
        const double th = 2.0 * k_pi * j / n;
        const double val = f(th);
        if (val > best_max) {
            best_max = val;
            th_max = th;
        }
        if (val < best_min) {
            best_min = val;
            th_min = th;
        }
    }

    // one-dimensional compass refinement, shared stopping rule
    auto refine = [&](double th, double sign) {
        double value = sign * f(th);
        double step = 2.0 * k_pi / n;
        int iters = 0;
        while (step >= k_min_step && iters < 20000) {
            ++iters;
            const double up = sign * f(th + step);
            const double dn = sign * f(th - step);
            if (up > value && up >= dn) {
                if (up - value < k_flat_improvement) step *= 0.5;
                th += step;
                value = up;
            } else if (dn > value) {
                if (dn - value < k_flat_improvement) step *= 0.5;
                th -= step;
                value = dn;
            } else {
                step *= 0.5;
            }
        }
        return sign * value;
    };

    const double f_max = refine(th_max, 1.0);
    const double f_min = refine(th_min, -1.0);
    return std::max(0.0, 0.5 * (f_max - f_min));
}

std::vector<std::pair<double, double>> purity_trajectory(
    const model::HamiltonianParams& params, const spectral::ThermalWeights& weights,
    const dynamics::SpinState& psi, const std::vector<double>& times) {
    psi.validate();
    for (size_t i = 0; i + 1 < times.size(); ++i) {
        if (!(times[i] <= times[i + 1])) {
            throw std::invalid_argument("purity_trajectory: times must be sorted ascending");
        }
    }

    const auto basis = model::build_basis(params.n_bath);
    const auto eig = spectral::eigh(model::build_hamiltonian(params));
    const auto table = dynamics::overlap_table(eig, basis, weights);
    const dynamics::ChannelKernel kernel(table);

    std::vector<std::pair<double, double>> out;
    out.reserve(times.size());
    for (const double t : times) {
        const auto ch = kernel.at(t);
        out.emplace_back(t, dynamics::purity(dynamics::reduced_density(ch, psi)));
    }
    return out;
}

}  // namespace oresim::optimize
