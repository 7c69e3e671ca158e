#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "entroflux/model.hpp"

namespace entroflux {

/// Continuous-time random-walk master equation on a 1D lattice of N cells
/// with spacing h, diffusive scaling sigma0 = 1/h^2, and reflecting ends
/// (no transitions across the boundary, matching the zero-flux PDE).
struct LatticeSystem {
    int N = 2;
    double h = 1.0;
    TransitionModel transition;
    Eigen::MatrixXd state; // 2 x N occupations, u1 + u2 <= 1 per cell

    double sigma0() const { return 1.0 / (h * h); }
};

/// p1 = p2 = 1, q1 = q, q2 = beta q (volume-filling case).
TransitionModel transition_volume_filling(TransitionQ q, double beta);

/// q1 = q2 = 1, p_i = a_i0 + a_i1 u1^s + a_i2 u2^s (no volume filling;
/// s = 1 gives the linear population model).
TransitionModel transition_population(const std::array<double, 6>& alpha, double s);

/// Exact gain/loss balance of the master equation scaled by sigma0; missing
/// neighbors at reflecting ends contribute no gain and no loss.
Eigen::MatrixXd lattice_rhs(const LatticeSystem& sys);

/// Macroscopic diffusion matrix of the lattice model at u (interior of the
/// simplex), from p_i, its partials, q_i, and q_i'.
Eigen::Matrix2d macroscopic_matrix(const TransitionModel& tm, const Eigen::Vector2d& u);

struct LatticeSnapshot {
    double t = 0.0;
    Eigen::MatrixXd state;
};

/// RK4 trajectory up to time T. dt is clamped to the explicit stability
/// margin 0.25 h^2 / max-rate; steps producing occupancy-bound violations
/// are rejected and halved (persistent violation throws NumericalError).
/// Snapshots are recorded every `stride` accepted steps (and at t = T).
std::vector<LatticeSnapshot> integrate_lattice(LatticeSystem& sys, double T, double dt,
                                               int stride = 1);

} // namespace entroflux
