#pragma once

#include <functional>
#include <string>

#include <Eigen/Dense>

#include "entroflux/entropy.hpp"
#include "entroflux/grid.hpp"
#include "entroflux/model.hpp"

namespace entroflux {

struct SolverConfig {
    double tau = 1e-3;
    double eps = 0.0;           // H^1-type regularization weight of the w-system
    double newton_tol = 1e-10;  // accepted residual, max norm
    double polish_tol = 1e-15;  // Newton keeps polishing toward this floor
    int newton_max_iter = 50;
    int max_halvings = 30;      // line-search backtracking (factor 1/2)
    int max_fallbacks = 5;      // tau-halving retries with eps = 1e-8
    double fallback_eps = 1e-8;
    double seed_margin = 1e-13; // interior clamp applied only to the Newton seed
};

struct StepStats {
    bool ok = true;
    int newton_iters = 0;
    int damping_events = 0;
    int fallbacks = 0;
    double eps_used = 0.0;
    double residual_norm = 0.0;
    int clamping_events = 0; // always 0: accepted states are never clamped
    std::string error;
};

/// F = -A(ubar)(u_right - u_left)/dx at the arithmetic face average.
Eigen::VectorXd face_flux(const CrossDiffusionModel& model, const Eigen::VectorXd& u_left,
                          const Eigen::VectorXd& u_right, double dx);

/// Implicit-Euler residual in entropy variables, per cell k:
///   R_k = u(w)_k - u_old_k + (tau/dx)(F_{k+1/2} - F_{k-1/2})
///         - tau f(u(w)_k) + tau eps (w_k - (Lap_h w)_k),
/// with u(w) = (Dh)^{-1} columnwise and the 3-point Neumann Laplacian.
Eigen::MatrixXd residual(const CrossDiffusionModel& model, const EntropyModel& em,
                         const Eigen::MatrixXd& w, const Eigen::MatrixXd& u_old,
                         const Grid1D& grid, double tau, double eps);

/// One accepted implicit Euler step; advances field in place and returns the
/// converged entropy variables in w. On exhausted fallbacks the field is left
/// untouched and stats.ok = false (never throws for convergence failures).
StepStats step(const CrossDiffusionModel& model, const EntropyModel& em,
               StateField& field, Eigen::MatrixXd& w, const SolverConfig& cfg);

using StepCallback =
    std::function<void(int step, double t, const StateField& field, const StepStats& stats)>;

/// ceil(T/tau) accepted steps from the state in `field`; the callback runs
/// after each accepted step. Returns the stats of the last attempted step
/// (stats.ok = false if the run aborted early).
StepStats run(const CrossDiffusionModel& model, const EntropyModel& em, StateField& field,
              double T, const SolverConfig& cfg, const StepCallback& on_step = {});

} // namespace entroflux
