#pragma once

#include <vector>

#include <Eigen/Dense>

#include "entroflux/entropy.hpp"
#include "entroflux/grid.hpp"
#include "entroflux/model.hpp"

namespace entroflux {

struct DiagnosticsRecord {
    double t = 0.0;
    double H = 0.0;      // entropy functional
    double H_star = 0.0; // relative entropy toward u_inf
    Eigen::VectorXd masses;
    double min_margin = 0.0; // distance of the worst cell to the boundary
    double dissipation = 0.0;
};

struct DecayFit {
    double lambda = 0.0;
    double r_squared = 0.0;
    double t_lo = 0.0, t_hi = 0.0;
    int points = 0;
};

/// sum_k h(u_k) dx, with boundary cells handled by 0 log 0 := 0.
double entropy_functional(const EntropyModel& em, const StateField& field);

/// Mass-preserving constant steady state, masses / L.
Eigen::VectorXd steady_state(const StateField& field);

/// H* = sum_i sum_k u_ik log(u_ik / u_inf_i) dx  (>= 0, zero iff field == u_inf).
double relative_entropy(const StateField& field, const Eigen::VectorXd& u_inf);

/// Csiszar-Kullback consistency: per species,
/// ||u_i - u_inf_i||_L1^2 <= 2 mass_i * H*_i  (classical Pinsker form).
bool ckp_check(const StateField& field, const Eigen::VectorXd& u_inf);

/// Least-squares slope of log H* over t in [t_lo, t_hi]; lambda = -slope.
/// Points with H* <= 1e-15 are skipped; throws NumericalError when fewer
/// than two usable points remain (already converged).
DecayFit fit_decay(const std::vector<std::pair<double, double>>& series,
                   double t_lo, double t_hi);

/// sum_faces (du/dx)^T [D^2h(ubar) A(ubar)] (du/dx) dx at face averages.
double dissipation_estimate(const EntropyModel& em, const CrossDiffusionModel& model,
                            const StateField& field);

DiagnosticsRecord diagnose(const EntropyModel& em, const CrossDiffusionModel& model,
                           const StateField& field, double t,
                           const Eigen::VectorXd& u_inf);

} // namespace entroflux
