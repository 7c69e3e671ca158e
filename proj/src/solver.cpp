#include "entroflux/solver.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include <lapacke.h>

#include "entroflux/kernels.hpp"

namespace entroflux {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Residual with inversion failures mapped to an infinite norm (so the line
/// search simply rejects the trial point).
bool try_residual(const CrossDiffusionModel& model, const EntropyModel& em,
                  const Eigen::MatrixXd& w, const Eigen::MatrixXd& u_old,
                  const Grid1D& grid, double tau, double eps, Eigen::MatrixXd& R) {
    try {
        R = residual(model, em, w, u_old, grid, tau, eps);
        return R.allFinite();
    } catch (const std::exception&) {
        return false;
    }
}

/// Banded finite-difference Jacobian of the residual with respect to w.
/// Cells only couple to neighbors, so columns with cell indices equal
/// mod 3 (same species) are probed together: 3n residual evaluations.
/// Returns false if any probe fails.
bool assemble_jacobian(const CrossDiffusionModel& model, const EntropyModel& em,
                       const Eigen::MatrixXd& w, const Eigen::MatrixXd& R0,
                       const Eigen::MatrixXd& u_old, const Grid1D& grid, double tau,
                       double eps, int kl, Eigen::MatrixXd& AB) {
    const int n = model.n, M = grid.M, N = n * M;
    const int ku = kl, ldab = 2 * kl + ku + 1;
    AB.setZero(ldab, N);
    Eigen::MatrixXd wp = w, Rp;
    for (int color = 0; color < 3; ++color) {
        for (int i = 0; i < n; ++i) {
            std::vector<double> deltas(M, 0.0);
            for (int k = color; k < M; k += 3) {
                deltas[k] = 1e-8 * (1.0 + std::abs(w(i, k)));
                wp(i, k) += deltas[k];
            }
            if (!try_residual(model, em, wp, u_old, grid, tau, eps, Rp)) return false;
            for (int k = color; k < M; k += 3) {
                wp(i, k) = w(i, k);
                int col = k * n + i;
                for (int kk = std::max(0, k - 1); kk <= std::min(M - 1, k + 1); ++kk) {
                    for (int ii = 0; ii < n; ++ii) {
                        int row = kk * n + ii;
                        if (std::abs(row - col) > kl) continue;
                        AB(kl + ku + row - col, col) =
                            (Rp(ii, kk) - R0(ii, kk)) / deltas[k];
                    }
                }
            }
        }
    }
    return true;
}

struct NewtonResult {
    bool ok = false;
    int iters = 0;
    int damping = 0;
    double norm = kInf;
    std::string error;
};

NewtonResult newton_solve(const CrossDiffusionModel& model, const EntropyModel& em,
                          Eigen::MatrixXd& w, const Eigen::MatrixXd& u_old,
                          const Grid1D& grid, double tau, double eps,
                          const SolverConfig& cfg) {
    const int n = model.n, M = grid.M, N = n * M;
    const int kl = 2 * n - 1, ku = kl, ldab = 2 * kl + ku + 1;
    NewtonResult res;
    Eigen::MatrixXd R0;
    if (!try_residual(model, em, w, u_old, grid, tau, eps, R0)) {
        res.error = "residual evaluation failed at the initial iterate";
        return res;
    }
    double norm = R0.cwiseAbs().maxCoeff();
    Eigen::MatrixXd AB(ldab, N);
    std::vector<lapack_int> ipiv(N);
    for (int it = 0; it < cfg.newton_max_iter; ++it) {
        if (norm <= cfg.polish_tol) break;
        if (!assemble_jacobian(model, em, w, R0, u_old, grid, tau, eps, kl, AB)) {
            res.error = "Jacobian probe left the invertible range";
            break;
        }
        // solve J dw = -R with banded LU (column-major AB, cell-major order)
        Eigen::VectorXd rhs(N);
        for (int k = 0; k < M; ++k)
            for (int i = 0; i < n; ++i) rhs[k * n + i] = -R0(i, k);
        Eigen::MatrixXd ABf = AB; // dgbsv overwrites the band storage
        lapack_int info = LAPACKE_dgbsv(LAPACK_COL_MAJOR, N, kl, ku, 1, ABf.data(),
                                        ldab, ipiv.data(), rhs.data(), N);
        if (info != 0) {
            res.error = "banded LU failed (info " + std::to_string(info) + ")";
            break;
        }
        // backtracking line search, factor 1/2
        double lambda = 1.0;
        bool accepted = false;
        Eigen::MatrixXd w_trial, R_trial;
        for (int h = 0; h <= cfg.max_halvings; ++h, lambda *= 0.5) {
            w_trial = w;
            for (int k = 0; k < M; ++k)
                for (int i = 0; i < n; ++i) w_trial(i, k) += lambda * rhs[k * n + i];
            if (try_residual(model, em, w_trial, u_old, grid, tau, eps, R_trial)) {
                double trial_norm = R_trial.cwiseAbs().maxCoeff();
                if (trial_norm < norm * (1.0 - 1e-4 * lambda) ||
                    trial_norm <= cfg.polish_tol) {
                    w = w_trial;
                    R0 = R_trial;
                    norm = trial_norm;
                    accepted = true;
                    break;
                }
            }
            ++res.damping;
            // once within tolerance, failing to improve just ends polishing
            if (norm <= cfg.newton_tol && h >= 2) break;
        }
        ++res.iters;
        if (!accepted) {
            if (norm <= cfg.newton_tol) break;
            res.error = "line search stalled at residual " + std::to_string(norm);
            res.norm = norm;
            return res;
        }
    }
    res.norm = norm;
    res.ok = norm <= cfg.newton_tol;
    if (!res.ok && res.error.empty())
        res.error = "Newton did not reach tolerance (residual " + std::to_string(norm) +
                    ")";
    return res;
}

} // namespace

Eigen::VectorXd face_flux(const CrossDiffusionModel& model, const Eigen::VectorXd& u_left,
                          const Eigen::VectorXd& u_right, double dx) {
    Eigen::VectorXd ubar = 0.5 * (u_left + u_right);
    return -(model.eval_A(ubar) * (u_right - u_left)) / dx;
}

Eigen::MatrixXd residual(const CrossDiffusionModel& model, const EntropyModel& em,
                         const Eigen::MatrixXd& w, const Eigen::MatrixXd& u_old,
                         const Grid1D& grid, double tau, double eps) {
    const int n = model.n, M = grid.M;
    const double dx = grid.dx();
    Eigen::MatrixXd u, F;
    kernels::invert_columns(em, w, u);
    kernels::face_fluxes(model, u, dx, F);
    Eigen::MatrixXd R(n, M);
    for (int k = 0; k < M; ++k) {
        R.col(k) = u.col(k) - u_old.col(k) + (tau / dx) * (F.col(k + 1) - F.col(k));
        if (model.eval_f) R.col(k) -= tau * model.eval_f(u.col(k));
        if (eps > 0.0) {
            // 3-point Neumann Laplacian of w (mirrored ghost cells)
            Eigen::VectorXd lap = -2.0 * w.col(k);
            lap += w.col(k > 0 ? k - 1 : k) + w.col(k + 1 < M ? k + 1 : k);
            R.col(k) += tau * eps * (w.col(k) - lap / (dx * dx));
        }
    }
    return R;
}

StepStats step(const CrossDiffusionModel& model, const EntropyModel& em,
               StateField& field, Eigen::MatrixXd& w, const SolverConfig& cfg) {
    StepStats stats;
    const Grid1D& grid = field.grid;
    // seed iterate: clamp u_old into the interior (seed only, never the state)
    Eigen::MatrixXd w_seed(model.n, grid.M);
    for (int k = 0; k < grid.M; ++k) {
        Eigen::VectorXd uk = model.domain.clamp_interior(field.values.col(k),
                                                         cfg.seed_margin);
        w_seed.col(k) = eval_entropy(em, uk).grad;
    }

    auto attempt = [&](double tau, double eps, int substeps) -> bool {
        Eigen::MatrixXd u_cur = field.values;
        Eigen::MatrixXd w_cur = w_seed;
        for (int sub = 0; sub < substeps; ++sub) {
            NewtonResult nr = newton_solve(model, em, w_cur, u_cur, grid, tau, eps, cfg);
            stats.newton_iters += nr.iters;
            stats.damping_events += nr.damping;
            if (!nr.ok) {
                stats.error = nr.error;
                return false;
            }
            stats.residual_norm = nr.norm;
            kernels::invert_columns(em, w_cur, u_cur);
        }
        field.values = u_cur;
        w = w_cur;
        stats.eps_used = eps;
        return true;
    };

    if (attempt(cfg.tau, cfg.eps, 1)) return stats;
    for (int f = 1; f <= cfg.max_fallbacks; ++f) {
        stats.fallbacks = f;
        double tau_sub = cfg.tau / std::pow(2.0, f);
        if (attempt(tau_sub, std::max(cfg.eps, cfg.fallback_eps), 1 << f)) {
            stats.error.clear();
            return stats;
        }
    }
    stats.ok = false;
    return stats;
}

StepStats run(const CrossDiffusionModel& model, const EntropyModel& em, StateField& field,
              double T, const SolverConfig& cfg, const StepCallback& on_step) {
    StepStats stats;
    if (T <= 0.0) return stats;
    int n_steps = static_cast<int>(std::ceil(T / cfg.tau - 1e-12));
    Eigen::MatrixXd w;
    for (int k = 1; k <= n_steps; ++k) {
        stats = step(model, em, field, w, cfg);
        if (!stats.ok) return stats;
        if (on_step) on_step(k, k * cfg.tau, field, stats);
    }
    return stats;
}

} // namespace entroflux
