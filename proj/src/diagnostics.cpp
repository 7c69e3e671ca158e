#include "entroflux/diagnostics.hpp"

#include <cmath>

#include "entroflux/errors.hpp"

namespace entroflux {
namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

} // namespace

double entropy_functional(const EntropyModel& em, const StateField& field) {
    double H = 0.0;
    for (int k = 0; k < field.grid.M; ++k)
        H += entropy_density(em, field.values.col(k));
    return H * field.grid.dx();
}

Eigen::VectorXd steady_state(const StateField& field) {
    return field.masses() / field.grid.L;
}

double relative_entropy(const StateField& field, const Eigen::VectorXd& u_inf) {
    double Hs = 0.0;
    for (int k = 0; k < field.grid.M; ++k) {
        for (int i = 0; i < field.n(); ++i) {
            double u = field.values(i, k);
            if (u < -1e-14) throw DomainError("relative_entropy: negative density");
            if (u_inf[i] <= 0.0) {
                if (u > 1e-14)
                    throw DomainError("relative_entropy: mass against zero steady state");
                continue;
            }
            Hs += xlogx(u) - u * std::log(u_inf[i]);
        }
    }
    // subtract sum_i (m_i log u_inf_i terms already folded in); with equal
    // masses H* = int sum u log(u/u_inf) and int (u - u_inf) = 0 per species
    return Hs * field.grid.dx() -
           [&] {
               double s = 0.0;
               Eigen::VectorXd m = field.masses();
               for (int i = 0; i < field.n(); ++i)
                   if (u_inf[i] > 0.0) s += m[i] - u_inf[i] * field.grid.L;
               return s;
           }();
}

bool ckp_check(const StateField& field, const Eigen::VectorXd& u_inf) {
    const double dx = field.grid.dx();
    for (int i = 0; i < field.n(); ++i) {
        double l1 = 0.0, mass = 0.0, hs = 0.0;
        for (int k = 0; k < field.grid.M; ++k) {
            double u = field.values(i, k);
            l1 += std::abs(u - u_inf[i]) * dx;
            mass += u * dx;
            if (u_inf[i] > 0.0) hs += (xlogx(u) - u * std::log(u_inf[i])) * dx;
        }
        if (u_inf[i] > 0.0) hs -= mass - u_inf[i] * field.grid.L;
        // classical Pinsker in mass-normalized form, with roundoff slack
        if (l1 * l1 > 2.0 * mass * hs + 1e-12) return false;
    }
    return true;
}

DecayFit fit_decay(const std::vector<std::pair<double, double>>& series, double t_lo,
                   double t_hi) {
    double st = 0, sy = 0, stt = 0, sty = 0, syy = 0;
    int m = 0;
    for (const auto& [t, hs] : series) {
        if (t < t_lo || t > t_hi || hs <= 1e-15) continue;
        double y = std::log(hs);
        st += t;
        sy += y;
        stt += t * t;
        sty += t * y;
        syy += y * y;
        ++m;
    }
    if (m < 2) throw NumericalError("fit_decay: fewer than two usable points");
    double denom = m * stt - st * st;
    if (denom <= 0.0) throw NumericalError("fit_decay: degenerate abscissa");
    double slope = (m * sty - st * sy) / denom;
    DecayFit fit;
    fit.lambda = -slope;
    double ss_tot = syy - sy * sy / m;
    double intercept = (sy - slope * st) / m;
    double ss_res = syy - intercept * sy - slope * sty;
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    fit.t_lo = t_lo;
    fit.t_hi = t_hi;
    fit.points = m;
    return fit;
}

double dissipation_estimate(const EntropyModel& em, const CrossDiffusionModel& model,
                            const StateField& field) {
    const double dx = field.grid.dx();
    double total = 0.0;
    for (int k = 1; k < field.grid.M; ++k) {
        Eigen::VectorXd ubar = 0.5 * (field.values.col(k - 1) + field.values.col(k));
        Eigen::VectorXd du = (field.values.col(k) - field.values.col(k - 1)) / dx;
        total += du.dot(eval_entropy(em, ubar).hess * model.eval_A(ubar) * du) * dx;
    }
    return total;
}

DiagnosticsRecord diagnose(const EntropyModel& em, const CrossDiffusionModel& model,
                           const StateField& field, double t,
                           const Eigen::VectorXd& u_inf) {
    DiagnosticsRecord rec;
    rec.t = t;
    rec.H = entropy_functional(em, field);
    rec.H_star = relative_entropy(field, u_inf);
    rec.masses = field.masses();
    rec.min_margin = field.grid.M > 0
                         ? [&] {
                               double m = model.domain.interior_margin(field.values.col(0));
                               for (int k = 1; k < field.grid.M; ++k)
                                   m = std::min(m, model.domain.interior_margin(
                                                       field.values.col(k)));
                               return m;
                           }()
                         : 0.0;
    rec.dissipation = dissipation_estimate(em, model, field);
    return rec;
}

} // namespace entroflux
