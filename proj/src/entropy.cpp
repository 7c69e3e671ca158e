#include "entroflux/entropy.hpp"

#include <cmath>

#include "entroflux/errors.hpp"

namespace entroflux {
namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

double logsumexp2(double a, double b) {
    double m = std::max(a, b);
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

/// int_c^y log q(t) dt for the power family q = t^s (closed form) or a
/// general q (adaptive Simpson; the endpoint singularity at q -> 0 is
/// integrable and handled by the recursion depth cap).
double log_q_integral(const TransitionQ& q, double c, double y) {
    if (q.power) {
        double s = *q.power;
        auto F = [s](double t) { return t > 0.0 ? s * (t * std::log(t) - t) : 0.0; };
        return F(y) - F(c);
    }
    struct Simpson {
        const TransitionQ& q;
        double eval(double t) const { return std::log(q.q(std::max(t, 1e-300))); }
        double recurse(double a, double b, double fa, double fm, double fb, double whole,
                       int depth) const {
            double m = 0.5 * (a + b);
            double fl = eval(0.5 * (a + m)), fr = eval(0.5 * (m + b));
            double left = (m - a) / 6.0 * (fa + 4.0 * fl + fm);
            double right = (b - m) / 6.0 * (fm + 4.0 * fr + fb);
            if (depth <= 0 || std::abs(left + right - whole) < 1e-13) return left + right;
            return recurse(a, m, fa, fl, fm, left, depth - 1) +
                   recurse(m, b, fm, fr, fb, right, depth - 1);
        }
    } simpson{q};
    if (c == y) return 0.0;
    double fa = simpson.eval(c), fb = simpson.eval(y), fm = simpson.eval(0.5 * (c + y));
    double whole = (y - c) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson.recurse(c, y, fa, fm, fb, whole, 40);
}

/// Strictly increasing scalar function: safeguarded Newton on a bracket
/// [lo, hi] with f(lo) <= 0 <= f(hi). Bisection until the bracket is small,
/// then Newton restricted to the bracket, to |f| <= tol.
template <typename F, typename DF>
double solve_increasing(F f, DF df, double lo, double hi, double flo, double fhi,
                        double tol, const char* what) {
    if (flo > 0.0 || fhi < 0.0)
        throw NumericalError(std::string(what) + ": root not bracketed");
    for (int it = 0; it < 48 && hi - lo > 1e-6 * (1.0 + std::abs(lo)); ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        (fm < 0.0 ? lo : hi) = mid;
        (fm < 0.0 ? flo : fhi) = fm;
    }
    double x = 0.5 * (lo + hi);
    double fx = f(x);
    for (int it = 0; it < 60; ++it) {
        if (std::abs(fx) <= tol) return x;
        (fx < 0.0 ? lo : hi) = x;
        double d = df(x);
        double x_new = d > 0.0 ? x - fx / d : x;
        if (!(x_new > lo && x_new < hi)) x_new = 0.5 * (lo + hi);
        if (x_new == x) return x;
        x = x_new;
        fx = f(x);
    }
    if (std::abs(fx) <= 1e3 * tol) return x;
    throw NumericalError(std::string(what) + ": no convergence, residual " +
                         std::to_string(fx));
}

void require_interior(const StateDomain& dom, const Eigen::VectorXd& u, const char* what) {
    if (!(dom.interior_margin(u) > 0.0))
        throw DomainError(std::string(what) + ": state not strictly inside the admissible set");
}

// Per-species coefficient of the power family: species 1 pairs with a21,
// species 2 with a12.
double power_coeff(const EntropyModel& em, int i) { return i == 0 ? em.a21 : em.a12; }

} // namespace

EntropyModel EntropyModel::logarithmic(int n) {
    if (n < 1) throw ConfigError("logarithmic entropy: n >= 1 required");
    EntropyModel em;
    em.family = EntropyFamily::Logarithmic;
    em.n = n;
    return em;
}

EntropyModel EntropyModel::volume_filling(TransitionQ q, double c) {
    if (!(c > 0.0 && c < 1.0))
        throw ConfigError("volume-filling entropy: c in (0,1) required");
    if (std::abs(q.q(0.0)) > 1e-14)
        throw ConfigError("volume-filling entropy: q(0) = 0 required");
    EntropyModel em;
    em.family = EntropyFamily::VolumeFilling;
    em.n = 2;
    em.c = c;
    em.q = std::move(q);
    return em;
}

EntropyModel EntropyModel::skt_log(double a12, double a21) {
    if (!(a12 > 0.0 && a21 > 0.0))
        throw ConfigError("SKT entropy: positive cross coefficients required");
    EntropyModel em;
    em.family = EntropyFamily::SKTLog;
    em.n = 2;
    em.a12 = a12;
    em.a21 = a21;
    return em;
}

EntropyModel EntropyModel::population_power(double a12, double a21, double s, double c,
                                            double eps) {
    if (!(s > 1.0 && s < 4.0))
        throw ConfigError("power entropy: s in (1,4) required");
    if (!(a12 > 0.0 && a21 > 0.0 && c > 0.0 && eps >= 0.0))
        throw ConfigError("power entropy: a12, a21, c > 0 and eps >= 0 required");
    EntropyModel em;
    em.family = EntropyFamily::PopulationPower;
    em.n = 2;
    em.a12 = a12;
    em.a21 = a21;
    em.s = s;
    em.c = c;
    em.eps = eps;
    return em;
}

StateDomain EntropyModel::domain() const {
    switch (family) {
    case EntropyFamily::Logarithmic:
    case EntropyFamily::VolumeFilling:
        return StateDomain::simplex(n);
    case EntropyFamily::SKTLog:
    case EntropyFamily::PopulationPower:
        return StateDomain::positive_orthant(n);
    }
    return StateDomain::simplex(n);
}

std::string EntropyModel::name() const {
    switch (family) {
    case EntropyFamily::Logarithmic: return "logarithmic";
    case EntropyFamily::VolumeFilling: return "volume_filling";
    case EntropyFamily::SKTLog: return "skt_log";
    case EntropyFamily::PopulationPower: return "population_power";
    }
    return "?";
}

double entropy_density(const EntropyModel& em, const Eigen::VectorXd& u) {
    switch (em.family) {
    case EntropyFamily::Logarithmic: {
        double h = 0.0, rho = 0.0;
        for (int i = 0; i < em.n; ++i) {
            h += xlogx(u[i]) - u[i];
            rho += u[i];
        }
        double u0 = 1.0 - rho;
        return h + xlogx(u0) - u0;
    }
    case EntropyFamily::VolumeFilling: {
        double u3 = 1.0 - u[0] - u[1];
        return xlogx(u[0]) - u[0] + xlogx(u[1]) - u[1] + log_q_integral(em.q, em.c, u3);
    }
    case EntropyFamily::SKTLog:
        return (xlogx(u[0]) - u[0]) / em.a12 + (xlogx(u[1]) - u[1]) / em.a21;
    case EntropyFamily::PopulationPower: {
        double h = 0.0;
        for (int i = 0; i < 2; ++i) {
            double a = power_coeff(em, i), s = em.s, c = em.c;
            h += s * a / (s - 1.0) *
                 ((std::pow(u[i], s) - std::pow(c, s)) / s -
                  std::pow(c, s - 1.0) * (u[i] - c));
            h += em.eps * (xlogx(u[i]) - u[i]);
        }
        return h;
    }
    }
    return 0.0;
}

EntropyEval eval_entropy(const EntropyModel& em, const Eigen::VectorXd& u) {
    if (u.size() != em.n) throw DomainError("eval_entropy: dimension mismatch");
    require_interior(em.domain(), u, "eval_entropy");
    EntropyEval out;
    out.h = entropy_density(em, u);
    out.grad.resize(em.n);
    out.hess = Eigen::MatrixXd::Zero(em.n, em.n);
    switch (em.family) {
    case EntropyFamily::Logarithmic: {
        double u0 = 1.0 - u.sum();
        for (int i = 0; i < em.n; ++i) out.grad[i] = std::log(u[i] / u0);
        out.hess.setConstant(1.0 / u0);
        for (int i = 0; i < em.n; ++i) out.hess(i, i) += 1.0 / u[i];
        break;
    }
    case EntropyFamily::VolumeFilling: {
        double u3 = 1.0 - u[0] - u[1];
        double qv = em.q.q(u3), dq = em.q.dq(u3);
        for (int i = 0; i < 2; ++i) out.grad[i] = std::log(u[i]) - std::log(qv);
        out.hess.setConstant(dq / qv);
        for (int i = 0; i < 2; ++i) out.hess(i, i) += 1.0 / u[i];
        break;
    }
    case EntropyFamily::SKTLog:
        out.grad[0] = std::log(u[0]) / em.a12;
        out.grad[1] = std::log(u[1]) / em.a21;
        out.hess(0, 0) = 1.0 / (em.a12 * u[0]);
        out.hess(1, 1) = 1.0 / (em.a21 * u[1]);
        break;
    case EntropyFamily::PopulationPower:
        for (int i = 0; i < 2; ++i) {
            double a = power_coeff(em, i), s = em.s, c = em.c;
            out.grad[i] = s * a / (s - 1.0) *
                              (std::pow(u[i], s - 1.0) - std::pow(c, s - 1.0)) +
                          em.eps * std::log(u[i]);
            out.hess(i, i) = s * a * std::pow(u[i], s - 2.0) + em.eps / u[i];
        }
        break;
    }
    return out;
}

Eigen::VectorXd invert_grad(const EntropyModel& em, const Eigen::VectorXd& w) {
    if (w.size() != em.n) throw DomainError("invert_grad: dimension mismatch");
    if (!w.allFinite()) throw NumericalError("invert_grad: non-finite entropy variables");
    Eigen::VectorXd u(em.n);
    switch (em.family) {
    case EntropyFamily::Logarithmic: {
        // log-sum-exp shift keeps the closed form finite for |w| up to ~700
        double m = std::max(0.0, w.maxCoeff());
        double denom = std::exp(-m);
        for (int i = 0; i < em.n; ++i) denom += std::exp(w[i] - m);
        for (int i = 0; i < em.n; ++i) u[i] = std::exp(w[i] - m) / denom;
        break;
    }
    case EntropyFamily::VolumeFilling: {
        // solve for y = u3 in t = log y: log S + log q(e^t) - log(1 - e^t) = 0
        // with S = e^{w1} + e^{w2}; strictly increasing and bracketed on
        // (0, 1), and the log parameterization resolves roots near y = 0
        double logS = logsumexp2(w[0], w[1]);
        auto f = [&](double t) {
            double y = std::exp(t);
            return logS + std::log(em.q.q(y)) - std::log1p(-y);
        };
        auto df = [&](double t) {
            double y = std::exp(t);
            return y * (em.q.dq(y) / em.q.q(y) + 1.0 / (1.0 - y));
        };
        double lo = -690.0, hi = std::log1p(-1e-16); // y up to 1 - 1e-16
        double t = solve_increasing(f, df, lo, hi, f(lo), f(hi), 1e-14,
                                    "invert_grad(volume_filling)");
        double y = std::exp(t);
        for (int i = 0; i < 2; ++i) u[i] = (1.0 - y) * std::exp(w[i] - logS);
        break;
    }
    case EntropyFamily::SKTLog:
        u[0] = std::exp(em.a12 * w[0]);
        u[1] = std::exp(em.a21 * w[1]);
        if (!u.allFinite() || u.minCoeff() <= 0.0)
            throw NumericalError("invert_grad(skt_log): overflow/underflow");
        break;
    case EntropyFamily::PopulationPower:
        for (int i = 0; i < 2; ++i) {
            double a = power_coeff(em, i), s = em.s, c = em.c, eps = em.eps;
            double k = s * a / (s - 1.0), cs = std::pow(c, s - 1.0);
            auto f = [&](double x) {
                return k * (std::pow(x, s - 1.0) - cs) + eps * std::log(x) - w[i];
            };
            auto df = [&](double x) {
                return k * (s - 1.0) * std::pow(x, s - 2.0) + eps / x;
            };
            if (eps == 0.0 && w[i] <= -k * cs)
                throw NumericalError(
                    "invert_grad(population_power): w outside the range of Dh (eps = 0)");
            double lo = c, hi = c;
            while (f(lo) > 0.0) {
                lo *= 0.5;
                if (lo < 1e-300)
                    throw NumericalError("invert_grad(population_power): bracket underflow");
            }
            while (f(hi) < 0.0) {
                hi *= 2.0;
                if (hi > 1e300)
                    throw NumericalError("invert_grad(population_power): bracket overflow");
            }
            u[i] = solve_increasing(f, df, lo, hi, f(lo), f(hi), 1e-13,
                                    "invert_grad(population_power)");
        }
        break;
    }
    if (!(em.domain().interior_margin(u) > 0.0))
        throw NumericalError("invert_grad: inverse left the admissible set");
    return u;
}

EntropyModel default_entropy_for(const CrossDiffusionModel& model,
                                 std::optional<double> eps_override) {
    const std::string& name = model.name;
    if (name == "maxwell_stefan" || name == "tumor" || name == "ks_like" ||
        name == "burger_ion")
        return EntropyModel::logarithmic(model.n);
    if (name == "volume_filling") {
        if (!model.transition_q)
            throw ConfigError("default_entropy_for: volume-filling model without q");
        return EntropyModel::volume_filling(*model.transition_q);
    }
    if (name == "electron_hole") return EntropyModel::skt_log(1.0, 1.0);
    if (name == "skt") {
        // zero cross coefficients decouple the system; the decoupled species
        // keeps a plain logarithmic entropy (unit weight)
        double a12 = model.params.at("a12"), a21 = model.params.at("a21");
        return EntropyModel::skt_log(a12 > 0.0 ? a12 : 1.0, a21 > 0.0 ? a21 : 1.0);
    }
    if (name == "power_population")
        return EntropyModel::population_power(model.params.at("a12"), model.params.at("a21"),
                                              model.params.at("s"), 1.0,
                                              eps_override.value_or(1e-2));
    throw ConfigError("default_entropy_for: unknown model '" + name + "'");
}

} // namespace entroflux
