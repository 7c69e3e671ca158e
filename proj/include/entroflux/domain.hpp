#pragma once

#include <Eigen/Dense>

#include "entroflux/errors.hpp"
#include "entroflux/rng.hpp"

namespace entroflux {

enum class DomainKind {
    Simplex,         // u_i > 0, sum u_i < 1
    PositiveOrthant, // u_i > 0
    Box,             // a < u_i < b
};

/// Admissible state set D. Membership is strict-interior when margin > 0.
struct StateDomain {
    DomainKind kind = DomainKind::Simplex;
    int n = 2;
    double lo = 0.0; // box lower bound a (also the H2' anchor for Simplex)
    double hi = 1.0; // box upper bound b
    double margin = 0.0;

    static StateDomain simplex(int n, double margin = 0.0) {
        return {DomainKind::Simplex, n, 0.0, 1.0, margin};
    }
    static StateDomain positive_orthant(int n, double margin = 0.0) {
        return {DomainKind::PositiveOrthant, n, 0.0, 1.0, margin};
    }
    static StateDomain box(double a, double b, int n, double margin = 0.0) {
        if (!(a < b)) throw ConfigError("StateDomain::box: requires a < b");
        return {DomainKind::Box, n, a, b, margin};
    }

    bool contains(const Eigen::VectorXd& u) const {
        return interior_margin(u) > margin;
    }

    /// Distance of u to the boundary of D (negative outside).
    double interior_margin(const Eigen::VectorXd& u) const {
        double m = std::numeric_limits<double>::infinity();
        switch (kind) {
        case DomainKind::Simplex:
            for (int i = 0; i < n; ++i) m = std::min(m, u[i]);
            m = std::min(m, 1.0 - u.sum());
            break;
        case DomainKind::PositiveOrthant:
            for (int i = 0; i < n; ++i) m = std::min(m, u[i]);
            break;
        case DomainKind::Box:
            for (int i = 0; i < n; ++i) m = std::min({m, u[i] - lo, hi - u[i]});
            break;
        }
        return m;
    }

    /// Project u into the strict interior with the given margin. Used only to
    /// seed iterations; accepted solver states never pass through here.
    Eigen::VectorXd clamp_interior(Eigen::VectorXd u, double m) const {
        switch (kind) {
        case DomainKind::Simplex: {
            for (int i = 0; i < n; ++i) u[i] = std::max(u[i], m);
            double s = u.sum();
            if (s >= 1.0 - m) u *= (1.0 - m) / s;
            break;
        }
        case DomainKind::PositiveOrthant:
            for (int i = 0; i < n; ++i) u[i] = std::max(u[i], m);
            break;
        case DomainKind::Box:
            for (int i = 0; i < n; ++i) u[i] = std::min(std::max(u[i], lo + m), hi - m);
            break;
        }
        return u;
    }

    /// k-th quasi-random point strictly inside D with margin m. For the
    /// unbounded orthant the sampling window is (m, orthant_window).
    Eigen::VectorXd sample(const QuasiRandom& seq, std::uint64_t k, double m,
                           double orthant_window = 3.0) const {
        double x[8];
        seq.at(k, x);
        Eigen::VectorXd u(n);
        switch (kind) {
        case DomainKind::Simplex: {
            // Exponential spacings over n+1 slots give a uniform simplex
            // point, including the implied tail 1 - sum(u); the margin is
            // reserved for every coordinate and the tail.
            double acc = 0.0;
            for (int i = 0; i <= n; ++i) {
                double e = -std::log1p(-0.999999 * x[std::min(i, seq.dim() - 1)]);
                if (i < n) u[i] = e;
                acc += e;
            }
            double scale = (1.0 - (n + 1) * m) / acc;
            for (int i = 0; i < n; ++i) u[i] = m + u[i] * scale;
            break;
        }
        case DomainKind::PositiveOrthant:
            for (int i = 0; i < n; ++i) u[i] = m + (orthant_window - m) * x[i];
            break;
        case DomainKind::Box:
            for (int i = 0; i < n; ++i) u[i] = lo + m + (hi - lo - 2 * m) * x[i];
            break;
        }
        return u;
    }
};

} // namespace entroflux
