#include "entroflux/catalog.hpp"

#include <cmath>

#include "entroflux/errors.hpp"

namespace entroflux {
namespace {

void require_positive(const std::map<std::string, double>& vals) {
    for (const auto& [name, v] : vals)
        if (!(v > 0.0)) throw ConfigError("model parameter " + name + " must be positive");
}

double param(const std::map<std::string, double>& p, const std::string& key,
             std::optional<double> fallback = std::nullopt) {
    auto it = p.find(key);
    if (it != p.end()) return it->second;
    if (fallback) return *fallback;
    throw ConfigError("missing model parameter '" + key + "'");
}

void check_q_derivative(const TransitionQ& q) {
    // the supplied analytic derivative is cross-checked by centered
    // differences at interior points (no symbolic differentiation)
    for (double y : {0.15, 0.35, 0.55, 0.75, 0.95}) {
        double d = 1e-6;
        double fd = (q.q(y + d) - q.q(y - d)) / (2.0 * d);
        double an = q.dq(y);
        if (std::abs(fd - an) > 1e-5 * std::max(1.0, std::abs(an)))
            throw ConfigError("volume-filling q: derivative inconsistent with q at y = " +
                              std::to_string(y));
        if (an < -1e-12)
            throw ConfigError("volume-filling q: q must be nondecreasing on (0,1)");
    }
}

} // namespace

CrossDiffusionModel make_maxwell_stefan(double d0, double d1, double d2) {
    require_positive({{"d0", d0}, {"d1", d1}, {"d2", d2}});
    CrossDiffusionModel m;
    m.name = "maxwell_stefan";
    m.n = 2;
    m.domain = StateDomain::simplex(2);
    m.params = {{"d0", d0}, {"d1", d1}, {"d2", d2}};
    m.eval_A = [d0, d1, d2](const Eigen::VectorXd& u) {
        double delta = d1 * d2 * (1.0 - u[0] - u[1]) + d0 * (d1 * u[0] + d2 * u[1]);
        Eigen::MatrixXd A(2, 2);
        A << d2 + (d0 - d2) * u[0], (d0 - d1) * u[0],
            (d0 - d2) * u[1], d1 + (d0 - d1) * u[1];
        return Eigen::MatrixXd(A / delta);
    };
    m.quadratic_form = [d0, d1, d2](const Eigen::VectorXd& u, const Eigen::VectorXd& z) {
        double u3 = 1.0 - u[0] - u[1];
        double delta = d1 * d2 * u3 + d0 * (d1 * u[0] + d2 * u[1]);
        double zs = z[0] + z[1];
        return (d2 * z[0] * z[0] / u[0] + d1 * z[1] * z[1] / u[1] + d0 * zs * zs / u3) /
               delta;
    };
    // z^T D2h A z >= (1/delta_max)(d2 z1^2/u1 + d1 z2^2/u2); delta is linear
    // in u, so its maximum over the closed simplex sits at a vertex
    double delta_max = std::max({d1 * d2, d0 * d1, d0 * d2});
    m.h2prime_meta = {{std::sqrt(d2 / delta_max), 0.5, BoundSide::Lower},
                      {std::sqrt(d1 / delta_max), 0.5, BoundSide::Lower}};
    m.h3_constant = 0.0;
    return m;
}

CrossDiffusionModel make_volume_filling(TransitionQ q, double beta) {
    require_positive({{"beta", beta}});
    if (std::abs(q.q(0.0)) > 1e-14)
        throw ConfigError("volume_filling: q(0) = 0 required (arrivals must vanish at "
                          "full packing)");
    check_q_derivative(q);
    CrossDiffusionModel m;
    m.name = "volume_filling";
    m.n = 2;
    m.domain = StateDomain::simplex(2);
    m.params = {{"beta", beta}};
    if (q.power) m.params["s"] = *q.power;
    m.transition_q = q;
    m.eval_A = [q, beta](const Eigen::VectorXd& u) {
        double u3 = 1.0 - u[0] - u[1];
        double qv = q.q(u3), dq = q.dq(u3);
        Eigen::MatrixXd A(2, 2);
        A << qv + u[0] * dq, u[0] * dq,
            beta * u[1] * dq, beta * (qv + u[1] * dq);
        return A;
    };
    // the quadratic form degenerates at u1 + u2 = 1 (q(0) = 0), so no H2'
    // parameterization in u_i alone can hold; the natural candidate with the
    // free-packing scale q(1) documents this expected failure
    m.h2prime_meta = {{std::sqrt(std::max(q.q(1.0), 1e-30)), 0.5, BoundSide::Lower},
                      {std::sqrt(std::max(beta * q.q(1.0), 1e-30)), 0.5, BoundSide::Lower}};
    m.warnings.push_back("H2' is expected to fail for volume-filling models "
                         "(degenerate at full packing)");
    m.h3_constant = 0.0;
    return m;
}

CrossDiffusionModel make_skt(const std::array<double, 6>& alpha) {
    auto [a10, a11, a12, a20, a21, a22] = alpha;
    for (double a : alpha)
        if (a < 0.0) throw ConfigError("skt: coefficients must be nonnegative");
    CrossDiffusionModel m;
    m.name = "skt";
    m.n = 2;
    m.domain = StateDomain::positive_orthant(2);
    m.params = {{"a10", a10}, {"a11", a11}, {"a12", a12},
                {"a20", a20}, {"a21", a21}, {"a22", a22}};
    m.eval_A = [=](const Eigen::VectorXd& u) {
        Eigen::MatrixXd A(2, 2);
        A << a10 + 2.0 * a11 * u[0] + a12 * u[1], a12 * u[0],
            a21 * u[1], a20 + a21 * u[0] + 2.0 * a22 * u[1];
        return A;
    };
    if (a12 > 0.0 && a21 > 0.0) {
        m.quadratic_form = [=](const Eigen::VectorXd& u, const Eigen::VectorXd& z) {
            double cross = std::sqrt(u[1] / u[0]) * z[0] + std::sqrt(u[0] / u[1]) * z[1];
            return (2.0 * a11 / a12 + a10 / (a12 * u[0])) * z[0] * z[0] +
                   (2.0 * a22 / a21 + a20 / (a21 * u[1])) * z[1] * z[1] + cross * cross;
        };
        if (a10 > 0.0 && a20 > 0.0)
            m.h2prime_meta = {{std::sqrt(a10 / a12), 0.5, BoundSide::Lower},
                              {std::sqrt(a20 / a21), 0.5, BoundSide::Lower}};
    }
    m.h3_constant = 0.0;
    return m;
}

CrossDiffusionModel make_power_population(const std::array<double, 6>& alpha, double s) {
    auto [a10, a11, a12, a20, a21, a22] = alpha;
    if (!(s > 1.0 && s < 4.0))
        throw ConfigError("power_population: s in (1,4) required");
    for (double a : alpha)
        if (a < 0.0) throw ConfigError("power_population: coefficients must be nonnegative");
    if (!(a10 > 0.0 && a20 > 0.0))
        throw ConfigError("power_population: base rates a10, a20 must be positive");
    CrossDiffusionModel m;
    m.name = "power_population";
    m.n = 2;
    m.domain = StateDomain::positive_orthant(2);
    m.params = {{"a10", a10}, {"a11", a11}, {"a12", a12},
                {"a20", a20}, {"a21", a21}, {"a22", a22}, {"s", s}};
    m.eval_A = [=](const Eigen::VectorXd& u) {
        double p1 = a10 + a11 * std::pow(u[0], s) + a12 * std::pow(u[1], s);
        double p2 = a20 + a21 * std::pow(u[0], s) + a22 * std::pow(u[1], s);
        double d1p1 = s * a11 * std::pow(u[0], s - 1.0);
        double d2p1 = s * a12 * std::pow(u[1], s - 1.0);
        double d1p2 = s * a21 * std::pow(u[0], s - 1.0);
        double d2p2 = s * a22 * std::pow(u[1], s - 1.0);
        Eigen::MatrixXd A(2, 2);
        A << p1 + u[0] * d1p1, u[0] * d2p1,
            u[1] * d1p2, p2 + u[1] * d2p2;
        return A;
    };
    bool lemma_ok = (1.0 - 1.0 / s) * a12 * a21 <= a11 * a22 + 1e-15;
    if (!lemma_ok)
        m.warnings.push_back("(1 - 1/s) a12 a21 > a11 a22: the positive-definiteness "
                             "bound may fail (sufficient condition violated)");
    if (lemma_ok && a12 > 0.0 && a21 > 0.0) {
        // z^T HA z >= s a21 a10 u1^{s-2} z1^2 + s a12 a20 u2^{s-2} z2^2,
        // i.e. the H2' power form with m_i = s/2
        m.h2prime_meta = {{std::sqrt(s * a21 * a10), s / 2.0, BoundSide::Lower},
                          {std::sqrt(s * a12 * a20), s / 2.0, BoundSide::Lower}};
    }
    m.h3_constant = 0.0;
    return m;
}

CrossDiffusionModel make_tumor() {
    CrossDiffusionModel m;
    m.name = "tumor";
    m.n = 2;
    m.domain = StateDomain::simplex(2);
    m.eval_A = [](const Eigen::VectorXd& u) {
        double u1 = u[0], u2 = u[1];
        Eigen::MatrixXd A(2, 2);
        A << u1 * (1.0 - u1) - u1 * u2 * u2, -u1 * u2 * (1.0 + u1),
            -u1 * u2 + u2 * u2 * (1.0 - u2), u2 * (1.0 - u2) * (1.0 + u1);
        return A;
    };
    m.quadratic_form = [](const Eigen::VectorXd& u, const Eigen::VectorXd& z) {
        return z[0] * z[0] + (1.0 + u[0]) * z[1] * z[1] + u[1] * z[0] * z[1];
    };
    // z1^2 + (1+u1)z2^2 + u2 z1 z2 >= z1^2/2 + (1 + u1 - u2^2/2) z2^2
    // >= (z1^2 + z2^2)/2 since u2 <= 1
    m.h2prime_meta = {{std::sqrt(0.5), 1.0, BoundSide::Lower},
                      {std::sqrt(0.5), 1.0, BoundSide::Lower}};
    m.h3_constant = 0.0;
    return m;
}

CrossDiffusionModel make_electron_hole(double mu1, double mu2) {
    require_positive({{"mu1", mu1}, {"mu2", mu2}});
    CrossDiffusionModel m;
    m.name = "electron_hole";
    m.n = 2;
    m.domain = StateDomain::positive_orthant(2);
    m.params = {{"mu1", mu1}, {"mu2", mu2}};
    m.eval_A = [mu1, mu2](const Eigen::VectorXd& u) {
        double denom = 1.0 + mu2 * u[0] + mu1 * u[1];
        Eigen::MatrixXd A(2, 2);
        A << mu1 * (1.0 + mu2 * u[0]), mu1 * mu2 * u[0],
            mu1 * mu2 * u[1], mu2 * (1.0 + mu1 * u[1]);
        return Eigen::MatrixXd(A / denom);
    };
    m.quadratic_form = [mu1, mu2](const Eigen::VectorXd& u, const Eigen::VectorXd& z) {
        double zs = z[0] + z[1];
        return (mu1 * z[0] * z[0] / u[0] + mu2 * z[1] * z[1] / u[1] +
                mu1 * mu2 * zs * zs) /
               (1.0 + mu2 * u[0] + mu1 * u[1]);
    };
    // H2 holds but the form is not uniformly positive: no H2' metadata
    m.h3_constant = 0.0;
    return m;
}

CrossDiffusionModel make_burger_ion(const std::vector<double>& D) {
    int n = static_cast<int>(D.size());
    if (n < 2) throw ConfigError("burger_ion: at least 2 species required");
    for (double d : D)
        if (!(d > 0.0)) throw ConfigError("burger_ion: diffusivities must be positive");
    CrossDiffusionModel m;
    m.name = "burger_ion";
    m.n = n;
    m.domain = StateDomain::simplex(n);
    for (int i = 0; i < n; ++i) m.params["D" + std::to_string(i + 1)] = D[i];
    m.eval_A = [D, n](const Eigen::VectorXd& u) {
        double rho = u.sum();
        Eigen::MatrixXd A(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                A(i, j) = (i == j) ? D[i] * (1.0 - rho + u[i]) : D[i] * u[i];
        return A;
    };
    if (n == 2) {
        double D1 = D[0], D2 = D[1];
        m.quadratic_form = [D1, D2](const Eigen::VectorXd& u, const Eigen::VectorXd& z) {
            double rho = u[0] + u[1];
            double zs = z[0] + z[1];
            double mix = z[0] + (1.0 - u[0]) / u[1] * z[1];
            return D1 * (1.0 - rho) * (z[0] * z[0] / u[0] + z[1] * z[1] / u[1]) +
                   D1 * (2.0 - rho) / (1.0 - rho) * zs * zs +
                   (D2 - D1) * u[1] / (1.0 - rho) * mix * mix;
        };
    }
    bool equal = true;
    for (double d : D) equal = equal && d == D[0];
    // the entropy analysis for distinct diffusivities with n > 2 is open:
    // certification must report "unknown" there, never "pass"
    m.certification_known = (n == 2) || equal;
    m.h3_constant = 0.0;
    return m;
}

CrossDiffusionModel make_keller_segel_like() {
    CrossDiffusionModel m;
    m.name = "ks_like";
    m.n = 2;
    m.domain = StateDomain::simplex(2);
    m.eval_A = [](const Eigen::VectorXd& u) {
        Eigen::MatrixXd A(2, 2);
        A << 1.0 - u[0], -u[0],
            -u[1], 1.0 - u[1];
        return A;
    };
    // D2h A collapses to diag(1/u_i) exactly
    m.quadratic_form = [](const Eigen::VectorXd& u, const Eigen::VectorXd& z) {
        return z[0] * z[0] / u[0] + z[1] * z[1] / u[1];
    };
    m.h2prime_meta = {{1.0, 0.5, BoundSide::Lower}, {1.0, 0.5, BoundSide::Lower}};
    m.h3_constant = 0.0;
    return m;
}

CrossDiffusionModel make_model(const std::string& name,
                               const std::map<std::string, double>& p) {
    if (name == "maxwell_stefan")
        return make_maxwell_stefan(param(p, "d0"), param(p, "d1"), param(p, "d2"));
    if (name == "volume_filling")
        return make_volume_filling(TransitionQ::power_family(param(p, "s", 1.0)),
                                   param(p, "beta", 1.0));
    if (name == "skt" || name == "power_population") {
        std::array<double, 6> alpha = {param(p, "a10"), param(p, "a11"), param(p, "a12"),
                                       param(p, "a20"), param(p, "a21"), param(p, "a22")};
        if (name == "skt") return make_skt(alpha);
        return make_power_population(alpha, param(p, "s"));
    }
    if (name == "tumor") return make_tumor();
    if (name == "electron_hole")
        return make_electron_hole(param(p, "mu1", 1.0), param(p, "mu2", 1.0));
    if (name == "burger_ion") {
        std::vector<double> D;
        for (int i = 1;; ++i) {
            auto it = p.find("D" + std::to_string(i));
            if (it == p.end()) break;
            D.push_back(it->second);
        }
        return make_burger_ion(D);
    }
    if (name == "ks_like") return make_keller_segel_like();
    throw ConfigError("unknown model '" + name + "'");
}

std::vector<CrossDiffusionModel> reference_catalog() {
    std::vector<CrossDiffusionModel> out;
    out.push_back(make_maxwell_stefan(3.0, 2.0, 1.0));
    out.push_back(make_volume_filling(TransitionQ::power_family(1.0), 1.0));
    out.push_back(make_volume_filling(TransitionQ::power_family(2.0), 2.0));
    out.push_back(make_skt({1.0, 1.0, 1.0, 1.0, 1.0, 1.0}));
    out.push_back(make_power_population({1.0, 1.0, 1.0, 1.0, 1.0, 1.0}, 2.0));
    out.push_back(make_tumor());
    out.push_back(make_electron_hole(1.0, 1.0));
    out.push_back(make_burger_ion({1.0, 2.0}));
    out.push_back(make_burger_ion({1.0, 1.0, 1.0}));
    out.push_back(make_keller_segel_like());
    return out;
}

} // namespace entroflux
