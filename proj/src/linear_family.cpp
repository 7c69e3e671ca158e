#include "entroflux/linear_family.hpp"

#include <cmath>

#include "entroflux/domain.hpp"
#include "entroflux/rng.hpp"

namespace entroflux {

LinearCoeffs reconstruct_A(const LinearFamilyParams& p) {
    LinearCoeffs c;
    double gamma21 = p.beta12 + p.alpha22 - p.alpha11;
    c.alpha << p.alpha11, 0.0, 0.0, p.alpha22;
    c.beta << p.beta11, p.beta12, 0.0, p.beta11 - gamma21;
    c.gamma << p.gamma22 - p.beta12, 0.0, gamma21, p.gamma22;
    return c;
}

double c11_numerator(const LinearFamilyParams& p, double u1, double u2) {
    return (p.beta12 - p.gamma22) * u2 * u2 +
           (-p.beta11 + p.beta12 + p.alpha22 - p.alpha11) * u1 * u2 + p.beta11 * u1 +
           (-p.alpha11 - p.beta12 + p.gamma22) * u2 + p.alpha11;
}

double detc_numerator(const LinearFamilyParams& p, double u1, double u2) {
    const double a11 = p.alpha11, a22 = p.alpha22, b11 = p.beta11, b12 = p.beta12,
                 g22 = p.gamma22;
    return b11 * (b11 - b12 - a22 + a11) * u1 * u1 - g22 * (b12 - g22) * u2 * u2 +
           (a11 * g22 - a22 * g22 - b11 * b12 + 2.0 * b11 * g22 - b12 * g22) * u1 * u2 +
           (a11 * a11 - a11 * a22 + a11 * b11 - a11 * b12 + a22 * b11) * u1 +
           (a11 * g22 - a22 * b12 + a22 * g22) * u2 + a11 * a22;
}

namespace {

/// Updates the running worst for one probe point; returns false when the
/// point is certainly infeasible beyond the tolerance.
void probe(const LinearFamilyParams& p, double u1, double u2, FeasibilityResult& res) {
    ++res.points;
    double v1 = c11_numerator(p, u1, u2);
    double v2 = detc_numerator(p, u1, u2);
    if (res.points == 1 || v1 < res.worst_value) {
        res.worst_value = v1;
        res.worst_u = {u1, u2};
        res.which = 1;
    }
    if (v2 < res.worst_value) {
        res.worst_value = v2;
        res.worst_u = {u1, u2};
        res.which = 2;
    }
}

} // namespace

FeasibilityResult feasibility_scan(const LinearFamilyParams& p, int grid_resolution) {
    FeasibilityResult res;
    const int R = std::max(grid_resolution, 2);
    const double margin = 1e-4;
    // triangular grid over {u1, u2 >= margin, u1 + u2 <= 1 - margin}
    for (int i = 0; i <= R; ++i) {
        double u1 = margin + (1.0 - 3.0 * margin) * i / R;
        for (int j = 0; j + i <= R; ++j) {
            double u2 = margin + (1.0 - 3.0 * margin) * j / R;
            if (u1 + u2 > 1.0 - margin) continue;
            probe(p, u1, u2, res);
        }
    }
    // near-boundary band: each edge of the simplex at distance 1e-6
    const double band = 1e-6;
    for (int i = 1; i < 4 * R; ++i) {
        double s = static_cast<double>(i) / (4 * R);
        double lo = band, hi = 1.0 - 2.0 * band;
        double c = lo + (hi - lo) * s;
        probe(p, c, band, res);               // u2 -> 0 edge
        probe(p, band, c, res);               // u1 -> 0 edge
        probe(p, c, 1.0 - band - c, res);     // u3 -> 0 edge
    }
    res.feasible = res.worst_value >= -1e-12;
    return res;
}

bool eigenvalue_oracle(const LinearFamilyParams& p, long n_points, double* min_eig_out) {
    LinearCoeffs coeffs = reconstruct_A(p);
    StateDomain dom = StateDomain::simplex(2);
    QuasiRandom seq(3);
    double min_eig = 0.0;
    bool first = true;
    auto probe_eig = [&](double u1, double u2) {
        double u3 = 1.0 - u1 - u2;
        Eigen::Matrix2d H;
        H << 1.0 / u1 + 1.0 / u3, 1.0 / u3, 1.0 / u3, 1.0 / u2 + 1.0 / u3;
        Eigen::Vector2d uv(u1, u2);
        Eigen::Matrix2d M = H * coeffs.A(uv);
        double a = M(0, 0), d = M(1, 1), b = 0.5 * (M(0, 1) + M(1, 0));
        double lam = 0.5 * (a + d - std::hypot(a - d, 2.0 * b));
        if (first || lam < min_eig) {
            min_eig = lam;
            first = false;
        }
    };
    for (long k = 0; k < n_points; ++k) {
        Eigen::VectorXd u = dom.sample(seq, static_cast<std::uint64_t>(k), 1e-4);
        probe_eig(u[0], u[1]);
    }
    // the open simplex includes near-boundary states where degeneracies live;
    // walk each edge at a small offset so those are not missed
    const double band = 1e-6;
    long edge_steps = std::max<long>(n_points / 4, 64);
    for (long i = 1; i < edge_steps; ++i) {
        double c = band + (1.0 - 3.0 * band) * static_cast<double>(i) / edge_steps;
        probe_eig(c, band);
        probe_eig(band, c);
        probe_eig(c, 1.0 - band - c);
    }
    if (min_eig_out) *min_eig_out = min_eig;
    return min_eig >= -1e-10;
}

} // namespace entroflux
