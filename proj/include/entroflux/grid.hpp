#pragma once

#include <Eigen/Dense>

#include "entroflux/errors.hpp"

namespace entroflux {

/// Uniform 1D cell-centered grid with zero-flux faces at both ends.
struct Grid1D {
    int M = 2;
    double L = 1.0;

    Grid1D() = default;
    Grid1D(int M_, double L_) : M(M_), L(L_) {
        if (M < 1 || L <= 0.0) throw ConfigError("Grid1D: requires M >= 1 and L > 0");
    }

    double dx() const { return L / M; }
    double x(int k) const { return (k + 0.5) * dx(); }
};

/// Cell-averaged densities, n species by M cells.
struct StateField {
    Grid1D grid;
    Eigen::MatrixXd values; // n x M

    StateField() = default;
    StateField(const Grid1D& g, int n) : grid(g), values(Eigen::MatrixXd::Zero(n, g.M)) {}

    int n() const { return static_cast<int>(values.rows()); }

    Eigen::VectorXd masses() const { return values.rowwise().sum() * grid.dx(); }
};

} // namespace entroflux
