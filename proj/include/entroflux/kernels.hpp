#pragma once

#include <cstdint>
#include <functional>

#include <Eigen/Dense>

#include "entroflux/entropy.hpp"
#include "entroflux/model.hpp"

namespace entroflux::kernels {

/// Every kernel has a serial reference path and an OpenMP path producing
/// bit-identical results (cells/samples are independent; the sweep reduction
/// is an exact min with deterministic tie-breaking).
enum class Mode { Serial, Parallel };

Mode& default_mode();

/// u.col(k) = (Dh)^{-1}(w.col(k)) for every cell.
void invert_columns(const EntropyModel& em, const Eigen::MatrixXd& w,
                    Eigen::MatrixXd& u, Mode mode = default_mode());

/// Interior face fluxes F.col(k) = -A(ubar)(u_k - u_{k-1})/dx for
/// k = 1..M-1, with F.col(0) = F.col(M) = 0 (zero-flux boundary).
void face_fluxes(const CrossDiffusionModel& model, const Eigen::MatrixXd& u,
                 double dx, Eigen::MatrixXd& F, Mode mode = default_mode());

struct SweepMin {
    double value = std::numeric_limits<double>::infinity();
    std::uint64_t index = 0;
};

/// Minimum of f(k) over k = 0..count-1 with the smallest attaining index
/// (deterministic under any thread count).
SweepMin sweep_min(std::uint64_t count, const std::function<double(std::uint64_t)>& f,
                   Mode mode = default_mode());

} // namespace entroflux::kernels
