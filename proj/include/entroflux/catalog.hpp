#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "entroflux/model.hpp"

namespace entroflux {

/// Maxwell-Stefan ternary mixture reduced to two equations;
/// d0, d1, d2 are the binary diffusivities.
CrossDiffusionModel make_maxwell_stefan(double d0, double d1, double d2);

/// Two-species volume-filling model with arrival probability q and rate
/// ratio beta. Requires q(0) = 0, q nondecreasing on (0,1); the supplied
/// derivative is cross-checked against finite differences.
CrossDiffusionModel make_volume_filling(TransitionQ q, double beta);

/// Shigesada-Kawashima-Teramoto population model. alpha is row-major
/// {a10, a11, a12, a20, a21, a22} (base, self- and cross-diffusion).
CrossDiffusionModel make_skt(const std::array<double, 6>& alpha);

/// Population model with power-law transition rates p_i = a_i0 + a_i1 u1^s +
/// a_i2 u2^s, 1 < s < 4. Warns (does not reject) when the sufficient
/// condition (1 - 1/s) a12 a21 <= a11 a22 fails.
CrossDiffusionModel make_power_population(const std::array<double, 6>& alpha, double s);

/// Avascular tumor-growth model (volume fractions of cells and matrix).
CrossDiffusionModel make_tumor();

/// Electron-hole scattering model with mobilities mu1, mu2 > 0.
CrossDiffusionModel make_electron_hole(double mu1, double mu2);

/// n-species ion-transport model with diffusivities D_i > 0, n >= 2.
/// Entropy certification is reported as known only for n = 2 or equal D_i.
CrossDiffusionModel make_burger_ion(const std::vector<double>& D);

/// Two-species aggregation model with Keller-Segel-like cross terms.
CrossDiffusionModel make_keller_segel_like();

/// Build a model by configuration name ("maxwell_stefan", "volume_filling",
/// "skt", "power_population", "tumor", "electron_hole", "burger_ion",
/// "ks_like") and parameter table. Throws ConfigError on unknown names,
/// missing parameters, or structural violations.
CrossDiffusionModel make_model(const std::string& name,
                               const std::map<std::string, double>& params);

/// Every model exercised by the conservation/monotonicity sweeps.
std::vector<CrossDiffusionModel> reference_catalog();

} // namespace entroflux
