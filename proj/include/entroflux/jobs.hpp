#pragma once

#include "entroflux/config.hpp"

namespace entroflux {

/// Exit codes of the batch front door.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitNumericalError = 2;

/// Execute a validated config: builds model/entropy/grid/initial state, runs
/// the job, and writes CSV/JSON outputs atomically (temp file + rename) into
/// cfg.out_dir together with a manifest. Identical config + seed produce
/// byte-identical files. Returns an exit code; never throws.
int execute(const RunConfig& cfg);

} // namespace entroflux
