#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "entroflux/linear_family.hpp"
#include "entroflux/solver.hpp"

namespace entroflux {

enum class JobKind { Simulate, LatticeCompare, Certify, FeasibilityScan };

JobKind job_from_string(const std::string& s);
std::string to_string(JobKind job);

struct InitialCondition {
    std::string kind = "constant"; // constant | step | gaussian_bump | perturbed_constant
    std::vector<double> values;    // base/constant state, one entry per species
    std::vector<double> left, right; // step
    std::vector<double> amplitude;   // gaussian_bump / perturbed_constant
    double center = 0.5, width = 0.1; // gaussian_bump
};

struct RunConfig {
    int schema_version = 1;
    JobKind job = JobKind::Simulate;

    std::string model_name;
    std::map<std::string, double> model_params;

    std::optional<std::string> entropy_family; // default chosen per model
    double entropy_c = 0.5;
    std::optional<double> entropy_eps;

    int M = 64;
    double L = 1.0;
    double T = 0.0;
    SolverConfig solver;

    InitialCondition ic;
    std::uint64_t seed = 0;

    long certify_samples = 10000;
    std::string certify_hypothesis = "H2"; // H2 | H2prime

    int lattice_N = 64;
    double lattice_dt = 0.0; // 0 = automatic stability bound

    std::vector<LinearFamilyParams> feasibility_params;
    int feasibility_resolution = 128;

    std::string out_dir = "out";
    int snapshot_stride = 1;
};

/// Parse and fully validate a config file. All validation errors are
/// collected and reported together in the ConfigError message; unknown keys
/// are rejected.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_json(const nlohmann::json& j);

/// Initial field for the config (seeded perturbations use splitmix64);
/// every cell is clamped into the interior of D with margin 1e-6.
StateField build_initial_condition(const RunConfig& cfg, const CrossDiffusionModel& model);

} // namespace entroflux
