#include "entroflux/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "entroflux/catalog.hpp"
#include "entroflux/rng.hpp"

namespace entroflux {
namespace {

using nlohmann::json;

/// Collects validation problems so a bad config reports everything at once.
struct Errors {
    std::vector<std::string> messages;

    void add(const std::string& m) { messages.push_back(m); }

    void check_keys(const json& obj, const std::string& where,
                    const std::set<std::string>& allowed) {
        for (auto it = obj.begin(); it != obj.end(); ++it)
            if (!allowed.count(it.key()))
                add(where + ": unknown key \"" + it.key() + "\"");
    }

    [[noreturn]] void throw_all() const {
        std::ostringstream os;
        os << "invalid configuration (" << messages.size() << " problem"
           << (messages.size() == 1 ? "" : "s") << "):";
        for (const auto& m : messages) os << "\n  - " << m;
        throw ConfigError(os.str());
    }
};

double num(const json& obj, const char* key, double fallback, Errors& err,
           const std::string& where) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) {
        err.add(where + "." + key + ": expected a number");
        return fallback;
    }
    return obj[key].get<double>();
}

long integer(const json& obj, const char* key, long fallback, Errors& err,
             const std::string& where) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number_integer()) {
        err.add(where + "." + key + ": expected an integer");
        return fallback;
    }
    return obj[key].get<long>();
}

std::vector<double> num_array(const json& obj, const char* key, Errors& err,
                              const std::string& where) {
    std::vector<double> out;
    if (!obj.contains(key)) return out;
    if (!obj[key].is_array()) {
        err.add(where + "." + key + ": expected an array of numbers");
        return out;
    }
    for (const auto& v : obj[key]) {
        if (!v.is_number()) {
            err.add(where + "." + key + ": expected an array of numbers");
            return {};
        }
        out.push_back(v.get<double>());
    }
    return out;
}

} // namespace

JobKind job_from_string(const std::string& s) {
    if (s == "simulate") return JobKind::Simulate;
    if (s == "lattice_compare") return JobKind::LatticeCompare;
    if (s == "certify") return JobKind::Certify;
    if (s == "feasibility_scan") return JobKind::FeasibilityScan;
    throw ConfigError("unknown job \"" + s +
                      "\" (expected simulate | lattice_compare | certify | "
                      "feasibility_scan)");
}

std::string to_string(JobKind job) {
    switch (job) {
    case JobKind::Simulate: return "simulate";
    case JobKind::LatticeCompare: return "lattice_compare";
    case JobKind::Certify: return "certify";
    case JobKind::FeasibilityScan: return "feasibility_scan";
    }
    return "?";
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("malformed JSON in " + path + ": " + e.what());
    }
    return parse_config_json(j);
}

RunConfig parse_config_json(const nlohmann::json& j) {
    Errors err;
    RunConfig cfg;
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    err.check_keys(j, "config",
                   {"schema_version", "job", "model", "entropy", "grid", "time",
                    "solver", "ic", "output", "certify", "lattice", "feasibility"});

    cfg.schema_version =
        static_cast<int>(integer(j, "schema_version", 1, err, "config"));
    if (cfg.schema_version != 1)
        err.add("schema_version: only version 1 is supported");

    if (!j.contains("job") || !j["job"].is_string()) {
        err.add("job: required string");
    } else {
        try {
            cfg.job = job_from_string(j["job"].get<std::string>());
        } catch (const ConfigError& e) {
            err.add(e.what());
        }
    }

    if (j.contains("model")) {
        const json& m = j["model"];
        if (!m.is_object()) {
            err.add("model: expected an object {name, params}");
        } else {
            err.check_keys(m, "model", {"name", "params"});
            if (m.contains("name") && m["name"].is_string())
                cfg.model_name = m["name"].get<std::string>();
            else
                err.add("model.name: required string");
            if (m.contains("params")) {
                if (!m["params"].is_object()) {
                    err.add("model.params: expected an object of numbers");
                } else {
                    for (auto it = m["params"].begin(); it != m["params"].end(); ++it) {
                        if (!it.value().is_number())
                            err.add("model.params." + it.key() + ": expected a number");
                        else
                            cfg.model_params[it.key()] = it.value().get<double>();
                    }
                }
            }
        }
    } else if (cfg.job != JobKind::FeasibilityScan) {
        err.add("model: required for this job");
    }

    if (j.contains("entropy")) {
        const json& e = j["entropy"];
        if (!e.is_object()) {
            err.add("entropy: expected an object {family, c, eps}");
        } else {
            err.check_keys(e, "entropy", {"family", "c", "eps"});
            if (e.contains("family")) {
                if (e["family"].is_string())
                    cfg.entropy_family = e["family"].get<std::string>();
                else
                    err.add("entropy.family: expected a string");
            }
            cfg.entropy_c = num(e, "c", cfg.entropy_c, err, "entropy");
            if (e.contains("eps")) cfg.entropy_eps = num(e, "eps", 0.0, err, "entropy");
            if (cfg.entropy_eps && *cfg.entropy_eps < 0.0)
                err.add("entropy.eps: must be >= 0");
        }
    }

    if (j.contains("grid")) {
        const json& g = j["grid"];
        if (!g.is_object()) {
            err.add("grid: expected an object {M, L}");
        } else {
            err.check_keys(g, "grid", {"M", "L"});
            cfg.M = static_cast<int>(integer(g, "M", cfg.M, err, "grid"));
            cfg.L = num(g, "L", cfg.L, err, "grid");
        }
    }
    if (cfg.M < 2) err.add("grid.M: must be >= 2");
    if (!(cfg.L > 0.0)) err.add("grid.L: must be > 0");

    if (j.contains("time")) {
        const json& t = j["time"];
        if (!t.is_object()) {
            err.add("time: expected an object {T, tau}");
        } else {
            err.check_keys(t, "time", {"T", "tau"});
            cfg.T = num(t, "T", cfg.T, err, "time");
            cfg.solver.tau = num(t, "tau", cfg.solver.tau, err, "time");
        }
    }
    if (cfg.T < 0.0) err.add("time.T: must be >= 0");
    if (!(cfg.solver.tau > 0.0)) err.add("time.tau: must be > 0");

    if (j.contains("solver")) {
        const json& s = j["solver"];
        if (!s.is_object()) {
            err.add("solver: expected an object of overrides");
        } else {
            err.check_keys(s, "solver",
                           {"eps", "newton_tol", "newton_max_iter", "max_halvings",
                            "max_fallbacks", "fallback_eps"});
            cfg.solver.eps = num(s, "eps", cfg.solver.eps, err, "solver");
            cfg.solver.newton_tol =
                num(s, "newton_tol", cfg.solver.newton_tol, err, "solver");
            cfg.solver.newton_max_iter = static_cast<int>(
                integer(s, "newton_max_iter", cfg.solver.newton_max_iter, err, "solver"));
            cfg.solver.max_halvings = static_cast<int>(
                integer(s, "max_halvings", cfg.solver.max_halvings, err, "solver"));
            cfg.solver.max_fallbacks = static_cast<int>(
                integer(s, "max_fallbacks", cfg.solver.max_fallbacks, err, "solver"));
            cfg.solver.fallback_eps =
                num(s, "fallback_eps", cfg.solver.fallback_eps, err, "solver");
        }
    }
    if (cfg.solver.eps < 0.0) err.add("solver.eps: must be >= 0");
    if (!(cfg.solver.newton_tol > 0.0)) err.add("solver.newton_tol: must be > 0");
    if (cfg.solver.newton_max_iter < 1) err.add("solver.newton_max_iter: must be >= 1");
    if (cfg.solver.max_halvings < 0) err.add("solver.max_halvings: must be >= 0");
    if (cfg.solver.max_fallbacks < 0) err.add("solver.max_fallbacks: must be >= 0");
    if (cfg.solver.fallback_eps < 0.0) err.add("solver.fallback_eps: must be >= 0");

    if (j.contains("ic")) {
        const json& ic = j["ic"];
        if (!ic.is_object()) {
            err.add("ic: expected an object");
        } else {
            err.check_keys(ic, "ic",
                           {"kind", "values", "left", "right", "amplitude", "center",
                            "width", "seed"});
            if (ic.contains("kind")) {
                if (ic["kind"].is_string())
                    cfg.ic.kind = ic["kind"].get<std::string>();
                else
                    err.add("ic.kind: expected a string");
            }
            static const std::set<std::string> kinds = {"constant", "step",
                                                        "gaussian_bump",
                                                        "perturbed_constant"};
            if (!kinds.count(cfg.ic.kind))
                err.add("ic.kind: unknown kind \"" + cfg.ic.kind + "\"");
            cfg.ic.values = num_array(ic, "values", err, "ic");
            cfg.ic.left = num_array(ic, "left", err, "ic");
            cfg.ic.right = num_array(ic, "right", err, "ic");
            cfg.ic.amplitude = num_array(ic, "amplitude", err, "ic");
            cfg.ic.center = num(ic, "center", cfg.ic.center, err, "ic");
            cfg.ic.width = num(ic, "width", cfg.ic.width, err, "ic");
            if (ic.contains("seed")) {
                if (ic["seed"].is_number_unsigned() || ic["seed"].is_number_integer())
                    cfg.seed = ic["seed"].get<std::uint64_t>();
                else
                    err.add("ic.seed: expected an unsigned integer");
            }
            if (cfg.ic.kind == "step" && (cfg.ic.left.empty() || cfg.ic.right.empty()))
                err.add("ic: step requires \"left\" and \"right\" states");
            if (cfg.ic.kind != "step" && cfg.ic.values.empty() &&
                cfg.job == JobKind::Simulate)
                err.add("ic: \"values\" required for kind " + cfg.ic.kind);
            if ((cfg.ic.kind == "gaussian_bump" ||
                 cfg.ic.kind == "perturbed_constant") &&
                cfg.ic.amplitude.empty())
                err.add("ic: \"amplitude\" required for kind " + cfg.ic.kind);
            if (!(cfg.ic.width > 0.0)) err.add("ic.width: must be > 0");
        }
    } else if (cfg.job == JobKind::Simulate || cfg.job == JobKind::LatticeCompare) {
        err.add("ic: required for this job");
    }

    if (j.contains("output")) {
        const json& o = j["output"];
        if (!o.is_object()) {
            err.add("output: expected an object {dir, snapshot_stride}");
        } else {
            err.check_keys(o, "output", {"dir", "snapshot_stride"});
            if (o.contains("dir")) {
                if (o["dir"].is_string())
                    cfg.out_dir = o["dir"].get<std::string>();
                else
                    err.add("output.dir: expected a string");
            }
            cfg.snapshot_stride = static_cast<int>(
                integer(o, "snapshot_stride", cfg.snapshot_stride, err, "output"));
        }
    }
    if (cfg.snapshot_stride < 1) err.add("output.snapshot_stride: must be >= 1");

    if (j.contains("certify")) {
        const json& c = j["certify"];
        if (!c.is_object()) {
            err.add("certify: expected an object {samples, hypothesis}");
        } else {
            err.check_keys(c, "certify", {"samples", "hypothesis"});
            cfg.certify_samples = integer(c, "samples", cfg.certify_samples, err,
                                          "certify");
            if (c.contains("hypothesis")) {
                if (c["hypothesis"].is_string())
                    cfg.certify_hypothesis = c["hypothesis"].get<std::string>();
                else
                    err.add("certify.hypothesis: expected a string");
            }
            if (cfg.certify_hypothesis != "H2" && cfg.certify_hypothesis != "H2prime")
                err.add("certify.hypothesis: expected H2 | H2prime");
        }
    }
    if (cfg.certify_samples < 1) err.add("certify.samples: must be >= 1");

    if (j.contains("lattice")) {
        const json& l = j["lattice"];
        if (!l.is_object()) {
            err.add("lattice: expected an object {N, dt}");
        } else {
            err.check_keys(l, "lattice", {"N", "dt"});
            cfg.lattice_N = static_cast<int>(integer(l, "N", cfg.lattice_N, err,
                                                     "lattice"));
            cfg.lattice_dt = num(l, "dt", cfg.lattice_dt, err, "lattice");
        }
    }
    if (cfg.lattice_N < 2) err.add("lattice.N: must be >= 2");
    if (cfg.lattice_dt < 0.0) err.add("lattice.dt: must be >= 0 (0 = automatic)");

    if (j.contains("feasibility")) {
        const json& f = j["feasibility"];
        if (!f.is_object()) {
            err.add("feasibility: expected an object {resolution, params}");
        } else {
            err.check_keys(f, "feasibility", {"resolution", "params"});
            cfg.feasibility_resolution = static_cast<int>(integer(
                f, "resolution", cfg.feasibility_resolution, err, "feasibility"));
            if (f.contains("params")) {
                if (!f["params"].is_array()) {
                    err.add("feasibility.params: expected an array of objects");
                } else {
                    int idx = 0;
                    for (const auto& pj : f["params"]) {
                        std::string where = "feasibility.params[" +
                                            std::to_string(idx++) + "]";
                        if (!pj.is_object()) {
                            err.add(where + ": expected an object");
                            continue;
                        }
                        err.check_keys(pj, where,
                                       {"alpha11", "alpha22", "beta11", "beta12",
                                        "gamma22"});
                        LinearFamilyParams p;
                        p.alpha11 = num(pj, "alpha11", 0.0, err, where);
                        p.alpha22 = num(pj, "alpha22", 0.0, err, where);
                        p.beta11 = num(pj, "beta11", 0.0, err, where);
                        p.beta12 = num(pj, "beta12", 0.0, err, where);
                        p.gamma22 = num(pj, "gamma22", 0.0, err, where);
                        cfg.feasibility_params.push_back(p);
                    }
                }
            }
        }
    }
    if (cfg.job == JobKind::FeasibilityScan) {
        if (cfg.feasibility_params.empty())
            err.add("feasibility.params: at least one parameter vector required");
        if (cfg.feasibility_resolution < 64)
            err.add("feasibility.resolution: must be >= 64");
    }

    if (!err.messages.empty()) err.throw_all();
    return cfg;
}

StateField build_initial_condition(const RunConfig& cfg,
                                   const CrossDiffusionModel& model) {
    const int n = model.n;
    Grid1D grid(cfg.M, cfg.L);
    StateField field(grid, n);
    const InitialCondition& ic = cfg.ic;

    auto require_size = [&](const std::vector<double>& v, const char* what) {
        if (static_cast<int>(v.size()) != n)
            throw ConfigError(std::string("ic.") + what + ": expected " +
                              std::to_string(n) + " entries");
    };
    auto as_vec = [&](const std::vector<double>& v) {
        return Eigen::Map<const Eigen::VectorXd>(v.data(), n).eval();
    };

    if (ic.kind == "constant") {
        require_size(ic.values, "values");
        field.values.colwise() = as_vec(ic.values);
    } else if (ic.kind == "step") {
        require_size(ic.left, "left");
        require_size(ic.right, "right");
        Eigen::VectorXd l = as_vec(ic.left), r = as_vec(ic.right);
        for (int k = 0; k < grid.M; ++k)
            field.values.col(k) = grid.x(k) < ic.center * cfg.L ? l : r;
    } else if (ic.kind == "gaussian_bump") {
        require_size(ic.values, "values");
        require_size(ic.amplitude, "amplitude");
        Eigen::VectorXd base = as_vec(ic.values), amp = as_vec(ic.amplitude);
        for (int k = 0; k < grid.M; ++k) {
            double arg = (grid.x(k) - ic.center * cfg.L) / (ic.width * cfg.L);
            field.values.col(k) = base + amp * std::exp(-0.5 * arg * arg);
        }
    } else if (ic.kind == "perturbed_constant") {
        require_size(ic.values, "values");
        require_size(ic.amplitude, "amplitude");
        Eigen::VectorXd base = as_vec(ic.values), amp = as_vec(ic.amplitude);
        SplitMix64 rng(cfg.seed);
        for (int k = 0; k < grid.M; ++k)
            for (int i = 0; i < n; ++i)
                field.values(i, k) = base[i] + amp[i] * rng.uniform(-1.0, 1.0);
    } else {
        throw ConfigError("ic.kind: unknown kind \"" + ic.kind + "\"");
    }

    // every cell must lie in D; random perturbations get the interior clamp
    const double clamp_margin = 1e-6;
    for (int k = 0; k < grid.M; ++k) {
        Eigen::VectorXd col = field.values.col(k);
        if (ic.kind == "perturbed_constant")
            col = model.domain.clamp_interior(col, clamp_margin);
        if (!model.domain.contains(col))
            throw ConfigError("ic: state at cell " + std::to_string(k) +
                              " lies outside the admissible domain");
        field.values.col(k) = col;
    }
    return field;
}

} // namespace entroflux
