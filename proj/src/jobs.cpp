#include "entroflux/jobs.hpp"

#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "entroflux/catalog.hpp"
#include "entroflux/certify.hpp"
#include "entroflux/diagnostics.hpp"
#include "entroflux/io.hpp"
#include "entroflux/lattice.hpp"
#include "entroflux/linear_family.hpp"
#include "entroflux/solver.hpp"

namespace entroflux {
namespace {

using nlohmann::json;

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json config_canonical(const RunConfig& cfg) {
    json j;
    j["schema_version"] = cfg.schema_version;
    j["job"] = to_string(cfg.job);
    j["model"] = {{"name", cfg.model_name}, {"params", cfg.model_params}};
    j["entropy"] = {{"family", cfg.entropy_family ? json(*cfg.entropy_family) : json()},
                    {"c", cfg.entropy_c},
                    {"eps", cfg.entropy_eps ? json(*cfg.entropy_eps) : json()}};
    j["grid"] = {{"M", cfg.M}, {"L", cfg.L}};
    j["time"] = {{"T", cfg.T}, {"tau", cfg.solver.tau}};
    j["solver"] = {{"eps", cfg.solver.eps},
                   {"newton_tol", cfg.solver.newton_tol},
                   {"newton_max_iter", cfg.solver.newton_max_iter},
                   {"max_halvings", cfg.solver.max_halvings},
                   {"max_fallbacks", cfg.solver.max_fallbacks},
                   {"fallback_eps", cfg.solver.fallback_eps}};
    j["ic"] = {{"kind", cfg.ic.kind},     {"values", cfg.ic.values},
               {"left", cfg.ic.left},     {"right", cfg.ic.right},
               {"amplitude", cfg.ic.amplitude}, {"center", cfg.ic.center},
               {"width", cfg.ic.width},   {"seed", cfg.seed}};
    j["certify"] = {{"samples", cfg.certify_samples},
                    {"hypothesis", cfg.certify_hypothesis}};
    j["lattice"] = {{"N", cfg.lattice_N}, {"dt", cfg.lattice_dt}};
    json fp = json::array();
    for (const auto& p : cfg.feasibility_params)
        fp.push_back({{"alpha11", p.alpha11},
                      {"alpha22", p.alpha22},
                      {"beta11", p.beta11},
                      {"beta12", p.beta12},
                      {"gamma22", p.gamma22}});
    j["feasibility"] = {{"resolution", cfg.feasibility_resolution}, {"params", fp}};
    j["output"] = {{"snapshot_stride", cfg.snapshot_stride}};
    return j;
}

void write_manifest(const RunConfig& cfg, const std::string& status, json summary) {
    json canonical = config_canonical(cfg);
    json m;
    m["tool"] = "entroflux";
    m["version"] = "1.0.0";
    m["schema_version"] = cfg.schema_version;
    m["job"] = to_string(cfg.job);
    m["config_hash"] = fnv1a_hex(canonical.dump());
    m["status"] = status;
    m["summary"] = std::move(summary);
    write_file_atomic(cfg.out_dir + "/manifest.json", m.dump(2) + "\n");
}

EntropyModel entropy_from_config(const RunConfig& cfg, const CrossDiffusionModel& model) {
    if (!cfg.entropy_family) return default_entropy_for(model, cfg.entropy_eps);
    const std::string& f = *cfg.entropy_family;
    auto param = [&](const char* key, double fallback) {
        auto it = model.params.find(key);
        return it == model.params.end() ? fallback : it->second;
    };
    if (f == "logarithmic") return EntropyModel::logarithmic(model.n);
    if (f == "volume_filling") {
        if (!model.transition_q)
            throw ConfigError("entropy.family volume_filling requires a "
                              "volume-filling model");
        return EntropyModel::volume_filling(*model.transition_q, cfg.entropy_c);
    }
    if (f == "skt_log")
        return EntropyModel::skt_log(param("a12", 1.0), param("a21", 1.0));
    if (f == "population_power")
        return EntropyModel::population_power(param("a12", 1.0), param("a21", 1.0),
                                              param("s", 2.0), cfg.entropy_c,
                                              cfg.entropy_eps.value_or(1e-2));
    throw ConfigError("entropy.family: unknown family \"" + f + "\"");
}

void append_snapshot_rows(std::ostringstream& os, double t, const StateField& field,
                          const char* source) {
    for (int k = 0; k < field.grid.M; ++k) {
        os << format_double(t) << ',' << format_double(field.grid.x(k));
        for (int i = 0; i < field.n(); ++i)
            os << ',' << format_double(field.values(i, k));
        if (source) os << ',' << source;
        os << '\n';
    }
}

std::string snapshot_header(int n, bool with_source) {
    std::string h = "t,x";
    for (int i = 1; i <= n; ++i) h += ",u" + std::to_string(i);
    if (with_source) h += ",source";
    return h + "\n";
}

int run_simulate(const RunConfig& cfg) {
    CrossDiffusionModel model = make_model(cfg.model_name, cfg.model_params);
    EntropyModel em = entropy_from_config(cfg, model);
    StateField field = build_initial_condition(cfg, model);
    Eigen::VectorXd u_inf = steady_state(field);

    std::ostringstream snaps, steps, diags;
    snaps << snapshot_header(model.n, false);
    steps << "step,t,newton_iters,damping,fallbacks,eps_used\n";
    diags << "t,H,H_star";
    for (int i = 1; i <= model.n; ++i) diags << ",mass_" << i;
    diags << ",min_margin,dissipation\n";

    auto emit_diag = [&](double t) {
        DiagnosticsRecord rec = diagnose(em, model, field, t, u_inf);
        diags << format_double(rec.t) << ',' << format_double(rec.H) << ','
              << format_double(rec.H_star);
        for (int i = 0; i < model.n; ++i) diags << ',' << format_double(rec.masses[i]);
        diags << ',' << format_double(rec.min_margin) << ','
              << format_double(rec.dissipation) << '\n';
    };
    append_snapshot_rows(snaps, 0.0, field, nullptr);
    emit_diag(0.0);

    StepStats last = run(model, em, field, cfg.T, cfg.solver,
                         [&](int step, double t, const StateField& f,
                             const StepStats& st) {
                             steps << step << ',' << format_double(t) << ','
                                   << st.newton_iters << ',' << st.damping_events << ','
                                   << st.fallbacks << ','
                                   << format_double(st.eps_used) << '\n';
                             if (step % cfg.snapshot_stride == 0)
                                 append_snapshot_rows(snaps, t, f, nullptr);
                             emit_diag(t);
                         });

    write_file_atomic(cfg.out_dir + "/snapshots.csv", snaps.str());
    write_file_atomic(cfg.out_dir + "/steps.csv", steps.str());
    write_file_atomic(cfg.out_dir + "/diagnostics.csv", diags.str());

    json summary;
    summary["model"] = model.name;
    summary["entropy"] = em.name();
    Eigen::VectorXd final_masses = field.masses();
    summary["final_masses"] =
        std::vector<double>(final_masses.data(), final_masses.data() + model.n);
    if (!model.warnings.empty()) summary["warnings"] = model.warnings;
    if (!last.ok) {
        summary["error"] = last.error;
        write_manifest(cfg, "failed", summary);
        std::cerr << "entroflux: step failed: " << last.error << "\n";
        return kExitNumericalError;
    }
    write_manifest(cfg, "ok", summary);
    return kExitOk;
}

int run_lattice_compare(const RunConfig& cfg) {
    CrossDiffusionModel model = make_model(cfg.model_name, cfg.model_params);
    auto param = [&](const char* key, double fallback) {
        auto it = model.params.find(key);
        return it == model.params.end() ? fallback : it->second;
    };
    TransitionModel tm;
    if (model.transition_q) {
        tm = transition_volume_filling(*model.transition_q, param("beta", 1.0));
    } else if (model.name == "skt" || model.name == "power_population") {
        std::array<double, 6> alpha = {param("a10", 0.0), param("a11", 0.0),
                                       param("a12", 0.0), param("a20", 0.0),
                                       param("a21", 0.0), param("a22", 0.0)};
        tm = transition_population(alpha, param("s", 1.0));
    } else {
        throw ConfigError("lattice_compare: model \"" + model.name +
                          "\" has no lattice transition counterpart");
    }

    // lattice occupations start from the same IC, sampled on the lattice grid
    RunConfig lattice_cfg = cfg;
    lattice_cfg.M = cfg.lattice_N;
    StateField lattice_ic = build_initial_condition(lattice_cfg, model);
    LatticeSystem sys;
    sys.N = cfg.lattice_N;
    sys.h = cfg.L / cfg.lattice_N;
    sys.transition = tm;
    sys.state = lattice_ic.values;
    double dt = cfg.lattice_dt > 0.0 ? cfg.lattice_dt : 0.25 * sys.h * sys.h;
    std::vector<LatticeSnapshot> traj =
        integrate_lattice(sys, cfg.T, dt, std::max(cfg.snapshot_stride, 1));

    std::ostringstream snaps;
    snaps << snapshot_header(2, true);
    Grid1D lattice_grid(cfg.lattice_N, cfg.L);
    for (const auto& snap : traj) {
        StateField f(lattice_grid, 2);
        f.values = snap.state;
        append_snapshot_rows(snaps, snap.t, f, "lattice");
    }
    write_file_atomic(cfg.out_dir + "/lattice_snapshots.csv", snaps.str());

    // PDE reference on the configured grid
    EntropyModel em = entropy_from_config(cfg, model);
    StateField pde = build_initial_condition(cfg, model);
    std::ostringstream pde_snaps;
    pde_snaps << snapshot_header(model.n, false);
    append_snapshot_rows(pde_snaps, 0.0, pde, nullptr);
    StepStats last = run(model, em, pde, cfg.T, cfg.solver);
    json summary;
    summary["model"] = model.name;
    summary["lattice_N"] = cfg.lattice_N;
    if (!last.ok) {
        summary["error"] = last.error;
        write_file_atomic(cfg.out_dir + "/snapshots.csv", pde_snaps.str());
        write_manifest(cfg, "failed", summary);
        std::cerr << "entroflux: step failed: " << last.error << "\n";
        return kExitNumericalError;
    }
    append_snapshot_rows(pde_snaps, cfg.T, pde, nullptr);
    write_file_atomic(cfg.out_dir + "/snapshots.csv", pde_snaps.str());

    // nested-grid L2 distance at the final time (coarser cells are exact
    // averages of finer ones, so no resampling error enters)
    if (cfg.M % cfg.lattice_N == 0 || cfg.lattice_N % cfg.M == 0) {
        int coarse = std::min(cfg.M, cfg.lattice_N);
        auto average_to = [&](const Eigen::MatrixXd& v, int from) {
            int ratio = from / coarse;
            Eigen::MatrixXd out = Eigen::MatrixXd::Zero(v.rows(), coarse);
            for (int k = 0; k < from; ++k) out.col(k / ratio) += v.col(k) / ratio;
            return out;
        };
        Eigen::MatrixXd a = average_to(sys.state, cfg.lattice_N);
        Eigen::MatrixXd b = average_to(pde.values.topRows(2), cfg.M);
        double l2 = std::sqrt((a - b).squaredNorm() * (cfg.L / coarse));
        summary["l2_error"] = l2;
    }
    write_manifest(cfg, "ok", summary);
    return kExitOk;
}

int run_certify(const RunConfig& cfg) {
    CrossDiffusionModel model = make_model(cfg.model_name, cfg.model_params);
    EntropyModel em = entropy_from_config(cfg, model);
    PDReport report =
        cfg.certify_hypothesis == "H2prime"
            ? certify_H2prime(em, model, std::nullopt, cfg.certify_samples)
            : certify_H2(em, model, cfg.certify_samples);
    write_file_atomic(cfg.out_dir + "/report.json", report_json(report).dump(2) + "\n");
    json summary;
    summary["verdict"] = to_string(report.verdict);
    summary["min_eig"] = report.min_eig;
    write_manifest(cfg, "ok", summary);
    return kExitOk;
}

int run_feasibility(const RunConfig& cfg) {
    std::ostringstream csv;
    csv << "alpha11,alpha22,beta11,beta12,gamma22,feasible,worst_u1,worst_u2,"
           "worst_value\n";
    int feasible_count = 0;
    for (const auto& p : cfg.feasibility_params) {
        FeasibilityResult res = feasibility_scan(p, cfg.feasibility_resolution);
        feasible_count += res.feasible ? 1 : 0;
        csv << format_double(p.alpha11) << ',' << format_double(p.alpha22) << ','
            << format_double(p.beta11) << ',' << format_double(p.beta12) << ','
            << format_double(p.gamma22) << ',' << (res.feasible ? 1 : 0) << ','
            << format_double(res.worst_u[0]) << ',' << format_double(res.worst_u[1])
            << ',' << format_double(res.worst_value) << '\n';
    }
    write_file_atomic(cfg.out_dir + "/feasibility.csv", csv.str());
    json summary;
    summary["vectors"] = cfg.feasibility_params.size();
    summary["feasible"] = feasible_count;
    summary["verdict_basis"] = "feasible (sampled)";
    write_manifest(cfg, "ok", summary);
    return kExitOk;
}

} // namespace

int execute(const RunConfig& cfg) {
    try {
        switch (cfg.job) {
        case JobKind::Simulate: return run_simulate(cfg);
        case JobKind::LatticeCompare: return run_lattice_compare(cfg);
        case JobKind::Certify: return run_certify(cfg);
        case JobKind::FeasibilityScan: return run_feasibility(cfg);
        }
        std::cerr << "entroflux: unreachable job kind\n";
        return kExitConfigError;
    } catch (const ConfigError& e) {
        std::cerr << "entroflux: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "entroflux: " << e.what() << "\n";
        return kExitNumericalError;
    }
}

} // namespace entroflux
