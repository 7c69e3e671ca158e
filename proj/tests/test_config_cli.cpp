#include <algorithm>
#include <string>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "entroflux/catalog.hpp"
#include "entroflux/config.hpp"
#include "entroflux/jobs.hpp"
#include "helpers.hpp"

using namespace entroflux;
using nlohmann::json;

namespace {

json minimal_config() {
    return json{{"job", "simulate"},
                {"model",
                 {{"name", "maxwell_stefan"}, {"params", {{"d0", 3.0}, {"d1", 2.0}, {"d2", 1.0}}}}},
                {"ic", {{"kind", "constant"}, {"values", {0.3, 0.3}}}}};
}

} // namespace

TEST_CASE("minimal config parses with defaults") {
    RunConfig cfg = parse_config_json(minimal_config());
    CHECK(cfg.job == JobKind::Simulate);
    CHECK(cfg.M == 64);
    CHECK(cfg.L == 1.0);
    CHECK(cfg.solver.tau == 1e-3);
    CHECK(cfg.snapshot_stride == 1);
    CHECK(!cfg.entropy_family.has_value());
}

TEST_CASE("domain violations and bad values are rejected") {
    json j = minimal_config();
    j["ic"]["values"] = {0.6, 0.6}; // u1 + u2 >= 1 on the simplex
    RunConfig cfg = parse_config_json(j);
    CrossDiffusionModel model = make_model(cfg.model_name, cfg.model_params);
    CHECK_THROWS_AS(build_initial_condition(cfg, model), ConfigError);

    json bad_tau = minimal_config();
    bad_tau["time"] = {{"T", 0.1}, {"tau", 0.0}};
    CHECK_THROWS_AS(parse_config_json(bad_tau), ConfigError);
}

TEST_CASE("unknown keys are rejected and errors are collected") {
    json j = minimal_config();
    j["grid"] = {{"M", 1}, {"L", -2.0}};
    j["typo_key"] = 1;
    try {
        parse_config_json(j);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        std::string msg = e.what();
        CHECK(msg.find("typo_key") != std::string::npos);
        CHECK(msg.find("grid.M") != std::string::npos);
        CHECK(msg.find("grid.L") != std::string::npos);
    }
}

TEST_CASE("initial conditions cover every kind") {
    CrossDiffusionModel model = make_maxwell_stefan(3.0, 2.0, 1.0);

    RunConfig cfg = parse_config_json(minimal_config());
    cfg.M = 16;
    StateField f = build_initial_condition(cfg, model);
    CHECK((f.values.array() == 0.3).all());

    cfg.ic.kind = "step";
    cfg.ic.left = {0.5, 0.2};
    cfg.ic.right = {0.1, 0.1};
    cfg.ic.center = 0.5;
    f = build_initial_condition(cfg, model);
    CHECK(f.values(0, 0) == 0.5);
    CHECK(f.values(0, 15) == 0.1);

    cfg.ic.kind = "perturbed_constant";
    cfg.ic.values = {0.3, 0.3};
    cfg.ic.amplitude = {0.05, 0.05};
    cfg.seed = 42;
    StateField p1 = build_initial_condition(cfg, model);
    StateField p2 = build_initial_condition(cfg, model);
    CHECK((p1.values - p2.values).cwiseAbs().maxCoeff() == 0.0); // same seed
    cfg.seed = 43;
    StateField p3 = build_initial_condition(cfg, model);
    CHECK((p1.values - p3.values).cwiseAbs().maxCoeff() > 0.0);
    for (int k = 0; k < p1.grid.M; ++k)
        CHECK(model.domain.interior_margin(p1.values.col(k)) >= 1e-6);
}

#ifdef ENTROFLUX_BIN

TEST_CASE("batch runs: exit codes and determinism") {
    std::string dir = testutil::scratch_dir("cli");
    json j = minimal_config();
    j["ic"] = {{"kind", "perturbed_constant"},
               {"values", {0.3, 0.3}},
               {"amplitude", {0.05, 0.05}},
               {"seed", 42}};
    j["grid"] = {{"M", 32}, {"L", 1.0}};
    j["time"] = {{"T", 0.01}, {"tau", 1e-3}};
    testutil::write_file(dir + "/run.json", j.dump());

    // T > 0 run twice: byte-identical outputs
    CHECK(testutil::run_cli("simulate --config " + dir + "/run.json --out " + dir +
                            "/a") == 0);
    CHECK(testutil::run_cli("simulate --config " + dir + "/run.json --out " + dir +
                            "/b") == 0);
    for (const char* f : {"/snapshots.csv", "/steps.csv", "/diagnostics.csv",
                          "/manifest.json"}) {
        std::string a = testutil::read_file(dir + "/a" + f);
        CHECK(!a.empty());
        CHECK(a == testutil::read_file(dir + "/b" + f));
    }

    // T = 0: initial snapshot only
    j["time"] = {{"T", 0.0}, {"tau", 1e-3}};
    testutil::write_file(dir + "/t0.json", j.dump());
    CHECK(testutil::run_cli("simulate --config " + dir + "/t0.json --out " + dir +
                            "/t0") == 0);
    std::string snaps = testutil::read_file(dir + "/t0/snapshots.csv");
    CHECK(std::count(snaps.begin(), snaps.end(), '\n') == 33); // header + 32 cells

    // config errors exit 1
    CHECK(testutil::run_cli("simulate --config " + dir + "/missing.json") == 1);
    testutil::write_file(dir + "/broken.json", "{ not json");
    CHECK(testutil::run_cli("simulate --config " + dir + "/broken.json") == 1);
    json wrong = j;
    wrong["job"] = "certify";
    testutil::write_file(dir + "/wrong.json", wrong.dump());
    CHECK(testutil::run_cli("simulate --config " + dir + "/wrong.json") == 1);

    // numerical failure exits 2
    json hard = minimal_config();
    hard["ic"] = {{"kind", "step"},
                  {"left", {0.8, 0.15}},
                  {"right", {0.01, 0.01}}};
    hard["grid"] = {{"M", 32}, {"L", 1.0}};
    hard["time"] = {{"T", 1.0}, {"tau", 1.0}};
    hard["solver"] = {{"newton_max_iter", 1}, {"max_halvings", 0},
                      {"max_fallbacks", 0}};
    testutil::write_file(dir + "/hard.json", hard.dump());
    CHECK(testutil::run_cli("simulate --config " + dir + "/hard.json --out " + dir +
                            "/hard") == 2);
    std::string manifest = testutil::read_file(dir + "/hard/manifest.json");
    CHECK(manifest.find("\"failed\"") != std::string::npos);
}

TEST_CASE("certify job emits a pass verdict for the ternary mixture") {
    std::string dir = testutil::scratch_dir("cli_certify");
    json j = {{"job", "certify"},
              {"model",
               {{"name", "maxwell_stefan"},
                {"params", {{"d0", 3.0}, {"d1", 2.0}, {"d2", 1.0}}}}},
              {"certify", {{"samples", 2000}, {"hypothesis", "H2"}}}};
    testutil::write_file(dir + "/c.json", j.dump());
    CHECK(testutil::run_cli("certify --config " + dir + "/c.json --out " + dir) == 0);
    json report = json::parse(testutil::read_file(dir + "/report.json"));
    CHECK(report["verdict"] == "pass");
}

#endif // ENTROFLUX_BIN
