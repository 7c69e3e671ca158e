#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "entroflux/jobs.hpp"

int main(int argc, char** argv) {
    CLI::App app{"entroflux — entropy-structured cross-diffusion toolbox"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;

    const char* jobs[] = {"simulate", "lattice_compare", "certify", "feasibility_scan"};
    for (const char* name : jobs) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "path to the JSON run configuration")
            ->required();
        sub->add_option("--out", out_dir, "output directory (overrides the config)");
        sub->add_option("--seed", seed, "RNG seed (overrides the config)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? entroflux::kExitOk : entroflux::kExitConfigError;
    }

    try {
        entroflux::RunConfig cfg = entroflux::parse_config(config_path);
        std::string sub = app.get_subcommands().front()->get_name();
        entroflux::JobKind job = entroflux::job_from_string(sub);
        if (job != cfg.job) {
            std::cerr << "entroflux: config requests job \""
                      << entroflux::to_string(cfg.job) << "\" but subcommand is \""
                      << sub << "\"\n";
            return entroflux::kExitConfigError;
        }
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (seed) cfg.seed = *seed;
        return entroflux::execute(cfg);
    } catch (const entroflux::ConfigError& e) {
        std::cerr << "entroflux: " << e.what() << "\n";
        return entroflux::kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "entroflux: " << e.what() << "\n";
        return entroflux::kExitNumericalError;
    }
}
