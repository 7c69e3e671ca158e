#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "entroflux/domain.hpp"
#include "entroflux/rng.hpp"

namespace testutil {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::filesystem::create_directories(
        std::filesystem::path(path).parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
}

/// Fresh scratch directory under the build tree.
inline std::string scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "entroflux_tests" / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir.string();
}

#ifdef ENTROFLUX_BIN
/// Run the CLI binary; returns its exit code.
inline int run_cli(const std::string& args) {
    std::string cmd = std::string(ENTROFLUX_BIN) + " " + args + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}
#endif

/// k-th quasi-random interior point of the domain.
inline Eigen::VectorXd interior_point(const entroflux::StateDomain& dom,
                                      std::uint64_t k, double margin = 1e-3) {
    entroflux::QuasiRandom seq(std::min(dom.n + 1, 8));
    return dom.sample(seq, k, margin);
}

} // namespace testutil
