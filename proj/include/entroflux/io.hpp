#pragma once

#include <string>

namespace entroflux {

/// Shortest round-trip decimal representation of a double (deterministic
/// across runs of the same build).
std::string format_double(double v);

/// Write content to path atomically (temp file in the same directory, then
/// rename). Creates parent directories as needed.
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace entroflux
