#pragma once

#include <stdexcept>
#include <string>

namespace entroflux {

/// Invalid model/solver/run configuration (bad parameters, malformed input).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// State outside the admissible set where an evaluator requires the interior.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Iterative procedure failed to converge; message carries the residual.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace entroflux
