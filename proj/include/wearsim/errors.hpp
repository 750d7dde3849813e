#pragma once

#include <stdexcept>
#include <string>

namespace wearsim {

/// Raised for malformed or inconsistent configuration (bad schedules,
/// unknown keys, dangling references). The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wearsim
