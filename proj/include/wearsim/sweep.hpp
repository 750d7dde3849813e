#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wearsim/engine.hpp"

namespace wearsim {

/// One swept config key with the values it takes.
struct SweepAxis {
    std::string key;
    std::vector<std::string> values;
};

struct SweepPoint {
    std::vector<std::pair<std::string, std::string>> overrides;  // key, value
    SimReport report;
};

/// Cartesian product of the axes over a base config; one independent
/// simulation per grid point, results in row-major grid order (first axis
/// slowest). All keys are validated before any point runs. Grid points are
/// independent, so the OpenMP variant farms them out across threads and
/// returns bit-identical reports in the same order.
std::vector<SweepPoint> run_sweep(const nlohmann::json& base_config,
                                  const std::vector<SweepAxis>& axes);
std::vector<SweepPoint> run_sweep_serial(const nlohmann::json& base_config,
                                         const std::vector<SweepAxis>& axes);

}  // namespace wearsim
