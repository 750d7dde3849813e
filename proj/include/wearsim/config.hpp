#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wearsim/engine.hpp"

namespace wearsim {

/// Two-mode alternation shorthand for the mode schedule: mode_a for
/// fraction_a of every period, mode_b for the rest.
struct DutyCycleSchedule {
    std::string mode_a;
    std::string mode_b;
    double fraction_a = 0.5;
    double period_s = 7200.0;
};

/// A fully validated object graph: the electrical model, the scenario, and
/// the radio/harvest/battery parameters it references.
struct SystemConfig {
    std::vector<Rail> rails;
    PowerModel power;
    std::map<std::string, ModeSpec> modes;
    BatterySpec battery;
    HarvesterCurve harvester;
    UplinkModel nbiot;
    BleAdvertisingSpec ble;
    Scenario scenario;
    std::optional<DutyCycleSchedule> duty_cycle;   // present when the schedule used the shorthand

    SimInputs sim_inputs() const;
};

/// The built-in electrical model and a defaults-only scenario (sleep mode
/// around the clock, no light, no uplinks).
nlohmann::json default_config_json();

/// Read a config file (or resolve a built-in scenario name) and deep-merge
/// it over the defaults. Blank files mean "defaults only". Throws
/// ConfigError when the path is neither a file nor a known scenario.
nlohmann::json load_config_json(const std::string& path_or_name);

/// Parse + validate a merged config document into the object graph.
SystemConfig build_system(const nlohmann::json& config);

/// Normalized round-trippable form: build_system(to_json(s)) == s.
nlohmann::json to_json(const SystemConfig& system);

/// Apply one "key=value"-style override (key and value passed separately).
/// Unknown keys are rejected up front with the list location in the message.
void apply_override(nlohmann::json& config, const std::string& key, const std::string& value);

/// Parse "key=value" into its two halves.
std::pair<std::string, std::string> split_override(const std::string& assignment);

std::vector<std::string> builtin_scenario_names();
bool is_builtin_scenario(const std::string& name);
nlohmann::json builtin_scenario_json(const std::string& name);

}  // namespace wearsim
