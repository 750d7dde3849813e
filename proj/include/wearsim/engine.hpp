#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wearsim/battery.hpp"
#include "wearsim/harvest.hpp"
#include "wearsim/power_model.hpp"
#include "wearsim/radio.hpp"

namespace wearsim {

struct ModeSegment {
    double start_s = 0.0;      // seconds-of-day
    double duration_s = 0.0;
    std::string mode;
};

/// A repeating daily scenario. The mode schedule must cover the day exactly
/// once; all boundaries and event times must be multiples of dt.
struct Scenario {
    std::vector<ModeSegment> mode_schedule;
    LightSchedule light;

    int uplinks_per_day = 0;
    std::vector<double> uplink_times_s;   // seconds-of-day; derived when empty
    double rssi_dbm = -90.0;

    int tasks_per_day = 0;
    double task_duration_s = 0.5;
    std::vector<double> task_times_s;     // seconds-of-day; derived when empty

    double max_horizon_s = 730.0 * kSecondsPerDay;
    double dt_s = 1.0;
    double sample_interval_s = 3600.0;    // time-series decimation
};

/// Everything a simulation run needs besides the scenario itself.
struct SimInputs {
    PowerModel power;
    std::map<std::string, ModeSpec> modes;
    HarvesterCurve curve;
    BatterySpec battery;
    UplinkModel uplink;
};

struct TimeSample {
    double t_s = 0.0;
    double stored_j = 0.0;
    double load_w = 0.0;
    double harvest_w = 0.0;
    std::string event;   // empty for plain samples
};

struct SimReport {
    std::optional<double> lifetime_s;     // empty: survived the horizon
    double sim_time_s = 0.0;
    std::int64_t steps = 0;

    double average_load_w = 0.0;
    double average_harvest_w = 0.0;

    double initial_stored_j = 0.0;
    double final_stored_j = 0.0;
    double consumed_j = 0.0;              // load integral plus discrete events
    double harvested_in_j = 0.0;          // panel output while running
    double harvested_stored_j = 0.0;      // minus full-battery overflow
    double overflow_j = 0.0;
    double conservation_residual = 0.0;   // relative accounting error

    std::map<std::string, double> breakdown_j;   // per component / event class
    std::vector<TimeSample> series;

    bool survived() const { return !lifetime_s.has_value(); }
    std::optional<double> lifetime_days() const {
        if (!lifetime_s) return std::nullopt;
        return *lifetime_s / kSecondsPerDay;
    }
};

/// Throws ConfigError on schedule gaps/overlaps, unknown modes, or
/// boundaries that do not align with dt.
void validate_scenario(const Scenario& scenario, const SimInputs& inputs);

/// Event times-of-day actually used for a scenario (derived even spread when
/// not given explicitly), floored to multiples of dt.
std::vector<double> scenario_uplink_times(const Scenario& scenario);
std::vector<double> scenario_task_times(const Scenario& scenario);

/// Deterministic fixed-step run: walk the daily pattern from a full battery,
/// integrate net power, withdraw event energies at their times, stop at
/// depletion or max_horizon. Bit-identical output for identical inputs.
SimReport simulate(const Scenario& scenario, const SimInputs& inputs);

/// Analytic lifetime for a constant load with the daily harvest spread
/// evenly: usable energy / (load - harvest/day). Empty when the balance is
/// non-depleting.
std::optional<double> closed_form_lifetime_s(double load_w, double harvest_daily_j,
                                             const BatterySpec& battery);

}  // namespace wearsim
