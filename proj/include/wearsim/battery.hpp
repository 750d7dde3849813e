#pragma once

namespace wearsim {

struct BatterySpec {
    double capacity_mah = 370.0;
    double nominal_voltage_v = 3.7;
    double usable_dod = 0.9;          // usable depth of discharge, in (0, 1]
    double self_discharge_w = 0.0;
};

/// capacity * 3.6 * nominal voltage, joules. Capacity must be positive.
double full_energy_j(const BatterySpec& spec);

double usable_energy_j(const BatterySpec& spec);

/// Stored energy at or below this level counts as depleted.
double depletion_floor_j(const BatterySpec& spec);

struct BatteryState {
    BatterySpec spec;
    double stored_j = 0.0;

    static BatteryState full(const BatterySpec& spec);
    bool depleted() const;
};

/// One integration step: stored' = clamp(stored + net_power * dt, 0, full).
/// Charging beyond full discards the surplus. dt must be positive.
BatteryState apply_net_power(const BatteryState& state, double net_power_w, double dt_s);

}  // namespace wearsim
