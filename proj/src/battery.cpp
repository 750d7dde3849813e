#include "wearsim/battery.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace wearsim {

double full_energy_j(const BatterySpec& spec) {
    if (spec.capacity_mah <= 0.0) {
        throw std::invalid_argument("battery capacity must be positive, got " +
                                    std::to_string(spec.capacity_mah) + " mAh");
    }
    // mAh * 3.6 s*A/mAh * V
    return spec.capacity_mah * 3.6 * spec.nominal_voltage_v;
}

double usable_energy_j(const BatterySpec& spec) {
    return full_energy_j(spec) * spec.usable_dod;
}

double depletion_floor_j(const BatterySpec& spec) {
    return full_energy_j(spec) * (1.0 - spec.usable_dod);
}

BatteryState BatteryState::full(const BatterySpec& spec) {
    return BatteryState{spec, full_energy_j(spec)};
}

bool BatteryState::depleted() const {
    return stored_j <= depletion_floor_j(spec);
}

BatteryState apply_net_power(const BatteryState& state, double net_power_w, double dt_s) {
    if (dt_s <= 0.0) {
        throw std::invalid_argument("time step must be positive, got " + std::to_string(dt_s));
    }
    double next = state.stored_j + net_power_w * dt_s;
    next = std::clamp(next, 0.0, full_energy_j(state.spec));
    return BatteryState{state.spec, next};
}

}  // namespace wearsim
