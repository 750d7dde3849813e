#include "wearsim/power_model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wearsim {

const ComponentProfile& PowerModel::component(const std::string& name) const {
    auto it = components.find(name);
    if (it == components.end()) {
        throw std::invalid_argument("no component profile named '" + name + "'");
    }
    return it->second;
}

double rail_power_w(const ComponentProfile& profile, const std::string& state) {
    auto it = profile.state_currents_ua.find(state);
    if (it == profile.state_currents_ua.end()) {
        throw std::invalid_argument("component '" + profile.name + "' has no power state '" +
                                    state + "'");
    }
    return it->second * 1e-6 * profile.rail.voltage_v;
}

double component_power_w(const ComponentProfile& profile, const std::string& state) {
    return rail_power_w(profile, state) / profile.rail.efficiency;
}

namespace {

double mcu_power_w(const ComponentProfile& mcu, double duty) {
    // Duty-weighted current blend, then one conversion to battery-side.
    double active_ua = mcu.state_currents_ua.at("active");
    double stop_ua = mcu.state_currents_ua.at("stop");
    double blend_ua = duty * active_ua + (1.0 - duty) * stop_ua;
    return blend_ua * 1e-6 * mcu.rail.voltage_v / mcu.rail.efficiency;
}

}  // namespace

double mode_average_power_w(const ModeSpec& mode, const PowerModel& model) {
    const ComponentProfile& mcu = model.mcu_profile();
    if (!mcu.has_state("active") || !mcu.has_state("stop")) {
        throw std::invalid_argument("MCU profile '" + mcu.name +
                                    "' needs both 'active' and 'stop' states");
    }
    if (mode.mcu_duty_active < 0.0 || mode.mcu_duty_active > 1.0) {
        throw std::invalid_argument("mode '" + mode.name + "': mcu_duty_active " +
                                    std::to_string(mode.mcu_duty_active) + " outside [0, 1]");
    }

    double total_w = mcu_power_w(mcu, mode.mcu_duty_active);
    for (const auto& [component, state] : mode.component_states) {
        if (component == model.mcu) {
            throw std::invalid_argument("mode '" + mode.name + "' assigns a fixed state to the " +
                                        "MCU '" + component + "'; use mcu_duty_active instead");
        }
        auto it = model.components.find(component);
        if (it == model.components.end()) {
            throw std::invalid_argument("mode '" + mode.name + "' references unknown component '" +
                                        component + "'");
        }
        total_w += component_power_w(it->second, state);
    }
    if (mode.ble_advertising) {
        total_w += component_power_w(mcu, "ble_adv");
    }
    return total_w;
}

double calibrate_duty(const ModeSpec& mode, const PowerModel& model, double target_w,
                      double rel_tol) {
    ModeSpec probe = mode;
    probe.mcu_duty_active = 0.0;
    double min_w = mode_average_power_w(probe, model);
    probe.mcu_duty_active = 1.0;
    double max_w = mode_average_power_w(probe, model);

    double tol = rel_tol * target_w;
    if (target_w < min_w - tol || target_w > max_w + tol) {
        std::ostringstream msg;
        msg << "mode '" << mode.name << "': target " << target_w
            << " W outside the achievable range [" << min_w << ", " << max_w << "] W";
        throw std::invalid_argument(msg.str());
    }
    if (std::abs(min_w - target_w) <= tol) return 0.0;
    if (std::abs(max_w - target_w) <= tol) return 1.0;

    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        probe.mcu_duty_active = mid;
        double power = mode_average_power_w(probe, model);
        if (std::abs(power - target_w) <= tol) return mid;
        if (power < target_w) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-15) break;
    }
    return 0.5 * (lo + hi);
}

double task_energy_j(double duration_s, const PowerModel& model) {
    if (duration_s < 0.0) {
        throw std::invalid_argument("task duration must be non-negative, got " +
                                    std::to_string(duration_s));
    }
    return duration_s * component_power_w(model.mcu_profile(), "active");
}

}  // namespace wearsim
