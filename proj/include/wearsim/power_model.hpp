#pragma once

#include <map>
#include <optional>
#include <string>

namespace wearsim {

/// A regulated supply voltage domain. Converting battery energy to a rail
/// costs one converter pass: battery-side power = rail-side power / efficiency.
struct Rail {
    std::string name;
    double voltage_v = 3.3;
    double efficiency = 1.0;  // DC/DC converter efficiency, in (0, 1]
};

/// Per-IC current draw in each supported power state (microamperes), bound
/// to the rail that supplies the IC. Rail-side power of a state is simply
/// current * rail voltage.
struct ComponentProfile {
    std::string name;
    Rail rail;
    std::map<std::string, double> state_currents_ua;

    bool has_state(const std::string& state) const {
        return state_currents_ua.count(state) != 0;
    }
};

/// A named operation mode: a power-state assignment for every component
/// except the MCU, plus the fraction of time the MCU spends in its active
/// state (the rest is spent in stop). BLE advertising, when enabled, adds
/// the MCU's "ble_adv" current on top; that radio core runs independently
/// of the MCU duty cycle.
struct ModeSpec {
    std::string name;
    std::map<std::string, std::string> component_states;
    double mcu_duty_active = 0.0;            // in [0, 1]
    bool ble_advertising = false;
    std::optional<double> target_power_w;    // published figure, for calibration checks
};

/// The full component set plus the designation of which component is the
/// duty-cycled controller. The MCU profile must provide "active" and "stop"
/// states; it must not appear in any mode's component_states map.
struct PowerModel {
    std::map<std::string, ComponentProfile> components;
    std::string mcu = "stm32";

    const ComponentProfile& component(const std::string& name) const;
    const ComponentProfile& mcu_profile() const { return component(mcu); }
};

/// Rail-side power of a component in a state, watts.
double rail_power_w(const ComponentProfile& profile, const std::string& state);

/// Battery-side power of a component in a state, watts
/// (rail-side divided by the rail's converter efficiency).
double component_power_w(const ComponentProfile& profile, const std::string& state);

/// Average battery-side power of an operation mode: the sum of every
/// assigned component state plus the duty-weighted MCU blend, plus the
/// BLE advertising term when enabled.
double mode_average_power_w(const ModeSpec& mode, const PowerModel& model);

/// Find the mcu_duty_active at which the mode composes to target_w, by
/// bisection (mode power is monotone non-decreasing in duty). Converges to
/// |power - target| <= rel_tol * target. Throws std::invalid_argument with
/// the achievable [min, max] when the target is outside it.
double calibrate_duty(const ModeSpec& mode, const PowerModel& model, double target_w,
                      double rel_tol = 1e-3);

/// Battery-side energy of one discrete processing event: duration at the
/// MCU's active power. Used to charge classification tasks and similar
/// one-shot work to the budget.
double task_energy_j(double duration_s, const PowerModel& model);

}  // namespace wearsim
