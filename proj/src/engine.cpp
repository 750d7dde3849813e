#include "wearsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "wearsim/errors.hpp"

namespace wearsim {

namespace {

bool aligned(double value, double dt) {
    double q = value / dt;
    return std::abs(q - std::round(q)) <= 1e-9 * std::max(1.0, std::abs(q));
}

std::vector<double> spread_times(int count, double dt) {
    std::vector<double> times;
    times.reserve(count);
    for (int k = 0; k < count; ++k) {
        double t = static_cast<double>(k) * kSecondsPerDay / count;
        times.push_back(std::floor(t / dt) * dt);
    }
    return times;
}

void check_event_times(const std::vector<double>& times, double dt, const char* what) {
    for (double t : times) {
        if (t < 0.0 || t >= kSecondsPerDay) {
            std::ostringstream msg;
            msg << what << " time " << t << " s outside [0, 86400)";
            throw ConfigError(msg.str());
        }
        if (!aligned(t, dt)) {
            std::ostringstream msg;
            msg << what << " time " << t << " s is not a multiple of dt = " << dt << " s";
            throw ConfigError(msg.str());
        }
    }
}

enum class EventKind { Uplink, Task };

struct Event {
    double t_s;
    EventKind kind;
    double energy_j;
};

struct DaySegment {
    double t0_s;
    double t1_s;
    std::int64_t steps;
    double load_w;      // battery-side, incl. self-discharge
    double harvest_w;
    const std::string* mode;
    std::vector<Event> events;   // fire at t0
};

// One day's merged timeline: every mode boundary, light boundary and event
// time starts a new segment, so each segment has constant net power.
std::vector<DaySegment> build_day_plan(const Scenario& scenario, const SimInputs& inputs,
                                       const std::map<std::string, double>& mode_power) {
    std::vector<double> cuts{0.0, kSecondsPerDay};
    for (const auto& seg : scenario.mode_schedule) {
        cuts.push_back(seg.start_s);
        cuts.push_back(seg.start_s + seg.duration_s);
    }
    for (const auto& seg : scenario.light.segments) {
        cuts.push_back(seg.start_s);
        cuts.push_back(seg.start_s + seg.duration_s);
    }

    std::vector<Event> events;
    double uplink_j = uplink_energy_j(inputs.uplink, scenario.rssi_dbm);
    for (double t : scenario_uplink_times(scenario)) {
        events.push_back({t, EventKind::Uplink, uplink_j});
    }
    double task_j = task_energy_j(scenario.task_duration_s, inputs.power);
    for (double t : scenario_task_times(scenario)) {
        events.push_back({t, EventKind::Task, task_j});
    }
    for (const auto& ev : events) cuts.push_back(ev.t_s);

    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-9; }),
               cuts.end());

    std::vector<DaySegment> plan;
    plan.reserve(cuts.size());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        DaySegment seg;
        seg.t0_s = cuts[i];
        seg.t1_s = cuts[i + 1];
        seg.steps = std::llround((seg.t1_s - seg.t0_s) / scenario.dt_s);

        const std::string* mode_name = nullptr;
        for (const auto& m : scenario.mode_schedule) {
            if (seg.t0_s >= m.start_s && seg.t0_s < m.start_s + m.duration_s) {
                mode_name = &m.mode;
                break;
            }
        }
        if (mode_name == nullptr) {
            throw ConfigError("internal: no mode covers second-of-day " +
                              std::to_string(seg.t0_s));
        }
        seg.mode = mode_name;
        seg.load_w = mode_power.at(*mode_name) + inputs.battery.self_discharge_w;
        seg.harvest_w = schedule_power_at(scenario.light, inputs.curve, seg.t0_s);
        for (const auto& ev : events) {
            if (std::abs(ev.t_s - seg.t0_s) < 1e-9) seg.events.push_back(ev);
        }
        plan.push_back(std::move(seg));
    }
    return plan;
}

}  // namespace

std::vector<double> scenario_uplink_times(const Scenario& scenario) {
    if (!scenario.uplink_times_s.empty()) return scenario.uplink_times_s;
    return spread_times(scenario.uplinks_per_day, scenario.dt_s);
}

std::vector<double> scenario_task_times(const Scenario& scenario) {
    if (!scenario.task_times_s.empty()) return scenario.task_times_s;
    return spread_times(scenario.tasks_per_day, scenario.dt_s);
}

void validate_scenario(const Scenario& scenario, const SimInputs& inputs) {
    if (scenario.dt_s <= 0.0) {
        throw ConfigError("dt must be positive");
    }
    if (scenario.max_horizon_s < scenario.dt_s) {
        throw ConfigError("max_horizon must be at least one dt");
    }
    if (!aligned(kSecondsPerDay, scenario.dt_s)) {
        throw ConfigError("dt must divide the 86400 s day");
    }
    if (scenario.sample_interval_s < scenario.dt_s) {
        throw ConfigError("sample_interval must be at least dt");
    }
    if (scenario.uplinks_per_day < 0 || scenario.tasks_per_day < 0) {
        throw ConfigError("event counts must be non-negative");
    }
    if (scenario.task_duration_s < 0.0) {
        throw ConfigError("task duration must be non-negative");
    }

    if (scenario.mode_schedule.empty()) {
        throw ConfigError("mode schedule is empty; the day must be covered");
    }
    auto segments = scenario.mode_schedule;
    std::sort(segments.begin(), segments.end(),
              [](const auto& a, const auto& b) { return a.start_s < b.start_s; });
    double cursor = 0.0;
    for (const auto& seg : segments) {
        if (seg.duration_s <= 0.0) {
            throw ConfigError("mode segment durations must be positive");
        }
        if (!aligned(seg.start_s, scenario.dt_s) || !aligned(seg.duration_s, scenario.dt_s)) {
            std::ostringstream msg;
            msg << "mode segment at " << seg.start_s << " s is not aligned to dt = "
                << scenario.dt_s << " s";
            throw ConfigError(msg.str());
        }
        if (seg.start_s > cursor + 1e-9) {
            std::ostringstream msg;
            msg << "mode schedule gap: nothing covers [" << cursor << ", " << seg.start_s << ") s";
            throw ConfigError(msg.str());
        }
        if (seg.start_s < cursor - 1e-9) {
            std::ostringstream msg;
            msg << "mode schedule overlap at " << seg.start_s << " s";
            throw ConfigError(msg.str());
        }
        if (inputs.modes.find(seg.mode) == inputs.modes.end()) {
            throw ConfigError("mode schedule references unknown mode '" + seg.mode + "'");
        }
        cursor = seg.start_s + seg.duration_s;
    }
    if (std::abs(cursor - kSecondsPerDay) > 1e-9) {
        std::ostringstream msg;
        msg << "mode schedule covers " << cursor << " s of the 86400 s day";
        throw ConfigError(msg.str());
    }

    validate_light_schedule(scenario.light);
    for (const auto& seg : scenario.light.segments) {
        if (!aligned(seg.start_s, scenario.dt_s) || !aligned(seg.duration_s, scenario.dt_s)) {
            throw ConfigError("light segment boundaries must be multiples of dt");
        }
    }
    validate_curve(inputs.curve);
    validate_uplink_model(inputs.uplink);
    check_event_times(scenario_uplink_times(scenario), scenario.dt_s, "uplink");
    check_event_times(scenario_task_times(scenario), scenario.dt_s, "task");
}

SimReport simulate(const Scenario& scenario, const SimInputs& inputs) {
    validate_scenario(scenario, inputs);

    // Per-mode battery-side power, composed once.
    std::map<std::string, double> mode_power;
    std::map<std::string, bool> mode_ble;
    for (const auto& seg : scenario.mode_schedule) {
        const ModeSpec& mode = inputs.modes.at(seg.mode);
        mode_power.emplace(seg.mode, mode_average_power_w(mode, inputs.power));
        mode_ble.emplace(seg.mode, mode.ble_advertising);
    }

    const double dt = scenario.dt_s;
    const double full_j = full_energy_j(inputs.battery);
    const double floor_j = depletion_floor_j(inputs.battery);
    const auto plan = build_day_plan(scenario, inputs, mode_power);

    const std::int64_t max_steps =
        static_cast<std::int64_t>(std::floor(scenario.max_horizon_s / dt + 1e-9));
    const std::int64_t sample_every =
        std::max<std::int64_t>(1, std::llround(scenario.sample_interval_s / dt));

    SimReport report;
    report.initial_stored_j = full_j;

    double stored = full_j;
    long double consumed = 0.0L;
    long double harvested_in = 0.0L;
    long double overflow = 0.0L;
    long double uplink_consumed = 0.0L;
    long double task_consumed = 0.0L;
    std::map<std::string, long double> mode_time_s;

    std::int64_t global_step = 0;
    double end_time = 0.0;
    std::optional<double> lifetime;

    if (stored <= floor_j) {
        lifetime = 0.0;
    }

    for (std::int64_t day = 0; !lifetime && global_step < max_steps; ++day) {
        double day_start = static_cast<double>(day) * kSecondsPerDay;
        for (const auto& seg : plan) {
            if (global_step >= max_steps) break;
            double seg_start = day_start + seg.t0_s;

            for (const auto& ev : seg.events) {
                double taken = std::min(stored, ev.energy_j);
                stored -= taken;
                consumed += taken;
                if (ev.kind == EventKind::Uplink) {
                    uplink_consumed += taken;
                } else {
                    task_consumed += taken;
                }
                report.series.push_back({seg_start, stored, seg.load_w, seg.harvest_w,
                                         ev.kind == EventKind::Uplink ? "uplink" : "task"});
                if (stored <= floor_j) {
                    lifetime = seg_start;
                    end_time = seg_start;
                    break;
                }
            }
            if (lifetime) break;

            std::int64_t steps = std::min(seg.steps, max_steps - global_step);
            if (steps <= 0) {
                if (global_step >= max_steps) break;
                continue;
            }
            const double net_dt = (seg.harvest_w - seg.load_w) * dt;
            std::int64_t done = steps;
            for (std::int64_t s = 0; s < steps; ++s) {
                if (global_step % sample_every == 0) {
                    report.series.push_back(
                        {seg_start + static_cast<double>(s) * dt, stored, seg.load_w,
                         seg.harvest_w, ""});
                }
                ++global_step;
                stored += net_dt;
                if (stored > full_j) {
                    overflow += stored - full_j;
                    stored = full_j;
                } else if (stored < 0.0) {
                    overflow -= stored;   // deficit clipped at empty
                    stored = 0.0;
                }
                if (stored <= floor_j) {
                    done = s + 1;
                    lifetime = seg_start + static_cast<double>(done) * dt;
                    break;
                }
            }
            double span = static_cast<double>(done) * dt;
            consumed += static_cast<long double>(seg.load_w) * span;
            harvested_in += static_cast<long double>(seg.harvest_w) * span;
            mode_time_s[*seg.mode] += span;
            end_time = seg_start + span;
            if (lifetime || global_step >= max_steps) break;
        }
    }

    report.lifetime_s = lifetime;
    report.sim_time_s = end_time;
    report.steps = global_step;
    report.final_stored_j = stored;
    report.consumed_j = static_cast<double>(consumed);
    report.harvested_in_j = static_cast<double>(harvested_in);
    report.overflow_j = static_cast<double>(overflow);
    report.harvested_stored_j = static_cast<double>(harvested_in - overflow);
    if (end_time > 0.0) {
        report.average_load_w = report.consumed_j / end_time;
        report.average_harvest_w = report.harvested_in_j / end_time;
    }

    // Accounting identity: delta stored == stored harvest - consumption.
    long double delta = static_cast<long double>(report.initial_stored_j) - stored;
    long double residual = delta - (consumed - (harvested_in - overflow));
    report.conservation_residual =
        std::abs(static_cast<double>(residual)) / std::max(report.consumed_j, 1e-30);

    // Per-component energies from per-mode dwell times; loads are piecewise
    // constant so this is exact.
    const ComponentProfile& mcu = inputs.power.mcu_profile();
    for (const auto& [mode_name, time_s] : mode_time_s) {
        const ModeSpec& mode = inputs.modes.at(mode_name);
        double span = static_cast<double>(time_s);
        double active = mcu.state_currents_ua.at("active");
        double stop = mcu.state_currents_ua.at("stop");
        double blend_ua = mode.mcu_duty_active * active + (1.0 - mode.mcu_duty_active) * stop;
        report.breakdown_j[inputs.power.mcu] +=
            blend_ua * 1e-6 * mcu.rail.voltage_v / mcu.rail.efficiency * span;
        for (const auto& [component, state] : mode.component_states) {
            report.breakdown_j[component] +=
                component_power_w(inputs.power.component(component), state) * span;
        }
        if (mode_ble.at(mode_name)) {
            report.breakdown_j["ble_adv"] += component_power_w(mcu, "ble_adv") * span;
        }
        if (inputs.battery.self_discharge_w > 0.0) {
            report.breakdown_j["self_discharge"] += inputs.battery.self_discharge_w * span;
        }
    }
    if (uplink_consumed > 0.0L) {
        report.breakdown_j["nbiot_uplink"] = static_cast<double>(uplink_consumed);
    }
    if (task_consumed > 0.0L) {
        report.breakdown_j["mcu_task"] = static_cast<double>(task_consumed);
    }

    report.series.push_back({end_time, stored, 0.0, 0.0, lifetime ? "depleted" : "horizon"});
    return report;
}

std::optional<double> closed_form_lifetime_s(double load_w, double harvest_daily_j,
                                             const BatterySpec& battery) {
    double net_w = load_w - harvest_daily_j / kSecondsPerDay;
    if (net_w <= 0.0) {
        return std::nullopt;   // non-depleting balance
    }
    return usable_energy_j(battery) / net_w;
}

}  // namespace wearsim
