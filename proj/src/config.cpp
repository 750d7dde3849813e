#include "wearsim/config.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wearsim/errors.hpp"

namespace wearsim {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

json& find_named(json& array, const std::string& name, const std::string& what) {
    for (auto& entry : array) {
        if (entry.is_object() && entry.value("name", "") == name) return entry;
    }
    throw ConfigError("no " + what + " named '" + name + "'");
}

double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) {
        throw ConfigError("config key '" + path + "' must be a number");
    }
    return j.get<double>();
}

json parse_override_value(const std::string& value) {
    json parsed = json::parse(value, nullptr, false);
    if (parsed.is_discarded()) return json(value);   // bare string
    return parsed;
}

}  // namespace

json default_config_json() {
    json cfg;
    cfg["rails"] = json::array({
        {{"name", "vdd"}, {"voltage_v", 3.3}, {"efficiency", 0.90}},
        {{"name", "vdd_5v"}, {"voltage_v", 5.0}, {"efficiency", 0.80}},
    });
    cfg["mcu"] = "stm32";
    cfg["components"] = json::array({
        {{"name", "stm32"},
         {"rail", "vdd"},
         {"currents_ua",
          {{"active", 7590.0}, {"idle", 4150.0}, {"stop", 2.45}, {"ble_adv", 30.0}}}},
        {{"name", "display"}, {"rail", "vdd"}, {"currents_ua", {{"update", 15.2}, {"static", 12.1}}}},
        {{"name", "max30101"},
         {"rail", "vdd_5v"},
         {"currents_ua", {{"active", 1100.0}, {"shutdown", 0.7}}}},
        {{"name", "lsm303"}, {"rail", "vdd"}, {"currents_ua", {{"active", 204.0}, {"shutdown", 2.0}}}},
        {{"name", "lps22hb"}, {"rail", "vdd"}, {"currents_ua", {{"active", 12.0}, {"shutdown", 1.0}}}},
        {{"name", "lsm6ds"}, {"rail", "vdd"}, {"currents_ua", {{"active", 9.0}, {"shutdown", 3.0}}}},
        {{"name", "mp34dt"}, {"rail", "vdd"}, {"currents_ua", {{"active", 30.0}, {"shutdown", 1.0}}}},
        {{"name", "bc95g"}, {"rail", "vdd"}, {"currents_ua", {{"psm", 4.0}}}},
    });

    const json idle_states = {{"display", "static"}, {"max30101", "shutdown"},
                              {"lsm303", "shutdown"}, {"lps22hb", "shutdown"},
                              {"lsm6ds", "shutdown"}, {"mp34dt", "shutdown"},
                              {"bc95g", "psm"}};
    json motion_states = idle_states;
    motion_states["lsm6ds"] = "active";
    motion_states["lps22hb"] = "active";
    json full_states = motion_states;
    full_states["max30101"] = "active";
    full_states["lsm303"] = "active";
    full_states["mp34dt"] = "active";

    // The motion/full MCU duty factors are calibration results against the
    // platform's 1.75 mW and 10 mW mode totals (see calibrate_duty).
    cfg["modes"] = json::array({
        {{"name", "sleep"}, {"states", idle_states}, {"mcu_duty", 0.0}, {"ble", false},
         {"target_power_w", 97e-6}},
        {{"name", "advertising"}, {"states", idle_states}, {"mcu_duty", 0.0}, {"ble", true},
         {"target_power_w", 226e-6}},
        {{"name", "motion"}, {"states", motion_states}, {"mcu_duty", 0.053183115}, {"ble", true},
         {"target_power_w", 1.75e-3}},
        {{"name", "full"}, {"states", full_states}, {"mcu_duty", 0.072318829}, {"ble", true},
         {"target_power_w", 10e-3}},
    });

    cfg["battery"] = {{"capacity_mah", 370.0}, {"voltage_v", 3.7}, {"usable_dod", 0.9},
                      {"self_discharge_w", 0.0}};

    // 2000 lux point: log-log interpolation between the two measured anchors.
    cfg["harvester"] = {
        {"points", json::array({
                       {{"lux", 0.0}, {"watts", 0.0}},
                       {{"lux", 500.0}, {"watts", 73e-6}},
                       {{"lux", 2000.0}, {"watts", 858.2e-6}},
                       {{"lux", 10000.0}, {"watts", 15e-3}},
                   })},
        {"conversion_efficiency", 0.92}};

    cfg["nbiot"] = {
        {"buckets", json::array({
                        {{"rssi_min_dbm", nullptr}, {"rssi_max_dbm", -110.0}, {"energy_j", 4.071}},
                        {{"rssi_min_dbm", -110.0}, {"rssi_max_dbm", -95.0}, {"energy_j", 1.422}},
                        {{"rssi_min_dbm", -95.0}, {"rssi_max_dbm", nullptr}, {"energy_j", 1.077}},
                    })},
        {"payload_bytes", 983.0},
        {"psm_uw", 13.2}};

    cfg["ble"] = {{"interval_s", 1.0}, {"tx_power_dbm", 0.0}, {"payload_bytes", 31},
                  {"average_power_uw", 99.0}};

    cfg["mode_schedule"] = json::array({{{"start_s", 0.0}, {"duration_s", kSecondsPerDay},
                                         {"mode", "sleep"}}});
    cfg["light_schedule"] = json::array();
    cfg["uplinks_per_day"] = 0;
    cfg["uplink_times_s"] = json::array();
    cfg["rssi_dbm"] = -90.0;
    cfg["tasks_per_day"] = 0;
    cfg["task_duration_s"] = 0.5;
    cfg["task_times_s"] = json::array();
    cfg["max_horizon_s"] = 730.0 * kSecondsPerDay;
    cfg["dt_s"] = 1.0;
    cfg["sample_interval_s"] = 3600.0;
    return cfg;
}

std::vector<std::string> builtin_scenario_names() {
    return {"sleep", "advertising", "motion", "full", "duty50", "indoor-harvest",
            "outdoor-harvest", "nbiot-budget"};
}

bool is_builtin_scenario(const std::string& name) {
    auto names = builtin_scenario_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

json builtin_scenario_json(const std::string& name) {
    json cfg = default_config_json();
    auto single_mode = [&](const std::string& mode) {
        cfg["mode_schedule"] = json::array({{{"start_s", 0.0}, {"duration_s", kSecondsPerDay},
                                             {"mode", mode}}});
    };
    if (name == "sleep") {
        single_mode("sleep");
    } else if (name == "advertising") {
        single_mode("advertising");
    } else if (name == "motion") {
        single_mode("motion");
        cfg["uplinks_per_day"] = 1;
    } else if (name == "full") {
        single_mode("full");
        cfg["uplinks_per_day"] = 1;
    } else if (name == "duty50") {
        cfg["mode_schedule"] = {{"mode_a", "full"}, {"mode_b", "motion"}, {"fraction_a", 0.5},
                                {"period_s", 7200.0}};
        cfg["uplinks_per_day"] = 1;
    } else if (name == "indoor-harvest") {
        single_mode("advertising");
        cfg["light_schedule"] = json::array({{{"start_s", 28800.0}, {"duration_s", 28800.0},
                                              {"lux", 500.0}}});
    } else if (name == "outdoor-harvest") {
        // Daylight aligned with the full-mode half of the 50/50 duty cycle.
        cfg["mode_schedule"] = json::array({
            {{"start_s", 0.0}, {"duration_s", 28800.0}, {"mode", "motion"}},
            {{"start_s", 28800.0}, {"duration_s", 43200.0}, {"mode", "full"}},
            {{"start_s", 72000.0}, {"duration_s", 14400.0}, {"mode", "motion"}},
        });
        cfg["light_schedule"] = json::array({
            {{"start_s", 28800.0}, {"duration_s", 7200.0}, {"lux", 500.0}},
            {{"start_s", 36000.0}, {"duration_s", 21600.0}, {"lux", 10000.0}},
            {{"start_s", 57600.0}, {"duration_s", 7200.0}, {"lux", 500.0}},
        });
    } else if (name == "nbiot-budget") {
        single_mode("sleep");
        cfg["uplinks_per_day"] = 96;
    } else {
        throw ConfigError("unknown built-in scenario '" + name + "'");
    }
    return cfg;
}

json load_config_json(const std::string& path_or_name) {
    json cfg = default_config_json();
    std::error_code ec;
    if (std::filesystem::is_regular_file(path_or_name, ec)) {
        std::ifstream in(path_or_name);
        std::stringstream buffer;
        buffer << in.rdbuf();
        std::string text = buffer.str();
        if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
            return cfg;   // blank file: defaults only
        }
        json user = json::parse(text, nullptr, false, true);
        if (user.is_discarded()) {
            try {
                (void)json::parse(text);   // re-parse for the error context
            } catch (const json::parse_error& e) {
                throw ConfigError(std::string("scenario file ") + path_or_name + ": " + e.what());
            }
        }
        cfg.merge_patch(user);
        return cfg;
    }
    if (is_builtin_scenario(path_or_name)) {
        return builtin_scenario_json(path_or_name);
    }
    throw ConfigError("scenario file not found: " + path_or_name);
}

void apply_override(json& cfg, const std::string& key, const std::string& value) {
    std::vector<std::string> parts;
    std::stringstream stream(key);
    std::string part;
    while (std::getline(stream, part, '.')) parts.push_back(part);

    auto fail = [&]() -> ConfigError {
        return ConfigError("unknown override key '" + key + "'");
    };
    if (parts.empty()) throw fail();
    json parsed = parse_override_value(value);
    auto expect_number = [&]() {
        if (!parsed.is_number()) {
            throw ConfigError("override '" + key + "' needs a numeric value, got '" + value + "'");
        }
    };

    const std::string& head = parts[0];
    if (parts.size() == 1) {
        static const std::vector<std::string> scalar_numbers = {
            "uplinks_per_day", "rssi_dbm", "tasks_per_day", "task_duration_s",
            "max_horizon_s", "dt_s", "sample_interval_s"};
        if (std::find(scalar_numbers.begin(), scalar_numbers.end(), head) !=
            scalar_numbers.end()) {
            expect_number();
            cfg[head] = parsed;
            return;
        }
        if (head == "mcu") {
            cfg["mcu"] = value;
            return;
        }
        throw fail();
    }

    if (head == "battery" && parts.size() == 2) {
        static const std::vector<std::string> keys = {"capacity_mah", "voltage_v", "usable_dod",
                                                      "self_discharge_w"};
        if (std::find(keys.begin(), keys.end(), parts[1]) == keys.end()) throw fail();
        expect_number();
        cfg["battery"][parts[1]] = parsed;
        return;
    }
    if (head == "nbiot" && parts.size() == 2) {
        if (parts[1] != "payload_bytes" && parts[1] != "psm_uw") throw fail();
        expect_number();
        cfg["nbiot"][parts[1]] = parsed;
        return;
    }
    if (head == "harvester" && parts.size() == 2 && parts[1] == "conversion_efficiency") {
        expect_number();
        cfg["harvester"]["conversion_efficiency"] = parsed;
        return;
    }
    if (head == "ble" && parts.size() == 2) {
        static const std::vector<std::string> keys = {"interval_s", "tx_power_dbm",
                                                      "payload_bytes", "average_power_uw"};
        if (std::find(keys.begin(), keys.end(), parts[1]) == keys.end()) throw fail();
        expect_number();
        cfg["ble"][parts[1]] = parsed;
        return;
    }
    if (head == "mode_schedule" && parts.size() == 2) {
        if (!cfg["mode_schedule"].is_object()) {
            throw ConfigError("override '" + key +
                              "' needs the duty-cycle schedule shorthand in the config");
        }
        if (parts[1] == "fraction_a" || parts[1] == "period_s") {
            expect_number();
            cfg["mode_schedule"][parts[1]] = parsed;
            return;
        }
        if (parts[1] == "mode_a" || parts[1] == "mode_b") {
            cfg["mode_schedule"][parts[1]] = value;
            return;
        }
        throw fail();
    }
    if (head == "modes" && parts.size() >= 3) {
        json& mode = find_named(cfg["modes"], parts[1], "mode");
        if (parts.size() == 3) {
            if (parts[2] == "mcu_duty" || parts[2] == "target_power_w") {
                expect_number();
                mode[parts[2]] = parsed;
                return;
            }
            if (parts[2] == "ble") {
                if (!parsed.is_boolean()) {
                    throw ConfigError("override '" + key + "' needs true or false");
                }
                mode["ble"] = parsed;
                return;
            }
        }
        if (parts.size() == 4 && parts[2] == "states") {
            mode["states"][parts[3]] = value;
            return;
        }
        throw fail();
    }
    if (head == "components" && parts.size() >= 3) {
        json& component = find_named(cfg["components"], parts[1], "component");
        if (parts.size() == 3 && parts[2] == "rail") {
            component["rail"] = value;
            return;
        }
        if (parts.size() == 4 && parts[2] == "currents_ua") {
            expect_number();
            component["currents_ua"][parts[3]] = parsed;
            return;
        }
        throw fail();
    }
    if (head == "rails" && parts.size() == 3) {
        json& rail = find_named(cfg["rails"], parts[1], "rail");
        if (parts[2] != "voltage_v" && parts[2] != "efficiency") throw fail();
        expect_number();
        rail[parts[2]] = parsed;
        return;
    }
    throw fail();
}

std::pair<std::string, std::string> split_override(const std::string& assignment) {
    auto pos = assignment.find('=');
    if (pos == std::string::npos || pos == 0) {
        throw ConfigError("override must look like key=value, got '" + assignment + "'");
    }
    return {assignment.substr(0, pos), assignment.substr(pos + 1)};
}

namespace {

std::vector<ModeSegment> expand_duty_cycle(const DutyCycleSchedule& dc) {
    if (dc.fraction_a < 0.0 || dc.fraction_a > 1.0) {
        throw ConfigError("duty-cycle fraction_a must be in [0, 1]");
    }
    if (dc.period_s <= 0.0) {
        throw ConfigError("duty-cycle period must be positive");
    }
    double periods = kSecondsPerDay / dc.period_s;
    if (std::abs(periods - std::round(periods)) > 1e-9) {
        throw ConfigError("duty-cycle period must divide the 86400 s day");
    }
    std::vector<ModeSegment> segments;
    double a_span = dc.fraction_a * dc.period_s;
    for (int k = 0; k < static_cast<int>(std::round(periods)); ++k) {
        double start = k * dc.period_s;
        if (a_span > 0.0) {
            segments.push_back({start, a_span, dc.mode_a});
        }
        if (a_span < dc.period_s) {
            segments.push_back({start + a_span, dc.period_s - a_span, dc.mode_b});
        }
    }
    return segments;
}

}  // namespace

SimInputs SystemConfig::sim_inputs() const {
    return SimInputs{power, modes, harvester, battery, nbiot};
}

SystemConfig build_system(const json& cfg) {
    SystemConfig sys;
    try {
        std::map<std::string, Rail> rails;
        for (const auto& r : cfg.at("rails")) {
            Rail rail{r.at("name").get<std::string>(), as_number(r.at("voltage_v"), "rails[].voltage_v"),
                      as_number(r.at("efficiency"), "rails[].efficiency")};
            if (rail.voltage_v <= 0.0) {
                throw ConfigError("rail '" + rail.name + "': voltage must be positive");
            }
            if (rail.efficiency <= 0.0 || rail.efficiency > 1.0) {
                throw ConfigError("rail '" + rail.name + "': efficiency must be in (0, 1]");
            }
            if (!rails.emplace(rail.name, rail).second) {
                throw ConfigError("duplicate rail '" + rail.name + "'");
            }
            sys.rails.push_back(rail);
        }

        for (const auto& c : cfg.at("components")) {
            ComponentProfile profile;
            profile.name = c.at("name").get<std::string>();
            std::string rail_name = c.at("rail").get<std::string>();
            auto rail_it = rails.find(rail_name);
            if (rail_it == rails.end()) {
                throw ConfigError("component '" + profile.name + "' references unknown rail '" +
                                  rail_name + "'");
            }
            profile.rail = rail_it->second;
            for (const auto& [state, current] : c.at("currents_ua").items()) {
                double ua = as_number(current, "components." + profile.name + ".currents_ua." + state);
                if (ua < 0.0) {
                    throw ConfigError("component '" + profile.name + "' state '" + state +
                                      "': current must be non-negative");
                }
                profile.state_currents_ua[state] = ua;
            }
            if (profile.state_currents_ua.empty()) {
                throw ConfigError("component '" + profile.name + "' lists no power states");
            }
            if (!sys.power.components.emplace(profile.name, profile).second) {
                throw ConfigError("duplicate component '" + profile.name + "'");
            }
        }
        sys.power.mcu = cfg.at("mcu").get<std::string>();
        const ComponentProfile& mcu = sys.power.component(sys.power.mcu);
        if (!mcu.has_state("active") || !mcu.has_state("stop")) {
            throw ConfigError("MCU component '" + sys.power.mcu +
                              "' must provide 'active' and 'stop' states");
        }

        for (const auto& m : cfg.at("modes")) {
            ModeSpec mode;
            mode.name = m.at("name").get<std::string>();
            for (const auto& [component, state] : m.at("states").items()) {
                if (component == sys.power.mcu) {
                    throw ConfigError("mode '" + mode.name +
                                      "' must not assign a state to the MCU; set mcu_duty");
                }
                auto it = sys.power.components.find(component);
                if (it == sys.power.components.end()) {
                    throw ConfigError("mode '" + mode.name + "' references unknown component '" +
                                      component + "'");
                }
                std::string state_name = state.get<std::string>();
                if (!it->second.has_state(state_name)) {
                    throw ConfigError("mode '" + mode.name + "': component '" + component +
                                      "' has no state '" + state_name + "'");
                }
                mode.component_states[component] = state_name;
            }
            mode.mcu_duty_active = as_number(m.at("mcu_duty"), "modes." + mode.name + ".mcu_duty");
            if (mode.mcu_duty_active < 0.0 || mode.mcu_duty_active > 1.0) {
                throw ConfigError("mode '" + mode.name + "': mcu_duty must be in [0, 1]");
            }
            mode.ble_advertising = m.at("ble").get<bool>();
            if (mode.ble_advertising && !mcu.has_state("ble_adv")) {
                throw ConfigError("mode '" + mode.name + "' enables BLE but the MCU has no "
                                  "'ble_adv' current row");
            }
            if (m.contains("target_power_w") && !m.at("target_power_w").is_null()) {
                mode.target_power_w =
                    as_number(m.at("target_power_w"), "modes." + mode.name + ".target_power_w");
            }
            if (!sys.modes.emplace(mode.name, mode).second) {
                throw ConfigError("duplicate mode '" + mode.name + "'");
            }
        }

        const auto& bat = cfg.at("battery");
        sys.battery.capacity_mah = as_number(bat.at("capacity_mah"), "battery.capacity_mah");
        sys.battery.nominal_voltage_v = as_number(bat.at("voltage_v"), "battery.voltage_v");
        sys.battery.usable_dod = as_number(bat.at("usable_dod"), "battery.usable_dod");
        sys.battery.self_discharge_w =
            as_number(bat.at("self_discharge_w"), "battery.self_discharge_w");
        if (sys.battery.capacity_mah <= 0.0) {
            throw ConfigError("battery.capacity_mah must be positive");
        }
        if (sys.battery.usable_dod <= 0.0 || sys.battery.usable_dod > 1.0) {
            throw ConfigError("battery.usable_dod must be in (0, 1]");
        }
        if (sys.battery.self_discharge_w < 0.0) {
            throw ConfigError("battery.self_discharge_w must be non-negative");
        }

        const auto& harvester = cfg.at("harvester");
        for (const auto& p : harvester.at("points")) {
            sys.harvester.points.push_back({as_number(p.at("lux"), "harvester.points[].lux"),
                                            as_number(p.at("watts"), "harvester.points[].watts")});
        }
        sys.harvester.conversion_efficiency =
            as_number(harvester.at("conversion_efficiency"), "harvester.conversion_efficiency");
        validate_curve(sys.harvester);

        const auto& nbiot = cfg.at("nbiot");
        for (const auto& b : nbiot.at("buckets")) {
            RssiBucket bucket;
            bucket.rssi_min_dbm = b.at("rssi_min_dbm").is_null()
                                      ? -kInf
                                      : as_number(b.at("rssi_min_dbm"), "nbiot.buckets[].rssi_min_dbm");
            bucket.rssi_max_dbm = b.at("rssi_max_dbm").is_null()
                                      ? kInf
                                      : as_number(b.at("rssi_max_dbm"), "nbiot.buckets[].rssi_max_dbm");
            bucket.energy_j = as_number(b.at("energy_j"), "nbiot.buckets[].energy_j");
            sys.nbiot.buckets.push_back(bucket);
        }
        std::sort(sys.nbiot.buckets.begin(), sys.nbiot.buckets.end(),
                  [](const RssiBucket& a, const RssiBucket& b) {
                      return a.rssi_min_dbm < b.rssi_min_dbm;
                  });
        sys.nbiot.payload_bytes = as_number(nbiot.at("payload_bytes"), "nbiot.payload_bytes");
        sys.nbiot.psm_power_w = as_number(nbiot.at("psm_uw"), "nbiot.psm_uw") * 1e-6;
        validate_uplink_model(sys.nbiot);

        const auto& ble = cfg.at("ble");
        sys.ble.interval_s = as_number(ble.at("interval_s"), "ble.interval_s");
        sys.ble.tx_power_dbm = as_number(ble.at("tx_power_dbm"), "ble.tx_power_dbm");
        sys.ble.payload_bytes = ble.at("payload_bytes").get<int>();
        sys.ble.average_power_w =
            as_number(ble.at("average_power_uw"), "ble.average_power_uw") * 1e-6;
        validate_ble_spec(sys.ble);

        Scenario& sc = sys.scenario;
        const auto& schedule = cfg.at("mode_schedule");
        if (schedule.is_object()) {
            DutyCycleSchedule dc;
            dc.mode_a = schedule.at("mode_a").get<std::string>();
            dc.mode_b = schedule.at("mode_b").get<std::string>();
            dc.fraction_a = as_number(schedule.at("fraction_a"), "mode_schedule.fraction_a");
            dc.period_s = as_number(schedule.at("period_s"), "mode_schedule.period_s");
            sys.duty_cycle = dc;
            sc.mode_schedule = expand_duty_cycle(dc);
        } else {
            for (const auto& seg : schedule) {
                sc.mode_schedule.push_back({as_number(seg.at("start_s"), "mode_schedule[].start_s"),
                                            as_number(seg.at("duration_s"), "mode_schedule[].duration_s"),
                                            seg.at("mode").get<std::string>()});
            }
        }
        for (const auto& seg : cfg.at("light_schedule")) {
            sc.light.segments.push_back({as_number(seg.at("start_s"), "light_schedule[].start_s"),
                                         as_number(seg.at("duration_s"), "light_schedule[].duration_s"),
                                         as_number(seg.at("lux"), "light_schedule[].lux")});
        }
        sc.uplinks_per_day = cfg.at("uplinks_per_day").get<int>();
        for (const auto& t : cfg.at("uplink_times_s")) {
            sc.uplink_times_s.push_back(as_number(t, "uplink_times_s[]"));
        }
        sc.rssi_dbm = as_number(cfg.at("rssi_dbm"), "rssi_dbm");
        sc.tasks_per_day = cfg.at("tasks_per_day").get<int>();
        sc.task_duration_s = as_number(cfg.at("task_duration_s"), "task_duration_s");
        for (const auto& t : cfg.at("task_times_s")) {
            sc.task_times_s.push_back(as_number(t, "task_times_s[]"));
        }
        sc.max_horizon_s = as_number(cfg.at("max_horizon_s"), "max_horizon_s");
        sc.dt_s = as_number(cfg.at("dt_s"), "dt_s");
        sc.sample_interval_s = as_number(cfg.at("sample_interval_s"), "sample_interval_s");
        if (!sc.uplink_times_s.empty() &&
            static_cast<int>(sc.uplink_times_s.size()) != sc.uplinks_per_day) {
            sc.uplinks_per_day = static_cast<int>(sc.uplink_times_s.size());
        }
        if (!sc.task_times_s.empty() &&
            static_cast<int>(sc.task_times_s.size()) != sc.tasks_per_day) {
            sc.tasks_per_day = static_cast<int>(sc.task_times_s.size());
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config error: ") + e.what());
    }

    validate_scenario(sys.scenario, sys.sim_inputs());
    return sys;
}

json to_json(const SystemConfig& sys) {
    json cfg;
    cfg["rails"] = json::array();
    for (const auto& rail : sys.rails) {
        cfg["rails"].push_back({{"name", rail.name}, {"voltage_v", rail.voltage_v},
                                {"efficiency", rail.efficiency}});
    }
    cfg["mcu"] = sys.power.mcu;
    cfg["components"] = json::array();
    for (const auto& [name, profile] : sys.power.components) {
        json currents = json::object();
        for (const auto& [state, ua] : profile.state_currents_ua) currents[state] = ua;
        cfg["components"].push_back({{"name", name}, {"rail", profile.rail.name},
                                     {"currents_ua", currents}});
    }
    cfg["modes"] = json::array();
    for (const auto& [name, mode] : sys.modes) {
        json states = json::object();
        for (const auto& [component, state] : mode.component_states) states[component] = state;
        json entry = {{"name", name}, {"states", states}, {"mcu_duty", mode.mcu_duty_active},
                      {"ble", mode.ble_advertising}};
        if (mode.target_power_w) {
            entry["target_power_w"] = *mode.target_power_w;
        } else {
            entry["target_power_w"] = nullptr;
        }
        cfg["modes"].push_back(entry);
    }
    cfg["battery"] = {{"capacity_mah", sys.battery.capacity_mah},
                      {"voltage_v", sys.battery.nominal_voltage_v},
                      {"usable_dod", sys.battery.usable_dod},
                      {"self_discharge_w", sys.battery.self_discharge_w}};
    cfg["harvester"] = {{"points", json::array()},
                        {"conversion_efficiency", sys.harvester.conversion_efficiency}};
    for (const auto& p : sys.harvester.points) {
        cfg["harvester"]["points"].push_back({{"lux", p.lux}, {"watts", p.watts}});
    }
    cfg["nbiot"] = {{"buckets", json::array()}, {"payload_bytes", sys.nbiot.payload_bytes},
                    {"psm_uw", sys.nbiot.psm_power_w * 1e6}};
    for (const auto& b : sys.nbiot.buckets) {
        json entry;
        entry["rssi_min_dbm"] = std::isinf(b.rssi_min_dbm) ? json(nullptr) : json(b.rssi_min_dbm);
        entry["rssi_max_dbm"] = std::isinf(b.rssi_max_dbm) ? json(nullptr) : json(b.rssi_max_dbm);
        entry["energy_j"] = b.energy_j;
        cfg["nbiot"]["buckets"].push_back(entry);
    }
    cfg["ble"] = {{"interval_s", sys.ble.interval_s}, {"tx_power_dbm", sys.ble.tx_power_dbm},
                  {"payload_bytes", sys.ble.payload_bytes},
                  {"average_power_uw", sys.ble.average_power_w * 1e6}};
    if (sys.duty_cycle) {
        cfg["mode_schedule"] = {{"mode_a", sys.duty_cycle->mode_a},
                                {"mode_b", sys.duty_cycle->mode_b},
                                {"fraction_a", sys.duty_cycle->fraction_a},
                                {"period_s", sys.duty_cycle->period_s}};
    } else {
        cfg["mode_schedule"] = json::array();
        for (const auto& seg : sys.scenario.mode_schedule) {
            cfg["mode_schedule"].push_back({{"start_s", seg.start_s},
                                            {"duration_s", seg.duration_s}, {"mode", seg.mode}});
        }
    }
    cfg["light_schedule"] = json::array();
    for (const auto& seg : sys.scenario.light.segments) {
        cfg["light_schedule"].push_back({{"start_s", seg.start_s}, {"duration_s", seg.duration_s},
                                         {"lux", seg.lux}});
    }
    cfg["uplinks_per_day"] = sys.scenario.uplinks_per_day;
    cfg["uplink_times_s"] = sys.scenario.uplink_times_s;
    cfg["rssi_dbm"] = sys.scenario.rssi_dbm;
    cfg["tasks_per_day"] = sys.scenario.tasks_per_day;
    cfg["task_duration_s"] = sys.scenario.task_duration_s;
    cfg["task_times_s"] = sys.scenario.task_times_s;
    cfg["max_horizon_s"] = sys.scenario.max_horizon_s;
    cfg["dt_s"] = sys.scenario.dt_s;
    cfg["sample_interval_s"] = sys.scenario.sample_interval_s;
    return cfg;
}

}  // namespace wearsim
