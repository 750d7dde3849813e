#include "wearsim/validation.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wearsim/report_io.hpp"
#include "wearsim/tracing.hpp"

namespace wearsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ClaimRow make_row(std::string id, std::string description, double reference, double actual,
                  double low, double high, std::string unit, std::string note = "") {
    ClaimRow row;
    row.id = std::move(id);
    row.description = std::move(description);
    row.reference = reference;
    row.actual = actual;
    row.low = low;
    row.high = high;
    row.unit = std::move(unit);
    row.pass = actual >= low && actual <= high;
    row.note = std::move(note);
    return row;
}

double simulate_days(const std::string& scenario_name) {
    SystemConfig sys = build_system(builtin_scenario_json(scenario_name));
    SimReport report = simulate(sys.scenario, sys.sim_inputs());
    if (!report.lifetime_s) return kInf;
    return *report.lifetime_s / kSecondsPerDay;
}

}  // namespace

std::vector<ClaimRow> run_validation() {
    SystemConfig sys = build_system(default_config_json());
    const PowerModel& power = sys.power;

    std::vector<ClaimRow> rows;

    double sleep_uw = mode_average_power_w(sys.modes.at("sleep"), power) * 1e6;
    rows.push_back(make_row("sleep-power", "sleep mode average power", 97.0, sleep_uw,
                            97.0 * 0.9, 97.0 * 1.1, "uW"));

    double adv_uw = mode_average_power_w(sys.modes.at("advertising"), power) * 1e6;
    {
        std::ostringstream note;
        note << "composed from component rows; gap to the 226 uW reference: "
             << format_double(226.0 - adv_uw) << " uW";
        rows.push_back(make_row("adv-power", "advertising mode average power", 226.0, adv_uw,
                                226.0 * 0.8, 226.0 * 1.2, "uW", note.str()));
    }

    double motion_mw = mode_average_power_w(sys.modes.at("motion"), power) * 1e3;
    rows.push_back(make_row("motion-cal", "motion mode hits its calibration target", 1.75,
                            motion_mw, 1.75 * 0.999, 1.75 * 1.001, "mW"));

    double full_mw = mode_average_power_w(sys.modes.at("full"), power) * 1e3;
    rows.push_back(make_row("full-cal", "full mode hits its calibration target", 10.0, full_mw,
                            10.0 * 0.999, 10.0 * 1.001, "mW"));

    double blend_mw = 0.5 * (motion_mw + full_mw);
    rows.push_back(make_row("blend-power", "50/50 full-motion average power", 5.9, blend_mw,
                            5.9 * 0.98, 5.9 * 1.02, "mW"));

    rows.push_back(make_row("full-lifetime", "full mode, 1 uplink/day, no light", 5.0,
                            simulate_days("full"), 4.6, 5.7, "days"));

    {
        double days = simulate_days("duty50");
        double blend_w = blend_mw * 1e-3;
        double uplink_w = uplink_energy_j(sys.nbiot, -90.0) / kSecondsPerDay;
        auto closed = closed_form_lifetime_s(blend_w + uplink_w, 0.0, sys.battery);
        std::ostringstream note;
        note << "smeared closed form: " << format_double(*closed / kSecondsPerDay) << " days";
        rows.push_back(make_row("duty50-lifetime", "50/50 full-motion, 1 uplink/day", 9.0, days,
                                8.0, 9.7, "days", note.str()));
    }

    {
        double days = simulate_days("advertising");
        double adv_ref_days =
            *closed_form_lifetime_s(226e-6, 0.0, sys.battery) / kSecondsPerDay;
        std::ostringstream note;
        note << "at the 226 uW reference figure: " << format_double(adv_ref_days) << " days";
        rows.push_back(make_row("adv-lifetime", "advertising mode outlasts one month", 31.0, days,
                                31.0, kInf, "days", note.str()));
    }

    {
        double half_j = 0.5 * full_energy_j(sys.battery);
        VolumeBudget good = volume_budget(sys.nbiot, half_j, -90.0);
        rows.push_back(make_row("volume-good", "uplink volume on half a battery, good coverage",
                                2.2, good.bytes / 1e6, 2.2 * 0.9, 2.2 * 1.1, "MB"));
        VolumeBudget worst = volume_budget(sys.nbiot, half_j, -115.0);
        rows.push_back(make_row("volume-worst", "uplink volume on half a battery, worst coverage",
                                0.6, worst.bytes / 1e6, 0.6 * 0.9, 0.6 * 1.1, "MB"));
    }

    {
        double worst_min = uplink_equivalent_runtime_s(sys.nbiot, -115.0, 10e-3) / 60.0;
        double good_min = uplink_equivalent_runtime_s(sys.nbiot, -90.0, 10e-3) / 60.0;
        std::ostringstream note;
        note << "good coverage: " << format_double(good_min)
             << " min (the quoted 1 minute is a coarse round-down)";
        rows.push_back(make_row("uplink-equiv", "worst-coverage uplink vs full-mode runtime", 6.0,
                                worst_min, 5.4, 7.5, "min", note.str()));
    }

    rows.push_back(make_row("outdoor-lifetime", "50/50 duty cycle with outdoor light", 20.0,
                            simulate_days("outdoor-harvest"), 20.0, 30.0, "days"));

    rows.push_back(make_row("indoor-lifetime", "advertising with 8 h of 500 lux", 60.0,
                            simulate_days("indoor-harvest"), 60.0, kInf, "days"));

    {
        DeviceAgent agent;
        agent.id = "w0";
        agent.waypoints = {{0.0, 0.0, 0.0}};
        double energy = tracing_energy_j(agent, 30.0 * kSecondsPerDay, power, sys.modes);
        double usable = usable_energy_j(sys.battery);
        std::ostringstream note;
        note << "usable battery energy: " << format_double(usable) << " J";
        rows.push_back(make_row("tracing-energy", "30 days of contact tracing fits the battery",
                                226e-6 * 30.0 * kSecondsPerDay, energy, 0.0, usable, "J",
                                note.str()));
    }

    return rows;
}

bool print_validation(std::ostream& out, const std::vector<ClaimRow>& rows) {
    bool all_pass = true;
    out << std::left << std::setw(18) << "claim" << std::setw(8) << "status" << std::setw(14)
        << "actual" << std::setw(22) << "accepted band" << std::setw(12) << "reference"
        << "description\n";
    for (const auto& row : rows) {
        all_pass = all_pass && row.pass;
        std::ostringstream band;
        band << '[' << format_double(row.low) << ", "
             << (std::isinf(row.high) ? std::string("inf") : format_double(row.high)) << "] "
             << row.unit;
        out << std::left << std::setw(18) << row.id << std::setw(8)
            << (row.pass ? "PASS" : "FAIL") << std::setw(14)
            << format_double(row.actual) + " " + row.unit << std::setw(22) << band.str()
            << std::setw(12) << format_double(row.reference) + " " + row.unit << row.description;
        if (!row.note.empty()) {
            out << "\n" << std::string(26, ' ') << "note: " << row.note;
        }
        out << '\n';
    }
    out << (all_pass ? "all claims pass" : "SOME CLAIMS FAIL") << " (" << rows.size()
        << " rows)\n";
    return all_pass;
}

}  // namespace wearsim
