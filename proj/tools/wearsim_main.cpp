#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wearsim/config.hpp"
#include "wearsim/errors.hpp"
#include "wearsim/report_io.hpp"
#include "wearsim/sweep.hpp"
#include "wearsim/tracing.hpp"
#include "wearsim/validation.hpp"

namespace {

using nlohmann::json;
using namespace wearsim;

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitConfigError = 2;

struct CommonOpts {
    std::string scenario;
    std::string out_dir;
    std::vector<std::string> overrides;
    std::optional<double> dt;
    std::uint64_t seed = 0;
    std::string format = "text";
};

json resolve_config(const CommonOpts& opts) {
    json cfg = load_config_json(opts.scenario);
    for (const auto& assignment : opts.overrides) {
        auto [key, value] = split_override(assignment);
        apply_override(cfg, key, value);
    }
    if (opts.dt) {
        apply_override(cfg, "dt_s", format_double(*opts.dt));
    }
    return cfg;
}

void ensure_out_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw ConfigError("cannot create output directory '" + dir + "': " + ec.message());
    }
}

int cmd_simulate(const CommonOpts& opts) {
    json cfg = resolve_config(opts);
    SystemConfig sys = build_system(cfg);
    SimReport report = simulate(sys.scenario, sys.sim_inputs());
    write_report_summary(std::cout, report, opts.format == "csv");
    if (!opts.out_dir.empty()) {
        ensure_out_dir(opts.out_dir);
        std::ofstream rj(opts.out_dir + "/report.json");
        rj << report_to_json(report).dump(2) << '\n';
        std::ofstream ts(opts.out_dir + "/timeseries.csv");
        write_timeseries_csv(ts, report);
        std::ofstream cj(opts.out_dir + "/config.json");
        cj << to_json(sys).dump(2) << '\n';
    }
    return kExitOk;
}

int cmd_lifetime(const CommonOpts& opts, const std::string& mode) {
    CommonOpts resolved = opts;
    if (!mode.empty()) {
        if (!is_builtin_scenario(mode)) {
            std::ostringstream names;
            for (const auto& n : builtin_scenario_names()) names << ' ' << n;
            throw ConfigError("unknown mode scenario '" + mode + "'; built-ins:" + names.str());
        }
        resolved.scenario = mode;
    }
    json cfg = resolve_config(resolved);
    SystemConfig sys = build_system(cfg);
    SimReport report = simulate(sys.scenario, sys.sim_inputs());
    if (report.lifetime_s) {
        std::cout << format_double(*report.lifetime_s / kSecondsPerDay) << " days\n";
    } else {
        std::cout << "survived horizon (" << format_double(report.sim_time_s / kSecondsPerDay)
                  << " days simulated)\n";
    }
    return kExitOk;
}

std::vector<SweepAxis> parse_axes(const std::vector<std::string>& grids) {
    std::vector<SweepAxis> axes;
    for (const auto& grid : grids) {
        auto [key, values] = split_override(grid);
        SweepAxis axis;
        axis.key = key;
        std::stringstream stream(values);
        std::string value;
        while (std::getline(stream, value, ',')) {
            if (!value.empty()) axis.values.push_back(value);
        }
        if (axis.values.empty()) {
            throw ConfigError("sweep axis '" + grid + "' lists no values");
        }
        axes.push_back(std::move(axis));
    }
    return axes;
}

int cmd_sweep(const CommonOpts& opts, const std::vector<std::string>& grids, bool serial) {
    json cfg = resolve_config(opts);
    auto axes = parse_axes(grids);
    auto results = serial ? run_sweep_serial(cfg, axes) : run_sweep(cfg, axes);

    const bool csv = opts.format == "csv";
    std::ostream& out = std::cout;
    std::ostringstream header;
    for (const auto& axis : axes) header << axis.key << (csv ? "," : "\t");
    header << (csv ? "lifetime_days,average_load_w,consumed_j,survived"
                   : "lifetime_days\taverage_load_w\tconsumed_j\tsurvived");
    out << header.str() << '\n';
    for (const auto& point : results) {
        const char* sep = csv ? "," : "\t";
        for (const auto& [key, value] : point.overrides) out << value << sep;
        const auto& r = point.report;
        out << (r.lifetime_s ? format_double(*r.lifetime_s / kSecondsPerDay)
                             : std::string("survived"))
            << sep << format_double(r.average_load_w) << sep << format_double(r.consumed_j)
            << sep << (r.survived() ? "1" : "0") << '\n';
    }
    if (!opts.out_dir.empty()) {
        ensure_out_dir(opts.out_dir);
        std::ofstream file(opts.out_dir + "/sweep.csv");
        std::ostringstream head;
        for (const auto& axis : axes) head << axis.key << ',';
        head << "lifetime_days,lifetime_s,average_load_w,average_harvest_w,consumed_j,survived";
        file << head.str() << '\n';
        for (const auto& point : results) {
            for (const auto& [key, value] : point.overrides) file << value << ',';
            const auto& r = point.report;
            file << (r.lifetime_s ? format_double(*r.lifetime_s / kSecondsPerDay)
                                  : std::string("")) << ','
                 << (r.lifetime_s ? format_double(*r.lifetime_s) : std::string("")) << ','
                 << format_double(r.average_load_w) << ',' << format_double(r.average_harvest_w)
                 << ',' << format_double(r.consumed_j) << ',' << (r.survived() ? "1" : "0")
                 << '\n';
        }
    }
    return kExitOk;
}

struct TraceOpts {
    std::string agents_path;
    double horizon_s = 3600.0;
    double min_duration_s = 60.0;
    double max_gap_s = 5.0;
    double sensitivity_dbm = -90.0;
    double rssi_at_1m_dbm = -59.0;
    double exponent = 2.0;
    double noise_sigma_db = 0.0;
    double interval_s = 1.0;
    bool serial = false;
};

int cmd_trace(const CommonOpts& common, const TraceOpts& opts) {
    auto agents = load_agents_csv_file(opts.agents_path);
    if (agents.empty()) {
        throw ConfigError("agent trace file '" + opts.agents_path + "' defines no agents");
    }
    for (auto& agent : agents) {
        agent.rx_sensitivity_dbm = opts.sensitivity_dbm;
        agent.adv.interval_s = opts.interval_s;
    }
    PathLossModel model;
    model.rssi_at_1m_dbm = opts.rssi_at_1m_dbm;
    model.exponent = opts.exponent;
    model.noise_sigma_db = opts.noise_sigma_db;
    model.rng_seed = common.seed;
    DetectOptions detect;
    detect.horizon_s = opts.horizon_s;
    detect.min_duration_s = opts.min_duration_s;
    detect.max_gap_s = opts.max_gap_s;

    auto records = opts.serial ? detect_encounters_serial(agents, model, detect)
                               : detect_encounters(agents, model, detect);
    if (!common.out_dir.empty()) {
        ensure_out_dir(common.out_dir);
        std::ofstream file(common.out_dir + "/encounters.csv");
        write_encounters_csv(file, records);
        std::cout << records.size() << " encounters -> " << common.out_dir
                  << "/encounters.csv\n";
    } else {
        write_encounters_csv(std::cout, records);
    }
    return kExitOk;
}

int cmd_validate() {
    auto rows = run_validation();
    bool pass = print_validation(std::cout, rows);
    return pass ? kExitOk : kExitValidationFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wearsim: energy-budget, lifetime and BLE contact-tracing simulator "
                 "for a solar-harvesting multi-sensor wearable"};
    app.require_subcommand(1);

    CommonOpts common;
    std::string lifetime_mode;
    std::vector<std::string> grids;
    bool sweep_serial = false;
    TraceOpts trace;

    auto add_common = [&](CLI::App* cmd, bool scenario_required) {
        auto* opt = cmd->add_option("--scenario", common.scenario,
                                    "scenario file or built-in scenario name");
        if (scenario_required) opt->required();
        cmd->add_option("--out", common.out_dir, "output directory");
        cmd->add_option("--set", common.overrides, "config override key=value (repeatable)");
        cmd->add_option("--dt", common.dt, "integration step, seconds");
        cmd->add_option("--seed", common.seed, "RNG seed (used by trace shadowing noise)");
        cmd->add_option("--format", common.format, "summary format")
            ->check(CLI::IsMember({"text", "csv"}));
    };

    auto* sim_cmd = app.add_subcommand("simulate", "run a scenario and report the outcome");
    add_common(sim_cmd, true);

    auto* life_cmd = app.add_subcommand("lifetime", "print the lifetime in days, one line");
    add_common(life_cmd, false);
    life_cmd->add_option("--mode", lifetime_mode, "shorthand: built-in scenario of this name");

    auto* sweep_cmd = app.add_subcommand("sweep", "simulate a grid of config overrides");
    add_common(sweep_cmd, true);
    sweep_cmd->add_option("--grid", grids, "sweep axis key=v1,v2,... (repeatable)")->required();
    sweep_cmd->add_flag("--serial", sweep_serial, "run grid points on one thread");

    auto* trace_cmd = app.add_subcommand("trace", "detect BLE proximity encounters from traces");
    trace_cmd->add_option("--agents", trace.agents_path, "agent waypoint CSV (id,t_s,x_m,y_m)")
        ->required();
    trace_cmd->add_option("--horizon", trace.horizon_s, "detection horizon, seconds");
    trace_cmd->add_option("--min-duration", trace.min_duration_s,
                          "drop encounters shorter than this, seconds");
    trace_cmd->add_option("--max-gap", trace.max_gap_s,
                          "merge receptions with gaps up to this, seconds");
    trace_cmd->add_option("--sensitivity", trace.sensitivity_dbm, "receiver sensitivity, dBm");
    trace_cmd->add_option("--rssi-at-1m", trace.rssi_at_1m_dbm, "path-loss anchor, dBm");
    trace_cmd->add_option("--exponent", trace.exponent, "path-loss exponent");
    trace_cmd->add_option("--noise-sigma", trace.noise_sigma_db, "shadowing sigma, dB");
    trace_cmd->add_option("--interval", trace.interval_s, "advertising interval, seconds");
    trace_cmd->add_option("--out", common.out_dir, "output directory");
    trace_cmd->add_option("--seed", common.seed, "shadowing RNG seed");
    trace_cmd->add_flag("--serial", trace.serial, "evaluate pairs on one thread");

    auto* validate_cmd =
        app.add_subcommand("validate", "check the model against its reference figures");
    (void)validate_cmd;

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim_cmd->parsed()) return cmd_simulate(common);
        if (life_cmd->parsed()) {
            if (common.scenario.empty() && lifetime_mode.empty()) {
                common.scenario = "sleep";   // defaults-only scenario
            }
            return cmd_lifetime(common, lifetime_mode);
        }
        if (sweep_cmd->parsed()) return cmd_sweep(common, grids, sweep_serial);
        if (trace_cmd->parsed()) return cmd_trace(common, trace);
        if (validate_cmd->parsed()) return cmd_validate();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfigError;
    }
    return kExitOk;
}
