#include "wearsim/report_io.hpp"

#include <cstdio>
#include <ostream>

#include <nlohmann/json.hpp>

namespace wearsim {

using nlohmann::json;

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

json report_to_json(const SimReport& report) {
    json j;
    if (report.lifetime_s) {
        j["lifetime_s"] = *report.lifetime_s;
        j["lifetime_days"] = *report.lifetime_s / kSecondsPerDay;
    } else {
        j["lifetime_s"] = nullptr;
        j["lifetime_days"] = nullptr;
    }
    j["survived_horizon"] = report.survived();
    j["sim_time_s"] = report.sim_time_s;
    j["steps"] = report.steps;
    j["average_load_w"] = report.average_load_w;
    j["average_harvest_w"] = report.average_harvest_w;
    j["initial_stored_j"] = report.initial_stored_j;
    j["final_stored_j"] = report.final_stored_j;
    j["consumed_j"] = report.consumed_j;
    j["harvested_in_j"] = report.harvested_in_j;
    j["harvested_stored_j"] = report.harvested_stored_j;
    j["overflow_j"] = report.overflow_j;
    j["conservation_residual"] = report.conservation_residual;
    j["breakdown_j"] = json::object();
    for (const auto& [name, joules] : report.breakdown_j) {
        j["breakdown_j"][name] = joules;
    }
    return j;
}

void write_report_summary(std::ostream& out, const SimReport& report, bool csv) {
    const char* sep = csv ? "," : ": ";
    auto line = [&](const std::string& key, const std::string& value) {
        out << key << sep << value << '\n';
    };
    if (report.lifetime_s) {
        line("lifetime_days", format_double(*report.lifetime_s / kSecondsPerDay));
        line("lifetime_s", format_double(*report.lifetime_s));
    } else {
        line("lifetime_days", "survived-horizon");
        line("lifetime_s", "survived-horizon");
    }
    line("sim_time_s", format_double(report.sim_time_s));
    line("steps", std::to_string(report.steps));
    line("average_load_w", format_double(report.average_load_w));
    line("average_harvest_w", format_double(report.average_harvest_w));
    line("initial_stored_j", format_double(report.initial_stored_j));
    line("final_stored_j", format_double(report.final_stored_j));
    line("consumed_j", format_double(report.consumed_j));
    line("harvested_in_j", format_double(report.harvested_in_j));
    line("harvested_stored_j", format_double(report.harvested_stored_j));
    line("overflow_j", format_double(report.overflow_j));
    line("conservation_residual", format_double(report.conservation_residual));
    for (const auto& [name, joules] : report.breakdown_j) {
        line("breakdown." + name + "_j", format_double(joules));
    }
}

void write_timeseries_csv(std::ostream& out, const SimReport& report) {
    out << "t_s,stored_j,load_w,harvest_w,event\n";
    for (const auto& sample : report.series) {
        out << format_double(sample.t_s) << ',' << format_double(sample.stored_j) << ','
            << format_double(sample.load_w) << ',' << format_double(sample.harvest_w) << ','
            << sample.event << '\n';
    }
}

}  // namespace wearsim
