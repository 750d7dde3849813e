#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "wearsim/engine.hpp"

namespace wearsim {

nlohmann::json report_to_json(const SimReport& report);

/// Plain key/value summary, one line each (text) or "key,value" rows (csv).
void write_report_summary(std::ostream& out, const SimReport& report, bool csv);

/// Sampled time series: t_s,stored_j,load_w,harvest_w,event.
void write_timeseries_csv(std::ostream& out, const SimReport& report);

/// Fixed-notation float formatting shared by all outputs so that identical
/// runs produce byte-identical files.
std::string format_double(double value);

}  // namespace wearsim
