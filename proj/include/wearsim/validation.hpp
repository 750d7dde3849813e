#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wearsim/config.hpp"

namespace wearsim {

/// One reference figure for the modeled platform checked against the
/// simulator's output.
struct ClaimRow {
    std::string id;
    std::string description;
    double reference = 0.0;     // the published figure
    double actual = 0.0;
    double low = 0.0;           // accepted band for actual
    double high = 0.0;
    std::string unit;
    bool pass = false;
    std::string note;
};

/// Evaluate every bundled claim against the given electrical model.
/// Deterministic; runs the bundled scenarios it needs internally.
std::vector<ClaimRow> run_validation();

/// Aligned table plus a final tally line. Returns true when all rows pass.
bool print_validation(std::ostream& out, const std::vector<ClaimRow>& rows);

}  // namespace wearsim
