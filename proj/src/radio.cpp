#include "wearsim/radio.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "wearsim/errors.hpp"

namespace wearsim {

void validate_uplink_model(const UplinkModel& model) {
    if (model.buckets.empty()) {
        throw ConfigError("uplink model needs at least one RSSI bucket");
    }
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (model.buckets.front().rssi_min_dbm != -inf) {
        throw ConfigError("first RSSI bucket must be open towards -infinity");
    }
    if (model.buckets.back().rssi_max_dbm != inf) {
        throw ConfigError("last RSSI bucket must be open towards +infinity");
    }
    for (std::size_t i = 0; i < model.buckets.size(); ++i) {
        const auto& b = model.buckets[i];
        if (!(b.rssi_min_dbm < b.rssi_max_dbm)) {
            throw ConfigError("RSSI bucket bounds must satisfy min < max");
        }
        if (b.energy_j <= 0.0) {
            throw ConfigError("uplink energy must be positive");
        }
        if (i > 0) {
            const auto& prev = model.buckets[i - 1];
            if (b.rssi_min_dbm != prev.rssi_max_dbm) {
                std::ostringstream msg;
                msg << "RSSI buckets must be contiguous: bucket " << i << " starts at "
                    << b.rssi_min_dbm << " dBm but the previous one ends at "
                    << prev.rssi_max_dbm << " dBm";
                throw ConfigError(msg.str());
            }
            if (b.energy_j > prev.energy_j) {
                throw ConfigError("uplink energy must not increase as RSSI improves");
            }
        }
    }
    if (model.payload_bytes <= 0.0) {
        throw ConfigError("uplink payload must be positive");
    }
}

double uplink_energy_j(const UplinkModel& model, double rssi_dbm) {
    // Buckets cover [min, max); the validated partition makes lookup total.
    for (const auto& b : model.buckets) {
        if (rssi_dbm >= b.rssi_min_dbm && rssi_dbm < b.rssi_max_dbm) {
            return b.energy_j;
        }
    }
    throw std::invalid_argument("RSSI " + std::to_string(rssi_dbm) +
                                " dBm not covered by any bucket (model not validated?)");
}

VolumeBudget volume_budget(const UplinkModel& model, double available_j, double rssi_dbm) {
    if (available_j < 0.0) {
        throw std::invalid_argument("available energy must be non-negative, got " +
                                    std::to_string(available_j) + " J");
    }
    double per_uplink = uplink_energy_j(model, rssi_dbm);
    auto uplinks = static_cast<long long>(std::floor(available_j / per_uplink));
    return VolumeBudget{uplinks, static_cast<double>(uplinks) * model.payload_bytes};
}

double uplink_equivalent_runtime_s(const UplinkModel& model, double rssi_dbm,
                                   double mode_power_w) {
    if (mode_power_w <= 0.0) {
        throw std::invalid_argument("mode power must be positive, got " +
                                    std::to_string(mode_power_w) + " W");
    }
    return uplink_energy_j(model, rssi_dbm) / mode_power_w;
}

double energy_per_bit_j(const UplinkModel& model, double rssi_dbm) {
    if (model.payload_bytes <= 0.0) {
        throw std::invalid_argument("payload must be positive to spread energy over bits");
    }
    return uplink_energy_j(model, rssi_dbm) / (model.payload_bytes * 8.0);
}

void validate_ble_spec(const BleAdvertisingSpec& spec) {
    if (spec.interval_s <= 0.0) {
        throw ConfigError("advertising interval must be positive");
    }
    if (spec.payload_bytes < 0 || spec.payload_bytes > 31) {
        throw ConfigError("legacy advertising payload is limited to 31 bytes, got " +
                          std::to_string(spec.payload_bytes));
    }
    if (spec.average_power_w < 0.0) {
        throw ConfigError("advertising average power must be non-negative");
    }
}

}  // namespace wearsim
