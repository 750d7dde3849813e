#pragma once

#include <cstdint>
#include <vector>

namespace wearsim {

/// One coverage class: uplinks landing in [rssi_min, rssi_max) cost energy_j
/// each. Use +/-infinity for the open ends.
struct RssiBucket {
    double rssi_min_dbm = 0.0;
    double rssi_max_dbm = 0.0;
    double energy_j = 0.0;
};

/// Discrete-event energy model for cellular uplinks. Each uplink is a single
/// withdrawal of the bucket's mean energy; the multi-second radio transaction
/// is collapsed. The modem's idle floor (PSM) is carried by its component
/// profile row, psm_power_w here is rail-side metadata.
struct UplinkModel {
    std::vector<RssiBucket> buckets;   // ascending rssi, partitioning the axis
    double payload_bytes = 983.0;
    double psm_power_w = 13.2e-6;
};

/// Throws ConfigError unless the buckets are sorted, contiguous, cover the
/// whole axis and have positive, non-increasing energy as RSSI improves.
void validate_uplink_model(const UplinkModel& model);

/// Mean energy of one uplink at the given signal strength.
double uplink_energy_j(const UplinkModel& model, double rssi_dbm);

struct VolumeBudget {
    long long uplinks = 0;
    double bytes = 0.0;
};

/// How many uplinks (and payload bytes) a given energy allowance buys.
VolumeBudget volume_budget(const UplinkModel& model, double available_j, double rssi_dbm);

/// Seconds of running at mode_power_w that cost the same as one uplink.
double uplink_equivalent_runtime_s(const UplinkModel& model, double rssi_dbm,
                                   double mode_power_w);

/// Diagnostic: uplink energy spread over the payload bits. Includes protocol
/// overhead, so it sits well above transmit-only figures.
double energy_per_bit_j(const UplinkModel& model, double rssi_dbm);

struct BleAdvertisingSpec {
    double interval_s = 1.0;
    double tx_power_dbm = 0.0;
    int payload_bytes = 31;            // legacy advertising caps at 31
    double average_power_w = 99e-6;    // rail-side
};

void validate_ble_spec(const BleAdvertisingSpec& spec);

}  // namespace wearsim
