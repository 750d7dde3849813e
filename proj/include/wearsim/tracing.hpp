#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wearsim/power_model.hpp"
#include "wearsim/radio.hpp"

namespace wearsim {

struct Waypoint {
    double t_s = 0.0;
    double x_m = 0.0;
    double y_m = 0.0;
};

/// An advertising device on the plane. Position follows the waypoint trace
/// with linear interpolation; a single waypoint means the device is static.
struct DeviceAgent {
    std::string id;
    std::vector<Waypoint> waypoints;   // strictly increasing t
    BleAdvertisingSpec adv;
    double rx_sensitivity_dbm = -90.0;
};

struct Position {
    double x_m = 0.0;
    double y_m = 0.0;
};

Position position_at(const DeviceAgent& agent, double t_s);

/// Log-distance path loss with optional gaussian shadowing. With
/// noise_sigma_db = 0 the model is fully deterministic.
struct PathLossModel {
    double rssi_at_1m_dbm = -59.0;
    double exponent = 2.0;
    double noise_sigma_db = 0.0;
    std::uint64_t rng_seed = 0;
};

/// Deterministic gaussian stream (Box-Muller over a seeded mt19937_64), so
/// shadowing draws do not depend on the platform's normal_distribution.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed);
    double next();

private:
    std::uint64_t state_[2];
    double spare_ = 0.0;
    bool has_spare_ = false;
    double next_uniform();
};

/// Mean path-loss RSSI at a distance: rssi_at_1m - 10 * exponent * log10(d).
/// Distance must be positive.
double rssi_at(const PathLossModel& model, double distance_m);

/// Same, plus one shadowing draw from the stream (consumed even when the
/// result would not change a threshold decision, to keep streams aligned).
double rssi_at(const PathLossModel& model, double distance_m, GaussianStream& rng);

struct EncounterRecord {
    std::string observer;
    std::string observed;
    double start_s = 0.0;
    double end_s = 0.0;
    double min_distance_m = 0.0;
    long long samples = 0;

    bool operator==(const EncounterRecord&) const = default;
};

struct DetectOptions {
    double horizon_s = 3600.0;
    double min_duration_s = 60.0;    // shorter merged runs are dropped
    double max_gap_s = 5.0;          // receptions this far apart merge
};

/// For every ordered observer/observed pair, replay the observed device's
/// advertising ticks over the horizon, keep the ticks whose RSSI clears the
/// observer's sensitivity, merge runs with gaps <= max_gap and drop runs
/// shorter than min_duration. Output is sorted by (observer, observed,
/// start). Pairs are independent; the OpenMP variant distributes them over
/// threads and produces the identical list.
std::vector<EncounterRecord> detect_encounters(const std::vector<DeviceAgent>& agents,
                                               const PathLossModel& model,
                                               const DetectOptions& options);
std::vector<EncounterRecord> detect_encounters_serial(const std::vector<DeviceAgent>& agents,
                                                      const PathLossModel& model,
                                                      const DetectOptions& options);

/// Energy a device spends tracing for a horizon: the advertising mode's
/// composed average power times the horizon. Scan-side cost is folded into
/// that constant.
double tracing_energy_j(const DeviceAgent& agent, double horizon_s, const PowerModel& power,
                        const std::map<std::string, ModeSpec>& modes,
                        const std::string& advertising_mode = "advertising");

/// CSV interfaces: traces come in as id,t_s,x_m,y_m rows; encounters go out
/// as observer,observed,start_s,end_s,min_distance_m,samples rows.
std::vector<DeviceAgent> load_agents_csv(std::istream& in);
std::vector<DeviceAgent> load_agents_csv_file(const std::string& path);
void write_encounters_csv(std::ostream& out, const std::vector<EncounterRecord>& records);

}  // namespace wearsim
