#include "wearsim/tracing.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "wearsim/errors.hpp"

namespace wearsim {

namespace {

// splitmix64; good enough mixing to decorrelate per-pair streams.
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t pair_seed(std::uint64_t seed, std::size_t observer, std::size_t observed) {
    std::uint64_t h = mix64(seed ^ 0x77ea5c0fb8c3d1a5ULL);
    h = mix64(h ^ (static_cast<std::uint64_t>(observer) + 1));
    h = mix64(h ^ ((static_cast<std::uint64_t>(observed) + 1) << 20));
    return h;
}

}  // namespace

GaussianStream::GaussianStream(std::uint64_t seed) {
    state_[0] = mix64(seed);
    state_[1] = mix64(state_[0]);
    if (state_[0] == 0 && state_[1] == 0) state_[1] = 1;
}

double GaussianStream::next_uniform() {
    // xoroshiro128+, mapped to (0, 1).
    std::uint64_t s0 = state_[0];
    std::uint64_t s1 = state_[1];
    std::uint64_t result = s0 + s1;
    s1 ^= s0;
    state_[0] = ((s0 << 55) | (s0 >> 9)) ^ s1 ^ (s1 << 14);
    state_[1] = (s1 << 36) | (s1 >> 28);
    return (static_cast<double>(result >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

double GaussianStream::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = next_uniform();
    double u2 = next_uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

Position position_at(const DeviceAgent& agent, double t_s) {
    const auto& wp = agent.waypoints;
    if (wp.empty()) {
        throw std::invalid_argument("agent '" + agent.id + "' has no waypoints");
    }
    if (wp.size() == 1 || t_s <= wp.front().t_s) {
        return {wp.front().x_m, wp.front().y_m};
    }
    if (t_s >= wp.back().t_s) {
        return {wp.back().x_m, wp.back().y_m};
    }
    auto upper = std::upper_bound(wp.begin(), wp.end(), t_s,
                                  [](double v, const Waypoint& w) { return v < w.t_s; });
    const Waypoint& b = *upper;
    const Waypoint& a = *(upper - 1);
    double f = (t_s - a.t_s) / (b.t_s - a.t_s);
    return {a.x_m + f * (b.x_m - a.x_m), a.y_m + f * (b.y_m - a.y_m)};
}

double rssi_at(const PathLossModel& model, double distance_m) {
    if (distance_m <= 0.0) {
        throw std::invalid_argument("distance must be positive, got " +
                                    std::to_string(distance_m) + " m");
    }
    return model.rssi_at_1m_dbm - 10.0 * model.exponent * std::log10(distance_m);
}

double rssi_at(const PathLossModel& model, double distance_m, GaussianStream& rng) {
    double rssi = rssi_at(model, distance_m);
    if (model.noise_sigma_db > 0.0) {
        rssi += model.noise_sigma_db * rng.next();
    }
    return rssi;
}

namespace {

void validate_agents(const std::vector<DeviceAgent>& agents, double horizon_s) {
    for (const auto& agent : agents) {
        if (agent.waypoints.empty()) {
            throw ConfigError("agent '" + agent.id + "' has no waypoints");
        }
        for (std::size_t i = 1; i < agent.waypoints.size(); ++i) {
            if (agent.waypoints[i].t_s <= agent.waypoints[i - 1].t_s) {
                throw ConfigError("agent '" + agent.id +
                                  "': waypoint times must be strictly increasing");
            }
        }
        if (agent.waypoints.size() > 1) {
            if (agent.waypoints.front().t_s > 0.0 || agent.waypoints.back().t_s < horizon_s) {
                throw ConfigError("agent '" + agent.id +
                                  "': waypoints do not cover the detection horizon");
            }
        }
        validate_ble_spec(agent.adv);
    }
}

// Replay observed's advertising ticks and merge the receptions the observer
// hears into encounter records.
std::vector<EncounterRecord> detect_pair(const std::vector<DeviceAgent>& agents,
                                         std::size_t observer_idx, std::size_t observed_idx,
                                         const PathLossModel& model,
                                         const DetectOptions& options) {
    const DeviceAgent& observer = agents[observer_idx];
    const DeviceAgent& observed = agents[observed_idx];
    const double interval = observed.adv.interval_s;

    GaussianStream rng(pair_seed(model.rng_seed, observer_idx, observed_idx));

    std::vector<EncounterRecord> records;
    bool open = false;
    EncounterRecord current;
    double last_rx = 0.0;

    auto close = [&]() {
        if (open && current.end_s - current.start_s >= options.min_duration_s) {
            records.push_back(current);
        }
        open = false;
    };

    for (std::int64_t k = 0;; ++k) {
        double t = static_cast<double>(k) * interval;
        if (t >= options.horizon_s) break;
        Position a = position_at(observer, t);
        Position b = position_at(observed, t);
        double dist = std::hypot(a.x_m - b.x_m, a.y_m - b.y_m);
        dist = std::max(dist, 1e-3);   // coincident agents count as 1 mm apart
        double rssi = rssi_at(model, dist, rng);
        if (rssi < observer.rx_sensitivity_dbm) continue;

        if (open && t - last_rx <= options.max_gap_s) {
            current.end_s = t;
            current.min_distance_m = std::min(current.min_distance_m, dist);
            ++current.samples;
        } else {
            close();
            current = EncounterRecord{observer.id, observed.id, t, t, dist, 1};
            open = true;
        }
        last_rx = t;
    }
    close();
    return records;
}

std::vector<EncounterRecord> detect_impl(const std::vector<DeviceAgent>& agents,
                                         const PathLossModel& model,
                                         const DetectOptions& options, bool parallel) {
    if (options.horizon_s <= 0.0) {
        throw std::invalid_argument("detection horizon must be positive");
    }
    if (model.exponent <= 0.0) {
        throw std::invalid_argument("path-loss exponent must be positive");
    }
    validate_agents(agents, options.horizon_s);

    const std::size_t n = agents.size();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(n * (n - 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) pairs.emplace_back(i, j);
        }
    }

    std::vector<std::vector<EncounterRecord>> per_pair(pairs.size());
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t p = 0; p < static_cast<std::int64_t>(pairs.size()); ++p) {
            per_pair[p] = detect_pair(agents, pairs[p].first, pairs[p].second, model, options);
        }
    } else {
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            per_pair[p] = detect_pair(agents, pairs[p].first, pairs[p].second, model, options);
        }
    }

    std::vector<EncounterRecord> all;
    for (auto& chunk : per_pair) {
        all.insert(all.end(), chunk.begin(), chunk.end());
    }
    std::sort(all.begin(), all.end(), [](const EncounterRecord& a, const EncounterRecord& b) {
        return std::tie(a.observer, a.observed, a.start_s) <
               std::tie(b.observer, b.observed, b.start_s);
    });
    return all;
}

}  // namespace

std::vector<EncounterRecord> detect_encounters(const std::vector<DeviceAgent>& agents,
                                               const PathLossModel& model,
                                               const DetectOptions& options) {
    return detect_impl(agents, model, options, true);
}

std::vector<EncounterRecord> detect_encounters_serial(const std::vector<DeviceAgent>& agents,
                                                      const PathLossModel& model,
                                                      const DetectOptions& options) {
    return detect_impl(agents, model, options, false);
}

double tracing_energy_j(const DeviceAgent&, double horizon_s, const PowerModel& power,
                        const std::map<std::string, ModeSpec>& modes,
                        const std::string& advertising_mode) {
    if (horizon_s < 0.0) {
        throw std::invalid_argument("horizon must be non-negative");
    }
    auto it = modes.find(advertising_mode);
    if (it == modes.end()) {
        throw std::invalid_argument("no mode named '" + advertising_mode + "'");
    }
    return mode_average_power_w(it->second, power) * horizon_s;
}

std::vector<DeviceAgent> load_agents_csv(std::istream& in) {
    std::map<std::string, DeviceAgent> by_id;
    std::vector<std::string> order;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (line_no == 1 && line.rfind("id,", 0) == 0) continue;   // header
        std::istringstream row(line);
        std::string id, t, x, y;
        if (!std::getline(row, id, ',') || !std::getline(row, t, ',') ||
            !std::getline(row, x, ',') || !std::getline(row, y)) {
            throw ConfigError("agent trace line " + std::to_string(line_no) +
                              ": expected id,t_s,x_m,y_m");
        }
        try {
            Waypoint wp{std::stod(t), std::stod(x), std::stod(y)};
            if (by_id.find(id) == by_id.end()) {
                by_id[id] = DeviceAgent{id, {}, {}, -90.0};
                order.push_back(id);
            }
            by_id[id].waypoints.push_back(wp);
        } catch (const std::exception&) {
            throw ConfigError("agent trace line " + std::to_string(line_no) +
                              ": could not parse numbers in '" + line + "'");
        }
    }
    std::vector<DeviceAgent> agents;
    agents.reserve(order.size());
    for (const auto& id : order) {
        auto& agent = by_id[id];
        std::sort(agent.waypoints.begin(), agent.waypoints.end(),
                  [](const Waypoint& a, const Waypoint& b) { return a.t_s < b.t_s; });
        agents.push_back(std::move(agent));
    }
    return agents;
}

std::vector<DeviceAgent> load_agents_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open agent trace file: " + path);
    }
    return load_agents_csv(in);
}

void write_encounters_csv(std::ostream& out, const std::vector<EncounterRecord>& records) {
    out << "observer,observed,start_s,end_s,min_distance_m,samples\n";
    for (const auto& r : records) {
        std::ostringstream row;
        row.precision(10);
        row << r.observer << ',' << r.observed << ',' << r.start_s << ',' << r.end_s << ','
            << r.min_distance_m << ',' << r.samples;
        out << row.str() << '\n';
    }
}

}  // namespace wearsim
