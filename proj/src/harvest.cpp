#include "wearsim/harvest.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "wearsim/errors.hpp"

namespace wearsim {

void validate_curve(const HarvesterCurve& curve) {
    if (curve.points.empty()) {
        throw ConfigError("harvester curve has no calibration points");
    }
    if (curve.points.front().lux != 0.0 || curve.points.front().watts != 0.0) {
        throw ConfigError("harvester curve must start at (0 lux, 0 W)");
    }
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        const auto& p = curve.points[i];
        if (p.watts < 0.0) {
            std::ostringstream msg;
            msg << "harvester curve point " << i << " has negative power " << p.watts << " W";
            throw ConfigError(msg.str());
        }
        if (i > 0) {
            const auto& prev = curve.points[i - 1];
            if (p.lux <= prev.lux) {
                std::ostringstream msg;
                msg << "harvester curve points must be strictly ascending in lux ("
                    << prev.lux << " then " << p.lux << ")";
                throw ConfigError(msg.str());
            }
            if (p.watts < prev.watts) {
                std::ostringstream msg;
                msg << "harvester curve power must not decrease with lux (" << prev.watts
                    << " W then " << p.watts << " W)";
                throw ConfigError(msg.str());
            }
        }
    }
    if (curve.conversion_efficiency <= 0.0 || curve.conversion_efficiency > 1.0) {
        throw ConfigError("harvester conversion efficiency must be in (0, 1]");
    }
}

double harvest_power_w(const HarvesterCurve& curve, double lux) {
    if (lux < 0.0) {
        throw std::invalid_argument("illuminance must be non-negative, got " +
                                    std::to_string(lux));
    }
    const auto& pts = curve.points;
    if (lux >= pts.back().lux) {
        return pts.back().watts;   // constant beyond the last calibration point
    }
    auto upper = std::upper_bound(pts.begin(), pts.end(), lux,
                                  [](double v, const HarvesterCurve::Point& p) { return v < p.lux; });
    const auto& hi = *upper;
    const auto& lo = *(upper - 1);
    double f = (lux - lo.lux) / (hi.lux - lo.lux);
    return lo.watts + f * (hi.watts - lo.watts);
}

void validate_light_schedule(const LightSchedule& schedule) {
    auto segments = schedule.segments;
    std::sort(segments.begin(), segments.end(),
              [](const auto& a, const auto& b) { return a.start_s < b.start_s; });
    double covered = 0.0;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const auto& s = segments[i];
        if (s.duration_s <= 0.0) {
            throw ConfigError("light segment durations must be positive");
        }
        if (s.lux < 0.0) {
            throw ConfigError("light segment illuminance must be non-negative");
        }
        if (s.start_s < 0.0 || s.start_s + s.duration_s > kSecondsPerDay) {
            std::ostringstream msg;
            msg << "light segment [" << s.start_s << ", " << s.start_s + s.duration_s
                << ") falls outside the day";
            throw ConfigError(msg.str());
        }
        if (i > 0) {
            const auto& prev = segments[i - 1];
            if (s.start_s < prev.start_s + prev.duration_s) {
                std::ostringstream msg;
                msg << "light segments overlap at " << s.start_s << " s";
                throw ConfigError(msg.str());
            }
        }
        covered += s.duration_s;
    }
    if (covered > kSecondsPerDay) {
        throw ConfigError("light schedule covers more than 24 h");
    }
}

double illuminance_at(const LightSchedule& schedule, double t_s) {
    for (const auto& s : schedule.segments) {
        if (t_s >= s.start_s && t_s < s.start_s + s.duration_s) {
            return s.lux;
        }
    }
    return 0.0;
}

double schedule_power_at(const LightSchedule& schedule, const HarvesterCurve& curve, double t_s) {
    if (t_s < 0.0 || t_s >= kSecondsPerDay) {
        throw std::invalid_argument("time-of-day must be in [0, 86400), got " +
                                    std::to_string(t_s));
    }
    return harvest_power_w(curve, illuminance_at(schedule, t_s));
}

double daily_harvest_j(const LightSchedule& schedule, const HarvesterCurve& curve) {
    double total = 0.0;
    for (const auto& s : schedule.segments) {
        total += harvest_power_w(curve, s.lux) * s.duration_s;
    }
    return total;
}

}  // namespace wearsim
