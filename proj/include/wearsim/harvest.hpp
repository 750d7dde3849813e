#pragma once

#include <vector>

namespace wearsim {

constexpr double kSecondsPerDay = 86400.0;

/// Illuminance -> delivered-to-battery power calibration curve. Powers are
/// post-MPPT and post-converter, so no further efficiency is applied when
/// charging; conversion_efficiency is recorded metadata only.
struct HarvesterCurve {
    struct Point {
        double lux = 0.0;
        double watts = 0.0;
    };
    std::vector<Point> points;          // strictly ascending lux, starts at (0, 0)
    double conversion_efficiency = 0.92;
};

/// Throws ConfigError unless the curve is strictly ascending in lux,
/// non-negative, monotone non-decreasing in power and anchored at (0, 0).
void validate_curve(const HarvesterCurve& curve);

/// Piecewise-linear interpolation between calibration points; constant
/// beyond the last point. Negative illuminance is rejected.
double harvest_power_w(const HarvesterCurve& curve, double lux);

/// Daily light pattern. Uncovered time is dark (0 lux).
struct LightSchedule {
    struct Segment {
        double start_s = 0.0;     // seconds-of-day
        double duration_s = 0.0;
        double lux = 0.0;
    };
    std::vector<Segment> segments;
};

/// Throws ConfigError on overlapping segments or segments outside the day.
void validate_light_schedule(const LightSchedule& schedule);

/// Illuminance at a second-of-day, 0 when no segment covers t.
double illuminance_at(const LightSchedule& schedule, double t_s);

/// Delivered power at a second-of-day; t must be in [0, 86400).
double schedule_power_at(const LightSchedule& schedule, const HarvesterCurve& curve, double t_s);

/// Energy delivered over one whole day, joules.
double daily_harvest_j(const LightSchedule& schedule, const HarvesterCurve& curve);

}  // namespace wearsim
