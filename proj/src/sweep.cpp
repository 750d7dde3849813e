#include "wearsim/sweep.hpp"

#include <cstdint>

#include <nlohmann/json.hpp>

#include "wearsim/config.hpp"
#include "wearsim/errors.hpp"

namespace wearsim {

using nlohmann::json;

namespace {

std::vector<std::vector<std::pair<std::string, std::string>>> grid_points(
    const std::vector<SweepAxis>& axes) {
    std::vector<std::vector<std::pair<std::string, std::string>>> points;
    if (axes.empty()) return points;
    for (const auto& axis : axes) {
        if (axis.values.empty()) return {};   // empty axis -> empty grid
    }
    std::size_t total = 1;
    for (const auto& axis : axes) total *= axis.values.size();
    points.reserve(total);
    std::vector<std::size_t> index(axes.size(), 0);
    for (std::size_t n = 0; n < total; ++n) {
        std::vector<std::pair<std::string, std::string>> overrides;
        overrides.reserve(axes.size());
        for (std::size_t a = 0; a < axes.size(); ++a) {
            overrides.emplace_back(axes[a].key, axes[a].values[index[a]]);
        }
        points.push_back(std::move(overrides));
        // row-major order: the last axis turns fastest
        for (std::size_t a = axes.size(); a-- > 0;) {
            if (++index[a] < axes[a].values.size()) break;
            index[a] = 0;
        }
    }
    return points;
}

SimReport run_point(const json& base,
                    const std::vector<std::pair<std::string, std::string>>& overrides) {
    json cfg = base;
    for (const auto& [key, value] : overrides) {
        apply_override(cfg, key, value);
    }
    SystemConfig sys = build_system(cfg);
    return simulate(sys.scenario, sys.sim_inputs());
}

std::vector<SweepPoint> sweep_impl(const json& base, const std::vector<SweepAxis>& axes,
                                   bool parallel) {
    // Reject bad keys before any point runs: apply every override once
    // against a scratch copy.
    for (const auto& axis : axes) {
        json scratch = base;
        for (const auto& value : axis.values) {
            apply_override(scratch, axis.key, value);
        }
    }

    auto points = grid_points(axes);
    std::vector<SweepPoint> results(points.size());
    if (parallel) {
        // Exceptions cannot leave a parallel region; capture and rethrow.
        std::string error;
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(points.size()); ++i) {
            try {
                results[i].overrides = points[i];
                results[i].report = run_point(base, points[i]);
            } catch (const std::exception& e) {
#pragma omp critical
                if (error.empty()) error = e.what();
            }
        }
        if (!error.empty()) throw ConfigError(error);
    } else {
        for (std::size_t i = 0; i < points.size(); ++i) {
            results[i].overrides = points[i];
            results[i].report = run_point(base, points[i]);
        }
    }
    return results;
}

}  // namespace

std::vector<SweepPoint> run_sweep(const json& base, const std::vector<SweepAxis>& axes) {
    return sweep_impl(base, axes, true);
}

std::vector<SweepPoint> run_sweep_serial(const json& base, const std::vector<SweepAxis>& axes) {
    return sweep_impl(base, axes, false);
}

}  // namespace wearsim
