// Times the OpenMP kernels against their serial reference paths: the sweep
// over independent grid points and the pairwise encounter detection.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <nlohmann/json.hpp>

#include "wearsim/config.hpp"
#include "wearsim/sweep.hpp"
#include "wearsim/tracing.hpp"

using namespace wearsim;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    auto dt = std::chrono::steady_clock::now() - t0;
    return std::chrono::duration<double, std::milli>(dt).count();
}

void bench_sweep(int points) {
    nlohmann::json base = builtin_scenario_json("duty50");
    base["max_horizon_s"] = 30.0 * kSecondsPerDay;

    SweepAxis capacity;
    capacity.key = "battery.capacity_mah";
    for (int i = 0; i < points; ++i) {
        capacity.values.push_back(std::to_string(150.0 + 10.0 * i));
    }

    auto t0 = std::chrono::steady_clock::now();
    auto serial = run_sweep_serial(base, {capacity});
    double serial_ms = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    auto parallel = run_sweep(base, {capacity});
    double parallel_ms = ms_since(t0);

    bool identical = serial.size() == parallel.size();
    for (std::size_t i = 0; identical && i < serial.size(); ++i) {
        identical = serial[i].report.lifetime_s == parallel[i].report.lifetime_s &&
                    serial[i].report.consumed_j == parallel[i].report.consumed_j;
    }
    std::printf("sweep       %4d points   serial %9.1f ms   openmp %9.1f ms   "
                "speedup %5.2fx   identical %s\n",
                points, serial_ms, parallel_ms, serial_ms / parallel_ms,
                identical ? "yes" : "NO");
}

void bench_tracing(int agent_count) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> coord(0.0, 30.0);
    const double horizon = 2.0 * 3600.0;

    std::vector<DeviceAgent> agents;
    for (int i = 0; i < agent_count; ++i) {
        DeviceAgent agent;
        agent.id = "w" + std::to_string(i);
        agent.waypoints = {{0.0, coord(rng), coord(rng)},
                           {horizon, coord(rng), coord(rng)}};
        agents.push_back(std::move(agent));
    }
    PathLossModel model;
    model.noise_sigma_db = 2.0;
    model.rng_seed = 7;
    DetectOptions options;
    options.horizon_s = horizon;
    options.min_duration_s = 120.0;
    options.max_gap_s = 10.0;

    auto t0 = std::chrono::steady_clock::now();
    auto serial = detect_encounters_serial(agents, model, options);
    double serial_ms = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    auto parallel = detect_encounters(agents, model, options);
    double parallel_ms = ms_since(t0);

    std::printf("tracing     %4d agents   serial %9.1f ms   openmp %9.1f ms   "
                "speedup %5.2fx   identical %s   (%zu encounters)\n",
                agent_count, serial_ms, parallel_ms, serial_ms / parallel_ms,
                serial == parallel ? "yes" : "NO", serial.size());
}

}  // namespace

int main(int argc, char** argv) {
    int points = 32;
    int agents = 24;
    for (int i = 1; i + 1 < argc; i += 2) {
        std::string flag = argv[i];
        if (flag == "--points") points = std::stoi(argv[i + 1]);
        if (flag == "--agents") agents = std::stoi(argv[i + 1]);
    }
#ifdef _OPENMP
    std::printf("openmp max threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without openmp; both paths run serially\n");
#endif
    bench_sweep(points);
    bench_tracing(agents);
    return 0;
}
