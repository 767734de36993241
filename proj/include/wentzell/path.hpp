#pragma once

#include <optional>
#include <vector>

namespace wentzell {

struct TimeGrid {
    double t_max = 1.0;
    int n_steps = 1;
    double dt = 1.0;

    static TimeGrid make(double t_max, int n_steps);
    // First k steps of this grid, same dt.
    TimeGrid truncated(int k) const;
    double time(int k) const { return k * dt; }
};

struct SamplePath {
    TimeGrid grid;
    std::vector<double> values;
    std::optional<double> lifetime;
    double start = 0.0;

    bool alive_at(int k) const { return !lifetime || grid.time(k) < *lifetime; }
    // Value at knot k, or nullopt for the cemetery.
    std::optional<double> state(int k) const;
    // Number of knots strictly before the lifetime.
    int alive_knots() const;
};

// Real-clock record kept by time-changed paths so every construction step can be replayed.
struct ClockRecord {
    TimeGrid grid;
    std::vector<double> reflected;
    std::vector<double> local_time;
    std::vector<double> inverse_clock;  // tau^{-1}(t_k) = t_k + gamma L_{t_k}
};

struct AugmentedPath {
    SamplePath path;
    std::vector<double> driving;
    std::vector<double> local_time;
    std::optional<std::vector<double>> time_change;
    std::optional<ClockRecord> base;
    std::optional<double> kill_level;  // the exponential S used for killing, if any
};

}  // namespace wentzell
