#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "wentzell/model.hpp"
#include "wentzell/path.hpp"

namespace wentzell {

enum class LocalTimeScheme {
    // L_k = running max of -X over the knots (discrete Levy pair); lags the true
    // local time by about 0.58 sqrt(dt).
    GridMaximum,
    // Running max also over a sampled Brownian-bridge extremum inside each step, so
    // (R_k, L_k) has the exact joint law at grid times.
    BridgeMaximum,
};

struct EngineOptions {
    LocalTimeScheme scheme = LocalTimeScheme::BridgeMaximum;
    // Brownian-bridge crossing correction for level hits (early stop, absorption).
    bool bridge_crossing = false;
    // Stop the simulation at the first hit of this level (in the process' own values).
    std::optional<double> stop_level;
    // Stop the simulation at the first knot at or after the lifetime.
    bool stop_at_death = false;
    // Stop once the (real-clock) local time exceeds this value.
    std::optional<double> stop_local_time;
};

// Width of the "at the origin" band.
inline double eps_flat(double dt) { return 2.0 * std::sqrt(dt); }

SamplePath sample_bm(double start, const TimeGrid& grid, std::uint64_t seed);

// Levy pair (M - W, M) for a driving segment W with W[0] = 0.
std::pair<std::vector<double>, std::vector<double>> levy_reflection(std::span<const double> driving);

AugmentedPath reflect_with_local_time(double start, const TimeGrid& grid, std::uint64_t seed,
                                      const EngineOptions& options = {});

// eps times the number of crossings of [0, eps] (counted on the way up), with a
// discrete-monitoring shift on the upper level.
std::vector<double> local_time_downcrossing(const AugmentedPath& path, double eps);

// Time change by the inverse of t + gamma L_t. `max_steps` caps the output grid.
AugmentedPath sticky_time_change(const AugmentedPath& aug, double gamma, std::optional<int> max_steps = {});

// Lifetime = first time A exceeds `level` (linear interpolation between knots).
SamplePath kill_at_level(const SamplePath& path, const std::vector<double>& functional, double level);

// S ~ Exponential(beta) drawn from the kill stream of `seed`, then kill_at_level.
SamplePath pchaf_kill(const SamplePath& path, const std::vector<double>& functional, double beta, std::uint64_t seed);

double kill_threshold(double beta, std::uint64_t seed);

AugmentedPath build_process(const BoundaryModel& model, double start, const TimeGrid& grid, std::uint64_t seed,
                            const EngineOptions& options = {});

struct HitOptions {
    bool bridge_crossing = false;
    std::uint64_t seed = 0;
};

// First time the piecewise-linear interpolant reaches `level` before the lifetime.
std::optional<double> hitting_time(const SamplePath& path, double level, const HitOptions& options = {});

// For time-changed paths the hit is found on the real clock and mapped through tau^{-1}.
std::optional<double> hitting_time(const AugmentedPath& aug, double level, const HitOptions& options = {});

// Exit time from the open interval (lo, hi).
std::optional<double> exit_time(const AugmentedPath& aug, double lo, double hi, const HitOptions& options = {});

// tau(s) from the piecewise-linear inverse clock of a time-changed path.
double clock_tau(const ClockRecord& record, double s);

// Bridge probability of reaching `level` between knot values a and b (both on one side).
double bridge_cross_probability(double a, double b, double level, double variance);

// Uniform in (0,1) attached to step k of a path seed, shared by every crossing test.
double crossing_uniform(std::uint64_t seed, std::int64_t k);

}  // namespace wentzell
