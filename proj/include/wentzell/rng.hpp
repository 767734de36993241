#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <boost/random/normal_distribution.hpp>

namespace wentzell {

// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

// Derived seed for stream `index` of `master`: splitmix64(master ^ splitmix64(index + golden)).
std::uint64_t mix(std::uint64_t master, std::uint64_t index);

// Sub-stream indices used inside one path seed.
enum class StreamId : std::uint64_t {
    Driving = 0,
    Kill = 1,
    Bridge = 2,
    Crossing = 3,
};

std::uint64_t stream_seed(std::uint64_t path_seed, StreamId id);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double normal() { return normal_(engine_); }

    // Uniform on (0,1], safe for -log(u).
    double uniform_open0() {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    // Exponential with the given rate, by inverse CDF.
    double exponential(double rate) { return -std::log(uniform_open0()) / rate; }

private:
    std::mt19937_64 engine_;
    boost::random::normal_distribution<double> normal_;
};

}  // namespace wentzell
