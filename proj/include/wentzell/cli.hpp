#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wentzell/model.hpp"

namespace wentzell {

enum class Command { Simulate, Kernel, Resolvent, Interval, Validate };
enum class Format { Csv, Json };

struct RunConfig {
    Command command = Command::Simulate;
    BoundaryModel model;
    BoundaryModel model1 = BoundaryModel::reflecting(Side::AtOne);
    double start = 0.0;
    double t_max = 1.0;
    int steps = 1000;
    long paths = 1;
    std::uint64_t seed = 1;
    double lambda = 1.0;
    double time = 1.0;
    std::string out;  // empty: standard output
    Format format = Format::Csv;
    std::string suite = "default";
    double dt = 1e-4;  // validate only
};

// Default seed when --seed is absent.
inline constexpr const char* kSeedEnv = "WENTZELL_SEED";

// args excludes the program name. Flags override keys from `file_text`.
RunConfig parse_config(const std::vector<std::string>& args, const std::optional<std::string>& file_text = {});

// 0 success, 1 failed validation check or IO failure.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

// Full front end: parse, run, and map errors to exit codes (2 for usage errors).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string usage();

}  // namespace wentzell
