#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "wentzell/model.hpp"
#include "wentzell/path.hpp"
#include "wentzell/path_engine.hpp"
#include "wentzell/stats.hpp"

namespace wentzell {

using TestFn = std::function<double(double)>;

// int_0^{zeta ^ t_max} e^{-lambda t} f(X_t) dt by the trapezoid rule on the path's own clock.
double discounted_integral(const SamplePath& path, double lambda, const TestFn& f);

MCEstimate mc_resolvent(const BoundaryModel& model, const TestFn& f, double lambda, double x, long n_paths,
                        const TimeGrid& grid, std::uint64_t master_seed, double tolerance = 1e-3,
                        const EngineOptions& options = {});

MCEstimate mc_interval_resolvent(const BoundaryModel& model0, const BoundaryModel& model1, const TestFn& f,
                                 double lambda, double x, long n_paths, const TimeGrid& grid,
                                 std::uint64_t master_seed, double tolerance = 1e-3,
                                 const EngineOptions& options = {});

struct MeasureDistance {
    double l1 = 0.0;
    double atom_estimate = 0.0;
    double atom_target = 0.0;
    double atom_stderr = 0.0;
    double death_estimate = 0.0;
    double death_target = 0.0;
    double death_stderr = 0.0;
    long n = 0;
};

MeasureDistance empirical_measure_distance(const BoundaryModel& model, double t, double x, long n_paths, int bins,
                                           const TimeGrid& grid, std::uint64_t seed,
                                           const EngineOptions& options = {});

double boundary_residual_numeric(const BoundaryModel& model, double lambda, const TestFn& f, double h);

double first_passage_check(const BoundaryModel& model, double lambda, double x);

struct CheckResult {
    std::string name;
    int criterion = 0;
    std::string provenance;
    double target = 0.0;
    double estimate = 0.0;
    double tolerance = 0.0;
    std::string tolerance_kind;  // "abs", "rel", "stderr", "max"
    bool pass = false;
    double runtime_s = 0.0;
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;

    bool pass() const;
    // JSON; the body without runtimes is deterministic for a fixed config.
    std::string json(bool with_runtime) const;
    void print_table(std::ostream& os) const;
};

struct SuiteConfig {
    std::string suite = "default";
    std::uint64_t seed = 20240611;
    long n_paths = 100000;
    double dt = 1e-4;
};

std::vector<std::string> suite_names();

// Executes every check registered for config.suite; failures are recorded, never thrown.
ValidationReport run_suite(const SuiteConfig& config);

}  // namespace wentzell
