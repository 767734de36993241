#pragma once

#include <functional>
#include <initializer_list>
#include <limits>
#include <vector>

namespace wentzell {

using RealFn = std::function<double(double)>;

// Adaptive Gauss-Kronrod on [a,b]; b may be +infinity.
double integrate(const RealFn& f, double a, double b, double rel_tol = 1e-10, unsigned max_depth = 15);

// Same, with the interval split at the given interior points (kinks, peaks).
double integrate_pieces(const RealFn& f, std::vector<double> points, double rel_tol = 1e-10);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace wentzell
