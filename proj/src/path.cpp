#include "wentzell/path.hpp"

#include <string>

#include "wentzell/errors.hpp"

namespace wentzell {

TimeGrid TimeGrid::make(double t_max, int n_steps) {
    if (!(t_max > 0.0)) throw Error(ErrorCode::BadGrid, "t_max must be > 0");
    if (n_steps < 1) throw Error(ErrorCode::BadGrid, "n_steps must be >= 1");
    return {t_max, n_steps, t_max / n_steps};
}

TimeGrid TimeGrid::truncated(int k) const {
    if (k < 0 || k > n_steps) throw Error(ErrorCode::BadGrid, "truncation " + std::to_string(k) + " outside grid");
    return {k * dt, k, dt};
}

std::optional<double> SamplePath::state(int k) const {
    if (!alive_at(k)) return std::nullopt;
    return values[k];
}

int SamplePath::alive_knots() const {
    int n = static_cast<int>(values.size());
    while (n > 0 && !alive_at(n - 1)) --n;
    return n;
}

}  // namespace wentzell
