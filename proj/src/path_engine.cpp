#include "wentzell/path_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wentzell/errors.hpp"
#include "wentzell/rng.hpp"

namespace wentzell {

namespace {

// Early-stop rules evaluated on the real clock while stepping.
struct StopRule {
    std::optional<double> level;
    std::optional<double> local_time_above;
    bool bridge_crossing = false;
};

// True if the step prev -> cur reaches `level`; `when` receives the crossing time.
bool step_reaches(double prev, double cur, double level, double t_prev, double dt, bool bridge,
                  std::uint64_t crossing_seed, int k, double& when) {
    const double dp = prev - level;
    const double dc = cur - level;
    if (dp * dc <= 0.0) {
        when = dp == dc ? t_prev : t_prev + dt * dp / (dp - dc);
        return true;
    }
    if (bridge && crossing_uniform(crossing_seed, k) < bridge_cross_probability(prev, cur, level, dt)) {
        when = t_prev + 0.5 * dt;
        return true;
    }
    return false;
}

AugmentedPath simulate_reflected(double start, const TimeGrid& grid, std::uint64_t seed, LocalTimeScheme scheme,
                                 const StopRule& stop) {
    if (!(start >= 0.0)) throw Error(ErrorCode::NegativeStart, "reflected start must be >= 0");
    Rng driving_rng(stream_seed(seed, StreamId::Driving));
    Rng bridge_rng(stream_seed(seed, StreamId::Bridge));
    const std::uint64_t crossing_seed = stream_seed(seed, StreamId::Crossing);

    const int n = grid.n_steps;
    const double dt = grid.dt;
    const double sd = std::sqrt(dt);
    const double flat = eps_flat(dt);

    AugmentedPath out;
    auto& X = out.driving;
    auto& R = out.path.values;
    auto& L = out.local_time;
    X.reserve(n + 1);
    R.reserve(n + 1);
    L.reserve(n + 1);
    X.push_back(start);
    R.push_back(start);
    L.push_back(0.0);

    int last = n;
    if (stop.level && start == *stop.level) last = 0;
    double x = start, l = 0.0, r = start;
    for (int k = 1; k <= last; ++k) {
        const double xn = x + sd * driving_rng.normal();
        double ln = std::max(l, -xn);
        if (scheme == LocalTimeScheme::BridgeMaximum && (r <= flat || xn + l <= flat)) {
            // minimum of the Brownian bridge from x to xn over one step
            const double d = xn - x;
            const double m = 0.5 * (x + xn - std::sqrt(d * d - 2.0 * dt * std::log(bridge_rng.uniform_open0())));
            double cand = std::max(ln, -m);
            // A step with both ends above the flat band never moves L.
            if (cand > ln && r > flat && xn + cand > flat) cand = ln;
            ln = cand;
        }
        const double rn = xn + ln;
        X.push_back(xn);
        R.push_back(rn);
        L.push_back(ln);
        bool halt = false;
        if (stop.level) {
            double when = 0.0;
            halt = step_reaches(r, rn, *stop.level, grid.time(k - 1), dt, stop.bridge_crossing, crossing_seed, k, when);
        }
        if (stop.local_time_above && ln > *stop.local_time_above) halt = true;
        x = xn;
        l = ln;
        r = rn;
        if (halt) {
            last = k;
            break;
        }
    }
    out.path.grid = grid.truncated(static_cast<int>(R.size()) - 1);
    out.path.start = start;
    return out;
}

// BM from start until it reaches 0 (or `stop_level`). Returns the path and H0 if it occurred.
AugmentedPath simulate_to_origin(double start, const TimeGrid& grid, std::uint64_t seed, const EngineOptions& opt,
                                 std::optional<double>& h0) {
    if (!(start >= 0.0)) throw Error(ErrorCode::NegativeStart, "start must be >= 0");
    Rng rng(stream_seed(seed, StreamId::Driving));
    const std::uint64_t crossing_seed = stream_seed(seed, StreamId::Crossing);
    const int n = grid.n_steps;
    const double dt = grid.dt;
    const double sd = std::sqrt(dt);

    AugmentedPath out;
    out.driving.reserve(n + 1);
    out.path.values.reserve(n + 1);
    out.driving.push_back(start);
    out.path.values.push_back(start);
    h0.reset();
    if (start == 0.0) h0 = 0.0;

    int k = 1;
    double x = start;
    bool halted = opt.stop_level && start == *opt.stop_level;
    for (; k <= n && !h0 && !halted; ++k) {
        const double xn = x + sd * rng.normal();
        out.driving.push_back(xn);
        double when = 0.0;
        if (step_reaches(x, xn, 0.0, grid.time(k - 1), dt, opt.bridge_crossing, crossing_seed, k, when)) {
            h0 = when;
            out.path.values.push_back(0.0);
        } else {
            out.path.values.push_back(xn);
            if (opt.stop_level) {
                halted = step_reaches(x, xn, *opt.stop_level, grid.time(k - 1), dt, opt.bridge_crossing,
                                      crossing_seed, k, when);
            }
        }
        x = xn;
    }
    out.path.start = start;
    out.path.grid = grid.truncated(static_cast<int>(out.path.values.size()) - 1);
    return out;
}

void pad_at_origin(AugmentedPath& aug, const TimeGrid& grid, int upto) {
    aug.path.values.resize(upto + 1, 0.0);
    aug.driving.resize(upto + 1, aug.driving.empty() ? 0.0 : aug.driving.back());
    aug.path.grid = grid.truncated(upto);
}

int first_knot_at_or_after(const TimeGrid& grid, double t) {
    const int k = static_cast<int>(std::ceil(t / grid.dt - 1e-9));
    return std::clamp(k, 0, grid.n_steps);
}

void truncate_to(AugmentedPath& aug, int k) {
    if (k + 1 >= static_cast<int>(aug.path.values.size())) return;
    aug.path.values.resize(k + 1);
    aug.local_time.resize(k + 1);
    if (aug.time_change) aug.time_change->resize(k + 1);
    if (!aug.base && static_cast<int>(aug.driving.size()) > k + 1) aug.driving.resize(k + 1);
    aug.path.grid = aug.path.grid.truncated(k);
}

}  // namespace

double bridge_cross_probability(double a, double b, double level, double variance) {
    const double e = (level - a) * (level - b);
    if (e <= 0.0) return 1.0;
    const double q = 2.0 * e / variance;
    return q > 50.0 ? 0.0 : std::exp(-q);
}

double clock_tau(const ClockRecord& record, double s) {
    const auto& c = record.inverse_clock;
    const auto it = std::upper_bound(c.begin(), c.end(), s);
    if (it == c.begin()) return 0.0;
    if (it == c.end()) return record.grid.time(record.grid.n_steps);
    const int k = static_cast<int>(it - c.begin()) - 1;
    return record.grid.time(k) + record.grid.dt * (s - c[k]) / (c[k + 1] - c[k]);
}

double crossing_uniform(std::uint64_t seed, std::int64_t k) {
    return (static_cast<double>(mix(seed, static_cast<std::uint64_t>(k)) >> 11) + 0.5) * 0x1.0p-53;
}

SamplePath sample_bm(double start, const TimeGrid& grid, std::uint64_t seed) {
    Rng rng(stream_seed(seed, StreamId::Driving));
    SamplePath p;
    p.grid = grid;
    p.start = start;
    p.values.resize(grid.n_steps + 1);
    p.values[0] = start;
    const double sd = std::sqrt(grid.dt);
    for (int k = 1; k <= grid.n_steps; ++k) p.values[k] = p.values[k - 1] + sd * rng.normal();
    return p;
}

std::pair<std::vector<double>, std::vector<double>> levy_reflection(std::span<const double> driving) {
    std::vector<double> reflected(driving.size()), local(driving.size());
    double m = driving.empty() ? 0.0 : std::max(0.0, driving[0]);
    for (std::size_t k = 0; k < driving.size(); ++k) {
        m = std::max(m, driving[k]);
        local[k] = m;
        reflected[k] = m - driving[k];
    }
    return {reflected, local};
}

AugmentedPath reflect_with_local_time(double start, const TimeGrid& grid, std::uint64_t seed,
                                      const EngineOptions& options) {
    StopRule stop;
    stop.level = options.stop_level;
    stop.local_time_above = options.stop_local_time;
    stop.bridge_crossing = options.bridge_crossing;
    return simulate_reflected(start, grid, seed, options.scheme, stop);
}

std::vector<double> local_time_downcrossing(const AugmentedPath& aug, double eps) {
    if (!(eps > 0.0)) throw Error(ErrorCode::BadEps, "eps must be > 0");
    const auto& v = aug.path.values;
    const auto& L = aug.local_time;
    std::vector<double> out(v.size(), 0.0);
    // Knots miss maxima between them by about 0.5826 sqrt(dt) (-zeta(1/2)/sqrt(2 pi)),
    // so the arming level is shifted down by that much.
    const double arm = eps - 0.5826 * std::sqrt(aug.path.grid.dt);
    // Upcrossings 0 -> eps: the same limit as downcrossings, without losing the
    // unfinished last excursion.
    bool ready = false;
    long count = 0;
    for (std::size_t k = 0; k < v.size(); ++k) {
        // A knot at 0, or a step in which the bridge touched 0.
        if (v[k] <= 0.0 || (k > 0 && k < L.size() && L[k] > L[k - 1])) ready = true;
        if (ready && v[k] >= arm) {
            ++count;
            ready = false;
        }
        out[k] = eps * count;
    }
    return out;
}

AugmentedPath sticky_time_change(const AugmentedPath& aug, double gamma, std::optional<int> max_steps) {
    const auto& G = aug.path.grid;
    const auto& R = aug.path.values;
    const auto& L = aug.local_time;
    const int N = G.n_steps;
    const double dt = G.dt;

    ClockRecord rec;
    rec.grid = G;
    rec.reflected = R;
    rec.local_time = L;
    rec.inverse_clock.resize(N + 1);
    for (int k = 0; k <= N; ++k) rec.inverse_clock[k] = G.time(k) + gamma * L[k];
    const auto& c = rec.inverse_clock;

    int ns = static_cast<int>(std::ceil(c[N] / dt - 1e-9));
    if (max_steps) ns = std::min(ns, *max_steps);
    ns = std::max(ns, 0);

    AugmentedPath out;
    out.driving = aug.driving;
    out.kill_level = aug.kill_level;
    out.path.grid = TimeGrid{ns * dt, ns, dt};
    out.path.start = aug.path.start;
    out.path.values.resize(ns + 1);
    out.local_time.resize(ns + 1);
    std::vector<double> tau(ns + 1);
    int k = 0;
    for (int j = 0; j <= ns; ++j) {
        const double s = j * dt;
        while (k < N && c[k + 1] <= s) ++k;
        if (k == N) {
            tau[j] = G.time(N);
            out.path.values[j] = R[N];
            out.local_time[j] = L[N];
            continue;
        }
        const double phi = (s - c[k]) / (c[k + 1] - c[k]);
        tau[j] = G.time(k) + phi * dt;
        out.path.values[j] = R[k] + phi * (R[k + 1] - R[k]);
        out.local_time[j] = L[k] + phi * (L[k + 1] - L[k]);
    }
    out.time_change = std::move(tau);
    if (aug.path.lifetime) {
        // tau^{-1} at the real lifetime
        const double z = *aug.path.lifetime;
        const int kz = std::min(static_cast<int>(z / dt), N - 1);
        const double phi = std::clamp((z - G.time(kz)) / dt, 0.0, 1.0);
        out.path.lifetime = c[kz] + phi * (c[kz + 1] - c[kz]);
    }
    out.base = std::move(rec);
    return out;
}

SamplePath kill_at_level(const SamplePath& path, const std::vector<double>& A, double level) {
    if (A.size() != path.values.size()) throw Error(ErrorCode::NotAdditiveFunctional, "functional grid mismatch");
    if (!A.empty() && A[0] != 0.0) throw Error(ErrorCode::NotAdditiveFunctional, "A_0 must be 0");
    for (std::size_t k = 1; k < A.size(); ++k) {
        if (A[k] < A[k - 1]) throw Error(ErrorCode::NotAdditiveFunctional, "functional decreases");
    }
    SamplePath out = path;
    for (std::size_t k = 1; k < A.size(); ++k) {
        if (A[k] > level) {
            const double t0 = path.grid.time(static_cast<int>(k) - 1);
            const double zeta = t0 + path.grid.dt * (level - A[k - 1]) / (A[k] - A[k - 1]);
            if (!out.lifetime || zeta < *out.lifetime) out.lifetime = zeta;
            break;
        }
    }
    return out;
}

double kill_threshold(double beta, std::uint64_t seed) {
    Rng rng(stream_seed(seed, StreamId::Kill));
    return rng.exponential(beta);
}

SamplePath pchaf_kill(const SamplePath& path, const std::vector<double>& functional, double beta, std::uint64_t seed) {
    return kill_at_level(path, functional, kill_threshold(beta, seed));
}

AugmentedPath build_process(const BoundaryModel& model, double start, const TimeGrid& grid, std::uint64_t seed,
                            const EngineOptions& options) {
    if (!(start >= 0.0) || !std::isfinite(start)) {
        throw Error(ErrorCode::StartOutOfRange, "start must lie in [0, inf)");
    }
    StopRule stop;
    stop.level = options.stop_level;
    stop.local_time_above = options.stop_local_time;
    stop.bridge_crossing = options.bridge_crossing;

    switch (model.mode) {
        case Mode::Reflecting:
            return simulate_reflected(start, grid, seed, options.scheme, stop);

        case Mode::Elastic: {
            const double S = kill_threshold(model.beta, seed);
            if (options.stop_at_death) stop.local_time_above = std::min(S, options.stop_local_time.value_or(S));
            auto aug = simulate_reflected(start, grid, seed, options.scheme, stop);
            aug.path = kill_at_level(aug.path, aug.local_time, S);
            aug.kill_level = S;
            return aug;
        }

        case Mode::Sticky: {
            auto refl = simulate_reflected(start, grid, seed, options.scheme, stop);
            return sticky_time_change(refl, model.gamma, grid.n_steps);
        }

        case Mode::General: {
            const double S = kill_threshold(model.beta, seed);
            if (options.stop_at_death) stop.local_time_above = std::min(S, options.stop_local_time.value_or(S));
            auto refl = simulate_reflected(start, grid, seed, options.scheme, stop);
            auto aug = sticky_time_change(refl, model.gamma, grid.n_steps);
            aug.path = kill_at_level(aug.path, aug.local_time, S);
            aug.kill_level = S;
            if (options.stop_at_death && aug.path.lifetime) {
                truncate_to(aug, first_knot_at_or_after(aug.path.grid, *aug.path.lifetime));
            }
            return aug;
        }

        case Mode::Absorbing:
        case Mode::TrapKill: {
            std::optional<double> h0;
            auto aug = simulate_to_origin(start, grid, seed, options, h0);
            const int reached = aug.path.grid.n_steps;
            if (h0) {
                if (model.mode == Mode::TrapKill) {
                    const double hold = kill_threshold(model.beta, seed);
                    aug.path.lifetime = *h0 + hold;
                    aug.kill_level = hold;
                } else if (model.absorb == AbsorbPolicy::Kill) {
                    aug.path.lifetime = *h0;
                }
                int upto = grid.n_steps;
                if (options.stop_at_death && aug.path.lifetime) {
                    upto = std::max(reached, first_knot_at_or_after(grid, *aug.path.lifetime));
                }
                pad_at_origin(aug, grid, upto);
            }
            aug.local_time.assign(aug.path.values.size(), 0.0);
            return aug;
        }
    }
    throw Error(ErrorCode::StartOutOfRange, "unknown mode");
}

std::optional<double> hitting_time(const SamplePath& path, double level, const HitOptions& options) {
    const auto& v = path.values;
    if (v.empty()) return std::nullopt;
    if (v[0] == level) return 0.0;
    const std::uint64_t crossing_seed = stream_seed(options.seed, StreamId::Crossing);
    const int alive = path.alive_knots();
    for (int k = 1; k < static_cast<int>(v.size()); ++k) {
        double when = 0.0;
        if (step_reaches(v[k - 1], v[k], level, path.grid.time(k - 1), path.grid.dt, options.bridge_crossing,
                         crossing_seed, k, when)) {
            if (path.lifetime && when >= *path.lifetime) return std::nullopt;
            return when;
        }
        if (k >= alive) break;
    }
    return std::nullopt;
}

std::optional<double> hitting_time(const AugmentedPath& aug, double level, const HitOptions& options) {
    if (!aug.base) return hitting_time(aug.path, level, options);
    const auto& rec = *aug.base;
    SamplePath real;
    real.grid = rec.grid;
    real.values = rec.reflected;
    real.start = aug.path.start;
    auto hit = hitting_time(real, level, options);
    if (!hit) return std::nullopt;
    const double dt = rec.grid.dt;
    const int k = std::min(static_cast<int>(*hit / dt), rec.grid.n_steps - 1);
    if (k < 0) return 0.0;
    const double phi = std::clamp((*hit - rec.grid.time(k)) / dt, 0.0, 1.0);
    const double s = rec.inverse_clock[k] + phi * (rec.inverse_clock[k + 1] - rec.inverse_clock[k]);
    if (aug.path.lifetime && s >= *aug.path.lifetime) return std::nullopt;
    return s;
}

std::optional<double> exit_time(const AugmentedPath& aug, double lo, double hi, const HitOptions& options) {
    const auto a = hitting_time(aug, lo, options);
    const auto b = hitting_time(aug, hi, options);
    if (a && b) return std::min(*a, *b);
    return a ? a : b;
}

}  // namespace wentzell
