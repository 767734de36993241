#include "wentzell/interval_engine.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "json.hpp"

#include "wentzell/errors.hpp"
#include "wentzell/rng.hpp"

namespace wentzell {

const char* segment_name(SegmentKind kind) {
    switch (kind) {
        case SegmentKind::Initial: return "Initial";
        case SegmentKind::ACopy: return "ACopy";
        case SegmentKind::BCopy: return "BCopy";
    }
    return "?";
}

namespace {

int knot_at_or_after(double t, double dt) { return static_cast<int>(std::ceil(t / dt - 1e-9)); }

}  // namespace

PiecingRecord build_interval_path(double start, const BoundaryModel& model0, const BoundaryModel& model1,
                                  const TimeGrid& grid, std::uint64_t seed, const EngineOptions& options) {
    if (!(start >= 0.0 && start <= 1.0)) throw Error(ErrorCode::StartOutOfRange, "interval start must lie in [0,1]");
    PiecingRecord rec;
    rec.start = start;
    const double dt = grid.dt;
    const int n = grid.n_steps;
    auto& values = rec.path.values;
    values.reserve(n + 1);
    values.push_back(start);

    int now = 0;
    double endpoint = start;
    bool at_boundary = start == 0.0 || start == 1.0;

    if (!at_boundary) {
        // Initial segment: free BM until {0,1}; ties go to 1.
        const std::uint64_t s0 = mix(seed, 0);
        Rng rng(stream_seed(s0, StreamId::Driving));
        const std::uint64_t crossing_seed = stream_seed(s0, StreamId::Crossing);
        const double sd = std::sqrt(dt);
        double x = start;
        rec.crossovers.push_back(0.0);
        rec.crossover_hits.push_back(0.0);
        rec.crossover_knots.push_back(0);
        rec.segment_kinds.push_back(SegmentKind::Initial);
        for (int k = 1; k <= n; ++k) {
            const double xn = x + sd * rng.normal();
            bool hit1 = xn >= 1.0;
            bool hit0 = xn <= 0.0;
            double when = 0.0;
            if (hit1) {
                when = grid.time(k - 1) + dt * (1.0 - x) / (xn - x);
            } else if (hit0) {
                when = grid.time(k - 1) + dt * x / (x - xn);
            } else if (options.bridge_crossing) {
                const double u = crossing_uniform(crossing_seed, k);
                hit1 = u < bridge_cross_probability(x, xn, 1.0, dt);
                hit0 = !hit1 && 1.0 - u < bridge_cross_probability(x, xn, 0.0, dt);
                when = grid.time(k - 1) + 0.5 * dt;
            }
            if (hit1 || hit0) {
                endpoint = hit1 ? 1.0 : 0.0;
                values.push_back(endpoint);
                now = k;
                at_boundary = true;
                rec.crossovers.push_back(grid.time(k));
                rec.crossover_hits.push_back(when);
                rec.crossover_knots.push_back(k);
                break;
            }
            values.push_back(xn);
            x = xn;
        }
    } else {
        rec.crossovers.push_back(0.0);
        rec.crossover_hits.push_back(0.0);
        rec.crossover_knots.push_back(0);
    }

    std::uint64_t segment = 1;
    while (at_boundary && now < n) {
        const bool a_copy = endpoint == 0.0;
        if (rec.segment_kinds.size() < rec.crossovers.size()) {
            rec.segment_kinds.push_back(a_copy ? SegmentKind::ACopy : SegmentKind::BCopy);
        }
        const BoundaryModel& model = a_copy ? model0 : model1;
        const TimeGrid residual{(n - now) * dt, n - now, dt};
        const std::uint64_t seg_seed = mix(seed, segment++);
        EngineOptions opt = options;
        opt.stop_level = 1.0;
        opt.stop_at_death = true;
        const auto aug = build_process(model, 0.0, residual, seg_seed, opt);
        const auto& h = aug.path.values;
        const int last = static_cast<int>(h.size()) - 1;
        const auto hit = hitting_time(aug, 1.0, HitOptions{options.bridge_crossing, seg_seed});
        const auto& life = aug.path.lifetime;
        auto map = [a_copy](double v) { return a_copy ? v : 1.0 - v; };

        if (hit && (!life || *hit < *life)) {
            const int j = std::clamp(knot_at_or_after(*hit, dt), 1, std::max(last, 1));
            for (int i = 1; i < j && i <= last; ++i) values.push_back(map(std::min(h[i], 1.0)));
            endpoint = a_copy ? 1.0 : 0.0;
            values.push_back(endpoint);
            now += j;
            rec.crossovers.push_back(grid.time(now));
            rec.crossover_hits.push_back(grid.time(now - j) + *hit);
            rec.crossover_knots.push_back(now);
            continue;
        }
        int upto = last;
        if (life) upto = std::min(last, knot_at_or_after(*life, dt));
        for (int i = 1; i <= upto; ++i) values.push_back(map(std::clamp(h[i], 0.0, 1.0)));
        if (life) rec.path.lifetime = grid.time(now) + *life;
        now += upto;
        break;
    }
    rec.path.grid = grid.truncated(static_cast<int>(values.size()) - 1);
    rec.path.start = start;
    return rec;
}

SamplePath stopped_at_boundary(const PiecingRecord& record) {
    SamplePath out;
    out.grid = record.path.grid;
    out.start = record.start;
    out.values = record.path.values;
    const bool has_exit = record.start == 0.0 || record.start == 1.0 || record.crossovers.size() > 1;
    if (!has_exit) return out;
    const int k1 = (record.start == 0.0 || record.start == 1.0) ? 0 : record.crossover_knots[1];
    const double endpoint = out.values[k1];
    std::fill(out.values.begin() + k1, out.values.end(), endpoint);
    return out;
}

void write_piecing_json(std::ostream& os, const PiecingRecord& record) {
    nlohmann::json j;
    j["start"] = record.start;
    j["crossovers"] = record.crossovers;
    j["crossover_hits"] = record.crossover_hits;
    j["crossover_knots"] = record.crossover_knots;
    std::vector<std::string> kinds;
    for (auto k : record.segment_kinds) kinds.emplace_back(segment_name(k));
    j["segment_kinds"] = kinds;
    if (record.path.lifetime) {
        j["lifetime"] = *record.path.lifetime;
    } else {
        j["lifetime"] = nullptr;
    }
    os << j.dump(2) << '\n';
}

}  // namespace wentzell
