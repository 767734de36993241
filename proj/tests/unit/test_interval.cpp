#include "doctest.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "json.hpp"

#include "wentzell/errors.hpp"
#include "wentzell/interval_engine.hpp"
#include "wentzell/rng.hpp"
#include "wentzell/stats.hpp"

using namespace wentzell;

namespace {

double two_sample_ks(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= v) ++i;
        while (j < b.size() && b[j] <= v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
    }
    return d;
}

EngineOptions with_crossing() {
    EngineOptions o;
    o.bridge_crossing = true;
    return o;
}

}  // namespace

TEST_CASE("start at 0 begins with an A-copy") {
    const auto rec = build_interval_path(0.0, BoundaryModel::elastic(1.0), BoundaryModel::reflecting(Side::AtOne),
                                         TimeGrid::make(1.0, 1000), 3);
    REQUIRE(!rec.crossovers.empty());
    CHECK(rec.crossovers[0] == 0.0);
    CHECK(rec.segment_kinds[0] == SegmentKind::ACopy);
    const auto at1 = build_interval_path(1.0, BoundaryModel::reflecting(), BoundaryModel::reflecting(Side::AtOne),
                                         TimeGrid::make(1.0, 1000), 3);
    CHECK(at1.segment_kinds[0] == SegmentKind::BCopy);
    CHECK_THROWS_AS(build_interval_path(1.5, BoundaryModel::reflecting(), BoundaryModel::reflecting(Side::AtOne),
                                        TimeGrid::make(1.0, 10), 1),
                    Error);
}

TEST_CASE("reflecting at both ends: never dies, stays in [0,1], crossovers increase") {
    const auto grid = TimeGrid::make(5.0, 5000);
    for (long i = 0; i < 50; ++i) {
        const auto rec = build_interval_path(0.4, BoundaryModel::reflecting(), BoundaryModel::reflecting(Side::AtOne),
                                             grid, mix(17, i));
        CHECK(!rec.path.lifetime);
        CHECK(rec.path.values.size() == 5001);
        CHECK(std::all_of(rec.path.values.begin(), rec.path.values.end(), [](double v) { return v >= 0.0 && v <= 1.0; }));
        for (std::size_t k = 1; k < rec.crossovers.size(); ++k) CHECK(rec.crossovers[k] > rec.crossovers[k - 1]);
        for (std::size_t k = 1; k < rec.segment_kinds.size(); ++k) {
            CHECK(rec.segment_kinds[k] != rec.segment_kinds[k - 1]);
        }
    }
}

TEST_CASE("Elastic(1) from 0 dies before reaching 1 with probability 1/2") {
    const auto grid = TimeGrid::make(10.0, 10000);
    const long n = 10000;
    auto died = parallel_map<double>(n, [&](long i) {
        const auto rec = build_interval_path(0.0, BoundaryModel::elastic(1.0), BoundaryModel::reflecting(Side::AtOne),
                                             grid, mix(21, i), with_crossing());
        return rec.crossovers.size() == 1 && rec.path.lifetime ? 1.0 : 0.0;
    });
    const auto e = estimate(died, 21);
    CHECK(std::abs(e.mean - 0.5) < 3.0 * e.std_error);
}

TEST_CASE("stopped_at_boundary") {
    const auto refl = BoundaryModel::reflecting();
    const auto refl1 = BoundaryModel::reflecting(Side::AtOne);
    const auto grid = TimeGrid::make(4.0, 4000);
    const auto zero = stopped_at_boundary(build_interval_path(0.0, refl, refl1, grid, 5));
    CHECK(std::all_of(zero.values.begin(), zero.values.end(), [](double v) { return v == 0.0; }));

    const long n = 20000;
    auto res = parallel_map<std::pair<double, double>>(n, [&](long i) {
        const auto rec = build_interval_path(0.5, refl, refl1, grid, mix(31, i), with_crossing());
        const auto stopped = stopped_at_boundary(rec);
        const double t1 = rec.crossovers.size() > 1 ? rec.crossover_hits[1] : grid.t_max;
        return std::pair{stopped.values.back() == 1.0 ? 1.0 : 0.0, t1};
    });
    std::vector<double> at1, t1;
    for (auto [a, t] : res) {
        at1.push_back(a);
        t1.push_back(t);
    }
    const auto e = estimate(at1, 31);
    CHECK(std::abs(e.mean - 0.5) < 3.0 * e.std_error);
    CHECK(std::abs(estimate(t1, 31).mean / 0.25 - 1.0) < 0.03);
}

TEST_CASE("killed at 1, the interval process is the half-line process") {
    const auto m0 = BoundaryModel::elastic(1.0);
    const auto grid = TimeGrid::make(0.5, 500);
    const long n = 40000;
    const double dead = 2.0;
    const int knots[] = {100, 250, 500};
    auto interval = parallel_map<std::array<double, 3>>(n, [&](long i) {
        const auto rec = build_interval_path(0.3, m0, BoundaryModel::reflecting(Side::AtOne), grid, mix(41, i));
        std::array<double, 3> out{};
        for (int j = 0; j < 3; ++j) {
            const int k = knots[j];
            if (k >= static_cast<int>(rec.path.values.size()) || !rec.path.alive_at(k)) {
                out[j] = dead;
                continue;
            }
            // any crossover at 1 up to knot k kills
            bool hit1 = false;
            for (std::size_t c = 1; c < rec.crossover_knots.size(); ++c) {
                hit1 = hit1 || (rec.crossover_knots[c] <= k && rec.path.values[rec.crossover_knots[c]] == 1.0);
            }
            out[j] = hit1 ? dead : rec.path.values[k];
        }
        return out;
    });
    EngineOptions opt;
    opt.stop_level = 1.0;
    auto half = parallel_map<std::array<double, 3>>(n, [&](long i) {
        const auto s = mix(42, i);
        const auto aug = build_process(m0, 0.3, grid, s, opt);
        const auto h1 = hitting_time(aug, 1.0);
        std::array<double, 3> out{};
        for (int j = 0; j < 3; ++j) {
            const int k = knots[j];
            const bool gone = k >= static_cast<int>(aug.path.values.size()) || !aug.path.alive_at(k) ||
                              (h1 && *h1 <= grid.time(k));
            out[j] = gone ? dead : aug.path.values[k];
        }
        return out;
    });
    for (int j = 0; j < 3; ++j) {
        std::vector<double> a, b;
        for (const auto& v : interval) a.push_back(v[j]);
        for (const auto& v : half) b.push_back(v[j]);
        INFO("knot " << knots[j]);
        CHECK(two_sample_ks(a, b) < 0.02);
    }
}

TEST_CASE("piecing JSON sidecar") {
    const auto rec = build_interval_path(0.5, BoundaryModel::sticky(1.0), BoundaryModel::elastic(1.0, Side::AtOne),
                                         TimeGrid::make(2.0, 2000), 8);
    std::ostringstream os;
    write_piecing_json(os, rec);
    const auto j = nlohmann::json::parse(os.str());
    CHECK(j["crossovers"].size() == rec.crossovers.size());
    CHECK(j["segment_kinds"][0] == "Initial");
    CHECK(j["start"] == 0.5);
}
