#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "wentzell/model.hpp"
#include "wentzell/path.hpp"
#include "wentzell/path_engine.hpp"

namespace wentzell {

enum class SegmentKind { Initial, ACopy, BCopy };

const char* segment_name(SegmentKind kind);

// Segment i runs from crossovers[i]; when start is 0 or 1 the empty initial
// segment is dropped, so crossovers[0] = S_1 = 0 and kinds[0] is a copy.
struct PiecingRecord {
    std::vector<double> crossovers;     // snapped to grid knots
    std::vector<double> crossover_hits; // interpolated hitting times
    std::vector<int> crossover_knots;
    std::vector<SegmentKind> segment_kinds;
    double start = 0.0;
    SamplePath path;
};

PiecingRecord build_interval_path(double start, const BoundaryModel& model0, const BoundaryModel& model1,
                                  const TimeGrid& grid, std::uint64_t seed, const EngineOptions& options = {});

// The path stopped at T_1, the first hit of {0,1}.
SamplePath stopped_at_boundary(const PiecingRecord& record);

void write_piecing_json(std::ostream& os, const PiecingRecord& record);

}  // namespace wentzell
