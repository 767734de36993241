#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wentzell/path.hpp"

namespace wentzell {

struct PathTable {
    std::vector<double> t;
    std::vector<double> value;
    std::vector<double> local_time;
    std::vector<double> tau;
    std::vector<int> alive;
};

// Columns t,value,local_time,tau,alive. Numbers use the shortest round-trip form.
void write_path_csv(std::ostream& os, const AugmentedPath& aug);
PathTable read_path_csv(std::istream& is);

std::string format_double(double v);

}  // namespace wentzell
