#include "wentzell/path_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "wentzell/errors.hpp"

namespace wentzell {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_path_csv(std::ostream& os, const AugmentedPath& aug) {
    const auto& p = aug.path;
    os << "t,value,local_time,tau,alive\n";
    for (std::size_t k = 0; k < p.values.size(); ++k) {
        const int ki = static_cast<int>(k);
        const double t = p.grid.time(ki);
        const double tau = aug.time_change ? (*aug.time_change)[k] : t;
        const double lt = k < aug.local_time.size() ? aug.local_time[k] : 0.0;
        os << format_double(t) << ',' << format_double(p.values[k]) << ',' << format_double(lt) << ','
           << format_double(tau) << ',' << (p.alive_at(ki) ? 1 : 0) << '\n';
    }
}

PathTable read_path_csv(std::istream& is) {
    PathTable table;
    std::string line;
    if (!std::getline(is, line) || line.rfind("t,value,local_time,tau,alive", 0) != 0) {
        throw Error(ErrorCode::Io, "missing path CSV header");
    }
    auto parse = [](const std::string& field) {
        double v = 0.0;
        auto res = std::from_chars(field.data(), field.data() + field.size(), v);
        if (res.ec != std::errc()) throw Error(ErrorCode::Io, "bad number '" + field + "'");
        return v;
    };
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string f[5];
        for (auto& s : f) {
            if (!std::getline(ss, s, ',')) throw Error(ErrorCode::Io, "short CSV row: " + line);
        }
        table.t.push_back(parse(f[0]));
        table.value.push_back(parse(f[1]));
        table.local_time.push_back(parse(f[2]));
        table.tau.push_back(parse(f[3]));
        table.alive.push_back(f[4] == "1" ? 1 : 0);
    }
    return table;
}

}  // namespace wentzell
