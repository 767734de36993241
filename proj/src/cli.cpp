#include "wentzell/cli.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "wentzell/errors.hpp"
#include "wentzell/interval_engine.hpp"
#include "wentzell/kernels.hpp"
#include "wentzell/path_engine.hpp"
#include "wentzell/path_io.hpp"
#include "wentzell/rng.hpp"
#include "wentzell/validation.hpp"

namespace wentzell {

namespace {

const std::vector<std::string> kKeys{
    "command", "mode",  "a0",   "b0",     "c0",   "beta", "gamma",  "absorb", "mode1", "a1",
    "b1",      "c1",    "beta1", "gamma1", "absorb1", "start", "t-max", "steps", "paths", "seed",
    "lambda",  "time",  "out",  "format", "suite", "dt",
};

using KeyMap = std::map<std::string, std::string>;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool known_key(const std::string& key) { return std::find(kKeys.begin(), kKeys.end(), key) != kKeys.end(); }

KeyMap parse_file(const std::string& text) {
    KeyMap m;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorCode::TypeMismatch, "config line " + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::replace(key.begin(), key.end(), '_', '-');
        if (!known_key(key)) throw Error(ErrorCode::UnknownKey, "config key '" + key + "'");
        m[key] = trim(line.substr(eq + 1));
    }
    return m;
}

double to_real(const KeyMap& m, const std::string& key) {
    const auto& s = m.at(key);
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw Error(ErrorCode::TypeMismatch, key + " = '" + s + "' is not a finite number");
    }
    return v;
}

double to_nonneg(const KeyMap& m, const std::string& key) {
    const double v = to_real(m, key);
    if (v < 0.0) throw Error(ErrorCode::TypeMismatch, key + " must be non-negative, got " + m.at(key));
    return v;
}

double to_positive(const KeyMap& m, const std::string& key) {
    const double v = to_real(m, key);
    if (!(v > 0.0)) throw Error(ErrorCode::TypeMismatch, key + " must be positive, got " + m.at(key));
    return v;
}

long long to_count(const KeyMap& m, const std::string& key) {
    const auto& s = m.at(key);
    long long v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || v <= 0) {
        throw Error(ErrorCode::TypeMismatch, key + " = '" + s + "' is not a positive integer");
    }
    return v;
}

std::uint64_t to_seed(const std::string& key, const std::string& s) {
    std::uint64_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw Error(ErrorCode::TypeMismatch, key + " = '" + s + "' is not an unsigned 64-bit integer");
    }
    return v;
}

std::optional<BoundaryModel> build_model(const KeyMap& m, const std::string& suffix, Side side) {
    auto key = [&](const char* base) { return std::string(base) + suffix; };
    auto has = [&](const char* base) { return m.count(key(base)) > 0; };
    auto need = [&](const char* base, const std::string& mode) {
        if (!has(base)) throw Error(ErrorCode::MissingRequired, key(base) + " (required by mode " + mode + ")");
        return to_nonneg(m, key(base));
    };
    // The triple keys are a0/b0/c0 for the left end and a1/b1/c1 for the right.
    const std::string a = suffix.empty() ? "a0" : "a1";
    const std::string b = suffix.empty() ? "b0" : "b1";
    const std::string c = suffix.empty() ? "c0" : "c1";
    const bool has_triple = m.count(a) || m.count(b) || m.count(c);

    if (has("mode")) {
        if (has_triple) {
            throw Error(ErrorCode::TypeMismatch, key("mode") + " conflicts with " + a + "/" + b + "/" + c);
        }
        const std::string mode = m.at(key("mode"));
        AbsorbPolicy policy = AbsorbPolicy::Stop;
        if (has("absorb")) {
            const auto& p = m.at(key("absorb"));
            if (p == "stop") {
                policy = AbsorbPolicy::Stop;
            } else if (p == "kill") {
                policy = AbsorbPolicy::Kill;
            } else {
                throw Error(ErrorCode::TypeMismatch, key("absorb") + " = '" + p + "' (expected stop or kill)");
            }
        }
        if (mode == "reflecting") return BoundaryModel::reflecting(side);
        if (mode == "absorbing") return BoundaryModel::absorbing(policy, side);
        if (mode == "elastic") return BoundaryModel::elastic(need("beta", mode), side);
        if (mode == "sticky") return BoundaryModel::sticky(need("gamma", mode), side);
        if (mode == "general") return BoundaryModel::general(need("beta", mode), need("gamma", mode), side);
        if (mode == "trapkill" || mode == "trap-kill") return BoundaryModel::trap_kill(need("beta", mode), side);
        throw Error(ErrorCode::TypeMismatch,
                    key("mode") + " = '" + mode + "' (expected reflecting, absorbing, elastic, sticky, general, trapkill)");
    }
    if (has_triple) {
        const double av = m.count(a) ? to_nonneg(m, a) : 0.0;
        const double bv = m.count(b) ? to_nonneg(m, b) : 1.0;
        const double cv = m.count(c) ? to_nonneg(m, c) : 0.0;
        return normalize_wentzell(av, bv, cv, side);
    }
    return std::nullopt;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing: " + std::strerror(errno));
    return f;
}

void check_written(std::ostream& os, const std::string& path) {
    os.flush();
    if (!os) throw Error(ErrorCode::Io, "write to '" + path + "' failed");
}

// <stem>_<i><ext>
std::string indexed_path(const std::string& path, long i) {
    const auto slash = path.find_last_of('/');
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
        return path + "_" + std::to_string(i);
    }
    return path.substr(0, dot) + "_" + std::to_string(i) + path.substr(dot);
}

nlohmann::ordered_json path_json(const AugmentedPath& aug, std::uint64_t seed) {
    nlohmann::ordered_json j;
    j["seed"] = seed;
    std::vector<double> t, tau;
    for (std::size_t k = 0; k < aug.path.values.size(); ++k) {
        t.push_back(aug.path.grid.time(static_cast<int>(k)));
        tau.push_back(aug.time_change ? (*aug.time_change)[k] : t.back());
    }
    j["t"] = t;
    j["value"] = aug.path.values;
    j["local_time"] = aug.local_time;
    j["tau"] = tau;
    if (aug.path.lifetime) {
        j["lifetime"] = *aug.path.lifetime;
    } else {
        j["lifetime"] = nullptr;
    }
    return j;
}

int run_simulate(const RunConfig& cfg, std::ostream& out) {
    const auto grid = TimeGrid::make(cfg.t_max, cfg.steps);
    std::vector<AugmentedPath> paths;
    std::vector<std::uint64_t> seeds;
    for (long i = 0; i < cfg.paths; ++i) {
        seeds.push_back(cfg.paths == 1 ? cfg.seed : mix(cfg.seed, static_cast<std::uint64_t>(i)));
        paths.push_back(build_process(cfg.model, cfg.start, grid, seeds.back()));
    }
    if (cfg.format == Format::Json) {
        nlohmann::ordered_json j;
        j["model"] = describe(cfg.model);
        auto arr = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < paths.size(); ++i) arr.push_back(path_json(paths[i], seeds[i]));
        j["paths"] = arr;
        if (cfg.out.empty()) {
            out << j.dump(2) << '\n';
        } else {
            auto f = open_out(cfg.out);
            f << j.dump(2) << '\n';
            check_written(f, cfg.out);
        }
        return 0;
    }
    for (std::size_t i = 0; i < paths.size(); ++i) {
        if (cfg.out.empty()) {
            if (paths.size() > 1) out << "# path " << i << " seed " << seeds[i] << '\n';
            write_path_csv(out, paths[i]);
        } else {
            const std::string name = paths.size() > 1 ? indexed_path(cfg.out, static_cast<long>(i)) : cfg.out;
            auto f = open_out(name);
            write_path_csv(f, paths[i]);
            check_written(f, name);
        }
    }
    return 0;
}

int run_kernel(const RunConfig& cfg, std::ostream& out, bool resolvent) {
    const double param = resolvent ? cfg.lambda : cfg.time;
    const double y_max =
        resolvent ? cfg.start + 12.0 / std::sqrt(2.0 * cfg.lambda) : cfg.start + 6.0 * std::sqrt(cfg.time);
    const auto rows = kernel_table(cfg.model, param, cfg.start, y_max, 101, resolvent);
    auto emit = [&](std::ostream& os) {
        if (cfg.format == Format::Json) {
            nlohmann::ordered_json j;
            j["model"] = describe(cfg.model);
            j["kernel"] = resolvent ? "resolvent" : "transition";
            j[resolvent ? "lambda" : "t"] = param;
            j["x"] = cfg.start;
            auto arr = nlohmann::ordered_json::array();
            for (const auto& r : rows) {
                arr.push_back({{"y", r.y}, {"density", r.density}, {"atom0", r.atom0}, {"atom1", r.atom1}});
            }
            j["rows"] = arr;
            os << j.dump(2) << '\n';
        } else {
            write_kernel_table(os, cfg.model, resolvent, rows);
        }
    };
    if (cfg.out.empty()) {
        emit(out);
    } else {
        auto f = open_out(cfg.out);
        emit(f);
        check_written(f, cfg.out);
    }
    return 0;
}

int run_interval(const RunConfig& cfg, std::ostream& out) {
    const auto grid = TimeGrid::make(cfg.t_max, cfg.steps);
    const auto rec = build_interval_path(cfg.start, cfg.model, cfg.model1, grid, cfg.seed);
    auto emit = [&](std::ostream& os) {
        if (cfg.format == Format::Json) {
            write_piecing_json(os, rec);
        } else {
            AugmentedPath aug;
            aug.path = rec.path;
            write_path_csv(os, aug);
        }
    };
    if (cfg.out.empty()) {
        emit(out);
    } else {
        auto f = open_out(cfg.out);
        emit(f);
        check_written(f, cfg.out);
    }
    return 0;
}

int run_validate(const RunConfig& cfg, std::ostream& out) {
    SuiteConfig sc;
    sc.suite = cfg.suite;
    sc.seed = cfg.seed;
    sc.n_paths = cfg.paths;
    sc.dt = cfg.dt;
    const auto report = run_suite(sc);
    if (cfg.format == Format::Json) {
        out << report.json(true) << '\n';
    } else {
        report.print_table(out);
    }
    if (!cfg.out.empty()) {
        auto f = open_out(cfg.out);
        f << report.json(false) << '\n';
        check_written(f, cfg.out);
    }
    return report.pass() ? 0 : 1;
}

}  // namespace

std::string usage() {
    return "usage: wentzell_cli <simulate|kernel|resolvent|interval|validate> [options]\n"
           "  --mode reflecting|absorbing|elastic|sticky|general|trapkill   boundary at 0\n"
           "  --a0 --b0 --c0     Wentzell triple at 0 (instead of --mode)\n"
           "  --beta --gamma     killing rate, stickiness\n"
           "  --absorb stop|kill absorbing reading\n"
           "  --mode1 --a1 --b1 --c1 --beta1 --gamma1 --absorb1   boundary at 1 (interval)\n"
           "  --start x  --t-max T  --steps N  --paths n  --seed s\n"
           "  --lambda l  --time t  --out path  --format csv|json\n"
           "  --suite default|quick|analytic|properties|canary|empty  --dt h   (validate)\n"
           "  --config file      key = value lines, '#' comments; flags win\n"
           "  $" + std::string(kSeedEnv) + " sets the seed when --seed is absent.\n";
}

RunConfig parse_config(const std::vector<std::string>& args, const std::optional<std::string>& file_text) {
    KeyMap m;
    if (file_text) m = parse_file(*file_text);

    CLI::App app{"wentzell"};
    app.set_help_flag();
    std::map<std::string, std::string> flag_values;
    for (const auto& k : kKeys) {
        if (k == "command") continue;
        app.add_option("--" + k, flag_values[k]);
    }
    std::string command;
    app.add_option("command", command);
    std::string config_path;
    app.add_option("--config", config_path);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ExtrasError& e) {
        throw Error(ErrorCode::UnknownKey, e.what());
    } catch (const CLI::ParseError& e) {
        throw Error(ErrorCode::TypeMismatch, e.what());
    }
    for (const auto& k : kKeys) {
        if (k != "command" && app.count("--" + k) > 0) m[k] = flag_values[k];
    }
    if (!command.empty()) m["command"] = command;

    RunConfig cfg;
    if (!m.count("command")) throw Error(ErrorCode::MissingRequired, "command");
    const auto& cmd = m.at("command");
    if (cmd == "simulate") {
        cfg.command = Command::Simulate;
    } else if (cmd == "kernel") {
        cfg.command = Command::Kernel;
    } else if (cmd == "resolvent") {
        cfg.command = Command::Resolvent;
    } else if (cmd == "interval") {
        cfg.command = Command::Interval;
    } else if (cmd == "validate") {
        cfg.command = Command::Validate;
    } else {
        throw Error(ErrorCode::TypeMismatch, "command = '" + cmd + "'");
    }

    auto model = build_model(m, "", Side::AtZero);
    if (cfg.command != Command::Validate) {
        if (!model) throw Error(ErrorCode::MissingRequired, "mode (or a0/b0/c0)");
        cfg.model = *model;
    }
    if (auto m1 = build_model(m, "1", Side::AtOne)) cfg.model1 = *m1;

    if (m.count("start")) {
        cfg.start = to_real(m, "start");
        if (cfg.start < 0.0) throw Error(ErrorCode::NegativeStart, "start = " + m.at("start"));
    }
    if (cfg.command == Command::Interval && (cfg.start > 1.0)) {
        throw Error(ErrorCode::StartOutOfRange, "start = " + m.at("start") + " is outside [0,1]");
    }
    if (cfg.command == Command::Simulate || cfg.command == Command::Interval) {
        for (const char* k : {"t-max", "steps"}) {
            if (!m.count(k)) throw Error(ErrorCode::MissingRequired, k);
        }
    }
    if (m.count("t-max")) cfg.t_max = to_positive(m, "t-max");
    if (m.count("steps")) {
        const auto n = to_count(m, "steps");
        if (n > std::numeric_limits<int>::max()) throw Error(ErrorCode::TypeMismatch, "steps too large");
        cfg.steps = static_cast<int>(n);
    }
    if (cfg.command == Command::Validate) cfg.paths = SuiteConfig{}.n_paths;
    if (m.count("paths")) cfg.paths = static_cast<long>(to_count(m, "paths"));

    if (cfg.command == Command::Validate) cfg.seed = SuiteConfig{}.seed;
    if (m.count("seed")) {
        cfg.seed = to_seed("seed", m.at("seed"));
    } else if (const char* env = std::getenv(kSeedEnv); env && *env) {
        cfg.seed = to_seed(kSeedEnv, env);
    }

    if (cfg.command == Command::Kernel && !m.count("time")) throw Error(ErrorCode::MissingRequired, "time");
    if (cfg.command == Command::Resolvent && !m.count("lambda")) throw Error(ErrorCode::MissingRequired, "lambda");
    if (m.count("time")) cfg.time = to_positive(m, "time");
    if (m.count("lambda")) cfg.lambda = to_positive(m, "lambda");
    if (m.count("out")) cfg.out = m.at("out");
    if (m.count("format")) {
        const auto& f = m.at("format");
        if (f == "csv") {
            cfg.format = Format::Csv;
        } else if (f == "json") {
            cfg.format = Format::Json;
        } else {
            throw Error(ErrorCode::TypeMismatch, "format = '" + f + "' (expected csv or json)");
        }
    }
    if (m.count("suite")) {
        cfg.suite = m.at("suite");
        const auto names = suite_names();
        if (std::find(names.begin(), names.end(), cfg.suite) == names.end()) {
            throw Error(ErrorCode::TypeMismatch, "suite = '" + cfg.suite + "'");
        }
    }
    if (m.count("dt")) cfg.dt = to_positive(m, "dt");
    return cfg;
}

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        switch (config.command) {
            case Command::Simulate: return run_simulate(config, out);
            case Command::Kernel: return run_kernel(config, out, false);
            case Command::Resolvent: return run_kernel(config, out, true);
            case Command::Interval: return run_interval(config, out);
            case Command::Validate: return run_validate(config, out);
        }
    } catch (const Error& e) {
        if (e.code() != ErrorCode::Io) throw;
        err << e.what() << '\n';
        return 1;
    }
    return 0;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    if (args.empty() || std::find(args.begin(), args.end(), "--help") != args.end() ||
        std::find(args.begin(), args.end(), "-h") != args.end()) {
        (args.empty() ? err : out) << usage();
        return args.empty() ? 2 : 0;
    }
    try {
        std::optional<std::string> file_text;
        for (std::size_t i = 0; i + 1 < args.size(); ++i) {
            if (args[i] == "--config") {
                std::ifstream f(args[i + 1]);
                if (!f) {
                    throw Error(ErrorCode::Io,
                                "cannot read config '" + args[i + 1] + "': " + std::strerror(errno));
                }
                std::stringstream ss;
                ss << f.rdbuf();
                file_text = ss.str();
            }
        }
        const auto cfg = parse_config(args, file_text);
        return execute(cfg, out, err);
    } catch (const Error& e) {
        err << e.what() << '\n';
        return e.code() == ErrorCode::Io ? 1 : 2;
    }
}

}  // namespace wentzell
