#include "wentzell/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "wentzell/errors.hpp"
#include "wentzell/interval_engine.hpp"
#include "wentzell/kernels.hpp"
#include "wentzell/laws.hpp"
#include "wentzell/quadrature.hpp"
#include "wentzell/rng.hpp"

namespace wentzell {

double discounted_integral(const SamplePath& path, double lambda, const TestFn& f) {
    const auto& v = path.values;
    const double dt = path.grid.dt;
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < v.size(); ++k) {
        const double t0 = path.grid.time(static_cast<int>(k));
        const double t1 = t0 + dt;
        const double w0 = std::exp(-lambda * t0) * f(v[k]);
        if (path.lifetime && t1 > *path.lifetime) {
            if (t0 < *path.lifetime) total += w0 * (*path.lifetime - t0);
            break;
        }
        total += 0.5 * (w0 + std::exp(-lambda * t1) * f(v[k + 1])) * dt;
    }
    return total;
}

namespace {

void require_truncation(double lambda, const TimeGrid& grid, double tolerance) {
    const double bound = std::exp(-lambda * grid.t_max) / lambda;
    if (bound >= tolerance / 10.0) {
        std::ostringstream os;
        os << "truncation bound e^{-lambda t_max}/lambda = " << bound << " exceeds tolerance/10 = " << tolerance / 10.0;
        throw Error(ErrorCode::GridTooShort, os.str());
    }
}

}  // namespace

MCEstimate mc_resolvent(const BoundaryModel& model, const TestFn& f, double lambda, double x, long n_paths,
                        const TimeGrid& grid, std::uint64_t master_seed, double tolerance,
                        const EngineOptions& options) {
    if (!(lambda > 0.0)) throw Error(ErrorCode::NonPositiveLambda, "lambda must be > 0");
    require_truncation(lambda, grid, tolerance);
    EngineOptions opt = options;
    opt.stop_at_death = true;
    auto samples = parallel_map<double>(n_paths, [&](long i) {
        const auto aug = build_process(model, x, grid, mix(master_seed, i), opt);
        return discounted_integral(aug.path, lambda, f);
    });
    return estimate(samples, master_seed);
}

MCEstimate mc_interval_resolvent(const BoundaryModel& model0, const BoundaryModel& model1, const TestFn& f,
                                 double lambda, double x, long n_paths, const TimeGrid& grid,
                                 std::uint64_t master_seed, double tolerance, const EngineOptions& options) {
    if (!(lambda > 0.0)) throw Error(ErrorCode::NonPositiveLambda, "lambda must be > 0");
    require_truncation(lambda, grid, tolerance);
    auto samples = parallel_map<double>(n_paths, [&](long i) {
        const auto rec = build_interval_path(x, model0, model1, grid, mix(master_seed, i), options);
        return discounted_integral(rec.path, lambda, f);
    });
    return estimate(samples, master_seed);
}

MeasureDistance empirical_measure_distance(const BoundaryModel& model, double t, double x, long n_paths, int bins,
                                           const TimeGrid& grid, std::uint64_t seed, const EngineOptions& options) {
    const int kt = static_cast<int>(std::lround(t / grid.dt));
    const double flat = eps_flat(grid.dt);
    const bool sticky_atom = model.mode == Mode::Sticky || model.mode == Mode::General;
    const bool trap_atom = model.mode == Mode::Absorbing || model.mode == Mode::TrapKill;

    EngineOptions opt = options;
    opt.stop_at_death = true;
    // NaN marks a dead path.
    auto states = parallel_map<double>(n_paths, [&](long i) {
        const auto aug = build_process(model, x, grid.truncated(std::min(kt, grid.n_steps)), mix(seed, i), opt);
        const auto& p = aug.path;
        if (p.lifetime && *p.lifetime <= t) return std::numeric_limits<double>::quiet_NaN();
        return p.values[std::min<std::size_t>(kt, p.values.size() - 1)];
    });

    const auto measure = transition_measure(model, t, x);
    const double lo = sticky_atom ? flat : 0.0;
    const double hi = x + 6.0 * std::sqrt(t);
    const double width = (hi - lo) / bins;

    std::vector<long> counts(bins, 0);
    long at0 = 0, dead = 0;
    for (double v : states) {
        if (std::isnan(v)) {
            ++dead;
        } else if ((sticky_atom && v < flat) || (trap_atom && v == 0.0)) {
            ++at0;
        } else if (v >= lo && v < hi) {
            counts[std::min(bins - 1, static_cast<int>((v - lo) / width))] += 1;
        }
    }

    MeasureDistance out;
    out.n = n_paths;
    for (int b = 0; b < bins; ++b) {
        const double mass = measure.density_mass(lo + b * width, lo + (b + 1) * width);
        out.l1 += std::abs(static_cast<double>(counts[b]) / n_paths - mass);
    }
    const double density_total = measure.density_mass(0.0, kInf);
    out.atom_target = measure.atom_at(0.0) + (sticky_atom ? measure.density_mass(0.0, flat) : 0.0);
    out.atom_estimate = static_cast<double>(at0) / n_paths;
    out.atom_stderr = binomial_stderr(out.atom_target, n_paths);
    out.death_target = std::max(0.0, 1.0 - measure.atom_at(0.0) - density_total);
    if (out.death_target < 1e-12) out.death_target = 0.0;
    out.death_estimate = static_cast<double>(dead) / n_paths;
    out.death_stderr = binomial_stderr(out.death_target, n_paths);
    return out;
}

double boundary_residual_numeric(const BoundaryModel& model, double lambda, const TestFn& f, double h) {
    double F[4];
    for (int i = 0; i < 4; ++i) F[i] = resolvent_apply(model, lambda, f, i * h);
    const double d1 = (-11.0 * F[0] + 18.0 * F[1] - 9.0 * F[2] + 2.0 * F[3]) / (6.0 * h);
    const double d2 = (2.0 * F[0] - 5.0 * F[1] + 4.0 * F[2] - F[3]) / (h * h);
    return wentzell_residual(model, F[0], d1, d2);
}

double first_passage_check(const BoundaryModel& model, double lambda, double x) {
    const auto rx = resolvent_measure(model, lambda, x);
    const auto r0 = resolvent_measure(model, lambda, 0.0);
    const double e = std::exp(-std::sqrt(2.0 * lambda) * x);
    double worst = std::abs(rx.atom_at(0.0) - e * r0.atom_at(0.0));
    for (double y : {0.1, 0.3, 0.7, 1.2, 2.5}) {
        worst = std::max(worst, std::abs(rx.density(y) - r_dirichlet(lambda, x, y) - e * r0.density(y)));
    }
    return worst;
}

bool ValidationReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::string ValidationReport::json(bool with_runtime) const {
    nlohmann::ordered_json j;
    j["pass"] = pass();
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json o;
        o["name"] = c.name;
        o["criterion"] = c.criterion;
        o["provenance"] = c.provenance;
        o["target"] = c.target;
        o["estimate"] = c.estimate;
        o["tolerance"] = c.tolerance;
        o["tolerance_kind"] = c.tolerance_kind;
        o["pass"] = c.pass;
        o["detail"] = c.detail;
        if (with_runtime) o["runtime_s"] = c.runtime_s;
        arr.push_back(o);
    }
    j["checks"] = arr;
    return j.dump(2);
}

void ValidationReport::print_table(std::ostream& os) const {
    os << std::left << std::setw(40) << "check" << std::setw(6) << "crit" << std::setw(16) << "target"
       << std::setw(16) << "estimate" << std::setw(22) << "tolerance" << std::setw(6) << "pass" << "runtime_s\n";
    for (const auto& c : checks) {
        std::ostringstream tol;
        tol << std::setprecision(4) << c.tolerance << " (" << c.tolerance_kind << ")";
        os << std::left << std::setw(40) << c.name << std::setw(6) << c.criterion << std::setw(16)
           << std::setprecision(8) << c.target << std::setw(16) << c.estimate << std::setw(22) << tol.str()
           << std::setw(6) << (c.pass ? "yes" : "NO") << std::setprecision(3) << c.runtime_s << '\n';
    }
    os << (pass() ? "ALL PASS" : "FAILURES PRESENT") << " (" << checks.size() << " checks)\n";
}

namespace {

// ---------------------------------------------------------------------------
// Check helpers

CheckResult within_stderr(std::string name, int crit, std::string prov, double target, const MCEstimate& e,
                          double multiple = 3.0, double floor = 0.0) {
    CheckResult c;
    c.name = std::move(name);
    c.criterion = crit;
    c.provenance = std::move(prov);
    c.target = target;
    c.estimate = e.mean;
    c.tolerance = multiple * e.std_error + floor;
    c.tolerance_kind = "stderr";
    c.pass = std::abs(e.mean - target) <= c.tolerance;
    std::ostringstream os;
    os << "n=" << e.n << " stderr=" << e.std_error << " z=" << (e.std_error > 0 ? (e.mean - target) / e.std_error : 0.0);
    c.detail = os.str();
    return c;
}

CheckResult within_relative(std::string name, int crit, std::string prov, double target, double estimate, double rel,
                            std::string detail = {}) {
    CheckResult c;
    c.name = std::move(name);
    c.criterion = crit;
    c.provenance = std::move(prov);
    c.target = target;
    c.estimate = estimate;
    c.tolerance = rel;
    c.tolerance_kind = "rel";
    c.pass = std::abs(estimate - target) <= rel * std::abs(target);
    c.detail = std::move(detail);
    return c;
}

CheckResult at_most(std::string name, int crit, std::string prov, double value, double bound,
                    std::string detail = {}) {
    CheckResult c;
    c.name = std::move(name);
    c.criterion = crit;
    c.provenance = std::move(prov);
    c.target = 0.0;
    c.estimate = value;
    c.tolerance = bound;
    c.tolerance_kind = "max";
    c.pass = std::abs(value) <= bound;
    c.detail = std::move(detail);
    return c;
}

CheckResult holds(std::string name, int crit, std::string prov, bool ok, std::string detail) {
    CheckResult c;
    c.name = std::move(name);
    c.criterion = crit;
    c.provenance = std::move(prov);
    c.target = 1.0;
    c.estimate = ok ? 1.0 : 0.0;
    c.tolerance = 0.0;
    c.tolerance_kind = "exact";
    c.pass = ok;
    c.detail = std::move(detail);
    return c;
}

std::string fmt(const char* label, double v) {
    std::ostringstream os;
    os << label << '=' << std::setprecision(6) << v;
    return os.str();
}

std::uint64_t name_hash(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

struct Ctx {
    const SuiteConfig& cfg;
    std::uint64_t seed;
    long n() const { return cfg.n_paths; }
    TimeGrid grid(double t_max) const {
        return TimeGrid::make(t_max, static_cast<int>(std::lround(t_max / cfg.dt)));
    }
};

EngineOptions acceptance_options() {
    EngineOptions o;
    o.scheme = LocalTimeScheme::BridgeMaximum;
    o.bridge_crossing = true;
    return o;
}

using CheckFn = std::function<std::vector<CheckResult>(const Ctx&)>;

struct Registered {
    std::string name;
    CheckFn fn;
};

// ---------------------------------------------------------------------------
// Criterion 1: P(H_a < zeta_beta) for Elastic(1), a = 1.

std::vector<CheckResult> c01_elastic_survival(const Ctx& c) {
    auto opt = acceptance_options();
    opt.stop_level = 1.0;
    opt.stop_at_death = true;
    const auto grid = c.grid(10.0);
    const auto model = BoundaryModel::elastic(1.0);
    auto hits = parallel_map<double>(c.n(), [&](long i) {
        const auto s = mix(c.seed, i);
        const auto aug = build_process(model, 0.0, grid, s, opt);
        return hitting_time(aug, 1.0, {true, s}) ? 1.0 : 0.0;
    });
    return {within_stderr("c01_elastic_hit_before_death", 1, "1/(1+beta a)", kill_before_hit_prob(1.0, 1.0),
                          estimate(hits, c.seed))};
}

// Criterion 2: L_{H_1} ~ Exponential(mean 1).

std::vector<CheckResult> c02_local_time_at_exit(const Ctx& c) {
    auto opt = acceptance_options();
    opt.stop_level = 1.0;
    const auto grid = c.grid(20.0);
    auto lt = parallel_map<double>(c.n(), [&](long i) {
        const auto aug = reflect_with_local_time(0.0, grid, mix(c.seed, i), opt);
        return aug.local_time.back();
    });
    const auto law = local_time_at_exit_law(1.0);
    const auto e = estimate(lt, c.seed);
    const double ks = ks_statistic(lt, *law.cdf);
    return {within_relative("c02_local_time_exit_mean", 2, "L_{H_a} ~ Exp(mean a)", 1.0, e.mean, 0.02,
                            fmt("stderr", e.std_error)),
            at_most("c02_local_time_exit_ks", 2, "KS vs Exp(1)", ks, 0.01, fmt("n", static_cast<double>(e.n)))};
}

// Criterion 3: E e^{-0.5 K_1} = e^{-1}.

std::vector<CheckResult> c03_inverse_local_time(const Ctx& c) {
    auto opt = acceptance_options();
    opt.stop_local_time = 1.0;
    const double T = 14.0;
    const auto grid = c.grid(T);
    auto vals = parallel_map<double>(c.n(), [&](long i) {
        const auto aug = reflect_with_local_time(0.0, grid, mix(c.seed, i), opt);
        const auto& L = aug.local_time;
        const std::size_t k = L.size() - 1;
        if (k == 0 || L[k] <= 1.0) return 0.0;  // censored: K_1 > T
        const double K = grid.time(static_cast<int>(k) - 1) + grid.dt * (1.0 - L[k - 1]) / (L[k] - L[k - 1]);
        return std::exp(-0.5 * K);
    });
    auto e = estimate(vals, c.seed);
    auto r = within_stderr("c03_inverse_local_time_lt", 3, "E e^{-lambda K_r} = e^{-sqrt(2 lambda) r}",
                           k_r_law(1.0).laplace_transform.value()(0.5), e);
    r.detail += " " + fmt("truncation_bound", std::exp(-0.5 * T));
    return {r};
}

// Criterion 4: sticky exit times.

std::vector<CheckResult> c04_sticky_exit(const Ctx& c) {
    const double gamma = 0.3, eps = 0.1;
    const auto model = BoundaryModel::sticky(gamma);
    std::vector<CheckResult> out;
    {
        auto opt = acceptance_options();
        opt.stop_level = eps;
        const auto grid = c.grid(2.0);
        auto h = parallel_map<double>(c.n(), [&](long i) {
            const auto s = mix(c.seed, i);
            const auto aug = build_process(model, 0.0, grid, s, opt);
            return hitting_time(aug, eps, {true, s}).value_or(2.0);
        });
        const auto e = estimate(h, c.seed);
        out.push_back(within_relative("c04_sticky_exit_from_origin", 4, "E_0 H = eps^2 + gamma eps",
                                      sticky_exit_mean(gamma, eps), e.mean, 0.03, fmt("stderr", e.std_error)));
    }
    {
        const double x = 0.5;
        const auto grid = c.grid(0.2);
        const auto seed2 = mix(c.seed, 0xABCDEFULL);
        auto h = parallel_map<double>(c.n(), [&](long i) {
            const auto s = mix(seed2, i);
            const auto aug = build_process(model, x, grid, s, acceptance_options());
            return exit_time(aug, x - eps, x + eps, {true, s}).value_or(0.2);
        });
        const auto e = estimate(h, seed2);
        out.push_back(within_relative("c04_sticky_exit_interior", 4, "E_x H = eps^2 away from 0",
                                      sticky_exit_mean(0.0, eps), e.mean, 0.03, fmt("stderr", e.std_error)));
    }
    return out;
}

// Criterion 5: E e^{-lambda zeta}.

std::vector<CheckResult> kill_lt_check(const Ctx& c, const BoundaryModel& model, double lambda, double T,
                                       const std::string& name) {
    auto opt = acceptance_options();
    opt.stop_at_death = true;
    const auto grid = c.grid(T);
    auto vals = parallel_map<double>(c.n(), [&](long i) {
        const auto aug = build_process(model, 0.0, grid, mix(c.seed, i), opt);
        return aug.path.lifetime ? std::exp(-lambda * *aug.path.lifetime) : 0.0;
    });
    auto r = within_stderr(name, 5, "E e^{-lambda zeta} = beta/(beta+sqrt(2 lambda)+gamma lambda)",
                           zeta_lt(model.beta, model.gamma, lambda), estimate(vals, c.seed));
    r.detail += " " + fmt("truncation_bound", std::exp(-lambda * T));
    return {r};
}

std::vector<CheckResult> c05_elastic(const Ctx& c) {
    return kill_lt_check(c, BoundaryModel::elastic(1.0), 0.5, 12.0, "c05_kill_lt_elastic");
}

std::vector<CheckResult> c05_general(const Ctx& c) {
    return kill_lt_check(c, BoundaryModel::general(1.0, 1.0), 2.0, 5.0, "c05_kill_lt_general");
}

// Criterion 6: marginal law at t = 1.

CheckFn c06_marginal(BoundaryModel model, double x, std::string tag) {
    return [model, x, tag](const Ctx& c) {
        const auto grid = c.grid(1.0);
        const auto d = empirical_measure_distance(model, 1.0, x, c.n(), 50, grid, c.seed, acceptance_options());
        const std::string base = "c06_marginal_" + tag;
        std::vector<CheckResult> out;
        out.push_back(at_most(base + "_l1", 6, "histogram vs transition density", d.l1, 0.05));
        MCEstimate atom{d.atom_estimate, d.atom_stderr, d.n, c.seed};
        out.push_back(within_stderr(base + "_atom", 6, "boundary atom (+ density mass below eps_flat)", d.atom_target,
                                    atom));
        MCEstimate death{d.death_estimate, d.death_stderr, d.n, c.seed};
        out.push_back(within_stderr(base + "_death", 6, "1 - total transition mass", d.death_target, death));
        return out;
    };
}

// Criterion 7: E int e^{-2t} dL^s_t for gamma = 1.

std::vector<CheckResult> c07_alpha_potential(const Ctx& c) {
    const double alpha = 2.0, T = 5.0;
    const auto grid = c.grid(T);
    const auto model = BoundaryModel::sticky(1.0);
    auto vals = parallel_map<double>(c.n(), [&](long i) {
        const auto aug = build_process(model, 0.0, grid, mix(c.seed, i), acceptance_options());
        const auto& L = aug.local_time;
        double acc = 0.0;
        for (std::size_t j = 1; j < L.size(); ++j) {
            const double dl = L[j] - L[j - 1];
            if (dl > 0.0) acc += std::exp(-alpha * (j - 0.5) * grid.dt) * dl;
        }
        return acc;
    });
    return {within_stderr("c07_sticky_local_time_potential", 7, "e^{-sqrt(2a)x}/(sqrt(2a)+a gamma)",
                          ls_alpha_potential(alpha, 1.0, 0.0), estimate(vals, c.seed))};
}

// Criterion 8: analytic identities.

double smooth_bump(double y) { return std::exp(-(y - 0.5) * (y - 0.5) / 0.08); }

double relative_gap(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

double laplace_of(const std::function<double(double)>& h, double lambda) {
    auto integrand = [&](double t) { return t <= 0.0 ? 0.0 : std::exp(-lambda * t) * h(t); };
    return integrate_pieces(integrand, {0.0, 0.05, 0.5, 2.0, 8.0}, 1e-12) + integrate(integrand, 8.0, kInf, 1e-12);
}

std::vector<CheckResult> c08_laplace(const Ctx&) {
    std::vector<CheckResult> out;
    const double lambda = 1.0;
    const std::vector<std::pair<std::string, BoundaryModel>> models{
        {"reflecting", BoundaryModel::reflecting()},
        {"elastic", BoundaryModel::elastic(1.0)},
        {"sticky", BoundaryModel::sticky(1.0)},
        {"general", BoundaryModel::general(1.0, 1.0)},
        {"absorbing", BoundaryModel::absorbing()},
        {"trapkill", BoundaryModel::trap_kill(1.0)},
    };
    for (const auto& [tag, model] : models) {
        double worst = 0.0;
        for (auto [x, y] : {std::pair{0.3, 0.8}, std::pair{1.0, 0.4}}) {
            auto dens = [&, x = x, y = y](double t) { return transition_measure(model, t, x).density(y); };
            const double lhs = laplace_of(dens, lambda);
            worst = std::max(worst, relative_gap(lhs, resolvent_measure(model, lambda, x).density(y)));
            const double atom_r = resolvent_measure(model, lambda, x).atom_at(0.0);
            if (atom_r > 0.0) {
                auto atom = [&, x = x](double t) { return transition_measure(model, t, x).atom_at(0.0); };
                worst = std::max(worst, relative_gap(laplace_of(atom, lambda), atom_r));
            }
        }
        out.push_back(at_most("c08_laplace_consistency_" + tag, 8, "int e^{-lambda t} p_t dt = r_lambda", worst, 1e-6));
    }
    return out;
}

std::vector<CheckResult> c08_chapman_kolmogorov(const Ctx&) {
    double worst = 0.0;
    for (auto [t, s, x, y] : {std::tuple{0.3, 0.7, 0.2, 0.5}, std::tuple{1.0, 0.5, 0.0, 1.3}}) {
        auto integrand = [&, t = t, s = s, x = x, y = y](double z) { return p_neumann(t, x, z) * p_neumann(s, z, y); };
        const double lhs = integrate_pieces(integrand, {0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}, 1e-11);
        worst = std::max(worst, std::abs(lhs - p_neumann(t + s, x, y)));
    }
    return {at_most("c08_chapman_kolmogorov_neumann", 8, "int pN pN dz = pN", worst, 1e-8)};
}

std::vector<CheckResult> c08_boundary_residuals(const Ctx&) {
    std::vector<CheckResult> out;
    const double norm = 1.0;  // sup of smooth_bump
    for (const auto& [tag, model] : std::vector<std::pair<std::string, BoundaryModel>>{
             {"elastic", BoundaryModel::elastic(1.0)},
             {"sticky", BoundaryModel::sticky(1.0)},
             {"general", BoundaryModel::general(1.0, 1.0)}}) {
        const double r = boundary_residual_numeric(model, 1.0, smooth_bump, 1e-4);
        out.push_back(at_most("c08_boundary_residual_fd_" + tag, 8, "Wentzell condition on R_lambda f", r,
                              1e-3 * norm));
    }
    return out;
}

std::vector<CheckResult> c08_first_passage(const Ctx&) {
    double worst = 0.0;
    for (const auto& model : {BoundaryModel::sticky(1.0), BoundaryModel::elastic(1.0),
                              BoundaryModel::general(1.0, 1.0), BoundaryModel::reflecting()}) {
        for (double x : {0.0, 0.5, 1.5}) worst = std::max(worst, first_passage_check(model, 1.0, x));
    }
    return {at_most("c08_first_passage_identity", 8, "r = r^D + e_lambda(x) r(0,.)", worst, 1e-12)};
}

std::vector<CheckResult> c08_elastic_forms(const Ctx&) {
    double worst = 0.0;
    for (double beta : {0.5, 1.0, 3.0}) {
        for (double lambda : {0.5, 2.0}) {
            for (auto [x, y] : {std::pair{0.0, 0.3}, std::pair{0.4, 0.4}, std::pair{1.2, 0.1}}) {
                worst = std::max(worst, std::abs(elastic_resolvent_neumann_form(beta, lambda, x, y) -
                                                 elastic_resolvent_dirichlet_form(beta, lambda, x, y)));
            }
        }
    }
    return {at_most("c08_elastic_resolvent_forms", 8, "two algebraic forms of r^e", worst, 1e-13)};
}

std::vector<CheckResult> c08_g_limits(const Ctx&) {
    double worst = 0.0;
    for (double t : {0.25, 1.0, 2.0}) {
        for (double x : {0.0, 0.5, 1.5}) {
            worst = std::max(worst, relative_gap(g_family(1e-6, 1.0, t, x), g_family(0.0, 1.0, t, x)));
            worst = std::max(worst, relative_gap(g_family(1.0, 1e-6, t, x), g_family(1.0, 0.0, t, x)));
        }
    }
    return {at_most("c08_g_family_limits", 8, "g_{beta,gamma} parameter limits", worst, 1e-4)};
}

// Criterion 9: interval construction.

std::vector<CheckResult> c09_interval_resolvent(const Ctx& c) {
    const auto m0 = BoundaryModel::elastic(1.0);
    const auto m1 = BoundaryModel::reflecting(Side::AtOne);
    auto one = [](double) { return 1.0; };
    const double target = interval_resolvent(m0, m1, 1.0, one, 0.0);
    const auto e = mc_interval_resolvent(m0, m1, one, 1.0, 0.0, c.n(), c.grid(20.0), c.seed, 1e-3, acceptance_options());
    return {within_relative("c09_interval_resolvent", 9, "2x2 Wentzell closure of the interval resolvent", target,
                            e.mean, 0.02, fmt("stderr", e.std_error))};
}

std::vector<CheckResult> c09_gamblers_ruin(const Ctx& c) {
    const auto grid = c.grid(5.0);
    const auto m = BoundaryModel::reflecting();
    auto at1 = parallel_map<double>(c.n(), [&](long i) {
        const auto rec = build_interval_path(0.5, m, m, grid, mix(c.seed, i), acceptance_options());
        const auto stopped = stopped_at_boundary(rec);
        return stopped.values.back() == 1.0 ? 1.0 : 0.0;
    });
    return {within_stderr("c09_gamblers_ruin", 9, "P_x(H_1 < H_0) = x", 0.5, estimate(at1, c.seed))};
}

std::vector<CheckResult> c09_markov_proxy(const Ctx& c) {
    const auto m0 = BoundaryModel::elastic(1.0);
    const auto m1 = BoundaryModel::reflecting(Side::AtOne);
    const double t = 0.02, s = 0.5, x = 0.5;
    const int bins = 20;
    const double bin_lo = 0.5, bin_hi = 0.55;
    const auto grid_ts = c.grid(t + s);
    const int kt = static_cast<int>(std::lround(t / c.cfg.dt));
    const int kts = grid_ts.n_steps;

    auto cell = [bins](const SamplePath& p, int k) {
        if (k >= static_cast<int>(p.values.size()) || !p.alive_at(k)) return bins;  // dead
        return std::min(bins - 1, static_cast<int>(p.values[k] * bins));
    };
    // Conditional run: cell of X_{t+s}, or -1 if X_t is outside the conditioning bin.
    auto cond = parallel_map<int>(c.n(), [&](long i) {
        const auto rec = build_interval_path(x, m0, m1, grid_ts, mix(c.seed, i), acceptance_options());
        const auto& p = rec.path;
        if (kt >= static_cast<int>(p.values.size()) || !p.alive_at(kt)) return -1;
        const double v = p.values[kt];
        if (v < bin_lo || v >= bin_hi) return -1;
        return cell(p, kts);
    });
    const auto grid_s = c.grid(s);
    const auto seed2 = mix(c.seed, 0x5151ULL);
    auto fresh = parallel_map<int>(c.n(), [&](long i) {
        const auto rec = build_interval_path(0.5 * (bin_lo + bin_hi), m0, m1, grid_s, mix(seed2, i),
                                             acceptance_options());
        return cell(rec.path, grid_s.n_steps);
    });
    std::vector<double> p(bins + 1, 0.0), q(bins + 1, 0.0);
    long np = 0;
    for (int v : cond) {
        if (v >= 0) {
            p[v] += 1.0;
            ++np;
        }
    }
    for (int v : fresh) q[v] += 1.0;
    double tv = 0.0;
    for (int b = 0; b <= bins; ++b) tv += 0.5 * std::abs(p[b] / std::max(np, 1L) - q[b] / fresh.size());
    return {at_most("c09_markov_proxy_tv", 9, "law of X_{t+s} | X_t in bin vs law of X_s from bin centre", tv, 0.05,
                    fmt("conditioned_paths", static_cast<double>(np)))};
}

// Criterion 10: properties.

std::vector<CheckResult> c10_properties(const Ctx& c) {
    std::vector<CheckResult> out;
    const auto grid = TimeGrid::make(1.0, 1000);
    const long n = 200;
    const std::vector<BoundaryModel> models{BoundaryModel::reflecting(),  BoundaryModel::absorbing(),
                                            BoundaryModel::elastic(1.0),  BoundaryModel::sticky(0.5),
                                            BoundaryModel::general(1.0, 0.5), BoundaryModel::trap_kill(2.0)};

    bool same = true;
    for (const auto& m : models) {
        for (long i = 0; i < 20; ++i) {
            const auto a = build_process(m, 0.2, grid, mix(c.seed, i));
            const auto b = build_process(m, 0.2, grid, mix(c.seed, i));
            same = same && a.path.values == b.path.values && a.local_time == b.local_time &&
                   a.path.lifetime == b.path.lifetime && a.driving == b.driving;
        }
    }
    for (long i = 0; i < 20; ++i) {
        const auto a = build_interval_path(0.3, models[2], models[3], grid, mix(c.seed, i));
        const auto b = build_interval_path(0.3, models[2], models[3], grid, mix(c.seed, i));
        same = same && a.path.values == b.path.values && a.crossovers == b.crossovers;
    }
    out.push_back(holds("c10_replay_determinism", 10, "(seed, grid, model, start) fixes the path", same,
                        "bit-identical replays"));

    bool mono = true, flat = true;
    long steps_checked = 0;
    const double band = eps_flat(grid.dt);
    for (long i = 0; i < n; ++i) {
        const auto aug = reflect_with_local_time(i % 2 ? 0.0 : 0.1, grid, mix(c.seed, 1000 + i));
        const auto& L = aug.local_time;
        const auto& R = aug.path.values;
        mono = mono && L[0] == 0.0;
        for (std::size_t k = 1; k < L.size(); ++k) {
            mono = mono && L[k] >= L[k - 1];
            if (R[k - 1] > band && R[k] > band) {
                ++steps_checked;
                flat = flat && L[k] == L[k - 1];
            }
        }
    }
    out.push_back(holds("c10_local_time_monotone", 10, "L nondecreasing from 0", mono, "200 paths"));
    out.push_back(holds("c10_local_time_flat", 10, "L flat off the eps_flat band", flat,
                        fmt("steps_checked", static_cast<double>(steps_checked))));

    bool tau_ok = true;
    double tau_err = 0.0;
    for (long i = 0; i < n; ++i) {
        const auto aug = build_process(BoundaryModel::sticky(1.0), 0.0, grid, mix(c.seed, 2000 + i));
        const auto& tau = *aug.time_change;
        tau_ok = tau_ok && tau[0] == 0.0;
        for (std::size_t j = 1; j < tau.size(); ++j) tau_ok = tau_ok && tau[j] > tau[j - 1];
        const auto& rec = *aug.base;
        for (int k = 0; k <= rec.grid.n_steps; ++k) {
            tau_err = std::max(tau_err, std::abs(clock_tau(rec, rec.inverse_clock[k]) - rec.grid.time(k)));
        }
    }
    out.push_back(holds("c10_time_change_monotone", 10, "tau strictly increasing, tau(0)=0", tau_ok, "200 paths"));
    out.push_back(at_most("c10_time_change_inverse", 10, "tau(tau^{-1}(t_k)) = t_k", tau_err, 1e-12));

    bool order = true;
    for (long i = 0; i < n; ++i) {
        const auto s = mix(c.seed, 3000 + i);
        double prev = kInf;
        for (double beta : {0.25, 0.5, 1.0, 2.0, 4.0}) {
            const auto aug = build_process(BoundaryModel::elastic(beta), 0.0, grid, s);
            const double z = aug.path.lifetime.value_or(kInf);
            order = order && z <= prev;
            prev = z;
        }
        prev = kInf;
        for (double beta : {0.25, 0.5, 1.0, 2.0, 4.0}) {
            const auto aug = build_process(BoundaryModel::general(beta, 0.5), 0.0, grid, s);
            const double z = aug.path.lifetime.value_or(kInf);
            order = order && z <= prev;
            prev = z;
        }
    }
    out.push_back(holds("c10_kill_ordering", 10, "shared u: zeta decreasing in beta", order, "200 paths x 5 rates"));

    bool balance = true;
    for (const auto& m : {BoundaryModel::elastic(1.0), BoundaryModel::general(1.0, 1.0)}) {
        long alive = 0, dead = 0;
        const int kt = grid.n_steps / 2;
        const double t = grid.time(kt);
        for (long i = 0; i < n; ++i) {
            const auto aug = build_process(m, 0.0, grid, mix(c.seed, 4000 + i));
            const bool is_dead = aug.path.lifetime && *aug.path.lifetime <= t;
            (is_dead ? dead : alive) += 1;
            balance = balance && (aug.path.alive_at(kt) != is_dead);
        }
        balance = balance && alive + dead == n;
    }
    out.push_back(holds("c10_mass_balance", 10, "survivors + deaths = paths", balance, "Elastic(1), General(1,1)"));
    return out;
}

std::vector<CheckResult> canary(const Ctx&) {
    return {at_most("canary_always_fails", 0, "deliberate failure for exit-code tests", 1.0, 0.0)};
}

std::vector<Registered> registry(const std::string& suite) {
    std::vector<Registered> analytic{
        {"c08_boundary_residuals", c08_boundary_residuals},
        {"c08_chapman_kolmogorov", c08_chapman_kolmogorov},
        {"c08_elastic_forms", c08_elastic_forms},
        {"c08_first_passage", c08_first_passage},
        {"c08_g_limits", c08_g_limits},
        {"c08_laplace", c08_laplace},
    };
    if (suite == "analytic") return analytic;
    if (suite == "properties") return {{"c10_properties", c10_properties}};
    if (suite == "canary") return {{"canary", canary}};
    if (suite == "empty") return {};
    if (suite != "default" && suite != "quick") {
        throw Error(ErrorCode::TypeMismatch, "suite '" + suite + "' is not one of default, quick, analytic, properties, canary, empty");
    }
    std::vector<Registered> all{
        {"c01_elastic_survival", c01_elastic_survival},
        {"c02_local_time_at_exit", c02_local_time_at_exit},
        {"c03_inverse_local_time", c03_inverse_local_time},
        {"c04_sticky_exit", c04_sticky_exit},
        {"c05_elastic", c05_elastic},
        {"c05_general", c05_general},
        {"c06_reflecting_x0", c06_marginal(BoundaryModel::reflecting(), 0.0, "reflecting_x0")},
        {"c06_reflecting_x05", c06_marginal(BoundaryModel::reflecting(), 0.5, "reflecting_x05")},
        {"c06_elastic_x0", c06_marginal(BoundaryModel::elastic(1.0), 0.0, "elastic_x0")},
        {"c06_elastic_x05", c06_marginal(BoundaryModel::elastic(1.0), 0.5, "elastic_x05")},
        {"c06_sticky_x0", c06_marginal(BoundaryModel::sticky(1.0), 0.0, "sticky_x0")},
        {"c06_sticky_x05", c06_marginal(BoundaryModel::sticky(1.0), 0.5, "sticky_x05")},
        {"c06_general_x0", c06_marginal(BoundaryModel::general(1.0, 1.0), 0.0, "general_x0")},
        {"c06_general_x05", c06_marginal(BoundaryModel::general(1.0, 1.0), 0.5, "general_x05")},
        {"c07_alpha_potential", c07_alpha_potential},
        {"c09_interval_resolvent", c09_interval_resolvent},
        {"c09_gamblers_ruin", c09_gamblers_ruin},
        {"c09_markov_proxy", c09_markov_proxy},
        {"c10_properties", c10_properties},
    };
    all.insert(all.end(), analytic.begin(), analytic.end());
    return all;
}

}  // namespace

std::vector<std::string> suite_names() { return {"default", "quick", "analytic", "properties", "canary", "empty"}; }

ValidationReport run_suite(const SuiteConfig& config) {
    SuiteConfig cfg = config;
    if (cfg.suite == "quick") {
        cfg.n_paths = std::min(cfg.n_paths, 10000L);
        cfg.dt = std::max(cfg.dt, 1e-3);
    }
    ValidationReport report;
    for (const auto& reg : registry(cfg.suite)) {
        const Ctx ctx{cfg, mix(cfg.seed, name_hash(reg.name))};
        const auto t0 = std::chrono::steady_clock::now();
        std::vector<CheckResult> results;
        try {
            results = reg.fn(ctx);
        } catch (const std::exception& e) {
            CheckResult r;
            r.name = reg.name;
            r.tolerance_kind = "error";
            r.detail = e.what();
            results.push_back(r);
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        for (auto& r : results) {
            r.runtime_s = secs / results.size();
            report.checks.push_back(std::move(r));
        }
    }
    std::sort(report.checks.begin(), report.checks.end(),
              [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
    return report;
}

}  // namespace wentzell
