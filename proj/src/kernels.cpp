#include "wentzell/kernels.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "wentzell/errors.hpp"
#include "wentzell/quadrature.hpp"
#include "wentzell/special.hpp"

namespace wentzell {

namespace {

constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;

void require_time(double t) {
    if (!(t > 0.0)) throw Error(ErrorCode::NonPositiveTime, "t must be > 0");
}

void require_lambda(double lambda) {
    if (!(lambda > 0.0)) throw Error(ErrorCode::NonPositiveLambda, "lambda must be > 0");
}

void require_state(double x) {
    if (!(x >= 0.0)) throw Error(ErrorCode::StartOutOfRange, "x must be >= 0");
}

// exp(-x^2/2t) [ (2 pi t)^{-1/2} - (beta/2) erfcx(x/sqrt(2t) + beta sqrt(t/2)) ]
double g_elastic(double beta, double t, double x) {
    const double z = x / std::sqrt(2.0 * t) + beta * std::sqrt(0.5 * t);
    const double bracket = kInvSqrt2Pi / std::sqrt(t) - 0.5 * beta * erfcx(z);
    return std::exp(-x * x / (2.0 * t)) * bracket;
}

// (1/gamma) exp(-x^2/2t) erfcx(x/sqrt(2t) + sqrt(2t)/gamma)
double g_sticky(double gamma, double t, double x) {
    const double z = x / std::sqrt(2.0 * t) + std::sqrt(2.0 * t) / gamma;
    return std::exp(-x * x / (2.0 * t)) * erfcx(z) / gamma;
}

// With s = gamma v the defining integral becomes
//   (2 pi)^{-1/2} int_0^{t/gamma} (v+x) (t - gamma v)^{-3/2} exp(-(v+x)^2 / 2(t - gamma v) - beta v) dv.
// The far end v -> t/gamma is handled with t - gamma v = u^2.
double g_general(double beta, double gamma, double t, double x) {
    const double v_end = t / gamma;
    const double v_split = 0.5 * v_end;
    const double v_mass = 40.0 * std::sqrt(t);

    auto near = [=](double v) {
        const double w = t - gamma * v;
        const double q = v + x;
        return q * std::exp(-q * q / (2.0 * w) - beta * v) / (w * std::sqrt(w));
    };

    const double root_t = std::sqrt(t);
    double total = 0.0;
    if (v_mass <= v_split) {
        total = integrate_pieces(near, {0.0, std::min(root_t, v_mass), std::min(4.0 * root_t, v_mass), v_mass});
    } else {
        std::vector<double> pts{0.0, v_split};
        if (root_t < v_split) pts.push_back(root_t);
        if (4.0 * root_t < v_split) pts.push_back(4.0 * root_t);
        total = integrate_pieces(near, pts);
        auto far = [=](double u) {
            if (u <= 0.0) return 0.0;
            const double v = (t - u * u) / gamma;
            const double q = v + x;
            return (2.0 / gamma) * q * std::exp(-q * q / (2.0 * u * u) - beta * v) / (u * u);
        };
        total += integrate(far, 0.0, std::sqrt(t - gamma * v_split));
    }
    return kInvSqrt2Pi * total;
}

}  // namespace

double BoundaryMeasure::atom_at(double point) const {
    auto it = atoms.find(point);
    return it == atoms.end() ? 0.0 : it->second;
}

double BoundaryMeasure::density_mass(double from, double to) const {
    return integrate(density, from, to, 1e-12);
}

double BoundaryMeasure::total_mass() const {
    double mass = 0.0;
    for (const auto& [point, w] : atoms) mass += w;
    return mass + density_mass(0.0, support_end);
}

LaplaceFactors laplace_factors(double beta, double gamma, double lambda, double x) {
    require_lambda(lambda);
    const double k = std::sqrt(2.0 * lambda);
    return {std::exp(-k * x), 1.0 / (beta + k + gamma * lambda), k};
}

double g_family(double beta, double gamma, double t, double x) {
    require_time(t);
    if (beta == 0.0 && gamma == 0.0) return gauss(t, x);
    if (gamma == 0.0) return g_elastic(beta, t, x);
    if (beta == 0.0) return g_sticky(gamma, t, x);
    return g_general(beta, gamma, t, x);
}

double heat_p(double t, double x, double y) { return gauss(t, x - y); }
double p_neumann(double t, double x, double y) { return gauss(t, x - y) + gauss(t, x + y); }
double p_dirichlet(double t, double x, double y) { return gauss(t, x - y) - gauss(t, x + y); }

double r_neumann(double lambda, double x, double y) {
    const double k = std::sqrt(2.0 * lambda);
    return (std::exp(-k * std::abs(x - y)) + std::exp(-k * (x + y))) / k;
}

double r_dirichlet(double lambda, double x, double y) {
    const double k = std::sqrt(2.0 * lambda);
    return (std::exp(-k * std::abs(x - y)) - std::exp(-k * (x + y))) / k;
}

double elastic_resolvent_neumann_form(double beta, double lambda, double x, double y) {
    const double k = std::sqrt(2.0 * lambda);
    return r_neumann(lambda, x, y) - (2.0 * beta / (beta + k)) * std::exp(-k * (x + y)) / k;
}

double elastic_resolvent_dirichlet_form(double beta, double lambda, double x, double y) {
    const double k = std::sqrt(2.0 * lambda);
    return r_dirichlet(lambda, x, y) + 2.0 / (beta + k) * std::exp(-k * (x + y));
}

ResolventShape resolvent_shape(const BoundaryModel& model, double lambda) {
    require_lambda(lambda);
    const double k = std::sqrt(2.0 * lambda);
    switch (model.mode) {
        case Mode::Reflecting: return {k, 2.0 / k, 0.0};
        case Mode::Elastic: return {k, 2.0 / (model.beta + k), 0.0};
        case Mode::Sticky: {
            const double rho = 1.0 / (k + model.gamma * lambda);
            return {k, 2.0 * rho, model.gamma * rho};
        }
        case Mode::General: {
            const double rho = 1.0 / (model.beta + k + model.gamma * lambda);
            return {k, 2.0 * rho, model.gamma * rho};
        }
        case Mode::Absorbing: return {k, 0.0, model.absorb == AbsorbPolicy::Stop ? 1.0 / lambda : 0.0};
        case Mode::TrapKill: return {k, 0.0, 1.0 / (lambda + model.beta)};
    }
    return {k, 0.0, 0.0};
}

double absorbed_mass(double t, double x) { return std::erfc(x / std::sqrt(2.0 * t)); }

double trap_kill_atom(double beta, double t, double x) {
    require_time(t);
    if (x == 0.0) return std::exp(-beta * t);
    // First-passage density of 0 from x, weighted by survival of the holding time.
    auto f = [=](double s) {
        if (s <= 0.0) return 0.0;
        return x / std::sqrt(2.0 * std::numbers::pi * s * s * s) * std::exp(-x * x / (2.0 * s) - beta * (t - s));
    };
    const double peak = std::min(t, x * x / 3.0);
    return integrate_pieces(f, {0.0, 0.5 * peak, peak, t});
}

BoundaryMeasure transition_measure(const BoundaryModel& model, double t, double x) {
    require_time(t);
    require_state(x);
    BoundaryMeasure m;
    m.support_end = kInf;
    const double beta = model.beta;
    const double gamma = model.gamma;
    switch (model.mode) {
        case Mode::Reflecting:
            m.density = [=](double y) { return p_neumann(t, x, y); };
            break;
        case Mode::Elastic:
        case Mode::Sticky:
        case Mode::General:
            m.density = [=](double y) { return p_dirichlet(t, x, y) + 2.0 * g_family(beta, gamma, t, x + y); };
            if (gamma > 0.0) m.atoms[0.0] = gamma * g_family(beta, gamma, t, x);
            break;
        case Mode::Absorbing:
            m.density = [=](double y) { return p_dirichlet(t, x, y); };
            if (model.absorb == AbsorbPolicy::Stop) m.atoms[0.0] = absorbed_mass(t, x);
            break;
        case Mode::TrapKill:
            m.density = [=](double y) { return p_dirichlet(t, x, y); };
            m.atoms[0.0] = trap_kill_atom(beta, t, x);
            break;
    }
    return m;
}

BoundaryMeasure resolvent_measure(const BoundaryModel& model, double lambda, double x) {
    require_state(x);
    const auto s = resolvent_shape(model, lambda);
    BoundaryMeasure m;
    m.support_end = kInf;
    if (model.mode == Mode::Reflecting) {
        m.density = [=](double y) { return r_neumann(lambda, x, y); };
    } else if (model.mode == Mode::Elastic) {
        m.density = [=, beta = model.beta](double y) { return elastic_resolvent_dirichlet_form(beta, lambda, x, y); };
    } else {
        m.density = [=](double y) { return r_dirichlet(lambda, x, y) + s.C * std::exp(-s.k * (x + y)); };
    }
    if (s.A > 0.0) m.atoms[0.0] = s.A * std::exp(-s.k * x);
    return m;
}

double resolvent_apply(const BoundaryModel& model, double lambda, const std::function<double(double)>& f, double x) {
    const auto m = resolvent_measure(model, lambda, x);
    auto integrand = [&](double y) { return m.density(y) * f(y); };
    const double k = std::sqrt(2.0 * lambda);
    double value = integrate_pieces(integrand, {0.0, x, x + 1.0 / k}) + integrate(integrand, x + 1.0 / k, kInf);
    return value + m.atom_at(0.0) * f(0.0);
}

BoundaryJet resolvent_jet_at_zero(const BoundaryModel& model, double lambda, const std::function<double(double)>& f) {
    const auto s = resolvent_shape(model, lambda);
    const double k = s.k;
    auto laplace = [&](double y) { return std::exp(-k * y) * f(y); };
    const double Ef = integrate(laplace, 0.0, 1.0 / k) + integrate(laplace, 1.0 / k, kInf);
    const double f0 = f(0.0);
    // d/dx r^D(0+,y) = 2 e^{-ky}; d2/dx2 r^D(0+,y) = 0 apart from the -2 delta at y = x.
    BoundaryJet jet;
    jet.value = s.C * Ef + s.A * f0;
    jet.d1 = (2.0 - k * s.C) * Ef - k * s.A * f0;
    jet.d2 = k * k * s.C * Ef - 2.0 * f0 + k * k * s.A * f0;
    return jet;
}

int image_series_terms(double lambda) {
    const double k = std::sqrt(2.0 * lambda);
    // tail bound 2 e^{-k(2K-2)}/k < 1e-14
    const double K = 1.0 + std::log(2.0 / (k * 1e-14)) / (2.0 * k);
    return std::max(1, static_cast<int>(std::ceil(K)));
}

double interval_dirichlet_resolvent(double lambda, double x, double y) {
    require_lambda(lambda);
    const double k = std::sqrt(2.0 * lambda);
    const int K = image_series_terms(lambda);
    double sum = 0.0;
    for (int m = -K; m <= K; ++m) {
        sum += std::exp(-k * std::abs(x - y + 2.0 * m)) - std::exp(-k * std::abs(x + y + 2.0 * m));
    }
    return sum / k;
}

double interval_dirichlet_resolvent_dx(double lambda, double x, double y) {
    require_lambda(lambda);
    const double k = std::sqrt(2.0 * lambda);
    const int K = image_series_terms(lambda);
    auto sgn = [](double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); };
    double sum = 0.0;
    for (int m = -K; m <= K; ++m) {
        const double p = x - y + 2.0 * m;
        const double q = x + y + 2.0 * m;
        sum += -sgn(p) * std::exp(-k * std::abs(p)) + sgn(q) * std::exp(-k * std::abs(q));
    }
    return sum;
}

HittingLT interval_hitting_lt(double lambda, double x) {
    require_lambda(lambda);
    const double k = std::sqrt(2.0 * lambda);
    if (k < 1e-6) {
        // sinh(k y)/sinh(k) = y (1 + k^2 (y^2 - 1)/6) + O(k^4)
        const double c = k * k / 6.0;
        return {(1.0 - x) * (1.0 + c * ((1.0 - x) * (1.0 - x) - 1.0)), x * (1.0 + c * (x * x - 1.0))};
    }
    const double sk = std::sinh(k);
    return {std::sinh(k * (1.0 - x)) / sk, std::sinh(k * x) / sk};
}

namespace {

double interval_dirichlet_apply(double lambda, const std::function<double(double)>& f, double x) {
    auto integrand = [&](double y) { return interval_dirichlet_resolvent(lambda, x, y) * f(y); };
    return integrate_pieces(integrand, {0.0, x, 1.0}, 1e-12);
}

double interval_dirichlet_apply_dx(double lambda, const std::function<double(double)>& f, double x) {
    auto integrand = [&](double y) { return interval_dirichlet_resolvent_dx(lambda, x, y) * f(y); };
    return integrate(integrand, 0.0, 1.0, 1e-12);
}

bool killed_at_boundary(const BoundaryModel& m) {
    return m.mode == Mode::Absorbing && m.absorb == AbsorbPolicy::Kill;
}

}  // namespace

IntervalBoundaryValues interval_resolvent_boundary(const BoundaryModel& model0, const BoundaryModel& model1,
                                                   double lambda, const std::function<double(double)>& f) {
    require_lambda(lambda);
    const double k = std::sqrt(2.0 * lambda);
    const double sk = std::sinh(k);
    const double coth = std::cosh(k) / sk;
    // Derivatives of the sinh ratios at the endpoints.
    const double t0_at0 = -k * coth, t1_at0 = k / sk;
    const double t0_at1 = -k / sk, t1_at1 = k * coth;
    const double D0 = interval_dirichlet_apply_dx(lambda, f, 0.0);
    const double D1 = interval_dirichlet_apply_dx(lambda, f, 1.0);
    const double f0 = f(0.0), f1 = f(1.0);

    const auto& w0 = model0.triple;
    const auto& w1 = model1.triple;
    // Rows: Wentzell condition at 0 and at 1 with (Rf)'' = 2 (lambda Rf - f).
    double m00 = w0.a0 - w0.b0 * t0_at0 + w0.c0 * lambda;
    double m01 = -w0.b0 * t1_at0;
    double r0 = w0.b0 * D0 + w0.c0 * f0;
    if (killed_at_boundary(model0)) m00 = 1.0, m01 = 0.0, r0 = 0.0;

    double m10 = w1.b0 * t0_at1;
    double m11 = w1.a0 + w1.b0 * t1_at1 + w1.c0 * lambda;
    double r1 = -w1.b0 * D1 + w1.c0 * f1;
    if (killed_at_boundary(model1)) m10 = 0.0, m11 = 1.0, r1 = 0.0;

    const double det = m00 * m11 - m01 * m10;
    if (std::abs(det) < 1e-13) throw Error(ErrorCode::SingularSystem, "interval boundary system determinant ~ 0");
    return {(r0 * m11 - m01 * r1) / det, (m00 * r1 - m10 * r0) / det};
}

double interval_resolvent(const BoundaryModel& model0, const BoundaryModel& model1, double lambda,
                          const std::function<double(double)>& f, double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorCode::StartOutOfRange, "x must lie in [0,1]");
    const auto u = interval_resolvent_boundary(model0, model1, lambda, f);
    const auto h = interval_hitting_lt(lambda, x);
    return interval_dirichlet_apply(lambda, f, x) + h.toward0 * u.at0 + h.toward1 * u.at1;
}

double K_ab_apply(double a, double b, const std::function<double(double)>& f, double t) {
    require_time(t);
    const double pref = std::sqrt(a / (2.0 * std::numbers::pi));
    auto direct = [&](double s) {
        const double w = t - s;
        const double q = s + b;
        return q * std::exp(-a * q * q / (2.0 * w)) / (w * std::sqrt(w)) * f(s);
    };
    const double half = 0.5 * t;
    const double scale = std::sqrt(t / a);
    std::vector<double> pts{0.0, half};
    if (scale < half) pts.push_back(scale);
    if (40.0 * scale < half) pts.push_back(40.0 * scale);
    double total = integrate_pieces(direct, pts);
    // s = t - u^2 on [t/2, t]
    auto tail = [&](double u) {
        if (u <= 0.0) return 0.0;
        const double s = t - u * u;
        const double q = s + b;
        return 2.0 * q * std::exp(-a * q * q / (2.0 * u * u)) / (u * u) * f(s);
    };
    total += integrate(tail, 0.0, std::sqrt(half));
    return pref * total;
}

std::vector<KernelRow> kernel_table(const BoundaryModel& model, double t_or_lambda, double x, double y_max,
                                    int points, bool resolvent) {
    const auto m = resolvent ? resolvent_measure(model, t_or_lambda, x) : transition_measure(model, t_or_lambda, x);
    std::vector<KernelRow> rows;
    rows.reserve(points);
    for (int i = 0; i < points; ++i) {
        const double y = points == 1 ? 0.0 : y_max * i / (points - 1);
        rows.push_back({t_or_lambda, x, y, m.density(y), m.atom_at(0.0), 0.0});
    }
    return rows;
}

void write_kernel_table(std::ostream& os, const BoundaryModel& model, bool resolvent,
                        const std::vector<KernelRow>& rows) {
    const auto& w = model.triple;
    os << "# model " << describe(model) << '\n';
    os << "# triple a0=" << w.a0 << " b0=" << w.b0 << " c0=" << w.c0 << '\n';
    os << "# kernel " << (resolvent ? "resolvent r_lambda(x,y)" : "transition p_t(x,y)") << '\n';
    os << "t_or_lambda,x,y,density,atom0,atom1\n";
    const auto old = os.precision(17);
    for (const auto& r : rows) {
        os << r.t_or_lambda << ',' << r.x << ',' << r.y << ',' << r.density << ',' << r.atom0 << ',' << r.atom1 << '\n';
    }
    os.precision(old);
}

}  // namespace wentzell
