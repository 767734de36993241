#include "wentzell/laws.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "wentzell/special.hpp"

namespace wentzell {

namespace {

std::string tag(const char* name, double p) {
    std::ostringstream os;
    os << name << '(' << p << ')';
    return os.str();
}

}  // namespace

ScalarLaw k_r_law(double r) {
    ScalarLaw law;
    law.descriptor = tag("K_r", r);
    law.density = [r](double l) {
        if (l <= 0.0) return 0.0;
        return r / std::sqrt(2.0 * std::numbers::pi * l * l * l) * std::exp(-r * r / (2.0 * l));
    };
    law.laplace_transform = [r](double lambda) { return std::exp(-std::sqrt(2.0 * lambda) * r); };
    law.cdf = [r](double l) { return l <= 0.0 ? 0.0 : std::erfc(r / std::sqrt(2.0 * l)); };
    return law;
}

ScalarLaw local_time_at_exit_law(double a) {
    ScalarLaw law;
    law.descriptor = tag("L_H", a);
    law.density = [a](double y) { return y < 0.0 ? 0.0 : std::exp(-y / a) / a; };
    law.laplace_transform = [a](double lambda) { return 1.0 / (1.0 + a * lambda); };
    law.mean = a;
    law.cdf = [a](double y) { return y <= 0.0 ? 0.0 : -std::expm1(-y / a); };
    return law;
}

ScalarLaw local_time_law(double t) {
    ScalarLaw law;
    law.descriptor = tag("L_t", t);
    law.density = [t](double y) { return y < 0.0 ? 0.0 : 2.0 * gauss(t, y); };
    // E e^{-lambda L_t} = e^{lambda^2 t/2} erfc(lambda sqrt(t/2))
    law.laplace_transform = [t](double lambda) { return erfcx(lambda * std::sqrt(0.5 * t)); };
    law.mean = std::sqrt(2.0 * t / std::numbers::pi);
    law.cdf = [t](double y) { return y <= 0.0 ? 0.0 : std::erf(y / std::sqrt(2.0 * t)); };
    return law;
}

double v_exit(double alpha, double beta, double a, double x) {
    const double ax = std::abs(x);
    const double k = std::sqrt(2.0 * alpha);
    if (ax > a) return std::exp(-k * (ax - a));
    if (k == 0.0) return (1.0 + beta * ax) / (1.0 + beta * a);
    const double num = k * std::cosh(k * ax) + beta * std::sinh(k * ax);
    const double den = k * std::cosh(k * a) + beta * std::sinh(k * a);
    if (std::isfinite(den)) return num / den;
    // cosh and sinh both behave like e^{k y}/2 once k a overflows
    return std::exp(k * (ax - a));
}

double kill_before_hit_prob(double a, double beta) { return 1.0 / (1.0 + beta * a); }

double joint_refl_lt_density(double s, double x, double y) {
    const double z = x + y;
    return 2.0 * z / std::sqrt(2.0 * std::numbers::pi * s * s * s) * std::exp(-z * z / (2.0 * s));
}

double zeta_lt(double beta, double gamma, double lambda) {
    return beta / (beta + std::sqrt(2.0 * lambda) + gamma * lambda);
}

double ls_alpha_potential(double alpha, double gamma, double x) {
    const double k = std::sqrt(2.0 * alpha);
    return std::exp(-k * x) / (k + alpha * gamma);
}

double sticky_exit_mean(double gamma, double eps) { return eps * eps + gamma * eps; }

}  // namespace wentzell
