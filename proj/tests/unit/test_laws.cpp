#include "doctest.h"

#include <cmath>

#include "wentzell/kernels.hpp"
#include "wentzell/laws.hpp"
#include "wentzell/quadrature.hpp"
#include "wentzell/special.hpp"

using namespace wentzell;

namespace {

double numeric_lt(const std::function<double(double)>& density, double lambda, std::vector<double> pts) {
    auto f = [&](double t) { return t <= 0.0 ? 0.0 : std::exp(-lambda * t) * density(t); };
    const double last = pts.back();
    return integrate_pieces(f, pts, 1e-12) + integrate(f, last, kInf, 1e-12);
}

}  // namespace

TEST_CASE("k_r_law") {
    const auto law = k_r_law(1.0);
    CHECK((*law.laplace_transform)(0.5) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    auto& d = *law.density;
    // l = 1/u^2 tames the l^{-3/2} tail
    auto in_u = [&](double u) { return u <= 0.0 ? 0.0 : d(1.0 / (u * u)) * 2.0 / (u * u * u); };
    const double mass = integrate_pieces(in_u, {0.0, 1.0, 4.0}, 1e-12) + integrate(in_u, 4.0, kInf, 1e-12);
    CHECK(std::abs(mass - 1.0) < 1e-8);
    for (double lambda : {0.5, 1.0, 2.0}) {
        CHECK(std::abs(numeric_lt(d, lambda, {0.0, 0.05, 0.3, 1.0, 10.0}) - (*law.laplace_transform)(lambda)) < 1e-7);
    }
}

TEST_CASE("local_time_at_exit_law is exponential with mean a") {
    const auto law = local_time_at_exit_law(2.0);
    CHECK(*law.mean == 2.0);
    CHECK((*law.cdf)(2.0) == doctest::Approx(1.0 - std::exp(-1.0)));
    for (double lambda : {0.5, 1.0, 2.0}) {
        CHECK(std::abs(numeric_lt(*law.density, lambda, {0.0, 1.0, 5.0}) - (*law.laplace_transform)(lambda)) < 1e-7);
    }
}

TEST_CASE("local_time_law: density 2g, mean sqrt(2t/pi)") {
    const auto law = local_time_law(1.0);
    CHECK((*law.density)(0.3) == doctest::Approx(2.0 * gauss(1.0, 0.3)));
    CHECK(*law.mean == doctest::Approx(std::sqrt(2.0 / M_PI)));
    for (double lambda : {0.5, 1.0, 2.0}) {
        CHECK(std::abs(numeric_lt(*law.density, lambda, {0.0, 1.0, 4.0}) - (*law.laplace_transform)(lambda)) < 1e-7);
    }
    CHECK((*law.cdf)(100.0) == doctest::Approx(1.0));
}

TEST_CASE("v_exit") {
    CHECK(v_exit(0.5, 1.0, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(v_exit(0.5, 0.0, 1.0, 0.0) - 0.648054273663885399574977353226) < 1e-14);
    CHECK(v_exit(0.0, 1.0, 1.0, 0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(v_exit(1e-12, 1.0, 1.0, 0.0) == doctest::Approx(0.5).epsilon(1e-9));
    // even extension
    CHECK(v_exit(0.5, 1.0, 1.0, -0.4) == doctest::Approx(v_exit(0.5, 1.0, 1.0, 0.4)).epsilon(1e-15));
    // 1/2 v'' - alpha v = 0 inside (0, a)
    const double h = 1e-3, alpha = 0.7, beta = 1.3;
    for (double x : {0.25, 0.5, 0.75}) {
        const double vpp = (v_exit(alpha, beta, 1.0, x + h) - 2.0 * v_exit(alpha, beta, 1.0, x) +
                            v_exit(alpha, beta, 1.0, x - h)) / (h * h);
        CHECK(std::abs(0.5 * vpp - alpha * v_exit(alpha, beta, 1.0, x)) < 1e-6);
    }
    // no overflow deep in the tail
    CHECK(std::isfinite(v_exit(200.0, 1.0, 1.0, 5.0)));
}

TEST_CASE("kill_before_hit_prob") {
    CHECK(kill_before_hit_prob(1.0, 1.0) == 0.5);
    CHECK(kill_before_hit_prob(1.0, 1e-12) == doctest::Approx(1.0));
    CHECK(kill_before_hit_prob(0.5, 2.0) == 0.5);
}

TEST_CASE("joint_refl_lt_density") {
    CHECK(joint_refl_lt_density(1.0, 0.0, 0.0) == 0.0);
    CHECK(std::abs(joint_refl_lt_density(1.0, 1.0, 0.0) - 0.483941449038286699595660385871) < 1e-14);
    auto f = [](double x) { return joint_refl_lt_density(1.0, x, 0.3); };
    const double marginal = integrate_pieces(f, {0.0, 1.0, 4.0}, 1e-12) + integrate(f, 4.0, kInf, 1e-12);
    CHECK(std::abs(marginal - (*local_time_law(1.0).density)(0.3)) < 1e-8);
}

TEST_CASE("zeta_lt, ls_alpha_potential, sticky_exit_mean") {
    CHECK(zeta_lt(1.0, 0.0, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(zeta_lt(1.0, 1.0, 2.0) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(ls_alpha_potential(2.0, 0.0, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(ls_alpha_potential(2.0, 1.0, 0.0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(sticky_exit_mean(0.0, 0.1) == doctest::Approx(0.01).epsilon(1e-15));
    CHECK(sticky_exit_mean(0.3, 0.1) == doctest::Approx(0.04).epsilon(1e-15));
}
