#include "doctest.h"

#include <cmath>
#include <tuple>
#include <sstream>

#include "wentzell/errors.hpp"
#include "wentzell/kernels.hpp"
#include "wentzell/laws.hpp"
#include "wentzell/quadrature.hpp"
#include "wentzell/special.hpp"

using namespace wentzell;

namespace {

double bump(double y) { return std::exp(-(y - 0.5) * (y - 0.5) / 0.08); }

std::vector<std::pair<const char*, BoundaryModel>> all_models() {
    return {{"reflecting", BoundaryModel::reflecting()},
            {"elastic", BoundaryModel::elastic(1.0)},
            {"sticky", BoundaryModel::sticky(1.0)},
            {"general", BoundaryModel::general(1.0, 1.0)},
            {"absorbing-stop", BoundaryModel::absorbing()},
            {"absorbing-kill", BoundaryModel::absorbing(AbsorbPolicy::Kill)},
            {"trapkill", BoundaryModel::trap_kill(1.0)}};
}

double laplace_in_time(const std::function<double(double)>& h, double lambda) {
    auto f = [&](double t) { return t <= 0.0 ? 0.0 : std::exp(-lambda * t) * h(t); };
    return integrate_pieces(f, {0.0, 0.05, 0.5, 2.0, 8.0}, 1e-12) + integrate(f, 8.0, kInf, 1e-12);
}

}  // namespace

TEST_CASE("g_family closed forms") {
    CHECK(g_family(0.0, 0.0, 1.0, 0.0) == doctest::Approx(0.398942280401432677939946).epsilon(1e-15));
    // mpmath: g(1,0) - e^{1/2} erfc(1/sqrt 2)/2
    CHECK(std::abs(g_family(1.0, 0.0, 1.0, 0.0) - 0.137363988536309306258102223089) < 1e-14);
    // mpmath: e^2 erfc(sqrt 2)
    CHECK(std::abs(g_family(0.0, 1.0, 1.0, 0.0) - 0.336204002446341212854298228058) < 1e-14);
}

TEST_CASE("g_family general case against 30-digit quadrature") {
    CHECK(std::abs(g_family(1.0, 1.0, 1.0, 0.5) - 0.168408496121328578110103997104) < 1e-10);
    CHECK(std::abs(g_family(1.0, 1.0, 2.0, 0.3) - 0.105503060390067306652089708748) < 1e-10);
    CHECK(std::abs(g_family(0.5, 2.0, 1.0, 0.5) - 0.159706849678297133253392084286) < 1e-10);
}

TEST_CASE("g_family stays finite for large arguments") {
    CHECK(std::isfinite(g_family(50.0, 0.0, 1.0, 30.0)));
    CHECK(g_family(50.0, 0.0, 1.0, 30.0) >= 0.0);
    CHECK(std::isfinite(g_family(0.0, 1e-3, 1.0, 10.0)));
    CHECK_THROWS_AS(g_family(1.0, 1.0, 0.0, 0.5), Error);
}

TEST_CASE("g_family parameter limits") {
    for (double t : {0.25, 1.0, 2.0}) {
        for (double x : {0.0, 0.5, 1.5}) {
            CHECK(std::abs(g_family(1e-6, 1.0, t, x) / g_family(0.0, 1.0, t, x) - 1.0) < 1e-4);
            CHECK(std::abs(g_family(1.0, 1e-6, t, x) / g_family(1.0, 0.0, t, x) - 1.0) < 1e-4);
        }
    }
}

TEST_CASE("transition_measure atoms and masses") {
    CHECK(std::abs(transition_measure(BoundaryModel::sticky(1.0), 1.0, 0.0).atom_at(0.0) - 0.336204002446341) < 1e-12);
    const auto a = transition_measure(BoundaryModel::absorbing(), 0.7, 0.0);
    CHECK(a.atom_at(0.0) == 1.0);
    CHECK(a.density(0.3) == 0.0);
    for (double gamma : {0.3, 1.0, 4.0}) {
        for (double x : {0.0, 0.4}) {
            CHECK(std::abs(transition_measure(BoundaryModel::sticky(gamma), 1.0, x).total_mass() - 1.0) < 1e-8);
        }
    }
    CHECK(std::abs(transition_measure(BoundaryModel::reflecting(), 0.5, 0.2).total_mass() - 1.0) < 1e-10);
    CHECK(std::abs(transition_measure(BoundaryModel::absorbing(), 0.5, 0.2).total_mass() - 1.0) < 1e-10);
    CHECK(transition_measure(BoundaryModel::elastic(1.0), 1.0, 0.0).total_mass() < 1.0);
    CHECK(std::abs(trap_kill_atom(1.0, 1.0, 0.3) - 0.356462348547035408061883226913) < 1e-10);
    CHECK(trap_kill_atom(2.0, 0.5, 0.0) == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("elastic density is dominated by the Neumann density") {
    for (double t : {0.1, 1.0}) {
        for (double x : {0.0, 0.5}) {
            for (double y : {0.0, 0.2, 1.0, 2.0}) {
                CHECK(transition_measure(BoundaryModel::elastic(1.0), t, x).density(y) <= p_neumann(t, x, y) + 1e-15);
            }
        }
    }
}

TEST_CASE("resolvent_measure examples") {
    CHECK(resolvent_measure(BoundaryModel::reflecting(), 2.0, 0.0).density(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r_dirichlet(1.3, 0.0, 0.7) == 0.0);
    CHECK(resolvent_measure(BoundaryModel::general(1.0, 1.0), 2.0, 0.0).atom_at(0.0) ==
          doctest::Approx(0.2).epsilon(1e-15));
    CHECK_THROWS_AS(resolvent_measure(BoundaryModel::sticky(1.0), 0.0, 0.0), Error);
}

TEST_CASE("laplace_factors") {
    CHECK(laplace_factors(0.0, 0.0, 0.5, 1.0).e_lambda == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(laplace_factors(1.0, 1.0, 2.0, 0.0).rho == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(laplace_factors(1.0, 1.0, 2.0, 0.0).e_lambda == 1.0);
    const auto f = laplace_factors(0.3, 0.2, 1.7, 0.4);
    CHECK(f.rho <= 1.0 / f.sqrt2lambda);
}

TEST_CASE("Laplace transform of the transition kernel is the resolvent") {
    const double lambda = 1.0;
    for (const auto& [name, model] : all_models()) {
        for (auto [x, y] : {std::pair{0.3, 0.8}, std::pair{1.0, 0.4}}) {
            INFO(name << " x=" << x << " y=" << y);
            const double lhs = laplace_in_time([&](double t) { return transition_measure(model, t, x).density(y); }, lambda);
            const double rhs = resolvent_measure(model, lambda, x).density(y);
            CHECK(std::abs(lhs / rhs - 1.0) < 1e-6);
            const double ra = resolvent_measure(model, lambda, x).atom_at(0.0);
            const double la = laplace_in_time([&](double t) { return transition_measure(model, t, x).atom_at(0.0); }, lambda);
            CHECK(std::abs(la - ra) < 1e-6 * std::max(ra, 1e-3));
        }
    }
}

TEST_CASE("Chapman-Kolmogorov for the Neumann kernel") {
    for (auto [t, s, x, y] : {std::tuple{0.3, 0.7, 0.2, 0.5}, std::tuple{1.0, 0.5, 0.0, 1.3}}) {
        auto f = [&](double z) { return p_neumann(t, x, z) * p_neumann(s, z, y); };
        CHECK(std::abs(integrate_pieces(f, {0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}, 1e-11) - p_neumann(t + s, x, y)) < 1e-8);
    }
    // free-line kernel: Gaussian convolution
    auto f = [](double z) { return heat_p(0.4, 0.1, z) * heat_p(0.6, z, -0.2); };
    CHECK(std::abs(integrate(f, -kInf, kInf, 1e-12) - heat_p(1.0, 0.1, -0.2)) < 1e-12);
}

TEST_CASE("Wentzell condition on R_lambda f from the analytic jet") {
    for (const auto& model : {BoundaryModel::elastic(1.0), BoundaryModel::sticky(1.0), BoundaryModel::general(1.0, 1.0),
                              BoundaryModel::reflecting(), BoundaryModel::general(0.3, 2.5)}) {
        const auto jet = resolvent_jet_at_zero(model, 1.0, bump);
        INFO(describe(model));
        CHECK(std::abs(wentzell_residual(model, jet.value, jet.d1, jet.d2)) < 1e-8);
        CHECK(std::abs(jet.value - resolvent_apply(model, 1.0, bump, 0.0)) < 1e-10);
    }
    // the jet matches finite differences of resolvent_apply
    const auto model = BoundaryModel::general(1.0, 1.0);
    const auto jet = resolvent_jet_at_zero(model, 1.0, bump);
    const double h = 1e-3;
    const double d1 = (resolvent_apply(model, 1.0, bump, h) - resolvent_apply(model, 1.0, bump, 0.0)) / h;
    CHECK(std::abs(d1 - jet.d1) < 5e-3);
}

TEST_CASE("elastic resolvent: two algebraic forms agree") {
    for (double beta : {0.5, 1.0, 3.0}) {
        for (double lambda : {0.5, 2.0}) {
            for (auto [x, y] : {std::pair{0.0, 0.3}, std::pair{0.4, 0.4}, std::pair{1.2, 0.1}}) {
                CHECK(std::abs(elastic_resolvent_neumann_form(beta, lambda, x, y) -
                               elastic_resolvent_dirichlet_form(beta, lambda, x, y)) < 1e-13);
            }
        }
    }
}

TEST_CASE("first-passage decomposition of the resolvent") {
    for (const auto& model : {BoundaryModel::sticky(1.0), BoundaryModel::elastic(1.0), BoundaryModel::general(1.0, 1.0)}) {
        const double x = 0.5, lambda = 1.0;
        const auto rx = resolvent_measure(model, lambda, x);
        const auto r0 = resolvent_measure(model, lambda, 0.0);
        const double e = std::exp(-std::sqrt(2.0 * lambda) * x);
        for (double y : {0.1, 0.3, 0.7, 1.2, 2.5}) {
            CHECK(std::abs(rx.density(y) - r_dirichlet(lambda, x, y) - e * r0.density(y)) < 1e-12);
        }
        CHECK(std::abs(rx.atom_at(0.0) - e * r0.atom_at(0.0)) < 1e-12);
    }
}

TEST_CASE("interval Dirichlet resolvent") {
    CHECK(interval_dirichlet_resolvent(1.0, 0.0, 0.4) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::abs(interval_dirichlet_resolvent(1.0, 0.3, 0.7) - interval_dirichlet_resolvent(1.0, 0.7, 0.3)) < 1e-14);
    // eigenfunction series sum over odd k of 2 / (1 + k^2 pi^2 / 2), mpmath
    CHECK(std::abs(interval_dirichlet_resolvent(1.0, 0.5, 0.5) - 0.430528585790273821925065778572) < 1e-8);
    CHECK(image_series_terms(1.0) >= 1);
    CHECK(image_series_terms(1e-4) > image_series_terms(1.0));
    // x-derivative at 0 against 2 sinh(k(1-y))/sinh k
    const double k = std::sqrt(2.0);
    CHECK(std::abs(interval_dirichlet_resolvent_dx(1.0, 0.0, 0.3) - 2.0 * std::sinh(k * 0.7) / std::sinh(k)) < 1e-12);
}

TEST_CASE("interval hitting transforms") {
    const auto h = interval_hitting_lt(0.5, 0.5);
    CHECK(std::abs(h.toward0 - 0.443409441985036954329448898892) < 1e-14);
    CHECK(std::abs(h.toward1 - 0.443409441985036954329448898892) < 1e-14);
    const auto z = interval_hitting_lt(2.0, 0.0);
    CHECK(z.toward0 == 1.0);
    CHECK(z.toward1 == 0.0);
    const auto small = interval_hitting_lt(1e-10, 0.3);
    CHECK(std::abs(small.toward0 + small.toward1 - 1.0) < 1e-8);
}

TEST_CASE("interval resolvent") {
    const auto r = BoundaryModel::reflecting();
    const auto r1 = BoundaryModel::reflecting(Side::AtOne);
    auto one = [](double) { return 1.0; };
    CHECK(std::abs(interval_resolvent(r, r1, 1.0, one, 0.3) - 1.0) < 1e-10);

    auto sym = [](double y) { return std::cos(4.0 * (y - 0.5)); };
    for (const auto& [m0, m1] : {std::pair{BoundaryModel::elastic(2.0), BoundaryModel::elastic(2.0, Side::AtOne)},
                                 std::pair{BoundaryModel::sticky(0.5), BoundaryModel::sticky(0.5, Side::AtOne)},
                                 std::pair{BoundaryModel::general(1.0, 1.0), BoundaryModel::general(1.0, 1.0, Side::AtOne)}}) {
        const auto u = interval_resolvent_boundary(m0, m1, 1.5, sym);
        CHECK(std::abs(u.at0 - u.at1) < 1e-12);
    }

    // Elastic(1) at 0 and Reflecting at 1 with f = 1: the boundary values solve the Wentzell rows.
    const auto e = BoundaryModel::elastic(1.0);
    const double v0 = interval_resolvent(e, r1, 1.0, one, 0.0);
    const double h = 1e-5;
    const double d0 = (interval_resolvent(e, r1, 1.0, one, h) - v0) / h;
    CHECK(std::abs(d0 - 1.0 * v0) < 1e-4);
    CHECK(v0 < 1.0);

    // Both ends absorbing-kill: just the Dirichlet resolvent.
    const auto ak0 = BoundaryModel::absorbing(AbsorbPolicy::Kill);
    const auto ak1 = BoundaryModel::absorbing(AbsorbPolicy::Kill, Side::AtOne);
    CHECK(interval_resolvent(ak0, ak1, 1.0, one, 0.0) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("K_ab_apply") {
    CHECK(K_ab_apply(1.0, 0.5, [](double) { return 0.0; }, 1.0) == 0.0);
    // numerical Laplace transform of t -> K_ab(1)(t), a = 1, b = 0.5, lambda = 1
    auto k = [](double t) { return K_ab_apply(1.0, 0.5, [](double) { return 1.0; }, t); };
    auto f = [&](double t) { return t <= 0.0 ? 0.0 : std::exp(-t) * k(t); };
    const double lt = integrate_pieces(f, {0.0, 0.1, 0.5, 2.0, 10.0}, 1e-10) + integrate(f, 10.0, 60.0, 1e-10);
    // mpmath: exp(-sqrt(2)/2) / (1 + sqrt 2)
    CHECK(std::abs(lt - 0.204235739157462509846490099695) < 1e-6);

    // a = gamma^-2, b = gamma x, f(s) = exp(-beta s / gamma) gives gamma * g_{beta,gamma}(t, x)
    for (double gamma : {1.0, 2.0}) {
        const double beta = 1.0, t = 1.0, x = 0.5;
        const double kab = K_ab_apply(1.0 / (gamma * gamma), gamma * x, [&](double s) { return std::exp(-beta * s / gamma); }, t);
        CHECK(std::abs(kab - gamma * g_family(beta, gamma, t, x)) < 1e-8);
    }
    CHECK_THROWS_AS(K_ab_apply(1.0, 0.0, [](double) { return 1.0; }, 0.0), Error);
}

TEST_CASE("kernel table export") {
    const auto rows = kernel_table(BoundaryModel::sticky(1.0), 1.0, 0.0, 6.0, 101, false);
    CHECK(rows.size() == 101);
    CHECK(std::abs(rows[0].atom0 - 0.336204002446341) < 1e-12);
    std::ostringstream os;
    write_kernel_table(os, BoundaryModel::sticky(1.0), false, rows);
    const auto text = os.str();
    CHECK(text.rfind("# model Sticky(gamma=1)", 0) == 0);
    CHECK(text.find("t_or_lambda,x,y,density,atom0,atom1\n") != std::string::npos);
}
