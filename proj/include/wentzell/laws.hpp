#pragma once

#include <functional>
#include <optional>
#include <string>

namespace wentzell {

struct ScalarLaw {
    std::string descriptor;
    std::optional<std::function<double(double)>> density;
    std::optional<std::function<double(double)>> laplace_transform;
    std::optional<double> mean;
    std::optional<std::function<double(double)>> cdf;
};

// Inverse local time K_r.
ScalarLaw k_r_law(double r);

// L_{H_a} for reflected BM from 0: exponential with mean a.
ScalarLaw local_time_at_exit_law(double a);

// L_t under P_0: density 2 g(t,y) on y >= 0.
ScalarLaw local_time_law(double t);

double v_exit(double alpha, double beta, double a, double x);

double kill_before_hit_prob(double a, double beta);

double joint_refl_lt_density(double s, double x, double y);

double zeta_lt(double beta, double gamma, double lambda);

double ls_alpha_potential(double alpha, double gamma, double x);

double sticky_exit_mean(double gamma, double eps);

}  // namespace wentzell
