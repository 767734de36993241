#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "wentzell/model.hpp"

namespace wentzell {

// Sub-probability measure: density on the interior plus point masses at boundary points.
struct BoundaryMeasure {
    std::function<double(double)> density;
    std::map<double, double> atoms;
    double support_end;  // +inf on the half-line, 1 on the interval

    double atom_at(double point) const;
    double density_mass(double from, double to) const;
    double total_mass() const;
};

struct LaplaceFactors {
    double e_lambda;
    double rho;
    double sqrt2lambda;
};

LaplaceFactors laplace_factors(double beta, double gamma, double lambda, double x);

// g, g_{beta,0}, g_{0,gamma} or g_{beta,gamma} depending on which parameters vanish.
double g_family(double beta, double gamma, double t, double x);

double heat_p(double t, double x, double y);
double p_neumann(double t, double x, double y);
double p_dirichlet(double t, double x, double y);

double r_neumann(double lambda, double x, double y);
double r_dirichlet(double lambda, double x, double y);

// Two algebraic forms of the elastic resolvent density.
double elastic_resolvent_neumann_form(double beta, double lambda, double x, double y);
double elastic_resolvent_dirichlet_form(double beta, double lambda, double x, double y);

// Every half-line resolvent has the shape
//   r^D(x,y) dy + C e^{-k(x+y)} dy + A e^{-kx} eps_0,   k = sqrt(2 lambda).
struct ResolventShape {
    double k;
    double C;
    double A;
};

ResolventShape resolvent_shape(const BoundaryModel& model, double lambda);

BoundaryMeasure transition_measure(const BoundaryModel& model, double t, double x);
BoundaryMeasure resolvent_measure(const BoundaryModel& model, double lambda, double x);

// Absorbing-stop atom and TrapKill atom at 0.
double absorbed_mass(double t, double x);
double trap_kill_atom(double beta, double t, double x);

// R_lambda f(x) = integral against resolvent_measure.
double resolvent_apply(const BoundaryModel& model, double lambda, const std::function<double(double)>& f, double x);

// R_lambda f(0), (R_lambda f)'(0+), (R_lambda f)''(0+) from the kernel derivatives.
struct BoundaryJet {
    double value;
    double d1;
    double d2;
};
BoundaryJet resolvent_jet_at_zero(const BoundaryModel& model, double lambda, const std::function<double(double)>& f);

// Dirichlet resolvent on [0,1] by the image series, and its x-derivative.
double interval_dirichlet_resolvent(double lambda, double x, double y);
double interval_dirichlet_resolvent_dx(double lambda, double x, double y);
int image_series_terms(double lambda);

struct HittingLT {
    double toward0;
    double toward1;
};
HittingLT interval_hitting_lt(double lambda, double x);

struct IntervalBoundaryValues {
    double at0;
    double at1;
};
IntervalBoundaryValues interval_resolvent_boundary(const BoundaryModel& model0, const BoundaryModel& model1,
                                                   double lambda, const std::function<double(double)>& f);
double interval_resolvent(const BoundaryModel& model0, const BoundaryModel& model1, double lambda,
                          const std::function<double(double)>& f, double x);

double K_ab_apply(double a, double b, const std::function<double(double)>& f, double t);

struct KernelRow {
    double t_or_lambda;
    double x;
    double y;
    double density;
    double atom0;
    double atom1;
};

// Rows over y in [0, y_max] for one (model, x); `resolvent` selects r_lambda instead of p_t.
std::vector<KernelRow> kernel_table(const BoundaryModel& model, double t_or_lambda, double x, double y_max,
                                    int points, bool resolvent);
void write_kernel_table(std::ostream& os, const BoundaryModel& model, bool resolvent,
                        const std::vector<KernelRow>& rows);

}  // namespace wentzell
