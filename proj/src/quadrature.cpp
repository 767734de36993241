#include "wentzell/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace wentzell {

double integrate(const RealFn& f, double a, double b, double rel_tol, unsigned max_depth) {
    if (a == b) return 0.0;
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, max_depth, rel_tol, &err);
}

double integrate_pieces(const RealFn& f, std::vector<double> points, double rel_tol) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) total += integrate(f, points[i], points[i + 1], rel_tol);
    return total;
}

}  // namespace wentzell
