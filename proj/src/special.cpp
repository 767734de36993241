#include "wentzell/special.hpp"

#include <cmath>
#include <numbers>

namespace wentzell {

namespace {

// Continued fraction 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))), evaluated bottom-up.
double erfcx_continued_fraction(double x) {
    constexpr int terms = 80;
    double tail = x;
    for (int k = terms; k >= 1; --k) tail = x + 0.5 * k / tail;
    return 1.0 / (tail * std::sqrt(std::numbers::pi));
}

}  // namespace

double erfcx(double x) {
    if (x < 0.0) {
        const double xx = x * x;
        const double lo = std::fma(x, x, -xx);
        return 2.0 * std::exp(xx) * (1.0 + lo) - erfcx(-x);
    }
    if (x < 10.0) {
        // exp(x^2) with the rounding error of x*x folded back in.
        const double xx = x * x;
        const double lo = std::fma(x, x, -xx);
        return std::exp(xx) * std::erfc(x) * (1.0 + lo);
    }
    return erfcx_continued_fraction(x);
}

double gauss(double t, double x) {
    return std::exp(-x * x / (2.0 * t)) / std::sqrt(2.0 * std::numbers::pi * t);
}

}  // namespace wentzell
