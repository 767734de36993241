#pragma once

namespace wentzell {

// Scaled complementary error function exp(x^2) erfc(x).
double erfcx(double x);

// Standard Gaussian kernel g(t,x) = (2 pi t)^{-1/2} exp(-x^2 / 2t).
double gauss(double t, double x);

}  // namespace wentzell
