#pragma once

#include <functional>

namespace ustat {

// Adaptive Gauss-Kronrod integration of f over [a,b] (GSL QAG, 61-point rule).
double integrate(const std::function<double(double)>& f, double a, double b,
                 double epsrel = 1e-12, double epsabs = 0.0);

}  // namespace ustat
