#pragma once

#include <functional>

namespace volterra {

/// Adaptive Gauss-Kronrod (7/15) integration of f over [a, b]. An interval
/// is accepted once the 7- and 15-point rules agree to its share of
/// abs_tolerance; otherwise it is bisected. Throws QuadratureNonconvergence
/// if any branch needs more than max_depth bisections.
double integrate_adaptive(const std::function<double(double)> &f, double a, double b,
                          double abs_tolerance = 1e-12, int max_depth = 60);

} // namespace volterra
