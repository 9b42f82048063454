#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "volterra/kernel.hpp"
#include "volterra/mesh.hpp"

namespace volterra {

/// Known boundary functions used to synthesize data.
///   Phi1(t) = t e^{-t},  Phi2(t) = e^{-t} sin(10 pi t).
enum class Benchmark { Phi1, Phi2 };

double benchmark_value(Benchmark f, double t);
std::function<double(double)> benchmark_function(Benchmark f);

std::string_view to_string(Benchmark f);
/// Accepts "phi1" / "phi2" (case-insensitive); throws UnsupportedFunction.
Benchmark parse_benchmark(std::string_view name);

/// y(t) = int_0^t K_N(t - s) f(s) ds in closed form.
double forward_exact(const KernelSpec &spec, Benchmark f, double t);

/// The same convolution for an arbitrary f, by adaptive quadrature applied
/// separately to each exponential term. Used to certify forward_exact.
double forward_oracle(const KernelSpec &spec, const std::function<double(double)> &f, double t,
                      double abs_tolerance = 1e-12);

/// y(t_i), i = 1..n, from forward_exact.
GridFunction<double> sample_rhs(const KernelSpec &spec, Benchmark f, const Mesh &mesh);

/// y(t_i) from forward_oracle, for functions outside the benchmark set.
GridFunction<double> sample_rhs_oracle(const KernelSpec &spec, const std::function<double(double)> &f,
                                       const Mesh &mesh);

} // namespace volterra
