#include "volterra/forward.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "volterra/compensated_sum.hpp"
#include "volterra/errors.hpp"
#include "volterra/quadrature.hpp"

namespace volterra {
namespace {

constexpr double kPhi2Frequency = 10.0 * std::numbers::pi;

// int_0^t exp(-a (t - s)) s exp(-s) ds with b = a - 1 != 0.
double convolve_phi1(double a, double t)
{
    const double b = a - 1.0;
    return std::exp(-t) * (t / b - 1.0 / (b * b)) + std::exp(-a * t) / (b * b);
}

// int_0^t exp(-a (t - s)) exp(-s) sin(w s) ds.
double convolve_phi2(double a, double t)
{
    const double b = a - 1.0;
    const double w = kPhi2Frequency;
    return (std::exp(-t) * (b * std::sin(w * t) - w * std::cos(w * t)) + w * std::exp(-a * t)) / (b * b + w * w);
}

void check_benchmark(Benchmark f)
{
    if (f != Benchmark::Phi1 && f != Benchmark::Phi2) {
        throw UnsupportedFunction("benchmark id " + std::to_string(static_cast<int>(f)) + " is not supported");
    }
}

} // namespace

double benchmark_value(Benchmark f, double t)
{
    check_benchmark(f);
    if (f == Benchmark::Phi1) {
        return t * std::exp(-t);
    }
    return std::exp(-t) * std::sin(kPhi2Frequency * t);
}

std::function<double(double)> benchmark_function(Benchmark f)
{
    check_benchmark(f);
    return [f](double t) { return benchmark_value(f, t); };
}

std::string_view to_string(Benchmark f)
{
    switch (f) {
    case Benchmark::Phi1:
        return "phi1";
    case Benchmark::Phi2:
        return "phi2";
    }
    throw UnsupportedFunction("unknown benchmark id");
}

Benchmark parse_benchmark(std::string_view name)
{
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "phi1") {
        return Benchmark::Phi1;
    }
    if (lower == "phi2") {
        return Benchmark::Phi2;
    }
    throw UnsupportedFunction("unknown benchmark '" + std::string(name) + "' (expected phi1 or phi2)");
}

double forward_exact(const KernelSpec &spec, Benchmark f, double t)
{
    check_benchmark(f);
    if (t == 0.0) {
        return 0.0;
    }
    CompensatedSum<double> sum;
    for (int p = 1; p <= spec.order(); ++p) {
        const double a = detail::decay_rate<double>(p);
        const double term = f == Benchmark::Phi1 ? convolve_phi1(a, t) : convolve_phi2(a, t);
        sum += detail::alternating_sign(p) * a * term;
    }
    return sum.value();
}

double forward_oracle(const KernelSpec &spec, const std::function<double(double)> &f, double t,
                      double abs_tolerance)
{
    if (t < 0.0) {
        throw std::invalid_argument("forward_oracle needs t >= 0");
    }
    const double per_term = abs_tolerance / spec.order();
    CompensatedSum<double> sum;
    for (int p = 1; p <= spec.order(); ++p) {
        const double a = detail::decay_rate<double>(p);
        const auto integrand = [&](double s) { return a * std::exp(-a * (t - s)) * f(s); };
        sum += detail::alternating_sign(p) * integrate_adaptive(integrand, 0.0, t, per_term);
    }
    return sum.value();
}

GridFunction<double> sample_rhs(const KernelSpec &spec, Benchmark f, const Mesh &mesh)
{
    Eigen::VectorXd values(mesh.size());
    for (int i = 1; i <= mesh.size(); ++i) {
        values(i - 1) = forward_exact(spec, f, mesh.node(i));
    }
    return {mesh, Location::Nodes, std::move(values)};
}

GridFunction<double> sample_rhs_oracle(const KernelSpec &spec, const std::function<double(double)> &f,
                                       const Mesh &mesh)
{
    Eigen::VectorXd values(mesh.size());
    for (int i = 1; i <= mesh.size(); ++i) {
        values(i - 1) = forward_oracle(spec, f, mesh.node(i));
    }
    return {mesh, Location::Nodes, std::move(values)};
}

} // namespace volterra
