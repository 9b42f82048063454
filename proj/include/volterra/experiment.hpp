#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "volterra/fibonacci.hpp"
#include "volterra/forward.hpp"
#include "volterra/solver.hpp"

namespace volterra {

/// Discrete Chebyshev norm over midpoints: max_i |truth(t_{i-1/2}) - phi_{i-1/2}|.
template <typename Scalar>
double error_norm(const std::function<double(double)> &truth, const SolveResult<Scalar> &result)
{
    const Mesh &mesh = result.mesh;
    double worst = 0.0;
    for (int i = 1; i <= mesh.size(); ++i) {
        const double diff = std::abs(truth(mesh.midpoint(i)) - static_cast<double>(result.phi.values(i - 1)));
        if (std::isnan(diff)) {
            return diff;
        }
        worst = std::max(worst, diff);
    }
    return worst;
}

enum class PerturbationPattern { Sawtooth };

struct PerturbationSpec {
    double delta = 0.0;
    PerturbationPattern pattern = PerturbationPattern::Sawtooth;
};

/// (-1)^i at nodes i = 1..n, so the first node gets -1.
GridFunction<double> unit_sawtooth(const Mesh &mesh);

/// y_i + (-1)^i delta.
GridFunction<double> perturb(const GridFunction<double> &y, const PerturbationSpec &perturbation);

/// Least-squares slope of log(y) against log(x).
double log_log_slope(std::span<const double> x, std::span<const double> y);

struct ConvergenceRow {
    double h;
    int n;
    double error_midpoint;
    double error_product;
};

struct ConvergenceReport {
    KernelSpec kernel;
    Benchmark benchmark;
    std::vector<ConvergenceRow> rows; // decreasing h
    double order_midpoint;
    double order_product;
};

/// Runs both schemes on exact data over T = 1 for every step h = 1/n and
/// fits the convergence order. Each step must be the reciprocal of an integer.
ConvergenceReport convergence_table(const KernelSpec &spec, Benchmark f, std::span<const double> steps);

/// Steps 1/64 .. 1/1024.
std::vector<double> default_convergence_steps();

struct NoisyError {
    double error;
    int n;
    double h;
};

/// Error of a solve on sawtooth-perturbed data with n = round(T / h).
/// A degenerate diagonal yields +inf.
NoisyError perturbed_error(const KernelSpec &spec, Benchmark f, Scheme scheme, double delta, double horizon,
                           double h);

struct StepInterval {
    double lower;
    double upper;
};

/// [max(1e-4, T/1000), T].
StepInterval default_step_interval(double horizon);

inline constexpr int kFibonacciReductions = 10;

struct OptimizationResult {
    double delta;
    double h_opt;  // uniform step T / n_opt
    int n_opt;
    double error_at_opt;
    int iterations;
    StepInterval interval;
    std::vector<FibonacciProbe> probes;
};

/// Minimizes perturbed_error over h in the interval with ten Fibonacci
/// reductions. Requires 0 < lower < upper <= T.
OptimizationResult fibonacci_optimize_h(const KernelSpec &spec, Benchmark f, Scheme scheme, double delta,
                                        double horizon, StepInterval interval);

struct BracketCheck {
    bool lower_ok;
    bool upper_ok;
    double value_lower;
    double value_upper;
    double value_interior; // best of the interior samples
};

inline constexpr int kBracketSamples = 8;

/// The objective at each end must exceed the best of kBracketSamples
/// geometrically spaced interior steps.
BracketCheck check_bracket(const KernelSpec &spec, Benchmark f, Scheme scheme, double delta, double horizon,
                           StepInterval interval);

struct ScalingFit {
    double slope_h;
    double slope_error;
};

/// Slopes of log h_opt and log error_at_opt against log delta.
/// Throws InsufficientData for fewer than three distinct deltas.
ScalingFit scaling_exponents(std::span<const OptimizationResult> results);

struct StepStudy {
    std::vector<OptimizationResult> results;
    std::vector<std::string> notes;
    ScalingFit fit;
};

/// fibonacci_optimize_h for every delta. Before each search the bracket is
/// checked; when the upper end is not worse than the interior, it is doubled
/// (up to T) and the widening is recorded in the notes.
StepStudy optimal_step_study(const KernelSpec &spec, Benchmark f, Scheme scheme, double horizon,
                             std::span<const double> deltas, StepInterval interval);

/// 1e-1, 1e-2, 1e-4, 1e-5.
std::vector<double> default_deltas();

} // namespace volterra
