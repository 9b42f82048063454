#include "volterra/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include <Eigen/QR>

#include "volterra/errors.hpp"

namespace volterra {

GridFunction<double> unit_sawtooth(const Mesh &mesh)
{
    Eigen::VectorXd values(mesh.size());
    for (int i = 1; i <= mesh.size(); ++i) {
        values(i - 1) = i % 2 == 0 ? 1.0 : -1.0;
    }
    return {mesh, Location::Nodes, std::move(values)};
}

GridFunction<double> perturb(const GridFunction<double> &y, const PerturbationSpec &perturbation)
{
    if (perturbation.delta < 0.0) {
        throw std::invalid_argument("perturbation amplitude must be >= 0");
    }
    GridFunction<double> result = y;
    result.values += perturbation.delta * unit_sawtooth(y.mesh).values;
    return result;
}

double log_log_slope(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size()) {
        throw std::invalid_argument("log_log_slope needs equally long series");
    }
    if (x.size() < 2) {
        throw InsufficientData("log_log_slope needs at least two points");
    }
    const auto n = static_cast<Eigen::Index>(x.size());
    Eigen::MatrixXd design(n, 2);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        if (!(x[k] > 0.0) || !(y[k] > 0.0)) {
            throw std::invalid_argument("log_log_slope needs positive values");
        }
        design(k, 0) = 1.0;
        design(k, 1) = std::log(x[k]);
        rhs(k) = std::log(y[k]);
    }
    const Eigen::Vector2d coefficients = design.colPivHouseholderQr().solve(rhs);
    return coefficients(1);
}

std::vector<double> default_convergence_steps()
{
    return {1.0 / 64, 1.0 / 128, 1.0 / 256, 1.0 / 512, 1.0 / 1024};
}

ConvergenceReport convergence_table(const KernelSpec &spec, Benchmark f, std::span<const double> steps)
{
    std::vector<int> sizes;
    for (double h : steps) {
        const double n = 1.0 / h;
        if (!(h > 0.0) || std::abs(n - std::round(n)) > 1e-9 * n) {
            std::ostringstream msg;
            msg << "convergence step " << h << " is not 1/n for an integer n";
            throw std::invalid_argument(msg.str());
        }
        sizes.push_back(static_cast<int>(std::lround(n)));
    }
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());

    const auto truth = benchmark_function(f);
    const auto cell = [&](int n) {
        const Mesh mesh(1.0, n);
        const GridFunction<double> y = sample_rhs(spec, f, mesh);
        return ConvergenceRow{mesh.step(), n, error_norm(truth, solve(spec, Scheme::Midpoint, y)),
                              error_norm(truth, solve(spec, Scheme::ProductIntegration, y))};
    };

    std::vector<std::future<ConvergenceRow>> pending;
    for (int n : sizes) {
        pending.push_back(std::async(std::launch::async, cell, n));
    }

    ConvergenceReport report{spec, f, {}, 0.0, 0.0};
    for (auto &future : pending) {
        report.rows.push_back(future.get());
    }

    if (report.rows.size() >= 2) {
        std::vector<double> hs, midpoint, product;
        for (const auto &row : report.rows) {
            hs.push_back(row.h);
            midpoint.push_back(row.error_midpoint);
            product.push_back(row.error_product);
        }
        report.order_midpoint = log_log_slope(hs, midpoint);
        report.order_product = log_log_slope(hs, product);
    } else {
        report.order_midpoint = report.order_product = std::numeric_limits<double>::quiet_NaN();
    }
    return report;
}

NoisyError perturbed_error(const KernelSpec &spec, Benchmark f, Scheme scheme, double delta, double horizon,
                           double h)
{
    const Mesh mesh = Mesh::with_step(horizon, h);
    const GridFunction<double> y = perturb(sample_rhs(spec, f, mesh), {delta});
    try {
        return {error_norm(benchmark_function(f), solve(spec, scheme, y)), mesh.size(), mesh.step()};
    } catch (const DegenerateDiagonal &) {
        return {std::numeric_limits<double>::infinity(), mesh.size(), mesh.step()};
    }
}

StepInterval default_step_interval(double horizon)
{
    return {std::max(1e-4, horizon / 1000.0), horizon};
}

namespace {

void check_interval(double horizon, StepInterval interval)
{
    if (!(interval.lower > 0.0) || !(interval.lower < interval.upper) || interval.upper > horizon) {
        std::ostringstream msg;
        msg << "step interval [" << interval.lower << ", " << interval.upper << "] must satisfy 0 < lower < upper <= T="
            << horizon;
        throw std::invalid_argument(msg.str());
    }
}

} // namespace

OptimizationResult fibonacci_optimize_h(const KernelSpec &spec, Benchmark f, Scheme scheme, double delta,
                                        double horizon, StepInterval interval)
{
    check_interval(horizon, interval);
    if (delta < 0.0) {
        throw std::invalid_argument("perturbation amplitude must be >= 0");
    }
    const auto objective = [&](double h) { return perturbed_error(spec, f, scheme, delta, horizon, h).error; };
    FibonacciSearchResult search = fibonacci_minimize(objective, interval.lower, interval.upper, kFibonacciReductions);
    const NoisyError best = perturbed_error(spec, f, scheme, delta, horizon, search.argmin);
    return {delta, best.h, best.n, best.error, search.reductions, interval, std::move(search.probes)};
}

BracketCheck check_bracket(const KernelSpec &spec, Benchmark f, Scheme scheme, double delta, double horizon,
                           StepInterval interval)
{
    check_interval(horizon, interval);
    const auto objective = [&](double h) { return perturbed_error(spec, f, scheme, delta, horizon, h).error; };
    const double ratio = interval.upper / interval.lower;

    BracketCheck check{};
    check.value_lower = objective(interval.lower);
    check.value_upper = objective(interval.upper);
    check.value_interior = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= kBracketSamples; ++k) {
        const double h = interval.lower * std::pow(ratio, static_cast<double>(k) / (kBracketSamples + 1));
        check.value_interior = std::min(check.value_interior, objective(h));
    }
    check.lower_ok = check.value_lower > check.value_interior;
    check.upper_ok = check.value_upper > check.value_interior;
    return check;
}

ScalingFit scaling_exponents(std::span<const OptimizationResult> results)
{
    std::set<double> distinct;
    for (const auto &r : results) {
        distinct.insert(r.delta);
    }
    if (distinct.size() < 3) {
        throw InsufficientData("scaling fit needs at least three distinct delta values");
    }
    std::vector<double> deltas, steps, errors;
    for (const auto &r : results) {
        deltas.push_back(r.delta);
        steps.push_back(r.h_opt);
        errors.push_back(r.error_at_opt);
    }
    return {log_log_slope(deltas, steps), log_log_slope(deltas, errors)};
}

std::vector<double> default_deltas() { return {1e-1, 1e-2, 1e-4, 1e-5}; }

StepStudy optimal_step_study(const KernelSpec &spec, Benchmark f, Scheme scheme, double horizon,
                             std::span<const double> deltas, StepInterval interval)
{
    check_interval(horizon, interval);
    std::vector<std::future<std::pair<OptimizationResult, std::vector<std::string>>>> pending;
    for (double delta : deltas) {
        pending.push_back(std::async(std::launch::async, [=, &spec] {
            std::vector<std::string> notes;
            StepInterval bracket = interval;
            for (;;) {
                const BracketCheck check = check_bracket(spec, f, scheme, delta, horizon, bracket);
                if (!check.lower_ok) {
                    std::ostringstream msg;
                    msg << "delta=" << delta << ": objective at h=" << bracket.lower
                        << " is not above the interior; lower end kept";
                    notes.push_back(msg.str());
                }
                if (check.upper_ok || bracket.upper >= horizon) {
                    if (!check.upper_ok) {
                        std::ostringstream msg;
                        msg << "delta=" << delta << ": objective at h=" << bracket.upper
                            << " is not above the interior and the interval already reaches T";
                        notes.push_back(msg.str());
                    }
                    break;
                }
                const double widened = std::min(2.0 * bracket.upper, horizon);
                std::ostringstream msg;
                msg << "delta=" << delta << ": upper end widened from " << bracket.upper << " to " << widened;
                notes.push_back(msg.str());
                bracket.upper = widened;
            }
            return std::pair{fibonacci_optimize_h(spec, f, scheme, delta, horizon, bracket), notes};
        }));
    }

    StepStudy study;
    for (auto &future : pending) {
        auto [result, notes] = future.get();
        study.results.push_back(std::move(result));
        study.notes.insert(study.notes.end(), notes.begin(), notes.end());
    }
    study.fit = study.results.size() >= 3 ? scaling_exponents(study.results) : ScalingFit{NAN, NAN};
    return study;
}

} // namespace volterra
