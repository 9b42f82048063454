#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "volterra/errors.hpp"
#include "volterra/experiment.hpp"

using namespace volterra;

namespace {

SolveResult<double> exact_solve(int order, Scheme scheme, Benchmark f, int n)
{
    const KernelSpec spec(order);
    return solve(spec, scheme, sample_rhs(spec, f, Mesh(1.0, n)));
}

OptimizationResult synthetic(double delta, double h, double error)
{
    return {delta, h, 1, error, kFibonacciReductions, {1e-4, 1.0}, {}};
}

} // namespace

TEST_CASE("error norm")
{
    const auto result = exact_solve(2, Scheme::Midpoint, Benchmark::Phi1, 32);
    const Eigen::VectorXd phi = result.phi.values;
    const Mesh mesh = result.mesh;
    const auto same = [&](double t) { return phi(static_cast<int>(std::lround(t / mesh.step() + 0.5)) - 1); };
    CHECK(error_norm(same, result) == 0.0);

    CHECK(error_norm(benchmark_function(Benchmark::Phi1), exact_solve(2, Scheme::Midpoint, Benchmark::Phi1, 1024)) ==
          doctest::Approx(0.000243).epsilon(0.2));
    CHECK(error_norm(benchmark_function(Benchmark::Phi2),
                     exact_solve(4, Scheme::ProductIntegration, Benchmark::Phi2, 256)) ==
          doctest::Approx(0.007432).epsilon(0.2));
}

TEST_CASE("sawtooth perturbation")
{
    const Mesh mesh(1.0, 6);
    const GridFunction<double> y = sample_rhs(KernelSpec(2), Benchmark::Phi2, mesh);

    CHECK(perturb(y, {0.0}).values == y.values);

    const GridFunction<double> zero{mesh, Location::Nodes, Eigen::VectorXd::Zero(6)};
    const Eigen::VectorXd alternating = perturb(zero, {1e-2}).values;
    for (int i = 0; i < 6; ++i) {
        CHECK(alternating(i) == (i % 2 == 0 ? -1e-2 : 1e-2));
    }

    for (double delta : {1e-5, 0.3, 2.0}) {
        CHECK((perturb(y, {delta}).values - y.values).cwiseAbs().maxCoeff() == doctest::Approx(delta).epsilon(1e-12));
    }
    CHECK_THROWS_AS(perturb(y, {-1.0}), std::invalid_argument);
}

TEST_CASE("noise response is linear")
{
    const KernelSpec spec(4);
    const Mesh mesh(0.0292, 100);
    const double delta = 1e-3;
    const GridFunction<double> y = sample_rhs(spec, Benchmark::Phi1, mesh);
    const Eigen::VectorXd noisy = solve(spec, Scheme::Midpoint, perturb(y, {delta})).phi.values;
    const Eigen::VectorXd clean = solve(spec, Scheme::Midpoint, y).phi.values;
    const Eigen::VectorXd unit = solve(spec, Scheme::Midpoint, unit_sawtooth(mesh)).phi.values;
    const Eigen::VectorXd expected = delta * unit;
    CHECK(((noisy - clean) - expected).cwiseAbs().maxCoeff() <= 1e-9 * expected.cwiseAbs().maxCoeff());
}

TEST_CASE("log-log slope")
{
    const std::vector<double> x{0.1, 0.01, 0.001};
    const std::vector<double> y{std::pow(0.1, 2.0), std::pow(0.01, 2.0), std::pow(0.001, 2.0)};
    CHECK(log_log_slope(x, y) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(log_log_slope(std::vector<double>{1.0}, std::vector<double>{1.0}), InsufficientData);
    CHECK_THROWS_AS(log_log_slope(std::vector<double>{1.0, 0.0}, std::vector<double>{1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("convergence tables")
{
    SUBCASE("phi1 errors, N = 2")
    {
        const auto steps = default_convergence_steps();
        const ConvergenceReport report = convergence_table(KernelSpec(2), Benchmark::Phi1, steps);
        REQUIRE(report.rows.size() == 5);
        const double midpoint[] = {0.068768, 0.015911, 0.003908, 0.000973, 0.000243};
        const double product[] = {0.002936, 0.000734, 0.000184, 0.000046, 0.000011};
        for (std::size_t k = 0; k < 5; ++k) {
            CHECK(report.rows[k].h == doctest::Approx(steps[k]));
            CHECK(report.rows[k].error_midpoint == doctest::Approx(midpoint[k]).epsilon(0.2));
            CHECK(report.rows[k].error_product == doctest::Approx(product[k]).epsilon(0.2));
        }
        CHECK(report.order_midpoint == doctest::Approx(2.0).epsilon(0.1));
        CHECK(report.order_product == doctest::Approx(2.0).epsilon(0.1));
    }
    SUBCASE("phi2 orders, N = 2")
    {
        const auto steps = default_convergence_steps();
        const ConvergenceReport report = convergence_table(KernelSpec(2), Benchmark::Phi2, steps);
        CHECK(report.order_midpoint >= 1.8);
        CHECK(report.order_midpoint <= 2.2);
        CHECK(report.order_product >= 1.8);
        CHECK(report.order_product <= 2.2);
    }
    SUBCASE("phi1 error tail, N = 4")
    {
        const std::vector<double> steps{1.0 / 1024, 1.0 / 512};
        const ConvergenceReport report = convergence_table(KernelSpec(4), Benchmark::Phi1, steps);
        REQUIRE(report.rows.size() == 2);
        CHECK(report.rows[0].h > report.rows[1].h);
        CHECK(report.rows[0].error_product == doctest::Approx(0.000143).epsilon(0.2));
        CHECK(report.rows[1].error_product == doctest::Approx(0.000036).epsilon(0.2));
    }
    SUBCASE("steps must be reciprocals of integers")
    {
        const std::vector<double> steps{0.3};
        CHECK_THROWS_AS(convergence_table(KernelSpec(2), Benchmark::Phi1, steps), std::invalid_argument);
    }
}

TEST_CASE("fibonacci search on a parabola")
{
    CHECK(fibonacci_number(1) == 1);
    CHECK(fibonacci_number(2) == 1);
    CHECK(fibonacci_number(12) == 144);

    int calls = 0;
    const auto parabola = [&](double x) {
        ++calls;
        return (x - 0.3) * (x - 0.3);
    };
    const FibonacciSearchResult result = fibonacci_minimize(parabola, -1.0, 2.0, 10);
    CHECK(result.reductions == 10);
    CHECK(result.upper - result.lower == doctest::Approx(3.0 / 144).epsilon(1e-12));
    CHECK(result.lower <= 0.3);
    CHECK(result.upper >= 0.3);
    CHECK(calls == static_cast<int>(result.probes.size()));
    CHECK(calls <= 11);
    for (const auto &probe : result.probes) {
        CHECK(probe.x >= -1.0);
        CHECK(probe.x <= 2.0);
    }
    CHECK_THROWS_AS(fibonacci_minimize(parabola, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("fibonacci ties keep the smaller argument")
{
    const FibonacciSearchResult result = fibonacci_minimize([](double) { return 1.0; }, 0.0, 144.0, 10);
    CHECK(result.lower == 0.0);
    CHECK(result.upper == doctest::Approx(1.0));
}

TEST_CASE("optimal step for N = 4 on T = 0.0292")
{
    const KernelSpec spec(4);
    const double horizon = 0.0292;

    SUBCASE("delta = 1e-2 on the narrow interval")
    {
        const StepInterval interval{1e-4, 0.0073};
        const OptimizationResult result =
            fibonacci_optimize_h(spec, Benchmark::Phi1, Scheme::Midpoint, 1e-2, horizon, interval);
        CHECK(result.iterations == 10);
        CHECK(result.h_opt == doctest::Approx(horizon / result.n_opt));
        CHECK(result.h_opt > 0.009843 / 10);
        CHECK(result.h_opt < 0.009843 * 10);
        CHECK(result.error_at_opt > 0.030797 / 3);
        CHECK(result.error_at_opt < 0.030797 * 3);
        for (const auto &probe : result.probes) {
            CHECK(probe.x >= interval.lower);
            CHECK(probe.x <= interval.upper);
        }
    }
    SUBCASE("no noise drives the step to the lower end")
    {
        const StepInterval interval{1e-4, 0.0073};
        const OptimizationResult result =
            fibonacci_optimize_h(spec, Benchmark::Phi1, Scheme::Midpoint, 0.0, horizon, interval);
        CHECK(result.h_opt <= interval.lower + (interval.upper - interval.lower) / 144);
        std::vector<FibonacciProbe> probes = result.probes;
        std::sort(probes.begin(), probes.end(), [](const auto &a, const auto &b) { return a.x < b.x; });
        for (std::size_t k = 1; k < probes.size(); ++k) {
            CHECK(probes[k].value >= probes[k - 1].value);
        }
    }
    SUBCASE("interval validation")
    {
        CHECK_THROWS_AS(fibonacci_optimize_h(spec, Benchmark::Phi1, Scheme::Midpoint, 1e-2, horizon, {0.0, 0.01}),
                        std::invalid_argument);
        CHECK_THROWS_AS(fibonacci_optimize_h(spec, Benchmark::Phi1, Scheme::Midpoint, 1e-2, horizon, {0.01, 0.05}),
                        std::invalid_argument);
    }
}

TEST_CASE("bracket check")
{
    const KernelSpec spec(4);
    const double horizon = 0.0292;
    // Small noise: both ends worse than the interior.
    const BracketCheck good =
        check_bracket(spec, Benchmark::Phi1, Scheme::Midpoint, 1e-4, horizon, default_step_interval(horizon));
    CHECK(good.lower_ok);
    CHECK(good.upper_ok);
    // Tiny noise: the optimum sits near the lower end but h = 1e-4 is still worse.
    const BracketCheck tiny =
        check_bracket(spec, Benchmark::Phi1, Scheme::Midpoint, 1e-5, horizon, default_step_interval(horizon));
    CHECK(tiny.lower_ok);
    CHECK(tiny.upper_ok);
    // Large noise on a short interval: the optimum lies beyond the upper end.
    const BracketCheck short_interval =
        check_bracket(spec, Benchmark::Phi1, Scheme::Midpoint, 1e-1, horizon, {1e-4, 0.0073});
    CHECK_FALSE(short_interval.upper_ok);

    const std::vector<double> deltas{1e-1};
    const StepStudy study = optimal_step_study(spec, Benchmark::Phi1, Scheme::Midpoint, horizon, deltas, {1e-4, 0.0073});
    CHECK_FALSE(study.notes.empty());
    CHECK(study.results.front().interval.upper > 0.0073);
}

TEST_CASE("scaling exponents")
{
    std::vector<OptimizationResult> exact;
    for (double delta : default_deltas()) {
        exact.push_back(synthetic(delta, std::cbrt(delta), std::pow(delta, 2.0 / 3.0)));
    }
    const ScalingFit fit = scaling_exponents(exact);
    CHECK(std::abs(fit.slope_h - 1.0 / 3.0) <= 1e-12);
    CHECK(std::abs(fit.slope_error - 2.0 / 3.0) <= 1e-12);

    // Reference optima, phi1
    const std::vector<OptimizationResult> table{synthetic(1e-1, 0.011483, 0.295398), synthetic(1e-2, 0.009843, 0.030797),
                                                synthetic(1e-4, 0.002297, 0.001929), synthetic(1e-5, 0.000656, 0.000629)};
    const ScalingFit printed = scaling_exponents(table);
    CHECK(printed.slope_h == doctest::Approx(0.311827).epsilon(1e-5));
    CHECK(printed.slope_error == doctest::Approx(0.654669).epsilon(1e-5));

    const std::vector<OptimizationResult> too_few{synthetic(1e-1, 0.01, 0.3), synthetic(1e-2, 0.005, 0.03),
                                                  synthetic(1e-2, 0.004, 0.03)};
    CHECK_THROWS_AS(scaling_exponents(too_few), InsufficientData);
}
