#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "volterra/errors.hpp"
#include "volterra/experiment.hpp"
#include "volterra/forward.hpp"
#include "volterra/quadrature.hpp"
#include "volterra/solver.hpp"

using namespace volterra;

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

// Straight transcription of the midpoint denominator/history sums.
double midpoint_weight_by_hand(int order, double h, int lag)
{
    double sum = 0.0;
    for (int p = 1; p <= order; ++p) {
        sum += (p % 2 == 1 ? 1.0 : -1.0) * p * p * std::exp(-kPi2 * p * p * h * (lag + 0.5));
    }
    return kPi2 * h * sum;
}

// Dense lower-triangular operator assembled entry by entry.
Eigen::MatrixXd assemble(const KernelSpec &spec, Scheme scheme, double h, int n)
{
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= i; ++j) {
            a(i - 1, j - 1) = scheme == Scheme::Midpoint ? midpoint_weight(spec, h, i - j) : product_weight(spec, h, i, j);
        }
    }
    return a;
}

double max_error(const KernelSpec &spec, Scheme scheme, Benchmark f, int n)
{
    const Mesh mesh(1.0, n);
    return error_norm(benchmark_function(f), solve(spec, scheme, sample_rhs(spec, f, mesh)));
}

} // namespace

TEST_CASE("midpoint weights")
{
    const double h = 1.0 / 64;
    CHECK(midpoint_weight(KernelSpec(1), h, 0) == doctest::Approx(kPi2 * h * std::exp(-kPi2 * h / 2)).epsilon(1e-14));
    CHECK(std::abs(midpoint_weight(KernelSpec(2), h, 0) - midpoint_weight_by_hand(2, h, 0)) <= 1e-12);
    const double h4 = 0.0292 / 32;
    CHECK(std::abs(midpoint_weight(KernelSpec(4), h4, 3) - midpoint_weight_by_hand(4, h4, 3)) <= 1e-12);
    CHECK(std::abs(midpoint_weight(KernelSpec(4), h4, 3) - h4 * eval_kernel(KernelSpec(4), 3.5 * h4)) <= 1e-12);
    CHECK_THROWS_AS(midpoint_weight(KernelSpec(2), 0.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(midpoint_weight(KernelSpec(2), h, -1), std::invalid_argument);
}

TEST_CASE("product integration weights")
{
    const double h = 1.0 / 64;
    CHECK(product_weight(KernelSpec(1), h, 3, 3) == doctest::Approx(1.0 - std::exp(-kPi2 * h)).epsilon(1e-14));

    // 30-digit mpmath quadrature of K_2(t_5 - s) over [h, 2h]
    CHECK(std::abs(product_weight(KernelSpec(2), h, 5, 2) - 0.017633605490354154029) <= 1e-12);
    const double by_quadrature =
        integrate_adaptive([&](double s) { return eval_kernel(KernelSpec(2), 5 * h - s); }, h, 2 * h);
    CHECK(std::abs(product_weight(KernelSpec(2), h, 5, 2) - by_quadrature) <= 1e-10);

    for (int order : {1, 2, 5, 10}) {
        const KernelSpec spec(order);
        const int i = 9;
        double sum = 0.0;
        for (int j = 1; j <= i; ++j) {
            sum += product_weight(spec, h, i, j);
        }
        CHECK(std::abs(sum - kernel_antiderivative(spec, i * h)) <= 1e-12);
    }
    CHECK_THROWS_AS(product_weight(KernelSpec(2), h, 2, 3), std::invalid_argument);
    CHECK_THROWS_AS(product_weight(KernelSpec(2), h, 2, 0), std::invalid_argument);
}

TEST_CASE("lag weights match the entrywise weights")
{
    const KernelSpec spec(4);
    const double h = 0.001;
    const Eigen::VectorXd mid = lag_weights(spec, Scheme::Midpoint, h, 6);
    const Eigen::VectorXd prod = lag_weights(spec, Scheme::ProductIntegration, h, 6);
    for (int lag = 0; lag < 6; ++lag) {
        CHECK(mid(lag) == midpoint_weight(spec, h, lag));
        CHECK(prod(lag) == doctest::Approx(product_weight(spec, h, 6, 6 - lag)).epsilon(1e-14));
    }
}

TEST_CASE("homogeneous data gives zero")
{
    for (Scheme scheme : {Scheme::Midpoint, Scheme::ProductIntegration}) {
        for (int order : {1, 2, 4, 9}) {
            const Mesh mesh(0.5, 33);
            const auto result = solve(KernelSpec(order), scheme, GridFunction<double>{mesh, Location::Nodes, Eigen::VectorXd::Zero(33)});
            CHECK(result.phi.values.isZero(0.0));
            CHECK(result.phi.location == Location::Midpoints);
            CHECK(result.min_abs_denominator > 0.0);
        }
    }
}

TEST_CASE("product integration reproduces piecewise constants")
{
    const KernelSpec spec(2);
    const Mesh mesh(0.04, 40);
    Eigen::VectorXd y(mesh.size());
    for (int i = 1; i <= mesh.size(); ++i) {
        y(i - 1) = kernel_antiderivative(spec, mesh.node(i));
    }
    const auto result = solve(spec, Scheme::ProductIntegration, GridFunction<double>{mesh, Location::Nodes, y});
    CHECK((result.phi.values.array() - 1.0).abs().maxCoeff() <= 1e-8);

    // Staircase phi: data from the assembled operator, then recovered.
    const Mesh coarse(1.0, 16);
    Eigen::VectorXd steps(16);
    for (int j = 0; j < 16; ++j) {
        steps(j) = std::sin(0.7 * j) + 0.1 * j;
    }
    const Eigen::VectorXd data = assemble(spec, Scheme::ProductIntegration, coarse.step(), 16) * steps;
    const auto staircase = solve(spec, Scheme::ProductIntegration, GridFunction<double>{coarse, Location::Nodes, data});
    CHECK((staircase.phi.values - steps).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("forward substitution equals a dense triangular solve")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> value(-1.0, 1.0);
    for (Scheme scheme : {Scheme::Midpoint, Scheme::ProductIntegration}) {
        for (int trial = 0; trial < 50; ++trial) {
            const int n = 1 + trial % 4;
            const KernelSpec spec(1 + trial % 6);
            const Mesh mesh(0.0292, n);
            Eigen::VectorXd y(n);
            for (int i = 0; i < n; ++i) {
                y(i) = value(rng);
            }
            const Eigen::MatrixXd a = assemble(spec, scheme, mesh.step(), n);
            const Eigen::VectorXd expected = a.triangularView<Eigen::Lower>().solve(y);
            const auto result = solve(spec, scheme, GridFunction<double>{mesh, Location::Nodes, y});
            CHECK((result.phi.values - expected).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + expected.cwiseAbs().maxCoeff()));
        }
    }
}

TEST_CASE("solve is linear in the data")
{
    std::mt19937_64 rng(5);
    std::normal_distribution<double> normal;
    const KernelSpec spec(4);
    const Mesh mesh(0.0292, 60);
    for (Scheme scheme : {Scheme::Midpoint, Scheme::ProductIntegration}) {
        Eigen::VectorXd y1(60), y2(60);
        for (int i = 0; i < 60; ++i) {
            y1(i) = normal(rng);
            y2(i) = normal(rng);
        }
        const double alpha = 1.7, beta = -0.4;
        const auto s1 = solve(spec, scheme, GridFunction<double>{mesh, Location::Nodes, y1}).phi.values;
        const auto s2 = solve(spec, scheme, GridFunction<double>{mesh, Location::Nodes, y2}).phi.values;
        const auto combined =
            solve(spec, scheme, GridFunction<double>{mesh, Location::Nodes, alpha * y1 + beta * y2}).phi.values;
        const Eigen::VectorXd expected = alpha * s1 + beta * s2;
        CHECK((combined - expected).cwiseAbs().maxCoeff() <= 1e-9 * expected.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("phi1 errors at h = 1/64")
{
    CHECK(max_error(KernelSpec(2), Scheme::Midpoint, Benchmark::Phi1, 64) == doctest::Approx(0.068768).epsilon(0.2));
    CHECK(max_error(KernelSpec(2), Scheme::ProductIntegration, Benchmark::Phi1, 64) ==
          doctest::Approx(0.002936).epsilon(0.2));
    // Independent NumPy transcription of both recursions.
    CHECK(max_error(KernelSpec(2), Scheme::Midpoint, Benchmark::Phi1, 64) == doctest::Approx(0.06876838024).epsilon(1e-8));
    CHECK(max_error(KernelSpec(4), Scheme::Midpoint, Benchmark::Phi1, 128) ==
          doctest::Approx(0.2413062981).epsilon(1e-8));
    CHECK(max_error(KernelSpec(4), Scheme::ProductIntegration, Benchmark::Phi2, 64) ==
          doctest::Approx(0.1015445371).epsilon(1e-8));
}

TEST_CASE("second-order convergence for N = 2")
{
    for (Benchmark f : {Benchmark::Phi1, Benchmark::Phi2}) {
        for (Scheme scheme : {Scheme::Midpoint, Scheme::ProductIntegration}) {
            double previous = max_error(KernelSpec(2), scheme, f, 64);
            for (int n : {128, 256, 512}) {
                const double current = max_error(KernelSpec(2), scheme, f, n);
                INFO("f=" << to_string(f) << " scheme=" << to_string(scheme) << " n=" << n);
                CHECK(previous / current >= 3.3);
                CHECK(previous / current <= 4.7);
                previous = current;
            }
        }
    }
}

TEST_CASE("single precision solve")
{
    const KernelSpec spec(2);
    const auto y = sample_rhs(spec, Benchmark::Phi1, Mesh(1.0, 64));
    const auto reference = solve(spec, Scheme::ProductIntegration, y);
    const auto single = solve(spec, Scheme::ProductIntegration, y.cast<float>());
    CHECK((single.phi.values.cast<double>() - reference.phi.values).cwiseAbs().maxCoeff() <= 1e-4);
}

TEST_CASE("degenerate diagonal")
{
    // A_2(h) = e^{-4 pi^2 h} - e^{-pi^2 h} is ~1e-22 for h = 5 while its terms are ~1.
    const Mesh mesh(10.0, 2);
    const GridFunction<double> y{mesh, Location::Nodes, Eigen::VectorXd::Ones(2)};
    CHECK_THROWS_AS(solve(KernelSpec(2), Scheme::ProductIntegration, y), DegenerateDiagonal);
    CHECK_NOTHROW(solve(KernelSpec(2), Scheme::Midpoint, y));
}

TEST_CASE("solve input validation")
{
    const Mesh mesh(1.0, 4);
    CHECK_THROWS_AS(solve(KernelSpec(2), Scheme::Midpoint, GridFunction<double>{mesh, Location::Midpoints, Eigen::VectorXd::Zero(4)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(solve(KernelSpec(2), Scheme::Midpoint, GridFunction<double>{mesh, Location::Nodes, Eigen::VectorXd::Zero(3)}),
                    std::invalid_argument);
    CHECK(parse_scheme("product") == Scheme::ProductIntegration);
    CHECK_THROWS_AS(parse_scheme("trapezoid"), std::invalid_argument);
}
