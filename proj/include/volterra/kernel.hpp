#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "volterra/compensated_sum.hpp"

namespace volterra {

/// Truncation order N of the heat kernel
///   K_N(t) = pi^2 * sum_{p=1}^{N} (-1)^{p+1} p^2 exp(-pi^2 p^2 t).
class KernelSpec {
public:
    explicit KernelSpec(int order) : order_(order)
    {
        if (order < 1) {
            throw std::invalid_argument("kernel order must be >= 1, got " + std::to_string(order));
        }
    }

    int order() const { return order_; }
    bool is_odd() const { return order_ % 2 == 1; }

    friend bool operator==(const KernelSpec &, const KernelSpec &) = default;

private:
    int order_;
};

namespace detail {

template <typename Scalar>
constexpr Scalar pi_squared()
{
    return std::numbers::pi_v<Scalar> * std::numbers::pi_v<Scalar>;
}

/// (-1)^{p+1}
constexpr int alternating_sign(int p) { return p % 2 == 1 ? 1 : -1; }

/// Decay rate pi^2 p^2 of the p-th exponential.
template <typename Scalar>
constexpr Scalar decay_rate(int p)
{
    return pi_squared<Scalar>() * Scalar(p) * Scalar(p);
}

} // namespace detail

/// K_N(tau) for tau >= 0, summed in ascending p.
template <typename Scalar = double>
Scalar eval_kernel(const KernelSpec &spec, Scalar tau)
{
    CompensatedSum<Scalar> sum;
    for (int p = 1; p <= spec.order(); ++p) {
        const Scalar p2 = Scalar(p) * Scalar(p);
        sum += Scalar(detail::alternating_sign(p)) * p2 * std::exp(-detail::decay_rate<Scalar>(p) * tau);
    }
    return detail::pi_squared<Scalar>() * sum.value();
}

/// K_N(0) = (-1)^{N+1} pi^2 N(N+1)/2.
template <typename Scalar = double>
Scalar kernel_at_zero(const KernelSpec &spec)
{
    const Scalar n = Scalar(spec.order());
    return Scalar(detail::alternating_sign(spec.order())) * detail::pi_squared<Scalar>() * n * (n + 1) / Scalar(2);
}

/// Closed-form integral of K_N over [0, t]:
///   sum_p (-1)^{p+1} (1 - exp(-pi^2 p^2 t)).
/// Tends to 1 for odd N and 0 for even N.
template <typename Scalar = double>
Scalar kernel_antiderivative(const KernelSpec &spec, Scalar t)
{
    CompensatedSum<Scalar> sum;
    for (int p = 1; p <= spec.order(); ++p) {
        sum += -Scalar(detail::alternating_sign(p)) * std::expm1(-detail::decay_rate<Scalar>(p) * t);
    }
    return sum.value();
}

enum class RootKind {
    SignChange,  // K_N changes sign at t_star
    NumericalZero // K_N keeps its sign; t_star is where it first falls under `tolerance`
};

struct KernelRoot {
    double t_star;
    double residual;  // |K_N(t_star)|
    RootKind kind;
    double tolerance; // bisection width for SignChange, |K_N| threshold for NumericalZero
};

/// Scan step, scan end and bisection tolerance used by find_first_root.
inline constexpr double kRootScanStep = 1e-5;
inline constexpr double kRootScanEnd = 1.0;
inline constexpr double kRootTolerance = 1e-9;

/// Smallest threshold tried when K_N has no sign change.
inline constexpr double kNumericalZeroThreshold = 5e-6;

/// First "root" t* of K_N.
///
/// Even N: K_N(0) < 0 and the kernel crosses zero; the crossing is bracketed
/// by a scan from t = 0 with step kRootScanStep and refined by bisection to
/// kRootTolerance.
///
/// Odd N: K_N stays positive but dips to a tiny value (about 4e-5 for N = 11,
/// below 1e-8 for N >= 17) before the slow p = 1 mode takes over. There
/// t* is the first point of the descent where K_N <= tau, with tau the
/// smallest of 5e-6, 5e-5, 5e-4, ... that the dip actually reaches.
///
/// Throws NoRootFound when there is neither a sign change nor a dip on
/// (0, 1] (N = 1).
KernelRoot find_first_root(const KernelSpec &spec);

/// Integral of K_N over [0, t*]; +1/2 for odd N, -1/2 for even N.
double half_integral_check(const KernelSpec &spec);

} // namespace volterra
