#include "volterra/kernel.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "volterra/errors.hpp"

namespace volterra {
namespace {

/// Bisects [left, right] where inside(left) is false and inside(right) true;
/// returns the final inside end.
template <typename Predicate>
double bisect(double left, double right, Predicate inside)
{
    while (right - left > kRootTolerance) {
        const double mid = 0.5 * (left + right);
        if (inside(mid)) {
            right = mid;
        } else {
            left = mid;
        }
    }
    return right;
}

} // namespace

KernelRoot find_first_root(const KernelSpec &spec)
{
    const long steps = std::lround(kRootScanEnd / kRootScanStep);
    const double at_zero = eval_kernel(spec, 0.0);
    const bool negative_at_zero = std::signbit(at_zero);

    std::vector<double> scan(steps + 1);
    scan[0] = at_zero;
    for (long k = 1; k <= steps; ++k) {
        const double t = k * kRootScanStep;
        scan[k] = eval_kernel(spec, t);
        if (scan[k] == 0.0) {
            return {t, 0.0, RootKind::SignChange, kRootTolerance};
        }
        if (std::signbit(scan[k]) != negative_at_zero) {
            const double t_star = bisect((k - 1) * kRootScanStep, t, [&](double x) {
                return std::signbit(eval_kernel(spec, x)) != negative_at_zero;
            });
            return {t_star, std::abs(eval_kernel(spec, t_star)), RootKind::SignChange, kRootTolerance};
        }
    }

    // No crossing: look for the first dip of |K_N|.
    long dip = -1;
    for (long k = 1; k < steps; ++k) {
        if (std::abs(scan[k]) <= std::abs(scan[k - 1]) && std::abs(scan[k + 1]) > std::abs(scan[k])) {
            dip = k;
            break;
        }
    }
    if (dip < 0) {
        throw NoRootFound("K_N has neither a sign change nor a dip on (0, 1] for N=" + std::to_string(spec.order()));
    }

    const double depth = std::abs(scan[dip]);
    double threshold = kNumericalZeroThreshold;
    while (threshold < depth) {
        threshold *= 10.0;
    }
    long first = 1;
    while (std::abs(scan[first]) > threshold) {
        ++first;
    }
    const double t_star = bisect((first - 1) * kRootScanStep, first * kRootScanStep,
                                 [&](double x) { return std::abs(eval_kernel(spec, x)) <= threshold; });
    return {t_star, std::abs(eval_kernel(spec, t_star)), RootKind::NumericalZero, threshold};
}

double half_integral_check(const KernelSpec &spec)
{
    return kernel_antiderivative(spec, find_first_root(spec).t_star);
}

} // namespace volterra
