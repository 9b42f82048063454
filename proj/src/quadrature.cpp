#include "volterra/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "volterra/errors.hpp"

namespace volterra {
namespace {

// Kronrod 15-point nodes on [-1, 1] (non-negative half) with the embedded
// 7-point Gauss weights at the odd positions.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Estimate {
    double kronrod;
    double error;
};

Estimate gauss_kronrod(const std::function<double(double)> &f, double a, double b)
{
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(centre);
    double kronrod = kKronrodWeights[7] * fc;
    double gauss = kGaussWeights[3] * fc;
    for (int k = 0; k < 7; ++k) {
        const double dx = half * kNodes[k];
        const double pair = f(centre - dx) + f(centre + dx);
        kronrod += kKronrodWeights[k] * pair;
        if (k % 2 == 1) {
            gauss += kGaussWeights[k / 2] * pair;
        }
    }
    return {kronrod * half, std::abs((kronrod - gauss) * half)};
}

double integrate_recursive(const std::function<double(double)> &f, double a, double b, const Estimate &whole,
                           double tolerance, int depth, int max_depth)
{
    const double floor = 50.0 * std::numeric_limits<double>::epsilon() * std::abs(whole.kronrod);
    if (whole.error <= std::max(tolerance, floor)) {
        return whole.kronrod;
    }
    if (depth >= max_depth) {
        std::ostringstream msg;
        msg << "adaptive quadrature did not converge on [" << a << ", " << b << "] within depth " << max_depth;
        throw QuadratureNonconvergence(msg.str());
    }
    const double mid = 0.5 * (a + b);
    const Estimate left = gauss_kronrod(f, a, mid);
    const Estimate right = gauss_kronrod(f, mid, b);
    return integrate_recursive(f, a, mid, left, 0.5 * tolerance, depth + 1, max_depth) +
           integrate_recursive(f, mid, b, right, 0.5 * tolerance, depth + 1, max_depth);
}

} // namespace

double integrate_adaptive(const std::function<double(double)> &f, double a, double b, double abs_tolerance,
                          int max_depth)
{
    if (a == b) {
        return 0.0;
    }
    if (b < a) {
        return -integrate_adaptive(f, b, a, abs_tolerance, max_depth);
    }
    return integrate_recursive(f, a, b, gauss_kronrod(f, a, b), abs_tolerance, 0, max_depth);
}

} // namespace volterra
