#include "volterra/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "volterra/compensated_sum.hpp"

namespace volterra {

std::string_view to_string(Scheme scheme)
{
    return scheme == Scheme::Midpoint ? "midpoint" : "product";
}

Scheme parse_scheme(std::string_view name)
{
    if (name == "midpoint") {
        return Scheme::Midpoint;
    }
    if (name == "product" || name == "product-integration") {
        return Scheme::ProductIntegration;
    }
    throw std::invalid_argument("unknown scheme '" + std::string(name) + "' (expected midpoint or product)");
}

double midpoint_weight(const KernelSpec &spec, double h, int lag)
{
    if (!(h > 0.0) || lag < 0) {
        throw std::invalid_argument("midpoint_weight needs h > 0 and lag >= 0");
    }
    return h * eval_kernel(spec, (lag + 0.5) * h);
}

double product_weight(const KernelSpec &spec, double h, int i, int j)
{
    if (!(h > 0.0) || j < 1 || j > i) {
        throw std::invalid_argument("product_weight needs h > 0 and 1 <= j <= i");
    }
    const int lag = i - j;
    CompensatedSum<double> sum;
    for (int p = 1; p <= spec.order(); ++p) {
        const double a = detail::decay_rate<double>(p);
        // e^{-a lag h} - e^{-a (lag+1) h} = e^{-a lag h} (1 - e^{-a h})
        sum += -detail::alternating_sign(p) * std::exp(-a * lag * h) * std::expm1(-a * h);
    }
    return sum.value();
}

Eigen::VectorXd lag_weights(const KernelSpec &spec, Scheme scheme, double h, int n)
{
    Eigen::VectorXd weights(n);
    for (int lag = 0; lag < n; ++lag) {
        weights(lag) = scheme == Scheme::Midpoint ? midpoint_weight(spec, h, lag) : product_weight(spec, h, lag + 1, 1);
    }
    return weights;
}

double diagonal_term_scale(const KernelSpec &spec, Scheme scheme, double h)
{
    double scale = 0.0;
    for (int p = 1; p <= spec.order(); ++p) {
        const double a = detail::decay_rate<double>(p);
        const double term = scheme == Scheme::Midpoint ? a * h * std::exp(-0.5 * a * h) : -std::expm1(-a * h);
        scale = std::max(scale, std::abs(term));
    }
    return scale;
}

} // namespace volterra
