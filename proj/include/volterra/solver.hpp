#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include "volterra/errors.hpp"
#include "volterra/kernel.hpp"
#include "volterra/mesh.hpp"

namespace volterra {

enum class Scheme { Midpoint, ProductIntegration };

std::string_view to_string(Scheme scheme);
/// Accepts "midpoint" and "product" (or "product-integration").
Scheme parse_scheme(std::string_view name);

/// Midpoint-rule weight for lag = i - j:
///   h * K_N((lag + 1/2) h).
/// lag = 0 is the diagonal of the triangular system.
double midpoint_weight(const KernelSpec &spec, double h, int lag);

/// Product-integration weight: the kernel integrated exactly over cell j
/// with collocation at node t_i,
///   sum_p (-1)^{p+1} [exp(-pi^2 p^2 (i-j) h) - exp(-pi^2 p^2 (i-j+1) h)].
/// Requires 1 <= j <= i.
double product_weight(const KernelSpec &spec, double h, int i, int j);

/// Both schemes' weights depend only on i - j; entry k holds lag k.
Eigen::VectorXd lag_weights(const KernelSpec &spec, Scheme scheme, double h, int n);

/// Largest magnitude among the p-terms that make up the diagonal weight.
double diagonal_term_scale(const KernelSpec &spec, Scheme scheme, double h);

/// |w_ii| must exceed this multiple of diagonal_term_scale.
inline constexpr double kDiagonalGuard = 1e-12;

template <typename Scalar = double>
struct SolveResult {
    Mesh mesh;
    Scheme scheme;
    KernelSpec kernel;
    GridFunction<Scalar> phi; // at midpoints
    double min_abs_denominator;
};

/// Forward substitution for the lower-triangular Toeplitz system
///   sum_{j<=i} w_{i-j} phi_{j-1/2} = y_i,  i = 1..n.
/// Throws DegenerateDiagonal when |w_0| falls under the conditioning guard.
template <typename Scalar = double>
SolveResult<Scalar> solve(const KernelSpec &spec, Scheme scheme, const GridFunction<Scalar> &y)
{
    if (y.location != Location::Nodes) {
        throw std::invalid_argument("solve expects data sampled at mesh nodes");
    }
    const Mesh &mesh = y.mesh;
    const int n = mesh.size();
    if (y.values.size() != n) {
        throw std::invalid_argument("data length does not match mesh size");
    }

    const Eigen::VectorXd weights = lag_weights(spec, scheme, mesh.step(), n);
    const double diagonal = weights(0);
    const double scale = diagonal_term_scale(spec, scheme, mesh.step());
    if (!(std::abs(diagonal) > kDiagonalGuard * scale)) {
        std::ostringstream msg;
        msg << "diagonal weight " << diagonal << " below guard for N=" << spec.order() << ", h=" << mesh.step();
        throw DegenerateDiagonal(msg.str());
    }

    // Reversed so that the history sum for row i is a contiguous dot product.
    const Vector<Scalar> reversed = weights.reverse().template cast<Scalar>();
    const Scalar w0 = static_cast<Scalar>(diagonal);

    Vector<Scalar> phi(n);
    for (int i = 0; i < n; ++i) {
        Scalar history = i == 0 ? Scalar(0) : reversed.segment(n - 1 - i, i).dot(phi.head(i));
        phi(i) = (y.values(i) - history) / w0;
    }

    return SolveResult<Scalar>{mesh, scheme, spec, GridFunction<Scalar>{mesh, Location::Midpoints, std::move(phi)},
                               std::abs(diagonal)};
}

} // namespace volterra
