#include "volterra/mesh.hpp"

#include <cmath>
#include <stdexcept>

namespace volterra {

Mesh::Mesh(double horizon, int steps) : horizon_(horizon), steps_(steps), step_(horizon / steps)
{
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw std::invalid_argument("mesh horizon must be positive and finite");
    }
    if (steps < 1) {
        throw std::invalid_argument("mesh needs at least one step");
    }
}

Mesh Mesh::with_step(double horizon, double step)
{
    if (!(step > 0.0)) {
        throw std::invalid_argument("mesh step must be positive");
    }
    const double ratio = horizon / step;
    if (!(ratio < 1e9)) {
        throw std::invalid_argument("mesh step too small for horizon");
    }
    const int n = std::max(1, static_cast<int>(std::lround(ratio)));
    return Mesh(horizon, n);
}

Eigen::VectorXd Mesh::nodes() const
{
    return Eigen::VectorXd::LinSpaced(steps_, 1.0, steps_) * step_;
}

Eigen::VectorXd Mesh::midpoints() const
{
    return (Eigen::VectorXd::LinSpaced(steps_, 1.0, steps_).array() - 0.5) * step_;
}

} // namespace volterra
