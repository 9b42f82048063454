#pragma once

#include <Eigen/Core>

namespace volterra {

/// Uniform grid on (0, T]: nodes t_i = i h and midpoints t_{i-1/2} = (i - 1/2) h
/// for i = 1..n, with h = T / n. Indices are 1-based to match the recursion.
class Mesh {
public:
    Mesh(double horizon, int steps);

    /// n = round(T / h), clamped to at least one step; the returned mesh
    /// re-derives h = T / n so it stays uniform.
    static Mesh with_step(double horizon, double step);

    double horizon() const { return horizon_; }
    int size() const { return steps_; }
    double step() const { return step_; }

    double node(int i) const { return i * step_; }
    double midpoint(int i) const { return (i - 0.5) * step_; }

    Eigen::VectorXd nodes() const;
    Eigen::VectorXd midpoints() const;

    friend bool operator==(const Mesh &, const Mesh &) = default;

private:
    double horizon_;
    int steps_;
    double step_;
};

enum class Location { Nodes, Midpoints };

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Values of a function sampled on a mesh, either at nodes (data y) or at
/// midpoints (the reconstructed unknown).
template <typename Scalar = double>
struct GridFunction {
    Mesh mesh;
    Location location;
    Vector<Scalar> values;

    template <typename Other>
    GridFunction<Other> cast() const
    {
        return {mesh, location, values.template cast<Other>()};
    }
};

} // namespace volterra
