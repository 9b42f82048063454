#pragma once

#include <functional>
#include <vector>

namespace volterra {

struct FibonacciProbe {
    double x;
    double value;
};

struct FibonacciSearchResult {
    double lower;    // final bracket
    double upper;
    double argmin;   // midpoint of the final bracket
    int reductions;
    std::vector<FibonacciProbe> probes; // in evaluation order
};

/// Fibonacci interval reduction of a unimodal objective on [lower, upper].
/// Probe points live on a grid of (upper - lower) / F_{reductions + 2}, so
/// after the requested number of reductions the bracket is exactly one grid
/// cell (1/144 of the start for 10 reductions). Ties keep the left part.
/// In the last reduction the two probes coincide; one extra evaluation a
/// thousandth of a cell to the right decides the side.
/// The objective is never evaluated outside [lower, upper].
FibonacciSearchResult fibonacci_minimize(const std::function<double(double)> &objective, double lower,
                                         double upper, int reductions = 10);

/// F_1 = F_2 = 1.
long long fibonacci_number(int index);

} // namespace volterra
