#include "volterra/fibonacci.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace volterra {
namespace {

// Offset of the extra probe in the final reduction, in grid cells.
constexpr double kFinalOffset = 1e-3;

} // namespace

long long fibonacci_number(int index)
{
    if (index < 0) {
        throw std::invalid_argument("fibonacci index must be >= 0");
    }
    long long previous = 0;
    long long current = index == 0 ? 0 : 1;
    for (int k = 2; k <= index; ++k) {
        const long long next = previous + current;
        previous = current;
        current = next;
    }
    return current;
}

FibonacciSearchResult fibonacci_minimize(const std::function<double(double)> &objective, double lower,
                                         double upper, int reductions)
{
    if (!(lower < upper)) {
        throw std::invalid_argument("fibonacci_minimize needs lower < upper");
    }
    if (reductions < 1 || reductions > 80) {
        throw std::invalid_argument("fibonacci_minimize needs 1..80 reductions");
    }

    // Bracket [left, right] in grid units; its length is always F_order.
    int order = reductions + 2;
    const long long cells = fibonacci_number(order);
    const double unit = (upper - lower) / static_cast<double>(cells);
    const auto position = [&](long long g) { return std::min(upper, lower + static_cast<double>(g) * unit); };

    FibonacciSearchResult result{lower, upper, 0.0, 0, {}};
    std::map<long long, double> cache;
    const auto evaluate = [&](long long g) {
        if (auto it = cache.find(g); it != cache.end()) {
            return it->second;
        }
        const double x = position(g);
        const double value = objective(x);
        result.probes.push_back({x, value});
        cache.emplace(g, value);
        return value;
    };

    long long left = 0;
    long long right = cells;
    long long probe_left = left + fibonacci_number(order - 2);
    long long probe_right = left + fibonacci_number(order - 1);
    double value_left = evaluate(probe_left);
    double value_right = evaluate(probe_right);

    for (int k = 1; k <= reductions; ++k) {
        const bool more = k < reductions;
        if (probe_left == probe_right) {
            // Last reduction: the two probes coincide, so compare against a
            // point just to the right of them.
            const double x = position(probe_left) + kFinalOffset * unit;
            const double value = objective(x);
            result.probes.push_back({x, value});
            if (value < value_left) {
                left = probe_left;
            } else {
                right = probe_right;
            }
            ++result.reductions;
            break;
        }
        if (value_left <= value_right) {
            right = probe_right;
            probe_right = probe_left;
            value_right = value_left;
            --order;
            if (more) {
                probe_left = left + fibonacci_number(order - 2);
                value_left = evaluate(probe_left);
            }
        } else {
            left = probe_left;
            probe_left = probe_right;
            value_left = value_right;
            --order;
            if (more) {
                probe_right = left + fibonacci_number(order - 1);
                value_right = evaluate(probe_right);
            }
        }
        ++result.reductions;
    }

    result.lower = position(left);
    result.upper = position(right);
    result.argmin = 0.5 * (result.lower + result.upper);
    return result;
}

} // namespace volterra
