#pragma once

#include <cmath>

namespace volterra {

/// Neumaier's variant of Kahan summation. Keeps one correction term so the
/// alternating kernel sums do not depend on cancellation luck.
template <typename Scalar>
class CompensatedSum {
public:
    void add(Scalar x)
    {
        const Scalar t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            correction_ += (sum_ - t) + x;
        } else {
            correction_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    CompensatedSum &operator+=(Scalar x)
    {
        add(x);
        return *this;
    }

    Scalar value() const { return sum_ + correction_; }

private:
    Scalar sum_ = Scalar(0);
    Scalar correction_ = Scalar(0);
};

} // namespace volterra
