#pragma once

#include <cmath>
#include <span>

namespace voigt {

/// Neumaier-compensated accumulator. Every series in the library is summed
/// through this in a fixed ascending-index order so that results are
/// reproducible bit-for-bit between runs.
class KahanSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    KahanSum& operator+=(double x) {
        add(x);
        return *this;
    }

    double value() const { return sum_ + comp_; }

    void reset() {
        sum_ = 0.0;
        comp_ = 0.0;
    }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_total(std::span<const double> xs) {
    KahanSum s;
    for (double x : xs) s.add(x);
    return s.value();
}

} // namespace voigt
