#pragma once

#include <cmath>
#include <complex>

#if defined(__FAST_MATH__)
#error "compensated summation is defeated by -ffast-math"
#endif

namespace powsum {

/// Neumaier's variant of Kahan summation: the running error term also
/// captures the case where the incoming value dominates the sum.
struct CompensatedSum {
    double sum = 0.0;
    double compensation = 0.0;

    void add(double value) noexcept
    {
        double const t = sum + value;
        if (std::abs(sum) >= std::abs(value))
            compensation += (sum - t) + value;
        else
            compensation += (value - t) + sum;
        sum = t;
    }

    double value() const noexcept { return sum + compensation; }
};

/// Complex accumulator with independent compensation for each component.
class ComplexAcc {
public:
    ComplexAcc() = default;

    void add(std::complex<double> z) noexcept
    {
        re_.add(z.real());
        im_.add(z.imag());
    }

    ComplexAcc& operator+=(std::complex<double> z) noexcept
    {
        add(z);
        return *this;
    }

    std::complex<double> value() const noexcept { return {re_.value(), im_.value()}; }
    double real() const noexcept { return re_.value(); }
    double imag() const noexcept { return im_.value(); }
    double magnitude() const noexcept { return std::abs(value()); }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

} // namespace powsum
