#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace ingham {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// sin(x)/x with the removable singularity filled by a 4-term Taylor series.
inline double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0 - x2 * x2 * x2 / 5040.0;
    }
    return std::sin(x) / x;
}

/// Dirichlet kernel sum_{j=-J}^{J} e^{i j theta} = sin((2J+1)theta/2) / sin(theta/2).
/// theta is reduced to (-pi, pi] first; the kernel is 2pi-periodic for odd 2J+1.
inline double dirichlet(double theta, long J) {
    const double n = 2.0 * static_cast<double>(J) + 1.0;
    const double r = std::remainder(theta, two_pi);
    if (r == 0.0) return n;
    const double half = 0.5 * r;
    if (std::abs(half) < 1e-8) {
        // ratio of two tiny sines; n*sinc(n*half)/sinc(half) keeps full precision
        return n * sinc(n * half) / sinc(half);
    }
    return std::sin(n * half) / std::sin(half);
}

/// Neumaier-compensated accumulator.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    CompensatedSum& operator+=(double v) {
        add(v);
        return *this;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class CompensatedComplexSum {
public:
    void add(cplx v) {
        re_.add(v.real());
        im_.add(v.imag());
    }
    CompensatedComplexSum& operator+=(cplx v) {
        add(v);
        return *this;
    }
    cplx value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

} // namespace ingham
