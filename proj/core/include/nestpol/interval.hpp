#pragma once

#include <stdexcept>

#include "nestpol/types.hpp"

namespace nestpol {

/// Real interval [a, b] together with the affine map from the reference
/// interval [-1, 1], sending -1 to a and +1 to b.
class Interval {
public:
    Interval(double a, double b) : a_(a), b_(b) {
        if (!(a < b))
            throw std::invalid_argument("Interval: requires a < b");
    }

    double a() const { return a_; }
    double b() const { return b_; }
    double length() const { return b_ - a_; }
    double center() const { return 0.5 * (a_ + b_); }
    double half_length() const { return 0.5 * (b_ - a_); }

    double map(double xhat) const { return center() + half_length() * xhat; }
    Complex map(Complex what) const { return Complex(center(), 0.0) + half_length() * what; }

    double pullback(double x) const { return (x - center()) / half_length(); }
    Complex pullback(Complex w) const { return (w - Complex(center(), 0.0)) / half_length(); }

private:
    double a_;
    double b_;
};

} // namespace nestpol
