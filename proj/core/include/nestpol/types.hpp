#pragma once

#include <complex>
#include <functional>
#include <stdexcept>

namespace nestpol {

using Complex = std::complex<double>;

/// Function of one complex variable, assumed holomorphic wherever the
/// calling operation samples it.
using AnalyticFn = std::function<Complex(Complex)>;

/// A user-supplied function could not be evaluated where an operation
/// needed it (pole on a sampling contour, overflow to non-finite values).
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace nestpol
