#pragma once

#include <vector>

#include "nestpol/interval.hpp"
#include "nestpol/types.hpp"

namespace nestpol {

/// Joukowsky map z -> (z + 1/z)/2. Sends the circle of radius rho to the
/// ellipse with foci +-1 and semi-axes (rho +- 1/rho)/2.
Complex joukowsky(Complex z);
double joukowsky(double x);

/// Inverse of the Joukowsky map on the half axis [1, inf):
/// rho + sqrt(rho^2 - 1). Returns 1 exactly for rho within 1e-14 of 1,
/// guarding the radicand against rounding.
double joukowsky_inverse(double rho);

/// Radius of the reference disc around a subinterval of relative length
/// delta that is still contained in the radius-rho disc of its parent:
/// joukowsky_inverse((joukowsky(rho) - 1)/delta + 1). Larger than rho for
/// delta < 1, equal for delta = 1.
double enlarged_radius(double rho, double delta);

/// Growth factor enlarged_radius(rho, delta) / rho. Nondecreasing in rho,
/// nonincreasing in delta; equals 1 at rho = 1 and tends to 1/delta as
/// rho grows.
double radius_growth(double rho, double delta);

/// Uniform disc-growth factor sigma > 1 valid for every radius >= rho0 and
/// every subinterval whose length shrinks by at least delta0.
double nesting_factor(double rho0, double delta0);

/// Closed elliptic disc of radius rho >= 1 around an interval, i.e. the
/// image under the interval map of {w : |w-1| + |w+1| <= 2*joukowsky(rho)}.
/// rho = 1 degenerates to the interval itself.
class BernsteinDisc {
public:
    BernsteinDisc(Interval interval, double rho);

    const Interval& interval() const { return interval_; }
    double rho() const { return rho_; }

    /// Closed-disc membership with +1e-12 slack, tested in pullback
    /// coordinates so the tolerance is scale-free. Exact boundary points
    /// test true.
    bool contains(Complex w) const;

    /// n >= 4 points on the boundary ellipse, the images of equispaced
    /// angles on the radius-rho circle. For rho = 1 they collapse onto
    /// the interval.
    std::vector<Complex> boundary(int n) const;

private:
    Interval interval_;
    double rho_;
};

/// Lower estimate of the sup norm of f over the closed disc, the maximum
/// of |f| over n boundary samples. By the maximum principle this converges
/// to the disc sup norm from below as n grows (for nested sample sets).
/// Throws EvaluationError if f is not finite at a sample.
double disc_sup_norm(const AnalyticFn& f, const BernsteinDisc& disc, int n = 1024);

/// Max of |f| over an (n+1)-point uniform grid of the interval, endpoints
/// included.
double grid_sup_norm(const AnalyticFn& f, const Interval& interval, int n = 1000);

} // namespace nestpol
