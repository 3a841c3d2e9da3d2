#pragma once

#include <span>
#include <vector>

#include "nestpol/bernstein.hpp"
#include "nestpol/interval.hpp"
#include "nestpol/types.hpp"

namespace nestpol {

/// Interpolation rule of order m on the m+1 zeros of the Chebyshev
/// polynomial C_{m+1}, with the simplified barycentric weights of that
/// family, (-1)^nu * sin(pi*(2nu+1)/(2m+2)).
class ChebyshevRule {
public:
    explicit ChebyshevRule(int order);

    int order() const { return order_; }
    int size() const { return order_ + 1; }

    /// Nodes cos(pi*(2nu+1)/(2m+2)), pairwise distinct, sorted descending.
    const std::vector<double>& points() const { return points_; }
    const std::vector<double>& weights() const { return weights_; }

    /// All Lagrange basis values at x; out.size() must equal size().
    void lagrange_values(double x, std::span<double> out) const;

    /// Lebesgue function sum_nu |l_nu(x)|.
    double lebesgue_function(double x) const;

private:
    int order_;
    std::vector<double> points_;
    std::vector<double> weights_;
};

/// C_n(w) by the forward three-term recurrence, valid on all of C.
Complex chebyshev_polynomial(int n, Complex w);

/// Lower estimate of the Lebesgue constant of the order-m rule, maximized
/// over a 4096-point uniform grid of [-1, 1] plus the endpoints. For this
/// point family it stays below 1 + m.
double lebesgue_constant(int m);

/// Polynomial interpolant of order m on an interval, stored as node
/// samples plus expansion coefficients. Evaluation is barycentric near the
/// interval and switches to the Clenshaw form far outside, where the
/// barycentric denominator cancels catastrophically.
class Interpolant {
public:
    Interpolant(Interval interval, ChebyshevRule rule, std::vector<Complex> samples);

    const Interval& interval() const { return interval_; }
    const ChebyshevRule& rule() const { return rule_; }
    int order() const { return rule_.order(); }
    const std::vector<Complex>& samples() const { return samples_; }

    /// Value of the unique degree-<=m interpolating polynomial at w.
    /// Arguments within 1e-14*(b-a) of a node return the stored sample.
    Complex operator()(Complex w) const;

    /// Coefficients a_0..a_m of the expansion p = a_0 + 2 sum a_n C_n in
    /// pulled-back coordinates, from the direct O(m^2) cosine transform.
    const std::vector<Complex>& chebyshev_coefficients() const { return coefficients_; }

    /// Interpolant of p' on the same interval, one order lower (order 0
    /// for constants), including the 2/(b-a) chain-rule factor.
    Interpolant derivative() const;

private:
    Interval interval_;
    ChebyshevRule rule_;
    std::vector<Complex> samples_;
    std::vector<Complex> coefficients_;
};

/// Sample f at the mapped nodes and wrap the result as an Interpolant.
/// Reproduces polynomials of degree <= m exactly.
Interpolant interpolate(const AnalyticFn& f, const Interval& interval, int m);

/// Coefficients a_0..a_m of the expansion f = a_0 + 2 sum a_n C_n of a
/// function holomorphic on the open radius-rho reference disc, computed by
/// n_quad-point trapezoidal quadrature over the circle |z| = r, r in
/// (1, rho). Negative indices are omitted: a_{-n} = a_n by symmetry.
std::vector<Complex> chebyshev_expansion_coefficients(const AnalyticFn& f, double rho,
                                                      double r, int m, int n_quad = 4096);

/// Truncated expansion a_0 + 2 sum_{n=1}^m a_n C_n as an evaluator on C
/// (reference coordinates), by Clenshaw recurrence.
class ChebyshevExpansion {
public:
    explicit ChebyshevExpansion(std::vector<Complex> coefficients);

    int order() const { return static_cast<int>(coefficients_.size()) - 1; }
    const std::vector<Complex>& coefficients() const { return coefficients_; }
    Complex operator()(Complex w) const;

private:
    std::vector<Complex> coefficients_;
};

ChebyshevExpansion truncated_expansion(std::span<const Complex> coefficients, int m);

/// Interpolation error bound on the closed radius-rho_hat disc for a
/// function holomorphic on the radius-rho disc with sup norm f_norm:
/// 2*(1 + lambda_m)/(rho/rho_hat - 1) * (rho_hat/rho)^m * f_norm.
double interpolation_error_bound(int m, double rho, double rho_hat, double f_norm,
                                 double lambda_m);

} // namespace nestpol
