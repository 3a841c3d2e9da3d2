#pragma once

#include <initializer_list>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "nestpol/chebyshev.hpp"
#include "nestpol/interval.hpp"
#include "nestpol/types.hpp"

namespace nestpol {

/// Nested sequence of intervals [a_0,b_0] >= ... >= [a_L,b_L] with
/// interpolation orders m_1..m_L and shrinking parameters. Level lengths
/// must shrink by at least delta0 per step; a positive delta1 additionally
/// enforces the slow-shrinking lower bound needed by the derivative
/// experiments.
class Chain {
public:
    Chain(std::vector<Interval> levels, std::vector<int> orders, double delta0,
          double delta1 = 0.0);

    int depth() const { return static_cast<int>(levels_.size()) - 1; }
    const Interval& level(int l) const { return levels_.at(static_cast<size_t>(l)); }
    /// Order of the step onto level l, l in [1:L].
    int order(int l) const { return orders_.at(static_cast<size_t>(l) - 1); }
    const std::vector<int>& orders() const { return orders_; }
    double delta0() const { return delta0_; }
    double delta1() const { return delta1_; }
    int min_order() const;

private:
    std::vector<Interval> levels_;
    std::vector<int> orders_;
    double delta0_;
    double delta1_;
};

enum class Anchor { left, center, right };

/// Dyadic chain below a root interval: level l has length 2^-l times the
/// root length, anchored at the given end (delta0 = delta1 = 1/2).
Chain dyadic_chain(const Interval& root, std::span<const int> orders, Anchor anchor);

inline Chain dyadic_chain(const Interval& root, std::initializer_list<int> orders,
                          Anchor anchor) {
    return dyadic_chain(root, std::span<const int>(orders.begin(), orders.size()), anchor);
}

/// Dyadic chain with each level placed uniformly at random inside its
/// parent.
Chain random_dyadic_chain(const Interval& root, std::span<const int> orders, std::mt19937& rng);

/// Constant C = sup_m 2*(1 + scale*(1+m)^power)/(sigma - 1) * (sigma*q)^-m,
/// finite whenever sigma*q > 1. The scan extends past m_max until 50
/// consecutively decreasing terms confirm the supremum.
double interpolation_constant(double sigma, double q, double lebesgue_scale,
                              double lebesgue_power, int m_max = 200);

/// Constant 4*rho0/(rho0 - 1)^2 in the derivative bound
/// ||f'||_[a,b] <= C/(b-a) * ||f|| on the radius-rho0 disc.
double cauchy_derivative_constant(double rho0);

/// Smallest integer alpha with (q2^alpha / delta1) * (1 + c_in*q1^alpha)
/// <= 1/2 (delta1 = 1 when absent), found by linear scan.
int min_stable_order(double c_in, double q1, double q2,
                     std::optional<double> delta1 = std::nullopt);

/// Free parameters and derived constants of the chain error analysis.
/// q2 = sigma^-theta2 is derived, never set independently. c_in is the
/// interpolation constant for (sigma, q); c_in_sf the one for
/// (sigma^theta1, q1) used by the stability-first route.
struct BoundParams {
    double rho0 = 2.0;
    double sigma = 1.0;
    double q = 1.0;
    double theta1 = 0.5;
    double theta2 = 0.5;
    double q1 = 1.0;
    double q2 = 1.0;
    double p = 1.0;
    double lebesgue_scale = 1.0;
    double lebesgue_power = 1.0;
    double c_in = 0.0;
    double c_in_sf = 0.0;
    double c_ca = 0.0;
    int alpha0 = 1;

    /// Default derivations for the free parameters: q = sigma^(-1/2),
    /// theta1 = theta2 = 1/2, q1 = sigma^(-theta1/2), p = sqrt(q),
    /// Lebesgue growth bound with scale = power = 1.
    static BoundParams from_geometry(double rho0, double delta0);

    void validate() const;
};

struct MeasuredBound {
    double measured = 0.0;
    double bound = 0.0;
};

/// One interpolation step measured against its bound: measured is the
/// boundary-sampled norm of f - p on the radius-rho disc, the bound is
/// c_in * q^m * tau^-m times the sampled norm of f on the sigma*tau*rho
/// disc. halved_rate switches to the weakened-shrinking variant with
/// exponent m/2 and enlargement sqrt(sigma)*tau*rho; pass a c_in computed
/// for (sqrt(sigma), sqrt(q)) in that mode.
MeasuredBound single_step_error(const AnalyticFn& f, const Interval& interval, int m,
                                double rho, double tau, double sigma, double q, double c_in,
                                bool halved_rate = false, int n_measure = 1024,
                                int n_norm = 8192);

/// Result of composing interpolation steps down a chain: the identity
/// pass-through for an empty window, otherwise the final level's
/// polynomial.
class IteratedInterpolant {
public:
    static IteratedInterpolant identity(AnalyticFn f);
    static IteratedInterpolant wrap(Interpolant p);

    bool is_identity() const { return !poly_.has_value(); }
    const Interpolant& interpolant() const;
    Complex operator()(Complex w) const;

private:
    IteratedInterpolant() = default;
    std::optional<Interpolant> poly_;
    AnalyticFn passthrough_;
};

/// Composition of the per-level operators from level i down to level j,
/// applied by re-sampling each interpolant at the next level's nodes.
IteratedInterpolant iterated_interpolate(const Chain& chain, const AnalyticFn& f, int i, int j);

/// Bounds of the approximation-first analysis over the window (i, j] with
/// reference level r <= i: the stability product and the per-level
/// accuracy terms whose sum bounds the relative chain error.
struct ErrorFirstBounds {
    double stability = 1.0;
    std::vector<double> accuracy_terms;

    double accuracy() const;
    double largest_term() const;
};

ErrorFirstBounds error_first_bounds(const Chain& chain, const BoundParams& params, int i,
                                    int j, int r);

/// Orders m_l = alpha + beta*(L - l) for l = 1..L.
std::vector<int> variable_order_schedule(int alpha, int beta, int L);

/// Uniform stability constant exp(c_in * q^alpha / (1 - q^beta)) of the
/// variable-order schedule.
double variable_order_stability_bound(int alpha, int beta, double q, double c_in);

/// Full-chain error bound 2*c_st*c_in * q^(min(alpha,beta)*L) /
/// (1 - q^(beta*floor(L/2))) of the variable-order schedule.
double variable_order_error_bound(int alpha, int beta, int L, double q, double c_in,
                                  double c_st);

/// Bounds of the stability-first analysis over the window (i, j]: the
/// stability product on the inflated disc sigma^(theta2*(j-i))*rho and the
/// accuracy sum on the radius-rho disc.
struct StabilityFirstBounds {
    double stability = 1.0;
    double accuracy = 0.0;
};

StabilityFirstBounds stability_first_bounds(const Chain& chain, const BoundParams& params,
                                            int i, int j);

/// Grid maximum of |f' - (I_{j,i}[f])'| over [a_j, b_j] against the
/// derivative bound 2*c_ca*c_in_sf/(b_i - a_i) * q1^alpha * ||f||. Requires
/// a slow-shrinking chain whose minimal order reaches the delta1-strict
/// stable threshold.
MeasuredBound derivative_error_experiment(const Chain& chain, const BoundParams& params,
                                          const AnalyticFn& f, const AnalyticFn& f_prime,
                                          int i, int j, int grid_n = 1000, int n_norm = 8192);

} // namespace nestpol
