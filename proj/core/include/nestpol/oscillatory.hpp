#pragma once

#include <optional>
#include <vector>

#include "nestpol/chain.hpp"
#include "nestpol/types.hpp"

namespace nestpol {

/// Chain with one modulation direction per level, c_0..c_L, and a budget
/// omega limiting how far neighbouring directions may drift:
/// |c_l - c_{l-1}| * (b_l - a_l) <= omega. The implied long-range bound
/// |c_j - c_i| * (b_j - a_j) <= omega/(1 - delta0) is verified exhaustively
/// at construction.
class DirectionalChain {
public:
    DirectionalChain(Chain base, std::vector<double> directions, double omega);

    const Chain& base() const { return base_; }
    int depth() const { return base_.depth(); }
    double direction(int l) const { return directions_.at(static_cast<size_t>(l)); }
    const std::vector<double>& directions() const { return directions_; }
    double omega() const { return omega_; }

private:
    Chain base_;
    std::vector<double> directions_;
    double omega_;
};

/// Plane-wave multiplication x -> e^{icx} f(x), extended holomorphically.
AnalyticFn modulate(double c, AnalyticFn f);

/// Interpolant of the demodulated function, re-modulated on evaluation:
/// e^{icw} * p(w) with p interpolating x -> e^{-icx} f(x).
struct ModulatedInterpolant {
    double direction = 0.0;
    Interpolant poly;

    Complex operator()(Complex w) const;
};

ModulatedInterpolant oscillatory_interpolate(const AnalyticFn& f, const Interval& interval,
                                             int m, double c);

/// Constant exp(omega/(1 - delta0) * (rho - 1/rho)/4) bounding |e^{icw}|
/// over the radius-rho disc for any in-budget direction difference c.
double oscillation_constant(double omega, double delta0, double rho);

/// Measured max of |e^{i(c_j - c_i)w}| over the sampled boundary of the
/// level-j radius-rho disc; stays below oscillation_constant applied to
/// the chain's budget.
double boundary_oscillation_max(const DirectionalChain& chain, double rho, int i, int j,
                                int n_samples = 1024);

/// Result of the modulated chain composition: identity for an empty
/// window, otherwise the final level's modulated polynomial.
class OscillatoryIterated {
public:
    static OscillatoryIterated identity(AnalyticFn f);
    static OscillatoryIterated wrap(ModulatedInterpolant p);

    bool is_identity() const { return !poly_.has_value(); }
    const ModulatedInterpolant& interpolant() const;
    Complex operator()(Complex w) const;

private:
    OscillatoryIterated() = default;
    std::optional<ModulatedInterpolant> poly_;
    AnalyticFn passthrough_;
};

/// Modulated interpolation applied level by level from i down to j.
OscillatoryIterated oscillatory_chain_interpolate(const DirectionalChain& chain,
                                                  const AnalyticFn& f, int i, int j);

/// Stability product prod (1 + c_os^2 c_in q^{m_l}) and accuracy sum of the
/// modulated chain over the window (i, j], with norms smoothed by the
/// level-i demodulation.
struct OscillatoryBounds {
    double stability = 1.0;
    double accuracy = 0.0;
};

OscillatoryBounds oscillatory_bounds(const DirectionalChain& chain, const BoundParams& params,
                                     double c_os, int i, int j);

/// Smallest order ceil(log(L) / (log(p) - log(q))) (at least 1) that keeps
/// L*(q/p)^alpha <= 1, the stability condition of modulated chains.
int min_oscillatory_order(int L, double q, double p);

/// Sup-norm stability of the modulated chain for merely continuous f:
/// measured grid sup of |I_{j,i}[f]| against
/// (1 + c_os c_in exp(c_os^2 c_in) p^alpha) * Lambda_{m_{i+1}} * sup |f|.
/// Requires constant orders alpha >= min_oscillatory_order(L, q, p).
MeasuredBound oscillatory_sup_stability_check(const DirectionalChain& chain,
                                              const BoundParams& params, const AnalyticFn& f,
                                              int i, int j, int grid_n = 2000);

} // namespace nestpol
