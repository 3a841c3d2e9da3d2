#include "nestpol/oscillatory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nestpol {

namespace {

void check_window(int i, int j, int depth, const char* who) {
    if (i < 0 || j > depth || i > j)
        throw std::out_of_range(std::string(who) + ": requires 0 <= i <= j <= L");
}

Complex plane_wave(double c, Complex w) {
    return std::exp(Complex(0.0, c) * w);
}

} // namespace

DirectionalChain::DirectionalChain(Chain base, std::vector<double> directions, double omega)
    : base_(std::move(base)), directions_(std::move(directions)), omega_(omega) {
    if (!(omega_ > 0.0))
        throw std::invalid_argument("DirectionalChain: requires omega > 0");
    if (directions_.size() != static_cast<size_t>(base_.depth()) + 1)
        throw std::invalid_argument("DirectionalChain: needs one direction per level");
    const double slack = 1.0 + 1e-12;
    for (int l = 1; l <= base_.depth(); ++l) {
        const double drift = std::abs(directions_[static_cast<size_t>(l)] -
                                      directions_[static_cast<size_t>(l) - 1]) *
                             base_.level(l).length();
        if (drift > omega_ * slack)
            throw std::invalid_argument("DirectionalChain: neighbouring directions exceed the budget");
    }
    const double longrange = omega_ / (1.0 - base_.delta0());
    for (int i = 0; i <= base_.depth(); ++i)
        for (int j = i; j <= base_.depth(); ++j) {
            const double drift = std::abs(directions_[static_cast<size_t>(j)] -
                                          directions_[static_cast<size_t>(i)]) *
                                 base_.level(j).length();
            if (drift > longrange * slack)
                throw std::invalid_argument("DirectionalChain: long-range direction bound violated");
        }
}

AnalyticFn modulate(double c, AnalyticFn f) {
    return [c, f = std::move(f)](Complex w) { return plane_wave(c, w) * f(w); };
}

Complex ModulatedInterpolant::operator()(Complex w) const {
    return plane_wave(direction, w) * poly(w);
}

ModulatedInterpolant oscillatory_interpolate(const AnalyticFn& f, const Interval& interval,
                                             int m, double c) {
    return {c, interpolate(modulate(-c, f), interval, m)};
}

double oscillation_constant(double omega, double delta0, double rho) {
    if (!(omega > 0.0))
        throw std::invalid_argument("oscillation_constant: requires omega > 0");
    if (!(delta0 > 0.0 && delta0 < 1.0))
        throw std::invalid_argument("oscillation_constant: requires delta0 in (0, 1)");
    if (!(rho >= 1.0))
        throw std::invalid_argument("oscillation_constant: requires rho >= 1");
    return std::exp(omega / (1.0 - delta0) * (rho - 1.0 / rho) / 4.0);
}

double boundary_oscillation_max(const DirectionalChain& chain, double rho, int i, int j,
                                int n_samples) {
    check_window(i, j, chain.depth(), "boundary_oscillation_max");
    const double dc = chain.direction(j) - chain.direction(i);
    const BernsteinDisc disc(chain.base().level(j), rho);
    double best = 0.0;
    for (const Complex& w : disc.boundary(n_samples))
        best = std::max(best, std::abs(plane_wave(dc, w)));
    return best;
}

OscillatoryIterated OscillatoryIterated::identity(AnalyticFn f) {
    OscillatoryIterated r;
    r.passthrough_ = std::move(f);
    return r;
}

OscillatoryIterated OscillatoryIterated::wrap(ModulatedInterpolant p) {
    OscillatoryIterated r;
    r.poly_ = std::move(p);
    return r;
}

const ModulatedInterpolant& OscillatoryIterated::interpolant() const {
    if (!poly_)
        throw std::logic_error("OscillatoryIterated: identity window has no polynomial");
    return *poly_;
}

Complex OscillatoryIterated::operator()(Complex w) const {
    return poly_ ? (*poly_)(w) : passthrough_(w);
}

OscillatoryIterated oscillatory_chain_interpolate(const DirectionalChain& chain,
                                                  const AnalyticFn& f, int i, int j) {
    check_window(i, j, chain.depth(), "oscillatory_chain_interpolate");
    if (i == j)
        return OscillatoryIterated::identity(f);
    ModulatedInterpolant p = oscillatory_interpolate(f, chain.base().level(i + 1),
                                                     chain.base().order(i + 1),
                                                     chain.direction(i + 1));
    for (int l = i + 2; l <= j; ++l) {
        ModulatedInterpolant next =
            oscillatory_interpolate([&p](Complex w) { return p(w); }, chain.base().level(l),
                                    chain.base().order(l), chain.direction(l));
        p = std::move(next);
    }
    return OscillatoryIterated::wrap(std::move(p));
}

OscillatoryBounds oscillatory_bounds(const DirectionalChain& chain, const BoundParams& params,
                                     double c_os, int i, int j) {
    check_window(i, j, chain.depth(), "oscillatory_bounds");
    if (!(c_os >= 1.0))
        throw std::invalid_argument("oscillatory_bounds: requires c_os >= 1");

    const double factor = c_os * c_os * params.c_in;
    OscillatoryBounds out;
    out.stability = 1.0;
    for (int l = i + 1; l <= j; ++l)
        out.stability *= 1.0 + factor * std::pow(params.q, chain.base().order(l));

    double sum = 0.0;
    for (int k = i + 1; k <= j; ++k) {
        double head = 1.0;
        for (int l = i + 1; l <= k - 1; ++l)
            head *= 1.0 + factor * std::pow(params.q, chain.base().order(l));
        sum += head * factor * std::pow(params.q, chain.base().order(k));
    }
    out.accuracy = sum;
    return out;
}

int min_oscillatory_order(int L, double q, double p) {
    if (L < 1)
        throw std::invalid_argument("min_oscillatory_order: requires L >= 1");
    if (!(q > 0.0 && q < 1.0))
        throw std::invalid_argument("min_oscillatory_order: requires q in (0, 1)");
    if (!(p > q && p <= 1.0))
        throw std::invalid_argument("min_oscillatory_order: requires p in (q, 1]");
    const double alpha = std::log(static_cast<double>(L)) / (std::log(p) - std::log(q));
    return std::max(1, static_cast<int>(std::ceil(alpha)));
}

MeasuredBound oscillatory_sup_stability_check(const DirectionalChain& chain,
                                              const BoundParams& params, const AnalyticFn& f,
                                              int i, int j, int grid_n) {
    check_window(i, j, chain.depth(), "oscillatory_sup_stability_check");
    if (i >= j)
        throw std::invalid_argument("oscillatory_sup_stability_check: requires i < j");
    const int alpha = chain.base().min_order();
    for (int l = 1; l <= chain.depth(); ++l)
        if (chain.base().order(l) != alpha)
            throw std::invalid_argument("oscillatory_sup_stability_check: requires constant orders");
    const int alpha0 = min_oscillatory_order(chain.depth(), params.q, params.p);
    if (alpha < alpha0)
        throw std::invalid_argument(
            "oscillatory_sup_stability_check: order below the log(L) stability threshold");

    const double c_os =
        oscillation_constant(chain.omega(), chain.base().delta0(), params.sigma * params.rho0);
    const double c_st = 1.0 + c_os * params.c_in * std::exp(c_os * c_os * params.c_in) *
                                  std::pow(params.p, alpha);

    const OscillatoryIterated it = oscillatory_chain_interpolate(chain, f, i, j);
    const double measured =
        grid_sup_norm([&](Complex w) { return it(w); }, chain.base().level(j), grid_n);
    const double f_sup = grid_sup_norm(f, chain.base().level(i), grid_n);
    const double bound = c_st * lebesgue_constant(chain.base().order(i + 1)) * f_sup;
    return {measured, bound};
}

} // namespace nestpol
