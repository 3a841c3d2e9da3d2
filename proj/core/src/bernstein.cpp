#include "nestpol/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nestpol {

Complex joukowsky(Complex z) {
    if (z == Complex(0.0, 0.0))
        throw std::invalid_argument("joukowsky: z must be nonzero");
    return 0.5 * (z + 1.0 / z);
}

double joukowsky(double x) {
    if (x == 0.0)
        throw std::invalid_argument("joukowsky: z must be nonzero");
    return 0.5 * (x + 1.0 / x);
}

double joukowsky_inverse(double rho) {
    if (!(rho >= 1.0))
        throw std::invalid_argument("joukowsky_inverse: requires rho >= 1");
    if (rho < 1.0 + 1e-14)
        return 1.0;
    return rho + std::sqrt(rho * rho - 1.0);
}

double enlarged_radius(double rho, double delta) {
    if (!(rho > 1.0))
        throw std::invalid_argument("enlarged_radius: requires rho > 1");
    if (!(delta > 0.0 && delta <= 1.0))
        throw std::invalid_argument("enlarged_radius: requires delta in (0, 1]");
    return joukowsky_inverse((joukowsky(rho) - 1.0) / delta + 1.0);
}

double radius_growth(double rho, double delta) {
    if (!(rho >= 1.0))
        throw std::invalid_argument("radius_growth: requires rho >= 1");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("radius_growth: requires delta in (0, 1)");
    return joukowsky_inverse((joukowsky(rho) - 1.0) / delta + 1.0) / rho;
}

double nesting_factor(double rho0, double delta0) {
    if (!(rho0 > 1.0))
        throw std::invalid_argument("nesting_factor: requires rho0 > 1");
    return radius_growth(rho0, delta0);
}

BernsteinDisc::BernsteinDisc(Interval interval, double rho)
    : interval_(interval), rho_(rho) {
    if (!(rho >= 1.0))
        throw std::invalid_argument("BernsteinDisc: requires rho >= 1");
}

bool BernsteinDisc::contains(Complex w) const {
    const Complex what = interval_.pullback(w);
    const double s = std::abs(what - 1.0) + std::abs(what + 1.0);
    return s <= 2.0 * joukowsky(rho_) + 1e-12;
}

std::vector<Complex> BernsteinDisc::boundary(int n) const {
    if (n < 4)
        throw std::invalid_argument("BernsteinDisc::boundary: requires n >= 4");
    std::vector<Complex> points(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / n;
        points[static_cast<size_t>(k)] = interval_.map(joukowsky(std::polar(rho_, theta)));
    }
    return points;
}

double disc_sup_norm(const AnalyticFn& f, const BernsteinDisc& disc, int n) {
    if (n < 64)
        throw std::invalid_argument("disc_sup_norm: requires n >= 64");
    double best = 0.0;
    for (const Complex& w : disc.boundary(n)) {
        const double v = std::abs(f(w));
        if (!std::isfinite(v))
            throw EvaluationError("disc_sup_norm: function not finite on sampled boundary");
        best = std::max(best, v);
    }
    return best;
}

double grid_sup_norm(const AnalyticFn& f, const Interval& interval, int n) {
    if (n < 1)
        throw std::invalid_argument("grid_sup_norm: requires n >= 1");
    double best = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double x = interval.a() + interval.length() * k / n;
        const double v = std::abs(f(Complex(x, 0.0)));
        if (!std::isfinite(v))
            throw EvaluationError("grid_sup_norm: function not finite on grid");
        best = std::max(best, v);
    }
    return best;
}

} // namespace nestpol
