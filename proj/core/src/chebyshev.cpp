#include "nestpol/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nestpol {

namespace {

constexpr double kPi = std::numbers::pi;

// Node-coincidence threshold in reference coordinates; corresponds to
// |w - node| <= 1e-14*(b-a) in interval coordinates.
constexpr double kNodeTol = 2e-14;

// Clenshaw recurrence for a_0 + 2 sum_{n>=1} a_n C_n(w).
Complex clenshaw(std::span<const Complex> a, Complex w) {
    const int m = static_cast<int>(a.size()) - 1;
    if (m <= 0)
        return a.empty() ? Complex(0.0) : a[0];
    Complex b1(0.0), b2(0.0);
    for (int k = m; k >= 1; --k) {
        const Complex bk = 2.0 * a[static_cast<size_t>(k)] + 2.0 * w * b1 - b2;
        b2 = b1;
        b1 = bk;
    }
    return a[0] + w * b1 - b2;
}

} // namespace

ChebyshevRule::ChebyshevRule(int order) : order_(order) {
    if (order < 0)
        throw std::invalid_argument("ChebyshevRule: requires order >= 0");
    const int n = order + 1;
    points_.resize(static_cast<size_t>(n));
    weights_.resize(static_cast<size_t>(n));
    for (int nu = 0; nu < n; ++nu) {
        const double theta = kPi * (2.0 * nu + 1.0) / (2.0 * n);
        points_[static_cast<size_t>(nu)] = std::cos(theta);
        weights_[static_cast<size_t>(nu)] = (nu % 2 == 0 ? 1.0 : -1.0) * std::sin(theta);
    }
}

void ChebyshevRule::lagrange_values(double x, std::span<double> out) const {
    const size_t n = points_.size();
    if (out.size() != n)
        throw std::invalid_argument("ChebyshevRule::lagrange_values: output size mismatch");
    for (size_t nu = 0; nu < n; ++nu) {
        if (std::abs(x - points_[nu]) <= kNodeTol) {
            std::fill(out.begin(), out.end(), 0.0);
            out[nu] = 1.0;
            return;
        }
    }
    double den = 0.0;
    for (size_t nu = 0; nu < n; ++nu) {
        const double t = weights_[nu] / (x - points_[nu]);
        out[nu] = t;
        den += t;
    }
    for (size_t nu = 0; nu < n; ++nu)
        out[nu] /= den;
}

double ChebyshevRule::lebesgue_function(double x) const {
    const size_t n = points_.size();
    for (size_t nu = 0; nu < n; ++nu)
        if (std::abs(x - points_[nu]) <= kNodeTol)
            return 1.0;
    double den = 0.0;
    double num = 0.0;
    for (size_t nu = 0; nu < n; ++nu) {
        const double t = weights_[nu] / (x - points_[nu]);
        den += t;
        num += std::abs(t);
    }
    return num / std::abs(den);
}

Complex chebyshev_polynomial(int n, Complex w) {
    if (n < 0)
        throw std::invalid_argument("chebyshev_polynomial: requires n >= 0");
    if (n == 0)
        return Complex(1.0);
    Complex prev(1.0);
    Complex cur = w;
    for (int k = 2; k <= n; ++k) {
        const Complex next = 2.0 * w * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double lebesgue_constant(int m) {
    if (m < 0)
        throw std::invalid_argument("lebesgue_constant: requires m >= 0");
    const ChebyshevRule rule(m);
    const int grid = 4096;
    double best = std::max(rule.lebesgue_function(-1.0), rule.lebesgue_function(1.0));
    for (int k = 0; k < grid; ++k) {
        const double x = -1.0 + 2.0 * k / (grid - 1);
        best = std::max(best, rule.lebesgue_function(x));
    }
    return best;
}

Interpolant::Interpolant(Interval interval, ChebyshevRule rule, std::vector<Complex> samples)
    : interval_(interval), rule_(std::move(rule)), samples_(std::move(samples)) {
    const int n = rule_.size();
    if (samples_.size() != static_cast<size_t>(n))
        throw std::invalid_argument("Interpolant: samples must match rule size");
    coefficients_.resize(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        Complex s(0.0);
        for (int nu = 0; nu < n; ++nu) {
            const double theta = kPi * (2.0 * nu + 1.0) / (2.0 * n);
            s += samples_[static_cast<size_t>(nu)] * std::cos(k * theta);
        }
        coefficients_[static_cast<size_t>(k)] = s / static_cast<double>(n);
    }
}

Complex Interpolant::operator()(Complex w) const {
    const Complex what = interval_.pullback(w);
    const auto& xi = rule_.points();
    const auto& bw = rule_.weights();
    const size_t n = xi.size();
    for (size_t nu = 0; nu < n; ++nu)
        if (std::abs(what - Complex(xi[nu], 0.0)) <= kNodeTol)
            return samples_[nu];

    // The barycentric denominator is the node polynomial's reciprocal up to
    // a constant; far outside the interval it shrinks below the rounding
    // noise of its terms and cancels catastrophically. Switch to Clenshaw
    // there, which tracks the dominant (growing) recurrence solution.
    const double ellipse = std::abs(what - 1.0) + std::abs(what + 1.0);
    if (ellipse > 2.0 * joukowsky(1.25))
        return clenshaw(coefficients_, what);

    Complex num(0.0), den(0.0);
    for (size_t nu = 0; nu < n; ++nu) {
        const Complex t = bw[nu] / (what - Complex(xi[nu], 0.0));
        num += t * samples_[nu];
        den += t;
    }
    return num / den;
}

Interpolant Interpolant::derivative() const {
    const int m = order();
    const auto& a = chebyshev_coefficients();

    // Full-convention coefficients c_n (p = sum c_n C_n): c_0 = a_0,
    // c_n = 2 a_n, then the standard backward recurrence for p'.
    std::vector<Complex> c(static_cast<size_t>(m) + 1);
    c[0] = a[0];
    for (int k = 1; k <= m; ++k)
        c[static_cast<size_t>(k)] = 2.0 * a[static_cast<size_t>(k)];

    std::vector<Complex> d(static_cast<size_t>(m) + 2, Complex(0.0));
    for (int k = m; k >= 1; --k)
        d[static_cast<size_t>(k) - 1] = d[static_cast<size_t>(k) + 1] + 2.0 * k * c[static_cast<size_t>(k)];
    if (m >= 1)
        d[0] *= 0.5;

    // Back to the halved convention and sample on the lower-order rule.
    const int dm = std::max(m - 1, 0);
    std::vector<Complex> da(static_cast<size_t>(dm) + 1, Complex(0.0));
    if (m >= 1) {
        da[0] = d[0];
        for (int k = 1; k <= dm; ++k)
            da[static_cast<size_t>(k)] = 0.5 * d[static_cast<size_t>(k)];
    }

    const double scale = 2.0 / interval_.length();
    ChebyshevRule drule(dm);
    std::vector<Complex> ds(static_cast<size_t>(dm) + 1);
    for (int nu = 0; nu <= dm; ++nu)
        ds[static_cast<size_t>(nu)] =
            scale * clenshaw(da, Complex(drule.points()[static_cast<size_t>(nu)], 0.0));
    return Interpolant(interval_, std::move(drule), std::move(ds));
}

Interpolant interpolate(const AnalyticFn& f, const Interval& interval, int m) {
    ChebyshevRule rule(m);
    std::vector<Complex> samples(static_cast<size_t>(rule.size()));
    for (int nu = 0; nu < rule.size(); ++nu) {
        const double x = interval.map(rule.points()[static_cast<size_t>(nu)]);
        const Complex v = f(Complex(x, 0.0));
        if (!std::isfinite(std::abs(v)))
            throw EvaluationError("interpolate: function not finite at a node");
        samples[static_cast<size_t>(nu)] = v;
    }
    return Interpolant(interval, std::move(rule), std::move(samples));
}

std::vector<Complex> chebyshev_expansion_coefficients(const AnalyticFn& f, double rho,
                                                      double r, int m, int n_quad) {
    if (!(rho > 1.0))
        throw std::invalid_argument("chebyshev_expansion_coefficients: requires rho > 1");
    if (!(r > 1.0 && r < rho))
        throw std::invalid_argument("chebyshev_expansion_coefficients: requires r in (1, rho)");
    if (m < 0 || n_quad < 8)
        throw std::invalid_argument("chebyshev_expansion_coefficients: bad m or n_quad");

    std::vector<Complex> fz(static_cast<size_t>(n_quad));
    for (int k = 0; k < n_quad; ++k) {
        const double theta = 2.0 * kPi * k / n_quad;
        const Complex v = f(joukowsky(std::polar(r, theta)));
        if (!std::isfinite(std::abs(v)))
            throw EvaluationError("chebyshev_expansion_coefficients: function not finite on quadrature circle");
        fz[static_cast<size_t>(k)] = v;
    }

    std::vector<Complex> a(static_cast<size_t>(m) + 1);
    double rn = 1.0;
    for (int n = 0; n <= m; ++n) {
        Complex s(0.0);
        for (int k = 0; k < n_quad; ++k) {
            const double theta = 2.0 * kPi * k / n_quad;
            s += fz[static_cast<size_t>(k)] * std::polar(1.0, -n * theta);
        }
        a[static_cast<size_t>(n)] = s / (static_cast<double>(n_quad) * rn);
        rn *= r;
    }
    return a;
}

ChebyshevExpansion::ChebyshevExpansion(std::vector<Complex> coefficients)
    : coefficients_(std::move(coefficients)) {
    if (coefficients_.empty())
        throw std::invalid_argument("ChebyshevExpansion: requires at least one coefficient");
}

Complex ChebyshevExpansion::operator()(Complex w) const {
    return clenshaw(coefficients_, w);
}

ChebyshevExpansion truncated_expansion(std::span<const Complex> coefficients, int m) {
    if (m < 0)
        throw std::invalid_argument("truncated_expansion: requires m >= 0");
    if (coefficients.size() < static_cast<size_t>(m) + 1)
        throw std::invalid_argument("truncated_expansion: coefficients available only up to a lower index");
    return ChebyshevExpansion(std::vector<Complex>(coefficients.begin(), coefficients.begin() + m + 1));
}

double interpolation_error_bound(int m, double rho, double rho_hat, double f_norm,
                                 double lambda_m) {
    if (!(rho_hat >= 1.0 && rho_hat < rho))
        throw std::invalid_argument("interpolation_error_bound: requires 1 <= rho_hat < rho");
    if (f_norm < 0.0)
        throw std::invalid_argument("interpolation_error_bound: requires f_norm >= 0");
    return 2.0 * (1.0 + lambda_m) / (rho / rho_hat - 1.0) * std::pow(rho_hat / rho, m) * f_norm;
}

} // namespace nestpol
