#include "nestpol/chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace nestpol {

namespace {

constexpr double kLenTol = 1e-12;

void check_window(int i, int j, int depth, const char* who) {
    if (i < 0 || j > depth || i > j)
        throw std::out_of_range(std::string(who) + ": requires 0 <= i <= j <= L");
}

} // namespace

Chain::Chain(std::vector<Interval> levels, std::vector<int> orders, double delta0,
             double delta1)
    : levels_(std::move(levels)), orders_(std::move(orders)), delta0_(delta0),
      delta1_(delta1) {
    if (levels_.empty())
        throw std::invalid_argument("Chain: requires at least the root level");
    if (orders_.size() != levels_.size() - 1)
        throw std::invalid_argument("Chain: needs one order per step");
    if (!(delta0_ > 0.0 && delta0_ < 1.0))
        throw std::invalid_argument("Chain: requires delta0 in (0, 1)");
    if (delta1_ < 0.0 || delta1_ > 1.0)
        throw std::invalid_argument("Chain: requires delta1 in [0, 1]");
    for (int m : orders_)
        if (m < 1)
            throw std::invalid_argument("Chain: orders must be positive");
    for (size_t l = 1; l < levels_.size(); ++l) {
        const Interval& fine = levels_[l];
        const Interval& coarse = levels_[l - 1];
        if (!(coarse.a() <= fine.a() && fine.b() <= coarse.b()))
            throw std::invalid_argument("Chain: levels must be nested");
        if (fine.length() > delta0_ * coarse.length() * (1.0 + kLenTol))
            throw std::invalid_argument("Chain: level violates the shrinking condition");
        if (delta1_ > 0.0 && fine.length() < delta1_ * coarse.length() * (1.0 - kLenTol))
            throw std::invalid_argument("Chain: level violates the slow-shrinking condition");
    }
}

int Chain::min_order() const {
    if (orders_.empty())
        throw std::logic_error("Chain::min_order: chain has no steps");
    return *std::min_element(orders_.begin(), orders_.end());
}

namespace {

// Half-length child interval inside the parent; the endpoints are clamped
// so rounding can never push the child past the parent.
Interval dyadic_child(const Interval& parent, double len, double a) {
    a = std::clamp(a, parent.a(), parent.b() - len);
    const double b = std::min(a + len, parent.b());
    return Interval(a, b);
}

} // namespace

Chain dyadic_chain(const Interval& root, std::span<const int> orders, Anchor anchor) {
    std::vector<Interval> levels;
    levels.reserve(orders.size() + 1);
    levels.push_back(root);
    double len = root.length();
    for (size_t l = 0; l < orders.size(); ++l) {
        len *= 0.5;
        const Interval& parent = levels.back();
        double a = 0.0;
        switch (anchor) {
        case Anchor::left: a = parent.a(); break;
        case Anchor::center: a = parent.center() - 0.5 * len; break;
        case Anchor::right: a = parent.b() - len; break;
        }
        levels.push_back(dyadic_child(parent, len, a));
    }
    return Chain(std::move(levels), std::vector<int>(orders.begin(), orders.end()), 0.5, 0.5);
}

Chain random_dyadic_chain(const Interval& root, std::span<const int> orders,
                          std::mt19937& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<Interval> levels;
    levels.reserve(orders.size() + 1);
    levels.push_back(root);
    double len = root.length();
    for (size_t l = 0; l < orders.size(); ++l) {
        len *= 0.5;
        const Interval& parent = levels.back();
        const double a = parent.a() + uni(rng) * (parent.length() - len);
        levels.push_back(dyadic_child(parent, len, a));
    }
    return Chain(std::move(levels), std::vector<int>(orders.begin(), orders.end()), 0.5, 0.5);
}

double interpolation_constant(double sigma, double q, double lebesgue_scale,
                              double lebesgue_power, int m_max) {
    if (!(sigma > 1.0))
        throw std::invalid_argument("interpolation_constant: requires sigma > 1");
    if (!(sigma * q > 1.0))
        throw std::invalid_argument("interpolation_constant: requires sigma*q > 1");
    if (m_max < 1)
        throw std::invalid_argument("interpolation_constant: requires m_max >= 1");

    double best = 0.0;
    double prev = std::numeric_limits<double>::infinity();
    int decreasing = 0;
    for (int m = 1; m < 2'000'000; ++m) {
        const double term = 2.0 * (1.0 + lebesgue_scale * std::pow(1.0 + m, lebesgue_power)) /
                            (sigma - 1.0) * std::pow(sigma * q, -m);
        best = std::max(best, term);
        decreasing = term < prev ? decreasing + 1 : 0;
        prev = term;
        if (m >= m_max && decreasing >= 50)
            return best;
    }
    throw std::logic_error("interpolation_constant: scan did not stabilize");
}

double cauchy_derivative_constant(double rho0) {
    if (!(rho0 > 1.0))
        throw std::invalid_argument("cauchy_derivative_constant: requires rho0 > 1");
    return 4.0 * rho0 / ((rho0 - 1.0) * (rho0 - 1.0));
}

int min_stable_order(double c_in, double q1, double q2, std::optional<double> delta1) {
    if (!(q1 > 0.0 && q1 < 1.0 && q2 > 0.0 && q2 < 1.0))
        throw std::invalid_argument("min_stable_order: requires q1, q2 in (0, 1)");
    if (c_in < 0.0)
        throw std::invalid_argument("min_stable_order: requires c_in >= 0");
    const double div = delta1 ? *delta1 : 1.0;
    if (!(div > 0.0 && div <= 1.0))
        throw std::invalid_argument("min_stable_order: requires delta1 in (0, 1]");
    for (int alpha = 1; alpha < 1'000'000; ++alpha) {
        const double lhs = std::pow(q2, alpha) / div * (1.0 + c_in * std::pow(q1, alpha));
        if (lhs <= 0.5)
            return alpha;
    }
    throw std::logic_error("min_stable_order: no admissible order found");
}

BoundParams BoundParams::from_geometry(double rho0, double delta0) {
    BoundParams bp;
    bp.rho0 = rho0;
    bp.sigma = nesting_factor(rho0, delta0);
    bp.q = 1.0 / std::sqrt(bp.sigma);
    bp.theta1 = 0.5;
    bp.theta2 = 0.5;
    bp.q1 = std::pow(bp.sigma, -bp.theta1 / 2.0);
    bp.q2 = std::pow(bp.sigma, -bp.theta2);
    bp.p = std::sqrt(bp.q);
    bp.lebesgue_scale = 1.0;
    bp.lebesgue_power = 1.0;
    bp.c_in = interpolation_constant(bp.sigma, bp.q, bp.lebesgue_scale, bp.lebesgue_power);
    bp.c_in_sf = interpolation_constant(std::pow(bp.sigma, bp.theta1), bp.q1,
                                        bp.lebesgue_scale, bp.lebesgue_power);
    bp.c_ca = cauchy_derivative_constant(rho0);
    bp.alpha0 = min_stable_order(bp.c_in_sf, bp.q1, bp.q2);
    bp.validate();
    return bp;
}

void BoundParams::validate() const {
    if (!(rho0 > 1.0))
        throw std::invalid_argument("BoundParams: requires rho0 > 1");
    if (!(sigma > 1.0))
        throw std::invalid_argument("BoundParams: requires sigma > 1");
    if (!(q > 1.0 / sigma && q <= 1.0))
        throw std::invalid_argument("BoundParams: requires q in (1/sigma, 1]");
    if (!(theta1 > 0.0 && theta1 < 1.0 && theta2 > 0.0 && theta2 < 1.0) ||
        std::abs(theta1 + theta2 - 1.0) > 1e-12)
        throw std::invalid_argument("BoundParams: requires theta1, theta2 in (0,1) with sum 1");
    if (!(q1 > std::pow(sigma, -theta1) && q1 < 1.0))
        throw std::invalid_argument("BoundParams: requires q1 in (sigma^-theta1, 1)");
    if (std::abs(q2 - std::pow(sigma, -theta2)) > 1e-12)
        throw std::invalid_argument("BoundParams: q2 must equal sigma^-theta2");
    if (!(p > q && p <= 1.0))
        throw std::invalid_argument("BoundParams: requires p in (q, 1]");
    if (!(lebesgue_scale > 0.0) || !(lebesgue_power > 0.0))
        throw std::invalid_argument("BoundParams: requires positive Lebesgue growth parameters");
    if (!(c_in > 0.0) || !(c_in_sf > 0.0))
        throw std::invalid_argument("BoundParams: interpolation constants must be positive");
    if (!(c_ca > 0.0))
        throw std::invalid_argument("BoundParams: requires c_ca > 0");
    if (alpha0 < 1)
        throw std::invalid_argument("BoundParams: requires alpha0 >= 1");
}

MeasuredBound single_step_error(const AnalyticFn& f, const Interval& interval, int m,
                                double rho, double tau, double sigma, double q, double c_in,
                                bool halved_rate, int n_measure, int n_norm) {
    if (!(rho >= 1.0))
        throw std::invalid_argument("single_step_error: requires rho >= 1");
    if (!(tau >= 1.0))
        throw std::invalid_argument("single_step_error: requires tau >= 1");
    if (!(sigma > 1.0))
        throw std::invalid_argument("single_step_error: requires sigma > 1");

    const Interpolant p = interpolate(f, interval, m);
    const double measured = disc_sup_norm(
        [&](Complex w) { return f(w) - p(w); }, BernsteinDisc(interval, rho), n_measure);

    const double enlargement = halved_rate ? std::sqrt(sigma) : sigma;
    const double f_norm =
        disc_sup_norm(f, BernsteinDisc(interval, enlargement * tau * rho), n_norm);
    const double exponent = halved_rate ? 0.5 * m : static_cast<double>(m);
    const double bound = c_in * std::pow(q, exponent) * std::pow(tau, -exponent) * f_norm;
    return {measured, bound};
}

IteratedInterpolant IteratedInterpolant::identity(AnalyticFn f) {
    IteratedInterpolant r;
    r.passthrough_ = std::move(f);
    return r;
}

IteratedInterpolant IteratedInterpolant::wrap(Interpolant p) {
    IteratedInterpolant r;
    r.poly_ = std::move(p);
    return r;
}

const Interpolant& IteratedInterpolant::interpolant() const {
    if (!poly_)
        throw std::logic_error("IteratedInterpolant: identity window has no polynomial");
    return *poly_;
}

Complex IteratedInterpolant::operator()(Complex w) const {
    return poly_ ? (*poly_)(w) : passthrough_(w);
}

IteratedInterpolant iterated_interpolate(const Chain& chain, const AnalyticFn& f, int i, int j) {
    check_window(i, j, chain.depth(), "iterated_interpolate");
    if (i == j)
        return IteratedInterpolant::identity(f);
    Interpolant p = interpolate(f, chain.level(i + 1), chain.order(i + 1));
    for (int l = i + 2; l <= j; ++l) {
        Interpolant next =
            interpolate([&p](Complex w) { return p(w); }, chain.level(l), chain.order(l));
        p = std::move(next);
    }
    return IteratedInterpolant::wrap(std::move(p));
}

double ErrorFirstBounds::accuracy() const {
    double s = 0.0;
    for (double t : accuracy_terms)
        s += t;
    return s;
}

double ErrorFirstBounds::largest_term() const {
    double best = 0.0;
    for (double t : accuracy_terms)
        best = std::max(best, t);
    return best;
}

ErrorFirstBounds error_first_bounds(const Chain& chain, const BoundParams& params, int i,
                                    int j, int r) {
    check_window(i, j, chain.depth(), "error_first_bounds");
    if (r < 0 || r > i)
        throw std::out_of_range("error_first_bounds: requires 0 <= r <= i");

    ErrorFirstBounds out;
    out.stability = 1.0;
    for (int l = i + 1; l <= j; ++l)
        out.stability *= 1.0 + params.c_in * std::pow(params.q, chain.order(l));

    out.accuracy_terms.reserve(static_cast<size_t>(j - i));
    for (int k = i + 1; k <= j; ++k) {
        double tail = 1.0;
        for (int l = k + 1; l <= j; ++l)
            tail *= 1.0 + params.c_in * std::pow(params.q, chain.order(l));
        const double exponent = static_cast<double>(chain.order(k)) * (k - r);
        out.accuracy_terms.push_back(tail * params.c_in * std::pow(params.q, exponent));
    }
    return out;
}

std::vector<int> variable_order_schedule(int alpha, int beta, int L) {
    if (alpha < 1 || beta < 1 || L < 1)
        throw std::invalid_argument("variable_order_schedule: requires alpha, beta, L >= 1");
    std::vector<int> orders(static_cast<size_t>(L));
    for (int l = 1; l <= L; ++l)
        orders[static_cast<size_t>(l) - 1] = alpha + beta * (L - l);
    return orders;
}

double variable_order_stability_bound(int alpha, int beta, double q, double c_in) {
    if (!(q > 0.0 && q < 1.0))
        throw std::invalid_argument("variable_order_stability_bound: requires q in (0, 1)");
    if (alpha < 1 || beta < 1)
        throw std::invalid_argument("variable_order_stability_bound: requires alpha, beta >= 1");
    return std::exp(c_in * std::pow(q, alpha) / (1.0 - std::pow(q, beta)));
}

double variable_order_error_bound(int alpha, int beta, int L, double q, double c_in,
                                  double c_st) {
    if (!(q < 1.0))
        throw std::invalid_argument("variable_order_error_bound: requires q < 1");
    if (!(q > 0.0))
        throw std::invalid_argument("variable_order_error_bound: requires q > 0");
    if (L <= 1)
        throw std::invalid_argument("variable_order_error_bound: requires L > 1");
    const int minab = std::min(alpha, beta);
    return 2.0 * c_st * c_in * std::pow(q, static_cast<double>(minab) * L) /
           (1.0 - std::pow(q, static_cast<double>(beta) * (L / 2)));
}

StabilityFirstBounds stability_first_bounds(const Chain& chain, const BoundParams& params,
                                            int i, int j) {
    check_window(i, j, chain.depth(), "stability_first_bounds");
    params.validate();

    StabilityFirstBounds out;
    out.stability = 1.0;
    for (int l = i + 1; l <= j; ++l)
        out.stability *= 1.0 + params.c_in_sf * std::pow(params.q1, chain.order(l));

    double sum = 0.0;
    for (int k = i + 1; k <= j; ++k) {
        double head = 1.0;
        for (int l = i + 1; l <= k - 1; ++l)
            head *= 1.0 + params.c_in_sf * std::pow(params.q1, chain.order(l));
        const double mk = chain.order(k);
        sum += std::pow(params.q2, mk * (k - i)) * std::pow(params.q1, mk) * head;
    }
    out.accuracy = params.c_in_sf * sum;
    return out;
}

MeasuredBound derivative_error_experiment(const Chain& chain, const BoundParams& params,
                                          const AnalyticFn& f, const AnalyticFn& f_prime,
                                          int i, int j, int grid_n, int n_norm) {
    check_window(i, j, chain.depth(), "derivative_error_experiment");
    if (!(chain.delta1() > 0.0))
        throw std::invalid_argument(
            "derivative_error_experiment: requires a slow-shrinking chain (delta1 > 0)");
    const int alpha = chain.min_order();
    const int alpha0 = min_stable_order(params.c_in_sf, params.q1, params.q2, chain.delta1());
    if (alpha < alpha0)
        throw std::invalid_argument(
            "derivative_error_experiment: minimal order below the stable threshold");

    const double f_norm =
        disc_sup_norm(f, BernsteinDisc(chain.level(i), params.rho0), n_norm);
    const double bound = 2.0 * params.c_ca * params.c_in_sf / chain.level(i).length() *
                         std::pow(params.q1, alpha) * f_norm;
    if (i == j)
        return {0.0, bound};

    const IteratedInterpolant it = iterated_interpolate(chain, f, i, j);
    const Interpolant dp = it.interpolant().derivative();
    const Interval& target = chain.level(j);
    double measured = 0.0;
    for (int k = 0; k <= grid_n; ++k) {
        const double x = target.a() + target.length() * k / grid_n;
        const double err = std::abs(f_prime(Complex(x, 0.0)) - dp(Complex(x, 0.0)));
        measured = std::max(measured, err);
    }
    return {measured, bound};
}

} // namespace nestpol
