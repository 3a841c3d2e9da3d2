#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "nestpol/chain.hpp"

using namespace nestpol;

namespace {

const AnalyticFn pole3 = [](Complex w) { return 1.0 / (w - 3.0); };
const AnalyticFn pole3_prime = [](Complex w) { return -1.0 / ((w - 3.0) * (w - 3.0)); };

std::vector<int> constant_orders(int L, int m) {
    return std::vector<int>(static_cast<size_t>(L), m);
}

// Brute-force scan oracle for the interpolation constant.
double scan_constant(double sigma, double q, int m_limit) {
    double best = 0.0;
    for (int m = 1; m <= m_limit; ++m)
        best = std::max(best, 2.0 * (2.0 + m) / (sigma - 1.0) * std::pow(sigma * q, -m));
    return best;
}

} // namespace

TEST_CASE("chain construction validates nesting and shrinking") {
    const std::vector<int> orders{3, 3};
    CHECK_NOTHROW(Chain({Interval(0, 4), Interval(0, 2), Interval(1, 2)}, orders, 0.5));
    // Not nested.
    CHECK_THROWS_AS(Chain({Interval(0, 4), Interval(-1, 1), Interval(0, 1)}, orders, 0.5),
                    std::invalid_argument);
    // Shrinks too slowly for delta0 = 0.5.
    CHECK_THROWS_AS(Chain({Interval(0, 4), Interval(0, 3), Interval(0, 1)}, orders, 0.5),
                    std::invalid_argument);
    // Violates the slow-shrinking lower bound.
    CHECK_THROWS_AS(
        Chain({Interval(0, 4), Interval(0, 2), Interval(0, 0.5)}, orders, 0.5, 0.5),
        std::invalid_argument);
    // Order count mismatch.
    CHECK_THROWS_AS(Chain({Interval(0, 4), Interval(0, 2)}, orders, 0.5),
                    std::invalid_argument);
}

TEST_CASE("dyadic chains") {
    const Interval root(-1.0, 1.0);
    const auto orders = constant_orders(3, 4);

    const Chain left = dyadic_chain(root, orders, Anchor::left);
    CHECK(left.depth() == 3);
    CHECK(left.level(3).a() == doctest::Approx(-1.0));
    CHECK(left.level(3).length() == doctest::Approx(0.25));

    const Chain center = dyadic_chain(root, orders, Anchor::center);
    CHECK(center.level(3).center() == doctest::Approx(0.0));

    const Chain right = dyadic_chain(root, orders, Anchor::right);
    CHECK(right.level(3).b() == doctest::Approx(1.0));

    std::mt19937 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const Chain random = random_dyadic_chain(root, orders, rng);
        CHECK(random.delta0() == doctest::Approx(0.5));
        CHECK(random.delta1() == doctest::Approx(0.5));
        for (int l = 1; l <= 3; ++l)
            CHECK(random.level(l).length() ==
                  doctest::Approx(0.5 * random.level(l - 1).length()));
    }
}

TEST_CASE("interpolation constant") {
    CHECK(interpolation_constant(2.0, 1.0, 1.0, 1.0) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(interpolation_constant(4.0, 1.0, 1.0, 1.0) ==
          doctest::Approx(scan_constant(4.0, 1.0, 400)).epsilon(1e-14));
    CHECK(interpolation_constant(1.3090169943749475, 0.87403204889764219, 1.0, 1.0) ==
          doctest::Approx(scan_constant(1.3090169943749475, 0.87403204889764219, 4000))
              .epsilon(1e-12));

    // Diverges as sigma*q drops toward 1.
    double prev = 0.0;
    for (double q : {0.6, 0.55, 0.51}) {
        const double c = interpolation_constant(2.0, q, 1.0, 1.0);
        CHECK(c > prev);
        prev = c;
    }
    CHECK_THROWS_AS(interpolation_constant(2.0, 0.5, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("cauchy derivative constant") {
    CHECK(cauchy_derivative_constant(2.0) == doctest::Approx(8.0));
    CHECK(cauchy_derivative_constant(3.0) == doctest::Approx(3.0));
    CHECK_THROWS_AS(cauchy_derivative_constant(1.0), std::invalid_argument);

    // Finite differences of the pole function against the disc bound.
    const Interval iv(-1.0, 1.0);
    const double rho0 = 2.0;
    const double c_ca = cauchy_derivative_constant(rho0);
    const double rhs =
        c_ca / iv.length() * disc_sup_norm(pole3, BernsteinDisc(iv, rho0), 8192);
    const double h = 1e-6;
    for (int k = 0; k <= 100; ++k) {
        const double x = -0.999 + 1.998 * k / 100.0;
        const double deriv =
            std::abs(pole3(Complex(x + h, 0.0)) - pole3(Complex(x - h, 0.0))) / (2.0 * h);
        CHECK(deriv <= rhs * (1.0 + 1e-6));
    }
}

TEST_CASE("minimal stable order") {
    CHECK(min_stable_order(0.0, 0.5, 0.5) == 1);
    CHECK(min_stable_order(1.0, 0.5, 0.5) == 2);
    CHECK(min_stable_order(1.0, 0.5, 0.5, 0.5) >= min_stable_order(1.0, 0.5, 0.5));
    CHECK_THROWS_AS(min_stable_order(1.0, 1.5, 0.5), std::invalid_argument);
}

TEST_CASE("bound parameter derivation") {
    const BoundParams bp = BoundParams::from_geometry(2.0, 0.5);
    CHECK(bp.sigma == doctest::Approx(nesting_factor(2.0, 0.5)));
    CHECK(bp.q == doctest::Approx(1.0 / std::sqrt(bp.sigma)));
    CHECK(bp.q2 == doctest::Approx(std::pow(bp.sigma, -0.5)));
    CHECK(bp.p == doctest::Approx(std::sqrt(bp.q)));
    CHECK(bp.alpha0 >= 1);
    CHECK_NOTHROW(bp.validate());

    BoundParams bad = bp;
    bad.q2 = 0.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = bp;
    bad.q = 1.0 / bp.sigma;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("single step error") {
    const Interval iv(-1.0, 1.0);
    const BoundParams bp = BoundParams::from_geometry(1.1, 0.5);

    const auto zero = single_step_error([](Complex) { return Complex(1.0); }, iv, 4, 1.1, 1.0,
                                        bp.sigma, bp.q, bp.c_in);
    CHECK(zero.measured <= 1e-14);

    for (int m = 5; m <= 20; ++m) {
        const auto r = single_step_error(pole3, iv, m, 1.1, 1.0, bp.sigma, bp.q, bp.c_in);
        CHECK(r.measured <= r.bound);
    }

    const auto tau1 = single_step_error(pole3, iv, 10, 1.1, 1.0, bp.sigma, bp.q, bp.c_in);
    const auto tau2 = single_step_error(pole3, iv, 10, 1.1, 2.0, bp.sigma, bp.q, bp.c_in);
    const double f1 = disc_sup_norm(pole3, BernsteinDisc(iv, bp.sigma * 1.1), 8192);
    const double f2 = disc_sup_norm(pole3, BernsteinDisc(iv, bp.sigma * 2.0 * 1.1), 8192);
    CHECK(tau2.bound / tau1.bound ==
          doctest::Approx(std::pow(2.0, -10) * f2 / f1).epsilon(1e-12));

    // Weakened-shrinking mode halves the exponent.
    const double c_half = interpolation_constant(std::sqrt(bp.sigma), std::sqrt(bp.q), 1.0, 1.0);
    const auto halved =
        single_step_error(pole3, iv, 10, 1.1, 1.0, bp.sigma, bp.q, c_half, true);
    CHECK(halved.measured <= halved.bound);
}

TEST_CASE("iterated interpolation basics") {
    const Chain chain = dyadic_chain(Interval(-1.0, 1.0), {4, 3, 2}, Anchor::center);

    const IteratedInterpolant id = iterated_interpolate(chain, pole3, 1, 1);
    CHECK(id.is_identity());
    CHECK(std::abs(id(Complex(0.5, 0.0)) - pole3(Complex(0.5, 0.0))) == 0.0);
    CHECK_THROWS_AS(id.interpolant(), std::logic_error);

    // Low-degree polynomials pass through every stage exactly.
    const AnalyticFn quad = [](Complex w) { return w * w - 0.5 * w + 2.0; };
    const IteratedInterpolant p = iterated_interpolate(chain, quad, 0, 3);
    const Interval& bottom = chain.level(3);
    for (int k = 0; k <= 100; ++k) {
        const Complex x(bottom.a() + bottom.length() * k / 100.0, 0.0);
        CHECK(std::abs(p(x) - quad(x)) <= 1e-10);
    }

    CHECK_THROWS_AS(iterated_interpolate(chain, pole3, 2, 1), std::out_of_range);
    CHECK_THROWS_AS(iterated_interpolate(chain, pole3, 0, 4), std::out_of_range);
}

TEST_CASE("iterated interpolation composes level by level") {
    const Chain chain = dyadic_chain(Interval(-1.0, 1.0), {5, 4, 3}, Anchor::left);

    const IteratedInterpolant full = iterated_interpolate(chain, pole3, 0, 3);
    const IteratedInterpolant partial = iterated_interpolate(chain, pole3, 0, 2);
    const Interpolant last =
        interpolate([&](Complex w) { return partial(w); }, chain.level(3), chain.order(3));

    const Interval& bottom = chain.level(3);
    for (int k = 0; k <= 100; ++k) {
        const Complex x(bottom.a() + bottom.length() * k / 100.0, 0.0);
        CHECK(std::abs(full(x) - last(x)) <= 1e-13);
    }
}

TEST_CASE("composition is associative") {
    const Chain chain = dyadic_chain(Interval(0.0, 2.0), {6, 5, 4, 3}, Anchor::center);
    const AnalyticFn f = pole3;
    for (int i = 0; i <= 4; ++i)
        for (int k = i; k <= 4; ++k)
            for (int j = k; j <= 4; ++j) {
                const IteratedInterpolant direct = iterated_interpolate(chain, f, i, j);
                const IteratedInterpolant inner = iterated_interpolate(chain, f, i, k);
                const IteratedInterpolant outer = iterated_interpolate(
                    chain, [&](Complex w) { return inner(w); }, k, j);
                const Interval& bottom = chain.level(j);
                for (int g = 0; g <= 500; g += 10) {
                    const Complex x(bottom.a() + bottom.length() * g / 500.0, 0.0);
                    CHECK(std::abs(direct(x) - outer(x)) <=
                          1e-10 * (1.0 + std::abs(direct(x))));
                }
            }
}

TEST_CASE("telescoping identities") {
    const Chain chain = dyadic_chain(Interval(-1.0, 1.0), {6, 5, 4, 3}, Anchor::center);
    const AnalyticFn f = pole3;
    const int i = 0, j = 4;
    const Interval& bottom = chain.level(j);
    const double f_scale = grid_sup_norm(f, bottom, 200);

    const IteratedInterpolant whole = iterated_interpolate(chain, f, i, j);

    for (int k = 0; k <= 200; ++k) {
        const Complex x(bottom.a() + bottom.length() * k / 200.0, 0.0);

        // Approximation-first form: sum of downstream-interpolated
        // single-level residuals.
        Complex sum_ef(0.0);
        for (int l = i + 1; l <= j; ++l) {
            const Interpolant pl = interpolate(f, chain.level(l), chain.order(l));
            const AnalyticFn residual = [&](Complex w) { return f(w) - pl(w); };
            sum_ef += iterated_interpolate(chain, residual, l, j)(x);
        }
        CHECK(std::abs((f(x) - whole(x)) - sum_ef) <= 1e-9 * (1.0 + f_scale));

        // Stability-first form: successive differences of partial chains.
        Complex sum_sf(0.0);
        for (int l = i + 1; l <= j; ++l) {
            const IteratedInterpolant head = iterated_interpolate(chain, f, i, l - 1);
            const Interpolant step = interpolate([&](Complex w) { return head(w); },
                                                 chain.level(l), chain.order(l));
            sum_sf += head(x) - step(x);
        }
        CHECK(std::abs((f(x) - whole(x)) - sum_sf) <= 1e-9 * (1.0 + f_scale));
    }
}

TEST_CASE("error first bounds") {
    const Chain chain = dyadic_chain(Interval(-1.0, 1.0), constant_orders(4, 6), Anchor::center);
    const BoundParams bp = BoundParams::from_geometry(2.0, 0.5);

    const ErrorFirstBounds empty = error_first_bounds(chain, bp, 2, 2, 1);
    CHECK(empty.stability == doctest::Approx(1.0));
    CHECK(empty.accuracy() == doctest::Approx(0.0));
    CHECK(empty.accuracy_terms.empty());

    // Terms decay like q^{m k} for constant orders, r = 0.
    const ErrorFirstBounds eb = error_first_bounds(chain, bp, 0, 4, 0);
    REQUIRE(eb.accuracy_terms.size() == 4);
    for (size_t k = 1; k < 4; ++k)
        CHECK(eb.accuracy_terms[k] < eb.accuracy_terms[k - 1]);
    CHECK(eb.largest_term() == doctest::Approx(eb.accuracy_terms[0]));

    CHECK_THROWS_AS(error_first_bounds(chain, bp, 2, 1, 0), std::out_of_range);
    CHECK_THROWS_AS(error_first_bounds(chain, bp, 2, 3, 3), std::out_of_range);
}

TEST_CASE("approximation-first stability and accuracy hold on random chains") {
    std::mt19937 rng(23);
    const BoundParams bp = BoundParams::from_geometry(4.0, 0.5);
    const AnalyticFn fns[] = {
        pole3,
        [](Complex w) { return 1.0 / (w - Complex(2.0, 1.0)); },
        [](Complex w) { return 1.0 / (w - Complex(0.0, 3.0)); },
    };
    for (int trial = 0; trial < 10; ++trial) {
        const Chain chain =
            random_dyadic_chain(Interval(-1.0, 1.0), constant_orders(4, 7), rng);
        for (const AnalyticFn& f : fns) {
            const double f0 =
                disc_sup_norm(f, BernsteinDisc(chain.level(0), bp.rho0), 8192);
            const IteratedInterpolant itp = iterated_interpolate(chain, f, 0, 4);
            const ErrorFirstBounds eb = error_first_bounds(chain, bp, 0, 4, 0);
            const BernsteinDisc bottom(chain.level(4), bp.rho0);
            const double stab = disc_sup_norm([&](Complex w) { return itp(w); }, bottom, 1024);
            const double err =
                disc_sup_norm([&](Complex w) { return f(w) - itp(w); }, bottom, 1024);
            CHECK(stab <= eb.stability * f0);
            CHECK(err <= eb.accuracy() * f0);
        }
    }
}

TEST_CASE("variable order schedule") {
    CHECK(variable_order_schedule(2, 1, 4) == std::vector<int>{5, 4, 3, 2});
    CHECK(variable_order_schedule(3, 2, 1) == std::vector<int>{3});
    CHECK_THROWS_AS(variable_order_schedule(0, 1, 4), std::invalid_argument);

    // Window products stay below the uniform stability constant.
    const BoundParams bp = BoundParams::from_geometry(2.0, 0.5);
    const int L = 8, alpha = 2, beta = 1;
    const Chain chain = dyadic_chain(Interval(-1.0, 1.0),
                                     variable_order_schedule(alpha, beta, L), Anchor::center);
    const double c_st = variable_order_stability_bound(alpha, beta, bp.q, bp.c_in);
    for (int i = 0; i <= L; ++i)
        for (int j = i; j <= L; ++j)
            CHECK(error_first_bounds(chain, bp, i, j, i).stability <= c_st * (1.0 + 1e-12));
}

TEST_CASE("variable order error bound formula") {
    CHECK(variable_order_error_bound(2, 2, 4, 0.5, 1.0, 1.0) ==
          doctest::Approx(0.008333333333333333).epsilon(1e-14));
    CHECK_THROWS_AS(variable_order_error_bound(2, 2, 4, 1.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(variable_order_error_bound(2, 2, 1, 0.5, 1.0, 1.0), std::invalid_argument);

    // Doubling L multiplies the decay factor by q^{min(alpha,beta) L}.
    const double q = 0.7;
    const double b4 = variable_order_error_bound(2, 2, 4, q, 1.0, 1.0);
    const double b8 = variable_order_error_bound(2, 2, 8, q, 1.0, 1.0);
    const double factor4 = (1.0 - std::pow(q, 2.0 * 4)) / (1.0 - std::pow(q, 2.0 * 2));
    CHECK(b8 / b4 == doctest::Approx(std::pow(q, 2.0 * 4) / factor4).epsilon(1e-12));
}

TEST_CASE("variable order chains decay exponentially in depth") {
    const BoundParams bp = BoundParams::from_geometry(4.0, 0.5);
    const int alpha = 2, beta = 1;
    std::vector<double> errs;
    for (int L = 2; L <= 6; ++L) {
        const Chain chain = dyadic_chain(
            Interval(-1.0, 1.0), variable_order_schedule(alpha, beta, L), Anchor::center);
        const double f0 = disc_sup_norm(pole3, BernsteinDisc(chain.level(0), bp.rho0), 8192);
        const IteratedInterpolant itp = iterated_interpolate(chain, pole3, 0, L);
        const double err = disc_sup_norm([&](Complex w) { return pole3(w) - itp(w); },
                                         BernsteinDisc(chain.level(L), bp.rho0), 1024) /
                           f0;
        const double c_st = variable_order_stability_bound(alpha, beta, bp.q, bp.c_in);
        CHECK(err <= variable_order_error_bound(alpha, beta, L, bp.q, bp.c_in, c_st));
        errs.push_back(err);
    }
    // Slope of log err vs L at least 80% of the predicted rate.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t k = 0; k < errs.size(); ++k) {
        const double x = 2.0 + static_cast<double>(k);
        const double y = std::log(errs[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(errs.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope <= 0.8 * std::log(bp.q) * std::min(alpha, beta));
}

TEST_CASE("stability first bounds") {
    const BoundParams bp = BoundParams::from_geometry(4.0, 0.5);
    const int alpha = bp.alpha0;
    const Chain chain =
        dyadic_chain(Interval(-1.0, 1.0), constant_orders(8, alpha), Anchor::center);

    const StabilityFirstBounds empty = stability_first_bounds(chain, bp, 3, 3);
    CHECK(empty.stability == doctest::Approx(1.0));
    CHECK(empty.accuracy == doctest::Approx(0.0));

    for (int i = 0; i <= 8; ++i)
        for (int j = i + 1; j <= 8; ++j) {
            const StabilityFirstBounds sfb = stability_first_bounds(chain, bp, i, j);
            const double two_terms = 2.0 * bp.c_in_sf * std::pow(bp.q1, alpha) *
                                     std::pow(bp.q2, alpha);
            CHECK(sfb.accuracy <= two_terms * (1.0 + 1e-12));
            const double first_term =
                bp.c_in_sf * std::pow(bp.q2, alpha) * std::pow(bp.q1, alpha);
            CHECK(sfb.accuracy <= 2.0 * first_term * (1.0 + 1e-12));
        }
}

TEST_CASE("stability-first measurements respect the bounds") {
    const BoundParams bp = BoundParams::from_geometry(4.0, 0.5);
    const int alpha = bp.alpha0;
    const Chain chain =
        dyadic_chain(Interval(-1.0, 1.0), constant_orders(5, alpha), Anchor::left);
    const AnalyticFn f = pole3;

    std::vector<double> level_norm(6);
    for (int l = 0; l <= 5; ++l)
        level_norm[static_cast<size_t>(l)] =
            disc_sup_norm(f, BernsteinDisc(chain.level(l), bp.rho0), 8192);

    for (int i = 0; i <= 5; ++i)
        for (int j = i; j <= 5; ++j) {
            const IteratedInterpolant itp = iterated_interpolate(chain, f, i, j);
            const StabilityFirstBounds sfb = stability_first_bounds(chain, bp, i, j);
            const double inflated = std::pow(bp.sigma, bp.theta2 * (j - i)) * bp.rho0;
            const double stab =
                disc_sup_norm([&](Complex w) { return itp(w); },
                              BernsteinDisc(chain.level(j), inflated), 1024) /
                level_norm[static_cast<size_t>(i)];
            const double err =
                disc_sup_norm([&](Complex w) { return f(w) - itp(w); },
                              BernsteinDisc(chain.level(j), bp.rho0), 1024) /
                level_norm[static_cast<size_t>(i)];
            CHECK(stab <= sfb.stability * (1.0 + 1e-12));
            CHECK(err <= sfb.accuracy * (1.0 + 1e-12));

            // Constant-order window stability from the two bound pieces.
            const double c_ap = 2.0 * bp.c_in_sf;
            const double c_st =
                1.0 + c_ap * std::pow(bp.q1, alpha) * std::pow(bp.q2, alpha);
            const double plain_stab =
                disc_sup_norm([&](Complex w) { return itp(w); },
                              BernsteinDisc(chain.level(j), bp.rho0), 1024) /
                level_norm[static_cast<size_t>(i)];
            CHECK(plain_stab <= c_st * (1.0 + 1e-12));
        }
}

TEST_CASE("derivative error experiment") {
    const BoundParams bp = BoundParams::from_geometry(4.0, 0.5);
    const int alpha0_strict = min_stable_order(bp.c_in_sf, bp.q1, bp.q2, 0.5);

    const Chain chain = dyadic_chain(Interval(-1.0, 1.0),
                                     constant_orders(4, alpha0_strict), Anchor::center);

    // Low-degree polynomials are reproduced exactly.
    const AnalyticFn cube = [](Complex w) { return w * w * w; };
    const AnalyticFn cube_prime = [](Complex w) { return 3.0 * w * w; };
    const auto exact = derivative_error_experiment(chain, bp, cube, cube_prime, 0, 4);
    CHECK(exact.measured <= 1e-9);

    for (int i = 0; i <= 4; ++i)
        for (int j = i; j <= 4; ++j) {
            const auto r = derivative_error_experiment(chain, bp, pole3, pole3_prime, i, j);
            CHECK(r.measured <= r.bound);
            // Bound formula scales like 1/level-length.
            const double f_norm =
                disc_sup_norm(pole3, BernsteinDisc(chain.level(i), bp.rho0), 8192);
            CHECK(r.bound * chain.level(i).length() / f_norm ==
                  doctest::Approx(2.0 * bp.c_ca * bp.c_in_sf *
                                  std::pow(bp.q1, alpha0_strict))
                      .epsilon(1e-12));
        }

    // Orders below the strict threshold are refused.
    const Chain low = dyadic_chain(Interval(-1.0, 1.0),
                                   constant_orders(4, alpha0_strict - 1), Anchor::center);
    CHECK_THROWS_AS(derivative_error_experiment(low, bp, pole3, pole3_prime, 0, 4),
                    std::invalid_argument);

    // Chains without a slow-shrinking guarantee are refused.
    const Chain no_delta1 =
        Chain({Interval(-1, 1), Interval(-0.5, 0.5)}, {alpha0_strict}, 0.5, 0.0);
    CHECK_THROWS_AS(derivative_error_experiment(no_delta1, bp, pole3, pole3_prime, 0, 1),
                    std::invalid_argument);
}
