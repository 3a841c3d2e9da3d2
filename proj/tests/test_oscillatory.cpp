#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "nestpol/oscillatory.hpp"

using namespace nestpol;

namespace {

bool close(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

const AnalyticFn pole3 = [](Complex w) { return 1.0 / (w - 3.0); };

// Helmholtz slice with the singularity to the right of the interval.
AnalyticFn helmholtz_slice(double kappa, double y0) {
    return [kappa, y0](Complex w) {
        const Complex d = y0 - w;
        return std::exp(Complex(0.0, kappa) * d) / d;
    };
}

DirectionalChain constant_direction_chain(int L, int order, double c, double omega) {
    const Chain base = dyadic_chain(Interval(-1.0, 1.0),
                                    std::vector<int>(static_cast<size_t>(L), order),
                                    Anchor::left);
    return DirectionalChain(base, std::vector<double>(static_cast<size_t>(L) + 1, c), omega);
}

} // namespace

TEST_CASE("modulation operators") {
    const AnalyticFn f = pole3;
    const AnalyticFn same = modulate(0.0, f);
    const AnalyticFn both = modulate(-2.5, modulate(2.5, f));

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int k = 0; k < 100; ++k) {
        const Complex w(uni(rng), 0.5 * uni(rng));
        CHECK(close(same(w), f(w), 1e-12));
        CHECK(close(both(w), f(w), 1e-12 * (1.0 + std::abs(f(w)))));
    }

    // E-algebra: compositions add directions.
    const AnalyticFn ab = modulate(1.25, modulate(-0.5, f));
    const AnalyticFn sum = modulate(0.75, f);
    for (int k = 0; k < 100; ++k) {
        const Complex w(uni(rng), 0.3 * uni(rng));
        CHECK(close(ab(w), sum(w), 1e-12 * (1.0 + std::abs(sum(w)))));
    }

    // Real-axis isometry.
    const AnalyticFn mod = modulate(7.0, f);
    for (int k = 0; k <= 200; ++k) {
        const double x = -1.0 + 2.0 * k / 200.0;
        CHECK(std::abs(mod(Complex(x, 0.0))) ==
              doctest::Approx(std::abs(f(Complex(x, 0.0)))).epsilon(1e-13));
    }
}

TEST_CASE("oscillatory interpolation") {
    const Interval iv(-1.0, 1.0);
    const double kappa = 40.0;

    // A pure plane wave demodulates to the constant 1.
    const AnalyticFn wave = [kappa](Complex w) { return std::exp(Complex(0.0, kappa) * w); };
    const ModulatedInterpolant exact = oscillatory_interpolate(wave, iv, 0, kappa);
    for (int k = 0; k <= 100; ++k) {
        const Complex x(-1.0 + 2.0 * k / 100.0, 0.0);
        CHECK(close(exact(x), wave(x), 1e-12));
    }

    // Zero direction coincides with plain interpolation.
    const ModulatedInterpolant plain_osc = oscillatory_interpolate(pole3, iv, 7, 0.0);
    const Interpolant plain = interpolate(pole3, iv, 7);
    for (int k = 0; k <= 100; ++k) {
        const Complex x(-1.0 + 2.0 * k / 100.0, 0.0);
        CHECK(close(plain_osc(x), plain(x), 1e-13));
    }

    // Modulated pole: the error equals the plain interpolation error of the
    // demodulated function.
    const AnalyticFn modpole = [kappa](Complex w) {
        return std::exp(Complex(0.0, kappa) * w) / (w - 3.0);
    };
    const ModulatedInterpolant osc = oscillatory_interpolate(modpole, iv, 10, kappa);
    const Interpolant depole = interpolate(pole3, iv, 10);
    for (int k = 0; k <= 200; ++k) {
        const Complex x(-1.0 + 2.0 * k / 200.0, 0.0);
        const double err_osc = std::abs(modpole(x) - osc(x));
        const double err_plain = std::abs(pole3(x) - depole(x));
        // Equal up to the rounding of the plane-wave products.
        CHECK(std::abs(err_osc - err_plain) <= 1e-13);
    }
}

TEST_CASE("oscillation constant") {
    CHECK(oscillation_constant(1.0, 0.5, 1.0) == doctest::Approx(1.0));
    CHECK(oscillation_constant(1.0, 0.5, 2.0) ==
          doctest::Approx(2.1170000166126748).epsilon(1e-12));
    CHECK(oscillation_constant(2.0, 0.5, 2.0) ==
          doctest::Approx(std::pow(oscillation_constant(1.0, 0.5, 2.0), 2)).epsilon(1e-12));
    CHECK_THROWS_AS(oscillation_constant(-1.0, 0.5, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(oscillation_constant(1.0, 1.0, 2.0), std::invalid_argument);
}

TEST_CASE("directional chain validation") {
    const Chain base = dyadic_chain(Interval(-1.0, 1.0), {4, 4, 4}, Anchor::left);
    // In budget: drift at most omega per level length.
    std::vector<double> fine{0.0, 1.0, 3.0, 7.0}; // |dc| * len = 1, 1, 1
    CHECK_NOTHROW(DirectionalChain(base, fine, 1.0));
    // Neighbour budget violated.
    std::vector<double> bad{0.0, 3.0, 3.0, 3.0};
    CHECK_THROWS_AS(DirectionalChain(base, bad, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(DirectionalChain(base, fine, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(DirectionalChain(base, {0.0, 0.0}, 1.0), std::invalid_argument);
}

TEST_CASE("long-range direction bound holds exhaustively") {
    const Chain base = dyadic_chain(Interval(-1.0, 1.0), {5, 5, 5, 5}, Anchor::left);
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    const double omega = 1.5;
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> dirs{0.0};
        for (int l = 1; l <= 4; ++l)
            dirs.push_back(dirs.back() + uni(rng) * omega / base.level(l).length());
        const DirectionalChain chain(base, dirs, omega);
        const double cap = omega / (1.0 - base.delta0());
        for (int i = 0; i <= 4; ++i)
            for (int j = i; j <= 4; ++j)
                CHECK(std::abs(chain.direction(j) - chain.direction(i)) *
                          base.level(j).length() <=
                      cap * (1.0 + 1e-12));
    }
}

TEST_CASE("boundary oscillation stays below the constant") {
    const double omega = 1.0;
    const Chain base = dyadic_chain(Interval(-1.0, 1.0), {4, 4, 4, 4}, Anchor::left);
    // Saturate the neighbour budget at every level.
    std::vector<double> dirs{0.0};
    for (int l = 1; l <= 4; ++l)
        dirs.push_back(dirs.back() + omega / base.level(l).length());
    const DirectionalChain chain(base, dirs, omega);

    CHECK(boundary_oscillation_max(chain, 1.5, 2, 2) == doctest::Approx(1.0));
    CHECK(boundary_oscillation_max(chain, 1.0, 0, 4) == doctest::Approx(1.0).epsilon(1e-9));

    for (double rho : {1.2, 1.7, 2.2})
        for (int i = 0; i <= 4; ++i)
            for (int j = i; j <= 4; ++j)
                CHECK(boundary_oscillation_max(chain, rho, i, j) <=
                      oscillation_constant(omega, base.delta0(), rho) * (1.0 + 1e-12));
}

TEST_CASE("imaginary extent of disc boundaries") {
    for (double rho : {1.0, 1.4, 2.5}) {
        const Interval iv(0.25, 1.75);
        const BernsteinDisc disc(iv, rho);
        const double cap = iv.length() * (rho - 1.0 / rho) / 4.0;
        for (const Complex& w : disc.boundary(512))
            CHECK(std::abs(w.imag()) <= cap * (1.0 + 1e-9) + 1e-15);
    }
}

TEST_CASE("oscillatory chains compose and degenerate correctly") {
    const int L = 3;
    const double kappa = 12.0;
    const Chain base = dyadic_chain(Interval(-1.0, 1.0), {6, 5, 4}, Anchor::left);

    // All directions zero reproduces the plain chain.
    const DirectionalChain zero(base, std::vector<double>(L + 1, 0.0), 2.0);
    const OscillatoryIterated plain_osc = oscillatory_chain_interpolate(zero, pole3, 0, L);
    const IteratedInterpolant plain = iterated_interpolate(base, pole3, 0, L);
    const Interval& bottom = base.level(L);
    for (int k = 0; k <= 100; ++k) {
        const Complex x(bottom.a() + bottom.length() * k / 100.0, 0.0);
        CHECK(close(plain_osc(x), plain(x), 1e-12));
    }

    // Identity window.
    const OscillatoryIterated id = oscillatory_chain_interpolate(zero, pole3, 2, 2);
    CHECK(id.is_identity());
    CHECK_THROWS_AS(id.interpolant(), std::logic_error);

    // Constant directions reproduce a modulated low-degree polynomial.
    const DirectionalChain waved(base, std::vector<double>(L + 1, kappa), 2.0);
    const AnalyticFn modquad = [kappa](Complex w) {
        return std::exp(Complex(0.0, kappa) * w) * (w * w - 0.25);
    };
    const OscillatoryIterated rec = oscillatory_chain_interpolate(waved, modquad, 0, L);
    for (int k = 0; k <= 100; ++k) {
        const Complex x(bottom.a() + bottom.length() * k / 100.0, 0.0);
        CHECK(close(rec(x), modquad(x), 1e-9));
    }

    // Step-by-step recomputation matches the recursive definition.
    const AnalyticFn modpole = helmholtz_slice(kappa, 3.0);
    std::vector<double> dirs{-kappa, -kappa + 0.5, -kappa + 1.5, -kappa + 3.0};
    const DirectionalChain drifting(base, dirs, 2.0);
    const OscillatoryIterated full = oscillatory_chain_interpolate(drifting, modpole, 0, L);
    AnalyticFn manual = modpole;
    for (int l = 1; l <= L; ++l) {
        const ModulatedInterpolant step =
            oscillatory_interpolate(manual, base.level(l), base.order(l), dirs[static_cast<size_t>(l)]);
        manual = [step](Complex w) { return step(w); };
    }
    for (int k = 0; k <= 100; ++k) {
        const Complex x(bottom.a() + bottom.length() * k / 100.0, 0.0);
        CHECK(close(full(x), manual(x), 1e-12));
    }
}

TEST_CASE("oscillatory bounds") {
    const BoundParams bp = BoundParams::from_geometry(1.35, 0.5);
    const DirectionalChain chain = constant_direction_chain(4, 8, -40.0, 2.0);
    const double c_os =
        oscillation_constant(chain.omega(), chain.base().delta0(), bp.sigma * bp.rho0);

    const OscillatoryBounds empty = oscillatory_bounds(chain, bp, c_os, 2, 2);
    CHECK(empty.stability == doctest::Approx(1.0));
    CHECK(empty.accuracy == doctest::Approx(0.0));

    // c_os = 1 collapses onto the plain product/sum with exponents m_k.
    const OscillatoryBounds collapsed = oscillatory_bounds(chain, bp, 1.0, 0, 4);
    double stab = 1.0, acc = 0.0;
    for (int k = 1; k <= 4; ++k) {
        double head = 1.0;
        for (int l = 1; l <= k - 1; ++l)
            head *= 1.0 + bp.c_in * std::pow(bp.q, chain.base().order(l));
        acc += head * bp.c_in * std::pow(bp.q, chain.base().order(k));
        stab *= 1.0 + bp.c_in * std::pow(bp.q, chain.base().order(k));
    }
    CHECK(collapsed.stability == doctest::Approx(stab).epsilon(1e-13));
    CHECK(collapsed.accuracy == doctest::Approx(acc).epsilon(1e-13));
}

TEST_CASE("smoothed error and stability measurements respect the bounds") {
    const double kappa = 40.0;
    const BoundParams bp = BoundParams::from_geometry(1.35, 0.5);
    const Chain base = dyadic_chain(Interval(-1.0, 1.0),
                                    std::vector<int>(4, 10), Anchor::left);
    const AnalyticFn f = helmholtz_slice(kappa, 3.0);

    std::mt19937 rng(31);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    const double omega = 2.0;
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> dirs{-kappa};
        for (int l = 1; l <= 4; ++l)
            dirs.push_back(dirs.back() + uni(rng) * omega / base.level(l).length());
        const DirectionalChain chain(base, dirs, omega);
        const double c_os = oscillation_constant(omega, base.delta0(), bp.sigma * bp.rho0);

        for (int i = 0; i <= 4; ++i) {
            const AnalyticFn smoothed_f = modulate(-chain.direction(i), f);
            const double den =
                disc_sup_norm(smoothed_f, BernsteinDisc(base.level(i), bp.rho0), 8192);
            for (int j = i; j <= 4; ++j) {
                const OscillatoryIterated itp = oscillatory_chain_interpolate(chain, f, i, j);
                const OscillatoryBounds ob = oscillatory_bounds(chain, bp, c_os, i, j);
                const BernsteinDisc disc(base.level(j), bp.rho0);
                const double err =
                    disc_sup_norm(modulate(-chain.direction(i),
                                           [&](Complex w) { return f(w) - itp(w); }),
                                  disc, 1024) /
                    den;
                const double stab =
                    disc_sup_norm(modulate(-chain.direction(i),
                                           [&](Complex w) { return itp(w); }),
                                  disc, 1024) /
                    den;
                CHECK(err <= ob.accuracy * (1.0 + 1e-12));
                CHECK(stab <= ob.stability * (1.0 + 1e-12));
            }
        }
    }
}

TEST_CASE("minimal oscillatory order") {
    CHECK(min_oscillatory_order(1, 0.5, 0.9) == 1);
    CHECK(min_oscillatory_order(16, 0.25, 0.5) == 4);
    CHECK_THROWS_AS(min_oscillatory_order(4, 0.5, 0.5), std::invalid_argument);
    for (int L : {2, 5, 16, 100}) {
        const double q = 0.8, p = 0.9;
        const int alpha = min_oscillatory_order(L, q, p);
        CHECK(L * std::pow(q / p, alpha) <= 1.0 + 1e-12);
        CHECK(L * std::pow(q, alpha) <= 1.0 + 1e-12);
    }
}

TEST_CASE("sup-norm stability for continuous functions") {
    const BoundParams bp = BoundParams::from_geometry(1.35, 0.5);
    const int L = 4;
    const int alpha0 = min_oscillatory_order(L, bp.q, bp.p);

    // Plain interpolation of the constant one.
    const DirectionalChain flat = constant_direction_chain(L, alpha0, 0.0, 2.0);
    const AnalyticFn one = [](Complex) { return Complex(1.0); };
    const MeasuredBound unit = oscillatory_sup_stability_check(flat, bp, one, 0, L);
    CHECK(unit.measured == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(unit.measured <= unit.bound);

    // Sign-oscillating continuous sawtooth.
    const AnalyticFn sawtooth = [](Complex w) {
        const double t = 8.0 * (w.real() + 1.0);
        return Complex(2.0 * std::abs(t - std::floor(t) - 0.5) - 0.5, 0.0);
    };
    const DirectionalChain waved = constant_direction_chain(L, alpha0, 5.0, 2.0);
    for (int i = 0; i < L; ++i)
        for (int j = i + 1; j <= L; ++j) {
            const MeasuredBound r = oscillatory_sup_stability_check(waved, bp, sawtooth, i, j);
            CHECK(r.measured <= r.bound);
        }

    // One-step windows reduce to single-level stability up to the constant.
    const MeasuredBound step = oscillatory_sup_stability_check(waved, bp, sawtooth, L - 1, L);
    const double f_sup = grid_sup_norm(sawtooth, waved.base().level(L - 1), 2000);
    CHECK(step.measured <= lebesgue_constant(alpha0) * f_sup * (1.0 + 1e-12));

    // Orders below the threshold are refused.
    const DirectionalChain low = constant_direction_chain(L, alpha0 - 1, 0.0, 2.0);
    CHECK_THROWS_AS(oscillatory_sup_stability_check(low, bp, sawtooth, 0, L),
                    std::invalid_argument);
}
