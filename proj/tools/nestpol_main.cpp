// Experiment runner: builds interpolation scenarios, computes the bound
// constants, runs measured-vs-bound comparisons, and emits diffable CSV.
//
// Exit codes: 0 success, 2 invalid configuration, 3 bound or assumption
// violation detected.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nestpol/bernstein.hpp"
#include "nestpol/chain.hpp"
#include "nestpol/chebyshev.hpp"
#include "nestpol/fastsum.hpp"
#include "nestpol/oscillatory.hpp"

namespace {

using namespace nestpol;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitViolation = 3;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt(int v) { return std::to_string(v); }
std::string fmt(std::uint64_t v) { return std::to_string(v); }

bool exceeds(double measured, double bound) {
    return measured > bound * (1.0 + 1e-12);
}

class CsvOut {
public:
    CsvOut(const std::string& path, unsigned seed, const std::string& cmd,
           const std::string& header) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_)
                throw std::invalid_argument("cannot open output path: " + path);
        }
        stream() << "# nestpol v1 seed=" << seed << " cmd=" << cmd << "\n" << header << "\n";
    }

    void row(const std::vector<std::string>& cells) {
        std::ostream& out = stream();
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i)
                out << ',';
            out << cells[i];
        }
        out << '\n';
    }

private:
    std::ostream& stream() { return file_ ? *file_ : std::cout; }
    std::unique_ptr<std::ofstream> file_;
};

// ---------------------------------------------------------------------------
// Test function registry

struct FunctionSpec {
    std::string id = "pole"; // one | pole | helmholtz
    double pole_re = 3.0;
    double pole_im = 0.0;
    double y0 = 3.0;
    double kappa = 40.0;
};

AnalyticFn helmholtz_slice(double kappa, double y0, const Interval& domain) {
    if (y0 >= domain.a() && y0 <= domain.b())
        throw std::invalid_argument("helmholtz function: y0 must lie outside the interval");
    const double s = y0 > domain.b() ? -1.0 : 1.0;
    return [kappa, y0, s](Complex w) {
        const Complex d = s * (w - y0);
        return std::exp(Complex(0.0, kappa) * d) / d;
    };
}

AnalyticFn make_function(const FunctionSpec& spec, const Interval& domain) {
    if (spec.id == "one")
        return [](Complex) { return Complex(1.0); };
    if (spec.id == "pole") {
        const Complex w0(spec.pole_re, spec.pole_im);
        return [w0](Complex w) { return 1.0 / (w - w0); };
    }
    if (spec.id == "helmholtz")
        return helmholtz_slice(spec.kappa, spec.y0, domain);
    throw std::invalid_argument("unknown function id: " + spec.id);
}

AnalyticFn make_function_derivative(const FunctionSpec& spec) {
    if (spec.id == "one")
        return [](Complex) { return Complex(0.0); };
    if (spec.id == "pole") {
        const Complex w0(spec.pole_re, spec.pole_im);
        return [w0](Complex w) { return -1.0 / ((w - w0) * (w - w0)); };
    }
    throw std::invalid_argument("derivative experiments support only the pole family");
}

// Demodulation direction that makes the helmholtz slice smooth; zero for
// non-oscillatory functions.
double base_direction(const FunctionSpec& spec, const Interval& domain) {
    if (spec.id != "helmholtz")
        return 0.0;
    return spec.y0 > domain.b() ? -spec.kappa : spec.kappa;
}

// ---------------------------------------------------------------------------
// Shared scenario pieces

struct ChainGeometry {
    double a = -1.0;
    double b = 1.0;
    int levels = 4;
    std::string anchor = "center"; // left | center | right | random
    unsigned seed = 42;
};

Chain build_chain(const ChainGeometry& geo, const std::vector<int>& orders) {
    if (geo.levels < 0)
        throw std::invalid_argument("chain geometry: requires L >= 0");
    const Interval root(geo.a, geo.b);
    if (geo.anchor == "random") {
        std::mt19937 rng(geo.seed);
        return random_dyadic_chain(root, orders, rng);
    }
    Anchor anchor = Anchor::center;
    if (geo.anchor == "left")
        anchor = Anchor::left;
    else if (geo.anchor == "right")
        anchor = Anchor::right;
    else if (geo.anchor != "center")
        throw std::invalid_argument("unknown anchor: " + geo.anchor);
    return dyadic_chain(root, orders, anchor);
}

// Least-squares slope of ln(err) vs level count, restricted to values
// above the floating-point floor.
std::optional<double> regression_slope(const std::vector<std::pair<int, double>>& data,
                                       double floor = 1e-13) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& [L, err] : data)
        if (err >= floor)
            pts.emplace_back(static_cast<double>(L), std::log(err));
    if (pts.size() < 3)
        return std::nullopt;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(pts.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---------------------------------------------------------------------------
// geom

struct GeomArgs {
    double rho0 = 2.0;
    double delta0 = 0.5;
    double omega = 2.0;
    unsigned seed = 42;
    std::string out;
};

int run_geom(const GeomArgs& args) {
    const BoundParams bp = BoundParams::from_geometry(args.rho0, args.delta0);
    const double c_os = oscillation_constant(args.omega, args.delta0, bp.sigma * bp.rho0);

    CsvOut csv(args.out, args.seed, "geom", "name,value,formula");
    csv.row({"sigma", fmt(bp.sigma), "radius_growth(rho0; delta0)"});
    csv.row({"q", fmt(bp.q), "sigma^(-1/2)"});
    csv.row({"q1", fmt(bp.q1), "sigma^(-theta1/2)"});
    csv.row({"q2", fmt(bp.q2), "sigma^(-theta2)"});
    csv.row({"p", fmt(bp.p), "sqrt(q)"});
    csv.row({"c_in", fmt(bp.c_in), "sup_m 2(1+Lambda_m)/(sigma-1) (sigma q)^-m"});
    csv.row({"c_in_sf", fmt(bp.c_in_sf),
             "sup_m 2(1+Lambda_m)/(sigma^theta1-1) (sigma^theta1 q1)^-m"});
    csv.row({"c_ca", fmt(bp.c_ca), "4 rho0/(rho0-1)^2"});
    csv.row({"c_os", fmt(c_os), "exp(omega/(1-delta0) (rho-1/rho)/4) at rho=sigma rho0"});
    csv.row({"alpha0", fmt(bp.alpha0), "min alpha with (1+c_in_sf q1^a) q2^a <= 1/2"});
    return kExitOk;
}

// ---------------------------------------------------------------------------
// converge

struct ConvergeArgs {
    FunctionSpec fn;
    double a = -1.0;
    double b = 1.0;
    double rho = 2.5;
    double rho_hat = 1.0;
    int m_min = 2;
    int m_max = 25;
    unsigned seed = 42;
    std::string out;
};

int run_converge(const ConvergeArgs& args) {
    if (!(args.rho_hat >= 1.0) || !(args.rho > args.rho_hat))
        throw std::invalid_argument("converge: requires 1 <= rho_hat < rho");
    if (args.m_min < 0 || args.m_max < args.m_min)
        throw std::invalid_argument("converge: bad order range");

    const Interval iv(args.a, args.b);
    const AnalyticFn f = make_function(args.fn, iv);
    const double f_norm = disc_sup_norm(f, BernsteinDisc(iv, args.rho), 8192);

    CsvOut csv(args.out, args.seed, "converge", "m,lebesgue,measured,bound");
    bool violated = false;
    for (int m = args.m_min; m <= args.m_max; ++m) {
        const Interpolant p = interpolate(f, iv, m);
        const double measured = disc_sup_norm([&](Complex w) { return f(w) - p(w); },
                                              BernsteinDisc(iv, args.rho_hat), 1024);
        const double leb = lebesgue_constant(m);
        const double bound = interpolation_error_bound(m, args.rho, args.rho_hat, f_norm, leb);
        csv.row({fmt(m), fmt(leb), fmt(measured), fmt(bound)});
        violated = violated || exceeds(measured, bound);
    }
    return violated ? kExitViolation : kExitOk;
}

// ---------------------------------------------------------------------------
// chain

struct ChainArgs {
    std::string mode = "error_first"; // error_first | stability_first | varorder | derivative
    FunctionSpec fn;
    ChainGeometry geo;
    int order = 8;
    int alpha = 0; // nonzero switches to the variable schedule
    int beta = 1;
    double rho0 = 2.0;
    double delta0 = 0.5;
    int r = -1; // error_first reference level; -1 means r = i
    std::string out;
};

int run_chain_window_modes(const ChainArgs& args, const BoundParams& bp) {
    std::vector<int> orders =
        args.alpha > 0 ? variable_order_schedule(args.alpha, args.beta, args.geo.levels)
                       : std::vector<int>(static_cast<size_t>(args.geo.levels), args.order);
    const Chain chain = build_chain(args.geo, orders);
    const AnalyticFn f = make_function(args.fn, chain.level(0));
    const int L = chain.depth();

    std::vector<double> level_norm(static_cast<size_t>(L) + 1);
    for (int l = 0; l <= L; ++l)
        level_norm[static_cast<size_t>(l)] =
            disc_sup_norm(f, BernsteinDisc(chain.level(l), bp.rho0), 8192);

    const bool stability_first = args.mode == "stability_first";
    const std::string header = stability_first
                                   ? "L,i,j,stab_measured,stab_bound,err_measured,err_bound"
                                   : "L,i,j,r,stab_measured,stab_bound,err_measured,err_bound";
    CsvOut csv(args.out, args.geo.seed, "chain", header);

    bool violated = false;
    for (int i = 0; i <= L; ++i) {
        for (int j = i; j <= L; ++j) {
            const IteratedInterpolant itp = iterated_interpolate(chain, f, i, j);
            const double err_raw =
                disc_sup_norm([&](Complex w) { return f(w) - itp(w); },
                              BernsteinDisc(chain.level(j), bp.rho0), 1024);
            if (stability_first) {
                const StabilityFirstBounds sfb = stability_first_bounds(chain, bp, i, j);
                const double inflated = std::pow(bp.sigma, bp.theta2 * (j - i)) * bp.rho0;
                const double stab_meas =
                    disc_sup_norm([&](Complex w) { return itp(w); },
                                  BernsteinDisc(chain.level(j), inflated), 1024) /
                    level_norm[static_cast<size_t>(i)];
                const double err_meas = err_raw / level_norm[static_cast<size_t>(i)];
                csv.row({fmt(L), fmt(i), fmt(j), fmt(stab_meas), fmt(sfb.stability),
                         fmt(err_meas), fmt(sfb.accuracy)});
                violated = violated || exceeds(stab_meas, sfb.stability) ||
                           exceeds(err_meas, sfb.accuracy);
            } else {
                const int r_eff = args.r < 0 ? i : std::min(args.r, i);
                const ErrorFirstBounds eb = error_first_bounds(chain, bp, i, j, r_eff);
                const double stab_meas =
                    disc_sup_norm([&](Complex w) { return itp(w); },
                                  BernsteinDisc(chain.level(j), bp.rho0), 1024) /
                    level_norm[static_cast<size_t>(i)];
                const double err_meas = err_raw / level_norm[static_cast<size_t>(r_eff)];
                csv.row({fmt(L), fmt(i), fmt(j), fmt(r_eff), fmt(stab_meas), fmt(eb.stability),
                         fmt(err_meas), fmt(eb.accuracy())});
                violated = violated || exceeds(stab_meas, eb.stability) ||
                           exceeds(err_meas, eb.accuracy());
            }
        }
    }
    return violated ? kExitViolation : kExitOk;
}

int run_chain_varorder(const ChainArgs& args, const BoundParams& bp) {
    const int alpha = args.alpha > 0 ? args.alpha : 2;
    const int beta = args.beta;
    if (args.geo.levels < 2)
        throw std::invalid_argument("varorder mode: requires at least two levels");

    const double c_st = variable_order_stability_bound(alpha, beta, bp.q, bp.c_in);
    const double slope_required =
        0.8 * std::log(bp.q) * static_cast<double>(std::min(alpha, beta));

    CsvOut csv(args.out, args.geo.seed, "chain",
               "L,alpha,beta,err_measured,err_bound,varorder_bound,slope_measured,slope_required");
    bool violated = false;
    std::vector<std::pair<int, double>> history;
    for (int L = 2; L <= args.geo.levels; ++L) {
        ChainGeometry geo = args.geo;
        geo.levels = L;
        const Chain chain = build_chain(geo, variable_order_schedule(alpha, beta, L));
        const AnalyticFn f = make_function(args.fn, chain.level(0));

        const double root_norm = disc_sup_norm(f, BernsteinDisc(chain.level(0), bp.rho0), 8192);
        const IteratedInterpolant itp = iterated_interpolate(chain, f, 0, L);
        const double err_meas = disc_sup_norm([&](Complex w) { return f(w) - itp(w); },
                                              BernsteinDisc(chain.level(L), bp.rho0), 1024) /
                                root_norm;
        const double err_bound = error_first_bounds(chain, bp, 0, L, 0).accuracy();
        const double vo_bound = variable_order_error_bound(alpha, beta, L, bp.q, bp.c_in, c_st);

        history.emplace_back(L, err_meas);
        const auto slope = regression_slope(history);
        csv.row({fmt(L), fmt(alpha), fmt(beta), fmt(err_meas), fmt(err_bound), fmt(vo_bound),
                 slope ? fmt(*slope) : "nan", fmt(slope_required)});
        violated = violated || exceeds(err_meas, err_bound) || exceeds(err_meas, vo_bound);
    }
    if (const auto slope = regression_slope(history); slope && *slope > slope_required)
        violated = true;
    return violated ? kExitViolation : kExitOk;
}

int run_chain_derivative(const ChainArgs& args, const BoundParams& bp) {
    const std::vector<int> orders(static_cast<size_t>(args.geo.levels), args.order);
    const Chain chain = build_chain(args.geo, orders);
    const int alpha0 = min_stable_order(bp.c_in_sf, bp.q1, bp.q2, chain.delta1());
    if (args.order < alpha0)
        return kExitViolation; // below the stable threshold, refuse to assert

    const AnalyticFn f = make_function(args.fn, chain.level(0));
    const AnalyticFn fp = make_function_derivative(args.fn);
    const int L = chain.depth();

    CsvOut csv(args.out, args.geo.seed, "chain", "L,i,j,alpha,err_measured,err_bound");
    bool violated = false;
    for (int i = 0; i <= L; ++i)
        for (int j = i; j <= L; ++j) {
            const MeasuredBound mb = derivative_error_experiment(chain, bp, f, fp, i, j);
            csv.row({fmt(L), fmt(i), fmt(j), fmt(args.order), fmt(mb.measured), fmt(mb.bound)});
            violated = violated || exceeds(mb.measured, mb.bound);
        }
    return violated ? kExitViolation : kExitOk;
}

int run_chain(const ChainArgs& args) {
    const BoundParams bp = BoundParams::from_geometry(args.rho0, args.delta0);
    if (args.mode == "varorder")
        return run_chain_varorder(args, bp);
    if (args.mode == "derivative")
        return run_chain_derivative(args, bp);
    if (args.mode == "error_first" || args.mode == "stability_first")
        return run_chain_window_modes(args, bp);
    throw std::invalid_argument("unknown chain mode: " + args.mode);
}

// ---------------------------------------------------------------------------
// osc

struct OscArgs {
    FunctionSpec fn{.id = "helmholtz"};
    ChainGeometry geo;
    int order = 10;
    double omega = 2.0;
    double rho0 = 1.35;
    double delta0 = 0.5;
    std::string directions = "constant"; // constant | budget | random
    std::string out;
};

std::vector<double> build_directions(const OscArgs& args, const Chain& chain, double c_base) {
    const int L = chain.depth();
    std::vector<double> dirs(static_cast<size_t>(L) + 1, c_base);
    if (args.directions == "constant")
        return dirs;
    if (args.directions == "budget") {
        // Walk from an unmodulated start toward the ideal direction as fast
        // as the per-level budget allows.
        dirs[0] = 0.0;
        for (int l = 1; l <= L; ++l) {
            const double cap = args.omega / chain.level(l).length();
            const double want = c_base - dirs[static_cast<size_t>(l) - 1];
            dirs[static_cast<size_t>(l)] =
                dirs[static_cast<size_t>(l) - 1] + std::clamp(want, -cap, cap);
        }
        return dirs;
    }
    if (args.directions == "random") {
        std::mt19937 rng(args.geo.seed);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        for (int l = 1; l <= L; ++l)
            dirs[static_cast<size_t>(l)] = dirs[static_cast<size_t>(l) - 1] +
                                           uni(rng) * args.omega / chain.level(l).length();
        return dirs;
    }
    throw std::invalid_argument("unknown direction schedule: " + args.directions);
}

int run_osc(const OscArgs& args) {
    const BoundParams bp = BoundParams::from_geometry(args.rho0, args.delta0);
    const std::vector<int> orders(static_cast<size_t>(args.geo.levels), args.order);
    const Chain chain = build_chain(args.geo, orders);
    const AnalyticFn f = make_function(args.fn, chain.level(0));
    const double c_base = base_direction(args.fn, chain.level(0));
    const DirectionalChain dchain(chain, build_directions(args, chain, c_base), args.omega);

    const double c_os = oscillation_constant(args.omega, args.delta0, bp.sigma * bp.rho0);
    const int L = dchain.depth();
    const int alpha0 = min_oscillatory_order(L, bp.q, bp.p);
    const bool sup_applicable = args.order >= alpha0;

    std::vector<double> smoothed_norm(static_cast<size_t>(L) + 1);
    for (int l = 0; l <= L; ++l) {
        const AnalyticFn smoothed = modulate(-dchain.direction(l), f);
        smoothed_norm[static_cast<size_t>(l)] =
            disc_sup_norm(smoothed, BernsteinDisc(chain.level(l), bp.rho0), 8192);
    }

    CsvOut csv(args.out, args.geo.seed, "osc",
               "L,i,j,err_measured,err_bound,stab_measured,stab_bound,sup_measured,sup_bound");
    bool violated = false;
    for (int i = 0; i <= L; ++i) {
        for (int j = i; j <= L; ++j) {
            const OscillatoryIterated itp = oscillatory_chain_interpolate(dchain, f, i, j);
            const OscillatoryBounds ob = oscillatory_bounds(dchain, bp, c_os, i, j);
            const double ci = dchain.direction(i);
            const AnalyticFn err_s = modulate(-ci, [&](Complex w) { return f(w) - itp(w); });
            const AnalyticFn itp_s = modulate(-ci, [&](Complex w) { return itp(w); });
            const BernsteinDisc disc(chain.level(j), bp.rho0);
            const double err_meas =
                disc_sup_norm(err_s, disc, 1024) / smoothed_norm[static_cast<size_t>(i)];
            const double stab_meas =
                disc_sup_norm(itp_s, disc, 1024) / smoothed_norm[static_cast<size_t>(i)];

            std::string sup_m = "nan";
            std::string sup_b = "nan";
            if (i < j && sup_applicable) {
                const MeasuredBound sup = oscillatory_sup_stability_check(dchain, bp, f, i, j);
                sup_m = fmt(sup.measured);
                sup_b = fmt(sup.bound);
                violated = violated || exceeds(sup.measured, sup.bound);
            }
            csv.row({fmt(L), fmt(i), fmt(j), fmt(err_meas), fmt(ob.accuracy), fmt(stab_meas),
                     fmt(ob.stability), sup_m, sup_b});
            violated = violated || exceeds(err_meas, ob.accuracy) ||
                       exceeds(stab_meas, ob.stability);
        }
    }
    return violated ? kExitViolation : kExitOk;
}

// ---------------------------------------------------------------------------
// fastsum

struct FastsumArgs {
    int n = 2048;
    std::string kernel = "inv"; // inv | log | helmholtz
    int order = 8;
    int alpha = 0; // nonzero switches to the variable schedule
    int beta = 1;
    double eta = 1.0;
    int leaf = 8;
    double kappa = 40.0;
    bool skip_direct = false;
    unsigned seed = 42;
    std::string out;
};

int run_fastsum(const FastsumArgs& args) {
    if (args.n < 1)
        throw std::invalid_argument("fastsum: requires n >= 1");

    Kernel kernel;
    if (args.kernel == "inv")
        kernel = inverse_distance_kernel();
    else if (args.kernel == "log")
        kernel = log_distance_kernel();
    else if (args.kernel == "helmholtz")
        kernel = helmholtz_slice_kernel(args.kappa);
    else
        throw std::invalid_argument("unknown kernel: " + args.kernel);

    const size_t n = static_cast<size_t>(args.n);
    std::vector<double> sources(n), targets(n);
    for (size_t j = 0; j < n; ++j) {
        sources[j] = (static_cast<double>(j) + 0.25) / static_cast<double>(n);
        targets[j] = (static_cast<double>(j) + 0.75) / static_cast<double>(n);
    }
    std::mt19937 rng(args.seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<Complex> masses(n);
    for (size_t j = 0; j < n; ++j)
        masses[j] = Complex(uni(rng), 0.0);

    SummationConfig config;
    config.leaf_capacity = args.leaf;
    config.eta = args.eta;
    config.schedule = args.alpha > 0 ? OrderSchedule::variable_order(args.alpha, args.beta)
                                     : OrderSchedule::constant_order(args.order);

    const SummationResult result = summation(sources, masses, targets, kernel, config);

    double err_rel = std::nan("");
    if (!args.skip_direct) {
        const std::vector<Complex> exact = direct_summation(sources, masses, targets, kernel);
        double num = 0.0, den = 0.0;
        for (size_t i = 0; i < n; ++i) {
            num = std::max(num, std::abs(result.potentials[i] - exact[i]));
            den = std::max(den, std::abs(exact[i]));
        }
        err_rel = num / den;
    }

    const int m = args.alpha > 0 ? args.alpha : args.order;
    CsvOut csv(args.out, args.seed, "fastsum", "n,m,err_rel,op_count");
    csv.row({fmt(args.n), fmt(m), fmt(err_rel), fmt(result.op_count)});
    return kExitOk;
}

// ---------------------------------------------------------------------------
// Flat key = value configuration files; command-line flags override.

std::string trimmed(const std::string& s) {
    const size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Expands a --config reference into --key=value tokens for every key not
// already present on the command line.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::string path;
    for (size_t k = 0; k < args.size(); ++k) {
        if (args[k] == "--config" && k + 1 < args.size())
            path = args[k + 1];
        else if (args[k].rfind("--config=", 0) == 0)
            path = args[k].substr(9);
    }
    if (path.empty())
        return args;

    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot read config file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        if (const size_t hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const size_t eq = line.find('=');
        if (eq == std::string::npos) {
            if (!trimmed(line).empty())
                throw std::invalid_argument("config: expected key = value, got: " + line);
            continue;
        }
        const std::string key = trimmed(line.substr(0, eq));
        const std::string value = trimmed(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument("config: expected key = value, got: " + line);
        const std::string flag = "--" + key;
        bool present = false;
        for (const std::string& a : args)
            present = present || a == flag || a.rfind(flag + "=", 0) == 0;
        if (!present)
            args.push_back(flag + "=" + value);
    }
    return args;
}

void add_function_options(CLI::App* cmd, FunctionSpec& fn) {
    cmd->add_option("--fn", fn.id, "Test function: one | pole | helmholtz");
    cmd->add_option("--pole-re", fn.pole_re, "Pole real part (fn = pole)");
    cmd->add_option("--pole-im", fn.pole_im, "Pole imaginary part (fn = pole)");
    cmd->add_option("--y0", fn.y0, "Singularity location (fn = helmholtz)");
    cmd->add_option("--kappa", fn.kappa, "Wave number (fn = helmholtz)");
}

void add_geometry_options(CLI::App* cmd, ChainGeometry& geo) {
    cmd->add_option("--a", geo.a, "Root interval left endpoint");
    cmd->add_option("--b", geo.b, "Root interval right endpoint");
    cmd->add_option("--L", geo.levels, "Chain depth")->check(CLI::NonNegativeNumber);
    cmd->add_option("--anchor", geo.anchor, "Dyadic anchoring: left | center | right | random");
    cmd->add_option("--seed", geo.seed, "Random seed");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Interpolation-chain experiments on Bernstein elliptic discs"};
    app.require_subcommand(1);
    std::string config_path;

    GeomArgs geom_args;
    CLI::App* geom = app.add_subcommand("geom", "Derived bound constants for a geometry");
    geom->add_option("--rho0", geom_args.rho0, "Base disc radius, > 1");
    geom->add_option("--delta0", geom_args.delta0, "Shrinking factor, in (0, 1)");
    geom->add_option("--omega", geom_args.omega, "Direction budget");
    geom->add_option("--seed", geom_args.seed, "Random seed (recorded in the header)");
    geom->add_option("--out", geom_args.out, "Output path (default stdout)");
    geom->add_option("--config", config_path, "Key = value configuration file");

    ConvergeArgs conv_args;
    CLI::App* conv = app.add_subcommand("converge", "Single-level error against the bound");
    add_function_options(conv, conv_args.fn);
    conv->add_option("--a", conv_args.a, "Interval left endpoint");
    conv->add_option("--b", conv_args.b, "Interval right endpoint");
    conv->add_option("--rho", conv_args.rho, "Holomorphy radius of the bound");
    conv->add_option("--rho-hat", conv_args.rho_hat, "Measurement disc radius, >= 1");
    conv->add_option("--m-min", conv_args.m_min, "Smallest order");
    conv->add_option("--m-max", conv_args.m_max, "Largest order");
    conv->add_option("--seed", conv_args.seed, "Random seed (recorded in the header)");
    conv->add_option("--out", conv_args.out, "Output path (default stdout)");
    conv->add_option("--config", config_path, "Key = value configuration file");

    ChainArgs chain_args;
    CLI::App* chain = app.add_subcommand("chain", "Iterated interpolation experiments");
    chain->add_option("--mode", chain_args.mode,
                      "error_first | stability_first | varorder | derivative");
    add_function_options(chain, chain_args.fn);
    add_geometry_options(chain, chain_args.geo);
    chain->add_option("--order", chain_args.order, "Constant interpolation order");
    chain->add_option("--alpha", chain_args.alpha, "Variable-order leaf order (0 = constant)")->check(CLI::NonNegativeNumber);
    chain->add_option("--beta", chain_args.beta, "Variable-order increment");
    chain->add_option("--rho0", chain_args.rho0, "Base disc radius, > 1");
    chain->add_option("--delta0", chain_args.delta0, "Shrinking factor, in (0, 1)");
    chain->add_option("--r", chain_args.r, "Reference level for error_first (-1: r = i)");
    chain->add_option("--out", chain_args.out, "Output path (default stdout)");
    chain->add_option("--config", config_path, "Key = value configuration file");

    OscArgs osc_args;
    CLI::App* osc = app.add_subcommand("osc", "Modulated chain experiments");
    add_function_options(osc, osc_args.fn);
    add_geometry_options(osc, osc_args.geo);
    osc->add_option("--order", osc_args.order, "Constant interpolation order");
    osc->add_option("--omega", osc_args.omega, "Direction budget, > 0");
    osc->add_option("--rho0", osc_args.rho0, "Base disc radius, > 1");
    osc->add_option("--delta0", osc_args.delta0, "Shrinking factor, in (0, 1)");
    osc->add_option("--directions", osc_args.directions, "constant | budget | random");
    osc->add_option("--out", osc_args.out, "Output path (default stdout)");
    osc->add_option("--config", config_path, "Key = value configuration file");

    FastsumArgs fast_args;
    CLI::App* fast = app.add_subcommand("fastsum", "Multilevel kernel summation");
    fast->add_option("--n", fast_args.n, "Point count per side");
    fast->add_option("--kernel", fast_args.kernel, "inv | log | helmholtz");
    fast->add_option("--order", fast_args.order, "Constant interpolation order");
    fast->add_option("--alpha", fast_args.alpha, "Variable-order leaf order (0 = constant)")->check(CLI::NonNegativeNumber);
    fast->add_option("--beta", fast_args.beta, "Variable-order increment");
    fast->add_option("--eta", fast_args.eta, "Admissibility parameter, > 0");
    fast->add_option("--leaf", fast_args.leaf, "Leaf capacity");
    fast->add_option("--kappa", fast_args.kappa, "Wave number (helmholtz kernel)");
    fast->add_flag("--skip-direct", fast_args.skip_direct, "Skip the O(n^2) reference sum");
    fast->add_option("--seed", fast_args.seed, "Random seed for the masses");
    fast->add_option("--out", fast_args.out, "Output path (default stdout)");
    fast->add_option("--config", config_path, "Key = value configuration file");

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = expand_config(std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "nestpol: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        if (geom->parsed())
            return run_geom(geom_args);
        if (conv->parsed())
            return run_converge(conv_args);
        if (chain->parsed())
            return run_chain(chain_args);
        if (osc->parsed())
            return run_osc(osc_args);
        if (fast->parsed())
            return run_fastsum(fast_args);
    } catch (const EvaluationError& e) {
        std::cerr << "nestpol: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "nestpol: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
