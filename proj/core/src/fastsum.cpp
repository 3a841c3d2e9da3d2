#include "nestpol/fastsum.hpp"

#include <algorithm>
#include <cmath>

namespace nestpol {

namespace {

// Forced-leaf depth guard against degenerate point distributions.
constexpr int kMaxDepth = 48;

double interval_dist(const Interval& s, const Interval& t) {
    return std::max(0.0, std::max(s.a(), t.a()) - std::min(s.b(), t.b()));
}

Complex plane_wave(double c, double x) {
    return std::polar(1.0, c * x);
}

// Direction indices of an admissible block: the target side gets
// +kappa*s, the source side -kappa*s, where s is the sign of the
// target-source offset. Directions are stored as {-kappa, +kappa}.
struct BlockDirections {
    int target_dir = 0;
    int source_dir = 0;
};

BlockDirections block_directions(const Kernel& kernel, const Interval& target,
                                 const Interval& source) {
    if (kernel.kappa == 0.0)
        return {0, 0};
    const bool target_right = target.center() > source.center();
    return target_right ? BlockDirections{1, 0} : BlockDirections{0, 1};
}

} // namespace

OrderSchedule OrderSchedule::constant_order(int m) {
    if (m < 1)
        throw std::invalid_argument("OrderSchedule: requires order >= 1");
    return {Kind::constant, m, 0};
}

OrderSchedule OrderSchedule::variable_order(int alpha, int beta) {
    if (alpha < 1 || beta < 1)
        throw std::invalid_argument("OrderSchedule: requires alpha, beta >= 1");
    return {Kind::variable, alpha, beta};
}

int OrderSchedule::order_at(int depth, int max_depth) const {
    if (kind == Kind::constant)
        return order;
    return order + step * (max_depth - depth);
}

ClusterTree ClusterTree::build(std::vector<double> sorted_points, const Interval& root,
                               int leaf_capacity, const OrderSchedule& schedule) {
    if (sorted_points.empty())
        throw std::invalid_argument("ClusterTree::build: requires at least one point");
    if (leaf_capacity < 1)
        throw std::invalid_argument("ClusterTree::build: requires leaf_capacity >= 1");
    if (!std::is_sorted(sorted_points.begin(), sorted_points.end()))
        throw std::invalid_argument("ClusterTree::build: points must be sorted ascending");
    if (sorted_points.front() < root.a() || sorted_points.back() > root.b())
        throw std::invalid_argument("ClusterTree::build: points must lie in the root interval");

    ClusterTree tree;
    tree.points_ = std::move(sorted_points);

    struct Work {
        int node;
        Interval interval;
        int begin;
        int end;
        int depth;
    };

    tree.nodes_.push_back({root, -1, -1, 0, static_cast<int>(tree.points_.size()), 0});
    std::vector<Work> stack{{0, root, 0, static_cast<int>(tree.points_.size()), 0}};
    while (!stack.empty()) {
        const Work w = stack.back();
        stack.pop_back();
        tree.max_depth_ = std::max(tree.max_depth_, w.depth);
        if (w.end - w.begin <= leaf_capacity || w.depth >= kMaxDepth)
            continue;
        const double mid = w.interval.center();
        const int split = static_cast<int>(
            std::lower_bound(tree.points_.begin() + w.begin, tree.points_.begin() + w.end, mid) -
            tree.points_.begin());
        const Interval left(w.interval.a(), mid);
        const Interval right(mid, w.interval.b());
        const int c0 = static_cast<int>(tree.nodes_.size());
        tree.nodes_.push_back({left, -1, -1, w.begin, split, w.depth + 1});
        const int c1 = static_cast<int>(tree.nodes_.size());
        tree.nodes_.push_back({right, -1, -1, split, w.end, w.depth + 1});
        tree.nodes_[static_cast<size_t>(w.node)].child0 = c0;
        tree.nodes_[static_cast<size_t>(w.node)].child1 = c1;
        stack.push_back({c0, left, w.begin, split, w.depth + 1});
        stack.push_back({c1, right, split, w.end, w.depth + 1});
    }

    tree.rules_by_depth_.reserve(static_cast<size_t>(tree.max_depth_) + 1);
    for (int d = 0; d <= tree.max_depth_; ++d)
        tree.rules_by_depth_.emplace_back(schedule.order_at(d, tree.max_depth_));
    return tree;
}

const ChebyshevRule& ClusterTree::rule(int node_idx) const {
    return rules_by_depth_.at(static_cast<size_t>(node(node_idx).depth));
}

SummationPlan SummationPlan::build(const ClusterTree& targets, const ClusterTree& sources,
                                   double eta) {
    if (!(eta > 0.0))
        throw std::invalid_argument("SummationPlan::build: requires eta > 0");
    SummationPlan plan;
    plan.eta_ = eta;

    std::vector<Block> stack{{targets.root(), sources.root()}};
    while (!stack.empty()) {
        const Block blk = stack.back();
        stack.pop_back();
        const auto& t = targets.node(blk.target);
        const auto& s = sources.node(blk.source);
        if (t.point_count() == 0 || s.point_count() == 0)
            continue;
        const double dist = interval_dist(t.interval, s.interval);
        const double diam = std::max(t.interval.length(), s.interval.length());
        if (dist >= eta * diam) {
            plan.admissible_.push_back(blk);
            continue;
        }
        if (t.leaf() && s.leaf()) {
            plan.nearfield_.push_back(blk);
            continue;
        }
        const bool split_source =
            t.leaf() || (!s.leaf() && s.interval.length() > t.interval.length());
        if (split_source) {
            stack.push_back({blk.target, sources.node(blk.source).child0});
            stack.push_back({blk.target, sources.node(blk.source).child1});
        } else {
            stack.push_back({targets.node(blk.target).child0, blk.source});
            stack.push_back({targets.node(blk.target).child1, blk.source});
        }
    }
    return plan;
}

void SummationPlan::audit_coverage(const ClusterTree& targets, const ClusterTree& sources) const {
    const size_t nt = targets.points().size();
    const size_t ns = sources.points().size();
    std::vector<unsigned char> covered(nt * ns, 0);
    auto mark = [&](const Block& blk) {
        const auto& t = targets.node(blk.target);
        const auto& s = sources.node(blk.source);
        for (int i = t.begin; i < t.end; ++i)
            for (int j = s.begin; j < s.end; ++j) {
                unsigned char& c = covered[static_cast<size_t>(i) * ns + static_cast<size_t>(j)];
                if (c)
                    throw std::logic_error("SummationPlan: point pair covered twice");
                c = 1;
            }
    };
    for (const Block& blk : admissible_)
        mark(blk);
    for (const Block& blk : nearfield_)
        mark(blk);
    for (unsigned char c : covered)
        if (!c)
            throw std::logic_error("SummationPlan: point pair not covered");
}

Kernel inverse_distance_kernel() {
    return {"inv", [](double y, double x) { return Complex(1.0 / (y - x), 0.0); }, 0.0};
}

Kernel log_distance_kernel() {
    return {"log", [](double y, double x) { return Complex(std::log(std::abs(y - x)), 0.0); },
            0.0};
}

Kernel helmholtz_slice_kernel(double kappa) {
    if (!(kappa > 0.0))
        throw std::invalid_argument("helmholtz_slice_kernel: requires kappa > 0");
    return {"helmholtz",
            [kappa](double y, double x) {
                const double r = std::abs(y - x);
                return std::polar(1.0, kappa * r) / r;
            },
            kappa};
}

NodeCoefficients NodeCoefficients::zeros(const ClusterTree& tree, int n_directions) {
    NodeCoefficients c;
    c.data.resize(static_cast<size_t>(tree.node_count()));
    for (int idx = 0; idx < tree.node_count(); ++idx)
        c.data[static_cast<size_t>(idx)].assign(
            static_cast<size_t>(n_directions),
            std::vector<Complex>(static_cast<size_t>(tree.rule(idx).size()), Complex(0.0)));
    return c;
}

NodeCoefficients upward_pass(const ClusterTree& sources, std::span<const Complex> masses,
                             std::span<const double> directions, std::uint64_t* op_count) {
    if (masses.size() != sources.points().size())
        throw std::invalid_argument("upward_pass: masses must match the point count");
    if (directions.empty())
        throw std::invalid_argument("upward_pass: needs at least one direction");

    NodeCoefficients coeffs = NodeCoefficients::zeros(sources, static_cast<int>(directions.size()));
    std::uint64_t ops = 0;
    std::vector<double> basis;

    // Nodes were appended parent-first, so a reverse sweep sees children
    // before their parents.
    for (int idx = sources.node_count() - 1; idx >= 0; --idx) {
        const auto& node = sources.node(idx);
        const ChebyshevRule& rule = sources.rule(idx);
        const int n = rule.size();
        basis.resize(static_cast<size_t>(n));
        auto& by_dir = coeffs.data[static_cast<size_t>(idx)];

        if (node.leaf()) {
            for (int j = node.begin; j < node.end; ++j) {
                const double x = sources.points()[static_cast<size_t>(j)];
                rule.lagrange_values(node.interval.pullback(x), basis);
                for (size_t d = 0; d < directions.size(); ++d) {
                    const double c = directions[d];
                    for (int nu = 0; nu < n; ++nu) {
                        const double xi = node.interval.map(rule.points()[static_cast<size_t>(nu)]);
                        by_dir[d][static_cast<size_t>(nu)] +=
                            masses[static_cast<size_t>(j)] * plane_wave(c, x - xi) *
                            basis[static_cast<size_t>(nu)];
                    }
                }
            }
            ops += static_cast<std::uint64_t>(node.point_count()) *
                   static_cast<std::uint64_t>(n) * directions.size();
            continue;
        }

        for (int child : {node.child0, node.child1}) {
            const auto& cn = sources.node(child);
            if (cn.point_count() == 0)
                continue;
            const ChebyshevRule& crule = sources.rule(child);
            const int cn_size = crule.size();
            for (int nuc = 0; nuc < cn_size; ++nuc) {
                const double xc = cn.interval.map(crule.points()[static_cast<size_t>(nuc)]);
                rule.lagrange_values(node.interval.pullback(xc), basis);
                for (size_t d = 0; d < directions.size(); ++d) {
                    const double c = directions[d];
                    const Complex xhat = coeffs.data[static_cast<size_t>(child)][d]
                                                    [static_cast<size_t>(nuc)];
                    for (int nu = 0; nu < n; ++nu) {
                        const double xi = node.interval.map(rule.points()[static_cast<size_t>(nu)]);
                        by_dir[d][static_cast<size_t>(nu)] +=
                            plane_wave(c, xc - xi) * basis[static_cast<size_t>(nu)] * xhat;
                    }
                }
            }
            ops += static_cast<std::uint64_t>(cn_size) * static_cast<std::uint64_t>(n) *
                   directions.size();
        }
    }
    if (op_count)
        *op_count += ops;
    return coeffs;
}

void evaluate_farfield(const SummationPlan& plan, const ClusterTree& targets,
                       const ClusterTree& sources, const Kernel& kernel,
                       std::span<const double> directions, const NodeCoefficients& source_coeffs,
                       NodeCoefficients& target_accum, std::uint64_t* op_count) {
    // Direction indices below refer to the {-kappa, +kappa} convention.
    if (kernel.kappa != 0.0 ? directions.size() != 2 : directions.empty())
        throw std::invalid_argument("evaluate_farfield: direction list does not match the kernel");
    std::uint64_t ops = 0;
    for (const Block& blk : plan.admissible()) {
        const auto& t = targets.node(blk.target);
        const auto& s = sources.node(blk.source);
        const ChebyshevRule& trule = targets.rule(blk.target);
        const ChebyshevRule& srule = sources.rule(blk.source);
        const auto dirs = block_directions(kernel, t.interval, s.interval);
        auto& accum = target_accum.data[static_cast<size_t>(blk.target)]
                                       [static_cast<size_t>(dirs.target_dir)];
        const auto& src = source_coeffs.data[static_cast<size_t>(blk.source)]
                                            [static_cast<size_t>(dirs.source_dir)];
        for (int mu = 0; mu < trule.size(); ++mu) {
            const double yq = t.interval.map(trule.points()[static_cast<size_t>(mu)]);
            for (int nu = 0; nu < srule.size(); ++nu) {
                const double xq = s.interval.map(srule.points()[static_cast<size_t>(nu)]);
                const Complex g = kernel.eval(yq, xq);
                if (!std::isfinite(std::abs(g)))
                    throw std::logic_error(
                        "evaluate_farfield: kernel singular inside an admissible block");
                accum[static_cast<size_t>(mu)] += g * src[static_cast<size_t>(nu)];
            }
        }
        ops += static_cast<std::uint64_t>(trule.size()) * static_cast<std::uint64_t>(srule.size());
    }
    if (op_count)
        *op_count += ops;
}

void downward_pass(const ClusterTree& targets, std::span<const double> directions,
                   const NodeCoefficients& target_accum, std::span<Complex> potentials,
                   std::uint64_t* op_count) {
    if (potentials.size() != targets.points().size())
        throw std::invalid_argument("downward_pass: potentials must match the point count");

    NodeCoefficients work = target_accum;
    std::uint64_t ops = 0;
    std::vector<double> basis;

    // Parent-first sweep pushes contributions toward the leaves.
    for (int idx = 0; idx < targets.node_count(); ++idx) {
        const auto& node = targets.node(idx);
        const ChebyshevRule& rule = targets.rule(idx);
        const int n = rule.size();
        basis.resize(static_cast<size_t>(n));
        const auto& by_dir = work.data[static_cast<size_t>(idx)];

        if (node.leaf()) {
            for (int i = node.begin; i < node.end; ++i) {
                const double y = targets.points()[static_cast<size_t>(i)];
                rule.lagrange_values(node.interval.pullback(y), basis);
                Complex acc(0.0);
                for (size_t d = 0; d < directions.size(); ++d) {
                    const double c = directions[d];
                    for (int mu = 0; mu < n; ++mu) {
                        const double xi = node.interval.map(rule.points()[static_cast<size_t>(mu)]);
                        acc += by_dir[d][static_cast<size_t>(mu)] * plane_wave(c, y - xi) *
                               basis[static_cast<size_t>(mu)];
                    }
                }
                potentials[static_cast<size_t>(i)] += acc;
            }
            ops += static_cast<std::uint64_t>(node.point_count()) *
                   static_cast<std::uint64_t>(n) * directions.size();
            continue;
        }

        for (int child : {node.child0, node.child1}) {
            const auto& cn = targets.node(child);
            if (cn.point_count() == 0)
                continue;
            const ChebyshevRule& crule = targets.rule(child);
            auto& cdata = work.data[static_cast<size_t>(child)];
            for (int muc = 0; muc < crule.size(); ++muc) {
                const double yc = cn.interval.map(crule.points()[static_cast<size_t>(muc)]);
                rule.lagrange_values(node.interval.pullback(yc), basis);
                for (size_t d = 0; d < directions.size(); ++d) {
                    const double c = directions[d];
                    Complex acc(0.0);
                    for (int mu = 0; mu < n; ++mu) {
                        const double xi = node.interval.map(rule.points()[static_cast<size_t>(mu)]);
                        acc += by_dir[d][static_cast<size_t>(mu)] * plane_wave(c, yc - xi) *
                               basis[static_cast<size_t>(mu)];
                    }
                    cdata[d][static_cast<size_t>(muc)] += acc;
                }
            }
            ops += static_cast<std::uint64_t>(crule.size()) * static_cast<std::uint64_t>(n) *
                   directions.size();
        }
    }
    if (op_count)
        *op_count += ops;
}

SummationResult summation(std::span<const double> source_points,
                          std::span<const Complex> masses,
                          std::span<const double> target_points, const Kernel& kernel,
                          const SummationConfig& config) {
    if (source_points.empty() || target_points.empty())
        throw std::invalid_argument("summation: requires nonempty point sets");
    if (masses.size() != source_points.size())
        throw std::invalid_argument("summation: masses must match the source count");

    auto make_root = [](std::span<const double> pts) {
        double lo = pts.front();
        double hi = pts.back();
        if (!(lo < hi)) {
            lo -= 0.5;
            hi += 0.5;
        }
        return Interval(lo, hi);
    };

    const ClusterTree sources =
        ClusterTree::build(std::vector<double>(source_points.begin(), source_points.end()),
                           make_root(source_points), config.leaf_capacity, config.schedule);
    const ClusterTree targets =
        ClusterTree::build(std::vector<double>(target_points.begin(), target_points.end()),
                           make_root(target_points), config.leaf_capacity, config.schedule);
    const SummationPlan plan = SummationPlan::build(targets, sources, config.eta);
    if (source_points.size() * target_points.size() <= 65536)
        plan.audit_coverage(targets, sources);

    std::vector<double> directions{0.0};
    if (kernel.kappa != 0.0)
        directions = {-kernel.kappa, kernel.kappa};

    SummationResult result;
    result.potentials.assign(target_points.size(), Complex(0.0));

    NodeCoefficients source_coeffs =
        upward_pass(sources, masses, directions, &result.op_count);
    NodeCoefficients target_accum =
        NodeCoefficients::zeros(targets, static_cast<int>(directions.size()));
    evaluate_farfield(plan, targets, sources, kernel, directions, source_coeffs, target_accum,
                      &result.op_count);
    downward_pass(targets, directions, target_accum, result.potentials, &result.op_count);

    for (const Block& blk : plan.nearfield()) {
        const auto& t = targets.node(blk.target);
        const auto& s = sources.node(blk.source);
        for (int i = t.begin; i < t.end; ++i) {
            Complex acc(0.0);
            for (int j = s.begin; j < s.end; ++j)
                acc += masses[static_cast<size_t>(j)] *
                       kernel.eval(targets.points()[static_cast<size_t>(i)],
                                   sources.points()[static_cast<size_t>(j)]);
            result.potentials[static_cast<size_t>(i)] += acc;
            result.op_count += static_cast<std::uint64_t>(s.point_count());
        }
    }
    return result;
}

std::vector<Complex> direct_summation(std::span<const double> source_points,
                                      std::span<const Complex> masses,
                                      std::span<const double> target_points,
                                      const Kernel& kernel) {
    if (masses.size() != source_points.size())
        throw std::invalid_argument("direct_summation: masses must match the source count");
    std::vector<Complex> potentials(target_points.size(), Complex(0.0));
    for (size_t i = 0; i < target_points.size(); ++i) {
        Complex acc(0.0);
        for (size_t j = 0; j < source_points.size(); ++j)
            acc += masses[j] * kernel.eval(target_points[i], source_points[j]);
        potentials[i] = acc;
    }
    return potentials;
}

} // namespace nestpol
