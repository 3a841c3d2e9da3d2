#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nestpol/chebyshev.hpp"
#include "nestpol/interval.hpp"
#include "nestpol/types.hpp"

namespace nestpol {

/// Per-depth interpolation orders of a cluster tree: a constant order, or
/// the decreasing schedule alpha + beta*(max_depth - depth) applied
/// root-down (leaves get alpha).
struct OrderSchedule {
    enum class Kind { constant, variable };

    Kind kind = Kind::constant;
    int order = 8; // constant order, or alpha in variable mode
    int step = 0;  // beta in variable mode

    static OrderSchedule constant_order(int m);
    static OrderSchedule variable_order(int alpha, int beta);

    int order_at(int depth, int max_depth) const;
};

/// Balanced dyadic interval tree over a sorted point set. Children halve
/// the parent interval and partition its point range; leaves hold at most
/// leaf_capacity points. Every node carries the interpolation rule of its
/// depth.
class ClusterTree {
public:
    struct Node {
        Interval interval;
        int child0 = -1;
        int child1 = -1;
        int begin = 0;
        int end = 0;
        int depth = 0;

        bool leaf() const { return child0 < 0; }
        int point_count() const { return end - begin; }
    };

    static ClusterTree build(std::vector<double> sorted_points, const Interval& root,
                             int leaf_capacity, const OrderSchedule& schedule);

    const std::vector<double>& points() const { return points_; }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    const Node& node(int idx) const { return nodes_.at(static_cast<size_t>(idx)); }
    int root() const { return 0; }
    int max_depth() const { return max_depth_; }
    const ChebyshevRule& rule(int node_idx) const;
    int order_of(int node_idx) const { return rule(node_idx).order(); }

private:
    std::vector<Node> nodes_;
    std::vector<double> points_;
    std::vector<ChebyshevRule> rules_by_depth_;
    int max_depth_ = 0;
};

/// Target-source interval pair of a block partition.
struct Block {
    int target = 0;
    int source = 0;
};

/// Partition of all (target point, source point) pairs into admissible
/// far-field blocks, dist >= eta * max(diam), and leaf-level near-field
/// blocks.
class SummationPlan {
public:
    static SummationPlan build(const ClusterTree& targets, const ClusterTree& sources,
                               double eta);

    std::span<const Block> admissible() const { return admissible_; }
    std::span<const Block> nearfield() const { return nearfield_; }
    double eta() const { return eta_; }

    /// Verifies that every point pair is covered by exactly one block.
    /// Intended for small instances; cost is O(n_target * n_source).
    void audit_coverage(const ClusterTree& targets, const ClusterTree& sources) const;

private:
    std::vector<Block> admissible_;
    std::vector<Block> nearfield_;
    double eta_ = 1.0;
};

/// Kernel g(y, x) evaluated at real points. A nonzero kappa activates the
/// plane-wave-demodulated far field with per-node directions +-kappa.
struct Kernel {
    std::string name;
    std::function<Complex(double, double)> eval;
    double kappa = 0.0;
};

Kernel inverse_distance_kernel();
Kernel log_distance_kernel();
Kernel helmholtz_slice_kernel(double kappa);

/// Per-node, per-direction coefficient vectors of a tree.
struct NodeCoefficients {
    std::vector<std::vector<std::vector<Complex>>> data; // [node][direction][nu]

    static NodeCoefficients zeros(const ClusterTree& tree, int n_directions);
};

/// Leaf coefficients sum_j m_j * b_nu(x_j) and internal-node coefficients
/// assembled from the children alone via basis transfer, for each
/// direction c: b_nu(x) = e^{ic(x - xi_nu)} l_nu(x).
NodeCoefficients upward_pass(const ClusterTree& sources, std::span<const Complex> masses,
                             std::span<const double> directions,
                             std::uint64_t* op_count = nullptr);

/// Far-field coupling of every admissible block: accumulates
/// g(xi_target, xi_source) times the source coefficients into target-side
/// coefficient vectors. Throws std::logic_error if the kernel is singular
/// inside a block (a plan-construction bug).
void evaluate_farfield(const SummationPlan& plan, const ClusterTree& targets,
                       const ClusterTree& sources, const Kernel& kernel,
                       std::span<const double> directions, const NodeCoefficients& source_coeffs,
                       NodeCoefficients& target_accum, std::uint64_t* op_count = nullptr);

/// Mirror of the upward pass on the target side: pushes accumulated
/// coefficients to the children and scatters leaf contributions into the
/// per-point potentials.
void downward_pass(const ClusterTree& targets, std::span<const double> directions,
                   const NodeCoefficients& target_accum, std::span<Complex> potentials,
                   std::uint64_t* op_count = nullptr);

struct SummationConfig {
    int leaf_capacity = 8;
    OrderSchedule schedule;
    double eta = 1.0;
};

struct SummationResult {
    std::vector<Complex> potentials;
    std::uint64_t op_count = 0;
};

/// Full near + far evaluation of sum_j masses[j] * g(y_i, x_j) for every
/// target. Points must be sorted ascending. op_count tallies kernel
/// evaluations (near field and block coupling) plus transfer multiply-adds
/// (leaf gather/scatter and parent-child transfers); see the README for
/// the exact semantics. The implementation is sequential throughout, so
/// results are bitwise reproducible.
SummationResult summation(std::span<const double> source_points,
                          std::span<const Complex> masses,
                          std::span<const double> target_points, const Kernel& kernel,
                          const SummationConfig& config);

/// Direct O(n^2) reference sum.
std::vector<Complex> direct_summation(std::span<const double> source_points,
                                      std::span<const Complex> masses,
                                      std::span<const double> target_points,
                                      const Kernel& kernel);

} // namespace nestpol
