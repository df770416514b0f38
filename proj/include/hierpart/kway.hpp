#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hierpart/graph.hpp"

namespace hierpart {

/// Relative target size of each part. Entries are positive and sum to 1
/// within 1e-12.
class TargetWeights {
 public:
  explicit TargetWeights(std::vector<double> fractions);
  static TargetWeights uniform(PartId k);

  PartId size() const { return static_cast<PartId>(fractions_.size()); }
  double operator[](PartId c) const { return fractions_[c]; }
  std::span<const double> values() const { return fractions_; }

 private:
  std::vector<double> fractions_;
};

struct CoarseningLevel {
  Graph graph;
  /// Coarse vertex id of every fine vertex.
  std::vector<VertexId> projection;
};

/// Heavy-edge matching over a seeded random visit order. Returns the mate of
/// each vertex, or the vertex itself when unmatched.
std::vector<VertexId> heavy_edge_match(const Graph& g, std::uint64_t seed);

/// Same rule with an explicit visit order: each unmatched vertex pairs with
/// its unmatched neighbor of heaviest edge (ties to the lowest id).
std::vector<VertexId> heavy_edge_match(const Graph& g, std::span<const VertexId> visit_order);

/// Collapses matched pairs. Coarse ids follow the smaller fine id of each
/// pair, so an empty matching reproduces `g`.
CoarseningLevel coarsen(const Graph& g, std::span<const VertexId> mates);

/// Breadth-first region growing from a seeded random start until the grown
/// region (part 0) holds at least `target_fraction` of the vertex weight.
Partition initial_bisection(const Graph& g, double target_fraction, std::uint64_t seed);
Partition initial_bisection_from(const Graph& g, double target_fraction, VertexId start);

struct RefineResult {
  Partition partition;
  Weight cut = 0;
  /// Set when the input lies outside the balance window; the input is then
  /// returned unchanged.
  bool infeasible = false;
};

/// Fiduccia-Mattheyses refinement of a 2-part partition. Every move keeps
/// |weight(part 0) - target_fraction * total| <= imbalance_tol * total.
RefineResult fm_refine(const Graph& g, const Partition& p, double target_fraction, double imbalance_tol,
                       int max_passes);

struct KwayOptions {
  /// Allowed relative deviation of each final part from its target.
  double imbalance_tol = 0.03;
  int max_passes = 10;
  VertexId coarsen_to = 40;
  /// Coarsening stops once a level shrinks the graph by less than this.
  double min_reduction = 0.10;
  int initial_trials = 4;
  /// Minimum vertex count per part; empty means 1 for every part.
  std::vector<VertexId> min_part_sizes;
};

/// Multilevel recursive bisection into `weights.size()` parts. Part c
/// receives roughly weights[c] of the total vertex weight; every part is
/// nonempty. Throws InfeasibleError when k exceeds the vertex count.
Partition partition_kway(const Graph& g, PartId k, const TargetWeights& weights, std::uint64_t seed,
                         const KwayOptions& options = {});

namespace detail {

/// Bisection refinement against an explicit window [lo, hi] for the weight of
/// part 0. `parts` holds 0/1 and is updated in place. Returns the final cut.
Weight refine_bisection(const Graph& g, std::vector<PartId>& parts, double target, double lo, double hi,
                        int max_passes);

/// Greedy gain-ordered moves from the heavy side until part 0's weight lies
/// in [lo, hi] or no move helps.
void rebalance_bisection(const Graph& g, std::vector<PartId>& parts, double lo, double hi);

}  // namespace detail

}  // namespace hierpart
