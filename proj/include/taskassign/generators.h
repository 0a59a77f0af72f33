#pragma once

// Seeded instance families: the adversarial homogeneous groups, the uniform
// heterogeneous random bid graphs, and the nested hard sequences used by the
// lower-bound argument.

#include <cstdint>
#include <vector>

#include "taskassign/instance.h"
#include "taskassign/rng.h"

namespace taskassign {

// Adversarial homogeneous family for bid ceiling R (a power of two in
// [2, 2^20]) and a drop depth i in [1, log2 R]: B = 2R, groups of 2^(j+1)
// workers at bid R/2^j for j = 0..i, then bid-R padding up to n = 8R
// workers; m = n and every worker bids its value on every task.
Instance adversarial_instance(std::uint64_t bid_ceiling, int depth);

// Same family with the depth drawn uniformly from {1..log2 R}.
Instance gen_adversarial(std::uint64_t bid_ceiling, Seed seed);

// Depth gen_adversarial(R, seed) would draw.
int adversarial_depth(std::uint64_t bid_ceiling, Seed seed);

struct UniformHeteroParams {
  int num_workers = 200;
  int num_tasks = 200;
  double budget = 200.0;
  double edge_probability = 0.05;
};

// Random bipartite bid graph: each (worker, task) pair is an edge
// independently with the configured probability, and each edge gets a bid
// uniform on {1..R}. Draw order is worker-major, task-minor, with the bid
// drawn right after its edge succeeds. Throws for R < 2 or R > budget.
Instance gen_uniform_hetero(int bid_ceiling, Seed seed,
                            const UniformHeteroParams& params = {});

// Recommended range for gen_uniform_hetero's R.
inline constexpr int kUniformHeteroMaxR = 50;

// Hard family I_0..I_k. Instances are materialized on demand because the
// padded length grows like B/(eta R (1-eta)^k).
struct LowerBoundFamily {
  double eta = 0.5;
  double bid_ceiling = 2.0;
  double budget = 2.0;
  int k = 0;                         // smallest k with (1-eta)^k <= 1/R
  std::vector<double> probs;         // p_0..p_k
  std::vector<double> levels;        // R (1-eta)^u, unclamped
  std::vector<std::size_t> group_sizes;  // round(B / (R (1-eta)^u)), >= 1
  std::size_t length = 0;            // padded length = |I_k|

  // Bid actually placed on level-u workers: the level clamped to >= 1 so
  // every instance stays within [1, R].
  double bid_at(int u) const;

  // I_u padded with bid-R workers to `length`, over `length` tasks.
  Instance instance(int u) const;
};

// Smallest integer k >= 0 with (1 - eta)^k <= 1/R.
int lower_bound_depth(double eta, double bid_ceiling);

// p_0 = ... = p_{k-1} = eta/((k+1)eta+1), p_k = (1+eta)/((k+1)eta+1).
std::vector<double> lower_bound_probs(double eta, int k);

// Throws std::invalid_argument unless 0 < eta < 1, R >= 2 and B >= R.
LowerBoundFamily gen_lower_bound_family(double eta, double bid_ceiling, double budget);

}  // namespace taskassign
