#pragma once

#include "taskassign/instance.h"

namespace taskassign {

struct FlowResult {
  int flow_value = 0;
  double total_cost = 0.0;
  Assignment assignment;  // payment = bid
};

// Largest number of pairs whose cheapest realization fits in the budget.
// Uses successive shortest paths with early stop (the min-cost value
// function is convex in F). Fully homogeneous instances take the sorted
// greedy route, which is exact there and avoids building an n x m network.
FlowResult offline_optimal(const Instance& inst);

// Same answer, always through the flow network. Exposed so tests can check
// the two routes against each other.
FlowResult offline_optimal_flow(const Instance& inst);

inline constexpr int kBruteForceLimit = 8;

// Exhaustive search over all partial matchings; the test oracle. Maximizes
// pair count within budget, ties by lower cost. Throws std::invalid_argument
// when n or m exceeds kBruteForceLimit.
FlowResult brute_force_optimal(const Instance& inst);

// Sort workers by their minimum bid and give each its cheapest remaining
// task while the budget allows. Optimal on homogeneous instances only.
Assignment greedy_homogeneous(const Instance& inst);

}  // namespace taskassign
