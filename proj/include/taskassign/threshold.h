#pragma once

// Fixed-threshold assignment and the offline search over thresholds.

#include <optional>
#include <span>
#include <vector>

#include "taskassign/instance.h"
#include "taskassign/task_pool.h"

namespace taskassign {

// kBid pays the worker's bid. kThreshold is the posted-price variant: the
// worker is paid (and the budget charged) the price offered on arrival.
enum class PaymentMode { kBid, kThreshold };

// Sequential fixed-threshold policy as a state machine over arriving
// workers. Offers each worker its cheapest remaining task with bid at or
// below min(price, remaining budget); stops once the budget is spent.
class FixedThresholdPolicy {
 public:
  FixedThresholdPolicy(double price, double budget, int num_tasks,
                       std::span<const TaskId> available,
                       PaymentMode mode = PaymentMode::kBid);

  // Processes one arrival. Returns the pair made, if any.
  std::optional<AssignedPair> offer(const Worker& w);

  double remaining_budget() const { return remaining_; }
  bool exhausted() const { return remaining_ <= 0.0; }
  const Assignment& assignment() const { return assignment_; }

 private:
  double price_;
  double remaining_;
  PaymentMode mode_;
  TaskPool pool_;
  Assignment assignment_;
};

// Batch form over an ordered worker sequence.
Assignment ftp(double price, double budget, std::span<const Worker> workers,
               int num_tasks, std::span<const TaskId> available,
               PaymentMode mode = PaymentMode::kBid);

// All task ids of an instance.
std::vector<TaskId> all_tasks(int num_tasks);

struct ThresholdResult {
  Assignment assignment;
  int pairs = 0;             // Q
  double price = 0.0;        // p* = B / Q, 0 when Q = 0
  double best_threshold = 0.0;  // candidate bid that achieved Q
};

// Runs the fixed-threshold policy at every distinct bid value of `workers`
// (ascending) with the full budget and keeps the largest pair count; the
// smallest threshold wins ties.
ThresholdResult oa(std::span<const Worker> workers, int num_tasks,
                   std::span<const TaskId> available, double budget);

}  // namespace taskassign
