#pragma once

// Online assignment: the moving-threshold algorithm for adversarial arrival
// order and the sample-then-commit algorithm for random arrival order.

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "taskassign/instance.h"
#include "taskassign/task_pool.h"
#include "taskassign/threshold.h"

namespace taskassign {

// Price threshold min((R e)^(1 - x), R) as a function of the consumed budget
// fraction x. Equal to R on [0, 1/(1 + ln R)], decreasing to 1 at x = 1.
// Throws std::domain_error for x outside [0, 1] or R < 1.
double potential_phi(double x, double bid_ceiling);

struct OnlineState {
  double consumed = 0.0;   // x, fraction of budget spent
  double remaining = 0.0;  // f
  TaskPool tasks;
};

// Moving-threshold algorithm as a state machine over arriving workers.
class OnlineHeterogeneous {
 public:
  OnlineHeterogeneous(double budget, double bid_ceiling, int num_tasks,
                      std::span<const TaskId> available,
                      PaymentMode mode = PaymentMode::kBid);

  // Processes one arrival. Throws InstanceError if any of the worker's bids
  // lies outside [1, R].
  std::optional<AssignedPair> offer(const Worker& w);

  // Largest price acceptable at the current state: min(f, phi(x)).
  double current_offer() const;

  const OnlineState& state() const { return state_; }
  const Assignment& assignment() const { return assignment_; }
  bool exhausted() const { return state_.remaining <= 0.0; }

 private:
  double budget_;
  double bid_ceiling_;
  PaymentMode mode_;
  OnlineState state_;
  Assignment assignment_;
};

Assignment oha(std::span<const Worker> workers, int num_tasks,
               std::span<const TaskId> available, double budget, double bid_ceiling,
               PaymentMode mode = PaymentMode::kBid);

// Runs on the instance's own worker order, tasks and parameters.
Assignment oha(const Instance& inst, PaymentMode mode = PaymentMode::kBid);

enum class BudgetMode { kHalf, kFull };

struct RpaConfig {
  double alpha = 0.5;
  BudgetMode budget_mode = BudgetMode::kHalf;
  PaymentMode payment = PaymentMode::kBid;
};

struct RpaResult {
  Assignment assignment;
  std::size_t observed = 0;   // floor(n/2) workers seen, none assigned
  double estimated_price = 0.0;  // p-hat from the observed half with B/2
  double threshold = 0.0;        // (1 + alpha) p-hat
};

// Observe the first floor(n/2) workers, estimate a price with the
// threshold search on half the budget, then run the fixed-threshold policy
// at (1 + alpha) times that price on the rest. Throws std::invalid_argument
// for n < 2 or alpha outside (0, 1).
RpaResult rpa_run(std::span<const Worker> workers, int num_tasks,
                  std::span<const TaskId> available, double budget,
                  const RpaConfig& cfg);

Assignment rpa(std::span<const Worker> workers, int num_tasks,
               std::span<const TaskId> available, double budget, const RpaConfig& cfg);

Assignment rpa(const Instance& inst, const RpaConfig& cfg);

}  // namespace taskassign
