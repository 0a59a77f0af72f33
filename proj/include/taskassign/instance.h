#pragma once

// Core domain types for budgeted assignment of heterogeneous tasks to
// arriving workers, plus the JSON instance format and the assignment
// validator that every algorithm's output is checked against.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace taskassign {

using TaskId = int;
using WorkerId = int;

// Additive slack on budget sums only. Threshold comparisons are exact.
inline constexpr double kBudgetTolerance = 1e-9;

struct Bid {
  TaskId task = 0;
  double value = 0.0;

  friend bool operator==(const Bid&, const Bid&) = default;
};

// A worker either lists explicit bids for a subset of tasks (sorted by task
// id, absent task = infeasible) or bids one value on every task of the
// instance. The second form keeps homogeneous instances with tens of
// thousands of tasks in linear memory.
struct Worker {
  WorkerId id = 0;
  std::vector<Bid> bids;
  std::optional<double> uniform_bid;

  bool is_uniform() const { return uniform_bid.has_value(); }

  // Bid on `task`, or nullopt when the task is infeasible for this worker.
  // `num_tasks` bounds the uniform form.
  std::optional<double> bid_for(TaskId task, int num_tasks) const;

  // Smallest bid over the feasible set, nullopt when the set is empty.
  std::optional<double> min_bid(int num_tasks) const;

  // |J_i|
  std::size_t feasible_count(int num_tasks) const;

  friend bool operator==(const Worker&, const Worker&) = default;
};

Worker make_worker(WorkerId id, std::vector<Bid> bids);
Worker make_uniform_worker(WorkerId id, double bid);

struct Instance {
  std::vector<Worker> workers;  // arrival order
  int num_tasks = 0;
  double budget = 0.0;
  double bid_ceiling = 1.0;

  std::size_t num_workers() const { return workers.size(); }

  // True when every worker bids a single value on all tasks.
  bool is_homogeneous() const;

  // Every distinct bid value appearing in the instance, ascending.
  std::vector<double> distinct_bids() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

// Raised for structurally invalid instances. Carries the offending ids when
// the violation is attributable to one worker/task.
class InstanceError : public std::runtime_error {
 public:
  InstanceError(const std::string& what, std::optional<WorkerId> worker = {},
                std::optional<TaskId> task = {});

  std::optional<WorkerId> worker() const { return worker_; }
  std::optional<TaskId> task() const { return task_; }

 private:
  std::optional<WorkerId> worker_;
  std::optional<TaskId> task_;
};

// Throws InstanceError on the first violated invariant: ids equal positions,
// bid keys in [0, m) and strictly increasing, bids in [1, R], and (when
// `require_large_market`) R <= B.
void check_instance(const Instance& inst, bool require_large_market = true);

Instance parse_instance(std::string_view text);
std::string serialize_instance(const Instance& inst);

// Returns a copy whose workers appear in `order` (a permutation of
// [0, n)), renumbered to their new positions.
Instance permute_workers(const Instance& inst, std::span<const std::size_t> order);

// Keeps workers [first, first + count), renumbered from 0.
Instance slice_workers(const Instance& inst, std::size_t first, std::size_t count);

struct AssignedPair {
  WorkerId worker = 0;
  TaskId task = 0;
  double payment = 0.0;

  friend bool operator==(const AssignedPair&, const AssignedPair&) = default;
};

struct Assignment {
  std::vector<AssignedPair> pairs;

  std::size_t size() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }
  double total_payment() const;
  // Pairs sorted by worker id, for order-insensitive comparison.
  Assignment sorted() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

enum class ViolationKind {
  kUnknownWorker,
  kUnknownTask,
  kDuplicateWorker,
  kDuplicateTask,
  kInfeasibleTask,
  kPaymentBelowBid,
  kNonPositivePayment,
  kOverBudget,
};

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
  std::string summary() const;
};

ValidationReport validate_assignment(const Instance& inst, const Assignment& a);

// Renders an assignment as {"pairs": [[worker, task, payment], ...], ...}.
std::string assignment_to_json(const Assignment& a);

// Shortest decimal string that reparses to the same double.
std::string format_double(double value);

}  // namespace taskassign
