#include "taskassign/threshold.h"

#include <algorithm>
#include <numeric>

namespace taskassign {

FixedThresholdPolicy::FixedThresholdPolicy(double price, double budget, int num_tasks,
                                           std::span<const TaskId> available,
                                           PaymentMode mode)
    : price_(price), remaining_(budget), mode_(mode), pool_(num_tasks, available) {}

std::optional<AssignedPair> FixedThresholdPolicy::offer(const Worker& w) {
  if (exhausted() || pool_.empty()) return std::nullopt;
  auto pick = detail::cheapest_task(w, pool_, price_, remaining_);
  if (!pick) return std::nullopt;
  double payment = pick->bid;
  if (mode_ == PaymentMode::kThreshold) {
    payment = std::max(pick->bid, std::min(price_, remaining_));
  }
  pool_.remove(pick->task);
  remaining_ -= payment;
  AssignedPair pair{w.id, pick->task, payment};
  assignment_.pairs.push_back(pair);
  return pair;
}

Assignment ftp(double price, double budget, std::span<const Worker> workers,
               int num_tasks, std::span<const TaskId> available, PaymentMode mode) {
  FixedThresholdPolicy policy(price, budget, num_tasks, available, mode);
  for (const Worker& w : workers) {
    if (policy.exhausted()) break;
    policy.offer(w);
  }
  return policy.assignment();
}

std::vector<TaskId> all_tasks(int num_tasks) {
  std::vector<TaskId> ids(static_cast<std::size_t>(std::max(num_tasks, 0)));
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

ThresholdResult oa(std::span<const Worker> workers, int num_tasks,
                   std::span<const TaskId> available, double budget) {
  std::vector<double> candidates;
  for (const Worker& w : workers) {
    if (w.uniform_bid) {
      if (num_tasks > 0) candidates.push_back(*w.uniform_bid);
    } else {
      for (const Bid& b : w.bids) candidates.push_back(b.value);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  ThresholdResult best;
  for (double p : candidates) {
    Assignment a = ftp(p, budget, workers, num_tasks, available);
    if (static_cast<int>(a.size()) > best.pairs) {
      best.pairs = static_cast<int>(a.size());
      best.assignment = std::move(a);
      best.best_threshold = p;
    }
  }
  best.price = best.pairs > 0 ? budget / best.pairs : 0.0;
  return best;
}

}  // namespace taskassign
