#pragma once

#include <optional>
#include <span>
#include <vector>

#include "taskassign/instance.h"

namespace taskassign {

// Set of still-unassigned tasks over [0, m). Removal only; the lowest
// remaining id is found with an amortized forward cursor.
class TaskPool {
 public:
  TaskPool(int num_tasks, std::span<const TaskId> available)
      : alive_(static_cast<std::size_t>(num_tasks), 0) {
    for (TaskId t : available) {
      if (t >= 0 && t < num_tasks && !alive_[t]) {
        alive_[t] = 1;
        ++remaining_;
      }
    }
  }

  explicit TaskPool(int num_tasks)
      : alive_(static_cast<std::size_t>(num_tasks), 1), remaining_(num_tasks) {}

  bool contains(TaskId t) const {
    return t >= 0 && static_cast<std::size_t>(t) < alive_.size() && alive_[t];
  }
  bool empty() const { return remaining_ == 0; }
  int remaining() const { return remaining_; }

  std::optional<TaskId> lowest() {
    while (cursor_ < alive_.size() && !alive_[cursor_]) ++cursor_;
    if (cursor_ == alive_.size()) return std::nullopt;
    return static_cast<TaskId>(cursor_);
  }

  void remove(TaskId t) {
    if (contains(t)) {
      alive_[t] = 0;
      --remaining_;
    }
  }

  std::vector<TaskId> ids() const {
    std::vector<TaskId> out;
    for (std::size_t t = 0; t < alive_.size(); ++t) {
      if (alive_[t]) out.push_back(static_cast<TaskId>(t));
    }
    return out;
  }

 private:
  std::vector<char> alive_;
  std::size_t cursor_ = 0;
  int remaining_ = 0;
};

namespace detail {

struct Pick {
  TaskId task;
  double bid;
};

// Cheapest remaining task with bid <= price_cap and bid <= budget_left
// (the latter with the budget tolerance). Ties go to the lowest task id.
inline std::optional<Pick> cheapest_task(const Worker& w, TaskPool& pool,
                                         double price_cap, double budget_left) {
  auto affordable = [&](double b) {
    return b <= price_cap && b <= budget_left + kBudgetTolerance;
  };
  if (w.uniform_bid) {
    if (!affordable(*w.uniform_bid)) return std::nullopt;
    if (auto t = pool.lowest()) return Pick{*t, *w.uniform_bid};
    return std::nullopt;
  }
  std::optional<Pick> best;
  for (const Bid& b : w.bids) {
    if (!pool.contains(b.task) || !affordable(b.value)) continue;
    if (!best || b.value < best->bid) best = Pick{b.task, b.value};
  }
  return best;
}

}  // namespace detail

}  // namespace taskassign
