#include "taskassign/online.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace taskassign {

double potential_phi(double x, double bid_ceiling) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("potential_phi: x must lie in [0, 1]");
  }
  if (!(bid_ceiling >= 1.0)) {
    throw std::domain_error("potential_phi: R must be >= 1");
  }
  // Below this fraction (R e)^(1-x) >= R; answering R directly keeps the
  // plateau exact instead of depending on pow rounding near the knee.
  const double knee = 1.0 / (1.0 + std::log(bid_ceiling));
  if (x <= knee) return bid_ceiling;
  return std::min(std::pow(bid_ceiling * std::numbers::e, 1.0 - x), bid_ceiling);
}

OnlineHeterogeneous::OnlineHeterogeneous(double budget, double bid_ceiling,
                                         int num_tasks,
                                         std::span<const TaskId> available,
                                         PaymentMode mode)
    : budget_(budget),
      bid_ceiling_(bid_ceiling),
      mode_(mode),
      state_{0.0, budget, TaskPool(num_tasks, available)} {
  if (!(budget > 0.0)) throw std::invalid_argument("budget must be positive");
  if (!(bid_ceiling >= 1.0)) throw std::invalid_argument("R must be >= 1");
}

double OnlineHeterogeneous::current_offer() const {
  const double x = std::clamp(state_.consumed, 0.0, 1.0);
  return std::min(state_.remaining, potential_phi(x, bid_ceiling_));
}

std::optional<AssignedPair> OnlineHeterogeneous::offer(const Worker& w) {
  auto check = [&](double b, std::optional<TaskId> t) {
    if (b < 1.0) throw InstanceError("bid below 1", w.id, t);
    if (b > bid_ceiling_) throw InstanceError("bid above ceiling", w.id, t);
  };
  if (w.uniform_bid) {
    check(*w.uniform_bid, std::nullopt);
  } else {
    for (const Bid& b : w.bids) check(b.value, b.task);
  }

  if (exhausted() || state_.tasks.empty()) return std::nullopt;
  const double x = std::clamp(state_.consumed, 0.0, 1.0);
  const double price = potential_phi(x, bid_ceiling_);
  auto pick = detail::cheapest_task(w, state_.tasks, price, state_.remaining);
  if (!pick) return std::nullopt;

  double payment = pick->bid;
  if (mode_ == PaymentMode::kThreshold) {
    payment = std::max(pick->bid, std::min(price, state_.remaining));
  }
  state_.tasks.remove(pick->task);
  state_.consumed += payment / budget_;
  state_.remaining -= payment;
  AssignedPair pair{w.id, pick->task, payment};
  assignment_.pairs.push_back(pair);
  return pair;
}

Assignment oha(std::span<const Worker> workers, int num_tasks,
               std::span<const TaskId> available, double budget, double bid_ceiling,
               PaymentMode mode) {
  OnlineHeterogeneous alg(budget, bid_ceiling, num_tasks, available, mode);
  for (const Worker& w : workers) alg.offer(w);
  return alg.assignment();
}

Assignment oha(const Instance& inst, PaymentMode mode) {
  const auto tasks = all_tasks(inst.num_tasks);
  return oha(inst.workers, inst.num_tasks, tasks, inst.budget, inst.bid_ceiling, mode);
}

RpaResult rpa_run(std::span<const Worker> workers, int num_tasks,
                  std::span<const TaskId> available, double budget,
                  const RpaConfig& cfg) {
  if (workers.size() < 2) {
    throw std::invalid_argument("rpa: needs at least 2 workers, got " +
                                std::to_string(workers.size()));
  }
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
    throw std::invalid_argument("rpa: alpha must lie in (0, 1)");
  }
  RpaResult result;
  result.observed = workers.size() / 2;
  const auto observed = workers.first(result.observed);
  const auto rest = workers.subspan(result.observed);

  result.estimated_price = oa(observed, num_tasks, available, budget / 2.0).price;
  result.threshold = (1.0 + cfg.alpha) * result.estimated_price;
  const double second_budget = cfg.budget_mode == BudgetMode::kHalf ? budget / 2.0 : budget;
  result.assignment =
      ftp(result.threshold, second_budget, rest, num_tasks, available, cfg.payment);
  return result;
}

Assignment rpa(std::span<const Worker> workers, int num_tasks,
               std::span<const TaskId> available, double budget, const RpaConfig& cfg) {
  return rpa_run(workers, num_tasks, available, budget, cfg).assignment;
}

Assignment rpa(const Instance& inst, const RpaConfig& cfg) {
  const auto tasks = all_tasks(inst.num_tasks);
  return rpa(inst.workers, inst.num_tasks, tasks, inst.budget, cfg);
}

}  // namespace taskassign
