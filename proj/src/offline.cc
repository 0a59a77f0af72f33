#include "taskassign/offline.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "taskassign/flow.h"
#include "taskassign/task_pool.h"

namespace taskassign {

namespace {

FlowResult from_assignment(Assignment a) {
  FlowResult r;
  r.flow_value = static_cast<int>(a.size());
  r.total_cost = a.total_payment();
  r.assignment = std::move(a);
  return r;
}

Assignment extract_assignment(const Instance& inst, const FlowNetwork& net,
                              const SuccessiveShortestPaths& ssp) {
  Assignment out;
  std::vector<WorkerId> via_hub_workers;
  std::vector<TaskId> via_hub_tasks;
  for (std::size_t k = 0; k < net.arcs.size(); ++k) {
    if (ssp.flow_on(k) == 0) continue;
    const FlowArc& arc = net.arcs[k];
    if (net.is_worker_node(arc.from) && net.is_task_node(arc.to)) {
      out.pairs.push_back({arc.from - 1, arc.to - 1 - net.num_workers, arc.cost});
    } else if (net.hub && arc.to == *net.hub) {
      via_hub_workers.push_back(arc.from - 1);
    } else if (net.hub && arc.from == *net.hub) {
      via_hub_tasks.push_back(arc.to - 1 - net.num_workers);
    }
  }
  // Uniform workers are interchangeable over tasks, so any pairing of the
  // hub's inflow with its outflow realizes the same cost.
  for (std::size_t k = 0; k < via_hub_workers.size(); ++k) {
    const WorkerId w = via_hub_workers[k];
    out.pairs.push_back({w, via_hub_tasks[k], *inst.workers[w].uniform_bid});
  }
  return out.sorted();
}

}  // namespace

FlowResult offline_optimal_flow(const Instance& inst) {
  const FlowNetwork net = build_flow_network(inst);
  SuccessiveShortestPaths ssp(net);
  const double limit = inst.budget + kBudgetTolerance;
  while (ssp.augment(limit)) {
  }
  return from_assignment(extract_assignment(inst, net, ssp));
}

FlowResult offline_optimal(const Instance& inst) {
  if (inst.is_homogeneous()) return from_assignment(greedy_homogeneous(inst).sorted());
  return offline_optimal_flow(inst);
}

FlowResult brute_force_optimal(const Instance& inst) {
  const int n = static_cast<int>(inst.workers.size());
  const int m = inst.num_tasks;
  if (n > kBruteForceLimit || m > kBruteForceLimit) {
    throw std::invalid_argument("brute_force_optimal: instance exceeds " +
                                std::to_string(kBruteForceLimit) + "x" +
                                std::to_string(kBruteForceLimit));
  }
  std::vector<std::vector<Bid>> options(n);
  for (const Worker& w : inst.workers) {
    for (TaskId t = 0; t < m; ++t) {
      if (auto b = w.bid_for(t, m)) options[w.id].push_back({t, *b});
    }
  }

  const double limit = inst.budget + kBudgetTolerance;
  int best_count = 0;
  double best_cost = 0.0;
  std::vector<AssignedPair> current;
  std::vector<AssignedPair> best;
  unsigned used = 0;

  auto search = [&](auto&& self, int i, double cost) -> void {
    const int count = static_cast<int>(current.size());
    if (count > best_count || (count == best_count && cost < best_cost)) {
      best_count = count;
      best_cost = cost;
      best = current;
    }
    if (i == n || count + (n - i) < best_count) return;
    for (const Bid& b : options[i]) {
      if (used & (1u << b.task)) continue;
      if (cost + b.value > limit) continue;
      used |= 1u << b.task;
      current.push_back({i, b.task, b.value});
      self(self, i + 1, cost + b.value);
      current.pop_back();
      used &= ~(1u << b.task);
    }
    self(self, i + 1, cost);
  };
  search(search, 0, 0.0);

  Assignment a;
  a.pairs = std::move(best);
  return from_assignment(std::move(a));
}

Assignment greedy_homogeneous(const Instance& inst) {
  struct Entry {
    double key;
    WorkerId id;
  };
  std::vector<Entry> order;
  order.reserve(inst.workers.size());
  for (const Worker& w : inst.workers) {
    if (auto b = w.min_bid(inst.num_tasks)) order.push_back({*b, w.id});
  }
  std::sort(order.begin(), order.end(), [](const Entry& a, const Entry& b) {
    return a.key != b.key ? a.key < b.key : a.id < b.id;
  });

  TaskPool pool(inst.num_tasks);
  double remaining = inst.budget;
  Assignment out;
  const double no_cap = std::numeric_limits<double>::infinity();
  for (const Entry& e : order) {
    if (pool.empty()) break;
    const Worker& w = inst.workers[e.id];
    auto pick = detail::cheapest_task(w, pool, no_cap, no_cap);
    if (!pick || pick->bid > remaining + kBudgetTolerance) continue;
    pool.remove(pick->task);
    remaining -= pick->bid;
    out.pairs.push_back({w.id, pick->task, pick->bid});
  }
  return out;
}

}  // namespace taskassign
