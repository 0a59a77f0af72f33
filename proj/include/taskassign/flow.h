#pragma once

// Min-cost flow reduction of the offline assignment problem.
//
// Node layout: source, one node per worker, one per task, sink, and an
// optional hub. Explicit bids become worker->task arcs with cost b_ij.
// Workers in the uniform-bid form route through the hub instead
// (worker->hub at cost b_i, hub->task at cost 0), which is equivalent to
// the full bipartite fan-out but keeps the arc count linear.

#include <limits>
#include <optional>
#include <vector>

#include "taskassign/instance.h"

namespace taskassign {

struct FlowArc {
  int from = 0;
  int to = 0;
  int capacity = 1;
  double cost = 0.0;
};

struct FlowNetwork {
  int num_workers = 0;
  int num_tasks = 0;
  int num_nodes = 2;
  int source = 0;
  int sink = 1;
  std::optional<int> hub;
  std::vector<FlowArc> arcs;

  int worker_node(WorkerId w) const { return 1 + w; }
  int task_node(TaskId t) const { return 1 + num_workers + t; }
  bool is_worker_node(int v) const { return v >= 1 && v <= num_workers; }
  bool is_task_node(int v) const {
    return v > num_workers && v <= num_workers + num_tasks;
  }
};

FlowNetwork build_flow_network(const Instance& inst);

// Successive shortest paths over the residual graph of a unit-capacity
// network. Initial potentials come from a label-correcting pass; every
// later search is Dijkstra on reduced costs.
class SuccessiveShortestPaths {
 public:
  explicit SuccessiveShortestPaths(const FlowNetwork& net);

  // Routes one more unit along a cheapest augmenting path and returns its
  // cost. Returns nullopt, leaving the flow unchanged, when the sink is
  // unreachable or the new cumulative cost would exceed `cost_limit`.
  std::optional<double> augment(
      double cost_limit = std::numeric_limits<double>::infinity());

  // Current flow on the network arc with the given index.
  int flow_on(std::size_t arc_index) const;

  int flow_value() const { return flow_value_; }
  double total_cost() const { return total_cost_; }

 private:
  struct Edge {
    int to;
    int residual;
    double cost;
  };

  void add_edge(int from, int to, int capacity, double cost);
  void init_potentials();

  const FlowNetwork* net_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<double> potential_;
  std::vector<double> dist_;
  std::vector<int> via_;
  std::vector<char> done_;
  int flow_value_ = 0;
  double total_cost_ = 0.0;
};

struct ScheduleEntry {
  int flow = 0;
  double marginal_cost = 0.0;
  double cumulative_cost = 0.0;
};

// Minimum cost of routing F units for F = 1..F_max.
std::vector<ScheduleEntry> min_cost_flow_schedule(const FlowNetwork& net);

}  // namespace taskassign
