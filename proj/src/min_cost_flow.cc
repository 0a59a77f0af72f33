#include <algorithm>
#include <deque>
#include <limits>
#include <queue>

#include "taskassign/flow.h"

namespace taskassign {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

FlowNetwork build_flow_network(const Instance& inst) {
  FlowNetwork net;
  net.num_workers = static_cast<int>(inst.workers.size());
  net.num_tasks = inst.num_tasks;
  net.source = 0;
  net.sink = 1 + net.num_workers + net.num_tasks;
  net.num_nodes = net.sink + 1;
  const bool needs_hub = std::any_of(inst.workers.begin(), inst.workers.end(),
                                     [](const Worker& w) { return w.is_uniform(); });
  if (needs_hub) net.hub = net.num_nodes++;

  for (const Worker& w : inst.workers) {
    net.arcs.push_back({net.source, net.worker_node(w.id), 1, 0.0});
  }
  for (const Worker& w : inst.workers) {
    if (w.uniform_bid) {
      net.arcs.push_back({net.worker_node(w.id), *net.hub, 1, *w.uniform_bid});
      continue;
    }
    for (const Bid& b : w.bids) {
      net.arcs.push_back({net.worker_node(w.id), net.task_node(b.task), 1, b.value});
    }
  }
  if (net.hub) {
    for (TaskId t = 0; t < net.num_tasks; ++t) {
      net.arcs.push_back({*net.hub, net.task_node(t), 1, 0.0});
    }
  }
  for (TaskId t = 0; t < net.num_tasks; ++t) {
    net.arcs.push_back({net.task_node(t), net.sink, 1, 0.0});
  }
  return net;
}

SuccessiveShortestPaths::SuccessiveShortestPaths(const FlowNetwork& net)
    : net_(&net), adjacency_(net.num_nodes), potential_(net.num_nodes, 0.0) {
  edges_.reserve(net.arcs.size() * 2);
  for (const FlowArc& arc : net.arcs) add_edge(arc.from, arc.to, arc.capacity, arc.cost);
  init_potentials();
}

void SuccessiveShortestPaths::add_edge(int from, int to, int capacity, double cost) {
  adjacency_[from].push_back(static_cast<int>(edges_.size()));
  edges_.push_back({to, capacity, cost});
  adjacency_[to].push_back(static_cast<int>(edges_.size()));
  edges_.push_back({from, 0, -cost});
}

// FIFO label-correcting pass from the source. Unreachable nodes keep a zero
// potential; they can never become reachable since every arc into them is
// unchanged by later augmentations.
void SuccessiveShortestPaths::init_potentials() {
  const int n = net_->num_nodes;
  std::vector<double> dist(n, kInf);
  std::vector<char> queued(n, 0);
  std::deque<int> queue;
  dist[net_->source] = 0.0;
  queue.push_back(net_->source);
  queued[net_->source] = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    queued[v] = 0;
    for (int e : adjacency_[v]) {
      const Edge& edge = edges_[e];
      if (edge.residual <= 0) continue;
      const double nd = dist[v] + edge.cost;
      if (nd < dist[edge.to]) {
        dist[edge.to] = nd;
        if (!queued[edge.to]) {
          queued[edge.to] = 1;
          queue.push_back(edge.to);
        }
      }
    }
  }
  for (int v = 0; v < n; ++v) potential_[v] = dist[v] < kInf ? dist[v] : 0.0;
}

std::optional<double> SuccessiveShortestPaths::augment(double cost_limit) {
  const int n = net_->num_nodes;
  const int sink = net_->sink;
  dist_.assign(n, kInf);
  via_.assign(n, -1);
  done_.assign(n, 0);
  // (distance, node): equal distances settle the lower node index first,
  // so the chosen path is a deterministic function of the input.
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist_[net_->source] = 0.0;
  heap.emplace(0.0, net_->source);
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (done_[v]) continue;
    done_[v] = 1;
    if (v == sink) break;
    for (int e : adjacency_[v]) {
      const Edge& edge = edges_[e];
      if (edge.residual <= 0 || done_[edge.to]) continue;
      double reduced = edge.cost + potential_[v] - potential_[edge.to];
      if (reduced < 0.0) reduced = 0.0;  // rounding residue only
      const double nd = d + reduced;
      if (nd < dist_[edge.to]) {
        dist_[edge.to] = nd;
        via_[edge.to] = e;
        heap.emplace(nd, edge.to);
      }
    }
  }
  if (!done_[sink]) return std::nullopt;
  const auto& dist = dist_;
  const auto& via = via_;

  // Shortest distances (capped at the sink's) keep every residual reduced
  // cost non-negative, with or without the augmentation below.
  // Nodes left unsettled have distance >= dist[sink].
  for (int v = 0; v < n; ++v) potential_[v] += done_[v] ? dist[v] : dist[sink];

  double path_cost = 0.0;
  for (int v = sink; v != net_->source; v = edges_[via[v] ^ 1].to) {
    path_cost += edges_[via[v]].cost;
  }
  if (total_cost_ + path_cost > cost_limit) return std::nullopt;
  for (int v = sink; v != net_->source; v = edges_[via[v] ^ 1].to) {
    edges_[via[v]].residual -= 1;
    edges_[via[v] ^ 1].residual += 1;
  }
  ++flow_value_;
  total_cost_ += path_cost;
  return path_cost;
}

int SuccessiveShortestPaths::flow_on(std::size_t arc_index) const {
  // The reverse edge's residual equals the flow pushed on the forward arc.
  return edges_[2 * arc_index + 1].residual;
}

std::vector<ScheduleEntry> min_cost_flow_schedule(const FlowNetwork& net) {
  SuccessiveShortestPaths ssp(net);
  std::vector<ScheduleEntry> schedule;
  while (auto cost = ssp.augment()) {
    schedule.push_back({ssp.flow_value(), *cost, ssp.total_cost()});
  }
  return schedule;
}

}  // namespace taskassign
