#include "taskassign/instance.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <system_error>
#include <unordered_set>

#include "json.hpp"

namespace taskassign {

namespace {

std::string describe(const std::string& what, std::optional<WorkerId> worker,
                     std::optional<TaskId> task) {
  std::string out = what;
  if (worker) out += " (worker " + std::to_string(*worker) + ")";
  if (task) out += " (task " + std::to_string(*task) + ")";
  return out;
}

TaskId parse_task_key(const std::string& key, WorkerId worker) {
  TaskId task = -1;
  const char* first = key.data();
  const char* last = key.data() + key.size();
  auto [ptr, ec] = std::from_chars(first, last, task);
  if (key.empty() || ec != std::errc() || ptr != last || task < 0) {
    throw InstanceError("task key '" + key + "' is not a non-negative integer",
                        worker);
  }
  return task;
}

}  // namespace

InstanceError::InstanceError(const std::string& what,
                             std::optional<WorkerId> worker,
                             std::optional<TaskId> task)
    : std::runtime_error(describe(what, worker, task)),
      worker_(worker),
      task_(task) {}

std::optional<double> Worker::bid_for(TaskId task, int num_tasks) const {
  if (task < 0 || task >= num_tasks) return std::nullopt;
  if (uniform_bid) return uniform_bid;
  auto it = std::lower_bound(
      bids.begin(), bids.end(), task,
      [](const Bid& b, TaskId t) { return b.task < t; });
  if (it == bids.end() || it->task != task) return std::nullopt;
  return it->value;
}

std::optional<double> Worker::min_bid(int num_tasks) const {
  if (uniform_bid) {
    if (num_tasks <= 0) return std::nullopt;
    return uniform_bid;
  }
  if (bids.empty()) return std::nullopt;
  double best = bids.front().value;
  for (const Bid& b : bids) best = std::min(best, b.value);
  return best;
}

std::size_t Worker::feasible_count(int num_tasks) const {
  if (uniform_bid) return static_cast<std::size_t>(std::max(num_tasks, 0));
  return bids.size();
}

Worker make_worker(WorkerId id, std::vector<Bid> bids) {
  std::sort(bids.begin(), bids.end(),
            [](const Bid& a, const Bid& b) { return a.task < b.task; });
  Worker w;
  w.id = id;
  w.bids = std::move(bids);
  return w;
}

Worker make_uniform_worker(WorkerId id, double bid) {
  Worker w;
  w.id = id;
  w.uniform_bid = bid;
  return w;
}

bool Instance::is_homogeneous() const {
  return std::all_of(workers.begin(), workers.end(),
                     [](const Worker& w) { return w.is_uniform(); });
}

std::vector<double> Instance::distinct_bids() const {
  std::vector<double> values;
  for (const Worker& w : workers) {
    if (w.uniform_bid) {
      if (num_tasks > 0) values.push_back(*w.uniform_bid);
    } else {
      for (const Bid& b : w.bids) values.push_back(b.value);
    }
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

void check_instance(const Instance& inst, bool require_large_market) {
  if (inst.num_tasks <= 0) throw InstanceError("num_tasks must be positive");
  if (!(inst.budget > 0.0) || !std::isfinite(inst.budget)) {
    throw InstanceError("budget must be a positive finite number");
  }
  if (!(inst.bid_ceiling >= 1.0) || !std::isfinite(inst.bid_ceiling)) {
    throw InstanceError("bid_ceiling must be a finite number >= 1");
  }
  if (require_large_market && inst.bid_ceiling > inst.budget) {
    throw InstanceError("bid_ceiling exceeds budget (R > B)");
  }
  auto check_value = [&](double v, WorkerId w, std::optional<TaskId> t) {
    if (!std::isfinite(v)) throw InstanceError("bid is not finite", w, t);
    if (v < 1.0) throw InstanceError("bid below 1", w, t);
    if (v > inst.bid_ceiling) throw InstanceError("bid above ceiling", w, t);
  };
  for (std::size_t pos = 0; pos < inst.workers.size(); ++pos) {
    const Worker& w = inst.workers[pos];
    if (w.id != static_cast<WorkerId>(pos)) {
      throw InstanceError("worker id does not match arrival position", w.id);
    }
    if (w.uniform_bid) {
      if (!w.bids.empty()) {
        throw InstanceError("worker has both uniform and explicit bids", w.id);
      }
      check_value(*w.uniform_bid, w.id, std::nullopt);
      continue;
    }
    TaskId prev = -1;
    for (const Bid& b : w.bids) {
      if (b.task < 0 || b.task >= inst.num_tasks) {
        throw InstanceError("task id out of range", w.id, b.task);
      }
      if (b.task == prev) throw InstanceError("duplicate task key", w.id, b.task);
      if (b.task < prev) throw InstanceError("bids not sorted by task", w.id, b.task);
      prev = b.task;
      check_value(b.value, w.id, b.task);
    }
  }
}

Instance parse_instance(std::string_view text) {
  using nlohmann::json;

  // nlohmann keeps the last value of a repeated key, so duplicates are
  // caught while parsing. One key set per open object.
  std::vector<std::set<std::string>> open_objects;
  std::optional<std::string> duplicate;
  int worker_objects_closed = 0;
  std::optional<int> duplicate_worker;
  auto callback = [&](int depth, json::parse_event_t event, json& parsed) {
    switch (event) {
      case json::parse_event_t::object_start:
        open_objects.emplace_back();
        break;
      case json::parse_event_t::object_end:
        if (!open_objects.empty()) open_objects.pop_back();
        if (depth == 2) ++worker_objects_closed;
        break;
      case json::parse_event_t::key:
        if (!open_objects.empty() && !duplicate) {
          const auto& key = parsed.get_ref<const std::string&>();
          if (!open_objects.back().insert(key).second) {
            duplicate = key;
            if (depth >= 3) duplicate_worker = worker_objects_closed;
          }
        }
        break;
      default:
        break;
    }
    return true;
  };

  json doc;
  try {
    doc = json::parse(text.begin(), text.end(), callback);
  } catch (const json::exception& e) {
    throw InstanceError(std::string("malformed document: ") + e.what());
  }
  if (duplicate) {
    std::optional<TaskId> task;
    if (duplicate_worker) {
      TaskId t = -1;
      auto [ptr, ec] = std::from_chars(
          duplicate->data(), duplicate->data() + duplicate->size(), t);
      if (ec == std::errc() && ptr == duplicate->data() + duplicate->size()) task = t;
    }
    throw InstanceError("duplicate task key '" + *duplicate + "'",
                        duplicate_worker, task);
  }

  auto require = [&](const json& obj, const char* key) -> const json& {
    if (!obj.is_object() || !obj.contains(key)) {
      throw InstanceError(std::string("malformed document: missing '") + key + "'");
    }
    return obj.at(key);
  };
  auto number = [](const json& v, const char* what) {
    if (!v.is_number()) {
      throw InstanceError(std::string("malformed document: '") + what +
                          "' is not a number");
    }
    return v.get<double>();
  };

  Instance inst;
  inst.budget = number(require(doc, "budget"), "budget");
  const json& m = require(doc, "num_tasks");
  if (!m.is_number_integer()) {
    throw InstanceError("malformed document: 'num_tasks' is not an integer");
  }
  inst.num_tasks = m.get<int>();
  inst.bid_ceiling = number(require(doc, "bid_ceiling"), "bid_ceiling");
  const json& workers = require(doc, "workers");
  if (!workers.is_array()) {
    throw InstanceError("malformed document: 'workers' is not an array");
  }

  inst.workers.reserve(workers.size());
  for (std::size_t pos = 0; pos < workers.size(); ++pos) {
    const json& w = workers[pos];
    const json& id = require(w, "id");
    if (!id.is_number_integer()) {
      throw InstanceError("malformed document: worker id is not an integer");
    }
    const WorkerId wid = id.get<WorkerId>();
    if (w.contains("uniform_bid")) {
      if (w.contains("bids")) {
        throw InstanceError("worker has both 'bids' and 'uniform_bid'", wid);
      }
      inst.workers.push_back(
          make_uniform_worker(wid, number(w.at("uniform_bid"), "uniform_bid")));
      continue;
    }
    const json& bids = require(w, "bids");
    if (!bids.is_object()) {
      throw InstanceError("malformed document: 'bids' is not an object", wid);
    }
    std::vector<Bid> parsed;
    parsed.reserve(bids.size());
    for (auto it = bids.begin(); it != bids.end(); ++it) {
      const TaskId task = parse_task_key(it.key(), wid);
      if (!it.value().is_number()) {
        throw InstanceError("malformed document: bid is not a number", wid, task);
      }
      parsed.push_back({task, it.value().get<double>()});
    }
    std::sort(parsed.begin(), parsed.end(),
              [](const Bid& a, const Bid& b) { return a.task < b.task; });
    for (std::size_t k = 1; k < parsed.size(); ++k) {
      // "1" and "01" name the same task.
      if (parsed[k].task == parsed[k - 1].task) {
        throw InstanceError("duplicate task key", wid, parsed[k].task);
      }
    }
    Worker worker;
    worker.id = wid;
    worker.bids = std::move(parsed);
    inst.workers.push_back(std::move(worker));
  }

  check_instance(inst);
  return inst;
}

std::string serialize_instance(const Instance& inst) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["budget"] = inst.budget;
  doc["num_tasks"] = inst.num_tasks;
  doc["bid_ceiling"] = inst.bid_ceiling;
  ordered_json workers = ordered_json::array();
  for (const Worker& w : inst.workers) {
    ordered_json entry;
    entry["id"] = w.id;
    if (w.uniform_bid) {
      entry["uniform_bid"] = *w.uniform_bid;
    } else {
      ordered_json bids = ordered_json::object();
      for (const Bid& b : w.bids) bids[std::to_string(b.task)] = b.value;
      entry["bids"] = std::move(bids);
    }
    workers.push_back(std::move(entry));
  }
  doc["workers"] = std::move(workers);
  return doc.dump() + "\n";
}

Instance permute_workers(const Instance& inst, std::span<const std::size_t> order) {
  if (order.size() != inst.workers.size()) {
    throw std::invalid_argument("permutation length does not match worker count");
  }
  Instance out;
  out.num_tasks = inst.num_tasks;
  out.budget = inst.budget;
  out.bid_ceiling = inst.bid_ceiling;
  out.workers.reserve(order.size());
  std::vector<char> seen(order.size(), 0);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const std::size_t src = order[pos];
    if (src >= order.size() || seen[src]) {
      throw std::invalid_argument("order is not a permutation");
    }
    seen[src] = 1;
    Worker w = inst.workers[src];
    w.id = static_cast<WorkerId>(pos);
    out.workers.push_back(std::move(w));
  }
  return out;
}

Instance slice_workers(const Instance& inst, std::size_t first, std::size_t count) {
  if (first > inst.workers.size() || count > inst.workers.size() - first) {
    throw std::out_of_range("worker slice out of range");
  }
  Instance out;
  out.num_tasks = inst.num_tasks;
  out.budget = inst.budget;
  out.bid_ceiling = inst.bid_ceiling;
  out.workers.assign(inst.workers.begin() + static_cast<std::ptrdiff_t>(first),
                     inst.workers.begin() + static_cast<std::ptrdiff_t>(first + count));
  for (std::size_t k = 0; k < out.workers.size(); ++k) {
    out.workers[k].id = static_cast<WorkerId>(k);
  }
  return out;
}

double Assignment::total_payment() const {
  double total = 0.0;
  for (const AssignedPair& p : pairs) total += p.payment;
  return total;
}

Assignment Assignment::sorted() const {
  Assignment out = *this;
  std::sort(out.pairs.begin(), out.pairs.end(),
            [](const AssignedPair& a, const AssignedPair& b) {
              return a.worker != b.worker ? a.worker < b.worker : a.task < b.task;
            });
  return out;
}

bool ValidationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

std::string ValidationReport::summary() const {
  if (ok()) return "ok";
  std::string out;
  for (const Violation& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.message;
  }
  return out;
}

ValidationReport validate_assignment(const Instance& inst, const Assignment& a) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, std::string msg) {
    report.violations.push_back({kind, std::move(msg)});
  };
  std::unordered_set<WorkerId> workers;
  std::unordered_set<TaskId> tasks;
  for (const AssignedPair& p : a.pairs) {
    const std::string where =
        " (worker " + std::to_string(p.worker) + ", task " + std::to_string(p.task) + ")";
    if (!workers.insert(p.worker).second) {
      add(ViolationKind::kDuplicateWorker, "worker assigned twice" + where);
    }
    if (!tasks.insert(p.task).second) {
      add(ViolationKind::kDuplicateTask, "task assigned twice" + where);
    }
    if (!(p.payment > 0.0)) {
      add(ViolationKind::kNonPositivePayment, "payment not positive" + where);
    }
    if (p.worker < 0 || static_cast<std::size_t>(p.worker) >= inst.workers.size()) {
      add(ViolationKind::kUnknownWorker, "unknown worker" + where);
      continue;
    }
    if (p.task < 0 || p.task >= inst.num_tasks) {
      add(ViolationKind::kUnknownTask, "unknown task" + where);
      continue;
    }
    const auto bid = inst.workers[p.worker].bid_for(p.task, inst.num_tasks);
    if (!bid) {
      add(ViolationKind::kInfeasibleTask, "task infeasible for worker" + where);
      continue;
    }
    if (p.payment < *bid) {
      add(ViolationKind::kPaymentBelowBid, "payment below bid" + where);
    }
  }
  const double total = a.total_payment();
  if (total > inst.budget + kBudgetTolerance) {
    add(ViolationKind::kOverBudget, "total payment " + format_double(total) +
                                        " exceeds budget " + format_double(inst.budget));
  }
  return report;
}

std::string assignment_to_json(const Assignment& a) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
  for (const AssignedPair& p : a.pairs) {
    pairs.push_back({p.worker, p.task, p.payment});
  }
  doc["num_pairs"] = a.size();
  doc["total_payment"] = a.total_payment();
  doc["pairs"] = std::move(pairs);
  return doc.dump();
}

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

}  // namespace taskassign
