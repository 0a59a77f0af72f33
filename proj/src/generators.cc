#include "taskassign/generators.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace taskassign {

namespace {

constexpr std::uint64_t kMaxAdversarialR = std::uint64_t{1} << 20;

int log2_ceiling(std::uint64_t bid_ceiling) {
  if (bid_ceiling < 2 || bid_ceiling > kMaxAdversarialR ||
      !std::has_single_bit(bid_ceiling)) {
    throw std::invalid_argument("adversarial R must be a power of two in [2, 2^20], got " +
                                std::to_string(bid_ceiling));
  }
  return std::countr_zero(bid_ceiling);
}

}  // namespace

Instance adversarial_instance(std::uint64_t bid_ceiling, int depth) {
  const int log_r = log2_ceiling(bid_ceiling);
  if (depth < 1 || depth > log_r) {
    throw std::invalid_argument("adversarial depth must lie in [1, log2 R]");
  }
  const double r = static_cast<double>(bid_ceiling);
  const std::size_t n = 8 * static_cast<std::size_t>(bid_ceiling);

  Instance inst;
  inst.budget = 2.0 * r;
  inst.bid_ceiling = r;
  inst.num_tasks = static_cast<int>(n);
  inst.workers.reserve(n);
  for (int j = 0; j <= depth; ++j) {
    // B * 2^j / R workers at bid R / 2^j.
    const std::size_t count = std::size_t{1} << (j + 1);
    const double bid = std::ldexp(r, -j);
    for (std::size_t c = 0; c < count; ++c) {
      inst.workers.push_back(
          make_uniform_worker(static_cast<WorkerId>(inst.workers.size()), bid));
    }
  }
  while (inst.workers.size() < n) {
    inst.workers.push_back(
        make_uniform_worker(static_cast<WorkerId>(inst.workers.size()), r));
  }
  return inst;
}

int adversarial_depth(std::uint64_t bid_ceiling, Seed seed) {
  const int log_r = log2_ceiling(bid_ceiling);
  Rng rng(seed);
  return static_cast<int>(rng.uniform_int(1, log_r));
}

Instance gen_adversarial(std::uint64_t bid_ceiling, Seed seed) {
  return adversarial_instance(bid_ceiling, adversarial_depth(bid_ceiling, seed));
}

Instance gen_uniform_hetero(int bid_ceiling, Seed seed, const UniformHeteroParams& params) {
  if (bid_ceiling < 2) throw std::invalid_argument("uniform R must be >= 2");
  if (bid_ceiling > params.budget) {
    throw std::invalid_argument("uniform R must not exceed the budget");
  }
  Rng rng(seed);
  Instance inst;
  inst.budget = params.budget;
  inst.bid_ceiling = bid_ceiling;
  inst.num_tasks = params.num_tasks;
  inst.workers.reserve(static_cast<std::size_t>(params.num_workers));
  for (WorkerId i = 0; i < params.num_workers; ++i) {
    Worker w;
    w.id = i;
    for (TaskId j = 0; j < params.num_tasks; ++j) {
      if (rng.uniform01() < params.edge_probability) {
        w.bids.push_back({j, static_cast<double>(rng.uniform_int(1, bid_ceiling))});
      }
    }
    inst.workers.push_back(std::move(w));
  }
  return inst;
}

int lower_bound_depth(double eta, double bid_ceiling) {
  if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("eta must lie in (0, 1)");
  if (!(bid_ceiling >= 1.0)) throw std::invalid_argument("R must be >= 1");
  int k = 0;
  while (std::pow(1.0 - eta, k) > 1.0 / bid_ceiling) ++k;
  return k;
}

std::vector<double> lower_bound_probs(double eta, int k) {
  const double denom = (k + 1) * eta + 1.0;
  std::vector<double> p(static_cast<std::size_t>(k) + 1, eta / denom);
  p.back() = (1.0 + eta) / denom;
  return p;
}

double LowerBoundFamily::bid_at(int u) const {
  return std::max(1.0, levels.at(static_cast<std::size_t>(u)));
}

Instance LowerBoundFamily::instance(int u) const {
  if (u < 0 || u > k) throw std::out_of_range("lower-bound instance index out of range");
  Instance inst;
  inst.budget = budget;
  inst.bid_ceiling = bid_ceiling;
  inst.num_tasks = static_cast<int>(length);
  inst.workers.reserve(length);
  for (int v = 0; v <= u; ++v) {
    const double bid = bid_at(v);
    for (std::size_t c = 0; c < group_sizes[v]; ++c) {
      inst.workers.push_back(
          make_uniform_worker(static_cast<WorkerId>(inst.workers.size()), bid));
    }
  }
  while (inst.workers.size() < length) {
    inst.workers.push_back(
        make_uniform_worker(static_cast<WorkerId>(inst.workers.size()), bid_ceiling));
  }
  return inst;
}

LowerBoundFamily gen_lower_bound_family(double eta, double bid_ceiling, double budget) {
  if (!(bid_ceiling >= 2.0)) throw std::invalid_argument("lower-bound R must be >= 2");
  if (!(budget >= bid_ceiling)) throw std::invalid_argument("lower-bound B must be >= R");
  LowerBoundFamily fam;
  fam.eta = eta;
  fam.bid_ceiling = bid_ceiling;
  fam.budget = budget;
  fam.k = lower_bound_depth(eta, bid_ceiling);
  fam.probs = lower_bound_probs(eta, fam.k);
  for (int u = 0; u <= fam.k; ++u) {
    const double level = bid_ceiling * std::pow(1.0 - eta, u);
    fam.levels.push_back(level);
    const double size = std::round(budget / level);
    fam.group_sizes.push_back(static_cast<std::size_t>(std::max(1.0, size)));
    fam.length += fam.group_sizes.back();
  }
  return fam;
}

}  // namespace taskassign
