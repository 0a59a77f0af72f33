#include <cmath>
#include <numbers>
#include <numeric>

#include "doctest.h"
#include "taskassign/generators.h"
#include "taskassign/offline.h"
#include "taskassign/online.h"
#include "test_support.h"

using namespace taskassign;
using namespace taskassign::testing;

namespace {

// Straight-line OHA written from the definition in log form: accept bid b at
// fraction x iff ln b <= min((1 - x)(1 + ln R), ln R) and b <= f.
std::vector<WorkerId> reference_oha_trace(const Instance& inst) {
  const double log_r = std::log(inst.bid_ceiling);
  std::vector<char> taken(static_cast<std::size_t>(inst.num_tasks), 0);
  double spent = 0.0;
  std::vector<WorkerId> accepted;
  for (const Worker& w : inst.workers) {
    const double x = std::min(spent / inst.budget, 1.0);
    const double f = inst.budget - spent;
    if (f <= 0.0) break;
    const double log_price = std::min((1.0 - x) * (1.0 + log_r), log_r);
    int best = -1;
    double best_bid = 0.0;
    for (int t = 0; t < inst.num_tasks; ++t) {
      if (taken[t]) continue;
      const auto b = w.bid_for(t, inst.num_tasks);
      if (!b || std::log(*b) > log_price || *b > f + kBudgetTolerance) continue;
      if (best < 0 || *b < best_bid) {
        best = t;
        best_bid = *b;
      }
    }
    if (best < 0) continue;
    taken[best] = 1;
    spent += best_bid;
    accepted.push_back(w.id);
  }
  return accepted;
}

std::vector<WorkerId> workers_of(const Assignment& a) {
  std::vector<WorkerId> ids;
  for (const AssignedPair& p : a.pairs) ids.push_back(p.worker);
  return ids;
}

}  // namespace

TEST_CASE("potential_phi examples") {
  CHECK(potential_phi(0.0, 4.0) == 4.0);
  CHECK(potential_phi(1.0, 4.0) == 1.0);
  CHECK(potential_phi(0.0, 1.0) == 1.0);
  CHECK(potential_phi(0.5, 4.0) == doctest::Approx(std::sqrt(4.0 * std::numbers::e)));
  const double knee = 1.0 / (1.0 + std::log(4.0));
  CHECK(potential_phi(knee, 4.0) == 4.0);
  CHECK(potential_phi(knee * 0.5, 4.0) == 4.0);
  CHECK_THROWS_AS(potential_phi(-0.1, 4.0), std::domain_error);
  CHECK_THROWS_AS(potential_phi(1.1, 4.0), std::domain_error);
  CHECK_THROWS_AS(potential_phi(0.5, 0.5), std::domain_error);
}

TEST_CASE("potential_phi properties") {
  for (double r : {1.0, 2.0, std::numbers::e, 10.0, 1000.0}) {
    double previous = potential_phi(0.0, r);
    for (int i = 1; i <= 1000; ++i) {
      const double x = i / 1000.0;
      const double v = potential_phi(x, r);
      CHECK(v <= previous);
      CHECK(v >= 1.0 - 1e-12);
      CHECK(v <= r);
      previous = v;
    }
  }
}

TEST_CASE("oha hand-traced example") {
  // R = 4, B = 8: accept 4 at x=0, reject 4 at x=0.5 (phi ~ 3.30), accept 2,
  // reject three 2s at x=0.75 (phi ~ 1.82), accept two 1s, then out of budget.
  std::vector<double> bids{4, 4, 2, 2, 2, 2};
  bids.insert(bids.end(), 8, 1.0);
  Instance inst = homogeneous_instance(bids, 14, 8, true);
  inst.bid_ceiling = 4;
  const Assignment a = oha(inst);
  CHECK(workers_of(a) == std::vector<WorkerId>{0, 2, 6, 7});
  CHECK(a.total_payment() == 8.0);
  CHECK(reference_oha_trace(inst) == workers_of(a));
  CHECK(offline_optimal(inst).flow_value == 8);
  CHECK(8.0 / static_cast<double>(a.size()) == 2.0);
}

TEST_CASE("oha matches the reference simulator") {
  Rng rng(77);
  RandomSpec spec;
  spec.max_workers = 12;
  spec.max_tasks = 8;
  spec.min_budget = 5.0;
  spec.max_budget = 20.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Instance inst = random_instance(rng, spec);
    const Assignment a = oha(inst);
    REQUIRE(workers_of(a) == reference_oha_trace(inst));
    CHECK(validate_assignment(inst, a).ok());
  }
}

TEST_CASE("oha trace invariants") {
  Rng rng(78);
  RandomSpec spec;
  spec.max_workers = 12;
  spec.min_budget = 5.0;
  spec.max_budget = 20.0;
  for (int trial = 0; trial < 300; ++trial) {
    const Instance inst = random_instance(rng, spec);
    const auto tasks = all_tasks(inst.num_tasks);
    OnlineHeterogeneous alg(inst.budget, inst.bid_ceiling, inst.num_tasks, tasks);
    for (const Worker& w : inst.workers) {
      const double phi = potential_phi(std::min(alg.state().consumed, 1.0), inst.bid_ceiling);
      const double before = alg.state().remaining;
      const auto pair = alg.offer(w);
      if (pair) {
        CHECK(pair->payment <= phi);
        CHECK(pair->payment <= before + kBudgetTolerance);
      }
      CHECK(alg.state().remaining >= -kBudgetTolerance);
    }
  }
}

TEST_CASE("oha competitive bound on small instances") {
  Rng rng(79);
  RandomSpec spec;
  spec.min_budget = 5.0;
  spec.max_budget = 30.0;
  for (int trial = 0; trial < 500; ++trial) {
    const Instance inst = random_instance(rng, spec);
    const int opt = brute_force_optimal(inst).flow_value;
    const double bound = (std::pow(inst.bid_ceiling * std::numbers::e,
                                   inst.bid_ceiling / inst.budget)) *
                         (std::log(inst.bid_ceiling) + 3.0);
    CHECK(opt <= bound * static_cast<double>(oha(inst).size()) + 1e-9);
  }
}

TEST_CASE("oha pay-threshold mode") {
  // Single worker bidding 1 at x=0 with R=4: paid the offer, 4.
  Instance inst = homogeneous_instance({1, 1, 1}, 3, 8, true);
  inst.bid_ceiling = 4;
  const Assignment a = oha(inst, PaymentMode::kThreshold);
  REQUIRE(!a.empty());
  CHECK(a.pairs[0].payment == 4.0);
  CHECK(validate_assignment(inst, a).ok());
  CHECK(a.total_payment() <= inst.budget + kBudgetTolerance);
}

TEST_CASE("oha rejects bids outside [1, R]") {
  const auto tasks = all_tasks(2);
  OnlineHeterogeneous alg(10, 2, 2, tasks);
  const Worker w = make_worker(3, {{1, 2.5}});
  try {
    alg.offer(w);
    FAIL("expected InstanceError");
  } catch (const InstanceError& e) {
    CHECK(std::string(e.what()).find("worker 3") != std::string::npos);
  }
  CHECK_THROWS_AS(alg.offer(make_uniform_worker(0, 0.5)), InstanceError);
}

TEST_CASE("rpa examples") {
  SUBCASE("first half has nothing to offer") {
    Instance inst;
    inst.num_tasks = 2;
    inst.budget = 4;
    inst.bid_ceiling = 1;
    inst.workers = {make_worker(0, {}), make_worker(1, {{0, 1.0}})};
    const RpaResult r = rpa_run(inst.workers, 2, all_tasks(2), 4, {});
    CHECK(r.estimated_price == 0.0);
    CHECK(r.threshold == 0.0);
    CHECK(r.assignment.empty());
  }
  SUBCASE("eight unit bids, half mode") {
    const Instance inst = homogeneous_instance(std::vector<double>(8, 1.0), 8, 4, false);
    const RpaResult r = rpa_run(inst.workers, 8, all_tasks(8), 4, {});
    CHECK(r.observed == 4);
    CHECK(r.estimated_price == 1.0);
    CHECK(r.threshold == 1.5);
    CHECK(r.assignment.size() == 2);
    CHECK(validate_assignment(inst, r.assignment).ok());
  }
  SUBCASE("degenerate input") {
    const Instance inst = homogeneous_instance({1}, 1, 4, false);
    CHECK_THROWS_AS(rpa(inst, {}), std::invalid_argument);
    const Instance two = homogeneous_instance({1, 1}, 2, 4, false);
    CHECK_THROWS_AS(rpa(two, RpaConfig{1.0}), std::invalid_argument);
    CHECK_THROWS_AS(rpa(two, RpaConfig{0.0}), std::invalid_argument);
  }
}

TEST_CASE("rpa never assigns an observed worker") {
  Rng rng(80);
  RandomSpec spec;
  spec.max_workers = 12;
  for (int trial = 0; trial < 300; ++trial) {
    const Instance inst = random_instance(rng, spec);
    if (inst.workers.size() < 2) continue;
    for (BudgetMode mode : {BudgetMode::kHalf, BudgetMode::kFull}) {
      const RpaResult r =
          rpa_run(inst.workers, inst.num_tasks, all_tasks(inst.num_tasks), inst.budget,
                  RpaConfig{0.5, mode});
      for (const AssignedPair& p : r.assignment.pairs) {
        CHECK(static_cast<std::size_t>(p.worker) >= r.observed);
      }
      CHECK(validate_assignment(inst, r.assignment).ok());
    }
  }
}

TEST_CASE("rpa golden trace on a uniform instance") {
  const Instance inst = gen_uniform_hetero(10, Seed{0});
  const RpaResult r = rpa_run(inst.workers, inst.num_tasks, all_tasks(inst.num_tasks),
                              inst.budget, RpaConfig{0.5});
  CHECK(validate_assignment(inst, r.assignment).ok());
  CHECK(r.observed == 100);
  CHECK(r.estimated_price == 100.0 / 75.0);
  CHECK(r.threshold == 2.0);
  CHECK(r.assignment.size() == 72);
  CHECK(r.assignment.total_payment() == 95.0);
}

TEST_CASE("rpa price sandwich holds on most permutations") {
  const Instance base = gen_uniform_hetero(10, Seed{42});
  const auto tasks = all_tasks(base.num_tasks);
  const double alpha = 0.5;
  const double p = oa(base.workers, base.num_tasks, tasks, base.budget).price;
  REQUIRE(offline_optimal(base).flow_value >= 50);
  Rng rng(43);
  std::vector<std::size_t> order(base.workers.size());
  int held = 0;
  const int permutations = 200;
  for (int k = 0; k < permutations; ++k) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(order));
    const Instance perm = permute_workers(base, order);
    const RpaResult r = rpa_run(perm.workers, perm.num_tasks, tasks, perm.budget,
                                RpaConfig{alpha});
    const double inflated = (1.0 + alpha) * r.estimated_price;
    if (p <= inflated && inflated <= (1.0 + alpha) * p / (1.0 - alpha)) ++held;
  }
  CHECK(static_cast<double>(held) / permutations >= 0.9);
}
