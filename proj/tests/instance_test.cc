#include <cmath>
#include <cstring>

#include "doctest.h"
#include "taskassign/instance.h"
#include "test_support.h"

using namespace taskassign;
using taskassign::testing::toy_instance;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const InstanceError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parse: empty worker sequence") {
  const Instance inst =
      parse_instance(R"({"budget": 5, "num_tasks": 1, "bid_ceiling": 2, "workers": []})");
  CHECK(inst.workers.empty());
  CHECK(inst.num_tasks == 1);
  CHECK(inst.budget == 5.0);
  CHECK(inst.bid_ceiling == 2.0);
}

TEST_CASE("parse: two-worker toy") {
  const Instance inst = parse_instance(R"({
    "budget": 2.5, "num_tasks": 2, "bid_ceiling": 2.5,
    "workers": [{"id": 0, "bids": {"0": 1, "1": 1.25}},
                {"id": 1, "bids": {"1": 1.75, "0": 1.125}}]})");
  CHECK(inst.workers.size() == 2);
  CHECK(inst.num_tasks == 2);
  CHECK(inst == toy_instance());
  CHECK(*inst.workers[1].bid_for(0, 2) == 1.125);
}

TEST_CASE("parse: invariant violations name the offender") {
  SUBCASE("bid below 1") {
    const auto msg = error_of(
        R"({"budget": 5, "num_tasks": 2, "bid_ceiling": 2, "workers": [{"id": 0, "bids": {"1": 0.5}}]})");
    CHECK(msg.find("bid below 1") != std::string::npos);
    CHECK(msg.find("worker 0") != std::string::npos);
    CHECK(msg.find("task 1") != std::string::npos);
  }
  SUBCASE("bid above ceiling") {
    const auto msg = error_of(
        R"({"budget": 5, "num_tasks": 2, "bid_ceiling": 2, "workers": [{"id": 0, "bids": {"0": 2.5}}]})");
    CHECK(msg.find("bid above ceiling") != std::string::npos);
  }
  SUBCASE("duplicate task key") {
    const auto msg = error_of(
        R"({"budget": 5, "num_tasks": 2, "bid_ceiling": 2, "workers": [
              {"id": 0, "bids": {"0": 1}},
              {"id": 1, "bids": {"1": 1, "1": 2}}]})");
    CHECK(msg.find("duplicate task key") != std::string::npos);
    CHECK(msg.find("worker 1") != std::string::npos);
    CHECK(msg.find("task 1") != std::string::npos);
  }
  SUBCASE("R > B") {
    const auto msg =
        error_of(R"({"budget": 1, "num_tasks": 1, "bid_ceiling": 2, "workers": []})");
    CHECK(msg.find("R > B") != std::string::npos);
  }
  SUBCASE("task out of range") {
    const auto msg = error_of(
        R"({"budget": 5, "num_tasks": 2, "bid_ceiling": 2, "workers": [{"id": 0, "bids": {"2": 1}}]})");
    CHECK(msg.find("out of range") != std::string::npos);
  }
  SUBCASE("worker id not its position") {
    const auto msg = error_of(
        R"({"budget": 5, "num_tasks": 2, "bid_ceiling": 2, "workers": [{"id": 3, "bids": {}}]})");
    CHECK(msg.find("arrival position") != std::string::npos);
  }
  SUBCASE("malformed") {
    CHECK(error_of("{").find("malformed") != std::string::npos);
    CHECK(error_of(R"({"budget": 5})").find("malformed") != std::string::npos);
    CHECK(error_of(R"({"budget": 5, "num_tasks": 1, "bid_ceiling": 2, "workers": [{"id": 0, "bids": {"x": 1}}]})")
              .find("not a non-negative integer") != std::string::npos);
  }
}

TEST_CASE("serialize: canonical empty document") {
  Instance inst;
  inst.num_tasks = 1;
  inst.budget = 5;
  inst.bid_ceiling = 2;
  CHECK(serialize_instance(inst) ==
        "{\"budget\":5.0,\"num_tasks\":1,\"bid_ceiling\":2.0,\"workers\":[]}\n");
  CHECK(parse_instance(serialize_instance(inst)) == inst);
}

TEST_CASE("serialize: toy and uniform workers round trip") {
  CHECK(parse_instance(serialize_instance(toy_instance())) == toy_instance());
  Instance inst;
  inst.num_tasks = 3;
  inst.budget = 8;
  inst.bid_ceiling = 4;
  inst.workers = {make_uniform_worker(0, 4.0), make_worker(1, {{2, 1.125}})};
  const std::string text = serialize_instance(inst);
  CHECK(text.find("\"uniform_bid\":4.0") != std::string::npos);
  CHECK(parse_instance(text) == inst);
}

TEST_CASE("property: parse(serialize(x)) == x bit for bit") {
  Rng rng(20240611);
  for (int trial = 0; trial < 1000; ++trial) {
    Instance inst;
    inst.num_tasks = static_cast<int>(rng.uniform_int(1, 12));
    inst.bid_ceiling = 1.0 + 99.0 * rng.uniform01();
    inst.budget = inst.bid_ceiling * (1.0 + 10.0 * rng.uniform01());
    const int n = static_cast<int>(rng.uniform_int(0, 10));
    for (int i = 0; i < n; ++i) {
      if (rng.uniform01() < 0.2) {
        inst.workers.push_back(
            make_uniform_worker(i, 1.0 + (inst.bid_ceiling - 1.0) * rng.uniform01()));
        continue;
      }
      std::vector<Bid> bids;
      for (int t = 0; t < inst.num_tasks; ++t) {
        if (rng.uniform01() < 0.5) {
          bids.push_back({t, 1.0 + (inst.bid_ceiling - 1.0) * rng.uniform01()});
        }
      }
      inst.workers.push_back(make_worker(i, std::move(bids)));
    }
    const Instance back = parse_instance(serialize_instance(inst));
    REQUIRE(back == inst);
    // operator== on doubles already implies bit equality for finite
    // non-zero values; spot-check the raw bits anyway.
    for (std::size_t i = 0; i < inst.workers.size(); ++i) {
      for (std::size_t k = 0; k < inst.workers[i].bids.size(); ++k) {
        const double a = inst.workers[i].bids[k].value;
        const double b = back.workers[i].bids[k].value;
        REQUIRE(std::memcmp(&a, &b, sizeof a) == 0);
      }
    }
  }
}

TEST_CASE("format_double is shortest round trip") {
  CHECK(format_double(1.125) == "1.125");
  CHECK(format_double(0.1) == "0.1");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("validate_assignment") {
  const Instance inst = toy_instance();
  CHECK(validate_assignment(inst, {}).ok());

  Assignment good{{{1, 0, 1.125}, {0, 1, 1.25}}};
  CHECK(validate_assignment(inst, good).ok());
  CHECK(good.total_payment() == 2.375);

  SUBCASE("payment below bid") {
    Assignment a{{{1, 0, 1.0}, {0, 1, 1.25}}};
    const auto r = validate_assignment(inst, a);
    CHECK_FALSE(r.ok());
    CHECK(r.has(ViolationKind::kPaymentBelowBid));
    CHECK(r.summary().find("payment below bid") != std::string::npos);
  }
  SUBCASE("duplicate worker and task") {
    Assignment a{{{0, 0, 1.0}, {0, 0, 1.0}}};
    const auto r = validate_assignment(inst, a);
    CHECK(r.has(ViolationKind::kDuplicateWorker));
    CHECK(r.has(ViolationKind::kDuplicateTask));
  }
  SUBCASE("infeasible task") {
    Instance sparse = inst;
    sparse.workers[0] = make_worker(0, {{1, 1.25}});
    const auto r = validate_assignment(sparse, Assignment{{{0, 0, 2.0}}});
    CHECK(r.has(ViolationKind::kInfeasibleTask));
  }
  SUBCASE("over budget, with tolerance") {
    Instance tight = inst;
    tight.budget = 2.375 - 1e-10;
    CHECK(validate_assignment(tight, good).ok());
    tight.budget = 2.37;
    CHECK(validate_assignment(tight, good).has(ViolationKind::kOverBudget));
  }
  SUBCASE("unknown ids") {
    const auto r = validate_assignment(inst, Assignment{{{5, 0, 1.0}, {0, 9, 1.0}}});
    CHECK(r.has(ViolationKind::kUnknownWorker));
    CHECK(r.has(ViolationKind::kUnknownTask));
  }
}

TEST_CASE("permute and slice renumber workers") {
  const Instance inst = toy_instance();
  const std::vector<std::size_t> order{1, 0};
  const Instance p = permute_workers(inst, order);
  CHECK(p.workers[0].id == 0);
  CHECK(p.workers[0].bids == inst.workers[1].bids);
  check_instance(p);
  const Instance s = slice_workers(inst, 1, 1);
  CHECK(s.workers.size() == 1);
  CHECK(s.workers[0].id == 0);
  const std::vector<std::size_t> bad{0, 0};
  CHECK_THROWS_AS(permute_workers(inst, bad), std::invalid_argument);
}
