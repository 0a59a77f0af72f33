#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "taskassign/harness.h"
#include "taskassign/offline.h"
#include "test_support.h"

using namespace taskassign;
using namespace taskassign::testing;

TEST_CASE("ratios") {
  CHECK(ratio_of(0, 0) == 1.0);
  CHECK(ratio_of(3, 0) == std::numeric_limits<double>::infinity());
  CHECK(ratio_of(4, 2) == 2.0);
  const Instance toy = toy_instance();
  CHECK(competitive_ratio(toy, greedy_homogeneous(toy)) == 2.0);
  CHECK(competitive_ratio(toy, offline_optimal(toy).assignment) == 1.0);
  CHECK_THROWS_AS(competitive_ratio(toy, Assignment{{{0, 0, 0.5}}}), std::invalid_argument);
  CHECK(oha_ratio_bound(4, 8) ==
        doctest::Approx(std::sqrt(4.0 * std::numbers::e) * (std::log(4.0) + 3.0)));
  CHECK(rpa_ratio_bound(0.5) == doctest::Approx(36.0));
}

TEST_CASE("expected inverse ratio") {
  const LowerBoundFamily fam = gen_lower_bound_family(0.5, 4, 8);
  CHECK(expected_inverse_ratio(fam, {{1, 0, 0}}) == doctest::Approx(0.45));
  CHECK(expected_inverse_ratio(fam, {{0, 0, 1}}) == doctest::Approx(0.6));
  CHECK(expected_inverse_ratio(fam, {{0, 0, 0}}) == 0.0);
  CHECK(lower_bound_value(0.5, 2) == doctest::Approx(0.6));
  CHECK_THROWS_AS(expected_inverse_ratio(fam, {{1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(expected_inverse_ratio(fam, {{0.6, 0.6, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(expected_inverse_ratio(fam, {{-0.1, 0, 0}}), std::invalid_argument);
}

TEST_CASE("expected inverse ratio never exceeds the bound on random strategies") {
  Rng rng(17);
  for (double eta : {0.1, 0.3, 0.7}) {
    const LowerBoundFamily fam = gen_lower_bound_family(eta, 64, 64);
    const double bound = lower_bound_value(eta, fam.k);
    for (int s = 0; s < 500; ++s) {
      StrategyVector f;
      double total = 0.0;
      for (int u = 0; u <= fam.k; ++u) {
        f.fractions.push_back(rng.uniform01());
        total += f.fractions.back();
      }
      const double scale = rng.uniform01() / total;
      for (double& v : f.fractions) v *= scale;
      CHECK(expected_inverse_ratio(fam, f) <= bound + kLowerBoundTolerance);
    }
  }
}

TEST_CASE("verify_lower_bound") {
  CHECK(verify_lower_bound({0.5}, {4}, 0, 1).rows.empty());
  const LowerBoundReport report = verify_lower_bound({0.25, 0.5}, {4, 16}, 200, 3);
  CHECK(report.ok());
  CHECK(report.rows.size() == 4);
  for (const LowerBoundRow& row : report.rows) {
    CHECK(row.max_value <= row.bound + kLowerBoundTolerance);
    CHECK(std::abs(row.concentrated_value - row.bound) <= kLowerBoundTolerance);
  }
  CHECK(report.csv() == verify_lower_bound({0.25, 0.5}, {4, 16}, 200, 3).csv());
}

TEST_CASE("helpers") {
  CHECK(powers_of_two(16) == std::vector<std::uint64_t>{2, 4, 8, 16});
  CHECK(int_range(2, 5) == std::vector<int>{2, 3, 4, 5});
}

TEST_CASE("adversarial experiment is schedule independent") {
  AdversarialOptions opts;
  opts.r_values = powers_of_two(32);
  opts.trials = 10;
  opts.base_seed = 11;
  const ExperimentReport serial = run_adversarial_experiment(opts);
  opts.threads = 3;
  const ExperimentReport parallel = run_adversarial_experiment(opts);
  CHECK(serial.ok());
  CHECK(serial.csv() == parallel.csv());
  CHECK(serial.csv().rfind(std::string(kSummaryCsvHeader) + "\n", 0) == 0);
  // OHA arrival, OHA permuted, RPA permuted per R.
  CHECK(serial.rows.size() == 5 * 3);
  CHECK(serial.records.size() == 5 * 3 * 10);
  for (const SummaryRow& row : serial.rows) {
    CHECK(row.trials == 10);
    if (row.algorithm == "OHA") CHECK(row.within_bound == row.trials);
  }
}

TEST_CASE("uniform experiment is schedule independent") {
  UniformOptions opts;
  opts.r_values = {2, 10};
  opts.trials = 3;
  opts.base_seed = 5;
  const ExperimentReport serial = run_uniform_experiment(opts);
  opts.threads = 2;
  const ExperimentReport parallel = run_uniform_experiment(opts);
  CHECK(serial.ok());
  CHECK(serial.csv() == parallel.csv());
  CHECK(serial.rows.size() == 2 * 2);
}
