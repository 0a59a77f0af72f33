#pragma once

// Experiment driver: competitive ratios, seeded multi-trial sweeps over the
// two generator families, and the lower-bound expected-ratio evaluator.

#include <cstdint>
#include <string>
#include <vector>

#include "taskassign/generators.h"
#include "taskassign/instance.h"
#include "taskassign/online.h"

namespace taskassign {

// opt / alg with 0/0 = 1 and opt / 0 = +inf.
double ratio_of(int opt_pairs, int alg_pairs);

// OPT(inst) / |a|. Throws std::invalid_argument when `a` does not validate.
double competitive_ratio(const Instance& inst, const Assignment& a);

// (R e)^eps (ln R + 3), eps = R / B.
double oha_ratio_bound(double bid_ceiling, double budget);

// 8 (1 + alpha)^2 / (1 - alpha).
double rpa_ratio_bound(double alpha);

struct TrialRecord {
  double bid_ceiling = 0.0;
  int trial = 0;
  std::uint64_t seed = 0;
  std::string algorithm;  // "OHA" | "RPA"
  std::string order;      // "arrival" | "permuted"
  int alg_pairs = 0;
  int opt_pairs = 0;
  double ratio = 1.0;     // +inf when alg_pairs == 0 < opt_pairs
};

struct SummaryRow {
  double bid_ceiling = 0.0;
  std::string algorithm;
  std::string order;
  double mean_ratio = 0.0;  // over finite ratios only
  int trials = 0;
  int inf_count = 0;
  double ln_r = 0.0;
  double theorem_bound = 0.0;
  int within_bound = 0;     // trials with ratio <= theorem_bound
};

struct ExperimentReport {
  std::vector<TrialRecord> records;  // sorted by (R, algorithm, order, trial)
  std::vector<SummaryRow> rows;
  // Failed validations and violated proven bounds. Any entry is a failure.
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
  std::string csv() const;
};

inline constexpr const char* kSummaryCsvHeader =
    "R,algorithm,order,mean_ratio,trials,inf_count,ln_R,theorem_bound,within_bound";

struct AdversarialOptions {
  std::vector<std::uint64_t> r_values;  // powers of two
  int trials = 200;
  std::uint64_t base_seed = 0;
  double alpha = 0.5;
  BudgetMode rpa_budget = BudgetMode::kFull;
  unsigned threads = 1;
};

// Per R and trial: generate an adversarial instance, run OHA on arrival
// order, then OHA and RPA on a uniformly permuted order. Asserts the OHA
// bound and OPT <= 4 * OA on every trial.
ExperimentReport run_adversarial_experiment(const AdversarialOptions& opts);

struct UniformOptions {
  std::vector<int> r_values;  // default sweep is 2..50
  int trials = 80;
  std::uint64_t base_seed = 0;
  double alpha = 0.5;
  BudgetMode rpa_budget = BudgetMode::kFull;
  unsigned threads = 1;
  UniformHeteroParams params;
};

// Per R and trial: generate a uniform heterogeneous instance, run OHA and
// RPA in generated order against the exact offline optimum. Asserts the OHA
// bound and OPT <= 4 * OA; RPA's bound is high-probability only and is
// reported through within_bound.
ExperimentReport run_uniform_experiment(const UniformOptions& opts);

std::vector<std::uint64_t> powers_of_two(std::uint64_t max_r);
std::vector<int> int_range(int lo, int hi);

// Fraction of budget spent at each bid level of the hard family.
struct StrategyVector {
  std::vector<double> fractions;  // f_0..f_k, non-negative, sum <= 1
};

// sum_u p_u sum_{v <= u} f_v (1 - eta)^(u - v). Throws
// std::invalid_argument on a dimension mismatch or an infeasible vector.
double expected_inverse_ratio(const LowerBoundFamily& fam, const StrategyVector& f);

// (1 + eta) / ((k + 1) eta + 1).
double lower_bound_value(double eta, int k);

inline constexpr double kLowerBoundTolerance = 1e-12;

struct LowerBoundRow {
  double eta = 0.0;
  double bid_ceiling = 0.0;
  int k = 0;
  int samples = 0;
  double max_value = 0.0;           // over sampled strategies
  double bound = 0.0;
  double concentrated_value = 0.0;  // strategy e_k
  std::vector<std::string> violations;
};

struct LowerBoundReport {
  std::vector<LowerBoundRow> rows;

  bool ok() const;
  std::string csv() const;
};

// For each (eta, R), samples strategies uniform on the simplex scaled by a
// uniform total in [0, 1] and checks each against the bound.
LowerBoundReport verify_lower_bound(const std::vector<double>& etas,
                                    const std::vector<double>& r_values, int samples,
                                    std::uint64_t base_seed);

}  // namespace taskassign
