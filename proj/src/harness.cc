#include "taskassign/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "taskassign/offline.h"
#include "taskassign/threshold.h"

namespace taskassign {

double ratio_of(int opt_pairs, int alg_pairs) {
  if (alg_pairs == 0) {
    return opt_pairs == 0 ? 1.0 : std::numeric_limits<double>::infinity();
  }
  return static_cast<double>(opt_pairs) / alg_pairs;
}

double competitive_ratio(const Instance& inst, const Assignment& a) {
  const ValidationReport report = validate_assignment(inst, a);
  if (!report.ok()) {
    throw std::invalid_argument("competitive_ratio: invalid assignment: " + report.summary());
  }
  return ratio_of(offline_optimal(inst).flow_value, static_cast<int>(a.size()));
}

double oha_ratio_bound(double bid_ceiling, double budget) {
  const double eps = bid_ceiling / budget;
  return std::pow(bid_ceiling * std::numbers::e, eps) * (std::log(bid_ceiling) + 3.0);
}

double rpa_ratio_bound(double alpha) {
  return 8.0 * (1.0 + alpha) * (1.0 + alpha) / (1.0 - alpha);
}

std::vector<std::uint64_t> powers_of_two(std::uint64_t max_r) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t r = 2; r <= max_r && r != 0; r <<= 1) out.push_back(r);
  return out;
}

std::vector<int> int_range(int lo, int hi) {
  std::vector<int> out;
  for (int r = lo; r <= hi; ++r) out.push_back(r);
  return out;
}

namespace {

// Everything one trial contributes. Filled by a worker thread, read only
// after all threads join.
struct TrialOutcome {
  std::vector<TrialRecord> records;
  std::vector<std::string> violations;
};

// Runs job(i) for i in [0, count) on up to `threads` threads. The first
// exception thrown by any job is rethrown after all threads finish.
void run_jobs(std::size_t count, unsigned threads,
              const std::function<void(std::size_t)>& job) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::string trial_tag(double r, int trial, const std::string& what) {
  std::ostringstream os;
  os << "R=" << format_double(r) << " trial=" << trial << ": " << what;
  return os.str();
}

TrialRecord make_record(double r, int trial, std::uint64_t seed, const char* algorithm,
                        const char* order, const Instance& inst, const Assignment& a,
                        int opt, TrialOutcome& out) {
  const ValidationReport report = validate_assignment(inst, a);
  if (!report.ok()) {
    out.violations.push_back(
        trial_tag(r, trial, std::string(algorithm) + " invalid: " + report.summary()));
  }
  TrialRecord rec;
  rec.bid_ceiling = r;
  rec.trial = trial;
  rec.seed = seed;
  rec.algorithm = algorithm;
  rec.order = order;
  rec.alg_pairs = static_cast<int>(a.size());
  rec.opt_pairs = opt;
  rec.ratio = ratio_of(opt, rec.alg_pairs);
  return rec;
}

void check_proven_bounds(const Instance& inst, int opt, const TrialRecord& oha_rec,
                         TrialOutcome& out) {
  const double bound = oha_ratio_bound(inst.bid_ceiling, inst.budget);
  if (!(oha_rec.ratio <= bound)) {
    out.violations.push_back(trial_tag(
        inst.bid_ceiling, oha_rec.trial,
        "OHA ratio " + format_double(oha_rec.ratio) + " exceeds bound " + format_double(bound)));
  }
  const auto tasks = all_tasks(inst.num_tasks);
  const int q = oa(inst.workers, inst.num_tasks, tasks, inst.budget).pairs;
  if (opt > 4 * q) {
    out.violations.push_back(trial_tag(
        inst.bid_ceiling, oha_rec.trial,
        "OPT " + std::to_string(opt) + " exceeds 4 * OA " + std::to_string(q)));
  }
}

ExperimentReport aggregate(std::vector<TrialOutcome> outcomes,
                           const std::function<double(const TrialRecord&)>& bound_for) {
  ExperimentReport report;
  for (auto& o : outcomes) {
    for (auto& r : o.records) report.records.push_back(std::move(r));
    for (auto& v : o.violations) report.violations.push_back(std::move(v));
  }
  auto key = [](const TrialRecord& r) {
    return std::tie(r.bid_ceiling, r.algorithm, r.order, r.trial);
  };
  std::sort(report.records.begin(), report.records.end(),
            [&](const TrialRecord& a, const TrialRecord& b) { return key(a) < key(b); });

  for (std::size_t i = 0; i < report.records.size();) {
    const TrialRecord& head = report.records[i];
    SummaryRow row;
    row.bid_ceiling = head.bid_ceiling;
    row.algorithm = head.algorithm;
    row.order = head.order;
    row.ln_r = std::log(head.bid_ceiling);
    row.theorem_bound = bound_for(head);
    double sum = 0.0;
    int finite = 0;
    std::size_t j = i;
    for (; j < report.records.size() && report.records[j].bid_ceiling == head.bid_ceiling &&
           report.records[j].algorithm == head.algorithm &&
           report.records[j].order == head.order;
         ++j) {
      const TrialRecord& rec = report.records[j];
      ++row.trials;
      if (std::isinf(rec.ratio)) {
        ++row.inf_count;
      } else {
        sum += rec.ratio;
        ++finite;
      }
      if (rec.ratio <= row.theorem_bound) ++row.within_bound;
    }
    row.mean_ratio = finite > 0 ? sum / finite : std::numeric_limits<double>::infinity();
    report.rows.push_back(row);
    i = j;
  }
  return report;
}

}  // namespace

std::string ExperimentReport::csv() const {
  std::string out = kSummaryCsvHeader;
  out += '\n';
  for (const SummaryRow& r : rows) {
    out += format_double(r.bid_ceiling) + ',' + r.algorithm + ',' + r.order + ',' +
           format_double(r.mean_ratio) + ',' + std::to_string(r.trials) + ',' +
           std::to_string(r.inf_count) + ',' + format_double(r.ln_r) + ',' +
           format_double(r.theorem_bound) + ',' + std::to_string(r.within_bound) + '\n';
  }
  return out;
}

ExperimentReport run_adversarial_experiment(const AdversarialOptions& opts) {
  if (opts.trials < 1) throw std::invalid_argument("trials must be >= 1");
  const std::size_t per_r = static_cast<std::size_t>(opts.trials);
  std::vector<TrialOutcome> outcomes(opts.r_values.size() * per_r);
  const RpaConfig rpa_cfg{opts.alpha, opts.rpa_budget, PaymentMode::kBid};

  run_jobs(outcomes.size(), opts.threads, [&](std::size_t job) {
    const std::uint64_t r = opts.r_values[job / per_r];
    const int trial = static_cast<int>(job % per_r);
    const std::uint64_t seed = mix_seed(opts.base_seed, r, static_cast<std::uint64_t>(trial));
    TrialOutcome& out = outcomes[job];
    const double rd = static_cast<double>(r);

    const Instance inst = gen_adversarial(r, Seed{seed});
    // The offline optimum ignores arrival order, so one solve serves both.
    const int opt = offline_optimal(inst).flow_value;

    TrialRecord arrival =
        make_record(rd, trial, seed, "OHA", "arrival", inst, oha(inst), opt, out);
    check_proven_bounds(inst, opt, arrival, out);
    out.records.push_back(arrival);

    std::vector<std::size_t> order(inst.workers.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng shuffler(mix_seed(seed, 0x7065726d75746523ULL));
    shuffler.shuffle(std::span<std::size_t>(order));
    const Instance permuted = permute_workers(inst, order);

    TrialRecord oha_perm =
        make_record(rd, trial, seed, "OHA", "permuted", permuted, oha(permuted), opt, out);
    if (!(oha_perm.ratio <= oha_ratio_bound(rd, inst.budget))) {
      out.violations.push_back(trial_tag(rd, trial, "OHA (permuted) exceeds bound"));
    }
    out.records.push_back(oha_perm);
    out.records.push_back(make_record(rd, trial, seed, "RPA", "permuted", permuted,
                                      rpa(permuted, rpa_cfg), opt, out));
  });

  return aggregate(std::move(outcomes), [&](const TrialRecord& rec) {
    return rec.algorithm == "OHA" ? oha_ratio_bound(rec.bid_ceiling, 2.0 * rec.bid_ceiling)
                                  : rpa_ratio_bound(opts.alpha);
  });
}

ExperimentReport run_uniform_experiment(const UniformOptions& opts) {
  if (opts.trials < 1) throw std::invalid_argument("trials must be >= 1");
  const std::size_t per_r = static_cast<std::size_t>(opts.trials);
  std::vector<TrialOutcome> outcomes(opts.r_values.size() * per_r);
  const RpaConfig rpa_cfg{opts.alpha, opts.rpa_budget, PaymentMode::kBid};

  run_jobs(outcomes.size(), opts.threads, [&](std::size_t job) {
    const int r = opts.r_values[job / per_r];
    const int trial = static_cast<int>(job % per_r);
    const std::uint64_t seed =
        mix_seed(opts.base_seed, static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(trial));
    TrialOutcome& out = outcomes[job];
    const double rd = static_cast<double>(r);

    const Instance inst = gen_uniform_hetero(r, Seed{seed}, opts.params);
    const int opt = offline_optimal(inst).flow_value;

    TrialRecord oha_rec =
        make_record(rd, trial, seed, "OHA", "arrival", inst, oha(inst), opt, out);
    check_proven_bounds(inst, opt, oha_rec, out);
    out.records.push_back(oha_rec);
    out.records.push_back(
        make_record(rd, trial, seed, "RPA", "arrival", inst, rpa(inst, rpa_cfg), opt, out));
  });

  const double budget = opts.params.budget;
  return aggregate(std::move(outcomes), [&](const TrialRecord& rec) {
    return rec.algorithm == "OHA" ? oha_ratio_bound(rec.bid_ceiling, budget)
                                  : rpa_ratio_bound(opts.alpha);
  });
}

double expected_inverse_ratio(const LowerBoundFamily& fam, const StrategyVector& f) {
  const std::size_t levels = static_cast<std::size_t>(fam.k) + 1;
  if (f.fractions.size() != levels) {
    throw std::invalid_argument("strategy has " + std::to_string(f.fractions.size()) +
                                " entries, family needs " + std::to_string(levels));
  }
  double total = 0.0;
  for (double v : f.fractions) {
    if (!(v >= 0.0)) throw std::invalid_argument("strategy entries must be non-negative");
    total += v;
  }
  if (total > 1.0 + kLowerBoundTolerance) {
    throw std::invalid_argument("strategy spends more than the whole budget");
  }
  const double keep = 1.0 - fam.eta;
  double value = 0.0;
  for (std::size_t u = 0; u < levels; ++u) {
    double inner = 0.0;
    for (std::size_t v = 0; v <= u; ++v) {
      inner += f.fractions[v] * std::pow(keep, static_cast<double>(u - v));
    }
    value += fam.probs[u] * inner;
  }
  return value;
}

double lower_bound_value(double eta, int k) { return (1.0 + eta) / ((k + 1) * eta + 1.0); }

bool LowerBoundReport::ok() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const LowerBoundRow& r) { return r.violations.empty(); });
}

std::string LowerBoundReport::csv() const {
  std::string out = "eta,R,k,samples,max_value,bound,concentrated_value,violations\n";
  for (const LowerBoundRow& r : rows) {
    out += format_double(r.eta) + ',' + format_double(r.bid_ceiling) + ',' +
           std::to_string(r.k) + ',' + std::to_string(r.samples) + ',' +
           format_double(r.max_value) + ',' + format_double(r.bound) + ',' +
           format_double(r.concentrated_value) + ',' + std::to_string(r.violations.size()) +
           '\n';
  }
  return out;
}

LowerBoundReport verify_lower_bound(const std::vector<double>& etas,
                                    const std::vector<double>& r_values, int samples,
                                    std::uint64_t base_seed) {
  LowerBoundReport report;
  if (samples < 1) return report;
  for (std::size_t ei = 0; ei < etas.size(); ++ei) {
    for (std::size_t ri = 0; ri < r_values.size(); ++ri) {
      const double eta = etas[ei];
      const double r = r_values[ri];
      // B only sizes the instances, which the evaluator never materializes.
      const LowerBoundFamily fam = gen_lower_bound_family(eta, r, r);
      LowerBoundRow row;
      row.eta = eta;
      row.bid_ceiling = r;
      row.k = fam.k;
      row.samples = samples;
      row.bound = lower_bound_value(eta, fam.k);

      StrategyVector concentrated{std::vector<double>(fam.k + 1, 0.0)};
      concentrated.fractions.back() = 1.0;
      row.concentrated_value = expected_inverse_ratio(fam, concentrated);

      Rng rng(mix_seed(base_seed, ei, ri));
      StrategyVector f{std::vector<double>(fam.k + 1, 0.0)};
      for (int s = 0; s < samples; ++s) {
        // Normalized exponential spacings are uniform on the simplex.
        double sum = 0.0;
        for (double& v : f.fractions) {
          v = -std::log1p(-rng.uniform01());
          sum += v;
        }
        const double scale = sum > 0.0 ? rng.uniform01() / sum : 0.0;
        for (double& v : f.fractions) v *= scale;
        const double value = expected_inverse_ratio(fam, f);
        row.max_value = std::max(row.max_value, value);
        if (value > row.bound + kLowerBoundTolerance) {
          std::ostringstream os;
          os << "eta=" << format_double(eta) << " R=" << format_double(r) << " f=(";
          for (std::size_t v = 0; v < f.fractions.size(); ++v) {
            os << (v ? "," : "") << format_double(f.fractions[v]);
          }
          os << ") value " << format_double(value) << " > bound " << format_double(row.bound);
          row.violations.push_back(os.str());
        }
      }
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace taskassign
