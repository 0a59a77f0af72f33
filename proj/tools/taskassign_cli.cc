// Command-line front end: offline solvers, threshold policies, online
// algorithms, instance generation and experiment sweeps.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "taskassign/generators.h"
#include "taskassign/harness.h"
#include "taskassign/instance.h"
#include "taskassign/offline.h"
#include "taskassign/online.h"
#include "taskassign/threshold.h"

namespace ta = taskassign;
using nlohmann::ordered_json;

namespace {

ta::Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open instance file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return ta::parse_instance(buf.str());
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

ordered_json pairs_json(const ta::Assignment& a) {
  ordered_json pairs = ordered_json::array();
  for (const auto& p : a.pairs) {
    pairs.push_back({{"worker", p.worker}, {"task", p.task}, {"payment", p.payment}});
  }
  return pairs;
}

// Every algorithm's output is validated before it is reported.
void require_valid(const ta::Instance& inst, const ta::Assignment& a) {
  const auto report = ta::validate_assignment(inst, a);
  if (!report.ok()) throw std::runtime_error("invalid assignment: " + report.summary());
}

unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Budgeted online assignment of heterogeneous tasks"};
  app.require_subcommand(1);

  // solve-offline
  auto* solve = app.add_subcommand("solve-offline", "Offline optimum or greedy baseline");
  std::string solve_path;
  std::string solve_alg = "flow";
  solve->add_option("--instance", solve_path, "Instance JSON")->required();
  solve->add_option("--algorithm", solve_alg, "flow | brute | greedy")
      ->check(CLI::IsMember({"flow", "brute", "greedy"}));

  // run-threshold
  auto* threshold = app.add_subcommand("run-threshold", "Fixed-threshold policy or its search");
  std::string thr_path;
  std::string thr_policy;
  double thr_price = 0.0;
  threshold->add_option("--instance", thr_path, "Instance JSON")->required();
  threshold->add_option("--policy", thr_policy, "ftp | oa")
      ->required()
      ->check(CLI::IsMember({"ftp", "oa"}));
  auto* price_opt = threshold->add_option("--price", thr_price, "Threshold price for ftp");

  // run-online
  auto* online = app.add_subcommand("run-online", "Online algorithms");
  std::string on_path;
  std::string on_alg;
  double on_alpha = 0.5;
  std::string on_budget = "half";
  std::string on_payment = "bid";
  online->add_option("--instance", on_path, "Instance JSON")->required();
  online->add_option("--algorithm", on_alg, "oha | rpa")
      ->required()
      ->check(CLI::IsMember({"oha", "rpa"}));
  online->add_option("--alpha", on_alpha, "RPA price inflation in (0,1)");
  online->add_option("--budget-mode", on_budget, "RPA second-half budget: half | full")
      ->check(CLI::IsMember({"half", "full"}));
  online->add_option("--payment", on_payment, "bid | threshold")
      ->check(CLI::IsMember({"bid", "threshold"}));

  // gen-instance
  auto* gen = app.add_subcommand("gen-instance", "Write a generated instance as JSON");
  std::string gen_family;
  double gen_r = 0.0;
  double gen_eta = 0.5;
  double gen_b = 0.0;
  int gen_u = -1;
  int gen_depth = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out = "-";
  gen->add_option("--family", gen_family, "adversarial | uniform | lowerbound")
      ->required()
      ->check(CLI::IsMember({"adversarial", "uniform", "lowerbound"}));
  gen->add_option("--R", gen_r, "Bid ceiling")->required();
  gen->add_option("--eta", gen_eta, "lowerbound: geometric step in (0,1)");
  gen->add_option("--B", gen_b, "lowerbound: budget (default R)");
  gen->add_option("--u", gen_u, "lowerbound: instance index (default k)");
  gen->add_option("--depth", gen_depth, "adversarial: fixed drop depth instead of a seeded draw");
  gen->add_option("--seed", gen_seed, "Seed")->required();
  gen->add_option("--out", gen_out, "Output path ('-' for stdout)");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Seeded multi-trial sweeps");
  experiment->require_subcommand(1);

  auto* exp_adv = experiment->add_subcommand("adversarial", "Adversarial homogeneous sweep");
  std::uint64_t adv_rmax = 4096;
  int adv_trials = 200;
  std::uint64_t adv_seed = 0;
  std::string adv_out = "-";
  double adv_alpha = 0.5;
  unsigned adv_threads = default_threads();
  exp_adv->add_option("--R-max", adv_rmax, "Largest R (power of two)");
  exp_adv->add_option("--trials", adv_trials, "Trials per R")->check(CLI::PositiveNumber);
  exp_adv->add_option("--seed", adv_seed, "Base seed");
  exp_adv->add_option("--out", adv_out, "CSV path ('-' for stdout)");
  exp_adv->add_option("--alpha", adv_alpha, "RPA alpha");
  exp_adv->add_option("--threads", adv_threads, "Worker threads");

  auto* exp_uni = experiment->add_subcommand("uniform", "Uniform heterogeneous sweep");
  int uni_rmin = 2;
  int uni_rmax = 50;
  int uni_trials = 80;
  double uni_alpha = 0.5;
  std::uint64_t uni_seed = 0;
  std::string uni_out = "-";
  unsigned uni_threads = default_threads();
  exp_uni->add_option("--R-min", uni_rmin, "Smallest R");
  exp_uni->add_option("--R-max", uni_rmax, "Largest R");
  exp_uni->add_option("--trials", uni_trials, "Trials per R")->check(CLI::PositiveNumber);
  exp_uni->add_option("--alpha", uni_alpha, "RPA alpha");
  exp_uni->add_option("--seed", uni_seed, "Base seed");
  exp_uni->add_option("--out", uni_out, "CSV path ('-' for stdout)");
  exp_uni->add_option("--threads", uni_threads, "Worker threads");

  auto* exp_lb = experiment->add_subcommand("lowerbound", "Check the hard-family bound");
  std::vector<double> lb_eta{0.5};
  std::vector<double> lb_r{4};
  int lb_samples = 1000;
  std::uint64_t lb_seed = 0;
  std::string lb_out = "-";
  exp_lb->add_option("--eta", lb_eta, "eta values")->delimiter(',');
  exp_lb->add_option("--R", lb_r, "R values")->delimiter(',');
  exp_lb->add_option("--samples", lb_samples, "Strategies per (eta, R)");
  exp_lb->add_option("--seed", lb_seed, "Base seed");
  exp_lb->add_option("--out", lb_out, "CSV path ('-' for stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      const ta::Instance inst = load_instance(solve_path);
      ta::Assignment a;
      if (solve_alg == "flow") {
        a = ta::offline_optimal(inst).assignment;
      } else if (solve_alg == "brute") {
        a = ta::brute_force_optimal(inst).assignment;
      } else {
        a = ta::greedy_homogeneous(inst);
      }
      require_valid(inst, a);
      ordered_json out;
      out["algorithm"] = solve_alg;
      out["F"] = a.size();
      out["total_cost"] = a.total_payment();
      out["assignment"] = pairs_json(a);
      std::cout << out.dump() << '\n';
      return 0;
    }

    if (*threshold) {
      const ta::Instance inst = load_instance(thr_path);
      const auto tasks = ta::all_tasks(inst.num_tasks);
      ordered_json out;
      out["policy"] = thr_policy;
      if (thr_policy == "ftp") {
        if (price_opt->count() == 0) throw std::runtime_error("--policy ftp needs --price");
        const auto a = ta::ftp(thr_price, inst.budget, inst.workers, inst.num_tasks, tasks);
        require_valid(inst, a);
        out["Q"] = a.size();
        out["p_star"] = a.empty() ? 0.0 : inst.budget / static_cast<double>(a.size());
        out["assignment"] = pairs_json(a);
      } else {
        const auto r = ta::oa(inst.workers, inst.num_tasks, tasks, inst.budget);
        require_valid(inst, r.assignment);
        out["Q"] = r.pairs;
        out["p_star"] = r.price;
        out["threshold"] = r.best_threshold;
        out["assignment"] = pairs_json(r.assignment);
      }
      std::cout << out.dump() << '\n';
      return 0;
    }

    if (*online) {
      const ta::Instance inst = load_instance(on_path);
      const auto mode =
          on_payment == "bid" ? ta::PaymentMode::kBid : ta::PaymentMode::kThreshold;
      ta::Assignment a;
      std::optional<ta::RpaResult> run;
      if (on_alg == "oha") {
        a = ta::oha(inst, mode);
      } else {
        const ta::RpaConfig cfg{
            on_alpha, on_budget == "half" ? ta::BudgetMode::kHalf : ta::BudgetMode::kFull,
            mode};
        const auto tasks = ta::all_tasks(inst.num_tasks);
        run = ta::rpa_run(inst.workers, inst.num_tasks, tasks, inst.budget, cfg);
        a = run->assignment;
      }
      require_valid(inst, a);
      ordered_json out;
      out["algorithm"] = on_alg;
      out["pairs"] = a.size();
      out["spend"] = a.total_payment();
      if (run) {
        out["observed"] = run->observed;
        out["estimated_price"] = run->estimated_price;
        out["threshold"] = run->threshold;
      }
      out["assignment"] = pairs_json(a);
      std::cout << out.dump() << '\n';
      return 0;
    }

    if (*gen) {
      ta::Instance inst;
      if (gen_family == "adversarial") {
        if (gen_r < 2 || gen_r != std::floor(gen_r)) {
          throw std::runtime_error("adversarial --R must be a power of two");
        }
        const auto r = static_cast<std::uint64_t>(gen_r);
        inst = gen_depth > 0 ? ta::adversarial_instance(r, gen_depth)
                             : ta::gen_adversarial(r, ta::Seed{gen_seed});
      } else if (gen_family == "uniform") {
        if (gen_r != std::floor(gen_r)) throw std::runtime_error("uniform --R must be an integer");
        if (gen_r > ta::kUniformHeteroMaxR) {
          std::cerr << "warning: R=" << gen_r << " is outside the usual range [2, "
                    << ta::kUniformHeteroMaxR << "]\n";
        }
        inst = ta::gen_uniform_hetero(static_cast<int>(gen_r), ta::Seed{gen_seed});
      } else {
        const double b = gen_b > 0.0 ? gen_b : gen_r;
        const auto fam = ta::gen_lower_bound_family(gen_eta, gen_r, b);
        inst = fam.instance(gen_u >= 0 ? gen_u : fam.k);
      }
      write_text(gen_out, ta::serialize_instance(inst));
      return 0;
    }

    if (*exp_adv) {
      ta::AdversarialOptions opts;
      opts.r_values = ta::powers_of_two(adv_rmax);
      opts.trials = adv_trials;
      opts.base_seed = adv_seed;
      opts.alpha = adv_alpha;
      opts.threads = adv_threads;
      const auto report = ta::run_adversarial_experiment(opts);
      write_text(adv_out, report.csv());
      for (const auto& v : report.violations) std::cerr << "violation: " << v << '\n';
      return report.ok() ? 0 : 2;
    }

    if (*exp_uni) {
      ta::UniformOptions opts;
      opts.r_values = ta::int_range(uni_rmin, uni_rmax);
      opts.trials = uni_trials;
      opts.alpha = uni_alpha;
      opts.base_seed = uni_seed;
      opts.threads = uni_threads;
      const auto report = ta::run_uniform_experiment(opts);
      write_text(uni_out, report.csv());
      for (const auto& v : report.violations) std::cerr << "violation: " << v << '\n';
      return report.ok() ? 0 : 2;
    }

    if (*exp_lb) {
      const auto report = ta::verify_lower_bound(lb_eta, lb_r, lb_samples, lb_seed);
      write_text(lb_out, report.csv());
      for (const auto& row : report.rows) {
        for (const auto& v : row.violations) std::cerr << "violation: " << v << '\n';
      }
      return report.ok() ? 0 : 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
