#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "grouptest/checks.hpp"
#include "grouptest/driver.hpp"
#include "grouptest/fault.hpp"
#include "grouptest/harness.hpp"
#include "grouptest/theory.hpp"

namespace {

std::string g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Writes through `writer` to the file at `path`, or to stdout for "-".
// Returns 0, or 3 when the stream cannot be opened or written.
int with_output(const std::string& path, bool* used_stdout,
                const std::function<void(std::ostream&)>& writer) {
  if (path == "-") {
    if (used_stdout) *used_stdout = true;
    writer(std::cout);
    std::cout.flush();
    if (!std::cout.good()) {
      std::cerr << "error: writing to stdout failed\n";
      return 3;
    }
    return 0;
  }
  std::ofstream file(path);
  if (!file) {
    std::cerr << "error: cannot open '" << path << "' for writing\n";
    return 3;
  }
  writer(file);
  file.flush();
  if (!file.good()) {
    std::cerr << "error: writing to '" << path << "' failed\n";
    return 3;
  }
  return 0;
}

struct SweepOptions {
  double p_min = 0.005;
  double p_max = 0.5;
  double step = 0.005;
  std::string out = "-";
};

int run_sweep(const SweepOptions& opt) {
  if (!(opt.p_min > 0.0 && opt.p_max < 1.0 && opt.p_min <= opt.p_max && opt.step > 0.0)) {
    std::cerr << "error: sweep needs 0 < p-min <= p-max < 1 and a positive step\n";
    return 2;
  }
  const auto rows =
      static_cast<std::int64_t>((opt.p_max - opt.p_min) / opt.step + 1e-9) + 1;
  bool to_stdout = false;
  const int status = with_output(opt.out, &to_stdout, [&](std::ostream& os) {
    os << "p,m_zero,A_zero,R_zero,m_avg,A_avg,R_avg\n";
    for (std::int64_t i = 0; i < rows; ++i) {
      const double p = opt.p_min + static_cast<double>(i) * opt.step;
      const double h = gt::theory::binary_entropy(p);
      const std::int64_t m_zero = gt::theory::zero_error_optimal_m(p);
      const double a_zero = gt::theory::zero_error_aspect(p, m_zero);
      const int m_avg = gt::theory::small_error_optimal_m(p);
      const double a_avg = gt::theory::avg_aspect(p, m_avg);
      os << g12(p) << ',' << m_zero << ',' << g12(a_zero) << ',' << g12(h / a_zero) << ','
         << m_avg << ',' << g12(a_avg) << ',' << g12(h / a_avg) << '\n';
    }
  });
  if (status == 0 && !to_stdout)
    std::cout << "sweep: " << rows << " rows -> " << opt.out << "\n";
  return status;
}

struct SimulateOptions {
  std::int64_t n = 0;
  double p = -1.0;       // < 0 means not given
  std::int64_t k = -1;   // < 0 means not given
  int m = 0;             // 0 means pick the optimal block size
  std::string mode = "plain";
  std::int64_t trials = 100;
  std::uint64_t seed = 12345;
  double delta = 0.05;
  std::string out = "-";
};

int run_simulate(const SimulateOptions& opt) {
  const bool has_p = opt.p >= 0.0;
  const bool has_k = opt.k >= 0;

  gt::sim::InstanceSpec spec;
  spec.n = static_cast<gt::Label>(opt.n);
  spec.seed = opt.seed;
  if (opt.mode == "worst") {
    if (!has_k || has_p) {
      std::cerr << "error: worst mode takes --k (the defective count), not --p\n";
      return 2;
    }
    spec.model = gt::sim::Model::adversarial_worst;
    spec.k = static_cast<gt::Label>(opt.k);
  } else if (has_p == has_k) {
    std::cerr << "error: give exactly one of --p and --k\n";
    return 2;
  } else if (has_p) {
    spec.model = gt::sim::Model::iid;
    spec.p = opt.p;
  } else {
    spec.model = gt::sim::Model::fixed_k;
    spec.k = static_cast<gt::Label>(opt.k);
  }

  int m = opt.m;
  if (m == 0) {
    const double rate = spec.effective_p();
    if (!(rate > 0.0 && rate < 1.0)) {
      std::cerr << "error: no optimal block size at a defectivity rate of " << g12(rate)
                << "; give --m explicitly\n";
      return 2;
    }
    m = opt.mode == "worst"
            ? static_cast<int>(gt::theory::zero_error_optimal_m(rate))
            : gt::theory::small_error_optimal_m(rate);
  }
  if (opt.mode == "worst") spec.m = m;
  spec.validate();

  const bool capped = opt.mode == "capped";
  std::int64_t budget = 0;
  if (capped) budget = gt::sim::capped_budget(spec.n, spec.effective_p(), m, 1.0 + opt.delta);

  std::vector<gt::sim::TrialRecord> records;
  const gt::sim::RunStats stats = gt::sim::monte_carlo(
      spec, m, opt.trials, capped ? gt::sim::TrialMode::capped : gt::sim::TrialMode::plain,
      1.0 + opt.delta, &records);

  bool to_stdout = false;
  const int status = with_output(opt.out, &to_stdout, [&](std::ostream& os) {
    os << "trial,seed,tests,success\n";
    for (const gt::sim::TrialRecord& r : records)
      os << r.trial << ',' << r.seed << ',' << r.tests << ',' << (r.success ? 1 : 0) << '\n';
  });
  if (status != 0) return status;

  // The human-readable summary goes wherever the CSV is not.
  std::ostream& info = to_stdout ? std::cerr : std::cout;
  const char* model_name = spec.model == gt::sim::Model::iid         ? "iid"
                           : spec.model == gt::sim::Model::fixed_k   ? "fixed-k"
                                                                     : "adversarial";
  info << "simulate: model=" << model_name << " n=" << spec.n;
  if (spec.model == gt::sim::Model::iid) info << " p=" << g12(spec.p);
  else info << " k=" << spec.k;
  info << " m=" << m << (opt.m == 0 ? " (auto)" : "") << " mode=" << opt.mode
       << " trials=" << opt.trials << " seed=" << opt.seed;
  if (capped) info << " delta=" << g12(opt.delta) << " budget=" << budget;
  info << "\n";
  info << "results: mean_tests_per_item=" << g12(stats.mean_tests_per_item)
       << " stddev_tests_per_item=" << g12(stats.stddev_tests_per_item)
       << " error_rate=" << g12(stats.error_rate) << "\n";

  const double rate = spec.effective_p();
  info << "theory:";
  if (opt.mode == "worst")
    info << " worst_case_tests=" << gt::worst_case_tests(spec.n, spec.k, m);
  if (rate > 0.0 && rate < 1.0) {
    info << " avg_aspect=" << g12(gt::theory::avg_aspect(rate, m));
    if (m >= 1 && (static_cast<unsigned>(m) & (static_cast<unsigned>(m) - 1)) == 0)
      info << " zero_error_aspect=" << g12(gt::theory::zero_error_aspect(rate, m));
    info << " entropy=" << g12(gt::theory::binary_entropy(rate));
  }
  info << "\n";
  return 0;
}

int run_verify(const std::string& level, std::uint64_t seed) {
  const gt::checks::Level lvl =
      level == "full" ? gt::checks::Level::full : gt::checks::Level::quick;
  const std::vector<gt::checks::CheckResult> results =
      gt::checks::run_verification(lvl, seed, &std::cout);
  int failed = 0;
  for (const gt::checks::CheckResult& r : results)
    if (!r.pass) ++failed;
  if (failed == 0) {
    std::cout << "verification: PASS (" << results.size() << " checks)\n";
  } else {
    std::cout << "verification: FAIL (" << failed << " of " << results.size()
              << " checks failed)\n";
  }
  return gt::checks::verification_exit_code(results);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive group testing in the linear regime: optimal-block-size sweeps, "
               "seeded simulations, and invariant verification"};
  app.require_subcommand(1);

  SweepOptions sweep_opt;
  CLI::App* sweep = app.add_subcommand("sweep", "Tabulate optimal block sizes, tests per "
                                                "item, and rates over a grid of p");
  sweep->add_option("--p-min", sweep_opt.p_min, "Smallest defectivity rate");
  sweep->add_option("--p-max", sweep_opt.p_max, "Largest defectivity rate");
  sweep->add_option("--step", sweep_opt.step, "Grid step");
  sweep->add_option("--out", sweep_opt.out, "Output CSV path, - for stdout");

  SimulateOptions sim_opt;
  CLI::App* simulate = app.add_subcommand("simulate", "Run seeded Monte-Carlo trials of "
                                                      "the splitting strategy");
  simulate->add_option("--n", sim_opt.n, "Population size")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--p", sim_opt.p, "Each item defective independently with this rate");
  simulate->add_option("--k", sim_opt.k, "Exact number of defectives");
  simulate->add_option("--m", sim_opt.m, "Block size (default: optimal for the rate)");
  simulate->add_option("--mode", sim_opt.mode, "plain, capped, or worst")
      ->check(CLI::IsMember({"plain", "capped", "worst"}));
  simulate->add_option("--trials", sim_opt.trials, "Number of trials")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim_opt.seed, "Master seed");
  simulate->add_option("--delta", sim_opt.delta, "Capped-mode budget headroom");
  simulate->add_option("--out", sim_opt.out, "Output CSV path, - for stdout");

  std::string verify_level = "quick";
  std::uint64_t verify_seed = 12345;
  CLI::App* verify = app.add_subcommand("verify", "Run the invariant suites");
  verify->add_option("--level", verify_level, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}));
  verify->add_option("--seed", verify_seed, "Master seed for the statistical checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sweep->parsed()) return run_sweep(sweep_opt);
    if (simulate->parsed()) return run_simulate(sim_opt);
    return run_verify(verify_level, verify_seed);
  } catch (const gt::Fault& fault) {
    std::cerr << "error: " << fault.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
