#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "grouptest/pattern.hpp"

namespace gt::sim {

enum class Model {
  iid,               // each item defective independently with probability p
  fixed_k,           // uniformly random k-subset defective
  adversarial_worst  // items 1..k defective: attains the worst case for block size m
};

struct InstanceSpec {
  Label n = 0;
  Model model = Model::iid;
  double p = 0.0;         // iid only
  Label k = 0;            // fixed_k and adversarial_worst
  int m = 1;              // adversarial_worst: block size the pattern is worst for
  std::uint64_t seed = 0;

  /// Faults "invalid-spec" on any inconsistent combination (p outside [0,1],
  /// k outside [0,n], or an adversarial spec whose m is not a power of 2
  /// dividing n-k).
  void validate() const;

  /// Defectivity rate the spec models: p for iid, k/n otherwise (n >= 1).
  double effective_p() const;
};

DefectivePattern generate(const InstanceSpec& spec);

enum class TrialMode { plain, capped };

struct TrialRecord {
  std::int64_t trial = 0;
  std::uint64_t seed = 0;
  std::int64_t tests = 0;
  bool success = false;
};

struct RunStats {
  std::int64_t trials = 0;
  Label n = 0;
  double mean_tests_per_item = 0.0;
  double stddev_tests_per_item = 0.0;  // sample stddev of tests/n across trials
  double error_rate = 0.0;             // fraction of trials with success == false
  std::vector<std::int64_t> tests;     // per-trial totals, in trial order

  /// Fraction of trials with |tests - mean| > delta * mean; delta > 0.
  double tail_freq(double delta) const;
};

/// Test budget used by capped trials: ceil(factor * avg_aspect(p, m) * n).
std::int64_t capped_budget(Label n, double p, int m, double factor);

/// Runs `trials` seeded trials of the block-size-m strategy on instances
/// drawn from `spec` (trial i uses stream_seed(spec.seed, i)) and aggregates.
/// In capped mode every trial spends exactly capped_budget(n, effective_p, m,
/// budget_factor) tests and success means the truncated classification still
/// matched. Trials run in parallel when OpenMP is enabled; the aggregation is
/// ordered by trial index, so results are identical for any thread count.
RunStats monte_carlo(const InstanceSpec& spec, int m, std::int64_t trials,
                     TrialMode mode, double budget_factor = 0.0,
                     std::vector<TrialRecord>* records = nullptr);

struct ConcentrationRow {
  Label n = 0;
  std::int64_t trials = 0;
  double mean_tests_per_item = 0.0;
  double tail_freq = 0.0;  // measured at the delta passed in
  double bound = 0.0;      // mcdiarmid_bound(n, m, delta, p)
};

/// Measured tail frequency against the analytic bound across population
/// sizes (iid model; the n-th row derives its master seed from `seed` and the
/// row index). Every n must be >= m (faults "domain" otherwise).
std::vector<ConcentrationRow> concentration_experiment(double p, int m,
                                                       std::span<const Label> ns,
                                                       double delta,
                                                       std::int64_t trials,
                                                       std::uint64_t seed);

}  // namespace gt::sim
