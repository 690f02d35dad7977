#include "grouptest/harness.hpp"

#include <bit>
#include <cmath>
#include <numeric>

#include "grouptest/fast_run.hpp"
#include "grouptest/fault.hpp"
#include "grouptest/rng.hpp"
#include "grouptest/theory.hpp"

namespace gt::sim {

void InstanceSpec::validate() const {
  if (n < 0) throw Fault("invalid-spec", "population size must be nonnegative");
  switch (model) {
    case Model::iid:
      if (!(p >= 0.0 && p <= 1.0))
        throw Fault("invalid-spec", "iid model needs p in [0,1]");
      break;
    case Model::fixed_k:
      if (k < 0 || k > n)
        throw Fault("invalid-spec", "fixed-k model needs 0 <= k <= n");
      break;
    case Model::adversarial_worst:
      if (k < 0 || k > n)
        throw Fault("invalid-spec", "adversarial model needs 0 <= k <= n");
      if (m < 1 || !std::has_single_bit(static_cast<std::uint32_t>(m)))
        throw Fault("invalid-spec", "adversarial model needs a power-of-2 block size");
      if ((n - k) % m != 0)
        throw Fault("invalid-spec",
                    "adversarial model needs m | n-k for the worst case to be exact");
      break;
  }
}

double InstanceSpec::effective_p() const {
  if (model == Model::iid) return p;
  if (n < 1) throw Fault("invalid-spec", "defectivity rate k/n needs n >= 1");
  return static_cast<double>(k) / static_cast<double>(n);
}

DefectivePattern generate(const InstanceSpec& spec) {
  spec.validate();
  DefectivePattern pattern(spec.n);
  switch (spec.model) {
    case Model::iid: {
      rng::Engine g(spec.seed);
      for (Label i = 1; i <= spec.n; ++i)
        if (rng::bernoulli(g, spec.p)) pattern.set(ItemId{i}, true);
      break;
    }
    case Model::fixed_k: {
      // Partial Fisher-Yates: after k steps the front holds a uniform k-subset.
      rng::Engine g(spec.seed);
      std::vector<Label> labels(static_cast<std::size_t>(spec.n));
      std::iota(labels.begin(), labels.end(), Label{1});
      for (Label i = 0; i < spec.k; ++i) {
        const auto j = i + static_cast<Label>(rng::uniform_below(
                               g, static_cast<std::uint64_t>(spec.n - i)));
        std::swap(labels[static_cast<std::size_t>(i)], labels[static_cast<std::size_t>(j)]);
        pattern.set(ItemId{labels[static_cast<std::size_t>(i)]}, true);
      }
      break;
    }
    case Model::adversarial_worst: {
      // Defectives packed at the lowest labels force a full-length split per
      // defective and leave no negative test unpaid: the worst-case pattern.
      for (Label i = 1; i <= spec.k; ++i) pattern.set(ItemId{i}, true);
      break;
    }
  }
  return pattern;
}

std::int64_t capped_budget(Label n, double p, int m, double factor) {
  if (n < 1) throw Fault("invalid-spec", "capped budget needs n >= 1");
  if (!(factor > 0.0)) throw Fault("invalid-spec", "budget factor must be positive");
  return static_cast<std::int64_t>(
      std::ceil(factor * theory::avg_aspect(p, m) * static_cast<double>(n)));
}

double RunStats::tail_freq(double delta) const {
  if (!(delta > 0.0)) throw Fault("domain", "tail deviation must be positive");
  if (tests.empty()) return 0.0;
  long double sum = 0.0L;
  for (std::int64_t t : tests) sum += static_cast<long double>(t);
  const long double mean = sum / static_cast<long double>(tests.size());
  std::int64_t outside = 0;
  for (std::int64_t t : tests)
    if (std::fabs(static_cast<double>(static_cast<long double>(t) - mean)) >
        delta * static_cast<double>(mean))
      ++outside;
  return static_cast<double>(outside) / static_cast<double>(tests.size());
}

RunStats monte_carlo(const InstanceSpec& spec, int m, std::int64_t trials,
                     TrialMode mode, double budget_factor,
                     std::vector<TrialRecord>* records) {
  spec.validate();
  if (spec.n < 1) throw Fault("invalid-spec", "simulation needs n >= 1");
  if (m < 1) throw Fault("invalid-spec", "block size must be at least 1");
  if (trials < 1) throw Fault("invalid-spec", "need at least one trial");

  const std::int64_t budget =
      mode == TrialMode::capped ? capped_budget(spec.n, spec.effective_p(), m, budget_factor)
                                : 0;

  std::vector<std::int64_t> tests(static_cast<std::size_t>(trials));
  std::vector<unsigned char> ok(static_cast<std::size_t>(trials));
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(trials));

#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < trials; ++i) {
    const std::uint64_t trial_seed = rng::stream_seed(spec.seed, static_cast<std::uint64_t>(i));
    InstanceSpec trial_spec = spec;
    trial_spec.seed = trial_seed;
    const DefectivePattern pattern = generate(trial_spec);
    const auto idx = static_cast<std::size_t>(i);
    if (mode == TrialMode::plain) {
      tests[idx] = fast::run_plain(pattern, m).tests;
      ok[idx] = 1;
    } else {
      const fast::CappedResult r = fast::run_capped(pattern, m, budget);
      tests[idx] = budget;  // a capped trial always spends exactly the budget
      ok[idx] = r.success ? 1 : 0;
    }
    seeds[idx] = trial_seed;
  }

  RunStats stats;
  stats.trials = trials;
  stats.n = spec.n;
  stats.tests = std::move(tests);

  long double sum = 0.0L, sum_sq = 0.0L;
  std::int64_t failures = 0;
  for (std::int64_t i = 0; i < trials; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const long double per_item =
        static_cast<long double>(stats.tests[idx]) / static_cast<long double>(spec.n);
    sum += per_item;
    sum_sq += per_item * per_item;
    failures += ok[idx] ? 0 : 1;
  }
  const long double mean = sum / static_cast<long double>(trials);
  stats.mean_tests_per_item = static_cast<double>(mean);
  if (trials > 1) {
    const long double var =
        (sum_sq - static_cast<long double>(trials) * mean * mean) /
        static_cast<long double>(trials - 1);
    stats.stddev_tests_per_item = static_cast<double>(std::sqrt(std::max(0.0, static_cast<double>(var))));
  }
  stats.error_rate = static_cast<double>(failures) / static_cast<double>(trials);

  if (records) {
    records->clear();
    records->reserve(static_cast<std::size_t>(trials));
    for (std::int64_t i = 0; i < trials; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      records->push_back({i, seeds[idx], stats.tests[idx], ok[idx] != 0});
    }
  }
  return stats;
}

std::vector<ConcentrationRow> concentration_experiment(double p, int m,
                                                       std::span<const Label> ns,
                                                       double delta,
                                                       std::int64_t trials,
                                                       std::uint64_t seed) {
  if (!(delta > 0.0)) throw Fault("domain", "tail deviation must be positive");
  std::vector<ConcentrationRow> rows;
  rows.reserve(ns.size());
  for (std::size_t idx = 0; idx < ns.size(); ++idx) {
    const Label n = ns[idx];
    if (n < m) throw Fault("domain", "concentration experiment needs n >= m");
    InstanceSpec spec;
    spec.n = n;
    spec.model = Model::iid;
    spec.p = p;
    spec.seed = rng::stream_seed(seed, idx);
    const RunStats stats = monte_carlo(spec, m, trials, TrialMode::plain);
    rows.push_back({n, trials, stats.mean_tests_per_item, stats.tail_freq(delta),
                    theory::mcdiarmid_bound(n, m, delta, p)});
  }
  return rows;
}

}  // namespace gt::sim
