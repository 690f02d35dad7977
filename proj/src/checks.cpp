#include "grouptest/checks.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <iterator>
#include <numeric>
#include <ostream>

#include "grouptest/codewords.hpp"
#include "grouptest/fast_run.hpp"
#include "grouptest/fault.hpp"
#include "grouptest/harness.hpp"
#include "grouptest/rng.hpp"
#include "grouptest/splitting.hpp"
#include "grouptest/theory.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gt::checks {
namespace {

std::string fmt(const char* pattern, ...) {
  char buf[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof buf, pattern, args);
  va_end(args);
  return buf;
}

CheckResult pass(std::string name, std::string detail) {
  return {std::move(name), true, std::move(detail)};
}

CheckResult fail(std::string name, std::string detail) {
  return {std::move(name), false, std::move(detail)};
}

RunFn runner_or_default(const RunFn& run) {
  if (run) return run;
  return [](const DefectivePattern& pattern, int m) { return run_gbs(pattern, m); };
}

int ceil_log2(int m) {
  return m <= 1 ? 0 : std::bit_width(static_cast<std::uint32_t>(m - 1));
}

// Provable for every m: each defective costs at most 1 + ceil(log2 m) tests,
// each negative block retires m nondefectives, and the end phase has < m items.
std::int64_t slack_bound(Label n, Label k, int m) {
  return (n - k) / m + static_cast<std::int64_t>(1 + ceil_log2(m)) * k + (m - 1);
}

std::int64_t core_tests(const RunResult& r) {
  return r.tests_used - r.individual_phase_tests;
}

}  // namespace

CheckResult check_huffman_tables(int m_max) {
  const std::string name = "huffman-tables";
  for (int m = 1; m <= m_max; ++m) {
    const CodewordTable table = huffman_codewords(m);
    if (static_cast<int>(table.words.size()) != m)
      return fail(name, fmt("m=%d: table has %zu words", m, table.words.size()));
    const int a = std::bit_width(static_cast<std::uint32_t>(m)) - 1;
    const int b = m - (1 << a);
    int n_short = 0, n_long = 0;
    for (const Codeword& w : table.words) {
      if (w.length == a) ++n_short;
      else if (w.length == a + 1) ++n_long;
      else return fail(name, fmt("m=%d: word of length %d", m, int{w.length}));
    }
    if (n_short != m - 2 * b || n_long != 2 * b)
      return fail(name, fmt("m=%d: %d short + %d long words, want %d + %d", m, n_short,
                            n_long, m - 2 * b, 2 * b));
    for (int i = 1; i < m; ++i)
      if (table.words[i - 1].to_string() >= table.words[i].to_string())
        return fail(name, fmt("m=%d: words %d,%d out of lexicographic order", m, i - 1, i));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (i != j) {
          const std::string wi = table.words[i].to_string();
          const std::string wj = table.words[j].to_string();
          if (wi.size() <= wj.size() && wj.compare(0, wi.size(), wi) == 0)
            return fail(name, fmt("m=%d: word %d is a prefix of word %d", m, i, j));
        }
    if (!kraft_sum_is_one(table))
      return fail(name, fmt("m=%d: Kraft sum differs from 1", m));
  }
  return pass(name, fmt("m=1..%d canonical, prefix-free, Kraft sum exactly 1", m_max));
}

CheckResult check_split_agreement(int m_max) {
  const std::string name = "split-agreement";
  for (int m = 1; m <= m_max; ++m) {
    const CodewordTable table = huffman_codewords(m);
    std::vector<ItemId> block;
    for (Label i = 1; i <= m; ++i) block.push_back(ItemId{i});
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
      const DefectivePattern pattern = DefectivePattern::from_mask(m, mask);
      const int lowest = std::countr_zero(mask) + 1;

      TestOracle oracle(pattern);
      const SplitResult general = binary_split_general(block, oracle);
      if (general.defective.value != lowest)
        return fail(name, fmt("m=%d mask=%llu: found %d, want %d", m,
                              (unsigned long long)mask, general.defective.value, lowest));
      if (static_cast<int>(general.cleared_nondefectives.size()) != lowest - 1)
        return fail(name, fmt("m=%d mask=%llu: cleared %zu items, want %d", m,
                              (unsigned long long)mask,
                              general.cleared_nondefectives.size(), lowest - 1));
      std::vector<ItemId> sorted_clears = general.cleared_nondefectives;
      std::sort(sorted_clears.begin(), sorted_clears.end());
      for (int i = 0; i < lowest - 1; ++i)
        if (sorted_clears[static_cast<std::size_t>(i)].value != i + 1)
          return fail(name, fmt("m=%d mask=%llu: cleared set is not exactly 1..%d", m,
                                (unsigned long long)mask, lowest - 1));
      const auto expected_tests =
          static_cast<std::int64_t>(table.words[static_cast<std::size_t>(lowest - 1)].length);
      if (general.tests_used != expected_tests)
        return fail(name, fmt("m=%d mask=%llu: %lld tests, want %lld (codeword length)", m,
                              (unsigned long long)mask, (long long)general.tests_used,
                              (long long)expected_tests));

      if (std::has_single_bit(static_cast<std::uint32_t>(m))) {
        TestOracle oracle2(pattern);
        const SplitResult halving = binary_split_pow2(block, oracle2);
        if (halving.defective != general.defective ||
            halving.cleared_nondefectives != general.cleared_nondefectives ||
            halving.tests_used != general.tests_used ||
            oracle2.transcript() != oracle.transcript())
          return fail(name, fmt("m=%d mask=%llu: halving and codeword searches diverge", m,
                                (unsigned long long)mask));
      }
    }
  }
  return pass(name, fmt("both searches agree on every pattern up to m=%d", m_max));
}

CheckResult check_zero_error_exhaustive(Label n_max, std::span<const int> ms,
                                        const RunFn& run) {
  const std::string name = "zero-error-exhaustive";
  const RunFn runner = runner_or_default(run);
  std::int64_t runs = 0;
  for (int m : ms) {
    for (Label n = 0; n <= n_max; ++n) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        const DefectivePattern pattern = DefectivePattern::from_mask(n, mask);
        const RunResult r = runner(pattern, m);
        ++runs;
        const auto fail_here = [&](const char* what) {
          return fail(name, fmt("n=%d m=%d mask=%llu: %s", n, m,
                                (unsigned long long)mask, what));
        };
        if (!r.success || r.classification != pattern.bits())
          return fail_here("classification differs from ground truth");
        if (r.tests_used != static_cast<std::int64_t>(r.transcript.size()))
          return fail_here("tests_used differs from transcript length");
        if (static_cast<Label>(r.discovery_order.size()) != n)
          return fail_here("not every item was resolved");
        for (std::size_t i = 1; i < r.discovery_order.size(); ++i)
          if (r.discovery_order[i - 1] >= r.discovery_order[i])
            return fail_here("labels resolved out of increasing order");
        if (r.individual_phase_tests > std::max(0, m - 1))
          return fail_here("more end-phase tests than m-1");
        const Label k = pattern.defective_count();
        if (r.tests_used > slack_bound(n, k, m))
          return fail_here("test total exceeds the provable bound");
      }
    }
  }
  return pass(name, fmt("%lld runs: exact classification, ordered discovery, bound held",
                        (long long)runs));
}

CheckResult check_worst_case_grid(Label n_max, std::span<const int> ms, const RunFn& run) {
  const std::string name = "worst-case-grid";
  const RunFn runner = runner_or_default(run);
  int exact_cases = 0;
  std::string extreme_note;
  for (int m : ms) {
    for (Label n = 0; n <= n_max; ++n) {
      std::vector<std::int64_t> max_core(static_cast<std::size_t>(n) + 1, -1);
      std::vector<std::int64_t> max_total(static_cast<std::size_t>(n) + 1, -1);
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        const Label k = static_cast<Label>(std::popcount(mask));
        if ((n - k) % m != 0) continue;
        const RunResult r = runner(DefectivePattern::from_mask(n, mask), m);
        auto& core = max_core[static_cast<std::size_t>(k)];
        auto& total = max_total[static_cast<std::size_t>(k)];
        core = std::max(core, core_tests(r));
        total = std::max(total, r.tests_used);
      }
      for (Label k = 0; k <= n; ++k) {
        if ((n - k) % m != 0 || max_core[static_cast<std::size_t>(k)] < 0) continue;
        const std::int64_t formula = worst_case_tests(n, k, m);
        const std::int64_t core = max_core[static_cast<std::size_t>(k)];
        const std::int64_t total = max_total[static_cast<std::size_t>(k)];

        DefectivePattern low(n);
        for (Label i = 1; i <= k; ++i) low.set(ItemId{i}, true);
        const RunResult adversarial = runner(low, m);

        const bool formula_regime = m == 1 || n - k >= m || n == 0;
        if (formula_regime) {
          if (core != formula)
            return fail(name, fmt("n=%d k=%d m=%d: exhaustive max of splitting-phase "
                                  "tests is %lld, formula says %lld",
                                  n, k, m, (long long)core, (long long)formula));
          if (core_tests(adversarial) != formula)
            return fail(name, fmt("n=%d k=%d m=%d: all-low pattern reaches %lld, not the "
                                  "formula value %lld",
                                  n, k, m, (long long)core_tests(adversarial),
                                  (long long)formula));
          ++exact_cases;
        } else if (core > formula) {
          return fail(name, fmt("n=%d k=%d m=%d: splitting-phase max %lld above formula %lld",
                                n, k, m, (long long)core, (long long)formula));
        } else if (extreme_note.empty()) {
          // k = n with m > 1: every block is positive from the start, so the
          // formula's negative-test term cannot be realized.
          extreme_note = fmt("; k=n cases sit below the formula (first: n=%d m=%d, %lld < %lld)",
                             n, m, (long long)core, (long long)formula);
        }
        if (total > formula + (m - 1))
          return fail(name, fmt("n=%d k=%d m=%d: total %lld above formula+m-1=%lld", n, k,
                                m, (long long)total, (long long)(formula + m - 1)));
      }
    }
  }
  return pass(name, fmt("formula exact in %d cases, totals within the m-1 slack%s",
                        exact_cases, extreme_note.c_str()));
}

CheckResult check_worst_case_headline(const RunFn& run) {
  const std::string name = "worst-case-headline";
  const RunFn runner = runner_or_default(run);
  const Label n = 18;
  const int m = 4;

  DefectivePattern low(n);
  low.set(ItemId{1}, true);
  low.set(ItemId{2}, true);
  const RunResult adversarial = runner(low, m);
  const std::int64_t formula = worst_case_tests(n, 2, m);
  if (formula != 10)
    return fail(name, fmt("formula gives %lld, want 10", (long long)formula));
  if (adversarial.tests_used != 10 || adversarial.individual_phase_tests != 0)
    return fail(name, fmt("adversarial run used %lld tests (%lld end-phase), want 10 (0)",
                          (long long)adversarial.tests_used,
                          (long long)adversarial.individual_phase_tests));

  std::int64_t max_core = -1;
  std::int64_t patterns = 0;
  for (Label i = 1; i <= n; ++i)
    for (Label j = i + 1; j <= n; ++j) {
      DefectivePattern pattern(n);
      pattern.set(ItemId{i}, true);
      pattern.set(ItemId{j}, true);
      max_core = std::max(max_core, core_tests(runner(pattern, m)));
      ++patterns;
    }
  if (max_core != 10)
    return fail(name, fmt("exhaustive splitting-phase max over %lld patterns is %lld, want 10",
                          (long long)patterns, (long long)max_core));
  return pass(name, fmt("n=18 k=2 m=4: adversarial run and exhaustive max both 10 tests"));
}

CheckResult check_fast_agreement(Label n_max, int m_max) {
  const std::string name = "fast-agreement";
  std::int64_t runs = 0;
  for (int m = 1; m <= m_max; ++m)
    for (Label n = 0; n <= n_max; ++n)
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        const DefectivePattern pattern = DefectivePattern::from_mask(n, mask);
        const RunResult ref = run_gbs(pattern, m);
        const fast::PlainResult fast_result = fast::run_plain(pattern, m);
        ++runs;
        if (fast_result.tests != ref.tests_used ||
            fast_result.individual_phase_tests != ref.individual_phase_tests)
          return fail(name, fmt("n=%d m=%d mask=%llu: kernel %lld/%lld vs reference %lld/%lld",
                                n, m, (unsigned long long)mask, (long long)fast_result.tests,
                                (long long)fast_result.individual_phase_tests,
                                (long long)ref.tests_used,
                                (long long)ref.individual_phase_tests));
      }
  return pass(name, fmt("kernel matches the reference on %lld runs", (long long)runs));
}

CheckResult check_capped_agreement(Label n_max, int m_max) {
  const std::string name = "capped-agreement";
  std::int64_t runs = 0;
  for (int m = 1; m <= m_max; ++m)
    for (Label n = 0; n <= n_max; ++n)
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        const DefectivePattern pattern = DefectivePattern::from_mask(n, mask);
        const std::int64_t natural = fast::run_plain(pattern, m).tests;
        bool succeeded_before = false;
        for (std::int64_t budget = 0; budget <= natural + 2; ++budget) {
          const RunResult ref = run_gbs_capped(pattern, m, budget);
          const fast::CappedResult quick = fast::run_capped(pattern, m, budget);
          ++runs;
          const auto fail_here = [&](const char* what) {
            return fail(name, fmt("n=%d m=%d mask=%llu budget=%lld: %s", n, m,
                                  (unsigned long long)mask, (long long)budget, what));
          };
          if (ref.tests_used != budget)
            return fail_here("reference did not spend exactly the budget");
          if (quick.natural_tests != std::min(natural, budget))
            return fail_here("kernel natural test count is off");
          if (quick.completed != (budget >= natural))
            return fail_here("kernel completion flag is off");
          if (ref.success != quick.success)
            return fail_here("kernel and reference disagree on success");
          if (budget >= natural && ref.padding_tests != budget - natural)
            return fail_here("reference padding does not fill the budget");
          for (Label i = 1; i <= n; ++i) {
            const bool claimed = ref.classification[static_cast<std::size_t>(i - 1)];
            const bool expected =
                i <= quick.resolved_prefix && pattern.is_defective(ItemId{i});
            if (claimed != expected)
              return fail_here("reference classification is not truth-on-a-prefix");
          }
          if (succeeded_before && !ref.success)
            return fail_here("success is not monotone in the budget");
          succeeded_before = succeeded_before || ref.success;
        }
      }
  return pass(name, fmt("kernel matches the capped reference on %lld runs", (long long)runs));
}

CheckResult check_bounded_differences(Label n_max, int m_max, const RunFn& run) {
  const std::string name = "bounded-differences";
  const RunFn runner = runner_or_default(run);
  std::int64_t worst = 0;
  int worst_m = 1;
  for (int m = 1; m <= m_max; ++m)
    for (Label n = 1; n <= n_max; ++n) {
      std::vector<std::int64_t> totals(std::size_t{1} << n);
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
        totals[mask] = runner(DefectivePattern::from_mask(n, mask), m).tests_used;
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
        for (Label i = 0; i < n; ++i) {
          const std::int64_t diff =
              std::llabs(totals[mask] - totals[mask ^ (std::uint64_t{1} << i)]);
          if (diff > 2 * m)
            return fail(name, fmt("n=%d m=%d mask=%llu item=%d: flip moves the total by "
                                  "%lld > 2m=%d",
                                  n, m, (unsigned long long)mask, i + 1, (long long)diff,
                                  2 * m));
          if (diff * worst_m > worst * m) {  // track max of diff/m across sizes
            worst = diff;
            worst_m = m;
          }
        }
    }
  return pass(name, fmt("single flips move totals by at most %lld at m=%d (bound 2m)",
                        (long long)worst, worst_m));
}

CheckResult check_pass_formulas(int m_max) {
  const std::string name = "pass-formulas";
  const double ps[] = {0.05, 0.1, 0.2, 1.0 / 3.0, 0.5, 0.77};
  double worst_gap = 0.0;
  for (int m = 1; m <= m_max; ++m) {
    std::vector<ItemId> block;
    for (Label i = 1; i <= m; ++i) block.push_back(ItemId{i});
    for (double p : ps) {
      long double expected_tests = 0.0L, expected_items = 0.0L;
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        const int defectives = std::popcount(mask);
        const long double weight =
            std::pow(static_cast<long double>(p), defectives) *
            std::pow(static_cast<long double>(1.0 - p), m - defectives);
        const DefectivePattern pattern = DefectivePattern::from_mask(m, mask);
        TestOracle oracle(pattern);
        std::vector<ItemId> cleared;
        std::int64_t resolved = m;
        if (oracle.test(block)) {
          const ItemId found = detail::split_general_impl(block, oracle, cleared);
          resolved = static_cast<std::int64_t>(cleared.size()) + 1;
          (void)found;
        }
        expected_tests += weight * static_cast<long double>(oracle.tests_used());
        expected_items += weight * static_cast<long double>(resolved);
      }
      const double closed_tests = theory::pass_expected_tests(p, m);
      const double closed_items = theory::pass_expected_items(p, m);
      const double gap_tests =
          std::fabs(static_cast<double>(expected_tests) - closed_tests);
      const double gap_items =
          std::fabs(static_cast<double>(expected_items) - closed_items);
      worst_gap = std::max({worst_gap, gap_tests, gap_items});
      if (gap_tests > 1e-12)
        return fail(name, fmt("m=%d p=%.4f: closed-form tests %.15g vs exhaustive %.15g", m,
                              p, closed_tests, static_cast<double>(expected_tests)));
      if (gap_items > 1e-12)
        return fail(name, fmt("m=%d p=%.4f: closed-form items %.15g vs exhaustive %.15g", m,
                              p, closed_items, static_cast<double>(expected_items)));
    }
  }
  return pass(name, fmt("closed forms match exhaustive enumeration to %.2g (tolerance 1e-12)",
                        worst_gap));
}

CheckResult check_zero_error_rates() {
  const std::string name = "zero-error-rates";
  double min_rate = 1e300, min_gap = 1e300;
  double argmin_rate = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double p = i / 200.0;
    const double h = theory::binary_entropy(p);
    const std::int64_t m = theory::zero_error_optimal_m(p);
    const double aspect = theory::zero_error_aspect(p, m);
    if (aspect < h - theory::kBoundaryNudge)
      return fail(name, fmt("p=%.3f: aspect %.15g below the counting bound %.15g", p, aspect, h));
    const double rate = h / aspect;
    if (rate < min_rate) {
      min_rate = rate;
      argmin_rate = p;
    }
    min_gap = std::min(min_gap, 1.11 * h - aspect);
    if (rate <= 0.9)
      return fail(name, fmt("p=%.3f: rate %.15g not above 0.9", p, rate));
    if (aspect >= 1.11 * h)
      return fail(name, fmt("p=%.3f: aspect %.15g not below 1.11 H = %.15g", p, aspect, 1.11 * h));
  }
  return pass(name, fmt("rate > 0.9 on the whole grid (min %.6f at p=%.3f, 1.11H margin %.2g)",
                        min_rate, argmin_rate, min_gap));
}

CheckResult check_avg_rates() {
  const std::string name = "avg-rates";
  double min_rate = 1e300, min_gap = 1e300;
  double argmin_rate = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double p = i / 200.0;
    const double h = theory::binary_entropy(p);
    const int m = theory::small_error_optimal_m(p);
    const double aspect = theory::avg_aspect(p, m);
    if (aspect < h - theory::kBoundaryNudge)
      return fail(name, fmt("p=%.3f: aspect %.15g below the counting bound %.15g", p, aspect, h));
    const double zero_aspect =
        theory::zero_error_aspect(p, theory::zero_error_optimal_m(p));
    if (aspect > zero_aspect + theory::kBoundaryNudge)
      return fail(name, fmt("p=%.3f: small-error aspect %.15g above zero-error %.15g", p,
                            aspect, zero_aspect));
    const double rate = h / aspect;
    if (rate < min_rate) {
      min_rate = rate;
      argmin_rate = p;
    }
    min_gap = std::min(min_gap, 1.05 * h - aspect);
    if (rate <= 0.95)
      return fail(name, fmt("p=%.3f: rate %.15g not above 0.95", p, rate));
    if (aspect >= 1.05 * h)
      return fail(name, fmt("p=%.3f: aspect %.15g not below 1.05 H = %.15g", p, aspect, 1.05 * h));
  }
  return pass(name, fmt("rate > 0.95 on the whole grid (min %.6f at p=%.3f, 1.05H margin %.2g)",
                        min_rate, argmin_rate, min_gap));
}

CheckResult check_m2_forms() {
  const std::string name = "m2-forms";
  for (int i = 1; i <= 99; ++i) {
    const double p = i / 100.0;
    const double zero_form = 0.5 + 1.5 * p;
    const double avg_form = (1.0 + 2.0 * p - p * p) / (2.0 - p);
    if (std::fabs(theory::zero_error_aspect(p, 2) - zero_form) > 1e-12)
      return fail(name, fmt("p=%.2f: zero-error m=2 aspect differs from 1/2 + 3p/2", p));
    if (std::fabs(theory::avg_aspect(p, 2) - avg_form) > 1e-12)
      return fail(name, fmt("p=%.2f: small-error m=2 aspect differs from (1+2p-p^2)/(2-p)", p));
  }
  // One test per item on average exactly at the golden-ratio point.
  const double p_star = (3.0 - std::sqrt(5.0)) / 2.0;
  const double at_star = theory::avg_aspect(p_star, 2);
  if (std::fabs(at_star - 1.0) > 1e-12)
    return fail(name, fmt("aspect at the crossing point is %.15g, want 1", at_star));
  if (!(theory::avg_aspect(p_star - 1e-9, 2) < 1.0 && theory::avg_aspect(p_star + 1e-9, 2) > 1.0))
    return fail(name, "aspect does not cross 1 at p = (3 - sqrt 5)/2");
  if (theory::small_error_optimal_m(0.38) != 2 || theory::small_error_optimal_m(0.385) != 1)
    return fail(name, "optimal block size does not switch from 2 to 1 across the crossing");
  if (theory::small_error_optimal_m(p_star) != 1)
    return fail(name, "individual testing is not chosen at the crossing point");
  return pass(name, fmt("closed forms hold; tests-per-item crosses 1 at p=%.9f", p_star));
}

CheckResult check_optimal_m_scan() {
  const std::string name = "optimal-m-scan";
  try {
    for (int j = 1; j <= 999; ++j) {
      const double p = j / 1000.0;
      const std::int64_t mz = theory::zero_error_optimal_m(p);
      const int ma = theory::small_error_optimal_m(p);
      if (mz < 1 || ma < 1) return fail(name, fmt("p=%.3f: nonpositive block size", p));
    }
  } catch (const Fault& f) {
    return fail(name, fmt("selector fault: %s", f.what()));
  }
  return pass(name, "closed forms beat their scan grids for p = 0.001..0.999");
}

CheckResult check_reproducibility(std::uint64_t seed) {
  const std::string name = "reproducibility";
  sim::InstanceSpec spec;
  spec.n = 3000;
  spec.model = sim::Model::iid;
  spec.p = 0.1;
  spec.seed = seed;
  const int m = 7;

  for (const sim::TrialMode mode : {sim::TrialMode::plain, sim::TrialMode::capped}) {
    const double factor = mode == sim::TrialMode::capped ? 1.05 : 0.0;
    std::vector<sim::TrialRecord> records_a, records_b;
    const sim::RunStats a = sim::monte_carlo(spec, m, 64, mode, factor, &records_a);
#ifdef _OPENMP
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
#endif
    const sim::RunStats b = sim::monte_carlo(spec, m, 64, mode, factor, &records_b);
#ifdef _OPENMP
    omp_set_num_threads(saved);
#endif
    if (a.tests != b.tests)
      return fail(name, "per-trial test counts depend on the thread count");
    if (a.mean_tests_per_item != b.mean_tests_per_item ||
        a.stddev_tests_per_item != b.stddev_tests_per_item || a.error_rate != b.error_rate)
      return fail(name, "aggregate statistics depend on the thread count");
    if (records_a.size() != records_b.size())
      return fail(name, "record counts differ between identical runs");
    for (std::size_t i = 0; i < records_a.size(); ++i)
      if (records_a[i].seed != records_b[i].seed || records_a[i].tests != records_b[i].tests ||
          records_a[i].success != records_b[i].success)
        return fail(name, fmt("trial %zu differs between identical runs", i));
  }
  return pass(name, "identical results across repeated runs and thread counts");
}

CheckResult check_fixed_k_uniformity(std::uint64_t seed) {
  const std::string name = "fixed-k-uniformity";
  sim::InstanceSpec spec;
  spec.n = 4;
  spec.model = sim::Model::fixed_k;
  spec.k = 2;
  const std::int64_t draws = 60000;
  // The six 2-subsets of {1,2,3,4}, keyed by defectivity mask.
  std::vector<std::int64_t> counts(16, 0);
  for (std::int64_t i = 0; i < draws; ++i) {
    spec.seed = rng::stream_seed(seed, static_cast<std::uint64_t>(i));
    const DefectivePattern pattern = sim::generate(spec);
    if (pattern.defective_count() != 2) return fail(name, "draw does not have exactly k defectives");
    std::uint64_t mask = 0;
    for (Label item = 1; item <= 4; ++item)
      if (pattern.is_defective(ItemId{item})) mask |= std::uint64_t{1} << (item - 1);
    ++counts[mask];
  }
  const double expected = static_cast<double>(draws) / 6.0;
  double chi_sq = 0.0;
  int cells = 0;
  for (std::uint64_t mask = 0; mask < 16; ++mask) {
    if (std::popcount(mask) != 2) {
      if (counts[mask] != 0) return fail(name, "impossible subset drawn");
      continue;
    }
    ++cells;
    const double diff = static_cast<double>(counts[mask]) - expected;
    chi_sq += diff * diff / expected;
  }
  if (cells != 6) return fail(name, "subset bucketing is wrong");
  if (chi_sq > 33.0)  // P(chi^2_5 > 33) ~ 4e-6: a real bias, not noise
    return fail(name, fmt("chi-squared %.2f over 5 degrees of freedom", chi_sq));
  return pass(name, fmt("all 6 subsets drawn uniformly (chi-squared %.2f, threshold 33)", chi_sq));
}

CheckResult check_fixed_k_matches_iid(std::uint64_t seed) {
  const std::string name = "fixed-k-vs-iid";
  const int m = 7;
  const std::int64_t trials = 400;
  sim::InstanceSpec iid;
  iid.n = 10000;
  iid.model = sim::Model::iid;
  iid.p = 0.1;
  iid.seed = seed;
  sim::InstanceSpec fixed;
  fixed.n = 10000;
  fixed.model = sim::Model::fixed_k;
  fixed.k = 1000;
  fixed.seed = seed + 1;
  const double mean_iid =
      sim::monte_carlo(iid, m, trials, sim::TrialMode::plain).mean_tests_per_item;
  const double mean_fixed =
      sim::monte_carlo(fixed, m, trials, sim::TrialMode::plain).mean_tests_per_item;
  const double rel = std::fabs(mean_fixed - mean_iid) / mean_iid;
  if (rel >= 0.01)
    return fail(name, fmt("means %.6f (iid) vs %.6f (fixed k) differ by %.2f%%", mean_iid,
                          mean_fixed, 100.0 * rel));
  return pass(name, fmt("means %.6f (iid) vs %.6f (fixed k) within %.3f%%", mean_iid,
                        mean_fixed, 100.0 * rel));
}

CheckResult check_mc_convergence(std::uint64_t seed, Label n_max) {
  const std::string name = "mc-convergence";
  const double p = 0.1;
  const int m = 7;
  const double aspect = theory::avg_aspect(p, m);
  struct Rung {
    Label n;
    std::int64_t trials;
    double tolerance;
  };
  const Rung rungs[] = {{10000, 50, 0.02}, {100000, 30, 0.01}, {1000000, 24, 0.005}};
  std::string summary = fmt("avg aspect %.6f;", aspect);
  for (const Rung& rung : rungs) {
    if (rung.n > n_max) continue;
    sim::InstanceSpec spec;
    spec.n = rung.n;
    spec.model = sim::Model::iid;
    spec.p = p;
    spec.seed = rng::stream_seed(seed, static_cast<std::uint64_t>(rung.n));
    const sim::RunStats stats = sim::monte_carlo(spec, m, rung.trials, sim::TrialMode::plain);
    const double rel = std::fabs(stats.mean_tests_per_item - aspect) / aspect;
    if (rel >= rung.tolerance)
      return fail(name, fmt("n=%d: measured %.6f vs %.6f differs by %.3f%% (tolerance %.1f%%)",
                            rung.n, stats.mean_tests_per_item, aspect, 100.0 * rel,
                            100.0 * rung.tolerance));
    summary += fmt(" n=%d within %.3f%%;", rung.n, 100.0 * rel);
  }
  return pass(name, summary);
}

CheckResult check_concentration(std::uint64_t seed) {
  const std::string name = "concentration";
  const double p = 0.1;
  const int m = 7;
  const double delta = 0.05;
  const std::int64_t trials = 1000;
  const Label ns[] = {1000, 10000, 100000};
  const double noise = 0.05;  // generous 3-sigma-scale slack for 1000-trial frequencies

  const std::vector<sim::ConcentrationRow> rows =
      sim::concentration_experiment(p, m, ns, delta, trials, seed);
  std::string summary;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const sim::ConcentrationRow& row = rows[i];
    const double sigma = std::sqrt(std::max(row.tail_freq * (1.0 - row.tail_freq),
                                            1.0 / static_cast<double>(trials)) /
                                   static_cast<double>(trials));
    if (row.tail_freq > row.bound + 3.0 * sigma)
      return fail(name, fmt("n=%d: tail frequency %.4f above the bound %.4f", row.n,
                            row.tail_freq, row.bound));
    if (i > 0 && row.tail_freq > rows[i - 1].tail_freq + noise)
      return fail(name, fmt("tail frequency rises from %.4f (n=%d) to %.4f (n=%d)",
                            rows[i - 1].tail_freq, rows[i - 1].n, row.tail_freq, row.n));
    summary += fmt(" n=%d tail %.3f<=%.3f;", row.n, row.tail_freq, row.bound);
  }

  double previous_error = 1.0;
  for (std::size_t i = 0; i < std::size(ns); ++i) {
    sim::InstanceSpec spec;
    spec.n = ns[i];
    spec.model = sim::Model::iid;
    spec.p = p;
    spec.seed = rng::stream_seed(seed + 1, i);
    const sim::RunStats stats =
        sim::monte_carlo(spec, m, trials, sim::TrialMode::capped, 1.0 + delta);
    if (i > 0 && stats.error_rate > previous_error + noise)
      return fail(name, fmt("capped error rate rises to %.4f at n=%d", stats.error_rate, ns[i]));
    if (ns[i] == 100000 && stats.error_rate >= 0.01)
      return fail(name, fmt("capped error rate %.4f at n=100000, want < 0.01", stats.error_rate));
    previous_error = stats.error_rate;
    summary += fmt(" n=%d err %.3f;", ns[i], stats.error_rate);
  }
  return pass(name, "tails under the bound, errors vanishing:" + summary);
}

std::vector<CheckResult> run_verification(Level level, std::uint64_t seed,
                                          std::ostream* progress) {
  std::vector<CheckResult> results;
  const auto add = [&](CheckResult r) {
    if (progress)
      *progress << (r.pass ? "[ ok ] " : "[FAIL] ") << r.name << " — " << r.detail << "\n";
    results.push_back(std::move(r));
  };

  const bool full = level == Level::full;
  const std::vector<int> split_ms = {1, 2, 3, 4, 5, 6, 7, 8};
  const std::vector<int> exhaustive_ms =
      full ? std::vector<int>{1, 2, 3, 4, 5, 8} : std::vector<int>{1, 2, 3, 4, 5};
  const std::vector<int> pow2_ms = {1, 2, 4, 8};
  const Label exhaustive_n = full ? 14 : 10;

  add(check_huffman_tables(64));
  add(check_split_agreement(8));
  add(check_zero_error_exhaustive(exhaustive_n, exhaustive_ms));
  add(check_worst_case_headline());
  add(check_worst_case_grid(exhaustive_n, pow2_ms));
  add(check_fast_agreement(full ? 12 : 10, full ? 8 : 5));
  add(check_capped_agreement(full ? 9 : 8, full ? 6 : 5));
  add(check_bounded_differences(full ? 12 : 10, full ? 5 : 4));
  add(check_pass_formulas(full ? 10 : 8));
  add(check_zero_error_rates());
  add(check_avg_rates());
  add(check_m2_forms());
  add(check_optimal_m_scan());
  add(check_reproducibility(seed));
  if (full) {
    add(check_fixed_k_uniformity(seed));
    add(check_fixed_k_matches_iid(seed));
    add(check_mc_convergence(seed, 1000000));
    add(check_concentration(seed));
  }
  return results;
}

int verification_exit_code(std::span<const CheckResult> results) {
  for (const CheckResult& r : results)
    if (!r.pass) return 1;
  return 0;
}

}  // namespace gt::checks
