#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "grouptest/driver.hpp"
#include "grouptest/pattern.hpp"

namespace gt::checks {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // counterexample on failure, measured margins on success
};

/// Injection point so the checkers themselves are testable: hand in a broken
/// runner and the corresponding check must fail with a concrete counterexample.
/// Empty means the library's run_gbs.
using RunFn = std::function<RunResult(const DefectivePattern&, int)>;

/// Code tables m = 1..m_max: sizes, lengths, lexicographic order, prefix
/// freedom, exact Kraft equality.
CheckResult check_huffman_tables(int m_max);

/// Both split searches on every nonzero pattern of blocks up to m_max: the
/// lowest defective is found, exactly the items before it are cleared, the
/// test count equals its codeword length, and on power-of-2 blocks the two
/// searches produce identical transcripts.
CheckResult check_split_agreement(int m_max);

/// Every pattern on n <= n_max for each block size: classification exact,
/// labels resolved in increasing order, transcript consistent, and the test
/// total within the provable bound floor((n-k)/m) + (1+ceil(log2 m))k + m-1.
CheckResult check_zero_error_exhaustive(Label n_max, std::span<const int> ms,
                                        const RunFn& run = {});

/// For power-of-2 block sizes and every k with m | n-k on n <= n_max: the
/// exhaustive maximum of splitting-phase tests equals
/// (n-k)/m + (1+log2 m)k exactly (whenever the formula's regime applies:
/// m = 1 or n-k >= m), the all-low pattern 1..k attains it, and total tests
/// never exceed it by more than m-1.
CheckResult check_worst_case_grid(Label n_max, std::span<const int> ms,
                                  const RunFn& run = {});

/// The headline instance n=18, k=2, m=4: the adversarial run takes exactly
/// 10 tests, equal to the formula, and 10 is the exhaustive splitting-phase
/// maximum over all 153 two-defective patterns.
CheckResult check_worst_case_headline(const RunFn& run = {});

/// Fast suffix-walk kernel reproduces the reference run exhaustively.
CheckResult check_fast_agreement(Label n_max, int m_max);

/// Capped kernel vs capped reference for every budget 0..T+2 on every
/// pattern: spent tests, success, resolved prefix, padding, and budget
/// monotonicity of success.
CheckResult check_capped_agreement(Label n_max, int m_max);

/// Flipping one item's status never moves the test total by more than 2m
/// (the constant behind the concentration bound), exhaustively.
CheckResult check_bounded_differences(Label n_max, int m_max, const RunFn& run = {});

/// Closed-form per-pass expectations against exhaustive enumeration of all
/// 2^m block patterns with i.i.d. weights, for m <= m_max, to 1e-12.
CheckResult check_pass_formulas(int m_max);

/// Zero-error strategy on the grid p = 0.005..0.5 step 0.005: aspect ratio
/// beats the counting bound, rate > 0.9, aspect within 11% of entropy.
CheckResult check_zero_error_rates();

/// Small-error strategy on the same grid: rate > 0.95, aspect within 5% of
/// entropy, never worse than the zero-error aspect.
CheckResult check_avg_rates();

/// Block-size-2 specializations: aspect closed forms, the crossing of
/// tests-per-item = 1 at p = (3 - sqrt 5)/2, and the optimal-m switch there.
CheckResult check_m2_forms();

/// Optimal-m selectors run their internal cross-checks over p = 0.001..0.999.
CheckResult check_optimal_m_scan();

/// Same seed => bit-identical Monte-Carlo results, for any thread count.
CheckResult check_reproducibility(std::uint64_t seed);

/// Fixed-k sampling is uniform over k-subsets (chi-squared on n=4, k=2).
CheckResult check_fixed_k_uniformity(std::uint64_t seed);

/// Fixed-k and iid models agree on mean tests per item within 1% at n=10^4.
CheckResult check_fixed_k_matches_iid(std::uint64_t seed);

/// Measured mean tests per item converges to avg_aspect: within 2% at n=10^4,
/// 1% at 10^5, 0.5% at 10^6 (rungs above n_max are skipped).
CheckResult check_mc_convergence(std::uint64_t seed, Label n_max);

/// Tail frequencies at delta = 0.05 for n = 10^3, 10^4, 10^5 stay under the
/// analytic bound and decrease with n; capped-run error rates at budget
/// factor 1.05 decrease with n and drop below 1% at n = 10^5.
CheckResult check_concentration(std::uint64_t seed);

enum class Level { quick, full };

/// Streams one line per check to `progress` (if given) and returns all
/// results. quick runs the light invariants (a second or two); full adds the
/// exhaustive grids and Monte-Carlo suites.
std::vector<CheckResult> run_verification(Level level, std::uint64_t seed,
                                          std::ostream* progress = nullptr);

/// 0 when everything passed, 1 otherwise.
int verification_exit_code(std::span<const CheckResult> results);

}  // namespace gt::checks
