#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "grouptest/oracle.hpp"
#include "grouptest/pattern.hpp"

namespace gt {

enum class RunMode { plain, capped };

struct RunConfig {
  int m = 1;
  RunMode mode = RunMode::plain;
  std::optional<std::int64_t> budget;  // required iff mode == capped

  /// Faults with "invalid-spec" on m < 1, a capped mode without a budget, a
  /// negative budget, or a budget given for a plain run.
  void validate() const;
};

/// Everything a run produced. `classification[i]` is the claimed status of
/// item i+1; `success` compares it to the ground truth (exact in plain mode,
/// possibly false after a truncated capped run). `discovery_order` lists
/// labels in the order their status was established.
struct RunResult {
  std::int64_t tests_used = 0;
  std::vector<bool> classification;
  bool success = false;
  std::vector<TestRecord> transcript;
  std::vector<Label> discovery_order;
  std::int64_t individual_phase_tests = 0;  // end-of-run one-item tests
  std::int64_t padding_tests = 0;           // capped-mode empty-pool top-up
};

/// Reference implementation of generalized binary splitting with block size
/// m: while at least m items are unresolved, test the m lowest-labeled ones
/// together; a negative clears them all, a positive triggers a binary split
/// that finds the lowest-labeled defective and clears exactly the items
/// before it, with the unresolved remainder returning to the front of the
/// pool; once fewer than m remain they are tested one by one. Zero-error:
/// classification always matches the pattern.
RunResult run_gbs(const DefectivePattern& pattern, int m);

/// Same algorithm under an exact test budget: the run stops before any test
/// that would exceed it (items still unresolved are reported nondefective),
/// and a run that completes early is padded with empty-pool tests, so
/// tests_used always equals the budget. Partial split information is kept:
/// items cleared by completed tests stay cleared.
RunResult run_gbs_capped(const DefectivePattern& pattern, int m, std::int64_t budget);

/// Dispatch on config.mode after config.validate().
RunResult run(const DefectivePattern& pattern, const RunConfig& config);

/// Exact worst case of the splitting phase, (n-k)/m + (1 + log2 m) * k, for
/// power-of-2 m with m | n-k: the adversary spends a full split on every
/// defective and forces every non-clearing block test to be paid for.
/// Including the end-of-run individual tests adds at most m-1 to this.
/// Faults: "domain" unless m is a power of 2 and 0 <= k <= n;
/// "end-effects" when m does not divide n-k.
std::int64_t worst_case_tests(std::int64_t n, std::int64_t k, int m);

}  // namespace gt
