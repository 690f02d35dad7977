#pragma once

#include <cstdint>

#include "grouptest/pattern.hpp"

namespace gt::fast {

struct PlainResult {
  std::int64_t tests = 0;                   // matches run_gbs tests_used
  std::int64_t individual_phase_tests = 0;  // matches run_gbs accounting
};

/// Transcript-free replay of run_gbs. Because blocks are taken from the low
/// end and a split clears exactly the items before the found defective, the
/// unresolved items always form a contiguous suffix; one forward walk over
/// the pattern therefore reproduces the exact test count in O(n) without
/// simulating pools. Faults "invalid-spec" on m < 1.
PlainResult run_plain(const DefectivePattern& pattern, int m);

struct CappedResult {
  bool completed = false;         // all items resolved within the budget
  bool success = false;           // truncated classification matches anyway
  std::int64_t natural_tests = 0; // tests actually run (== budget when truncated)
  Label resolved_prefix = 0;      // items 1..resolved_prefix carry true status
};

/// Transcript-free replay of run_gbs_capped. Whole passes that fit in the
/// remaining budget are charged wholesale; the pass that crosses the budget
/// is walked test by test through the codeword tree so the resolved prefix
/// stops exactly where the reference run stops. reported tests_used of the
/// reference equals the budget (padding included); natural_tests here counts
/// only the real ones. Faults "invalid-spec" on m < 1 or budget < 0.
CappedResult run_capped(const DefectivePattern& pattern, int m, std::int64_t budget);

}  // namespace gt::fast
