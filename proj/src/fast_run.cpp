#include "grouptest/fast_run.hpp"

#include <bit>
#include <cstddef>

#include "grouptest/codewords.hpp"
#include "grouptest/fault.hpp"

namespace gt::fast {
namespace {

struct BlockGeometry {
  int m;
  int a;       // floor(log2 m)
  int nshort;  // positions 1..nshort have codeword length a, the rest a+1

  explicit BlockGeometry(int m_) : m(m_) {
    a = std::bit_width(static_cast<std::uint32_t>(m)) - 1;
    const int b = m - (1 << a);
    nshort = m - 2 * b;
  }

  std::int64_t word_length(int pos) const { return a + (pos > nshort ? 1 : 0); }
};

// 1-based position of the first defective in the block starting at label s,
// or 0 when the block is clean.
int first_defective(const std::vector<bool>& bits, Label s, int m) {
  for (int t = 0; t < m; ++t)
    if (bits[static_cast<std::size_t>(s - 1 + t)]) return t + 1;
  return 0;
}

}  // namespace

PlainResult run_plain(const DefectivePattern& pattern, int m) {
  if (m < 1) throw Fault("invalid-spec", "block size must be at least 1");
  const Label n = pattern.size();
  const std::vector<bool>& bits = pattern.bits();
  const BlockGeometry geo(m);

  PlainResult out;
  Label s = 1;  // items s..n are unresolved
  while (n - s + 1 >= m) {
    const int j = first_defective(bits, s, m);
    if (j == 0) {
      out.tests += 1;
      s += m;
    } else {
      out.tests += 1 + geo.word_length(j);
      s += j;
    }
  }
  out.individual_phase_tests = n - s + 1;
  out.tests += out.individual_phase_tests;
  return out;
}

CappedResult run_capped(const DefectivePattern& pattern, int m, std::int64_t budget) {
  if (m < 1) throw Fault("invalid-spec", "block size must be at least 1");
  if (budget < 0) throw Fault("invalid-spec", "budget must be nonnegative");
  const Label n = pattern.size();
  const std::vector<bool>& bits = pattern.bits();
  const BlockGeometry geo(m);
  const CodewordTable table = huffman_codewords(m);

  CappedResult out;
  Label s = 1;
  Label resolved = 0;  // items 1..resolved carry their true status

  while (n - s + 1 >= m) {
    const int j = first_defective(bits, s, m);
    const std::int64_t cost = 1 + (j == 0 ? 0 : geo.word_length(j));
    if (out.natural_tests + cost <= budget) {
      out.natural_tests += cost;
      s += (j == 0 ? m : j);
      resolved = s - 1;
      continue;
    }
    if (out.natural_tests >= budget) break;

    // The pass that crosses the budget: run the block test, then walk the
    // codeword tree test by test. Negatives clear the low part of the
    // candidate range, so the resolved prefix advances exactly as far as the
    // reference run's completed tests took it.
    out.natural_tests += 1;  // block test (j == 0 would have fit wholesale)
    int lo = 1, hi = m;
    bool truncated = false;
    for (int k = 1; lo < hi; ++k) {
      if (out.natural_tests >= budget) {
        truncated = true;
        break;
      }
      out.natural_tests += 1;
      int mid = 0;  // last position in [lo, hi] whose k-th bit is 0
      for (int pos = hi; pos >= lo; --pos)
        if (table.words[static_cast<std::size_t>(pos - 1)].bit(k) == 0) {
          mid = pos;
          break;
        }
      if (j <= mid) {
        hi = mid;
      } else {
        lo = mid + 1;
        resolved = s - 1 + lo - 1;
      }
    }
    if (!truncated) {
      s += j;
      resolved = s - 1;
    }
    // Either way the budget is now spent; the guards above end the loop.
  }

  // Individual phase on the remaining suffix, as far as the budget reaches.
  const Label rest = n - s + 1;
  if (rest > 0 && out.natural_tests < budget) {
    const Label step =
        static_cast<Label>(std::min<std::int64_t>(rest, budget - out.natural_tests));
    out.natural_tests += step;
    resolved = s - 1 + step;
  }

  out.resolved_prefix = resolved;
  out.completed = resolved == n;
  out.success = true;
  for (Label i = resolved + 1; i <= n; ++i)
    if (bits[static_cast<std::size_t>(i - 1)]) {
      out.success = false;
      break;
    }
  return out;
}

}  // namespace gt::fast
