#include "grouptest/driver.hpp"

#include <bit>
#include <deque>
#include <span>

#include "grouptest/fault.hpp"
#include "grouptest/splitting.hpp"

namespace gt {
namespace {

RunResult run_impl(const DefectivePattern& pattern, int m,
                   std::optional<std::int64_t> budget) {
  if (m < 1) throw Fault("invalid-spec", "block size must be at least 1");
  if (budget && *budget < 0) throw Fault("invalid-spec", "budget must be nonnegative");

  const Label n = pattern.size();
  TestOracle oracle(pattern);
  if (budget) oracle.set_budget(*budget);

  RunResult out;
  out.classification.assign(static_cast<std::size_t>(n), false);
  auto resolve = [&](ItemId id, bool defective) {
    out.classification[static_cast<std::size_t>(id.value - 1)] = defective;
    out.discovery_order.push_back(id.value);
  };

  std::deque<ItemId> pool;
  for (Label i = 1; i <= n; ++i) pool.emplace_back(i);
  std::vector<ItemId> block;
  std::vector<ItemId> cleared;  // partial clears survive a budget cutoff
  const bool pow2 = std::has_single_bit(static_cast<std::uint32_t>(m));

  try {
    while (pool.size() >= static_cast<std::size_t>(m)) {
      block.assign(pool.begin(), pool.begin() + m);
      pool.erase(pool.begin(), pool.begin() + m);
      if (!oracle.test(block)) {
        for (ItemId id : block) resolve(id, false);
        continue;
      }
      cleared.clear();
      const ItemId found = pow2 ? detail::split_pow2_impl(block, oracle, cleared)
                                : detail::split_general_impl(block, oracle, cleared);
      for (ItemId id : cleared) resolve(id, false);
      cleared.clear();
      resolve(found, true);
      // Items after the found defective are still unresolved; they rejoin at
      // the front so the pool stays in label order.
      for (auto it = block.rbegin(); it != block.rend() && it->value > found.value; ++it)
        pool.push_front(*it);
    }
    while (!pool.empty()) {
      const ItemId item = pool.front();
      const bool positive = oracle.test(std::span<const ItemId>(&item, 1));
      ++out.individual_phase_tests;
      pool.pop_front();
      resolve(item, positive);
    }
    if (budget) {
      while (oracle.tests_used() < *budget) {
        oracle.test(std::span<const ItemId>{});
        ++out.padding_tests;
      }
    }
  } catch (const BudgetExhausted&) {
    // Keep what the interrupted split had already cleared; everything else
    // still unresolved is left classified nondefective.
    for (ItemId id : cleared) resolve(id, false);
  }

  out.tests_used = oracle.tests_used();
  out.transcript = oracle.take_transcript();
  out.success = out.classification == pattern.bits();
  return out;
}

}  // namespace

void RunConfig::validate() const {
  if (m < 1) throw Fault("invalid-spec", "block size must be at least 1");
  if (mode == RunMode::capped && !budget)
    throw Fault("invalid-spec", "capped mode needs a budget");
  if (mode == RunMode::plain && budget)
    throw Fault("invalid-spec", "plain mode does not take a budget");
  if (budget && *budget < 0) throw Fault("invalid-spec", "budget must be nonnegative");
}

RunResult run_gbs(const DefectivePattern& pattern, int m) {
  return run_impl(pattern, m, std::nullopt);
}

RunResult run_gbs_capped(const DefectivePattern& pattern, int m, std::int64_t budget) {
  if (budget < 0) throw Fault("invalid-spec", "budget must be nonnegative");
  return run_impl(pattern, m, budget);
}

RunResult run(const DefectivePattern& pattern, const RunConfig& config) {
  config.validate();
  return run_impl(pattern, config.m, config.budget);
}

std::int64_t worst_case_tests(std::int64_t n, std::int64_t k, int m) {
  if (m < 1 || !std::has_single_bit(static_cast<std::uint64_t>(m)))
    throw Fault("domain", "worst-case formula needs a power-of-2 block size");
  if (n < 0 || k < 0 || k > n)
    throw Fault("domain", "worst-case formula needs 0 <= k <= n");
  if ((n - k) % m != 0)
    throw Fault("end-effects",
                "worst-case formula needs m | n-k; pad n or use the +m-1 slack bound");
  const int log2m = std::bit_width(static_cast<std::uint64_t>(m)) - 1;
  return (n - k) / m + (1 + log2m) * k;
}

}  // namespace gt
