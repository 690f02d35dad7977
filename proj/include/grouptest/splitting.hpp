#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "grouptest/oracle.hpp"

namespace gt {

/// Outcome of one binary split on a block known to contain a defective.
struct SplitResult {
  ItemId defective{};                        // lowest-labeled defective in the block
  std::vector<ItemId> cleared_nondefectives; // exactly the block items before it, label order
  std::int64_t tests_used = 0;               // split tests only; the caller's block test is not counted
};

/// Halving search: repeatedly test the first half of the candidate range,
/// keep it on a positive and discard (clear) it on a negative, until one item
/// remains. Block size must be a power of 2; uses exactly log2(size) tests.
/// Faults: "invalid-block-size" if size is not a power of 2, "domain" if the
/// block is empty or not in increasing label order, "empty-split" if the
/// block contains no defective.
SplitResult binary_split_pow2(std::span<const ItemId> block, TestOracle& oracle);

/// Codeword-guided search for arbitrary block sizes: the k-th test pools the
/// still-candidate items whose k-th codeword bit is 0; a positive keeps that
/// pool, a negative clears it. Uses exactly the codeword length of the found
/// position (floor(log2 m) or that plus one) and coincides with
/// binary_split_pow2, test by test, when the size is a power of 2.
/// Faults: "domain" and "empty-split" as above.
SplitResult binary_split_general(std::span<const ItemId> block, TestOracle& oracle);

namespace detail {

/// Budget-aware cores used by the run driver: discovered nondefectives are
/// appended to `cleared` as each test resolves, so when TestOracle throws
/// BudgetExhausted mid-split the items cleared so far are already recorded.
ItemId split_pow2_impl(std::span<const ItemId> block, TestOracle& oracle,
                       std::vector<ItemId>& cleared);
ItemId split_general_impl(std::span<const ItemId> block, TestOracle& oracle,
                          std::vector<ItemId>& cleared);

}  // namespace detail

}  // namespace gt
