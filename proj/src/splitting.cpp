#include "grouptest/splitting.hpp"

#include <bit>
#include <cstddef>
#include <numeric>

#include "grouptest/codewords.hpp"
#include "grouptest/fault.hpp"

namespace gt {
namespace {

// Preconditions shared by both searches; checked before any test is spent.
void validate_block(std::span<const ItemId> block, const TestOracle& oracle) {
  if (block.empty()) throw Fault("domain", "split block is empty");
  for (std::size_t i = 1; i < block.size(); ++i)
    if (block[i].value <= block[i - 1].value)
      throw Fault("domain", "split block must be in increasing label order");
  for (ItemId id : block)
    if (oracle.pattern().is_defective(id)) return;
  throw Fault("empty-split", "split block contains no defective item");
}

SplitResult run_split(std::span<const ItemId> block, TestOracle& oracle,
                      ItemId (*impl)(std::span<const ItemId>, TestOracle&,
                                     std::vector<ItemId>&)) {
  const std::int64_t before = oracle.tests_used();
  SplitResult result;
  result.defective = impl(block, oracle, result.cleared_nondefectives);
  result.tests_used = oracle.tests_used() - before;
  return result;
}

}  // namespace

namespace detail {

ItemId split_pow2_impl(std::span<const ItemId> block, TestOracle& oracle,
                       std::vector<ItemId>& cleared) {
  validate_block(block, oracle);
  if (!std::has_single_bit(block.size()))
    throw Fault("invalid-block-size",
                "halving split needs a power-of-2 block, got " +
                    std::to_string(block.size()));

  std::size_t lo = 0, hi = block.size();  // candidate range [lo, hi)
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (oracle.test(block.subspan(lo, mid - lo))) {
      hi = mid;
    } else {
      cleared.insert(cleared.end(), block.begin() + lo, block.begin() + mid);
      lo = mid;
    }
  }
  return block[lo];
}

ItemId split_general_impl(std::span<const ItemId> block, TestOracle& oracle,
                          std::vector<ItemId>& cleared) {
  validate_block(block, oracle);

  const int m = static_cast<int>(block.size());
  if (m == 1) return block[0];
  const CodewordTable table = huffman_codewords(m);

  std::vector<int> candidates(block.size());
  std::iota(candidates.begin(), candidates.end(), 0);
  std::vector<int> kept;
  std::vector<ItemId> pool;

  for (int k = 1; candidates.size() > 1; ++k) {
    pool.clear();
    kept.clear();
    for (int pos : candidates)
      if (table.words[static_cast<std::size_t>(pos)].bit(k) == 0) {
        pool.push_back(block[static_cast<std::size_t>(pos)]);
        kept.push_back(pos);
      }
    if (oracle.test(pool)) {
      candidates = kept;  // defective is in the tested pool
    } else {
      cleared.insert(cleared.end(), pool.begin(), pool.end());
      std::erase_if(candidates, [&](int pos) {
        return table.words[static_cast<std::size_t>(pos)].bit(k) == 0;
      });
    }
  }
  return block[static_cast<std::size_t>(candidates.front())];
}

}  // namespace detail

SplitResult binary_split_pow2(std::span<const ItemId> block, TestOracle& oracle) {
  return run_split(block, oracle, &detail::split_pow2_impl);
}

SplitResult binary_split_general(std::span<const ItemId> block, TestOracle& oracle) {
  return run_split(block, oracle, &detail::split_general_impl);
}

}  // namespace gt
