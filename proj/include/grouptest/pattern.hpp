#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "grouptest/fault.hpp"

namespace gt {

/// Items carry 1-based labels throughout; label order is the tie-break order
/// everywhere (pools, splits, returned clears).
using Label = std::int32_t;

struct ItemId {
  Label value = 0;

  constexpr ItemId() = default;
  constexpr explicit ItemId(Label v) : value(v) {}

  friend constexpr bool operator==(ItemId, ItemId) = default;
  friend constexpr auto operator<=>(ItemId, ItemId) = default;
};

/// Ground-truth defectivity of items 1..n. Immutable size after construction.
class DefectivePattern {
 public:
  DefectivePattern() = default;

  explicit DefectivePattern(Label n) : bits_(checked_size(n), false) {}

  DefectivePattern(Label n, std::vector<bool> bits) : bits_(std::move(bits)) {
    if (bits_.size() != checked_size(n))
      throw Fault("domain", "pattern bit vector does not match n");
  }

  /// Bit i of `mask` gives the status of item i+1 (so mask 0b101 with n=3
  /// marks items 1 and 3 defective). Requires n <= 64.
  static DefectivePattern from_mask(Label n, std::uint64_t mask) {
    if (n > 64) throw Fault("domain", "mask construction supports n <= 64");
    DefectivePattern p(n);
    for (Label i = 0; i < n; ++i)
      if (mask >> i & 1u) p.bits_[static_cast<std::size_t>(i)] = true;
    return p;
  }

  Label size() const { return static_cast<Label>(bits_.size()); }

  bool is_defective(ItemId id) const {
    if (id.value < 1 || id.value > size())
      throw Fault("domain", "item label out of range");
    return bits_[static_cast<std::size_t>(id.value - 1)];
  }

  void set(ItemId id, bool defective) {
    if (id.value < 1 || id.value > size())
      throw Fault("domain", "item label out of range");
    bits_[static_cast<std::size_t>(id.value - 1)] = defective;
  }

  Label defective_count() const {
    Label k = 0;
    for (bool b : bits_) k += b ? 1 : 0;
    return k;
  }

  const std::vector<bool>& bits() const { return bits_; }

  friend bool operator==(const DefectivePattern&, const DefectivePattern&) = default;

 private:
  static std::size_t checked_size(Label n) {
    if (n < 0) throw Fault("domain", "population size must be nonnegative");
    return static_cast<std::size_t>(n);
  }

  std::vector<bool> bits_;
};

}  // namespace gt
