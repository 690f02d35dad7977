#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "grouptest/pattern.hpp"

namespace testutil {

constexpr std::uint64_t kSeed = 0xC0FFEE;

inline gt::DefectivePattern pat(gt::Label n, std::uint64_t mask) {
  return gt::DefectivePattern::from_mask(n, mask);
}

inline std::vector<gt::ItemId> block(std::initializer_list<gt::Label> labels) {
  std::vector<gt::ItemId> items;
  for (gt::Label l : labels) items.push_back(gt::ItemId{l});
  return items;
}

inline std::vector<gt::ItemId> run_of(gt::Label first, gt::Label count) {
  std::vector<gt::ItemId> items;
  for (gt::Label i = 0; i < count; ++i) items.push_back(gt::ItemId{first + i});
  return items;
}

inline std::vector<gt::Label> labels_of(const std::vector<gt::ItemId>& items) {
  std::vector<gt::Label> out;
  for (gt::ItemId id : items) out.push_back(id.value);
  return out;
}

}  // namespace testutil
