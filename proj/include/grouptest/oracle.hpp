#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "grouptest/pattern.hpp"

namespace gt {

/// One pooled test as it was asked: the pooled labels and the OR outcome.
struct TestRecord {
  std::vector<Label> pool;
  bool positive = false;

  friend bool operator==(const TestRecord&, const TestRecord&) = default;
};

/// Thrown by TestOracle::test when a budget is set and already spent. The
/// test that would have run is not recorded. Not a Fault: exhausting a test
/// budget is an expected outcome of capped runs, not a caller error.
struct BudgetExhausted {};

/// Answers pooled OR-queries against a fixed ground-truth pattern and keeps
/// the full transcript; tests_used() always equals transcript().size().
///
/// With set_budget(b), the (b+1)-th test throws BudgetExhausted instead of
/// running, so algorithms can be cut off mid-flight at an exact test count.
class TestOracle {
 public:
  explicit TestOracle(const DefectivePattern& pattern) : pattern_(&pattern) {}

  /// Runs one pooled test. An empty pool is a legal test and reads negative.
  bool test(std::span<const ItemId> pool) {
    if (budget_ >= 0 && tests_used() >= budget_) throw BudgetExhausted{};
    TestRecord rec;
    rec.pool.reserve(pool.size());
    for (ItemId id : pool) {
      rec.pool.push_back(id.value);
      rec.positive = rec.positive || pattern_->is_defective(id);
    }
    bool positive = rec.positive;
    transcript_.push_back(std::move(rec));
    return positive;
  }

  std::int64_t tests_used() const {
    return static_cast<std::int64_t>(transcript_.size());
  }

  const std::vector<TestRecord>& transcript() const { return transcript_; }

  std::vector<TestRecord> take_transcript() { return std::move(transcript_); }

  const DefectivePattern& pattern() const { return *pattern_; }

  /// budget < 0 means unlimited (the default).
  void set_budget(std::int64_t budget) { budget_ = budget; }

 private:
  const DefectivePattern* pattern_;
  std::vector<TestRecord> transcript_;
  std::int64_t budget_ = -1;
};

}  // namespace gt
