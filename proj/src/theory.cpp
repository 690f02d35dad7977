#include "grouptest/theory.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "grouptest/fault.hpp"

namespace gt::theory {
namespace {

void require_probability(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw Fault("domain", "need a defectivity rate strictly between 0 and 1");
}

bool is_pow2(std::int64_t m) {
  return m >= 1 && std::has_single_bit(static_cast<std::uint64_t>(m));
}

int exact_log2(std::int64_t m) {
  return std::bit_width(static_cast<std::uint64_t>(m)) - 1;
}

}  // namespace

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Fault("domain", "entropy needs p in [0,1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double combinatorial_entropy(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n)
    throw Fault("domain", "binomial coefficient needs 0 <= k <= n");
  const double ln = std::lgamma(static_cast<double>(n) + 1.0) -
                    std::lgamma(static_cast<double>(k) + 1.0) -
                    std::lgamma(static_cast<double>(n - k) + 1.0);
  return ln / std::numbers::ln2;
}

std::int64_t floor_pow2(double x) {
  if (!(x >= 1.0)) throw Fault("domain", "floor_pow2 needs x >= 1");
  const int e = static_cast<int>(std::floor(std::log2(x) + kBoundaryNudge));
  return std::int64_t{1} << std::min(e, 62);
}

double zero_error_aspect(double p, std::int64_t m) {
  require_probability(p);
  if (!is_pow2(m)) throw Fault("domain", "zero-error strategy needs a power-of-2 block size");
  const double inv_m = 1.0 / static_cast<double>(m);
  return inv_m + (1.0 + exact_log2(m) - inv_m) * p;
}

std::int64_t zero_error_optimal_m(double p) {
  require_probability(p);
  const double ratio = 1.0 / p - 1.0;
  const std::int64_t m = ratio < 1.0 ? 1 : floor_pow2(ratio);
  // The closed form must never lose to another power of 2; scan two octaves
  // past it so a formula regression cannot slip through silently (beyond the
  // basin the aspect only grows with the block size).
  const double best = zero_error_aspect(p, m);
  const int scan_top = std::min(62, exact_log2(m) + 2);
  for (int e = 0; e <= scan_top; ++e)
    if (zero_error_aspect(p, std::int64_t{1} << e) < best - kBoundaryNudge)
      throw Fault("optimal-m", "closed-form block size loses to m=2^" + std::to_string(e) +
                                   " at p=" + std::to_string(p));
  return m;
}

double pass_expected_tests(double p, int m) {
  require_probability(p);
  if (m < 1) throw Fault("domain", "block size must be at least 1");
  const double q = 1.0 - p;
  const int a = exact_log2(m);
  const int b = m - (1 << a);
  const double q_short = std::pow(q, m - 2 * b);  // P(defective beyond the short words)
  const double q_all = std::pow(q, m);
  return q_all + (1.0 - q_short) * (a + 1) + (q_short - q_all) * (a + 2);
}

double pass_expected_items(double p, int m) {
  require_probability(p);
  if (m < 1) throw Fault("domain", "block size must be at least 1");
  const double q = 1.0 - p;
  const double q_m = std::pow(q, m);
  return m * q_m + (1.0 + m * q_m * q - (m + 1) * q_m) / p;
}

double avg_aspect(double p, int m) {
  return pass_expected_tests(p, m) / pass_expected_items(p, m);
}

int small_error_optimal_m(double p) {
  require_probability(p);
  const double ratio = -std::log(2.0 - p) / std::log(1.0 - p);
  if (!(ratio < 1e9))
    throw Fault("domain", "defectivity rate too small for a finite block size");
  const int m = std::max(1, static_cast<int>(std::ceil(ratio - kBoundaryNudge)));
  // The closed form must never lose to any candidate in the basin; beyond
  // 4m the ratio is climbing again, so this scan is a complete cross-check
  // (capped for the huge block sizes that only absurdly small p produce).
  const double best = avg_aspect(p, m);
  const std::int64_t scan_top = std::min<std::int64_t>(4LL * m + 8, 1 << 20);
  for (std::int64_t g = 1; g <= scan_top; ++g)
    if (avg_aspect(p, static_cast<int>(g)) < best - kBoundaryNudge)
      throw Fault("optimal-m", "closed-form block size loses to m=" + std::to_string(g) +
                                   " at p=" + std::to_string(p));
  return m;
}

double optimal_avg_aspect(double p) { return avg_aspect(p, small_error_optimal_m(p)); }

double mcdiarmid_bound(std::int64_t n, int m, double delta, double p) {
  require_probability(p);
  if (n < 1) throw Fault("domain", "population size must be at least 1");
  if (m < 1) throw Fault("domain", "block size must be at least 1");
  if (!(delta > 0.0)) throw Fault("domain", "relative deviation must be positive");
  const double h = binary_entropy(p);
  const double exponent =
      -(delta * delta) * h * h * static_cast<double>(n) / (2.0 * double(m) * double(m));
  return std::min(1.0, std::exp(exponent));
}

}  // namespace gt::theory
