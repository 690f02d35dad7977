#pragma once

#include <cstdint>

namespace gt::theory {

/// Every rate claim is measured against this grid tolerance; optimal-m
/// selectors also use it to nudge floor/ceil boundaries so exact ties resolve
/// to the closed form's side.
inline constexpr double kBoundaryNudge = 1e-12;

/// Binary entropy in bits; defined on [0,1] with value 0 at the endpoints.
/// Faults "domain" outside [0,1].
double binary_entropy(double p);

/// log2 of the binomial coefficient C(n,k) via lgamma. Faults "domain"
/// unless 0 <= k <= n.
double combinatorial_entropy(std::int64_t n, std::int64_t k);

/// Greatest power of 2 that is <= x, for x >= 1 (faults "domain" below 1).
/// Authoritative tie-break: values within kBoundaryNudge of an exact power
/// round up to it.
std::int64_t floor_pow2(double x);

/// Tests per item of the zero-error splitting strategy with power-of-2 block
/// size m: 1/m + (1 + log2 m - 1/m) p. Faults "domain" unless 0 < p < 1 and
/// m is a power of 2.
double zero_error_aspect(double p, std::int64_t m);

/// Block size minimizing zero_error_aspect over powers of 2: the closed form
/// floor_pow2(1/p - 1) clamped to >= 1, cross-checked in-function against a
/// grid scan of candidate powers (faults "optimal-m" if they ever disagree).
std::int64_t zero_error_optimal_m(double p);

/// Expected tests of one driver pass over a fresh block of m i.i.d.(p)
/// items, q = 1-p: q^m + (1 - q^(m-2b))(a+1) + (q^(m-2b) - q^m)(a+2), with
/// a = floor(log2 m), b = m - 2^a. Faults "domain" unless 0 < p < 1, m >= 1.
double pass_expected_tests(double p, int m);

/// Expected items resolved by one such pass:
/// m q^m + (1/p)(1 + m q^(m+1) - (m+1) q^m). Same domain.
double pass_expected_items(double p, int m);

/// Small-error tests-per-item ratio pass_expected_tests / pass_expected_items.
double avg_aspect(double p, int m);

/// Block size minimizing avg_aspect over all m >= 1: the closed form
/// ceil(-log(2-p) / log(1-p)) clamped to >= 1, cross-checked in-function
/// against a grid scan (faults "optimal-m" on disagreement).
int small_error_optimal_m(double p);

/// avg_aspect at the optimal block size for p.
double optimal_avg_aspect(double p);

/// Bounded-differences tail bound for the capped strategy at relative
/// deviation delta: min(1, exp(-delta^2 H(p)^2 n / (2 m^2))), using that one
/// flipped item moves the total test count by at most 2m. Faults "domain"
/// unless n >= 1, m >= 1, delta > 0, 0 < p < 1.
double mcdiarmid_bound(std::int64_t n, int m, double delta, double p);

}  // namespace gt::theory
