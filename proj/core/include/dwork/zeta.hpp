#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace dwork {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Truncated exp(sum_{r>=1} N_r t^r / r): coeffs[0..R] with R = counts.size().
struct ZetaSeries {
  BigInt q;
  std::vector<BigInt> counts;   // N_1..N_R (after stripping: the counts the series implies)
  std::vector<Rational> coeffs;

  bool integral() const;
  /// Coefficients as integers; throws NonIntegral otherwise.
  std::vector<BigInt> integer_coeffs() const;
};

ZetaSeries zeta_from_counts(const BigInt& q, std::span<const BigInt> counts);
ZetaSeries zeta_from_counts(std::int64_t q, std::span<const std::int64_t> counts);

/// Inverse of the exponential: N_k = k c_k - sum_{r<k} N_r c_{k-r}. Throws
/// NonIntegral if a recovered count is not an integer.
std::vector<BigInt> counts_from_series(std::span<const Rational> coeffs);

/// Multiplies by (1-t)(1-qt)...(1-q^{n-2}t), truncated to the same length.
ZetaSeries strip_trivial(const ZetaSeries& zs, unsigned n);
/// Divides by the same product; inverse of strip_trivial on truncations.
ZetaSeries restore_trivial(const ZetaSeries& zs, unsigned n);

/// ((n-1)^n + (-1)^n (n-1)) / n - (n-1).
BigInt r_degree(unsigned n);

std::string to_string(const Rational& r);

}  // namespace dwork
