#include "dwork/zeta.hpp"

#include "dwork/error.hpp"

namespace dwork {

namespace {

bool is_integer(const Rational& r) { return denominator(r) == 1; }

/// Power series product truncated to `len` terms.
std::vector<Rational> mul_trunc(std::span<const Rational> a, std::span<const Rational> b, std::size_t len) {
  std::vector<Rational> out(len, Rational(0));
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

ZetaSeries with_coeffs(const BigInt& q, std::vector<Rational> coeffs) {
  ZetaSeries z;
  z.q = q;
  z.coeffs = std::move(coeffs);
  z.counts = counts_from_series(z.coeffs);
  return z;
}

}  // namespace

bool ZetaSeries::integral() const {
  for (const auto& c : coeffs) {
    if (!is_integer(c)) return false;
  }
  return true;
}

std::vector<BigInt> ZetaSeries::integer_coeffs() const {
  std::vector<BigInt> out;
  for (const auto& c : coeffs) {
    if (!is_integer(c)) throw Error(Errc::NonIntegral, "series coefficient " + to_string(c) + " is not an integer");
    out.push_back(numerator(c));
  }
  return out;
}

ZetaSeries zeta_from_counts(const BigInt& q, std::span<const BigInt> counts) {
  ZetaSeries z;
  z.q = q;
  z.counts.assign(counts.begin(), counts.end());
  const std::size_t R = counts.size();
  z.coeffs.assign(R + 1, Rational(0));
  z.coeffs[0] = 1;
  // Z' = Z * sum N_r t^{r-1}  gives  k c_k = sum_{r=1}^k N_r c_{k-r}.
  for (std::size_t k = 1; k <= R; ++k) {
    Rational s = 0;
    for (std::size_t r = 1; r <= k; ++r) s += Rational(counts[r - 1]) * z.coeffs[k - r];
    z.coeffs[k] = s / static_cast<long>(k);
  }
  return z;
}

ZetaSeries zeta_from_counts(std::int64_t q, std::span<const std::int64_t> counts) {
  std::vector<BigInt> c(counts.begin(), counts.end());
  return zeta_from_counts(BigInt(q), c);
}

std::vector<BigInt> counts_from_series(std::span<const Rational> coeffs) {
  if (coeffs.empty() || coeffs[0] != 1) throw Error(Errc::InvalidArgument, "series must start with 1");
  std::vector<Rational> n;
  std::vector<BigInt> out;
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    Rational v = Rational(static_cast<long>(k)) * coeffs[k];
    for (std::size_t r = 1; r < k; ++r) v -= n[r - 1] * coeffs[k - r];
    if (!is_integer(v)) throw Error(Errc::NonIntegral, "recovered count " + to_string(v) + " is not an integer");
    n.push_back(v);
    out.push_back(numerator(v));
  }
  return out;
}

ZetaSeries strip_trivial(const ZetaSeries& zs, unsigned n) {
  const std::size_t len = zs.coeffs.size();
  std::vector<Rational> cur = zs.coeffs;
  BigInt qi = 1;
  for (unsigned i = 0; i + 1 < n; ++i) {
    const std::vector<Rational> factor{Rational(1), Rational(-qi)};
    cur = mul_trunc(cur, factor, len);
    qi *= zs.q;
  }
  return with_coeffs(zs.q, std::move(cur));
}

ZetaSeries restore_trivial(const ZetaSeries& zs, unsigned n) {
  const std::size_t len = zs.coeffs.size();
  std::vector<Rational> cur = zs.coeffs;
  BigInt qi = 1;
  for (unsigned i = 0; i + 1 < n; ++i) {
    std::vector<Rational> geom(len);
    BigInt p = 1;
    for (std::size_t j = 0; j < len; ++j) {
      geom[j] = Rational(p);
      p *= qi;
    }
    cur = mul_trunc(cur, geom, len);
    qi *= zs.q;
  }
  return with_coeffs(zs.q, std::move(cur));
}

BigInt r_degree(unsigned n) {
  if (n < 3) throw Error(Errc::InvalidArgument, "r_degree needs n >= 3");
  BigInt a = boost::multiprecision::pow(BigInt(n - 1), n);
  a += (n % 2 == 0 ? BigInt(n - 1) : BigInt(-static_cast<long>(n - 1)));
  if (a % n != 0) throw Error(Errc::NonIntegral, "degree formula is not integral for n = " + std::to_string(n));
  return a / n - (n - 1);
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace dwork
