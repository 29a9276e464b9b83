#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dwork/ffield.hpp"

namespace dwork {

inline constexpr double kUnitRoundoff = 0x1p-53;
inline constexpr std::uint64_t kDefaultGaussCap = 16384;

/// Complex approximation of a cyclotomic number with an absolute error bound.
class CycValue {
 public:
  CycValue() = default;
  CycValue(std::complex<double> z, double err) : z_(z), err_(err) {}
  /// Exactly representable real (integers up to 2^53).
  static CycValue exact(double x) { return CycValue({x, 0.0}, 0.0); }

  std::complex<double> value() const noexcept { return z_; }
  double re() const noexcept { return z_.real(); }
  double im() const noexcept { return z_.imag(); }
  double err() const noexcept { return err_; }
  double abs() const noexcept { return std::abs(z_); }

  CycValue& operator+=(const CycValue& o);
  CycValue& operator-=(const CycValue& o);
  CycValue& operator*=(const CycValue& o);
  CycValue& operator/=(const CycValue& o);
  /// Multiplication by an exact real scalar.
  CycValue scaled(double s) const;

  friend CycValue operator+(CycValue a, const CycValue& b) { return a += b; }
  friend CycValue operator-(CycValue a, const CycValue& b) { return a -= b; }
  friend CycValue operator*(CycValue a, const CycValue& b) { return a *= b; }
  friend CycValue operator/(CycValue a, const CycValue& b) { return a /= b; }
  CycValue operator-() const { return CycValue(-z_, err_); }

 private:
  std::complex<double> z_{0.0, 0.0};
  double err_ = 0.0;
};

/// Neumaier-compensated sum of CycValues; the bound covers the summation error.
class CycSum {
 public:
  void add(const CycValue& v);
  CycValue total() const;

 private:
  double re_ = 0, re_c_ = 0, im_ = 0, im_c_ = 0;
  double err_ = 0, mag_ = 0;
  std::size_t terms_ = 0;
};

/// Nearest integer; throws RoundingFailure unless |value - nearest| < tol and |value - nearest| + err < 1/2.
std::int64_t round_to_integer(const CycValue& v, double tol);
/// Observed distance to the nearest integer.
double rounding_residual(const CycValue& v);

/// Multiplicative character generator^k -> zeta_{q-1}^{a k}.
struct MultChar {
  std::uint32_t a = 0;
  std::uint32_t modulus = 1;  // q - 1

  bool trivial() const noexcept { return a == 0; }
  std::uint32_t order() const noexcept;
  MultChar pow(std::int64_t e) const noexcept;
  MultChar inverse() const noexcept { return pow(-1); }
  friend MultChar operator*(MultChar x, MultChar y) noexcept {
    return {static_cast<std::uint32_t>((std::uint64_t{x.a} + y.a) % x.modulus), x.modulus};
  }
  friend bool operator==(const MultChar&, const MultChar&) = default;
};

/// Root-of-unity tables and all Gauss sums of one field, built eagerly.
/// Read-only after construction.
class CharTable {
 public:
  explicit CharTable(FieldCtx field, std::uint64_t gauss_cap = kDefaultGaussCap);

  const FieldCtx& field() const noexcept { return field_; }
  std::uint32_t q() const noexcept { return field_.q(); }
  std::uint32_t order() const noexcept { return field_.order(); }

  MultChar character(std::int64_t a) const noexcept;
  /// chi^k for the character chi of order n with exponent (q-1)/n.
  MultChar order_n(unsigned n, std::int64_t k = 1) const;
  /// Exponent (q-1)/n; OrderUnavailable when n does not divide q-1.
  std::uint32_t order_n_exponent(unsigned n) const;

  /// zeta_{q-1}^k.
  CycValue root(std::int64_t k) const noexcept;
  /// zeta_p^t.
  CycValue additive_root(std::uint32_t t) const noexcept { return add_roots_[t % field_.p()]; }

  CycValue additive(Elem x) const noexcept { return additive_root(field_.trace(x)); }
  CycValue mult(MultChar chi, Elem x) const;

  const CycValue& gauss(MultChar chi) const noexcept { return gauss_[chi.a]; }
  const CycValue& gauss(std::int64_t a) const noexcept;
  /// Recomputes g(chi) by the same summation as the memo.
  CycValue gauss_direct(MultChar chi) const;

  /// J(chi_1..chi_r) from Gauss sums; all-trivial tuples use ((q-1)^r - (-1)^r)/q.
  CycValue jacobi_from_gauss(std::span<const MultChar> chis) const;

  /// q^{e/2} for an integer e.
  CycValue q_half_power(int twice_exp) const;

 private:
  FieldCtx field_;
  std::vector<CycValue> roots_;      // zeta_{q-1}^k
  std::vector<CycValue> add_roots_;  // zeta_p^t
  std::vector<std::uint32_t> trace_by_log_;
  std::vector<CycValue> gauss_;
};

CycValue additive_char(const CharTable& t, Elem x);
CycValue mult_char_eval(const CharTable& t, MultChar chi, Elem x);
CycValue gauss_sum(const CharTable& t, MultChar chi);
/// Direct (r-1)-fold summation for r <= 3, Gauss-sum quotient above. At r = 3
/// both routes are evaluated and must agree within `tol`.
CycValue jacobi_sum(const CharTable& t, std::span<const MultChar> chis, double tol = 1e-9);
/// Direct summation over x_1 + ... + x_r = 1 (r <= 3 only).
CycValue jacobi_direct(const CharTable& t, std::span<const MultChar> chis);

struct IdentityCheck {
  std::string name;
  double max_residual = 0;
  std::string witness;  // where the largest residual occurred
  std::uint64_t evaluations = 0;
  bool skipped_trivial = false;
};

struct IdentityReport {
  std::uint32_t p = 0;
  unsigned f = 0;
  std::uint32_t q = 0;
  double tol = 0;
  std::uint64_t seed = 0;
  std::vector<IdentityCheck> checks;
  double max_residual = 0;
  bool passed = false;
};

/// Evaluates both sides of every character-sum identity over the field.
/// Residuals are relative: |L - R| / max(1, |L|, |R|).
IdentityReport identity_suite(const CharTable& t, double tol, std::uint64_t seed = 1);
/// Throws ToleranceExceeded naming the failing identity and witness.
void require_passed(const IdentityReport& r);

}  // namespace dwork
