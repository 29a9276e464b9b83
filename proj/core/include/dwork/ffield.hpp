#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "dwork/error.hpp"

namespace dwork {

/// Field element, encoded as an integer in [0, q). For f > 1 the base-p
/// digits of the integer are the coefficients of a polynomial of degree < f
/// (constant term in the least significant digit).
using Elem = std::uint32_t;

inline constexpr std::uint64_t kDefaultTableCap = std::uint64_t{1} << 24;

bool is_prime(std::uint64_t n) noexcept;
/// Distinct prime divisors in increasing order (trial division).
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);

enum class ArithOp { add, sub, mul, div, pow };

namespace detail {

struct FieldData {
  std::uint32_t p = 0;
  unsigned f = 0;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> modulus;   // low to high, monic, size f + 1; empty for f == 1
  Elem generator = 0;
  std::vector<Elem> exp;                // exp[k] = g^k, size 2(q-1) so sums of logs need no reduction
  std::vector<std::uint32_t> log;       // log[a] for a != 0; log[0] = kNoLog
  std::vector<std::uint32_t> trace;     // absolute trace into F_p
  std::vector<std::uint32_t> pow_p;     // p^i for i <= f
};

}  // namespace detail

/// A concrete finite field F_{p^f} with generator, discrete-log and trace
/// tables. Immutable after build; copies share the tables.
class FieldCtx {
 public:
  static constexpr std::uint32_t kNoLog = 0xffffffffu;

  /// Builds F_{p^f}. When `modulus` is omitted and f > 1 the smallest monic
  /// irreducible polynomial (coefficients read high to low) is used.
  static FieldCtx build(std::uint32_t p, unsigned f = 1,
                        std::optional<std::vector<std::uint32_t>> modulus = std::nullopt,
                        std::uint64_t table_cap = kDefaultTableCap);

  std::uint32_t p() const noexcept { return d_->p; }
  unsigned f() const noexcept { return d_->f; }
  std::uint32_t q() const noexcept { return d_->q; }
  /// Order of the multiplicative group, q - 1.
  std::uint32_t order() const noexcept { return d_->q - 1; }
  std::span<const std::uint32_t> modulus() const noexcept { return d_->modulus; }
  Elem generator() const noexcept { return d_->generator; }

  bool contains(Elem a) const noexcept { return a < d_->q; }

  Elem add(Elem a, Elem b) const noexcept {
    if (d_->f == 1) {
      const std::uint32_t s = a + b;
      return s >= d_->p ? s - d_->p : s;
    }
    return add_digits(a, b);
  }

  Elem neg(Elem a) const noexcept {
    if (d_->f == 1) return a == 0 ? 0 : d_->p - a;
    return neg_digits(a);
  }

  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const noexcept {
    if (a == 0 || b == 0) return 0;
    return d_->exp[d_->log[a] + d_->log[b]];
  }

  Elem div(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::int64_t e) const;

  /// Index k with generator^k = a; throws ZeroArgument for a = 0.
  std::uint32_t dlog(Elem a) const;
  /// generator^k.
  Elem exp(std::uint64_t k) const noexcept { return d_->exp[k % order()]; }

  std::uint32_t trace(Elem a) const noexcept { return d_->trace[a]; }

  /// Image of an integer in the prime subfield.
  Elem from_int(std::int64_t v) const noexcept;
  Elem from_digits(std::span<const std::uint32_t> digits) const;
  std::vector<std::uint32_t> digits(Elem a) const;

  std::span<const Elem> exp_table() const noexcept { return {d_->exp.data(), order()}; }
  std::span<const std::uint32_t> log_table() const noexcept { return d_->log; }

  bool same_field(const FieldCtx& other) const noexcept { return d_ == other.d_; }

 private:
  explicit FieldCtx(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}

  Elem add_digits(Elem a, Elem b) const noexcept;
  Elem neg_digits(Elem a) const noexcept;

  std::shared_ptr<const detail::FieldData> d_;
};

/// Dispatching form of the field operations. For `pow`, `b` is the exponent.
Elem field_arith(const FieldCtx& ctx, Elem a, Elem b, ArithOp op);

/// Tr(a) = a + a^p + ... + a^{p^{f-1}}, as an element of F_p.
std::uint32_t absolute_trace(const FieldCtx& ctx, Elem a);

/// Field embedding of a subfield `base` into `ext` (same characteristic,
/// base.f | ext.f). Stored as a lookup table over the base elements.
class Embedding {
 public:
  static Embedding make(const FieldCtx& base, const FieldCtx& ext);

  Elem operator()(Elem a) const;
  /// Image of the polynomial variable of the base field (a root of its modulus).
  Elem root() const noexcept { return root_; }
  unsigned degree() const noexcept { return degree_; }

 private:
  std::vector<Elem> image_;
  Elem root_ = 0;
  unsigned degree_ = 1;
};

Elem subfield_embed(const FieldCtx& base, const FieldCtx& ext, Elem a);

struct Extension {
  FieldCtx field;
  Embedding embed;
  unsigned degree;
};

/// Builds F_{q^r} over `base` together with the embedding of `base`.
Extension make_extension(const FieldCtx& base, unsigned r,
                         std::uint64_t table_cap = kDefaultTableCap);

}  // namespace dwork
