#include "dwork/ffield.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace dwork {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Polynomials over F_p as coefficient vectors, low to high, without trailing zeros.
using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // p prime, a != 0
  std::uint64_t result = 1, base = a % p;
  std::uint64_t e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint32_t lead_inv = inv_mod(m.back(), p);
  while (a.size() > dm) {
    const std::uint64_t c = std::uint64_t{a.back()} * lead_inv % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      const std::uint64_t sub = c * m[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      acc[i + j] = (acc[i + j] + std::uint64_t{a[i]} * b[j]) % p;
    }
  }
  Poly out(acc.begin(), acc.end());
  trim(out);
  return out;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  return poly_mod(poly_mul(a, b, p), m, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::uint32_t p) {
  Poly result{1};
  base = poly_mod(std::move(base), m, p);
  while (e) {
    if (e & 1) result = poly_mulmod(result, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return result;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Ben-Or: m of degree f is irreducible iff gcd(x^{p^i} - x, m) = 1 for i <= f/2.
bool is_irreducible(const Poly& m, std::uint32_t p) {
  const std::size_t f = m.size() - 1;
  if (f <= 1) return f == 1;
  Poly xp{0, 1};
  for (std::size_t i = 1; i <= f / 2; ++i) {
    xp = poly_powmod(xp, p, m, p);
    Poly diff = xp;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (diff.empty()) return false;
    if (poly_gcd(diff, m, p).size() > 1) return false;
  }
  return true;
}

Poly digits_to_poly(std::uint64_t code, std::uint32_t p, unsigned f) {
  Poly out(f, 0);
  for (unsigned i = 0; i < f; ++i) {
    out[i] = static_cast<std::uint32_t>(code % p);
    code /= p;
  }
  trim(out);
  return out;
}

Elem poly_to_elem(const Poly& a, const std::vector<std::uint32_t>& pow_p) {
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < a.size(); ++i) code += std::uint64_t{a[i]} * pow_p[i];
  return static_cast<Elem>(code);
}

std::uint64_t checked_power(std::uint32_t p, unsigned f) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < f; ++i) {
    if (q > std::numeric_limits<std::uint32_t>::max() / p) {
      throw Error(Errc::TableCapExceeded, "p^f does not fit the element encoding");
    }
    q *= p;
  }
  return q;
}

}  // namespace

FieldCtx FieldCtx::build(std::uint32_t p, unsigned f,
                         std::optional<std::vector<std::uint32_t>> modulus,
                         std::uint64_t table_cap) {
  if (!is_prime(p)) throw Error(Errc::NonPrimeP, "p = " + std::to_string(p) + " is not prime");
  if (f < 1) throw Error(Errc::InvalidArgument, "extension degree must be >= 1");
  const std::uint64_t q = checked_power(p, f);
  if (q > table_cap) {
    throw Error(Errc::TableCapExceeded,
                "q = " + std::to_string(q) + " exceeds table cap " + std::to_string(table_cap));
  }

  auto d = std::make_shared<detail::FieldData>();
  d->p = p;
  d->f = f;
  d->q = static_cast<std::uint32_t>(q);
  d->pow_p.resize(f + 1);
  d->pow_p[0] = 1;
  for (unsigned i = 1; i <= f; ++i) d->pow_p[i] = d->pow_p[i - 1] * p;

  Poly m;
  if (f > 1) {
    if (modulus) {
      m = *modulus;
      for (auto& c : m) {
        if (c >= p) throw Error(Errc::InvalidArgument, "modulus coefficient out of range");
      }
      trim(m);
      if (m.size() != f + 1 || m.back() != 1) {
        throw Error(Errc::InvalidArgument, "modulus must be monic of degree f");
      }
      if (!is_irreducible(m, p)) throw Error(Errc::ReducibleModulus, "modulus is reducible over F_p");
    } else {
      const std::uint64_t top = q;  // codes for the lower f coefficients
      bool found = false;
      for (std::uint64_t code = 0; code < top && !found; ++code) {
        Poly cand(f + 1, 0);
        std::uint64_t c = code;
        for (unsigned i = 0; i < f; ++i) {
          cand[i] = static_cast<std::uint32_t>(c % p);
          c /= p;
        }
        cand[f] = 1;
        if (is_irreducible(cand, p)) {
          m = std::move(cand);
          found = true;
        }
      }
      if (!found) throw Error(Errc::ReducibleModulus, "no irreducible polynomial found");
    }
    d->modulus = m;
  } else if (modulus && !modulus->empty()) {
    Poly given = *modulus;
    trim(given);
    if (given.size() != 2 || given[1] != 1) {
      throw Error(Errc::InvalidArgument, "modulus must be monic of degree f");
    }
  }

  const std::uint32_t order = d->q - 1;
  const auto factors = prime_factors(order);

  // Multiplication by a fixed element, in the integer encoding.
  auto mul_elem = [&](Elem a, Elem b) -> Elem {
    if (f == 1) return static_cast<Elem>(std::uint64_t{a} * b % p);
    return poly_to_elem(poly_mulmod(digits_to_poly(a, p, f), digits_to_poly(b, p, f), m, p),
                        d->pow_p);
  };
  auto pow_elem = [&](Elem a, std::uint64_t e) -> Elem {
    Elem result = 1;
    while (e) {
      if (e & 1) result = mul_elem(result, a);
      a = mul_elem(a, a);
      e >>= 1;
    }
    return result;
  };

  Elem gen = 0;
  for (Elem cand = 1; cand < d->q; ++cand) {
    bool full = true;
    for (auto r : factors) {
      if (pow_elem(cand, order / r) == 1) {
        full = false;
        break;
      }
    }
    if (full) {
      gen = cand;
      break;
    }
  }
  d->generator = gen;

  d->exp.assign(2 * std::size_t{order} + (order == 0 ? 1 : 0), 0);
  d->log.assign(d->q, kNoLog);
  if (f == 1) {
    std::uint64_t cur = 1;
    for (std::uint32_t k = 0; k < order; ++k) {
      d->exp[k] = static_cast<Elem>(cur);
      d->log[cur] = k;
      cur = cur * gen % p;
    }
  } else {
    const Poly g = digits_to_poly(gen, p, f);
    Poly cur{1};
    for (std::uint32_t k = 0; k < order; ++k) {
      const Elem e = poly_to_elem(cur, d->pow_p);
      d->exp[k] = e;
      d->log[e] = k;
      cur = poly_mulmod(cur, g, m, p);
    }
  }
  for (std::uint32_t k = 0; k < order; ++k) d->exp[order + k] = d->exp[k];

  // Trace is F_p-linear: Tr(sum c_i x^i) = sum c_i Tr(x^i).
  d->trace.assign(d->q, 0);
  if (f == 1) {
    for (Elem a = 0; a < d->q; ++a) d->trace[a] = a;
  } else {
    std::vector<std::uint32_t> basis_trace(f, 0);
    for (unsigned i = 0; i < f; ++i) {
      Poly xi(i + 1, 0);
      xi[i] = 1;
      Poly cur = poly_mod(xi, m, p);
      std::uint64_t t = 0;
      for (unsigned j = 0; j < f; ++j) {
        t += cur.empty() ? 0 : cur[0];
        cur = poly_powmod(cur, p, m, p);
      }
      basis_trace[i] = static_cast<std::uint32_t>(t % p);
    }
    for (Elem a = 0; a < d->q; ++a) {
      std::uint64_t t = 0;
      std::uint32_t code = a;
      for (unsigned i = 0; i < f; ++i) {
        t += std::uint64_t{code % p} * basis_trace[i];
        code /= p;
      }
      d->trace[a] = static_cast<std::uint32_t>(t % p);
    }
  }

  return FieldCtx(std::move(d));
}

Elem FieldCtx::add_digits(Elem a, Elem b) const noexcept {
  const std::uint32_t p = d_->p;
  Elem out = 0;
  for (unsigned i = 0; i < d_->f; ++i) {
    std::uint32_t s = a % p + b % p;
    if (s >= p) s -= p;
    out += s * d_->pow_p[i];
    a /= p;
    b /= p;
  }
  return out;
}

Elem FieldCtx::neg_digits(Elem a) const noexcept {
  const std::uint32_t p = d_->p;
  Elem out = 0;
  for (unsigned i = 0; i < d_->f; ++i) {
    const std::uint32_t c = a % p;
    out += (c == 0 ? 0 : p - c) * d_->pow_p[i];
    a /= p;
  }
  return out;
}

Elem FieldCtx::div(Elem a, Elem b) const {
  if (b == 0) throw Error(Errc::DivisionByZero, "division by zero in F_q");
  if (a == 0) return 0;
  return d_->exp[d_->log[a] + order() - d_->log[b]];
}

Elem FieldCtx::inv(Elem a) const { return div(1, a); }

Elem FieldCtx::pow(Elem a, std::int64_t e) const {
  if (a == 0) {
    if (e == 0) return 1;
    if (e < 0) throw Error(Errc::DivisionByZero, "negative power of zero");
    return 0;
  }
  const std::int64_t ord = order();
  std::int64_t k = (static_cast<std::int64_t>(d_->log[a]) * (e % ord)) % ord;
  if (k < 0) k += ord;
  return d_->exp[static_cast<std::size_t>(k)];
}

std::uint32_t FieldCtx::dlog(Elem a) const {
  if (a == 0 || a >= d_->q) throw Error(Errc::ZeroArgument, "discrete log of zero or invalid element");
  return d_->log[a];
}

Elem FieldCtx::from_int(std::int64_t v) const noexcept {
  const std::int64_t p = d_->p;
  std::int64_t r = v % p;
  if (r < 0) r += p;
  return static_cast<Elem>(r);
}

Elem FieldCtx::from_digits(std::span<const std::uint32_t> digits) const {
  if (digits.size() > d_->f) throw Error(Errc::InvalidArgument, "too many digits for F_q element");
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] >= d_->p) throw Error(Errc::InvalidArgument, "digit out of range");
    code += std::uint64_t{digits[i]} * d_->pow_p[i];
  }
  return static_cast<Elem>(code);
}

std::vector<std::uint32_t> FieldCtx::digits(Elem a) const {
  std::vector<std::uint32_t> out(d_->f, 0);
  for (unsigned i = 0; i < d_->f; ++i) {
    out[i] = a % d_->p;
    a /= d_->p;
  }
  return out;
}

Elem field_arith(const FieldCtx& ctx, Elem a, Elem b, ArithOp op) {
  if (!ctx.contains(a)) throw Error(Errc::InvalidArgument, "invalid element encoding");
  if (op != ArithOp::pow && !ctx.contains(b)) throw Error(Errc::InvalidArgument, "invalid element encoding");
  switch (op) {
    case ArithOp::add: return ctx.add(a, b);
    case ArithOp::sub: return ctx.sub(a, b);
    case ArithOp::mul: return ctx.mul(a, b);
    case ArithOp::div: return ctx.div(a, b);
    case ArithOp::pow: return ctx.pow(a, static_cast<std::int64_t>(b));
  }
  return 0;
}

std::uint32_t absolute_trace(const FieldCtx& ctx, Elem a) {
  if (!ctx.contains(a)) throw Error(Errc::InvalidArgument, "invalid element encoding");
  return ctx.trace(a);
}

Embedding Embedding::make(const FieldCtx& base, const FieldCtx& ext) {
  if (base.p() != ext.p() || ext.f() % base.f() != 0) {
    throw Error(Errc::IncompatibleFields, "base field is not a subfield of the extension");
  }
  Embedding e;
  e.degree_ = ext.f() / base.f();
  e.image_.resize(base.q());
  if (base.f() == 1) {
    // The prime field sits inside every extension as the constants.
    for (Elem a = 0; a < base.q(); ++a) e.image_[a] = a;
    e.root_ = 0;
    return e;
  }
  // Search the subfield of order base.q for a root of the base modulus.
  const std::uint64_t step = std::uint64_t{ext.order()} / base.order();
  const auto mod = base.modulus();
  bool found = false;
  for (std::uint64_t k = 1; k < base.q() && !found; ++k) {
    const Elem h = ext.exp(k * step);
    Elem acc = 0;
    for (std::size_t i = mod.size(); i-- > 0;) acc = ext.add(ext.mul(acc, h), mod[i]);
    if (acc == 0) {
      e.root_ = h;
      found = true;
    }
  }
  if (!found) throw Error(Errc::IncompatibleFields, "no root of the base modulus in the extension");
  std::vector<Elem> root_pow(base.f(), 1);
  for (unsigned i = 1; i < base.f(); ++i) root_pow[i] = ext.mul(root_pow[i - 1], e.root_);
  for (Elem a = 0; a < base.q(); ++a) {
    const auto dg = base.digits(a);
    Elem img = 0;
    for (unsigned i = 0; i < base.f(); ++i) img = ext.add(img, ext.mul(dg[i], root_pow[i]));
    e.image_[a] = img;
  }
  return e;
}

Elem Embedding::operator()(Elem a) const {
  if (a >= image_.size()) throw Error(Errc::InvalidArgument, "element outside the base field");
  return image_[a];
}

Elem subfield_embed(const FieldCtx& base, const FieldCtx& ext, Elem a) {
  return Embedding::make(base, ext)(a);
}

Extension make_extension(const FieldCtx& base, unsigned r, std::uint64_t table_cap) {
  if (r < 1) throw Error(Errc::InvalidArgument, "extension degree must be >= 1");
  FieldCtx ext = r == 1 ? base : FieldCtx::build(base.p(), base.f() * r, std::nullopt, table_cap);
  Embedding emb = Embedding::make(base, ext);
  return Extension{std::move(ext), std::move(emb), r};
}

}  // namespace dwork
