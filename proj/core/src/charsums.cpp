#include "dwork/charsums.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

namespace dwork {

namespace {

constexpr double u = kUnitRoundoff;

std::uint32_t mod_exp(std::int64_t a, std::uint32_t m) {
  std::int64_t r = a % static_cast<std::int64_t>(m);
  if (r < 0) r += m;
  return static_cast<std::uint32_t>(r);
}

CycValue unit_root(std::uint64_t k, std::uint64_t m) {
  const long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(k) /
                            static_cast<long double>(m);
  return CycValue({static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))},
                  4 * u);
}

}  // namespace

CycValue& CycValue::operator+=(const CycValue& o) {
  z_ += o.z_;
  err_ += o.err_ + 2 * u * std::abs(z_);
  return *this;
}

CycValue& CycValue::operator-=(const CycValue& o) {
  z_ -= o.z_;
  err_ += o.err_ + 2 * u * std::abs(z_);
  return *this;
}

CycValue& CycValue::operator*=(const CycValue& o) {
  const double ma = std::abs(z_), mb = std::abs(o.z_);
  err_ = ma * o.err_ + mb * err_ + err_ * o.err_ + 3 * u * ma * mb;
  z_ *= o.z_;
  return *this;
}

CycValue& CycValue::operator/=(const CycValue& o) {
  const double mb = std::abs(o.z_);
  if (mb <= o.err_) throw Error(Errc::DivisionByZero, "divisor indistinguishable from zero");
  const std::complex<double> r = z_ / o.z_;
  const double mr = std::abs(r);
  err_ = (err_ + mr * o.err_) / (mb - o.err_) + 8 * u * mr;
  z_ = r;
  return *this;
}

CycValue CycValue::scaled(double s) const {
  const std::complex<double> r = z_ * s;
  return CycValue(r, err_ * std::abs(s) + 2 * u * std::abs(r));
}

void CycSum::add(const CycValue& v) {
  auto neumaier = [](double& sum, double& c, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      c += (sum - t) + x;
    } else {
      c += (x - t) + sum;
    }
    sum = t;
  };
  neumaier(re_, re_c_, v.re());
  neumaier(im_, im_c_, v.im());
  err_ += v.err();
  mag_ += v.abs();
  ++terms_;
}

CycValue CycSum::total() const {
  const std::complex<double> z(re_ + re_c_, im_ + im_c_);
  const double n = static_cast<double>(terms_);
  return CycValue(z, err_ + 2 * u * std::abs(z) + 4 * n * u * u * mag_);
}

double rounding_residual(const CycValue& v) {
  const double nearest = std::nearbyint(v.re());
  return std::hypot(v.re() - nearest, v.im());
}

std::int64_t round_to_integer(const CycValue& v, double tol) {
  if (!std::isfinite(v.re()) || std::abs(v.re()) > 0x1p52) {
    throw Error(Errc::RoundingFailure, "value outside the exactly representable integer range");
  }
  const double res = rounding_residual(v);
  if (!(res < tol)) {
    std::ostringstream os;
    os.precision(17);
    os << "value " << v.re() << (v.im() < 0 ? " - " : " + ") << std::abs(v.im())
       << "i is not within " << tol << " of an integer (residual " << res << ")";
    throw Error(Errc::RoundingFailure, os.str());
  }
  // the a-priori bound must still pin down the integer
  if (!(res + v.err() < 0.5)) {
    throw Error(Errc::RoundingFailure, "error bound " + std::to_string(v.err()) + " does not certify the nearest integer");
  }
  return static_cast<std::int64_t>(std::nearbyint(v.re()));
}

std::uint32_t MultChar::order() const noexcept {
  return modulus / std::gcd(a, modulus);
}

MultChar MultChar::pow(std::int64_t e) const noexcept {
  const std::int64_t m = modulus;
  std::int64_t r = (static_cast<std::int64_t>(a) * (e % m)) % m;
  if (r < 0) r += m;
  return {static_cast<std::uint32_t>(r), modulus};
}

CharTable::CharTable(FieldCtx field, std::uint64_t gauss_cap) : field_(std::move(field)) {
  const std::uint32_t q = field_.q();
  const std::uint32_t ord = field_.order();
  if (q > gauss_cap) {
    throw Error(Errc::TableCapExceeded, "q = " + std::to_string(q) +
                                            " exceeds the Gauss-sum table cap " +
                                            std::to_string(gauss_cap));
  }
  roots_.resize(ord);
  for (std::uint32_t k = 0; k < ord; ++k) roots_[k] = unit_root(k, ord);
  roots_[0] = CycValue::exact(1.0);
  add_roots_.resize(field_.p());
  for (std::uint32_t t = 0; t < field_.p(); ++t) add_roots_[t] = unit_root(t, field_.p());
  add_roots_[0] = CycValue::exact(1.0);
  trace_by_log_.resize(ord);
  for (std::uint32_t k = 0; k < ord; ++k) trace_by_log_[k] = field_.trace(field_.exp(k));

  gauss_.resize(ord);
  for (std::uint32_t a = 0; a < ord; ++a) gauss_[a] = gauss_direct({a, ord});
}

MultChar CharTable::character(std::int64_t a) const noexcept { return {mod_exp(a, order()), order()}; }

std::uint32_t CharTable::order_n_exponent(unsigned n) const {
  if (n == 0 || order() % n != 0) {
    throw Error(Errc::OrderUnavailable, "no character of order " + std::to_string(n) + " on F_" +
                                            std::to_string(q()) + "^*");
  }
  return order() / n;
}

MultChar CharTable::order_n(unsigned n, std::int64_t k) const {
  return character(static_cast<std::int64_t>(order_n_exponent(n)) * k);
}

CycValue CharTable::root(std::int64_t k) const noexcept { return roots_[mod_exp(k, order())]; }

const CycValue& CharTable::gauss(std::int64_t a) const noexcept { return gauss_[mod_exp(a, order())]; }

CycValue CharTable::mult(MultChar chi, Elem x) const {
  if (x == 0) throw Error(Errc::ZeroArgument, "multiplicative character evaluated at 0");
  return root(static_cast<std::int64_t>(chi.a) * field_.dlog(x));
}

CycValue CharTable::gauss_direct(MultChar chi) const {
  const std::uint32_t ord = order();
  CycSum s;
  std::uint64_t idx = 0;
  for (std::uint32_t k = 0; k < ord; ++k) {
    s.add(add_roots_[trace_by_log_[k]] * roots_[idx]);
    idx += chi.a;
    if (idx >= ord) idx %= ord;
  }
  return s.total();
}

CycValue CharTable::jacobi_from_gauss(std::span<const MultChar> chis) const {
  if (chis.empty()) throw Error(Errc::EmptyList, "Jacobi sum of an empty character list");
  const bool all_trivial =
      std::all_of(chis.begin(), chis.end(), [](const MultChar& c) { return c.trivial(); });
  const double qd = q();
  if (all_trivial) {
    // Number of points of x_1 + ... + x_r = 1 with every x_i nonzero.
    const long double r = static_cast<long double>(chis.size());
    const long double count =
        (std::pow(static_cast<long double>(qd) - 1, r) - (chis.size() % 2 ? -1.0L : 1.0L)) / qd;
    return CycValue({static_cast<double>(std::nearbyint(count)), 0.0}, 0.0);
  }
  CycValue prod = CycValue::exact(1.0);
  MultChar total{0, order()};
  for (const auto& c : chis) {
    prod *= gauss(c);
    total = total * c;
  }
  if (total.trivial()) return (prod / gauss(total)).scaled(1.0 / qd);
  return prod / gauss(total);
}

CycValue CharTable::q_half_power(int twice_exp) const {
  const long double v = std::pow(static_cast<long double>(q()), twice_exp / 2.0L);
  const double d = static_cast<double>(v);
  const bool exact_int = twice_exp >= 0 && twice_exp % 2 == 0 && d <= 0x1p53;
  return CycValue({d, 0.0}, exact_int ? 0.0 : 2 * u * d);
}

CycValue additive_char(const CharTable& t, Elem x) {
  if (!t.field().contains(x)) throw Error(Errc::InvalidArgument, "invalid element encoding");
  return t.additive(x);
}

CycValue mult_char_eval(const CharTable& t, MultChar chi, Elem x) { return t.mult(chi, x); }

CycValue gauss_sum(const CharTable& t, MultChar chi) { return t.gauss(chi); }

CycValue jacobi_direct(const CharTable& t, std::span<const MultChar> chis) {
  const FieldCtx& F = t.field();
  const std::uint32_t ord = F.order();
  const std::uint32_t q = F.q();
  switch (chis.size()) {
    case 0:
      throw Error(Errc::EmptyList, "Jacobi sum of an empty character list");
    case 1:
      return CycValue::exact(1.0);
    case 2: {
      CycSum s;
      for (Elem x = 2; x < q; ++x) {
        const std::uint64_t e = std::uint64_t{chis[0].a} * F.dlog(x) +
                                std::uint64_t{chis[1].a} * F.dlog(F.sub(1, x));
        s.add(t.root(static_cast<std::int64_t>(e % ord)));
      }
      return s.total();
    }
    case 3: {
      CycSum s;
      for (Elem x = 1; x < q; ++x) {
        const std::uint64_t ex = std::uint64_t{chis[0].a} * F.dlog(x);
        const Elem rest = F.sub(1, x);
        for (Elem y = 1; y < q; ++y) {
          const Elem z = F.sub(rest, y);
          if (z == 0) continue;
          const std::uint64_t e =
              ex + std::uint64_t{chis[1].a} * F.dlog(y) + std::uint64_t{chis[2].a} * F.dlog(z);
          s.add(t.root(static_cast<std::int64_t>(e % ord)));
        }
      }
      return s.total();
    }
    default:
      throw Error(Errc::InvalidArgument, "direct Jacobi summation supports at most 3 characters");
  }
}

CycValue jacobi_sum(const CharTable& t, std::span<const MultChar> chis, double tol) {
  if (chis.empty()) throw Error(Errc::EmptyList, "Jacobi sum of an empty character list");
  if (chis.size() < 3) return jacobi_direct(t, chis);
  if (chis.size() > 3) return t.jacobi_from_gauss(chis);
  const CycValue direct = jacobi_direct(t, chis);
  const CycValue quotient = t.jacobi_from_gauss(chis);
  const double scale = std::max({1.0, direct.abs(), quotient.abs()});
  const double res = std::abs(direct.value() - quotient.value()) / scale;
  if (!(res < tol)) {
    std::ostringstream os;
    os << "Jacobi sum direct/quotient mismatch, relative residual " << res;
    throw Error(Errc::ToleranceExceeded, os.str());
  }
  return direct;
}

namespace {

double rel_residual(std::complex<double> l, std::complex<double> r) {
  return std::abs(l - r) / std::max({1.0, std::abs(l), std::abs(r)});
}

struct Tracker {
  explicit Tracker(std::string name) { check.name = std::move(name); }
  IdentityCheck check;
  void record(double res, const std::string& where) {
    ++check.evaluations;
    if (res > check.max_residual || check.witness.empty()) {
      check.max_residual = std::max(res, check.max_residual);
      check.witness = where;
    }
  }
};

std::string chars_str(std::span<const MultChar> chis) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < chis.size(); ++i) os << (i ? "," : "") << chis[i].a;
  os << ")";
  return os.str();
}

}  // namespace

IdentityReport identity_suite(const CharTable& t, double tol, std::uint64_t seed) {
  if (!(tol > 0)) throw Error(Errc::InvalidArgument, "tolerance must be positive");
  const FieldCtx& F = t.field();
  const std::uint32_t q = F.q();
  const std::uint32_t ord = F.order();
  const double qd = q;
  std::mt19937_64 rng(seed);

  IdentityReport rep;
  rep.p = F.p();
  rep.f = F.f();
  rep.q = q;
  rep.tol = tol;
  rep.seed = seed;

  {
    // Characters of F_q^* summed at a fixed element g^j.
    Tracker tr{"orthogonality_multiplicative"};
    for (std::uint32_t j = 0; j < ord; ++j) {
      CycSum s;
      for (std::uint32_t a = 0; a < ord; ++a) s.add(t.root(std::int64_t{a} * j));
      const CycValue lhs = s.total().scaled(1.0 / ord);
      tr.record(rel_residual(lhs.value(), j == 0 ? 1.0 : 0.0), "g^" + std::to_string(j));
    }
    rep.checks.push_back(tr.check);
  }
  {
    Tracker tr{"orthogonality_additive"};
    for (Elem x = 0; x < q; ++x) {
      CycSum s;
      for (Elem a = 0; a < q; ++a) s.add(t.additive(F.mul(a, x)));
      const CycValue lhs = s.total().scaled(1.0 / qd);
      tr.record(rel_residual(lhs.value(), x == 0 ? 1.0 : 0.0), "x=" + std::to_string(x));
    }
    rep.checks.push_back(tr.check);
  }
  {
    Tracker tr{"reflection"};
    tr.check.skipped_trivial = true;
    const std::uint32_t log_minus_one = F.dlog(F.neg(1));
    for (std::uint32_t a = 1; a < ord; ++a) {
      const CycValue lhs = t.gauss(a) * t.gauss(-std::int64_t{a});
      const CycValue rhs = t.root(std::int64_t{a} * log_minus_one).scaled(qd);
      tr.record(rel_residual(lhs.value(), rhs.value()), "chi=" + std::to_string(a));
    }
    rep.checks.push_back(tr.check);
  }
  {
    // Product form with every Gauss sum normalised by its nominal modulus, so
    // that large d does not overflow.
    Tracker tr{"multiplication_product_form"};
    const double sq = std::sqrt(qd);
    auto normed = [&](std::int64_t a, int& nontrivial) {
      const MultChar c = t.character(a);
      if (c.trivial()) return t.gauss(c);
      ++nontrivial;
      return t.gauss(c).scaled(1.0 / sq);
    };
    for (const auto d64 : divisors(ord)) {
      const std::uint32_t d = static_cast<std::uint32_t>(d64);
      const std::uint32_t step = ord / d;
      const std::uint32_t log_d = F.dlog(F.from_int(d));
      for (std::uint32_t e = 0; e < ord; ++e) {
        int cl = 0, cr = 0;
        CycValue lhs = normed(std::int64_t{e} * d, cl);
        for (std::uint32_t i = 1; i < d; ++i) lhs *= normed(std::int64_t{i} * step, cl);
        CycValue rhs = t.root(std::int64_t{e} * d % ord * log_d);
        for (std::uint32_t i = 0; i < d; ++i) rhs *= normed(std::int64_t{e} + std::int64_t{i} * step, cr);
        if (cl != cr) lhs = lhs.scaled(std::pow(sq, cl - cr));
        tr.record(rel_residual(lhs.value(), rhs.value()),
                  "d=" + std::to_string(d) + " eta=" + std::to_string(e));
      }
    }
    rep.checks.push_back(tr.check);
  }
  {
    Tracker nontriv{"jacobi_gauss_nontrivial_product"};
    Tracker triv{"jacobi_gauss_trivial_product"};
    auto check_tuple = [&](std::vector<MultChar> chis) {
      if (std::all_of(chis.begin(), chis.end(), [](const MultChar& c) { return c.trivial(); })) return;
      MultChar prod{0, ord};
      for (auto c : chis) prod = prod * c;
      const CycValue direct = jacobi_direct(t, chis);
      const CycValue quot = t.jacobi_from_gauss(chis);
      (prod.trivial() ? triv : nontriv).record(rel_residual(direct.value(), quot.value()), chars_str(chis));
    };
    if (q <= 128) {
      for (std::uint32_t a = 0; a < ord; ++a)
        for (std::uint32_t b = 0; b < ord; ++b) check_tuple({{a, ord}, {b, ord}});
    } else {
      std::uniform_int_distribution<std::uint32_t> pick(0, ord - 1);
      for (int i = 0; i < 200; ++i) {
        const std::uint32_t a = pick(rng);
        check_tuple({{a, ord}, {pick(rng), ord}});
        check_tuple({{a, ord}, {(ord - a) % ord, ord}});
      }
    }
    const int triples = q <= 128 ? 24 : 6;
    std::uniform_int_distribution<std::uint32_t> pick(0, ord - 1);
    for (int i = 0; i < triples; ++i) {
      const std::uint32_t a = pick(rng), b = pick(rng);
      check_tuple({{a, ord}, {b, ord}, {pick(rng), ord}});
      const std::uint32_t c = static_cast<std::uint32_t>((2 * std::uint64_t{ord} - a - b) % ord);
      check_tuple({{a, ord}, {b, ord}, {c, ord}});
    }
    rep.checks.push_back(nontriv.check);
    rep.checks.push_back(triv.check);
  }
  {
    Tracker tr{"fourier_inversion"};
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<std::pair<std::string, std::vector<std::complex<double>>>> funcs;
    std::vector<std::complex<double>> rnd(ord);
    for (auto& v : rnd) v = {unif(rng), unif(rng)};
    funcs.emplace_back("random", rnd);
    for (Elem y : {Elem{1}, F.generator(), F.neg(1)}) {
      std::vector<std::complex<double>> delta(ord, 0.0);
      delta[F.dlog(y)] = 1.0;
      funcs.emplace_back("delta_" + std::to_string(y), std::move(delta));
    }
    for (const auto& [name, fvals] : funcs) {
      // fvals indexed by dlog of the argument.
      std::vector<CycValue> hat(ord);
      for (std::uint32_t e = 0; e < ord; ++e) {
        CycSum s;
        for (std::uint32_t k = 0; k < ord; ++k) {
          if (fvals[k] == 0.0) continue;
          s.add(CycValue(fvals[k], 0.0) * t.root(-std::int64_t{e} * k));
        }
        hat[e] = s.total();
      }
      for (std::uint32_t k = 0; k < ord; ++k) {
        CycSum s;
        for (std::uint32_t e = 0; e < ord; ++e) s.add(hat[e] * t.root(std::int64_t{e} * k));
        const CycValue back = s.total().scaled(1.0 / ord);
        tr.record(rel_residual(back.value(), fvals[k]), name + " at g^" + std::to_string(k));
      }
    }
    rep.checks.push_back(tr.check);
  }
  {
    Tracker tr{"additive_from_gauss"};
    for (std::uint32_t k = 0; k < ord; ++k) {
      CycSum s;
      for (std::uint32_t e = 0; e < ord; ++e) s.add(t.gauss(-std::int64_t{e}) * t.root(std::int64_t{e} * k));
      const CycValue rhs = s.total().scaled(1.0 / ord);
      tr.record(rel_residual(t.additive(F.exp(k)).value(), rhs.value()), "x=g^" + std::to_string(k));
    }
    rep.checks.push_back(tr.check);
  }

  rep.max_residual = 0;
  for (const auto& c : rep.checks) rep.max_residual = std::max(rep.max_residual, c.max_residual);
  rep.passed = rep.max_residual < tol;
  return rep;
}

void require_passed(const IdentityReport& r) {
  for (const auto& c : r.checks) {
    if (!(c.max_residual < r.tol)) {
      std::ostringstream os;
      os << "identity " << c.name << " failed over F_" << r.q << ": residual " << c.max_residual
         << " at " << c.witness;
      throw Error(Errc::ToleranceExceeded, os.str());
    }
  }
}

}  // namespace dwork
