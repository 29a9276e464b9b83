#include "dwork/formulas.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace dwork {

namespace {

std::int64_t ipow(std::int64_t b, unsigned e) {
  std::int64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

std::uint64_t factorial(unsigned n) {
  std::uint64_t r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

int modn(long long x, unsigned n) {
  long long r = x % static_cast<long long>(n);
  return static_cast<int>(r < 0 ? r + n : r);
}

double rel_residual(const CycValue& a, const CycValue& b) {
  const double scale = std::max({1.0, a.abs(), b.abs()});
  return std::abs(a.value() - b.value()) / scale;
}

CycValue gauss_product(const CharTable& t, std::span<const MultChar> chars) {
  CycValue r = CycValue::exact(1.0);
  for (const auto& c : chars) r *= t.gauss(c);
  return r;
}

void check_congruence(const CharTable& t, unsigned n) {
  if (n < 3 || t.order() % n != 0) {
    throw Error(Errc::CongruenceViolated, "q = " + std::to_string(t.q()) + " is not 1 mod " + std::to_string(n));
  }
}

void check_psi(const CharTable& t, Elem psi) {
  if (!t.field().contains(psi)) throw Error(Errc::InvalidArgument, "psi is not an element of the field");
  if (psi == 0) throw Error(Errc::PsiZero, "psi = 0 is not supported");
}

std::int64_t trivial_part(std::int64_t q, unsigned n) {
  std::int64_t s = 0;
  for (unsigned i = 0; i + 1 < n; ++i) s += ipow(q, i);
  return s;
}

/// Projective count from the sum over Z/nZ-classes of zero-sum tuples,
/// grouped by multiset: each multiset stands for gamma/n classes. The terms
/// cancel heavily (sizes near q^{(n+1)/2} against a total near q^{n-2}), so
/// this route runs in extended precision with its own Gauss sums and a
/// first-order error bound.
std::optional<std::int64_t> gauss_sum_count(const CharTable& t, unsigned n, Elem psi, MultChar chi, double tol,
                             double& max_residual) {
  using LD = long double;
  using LC = std::complex<LD>;
  constexpr LD ul = std::numeric_limits<LD>::epsilon() / 2;
  const FieldCtx& F = t.field();
  const std::uint32_t ord = t.order();
  const std::uint32_t p = F.p();
  const std::int64_t q = t.q();
  const LD two_pi = 2 * std::numbers::pi_v<LD>;

  auto unit = [&](std::uint64_t k, std::uint64_t m) {
    const LD a = two_pi * static_cast<LD>(k % m) / static_cast<LD>(m);
    return LC(std::cos(a), std::sin(a));
  };
  std::vector<LC> zq(ord), zp(p);
  for (std::uint32_t k = 0; k < ord; ++k) zq[k] = unit(k, ord);
  for (std::uint32_t k = 0; k < p; ++k) zp[k] = unit(k, p);
  std::vector<std::uint32_t> tr(ord);
  for (std::uint32_t k = 0; k < ord; ++k) tr[k] = F.trace(F.exp(k));
  // g(a) = sum_k zeta_p^{Tr g^k} zeta_{q-1}^{a k}; each term within 14 ul of exact.
  std::vector<LC> G(ord);
  std::vector<LD> Gerr(ord);
  for (std::uint32_t a = 0; a < ord; ++a) {
    LC s = 0;
    std::uint64_t idx = 0;
    for (std::uint32_t k = 0; k < ord; ++k) {
      s += zp[tr[k]] * zq[idx];
      idx = (idx + a) % ord;
    }
    G[a] = s;
    Gerr[a] = static_cast<LD>(ord) * 14 * ul;
  }

  // eta(1/(-n psi)^n)
  const Elem mu = F.inv(F.pow(F.neg(F.mul(F.from_int(n), psi)), n));
  const std::uint32_t dl = F.dlog(mu);

  std::vector<unsigned> c(n, 0);
  LC total = 0;
  LD bound = 0;
  std::size_t nterms = 0;
  auto visit = [&](const std::vector<unsigned>& prof) {
    LD weight = static_cast<LD>(factorial(n));
    for (unsigned k : prof) weight /= static_cast<LD>(factorial(k));
    weight /= n;
    for (std::uint32_t e = 0; e < ord; ++e) {
      const MultChar eta{e, ord};
      bool some_trivial = false;
      LC term = 1;
      LD rel = 0;
      for (unsigned b = 0; b < n; ++b) {
        if (prof[b] == 0) continue;
        const MultChar cb = chi.pow(b) * eta;
        some_trivial = some_trivial || cb.trivial();
        const std::uint32_t gi = cb.inverse().a;
        for (unsigned i = 0; i < prof[b]; ++i) {
          term *= G[gi];
          rel += Gerr[gi] / std::abs(G[gi]) + 4 * ul;
        }
      }
      const std::uint32_t gn = eta.pow(n).a;
      term *= G[gn] * zq[(std::uint64_t{e} * dl) % ord];
      rel += Gerr[gn] / std::abs(G[gn]) + 16 * ul;
      if (!some_trivial) term /= static_cast<LD>(q);
      total += weight * term;
      ++nterms;
      bound += weight * std::abs(term) * (rel + 8 * ul);
    }
  };
  auto rec = [&](auto&& self, unsigned b, unsigned left, unsigned weight) -> void {
    if (b == n - 1) {
      c[b] = left;
      if ((weight + static_cast<unsigned long long>(b) * left) % n == 0) visit(c);
      c[b] = 0;
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      c[b] = k;
      self(self, b + 1, left - k, static_cast<unsigned>((weight + static_cast<unsigned long long>(b) * k) % n));
    }
    c[b] = 0;
  };
  rec(rec, 0, n, 0);
  // Recursive summation adds at most nterms * ul per unit of magnitude.
  const LD terms = static_cast<LD>(nterms);
  const LC affine = total / static_cast<LD>(q - 1);
  const LD err = (bound * (1 + terms * ul) + std::abs(total) * 2 * ul) / static_cast<LD>(q - 1);
  const LD nearest = std::nearbyint(affine.real());
  const double residual = static_cast<double>(std::hypot(affine.real() - nearest, affine.imag()));
  // large totals outrun long double; the cross-check is then skipped rather than trusted
  if (!(residual + err < 0.5L) || std::abs(nearest) > 0x1p62L) return std::nullopt;
  max_residual = std::max(max_residual, residual);
  if (!(residual < tol)) {
    std::ostringstream os;
    os << "Gauss-sum count is not within " << tol << " of an integer (residual " << residual << ", bound "
       << static_cast<double>(err) << ")";
    throw Error(Errc::RoundingFailure, os.str());
  }
  return trivial_part(q, n) + static_cast<std::int64_t>(nearest);
}

MultChar chi_for(const CharTable& t, unsigned n, unsigned chi_power) {
  if (std::gcd(chi_power, n) != 1) {
    throw Error(Errc::InvalidArgument, "character power must be prime to n");
  }
  return t.order_n(n, chi_power);
}

}  // namespace

BetaEval beta(const CharTable& t, std::span<const int> s, MultChar chi, MultChar eta, const FormulaOptions& opt) {
  const unsigned n = static_cast<unsigned>(s.size());
  if (n == 0 || chi.modulus != t.order() || chi.order() != n) {
    throw Error(Errc::OrderMismatch, "chi must have order " + std::to_string(n));
  }
  long long sum = 0;
  for (int x : s) sum += x;
  if (modn(sum, n) != 0) throw Error(Errc::InvalidArgument, "tuple must sum to 0 mod n");

  BetaEval r;
  r.s.reserve(n);
  for (int x : s) r.s.push_back(modn(x, n));
  r.chi_exponent = chi.a;
  r.eta_exponent = eta.a;

  std::vector<MultChar> all, den;
  for (unsigned j = 0; j < n; ++j) all.push_back(chi.pow(j) * eta);
  for (int x : r.s) {
    den.push_back(chi.pow(x) * eta);
    if (den.back().trivial()) ++r.z;
  }
  r.delta = r.z == 0 ? 1 : 0;
  r.value = t.q_half_power(static_cast<int>(n + 1 - 2 * r.z - 2 * r.delta)) * gauss_product(t, all) /
            gauss_product(t, den);

  const auto prof = kprofile_of(r.s, n);
  const auto [v, w] = vw_sequences(prof);
  std::vector<MultChar> vs, ws;
  for (int b : v) vs.push_back(chi.pow(b) * eta);
  for (int b : w) {
    ws.push_back(chi.pow(b) * eta);
    if (ws.back().trivial()) ++r.nu;
  }
  r.value_vw = t.q_half_power(static_cast<int>(n - 1 - 2 * r.nu)) * gauss_product(t, vs) / gauss_product(t, ws);

  if (r.z + r.delta != 1 + r.nu) {
    throw Error(Errc::FormMismatch, "z + delta != 1 + nu");
  }
  r.form_residual = rel_residual(r.value, r.value_vw);
  if (!(r.form_residual < opt.tol_form)) {
    std::ostringstream os;
    os << "beta forms disagree (residual " << r.form_residual << ") at eta exponent " << eta.a;
    throw Error(Errc::FormMismatch, os.str());
  }
  return r;
}

ClassTerm N_class(const CharTable& t, const ClassRecord& rec, MultChar chi, Elem psi, const FormulaOptions& opt) {
  check_psi(t, psi);
  const unsigned n = rec.n;
  const FieldCtx& F = t.field();
  const std::uint32_t ord = t.order();
  const std::uint32_t dl = F.dlog(lambda_of(F, n, psi));
  const double inv_qm1 = 1.0 / static_cast<double>(ord);

  ClassTerm out;
  CycSum orbit;
  Residues ks(n);
  for (unsigned k = 1; k < n; ++k) {
    for (unsigned i = 0; i < n; ++i) ks[i] = modn(static_cast<long long>(k) * rec.rep[i], n);
    CycSum s;
    for (std::uint32_t e = 0; e < ord; ++e) {
      const BetaEval b = beta(t, ks, chi, MultChar{e, ord}, opt);
      out.max_residual = std::max(out.max_residual, b.form_residual);
      s.add(b.value * t.root(std::int64_t{e} * dl));
    }
    const CycValue nk = s.total().scaled(inv_qm1);
    if (k == 1) out.n_bar_chi = nk;
    orbit.add(nk);
  }
  out.orbit_sum = orbit.total();
  out.max_residual = std::max(out.max_residual, rounding_residual(out.orbit_sum));
  out.orbit_sum_int = round_to_integer(out.orbit_sum, opt.tol_round);
  const std::int64_t scaled = static_cast<std::int64_t>(rec.ordered_classes) * out.orbit_sum_int;
  if (scaled % static_cast<std::int64_t>(rec.K) != 0) {
    throw Error(Errc::NonIntegralMultiplicity, "class sum is not divisible by K");
  }
  out.value = scaled / static_cast<std::int64_t>(rec.K);
  return out;
}

DworkFormula dwork_count_formula(const CharTable& t, unsigned n, Elem psi, const FormulaOptions& opt) {
  return dwork_count_formula(t, n, psi, 1, opt);
}

DworkFormula dwork_count_formula(const CharTable& t, unsigned n, Elem psi, unsigned chi_power,
                                 const FormulaOptions& opt) {
  check_congruence(t, n);
  check_psi(t, psi);
  const MultChar chi = chi_for(t, n, chi_power);
  DworkFormula out;
  out.total = trivial_part(t.q(), n);
  for (const auto& rec : enumerate_classes(n)) {
    const ClassTerm ct = N_class(t, rec, chi, psi, opt);
    out.max_residual = std::max(out.max_residual, ct.max_residual);
    out.class_terms.push_back(ct.value);
    out.total += ct.value;
  }
  out.gauss_sum_total = gauss_sum_count(t, n, psi, chi, opt.tol_round, out.max_residual);
  if (out.gauss_sum_total && *out.gauss_sum_total != out.total) {
    throw Error(Errc::FormMismatch, "class decomposition gives " + std::to_string(out.total) +
                                        " but the Gauss-sum count gives " + std::to_string(*out.gauss_sum_total));
  }
  return out;
}

HyperTerm hyper_term(const CharTable& t, const HyperShape& h, MultChar chi, MultChar eta) {
  const unsigned l = h.l, k = h.k;
  auto ch = [&](long long e) { return chi.pow(e); };
  HyperTerm out;
  out.jacobi = CycValue::exact(1.0);
  for (unsigned j = 0; j + 1 < l; ++j) {
    const MultChar pair[2] = {ch(h.alphas[j]) * eta, ch(h.betas[j])};
    out.jacobi *= t.jacobi_from_gauss(pair);
  }
  std::vector<MultChar> last{ch(h.alphas[l - 1]) * eta};
  for (unsigned i = l; i < k; ++i) last.push_back(ch(h.alphas[i]));
  last.push_back(ch(h.betas[l - 1]));
  out.jacobi *= t.jacobi_from_gauss(last);

  std::vector<MultChar> num, den;
  for (unsigned i = 0; i < l; ++i) num.push_back(ch(h.alphas[i]) * eta);
  for (unsigned j = 0; j + 1 < l; ++j) den.push_back(ch(h.alphas[j] + h.betas[j]) * eta);
  long long tail = h.betas[l - 1];
  for (unsigned i = l - 1; i < k; ++i) tail += h.alphas[i];
  den.push_back(ch(tail) * eta);
  for (const auto& d : den) out.nu += d.trivial() ? 1 : 0;
  if (h.complete_pairing()) {
    out.paired = t.q_half_power(static_cast<int>(k) - 2 * static_cast<int>(out.nu)) * gauss_product(t, num) /
                 gauss_product(t, den);
  }
  return out;
}

HyperFormula N_hyper_formula(const CharTable& t, const HyperVariety& hv, const FormulaOptions& opt) {
  const HyperShape& h = hv.shape;
  validate(h);
  if (!t.field().contains(hv.lambda)) throw Error(Errc::InvalidArgument, "lambda is not an element of the field");
  if (hv.lambda == 0) throw Error(Errc::LambdaZero, "lambda must be nonzero");
  const std::uint32_t ord = t.order();
  const std::uint32_t dl = t.field().dlog(hv.lambda);
  const double inv_qm1 = 1.0 / static_cast<double>(ord);

  HyperFormula out;
  CycSum all;
  for (unsigned c = 1; c < h.n; ++c) {
    const MultChar chi = t.order_n(h.n, c);
    CycSum s;
    for (std::uint32_t e = 0; e < ord; ++e) {
      const MultChar eta{e, ord};
      const HyperTerm term = hyper_term(t, h, chi, eta);
      if (term.paired) {
        const double res = rel_residual(term.jacobi, *term.paired);
        out.max_residual = std::max(out.max_residual, res);
        if (!(res < opt.tol_form)) {
          std::ostringstream os;
          os << "complete-pairing form disagrees with the Jacobi-sum form (residual " << res << ")";
          throw Error(Errc::PairingInvariantViolated, os.str());
        }
      }
      s.add(term.jacobi * t.root(std::int64_t{e} * dl));
    }
    out.n_chi.push_back(s.total().scaled(inv_qm1));
    all.add(out.n_chi.back());
  }
  out.n_lambda_value = all.total();
  out.max_residual = std::max(out.max_residual, rounding_residual(out.n_lambda_value));
  out.n_lambda = round_to_integer(out.n_lambda_value, opt.tol_round);
  out.main_term = ipow(ord, h.l - 1) * ipow(t.q(), h.k - h.l);
  out.predicted = out.main_term + out.n_lambda;
  return out;
}

Elem lambda_of(const FieldCtx& F, unsigned n, Elem psi) {
  if (psi == 0) throw Error(Errc::PsiZero, "psi = 0 is not supported");
  return F.inv(F.pow(psi, n));
}

HyperVariety build_hyper_from_class(const FieldCtx& F, const ClassRecord& rec, Elem psi) {
  if (rec.special != SpecialClass::none || !rec.hyper) {
    throw Error(Errc::SpecialClass, "no hypergeometric variety for a special class");
  }
  HyperVariety hv;
  hv.shape = *rec.hyper;
  hv.lambda = lambda_of(F, rec.n, psi);
  hv.source_class = rec.rep;
  return hv;
}

HyperVariety build_hyper_from_pairing(const FieldCtx& F, const ClassRecord& rec, const Pairing& p, Elem psi) {
  if (rec.special != SpecialClass::none) {
    throw Error(Errc::SpecialClass, "no hypergeometric variety for a special class");
  }
  HyperVariety hv;
  hv.shape = hyper_shape_from_pairing(p, rec.n);
  hv.lambda = lambda_of(F, rec.n, psi);
  hv.source_class = rec.rep;
  return hv;
}

namespace {

LinkCheck link_from_terms(const ClassRecord& rec, std::int64_t q, const ClassTerm& ct, const HyperFormula& hf) {
  if (rec.gamma % rec.K != 0) {
    throw Error(Errc::NonIntegralMultiplicity, "K does not divide gamma");
  }
  LinkCheck lc;
  lc.n_class = ct.value;
  lc.n_lambda = hf.n_lambda;
  lc.multiplier = rec.gamma / rec.K;
  lc.q_exponent = (static_cast<int>(rec.n) - *rec.d - 2) / 2;
  lc.rhs = static_cast<std::int64_t>(lc.multiplier) * ipow(q, static_cast<unsigned>(lc.q_exponent)) * lc.n_lambda;
  lc.residual = std::llabs(lc.n_class - lc.rhs);
  lc.max_residual = std::max(ct.max_residual, hf.max_residual);
  return lc;
}

}  // namespace

LinkCheck link_check(const CharTable& t, const ClassRecord& rec, Elem psi, const FormulaOptions& opt) {
  if (rec.special != SpecialClass::none) {
    throw Error(Errc::SpecialClass, "the link theorem excludes the special classes");
  }
  check_psi(t, psi);
  const ClassTerm ct = N_class(t, rec, t.order_n(rec.n, 1), psi, opt);
  const HyperFormula hf = N_hyper_formula(t, build_hyper_from_class(t.field(), rec, psi), opt);
  return link_from_terms(rec, t.q(), ct, hf);
}

bool DecompositionReport::consistent() const {
  if (formula_total != brute_force_total || (gauss_sum_total && *gauss_sum_total != formula_total) || assembled_total != formula_total) {
    return false;
  }
  if (n_mirror_formula != n_mirror_count) return false;
  const std::int64_t expected_singular =
      singular ? static_cast<std::int64_t>(factorial(n - 1)) * ipow(static_cast<std::int64_t>(q), (n - 1) / 2) : 0;
  if (singular_term != expected_singular) return false;
  return std::all_of(rows.begin(), rows.end(), [](const DecompositionRow& r) {
    return r.link_residual == 0 && r.n_lambda_formula == r.n_lambda_count;
  });
}

void require_consistent(const DecompositionReport& r) {
  auto fail = [](const std::string& what) { throw Error(Errc::CountInvariantViolated, what); };
  if (r.formula_total != r.brute_force_total) {
    fail("formula total " + std::to_string(r.formula_total) + " != brute force " + std::to_string(r.brute_force_total));
  }
  if (r.gauss_sum_total && *r.gauss_sum_total != r.formula_total) fail("Gauss-sum count differs from the class decomposition");
  if (r.assembled_total != r.formula_total) fail("grouped decomposition does not add up to the total");
  if (r.n_mirror_formula != r.n_mirror_count) fail("N_<0> differs from the mirror count");
  for (const auto& row : r.rows) {
    std::ostringstream os;
    for (int x : row.cls.rep) os << x;
    if (row.link_residual != 0) fail("link residual nonzero for class " + os.str());
    if (row.n_lambda_formula != row.n_lambda_count) fail("N_lambda formula differs from count for class " + os.str());
  }
  if (!r.consistent()) fail("singular term mismatch");
}

DecompositionReport decompose(const CharTable& t, unsigned n, Elem psi, const CountOptions& copt,
                              const FormulaOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  check_congruence(t, n);
  check_psi(t, psi);
  const FieldCtx& F = t.field();
  const std::int64_t q = t.q();
  const MultChar chi = t.order_n(n, 1);

  DecompositionReport r;
  r.n = n;
  r.p = F.p();
  r.f = F.f();
  r.q = static_cast<std::uint64_t>(q);
  r.psi = psi;
  r.lambda = lambda_of(F, n, psi);
  r.singular = F.pow(psi, n) == 1;
  r.trivial_part = trivial_part(q, n);
  r.formula_total = r.trivial_part;

  for (const auto& rec : enumerate_classes(n)) {
    const ClassTerm ct = N_class(t, rec, chi, psi, opt);
    r.max_rounding_residual = std::max(r.max_rounding_residual, ct.max_residual);
    r.formula_total += ct.value;
    if (rec.special == SpecialClass::zero) {
      r.n_mirror_formula = ct.value;
      continue;
    }
    if (rec.special == SpecialClass::full) {
      r.singular_term = ct.value;
      continue;
    }
    DecompositionRow row;
    row.cls = rec;
    row.hyper = build_hyper_from_class(F, rec, psi);
    const HyperFormula hf = N_hyper_formula(t, row.hyper, opt);
    r.max_rounding_residual = std::max(r.max_rounding_residual, hf.max_residual);
    const LinkCheck lc = link_from_terms(rec, q, ct, hf);
    row.multiplier = lc.multiplier;
    row.q_exponent = lc.q_exponent;
    row.n_class = ct.value;
    row.n_lambda_formula = hf.n_lambda;
    row.link_residual = lc.residual;
    row.n_lambda_count = static_cast<std::int64_t>(count_hyper(F, row.hyper, copt).affine) - hf.main_term;
    r.n_d[*rec.d] += static_cast<std::int64_t>(row.multiplier) * row.n_lambda_count;
    r.rows.push_back(std::move(row));
  }

  r.gauss_sum_total = gauss_sum_count(t, n, psi, chi, opt.tol_round, r.max_rounding_residual);
  r.assembled_total = r.trivial_part + r.n_mirror_formula + r.singular_term;
  for (const auto& [d, nd] : r.n_d) {
    r.assembled_total += ipow(q, static_cast<unsigned>((static_cast<int>(n) - d - 2) / 2)) * nd;
  }
  const CountResult dw = count_dwork(F, n, psi, copt);
  r.brute_force_total = static_cast<std::int64_t>(*dw.projective);
  const CountResult mi = count_mirror(F, n, psi, copt);
  r.n_mirror_count = static_cast<std::int64_t>(*mi.projective) - r.trivial_part;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace dwork
