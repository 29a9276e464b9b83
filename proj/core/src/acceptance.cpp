#include "dwork/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>

#include "dwork/zeta.hpp"

namespace dwork {

namespace {

using Clock = std::chrono::steady_clock;

/// Collects failure messages for one criterion.
class Findings {
 public:
  void fail(const std::string& msg) {
    if (!failures_.empty()) failures_ += "; ";
    failures_ += msg;
  }
  void expect(bool ok, const std::string& msg) {
    if (!ok) fail(msg);
  }
  void note(const std::string& msg) {
    if (!notes_.empty()) notes_ += "; ";
    notes_ += msg;
  }
  bool ok() const { return failures_.empty(); }
  std::string text() const { return failures_.empty() ? notes_ : failures_; }

 private:
  std::string failures_, notes_;
};

std::string rep_str(const Residues& r) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
  os << ")";
  return os.str();
}

std::int64_t ipow(std::int64_t b, unsigned e) {
  std::int64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

double rel_residual(const CycValue& a, const CycValue& b) {
  const double scale = std::max({1.0, a.abs(), b.abs()});
  return std::abs(a.value() - b.value()) / scale;
}

CountOptions fibered(unsigned threads) { return CountOptions{threads, Kernel::fibered}; }

const DecompositionRow* find_row(const DecompositionReport& r, const Residues& rep) {
  for (const auto& row : r.rows) {
    if (row.cls.rep == rep) return &row;
  }
  return nullptr;
}

void criterion_identities(const AcceptanceOptions& opt, Findings& out) {
  const std::pair<std::uint32_t, unsigned> fields[] = {{11, 1}, {29, 1}, {11, 2}};
  for (auto [p, f] : fields) {
    const CharTable t(FieldCtx::build(p, f));
    const IdentityReport rep = identity_suite(t, opt.tol_identity, opt.seed);
    std::ostringstream os;
    os << "F_" << t.q() << " max residual " << rep.max_residual;
    out.note(os.str());
    for (const auto& c : rep.checks) {
      if (!(c.max_residual < opt.tol_identity)) {
        std::ostringstream e;
        e << "F_" << t.q() << " " << c.name << " residual " << c.max_residual << " at " << c.witness;
        out.fail(e.str());
      }
    }
    out.expect(rep.checks.size() == 8, "F_" + std::to_string(t.q()) + " ran " + std::to_string(rep.checks.size()) +
                                           " identities, expected 8");
  }
}

void criterion_classes(Findings& out) {
  for (unsigned n : {5u, 7u}) {
    const auto classes = enumerate_classes(n);
    const auto expected = published_classes(n);
    std::vector<const ClassRecord*> ordinary;
    unsigned specials = 0;
    for (const auto& c : classes) {
      if (c.special == SpecialClass::none) {
        ordinary.push_back(&c);
      } else {
        ++specials;
      }
    }
    out.expect(specials == 2, "n=" + std::to_string(n) + ": expected two special classes");
    if (ordinary.size() != expected.size()) {
      out.fail("n=" + std::to_string(n) + ": " + std::to_string(ordinary.size()) + " rows, expected " +
               std::to_string(expected.size()));
      continue;
    }
    for (std::size_t i = 0; i < expected.size(); ++i) {
      const auto& got = *ordinary[i];
      const auto& want = expected[i];
      // Reference representatives are not always the canonical (smallest) ones.
      const bool same = got.rep == canonical_rep(want.rep, n) && got.gamma == want.gamma && got.K == want.K && got.m == want.m &&
                        got.pairing && got.pairing->mprime == want.mprime && got.d == want.d;
      out.expect(same, "n=" + std::to_string(n) + " row " + std::to_string(i + 1) + " " + rep_str(got.rep) +
                           " differs from " + rep_str(want.rep));
    }
    const std::uint64_t total = partition_total(classes);
    const std::uint64_t want_total = static_cast<std::uint64_t>(ipow(n, n - 2));
    out.expect(total == want_total, "n=" + std::to_string(n) + ": partition total " + std::to_string(total));
    out.note("n=" + std::to_string(n) + ": " + std::to_string(ordinary.size()) + " rows, total " + std::to_string(total));
  }
}

void criterion_quintic(const AcceptanceOptions& opt, Findings& out) {
  const FieldCtx F = FieldCtx::build(11);
  const CharTable t(F);
  const std::int64_t q = 11;
  const FormulaOptions fo{opt.tol_round, kDefaultFormTol};
  const HyperShape shape_a = shape_from_display(published_quintic_A());
  const HyperShape shape_b = shape_from_display(published_quintic_B());
  for (Elem psi = 2; psi <= 6; ++psi) {
    const std::string tag = "psi=" + std::to_string(psi);
    const DworkFormula f = dwork_count_formula(t, 5, psi, fo);
    const CountResult c = count_dwork(F, 5, psi, fibered(opt.threads));
    out.expect(f.total == static_cast<std::int64_t>(*c.projective),
               tag + ": formula " + std::to_string(f.total) + " != brute force " + std::to_string(*c.projective));

    const DecompositionReport r = decompose(t, 5, psi, fibered(opt.threads), fo);
    try {
      require_consistent(r);
    } catch (const Error& e) {
      out.fail(tag + ": " + e.what());
    }
    const Elem lambda = r.lambda;
    // N_A and N_B from the reference curve equations, two ways each.
    const HyperVariety ha{shape_a, lambda, std::nullopt}, hb{shape_b, lambda, std::nullopt};
    const std::int64_t main_a = ipow(q - 1, shape_a.l - 1) * ipow(q, shape_a.k - shape_a.l);
    const std::int64_t main_b = ipow(q - 1, shape_b.l - 1) * ipow(q, shape_b.k - shape_b.l);
    const std::int64_t na = static_cast<std::int64_t>(count_hyper(F, ha).affine) - main_a;
    const std::int64_t nb = static_cast<std::int64_t>(count_hyper(F, hb).affine) - main_b;
    const std::int64_t na_curve = static_cast<std::int64_t>(count_display(F, published_quintic_A(), lambda).affine) - q;
    const std::int64_t nb_curve = static_cast<std::int64_t>(count_display(F, published_quintic_B(), lambda).affine) - q;
    out.expect(na == na_curve && nb == nb_curve, tag + ": curve counts disagree with the hypergeometric system");

    const DecompositionRow* ra = find_row(r, {0, 0, 0, 1, 4});
    const DecompositionRow* rb = find_row(r, {0, 0, 1, 1, 3});
    if (!ra || !rb) {
      out.fail(tag + ": missing class row");
      continue;
    }
    out.expect(ra->multiplier == 10 && rb->multiplier == 15 && ra->q_exponent == 1 && rb->q_exponent == 1,
               tag + ": multipliers/powers differ from 10q, 15q");
    out.expect(ra->n_lambda_count == na && ra->n_lambda_formula == na, tag + ": N_A mismatch");
    out.expect(rb->n_lambda_count == nb && rb->n_lambda_formula == nb, tag + ": N_B mismatch");
    const std::int64_t assembled =
        1 + q + q * q + q * q * q + r.n_mirror_count + r.singular_term + 10 * q * na + 15 * q * nb;
    out.expect(assembled == r.brute_force_total, tag + ": 1+q+q^2+q^3+N_mirror+10qN_A+15qN_B = " +
                                                     std::to_string(assembled) + " != " +
                                                     std::to_string(r.brute_force_total));
    out.note(tag + (r.singular ? " (singular)" : "") + ": |X|=" + std::to_string(r.brute_force_total) +
             " N_A=" + std::to_string(na) + " N_B=" + std::to_string(nb));
  }
}

void criterion_extension(const AcceptanceOptions& opt, Findings& out) {
  const FieldCtx base = FieldCtx::build(11);
  const Extension ext = make_extension(base, 2);
  const CharTable t(ext.field);
  const Elem psi = ext.embed(2);
  const DworkFormula f = dwork_count_formula(t, 5, psi, FormulaOptions{opt.tol_round, kDefaultFormTol});
  const CountResult c = count_dwork_over(base, 2, 5, 2, fibered(opt.threads));
  out.expect(f.total == static_cast<std::int64_t>(*c.projective),
             "formula " + std::to_string(f.total) + " != brute force " + std::to_string(*c.projective));
  out.note("|X_2(F_121)| = " + std::to_string(*c.projective) + ", brute force " + std::to_string(c.seconds) + " s");
}

void criterion_septic(const AcceptanceOptions& opt, Findings& out) {
  const FieldCtx F = FieldCtx::build(29);
  const CharTable t(F);
  const DecompositionReport r = decompose(t, 7, 3, fibered(opt.threads), FormulaOptions{opt.tol_round, kDefaultFormTol});
  try {
    require_consistent(r);
  } catch (const Error& e) {
    out.fail(e.what());
  }
  const std::vector<std::uint64_t> want{420, 630, 630, 70, 420, 210, 21, 105, 70, 105};
  std::vector<std::uint64_t> got;
  for (const auto& row : r.rows) {
    got.push_back(row.multiplier);
    out.expect(row.link_residual == 0, "link residual nonzero for " + rep_str(row.cls.rep));
  }
  out.expect(got == want, "multiplicity vector differs");
  out.expect(r.n_d.size() == 2 && r.n_d.count(1) && r.n_d.count(3), "expected N_1 and N_3");
  out.note("|S_3(F_29)| = " + std::to_string(r.brute_force_total) + ", N_1=" + std::to_string(r.n_d.count(1) ? r.n_d.at(1) : 0) +
           " N_3=" + std::to_string(r.n_d.count(3) ? r.n_d.at(3) : 0));
}

void criterion_singular(const AcceptanceOptions& opt, Findings& out) {
  const FieldCtx F = FieldCtx::build(11);
  const CharTable t(F);
  const DecompositionReport r = decompose(t, 5, 1, fibered(opt.threads), FormulaOptions{opt.tol_round, kDefaultFormTol});
  out.expect(r.singular, "psi=1 should be singular");
  out.expect(r.singular_term == 2904, "singular term " + std::to_string(r.singular_term) + " != 4!*11^2 = 2904");
  out.expect(r.formula_total == r.brute_force_total, "formula total differs from brute force");
  try {
    require_consistent(r);
  } catch (const Error& e) {
    out.fail(e.what());
  }
  out.note("singular term " + std::to_string(r.singular_term) + ", |X_1| = " + std::to_string(r.brute_force_total));
}

struct PropertyField {
  unsigned n;
  std::shared_ptr<CharTable> table;
};

/// Property suites; each runs `trials` seeded trials.
class Properties {
 public:
  Properties(const AcceptanceOptions& opt, Findings& out) : opt_(opt), out_(out), rng_(opt.seed) {
    for (auto [n, p] : {std::pair{5u, 11u}, {5u, 31u}, {5u, 41u}, {7u, 29u}, {7u, 43u}}) {
      fields_.push_back({n, std::make_shared<CharTable>(FieldCtx::build(p))});
    }
    classes_[5] = enumerate_classes(5);
    classes_[7] = enumerate_classes(7);
  }

  void run() {
    suite("beta forms", [&] { beta_forms(); });
    suite("beta actions", [&] { beta_actions(); });
    suite("chi choice", [&] { chi_choice(); });
    suite("pairing choice", [&] { pairing_choice(); });
    suite("projective divisibility", [&] { divisibility(); });
    suite("partition independence", [&] { partition(); });
  }

 private:
  template <class F>
  void suite(const std::string& name, F&& body) {
    unsigned passed = 0;
    std::string first_failure;
    for (unsigned i = 0; i < opt_.trials; ++i) {
      try {
        failure_.clear();
        body();
        if (failure_.empty()) {
          ++passed;
        } else if (first_failure.empty()) {
          first_failure = failure_;
        }
      } catch (const Error& e) {
        if (first_failure.empty()) first_failure = std::string(errc_name(e.code())) + ": " + e.what();
      }
    }
    out_.note(name + " " + std::to_string(passed) + "/" + std::to_string(opt_.trials));
    if (passed != opt_.trials) out_.fail(name + ": " + first_failure);
  }

  void fail(const std::string& why) {
    if (failure_.empty()) failure_ = why;
  }

  unsigned uniform(unsigned lo, unsigned hi) { return std::uniform_int_distribution<unsigned>(lo, hi)(rng_); }

  const PropertyField& field() { return fields_[uniform(0, static_cast<unsigned>(fields_.size()) - 1)]; }

  Residues random_tuple(unsigned n) {
    Residues s(n);
    int sum = 0;
    for (unsigned i = 0; i + 1 < n; ++i) {
      s[i] = static_cast<int>(uniform(0, n - 1));
      sum += s[i];
    }
    s[n - 1] = ((-sum) % static_cast<int>(n) + static_cast<int>(n)) % static_cast<int>(n);
    return s;
  }

  void beta_forms() {
    const auto& pf = field();
    const CharTable& t = *pf.table;
    const unsigned n = pf.n;
    const Residues s = random_tuple(n);
    const MultChar chi = t.order_n(n, uniform(1, n - 1));
    MultChar eta = t.character(uniform(0, t.order() - 1));
    // A third of the trials hit a trivial chi^{s_i} eta on purpose.
    if (uniform(0, 2) == 0) eta = chi.pow(-s[uniform(0, n - 1)]);
    const BetaEval b = beta(t, s, chi, eta);
    if (b.z + b.delta != 1 + b.nu) fail("z + delta != 1 + nu");
  }

  void beta_actions() {
    const auto& pf = field();
    const CharTable& t = *pf.table;
    const unsigned n = pf.n;
    const Residues s = random_tuple(n);
    const MultChar chi = t.order_n(n, 1);
    const MultChar eta = t.character(uniform(0, t.order() - 1));
    const CycValue base = beta(t, s, chi, eta).value;

    Residues perm = s;
    std::shuffle(perm.begin(), perm.end(), rng_);
    const unsigned j = uniform(0, n - 1), k = uniform(1, n - 1);
    Residues shifted(n), scaled(n);
    for (unsigned i = 0; i < n; ++i) {
      shifted[i] = static_cast<int>((s[i] + j) % n);
      scaled[i] = static_cast<int>((static_cast<unsigned>(s[i]) * k) % n);
    }
    const double tol = kDefaultFormTol;
    if (rel_residual(beta(t, perm, chi, eta).value, base) >= tol) fail("permutation changes beta");
    if (rel_residual(beta(t, shifted, chi, eta).value, beta(t, s, chi, chi.pow(j) * eta).value) >= tol) {
      fail("shift relation fails");
    }
    if (rel_residual(beta(t, scaled, chi, eta).value, beta(t, s, chi.pow(k), eta).value) >= tol) {
      fail("unit relation fails");
    }
  }

  Elem random_psi(const CharTable& t) { return static_cast<Elem>(uniform(1, t.q() - 1)); }

  void chi_choice() {
    const auto& pf = field();
    const CharTable& t = *pf.table;
    const auto& cls = classes_[pf.n];
    const ClassRecord& rec = cls[uniform(0, static_cast<unsigned>(cls.size()) - 1)];
    const Elem psi = random_psi(t);
    const unsigned c = uniform(2, pf.n - 1);
    const auto a = N_class(t, rec, t.order_n(pf.n, 1), psi).value;
    const auto b = N_class(t, rec, t.order_n(pf.n, c), psi).value;
    if (a != b) fail("N_<s> depends on chi for " + rep_str(rec.rep));
  }

  void pairing_choice() {
    const auto& pf = field();
    const CharTable& t = *pf.table;
    std::vector<const ClassRecord*> ordinary;
    for (const auto& r : classes_[pf.n]) {
      if (r.special == SpecialClass::none) ordinary.push_back(&r);
    }
    const ClassRecord& rec = *ordinary[uniform(0, static_cast<unsigned>(ordinary.size()) - 1)];
    const auto [v, w] = vw_sequences(rec.kprofile);
    const auto all = maximal_pairings(v, w, pf.n, 64);
    if (all.size() < 2) return;  // nothing to compare for this class
    const unsigned i = uniform(0, static_cast<unsigned>(all.size()) - 1);
    unsigned j = uniform(0, static_cast<unsigned>(all.size()) - 2);
    if (j >= i) ++j;
    const Elem psi = random_psi(t);
    const HyperVariety hi = build_hyper_from_pairing(t.field(), rec, all[i], psi);
    const HyperVariety hj = build_hyper_from_pairing(t.field(), rec, all[j], psi);
    const HyperFormula fi = N_hyper_formula(t, hi), fj = N_hyper_formula(t, hj);
    if (fi.n_lambda != fj.n_lambda) fail("N_lambda depends on the pairing for " + rep_str(rec.rep));
    // One of the two is also counted directly.
    if (static_cast<std::int64_t>(count_hyper(t.field(), hj).affine) != fj.predicted) {
      fail("count_hyper disagrees with the formula for " + rep_str(rec.rep));
    }
  }

  struct SmallCase {
    unsigned n;
    std::uint32_t p;
    unsigned f;
  };

  SmallCase small_case() {
    static const SmallCase cases[] = {{3, 7, 1},  {3, 13, 1}, {3, 2, 4}, {3, 5, 2}, {5, 11, 1},
                                      {5, 2, 4},  {5, 31, 1}, {5, 3, 2}, {7, 2, 3}, {7, 29, 1}};
    return cases[uniform(0, static_cast<unsigned>(std::size(cases)) - 1)];
  }

  FieldCtx small_field(const SmallCase& c) {
    const auto key = std::make_pair(c.p, c.f);
    auto it = small_fields_.find(key);
    if (it == small_fields_.end()) it = small_fields_.emplace(key, FieldCtx::build(c.p, c.f)).first;
    return it->second;
  }

  static double power(double b, unsigned e) { return std::pow(b, static_cast<double>(e)); }

  Kernel random_kernel(unsigned n, std::uint32_t q) {
    std::vector<Kernel> ks{Kernel::recursive};
    if (power(q, n - 1) <= 2e6) ks.push_back(Kernel::fibered);
    if (power(q, n) <= 2e6) ks.push_back(Kernel::naive);
    return ks[uniform(0, static_cast<unsigned>(ks.size()) - 1)];
  }

  void divisibility() {
    const SmallCase c = small_case();
    const FieldCtx F = small_field(c);
    const Elem psi = uniform(1, F.q() - 1);
    const bool mirror = uniform(0, 1) == 1;
    const Kernel k1 = random_kernel(c.n, F.q()), k2 = random_kernel(c.n, F.q());
    auto run = [&](Kernel k) {
      const CountOptions o{1, k};
      return mirror ? count_mirror(F, c.n, psi, o) : count_dwork(F, c.n, psi, o);
    };
    const CountResult a = run(k1), b = run(k2);
    if (!a.projective || (a.affine - 1) % (a.q - 1) != 0) fail("projective count not integral");
    if (a.affine != b.affine) fail("kernels disagree");
  }

  void partition() {
    const SmallCase c = small_case();
    const FieldCtx F = small_field(c);
    const Elem psi = uniform(1, F.q() - 1);
    const Kernel k = uniform(0, 1) ? Kernel::recursive
                                   : (power(F.q(), c.n - 1) <= 2e6 ? Kernel::fibered : Kernel::recursive);
    unsigned which = uniform(0, 2);
    // hypergeometric variety of a random class, when n | q-1
    const ClassRecord* rec = nullptr;
    if (which == 2 && c.n >= 5 && F.order() % c.n == 0) {
      const auto& cls = classes_[c.n];
      rec = &cls[2 + uniform(0, static_cast<unsigned>(cls.size()) - 3)];
    } else if (which == 2) {
      which = 0;
    }
    auto run = [&](unsigned threads) -> std::uint64_t {
      const CountOptions o{threads, k};
      if (which == 0) return count_dwork(F, c.n, psi, o).affine;
      if (which == 1) return count_mirror(F, c.n, psi, o).affine;
      return count_hyper(F, build_hyper_from_class(F, *rec, psi), o).affine;
    };
    if (run(2) != run(8)) fail("2 and 8 workers disagree");
  }

  const AcceptanceOptions& opt_;
  Findings& out_;
  std::mt19937_64 rng_;
  std::vector<PropertyField> fields_;
  std::map<unsigned, std::vector<ClassRecord>> classes_;
  std::map<std::pair<std::uint32_t, unsigned>, FieldCtx> small_fields_;
  std::string failure_;
};

void criterion_zeta(const AcceptanceOptions& opt, Findings& out) {
  const FieldCtx F = FieldCtx::build(11);
  const auto n1 = static_cast<std::int64_t>(*count_dwork(F, 5, 2, fibered(opt.threads)).projective);
  const auto n2 = static_cast<std::int64_t>(*count_dwork_over(F, 2, 5, 2, fibered(opt.threads)).projective);
  const std::vector<std::int64_t> counts{n1, n2};
  const ZetaSeries z = zeta_from_counts(11, counts);
  const ZetaSeries s = strip_trivial(z, 5);
  out.expect(s.integral(), "stripped coefficients are not integers");
  const auto back = counts_from_series(z.coeffs);
  out.expect(back.size() == 2 && back[0] == n1 && back[1] == n2, "exp/log round trip changed the counts");
  out.expect(restore_trivial(s, 5).coeffs == z.coeffs, "strip/restore is not the identity");
  out.expect(r_degree(5) == 200, "r_degree(5) = " + r_degree(5).str());
  out.expect(r_degree(7) == 39984, "r_degree(7) = " + r_degree(7).str());
  std::ostringstream os;
  os << "counts " << n1 << "," << n2 << "; stripped";
  for (const auto& c : s.coeffs) os << " " << to_string(c);
  out.note(os.str());
}

struct CriterionInfo {
  const char* name;
  double limit;
};

constexpr CriterionInfo kCriteria[kCriterionCount] = {
    {"character-sum identities over F_11, F_29, F_121", 10},
    {"class tables for n = 5, 7 and partition totals", 5},
    {"n = 5, q = 11, psi = 2..6: formula, brute force and 10qN_A + 15qN_B", 60},
    {"n = 5 over F_121: formula equals fibered brute force", 300},
    {"n = 7, q = 29, psi = 3: multiplicities, link residuals, totals", 900},
    {"n = 5, q = 11, psi = 1: singular term 2904 and total", 10},
    {"seeded property suites", 0},
    {"zeta series integrality, round trip and degree formula", 0},
};

}  // namespace

std::vector<ExpectedClass> published_classes(unsigned n) {
  if (n == 5) {
    return {{{0, 0, 0, 1, 4}, 20, 2, 2, 0, 1}, {{0, 0, 1, 1, 3}, 30, 2, 2, 0, 1}};
  }
  if (n == 7) {
    return {
        {{0, 0, 0, 1, 2, 5, 6}, 840, 2, 2, 0, 1},  {{0, 0, 1, 1, 3, 4, 5}, 1260, 2, 2, 0, 1},
        {{0, 0, 1, 1, 2, 4, 6}, 1260, 2, 2, 0, 1}, {{0, 0, 0, 0, 1, 2, 4}, 210, 3, 3, 0, 3},
        {{0, 0, 0, 1, 1, 2, 3}, 420, 1, 3, 0, 3},  {{0, 0, 1, 1, 3, 3, 6}, 630, 3, 3, 0, 3},
        {{0, 0, 0, 0, 0, 1, 6}, 42, 2, 4, 2, 3},   {{0, 0, 0, 0, 1, 1, 5}, 105, 1, 4, 2, 3},
        {{0, 0, 0, 1, 1, 1, 4}, 140, 2, 4, 2, 3},  {{0, 0, 0, 1, 1, 6, 6}, 210, 2, 4, 2, 3},
    };
  }
  return {};
}

DisplayEquation published_quintic_A() {
  return DisplayEquation{5, 1, {2}, {{{1}, false, 3}, {{1}, true, 2}}};
}

DisplayEquation published_quintic_B() {
  return DisplayEquation{5, 1, {2}, {{{1}, false, 4}, {{1}, true, 1}}};
}

CriterionResult run_criterion(int id, const AcceptanceOptions& opt) {
  CriterionResult r;
  r.id = id;
  if (id < 1 || id > kCriterionCount) {
    r.detail = "unknown criterion";
    return r;
  }
  r.name = kCriteria[id - 1].name;
  r.limit_seconds = kCriteria[id - 1].limit;
  Findings out;
  const auto t0 = Clock::now();
  try {
    switch (id) {
      case 1: criterion_identities(opt, out); break;
      case 2: criterion_classes(out); break;
      case 3: criterion_quintic(opt, out); break;
      case 4: criterion_extension(opt, out); break;
      case 5: criterion_septic(opt, out); break;
      case 6: criterion_singular(opt, out); break;
      case 7: Properties(opt, out).run(); break;
      case 8: criterion_zeta(opt, out); break;
    }
  } catch (const Error& e) {
    out.fail(std::string(errc_name(e.code())) + ": " + e.what());
  } catch (const std::exception& e) {
    out.fail(e.what());
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  if (r.limit_seconds > 0 && r.seconds >= r.limit_seconds) {
    out.fail("runtime " + std::to_string(r.seconds) + " s exceeds " + std::to_string(r.limit_seconds) + " s");
  }
  r.passed = out.ok();
  r.detail = out.text();
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    out.push_back(run_criterion(id, opt));
    if (on_result) on_result(out.back());
  }
  return out;
}

}  // namespace dwork
