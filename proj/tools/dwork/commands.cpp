#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <spdlog/spdlog.h>

#include "dwork/acceptance.hpp"
#include "dwork/report.hpp"
#include "dwork/zeta.hpp"

namespace dwork::cli {

namespace {

std::int64_t parse_int(const std::string& s) {
  std::int64_t v = 0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(*b))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(e[-1]))) --e;
  if (b < e && *b == '+') ++b;
  const auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e || b == e) throw Error(Errc::InvalidArgument, "not an integer: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

void print_json(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << '\n'; }

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : s + std::string(w - s.size(), ' '); }

std::string rpad(const std::string& s, std::size_t w) { return s.size() >= w ? s : std::string(w - s.size(), ' ') + s; }

std::string mult_str(std::uint64_t mult, int e) {
  std::string s = std::to_string(mult);
  if (e == 1) s += "q";
  if (e > 1) s += "q^" + std::to_string(e);
  return s;
}

CountOptions count_options(const RunConfig& cfg) { return CountOptions{cfg.threads, cfg.kernel}; }

FieldCtx build_field(const RunConfig& cfg, std::uint32_t p, unsigned f) {
  return FieldCtx::build(p, f, std::nullopt, cfg.table_cap);
}

void human_decomposition(const DecompositionReport& r, bool examples_layout, std::ostream& out) {
  out << "n = " << r.n << ", q = " << r.q << ", psi = " << r.psi << ", lambda = 1/psi^n = " << r.lambda
      << (r.singular ? "  (singular: psi^n = 1)" : "") << "\n\n";
  out << pad("class", 18) << rpad("gamma", 6) << rpad("K", 3) << rpad("m", 3) << rpad("m'", 4) << rpad("d", 3)
      << rpad("coeff", 8) << rpad("N_class", 12) << rpad("N_lam(f)", 10) << rpad("N_lam(c)", 10) << "  equation\n";
  for (const auto& row : r.rows) {
    const auto& c = row.cls;
    const std::string eq = c.display ? to_string(*c.display) : to_string(*c.hyper);
    out << pad(residues_string(c.rep), 18) << rpad(std::to_string(c.gamma), 6) << rpad(std::to_string(c.K), 3)
        << rpad(std::to_string(c.m), 3) << rpad(std::to_string(c.pairing->mprime), 4)
        << rpad(std::to_string(c.d.value_or(0)), 3) << rpad(mult_str(row.multiplier, row.q_exponent), 8)
        << rpad(std::to_string(row.n_class), 12) << rpad(std::to_string(row.n_lambda_formula), 10)
        << rpad(std::to_string(row.n_lambda_count), 10) << "  " << eq << '\n';
  }
  out << '\n';
  out << "trivial part 1 + q + ... + q^" << r.n - 2 << " = " << r.trivial_part << '\n';
  out << "N_mirror: formula " << r.n_mirror_formula << ", count " << r.n_mirror_count << '\n';
  out << "singular term N_<(0,1,...,n-1)> = " << r.singular_term << '\n';
  for (const auto& [d, v] : r.n_d) out << "N_" << d << " = " << v << '\n';
  if (examples_layout) {
    out << "|X_psi| = 1 + ... + q^" << r.n - 2 << " + N_mirror";
    for (const auto& row : r.rows) out << " + " << mult_str(row.multiplier, row.q_exponent) << " N" << residues_string(row.cls.rep);
    if (r.singular) out << " + singular term";
    out << '\n';
  }
  out << "total: formula " << r.formula_total << ", Gauss sums "
      << (r.gauss_sum_total ? std::to_string(*r.gauss_sum_total) : std::string("not certified")) << ", assembled "
      << r.assembled_total << ", brute force " << r.brute_force_total << '\n';
  out << "max rounding residual " << r.max_rounding_residual << ", " << std::fixed << std::setprecision(3)
      << r.seconds << " s\n";
  out.unsetf(std::ios::floatfield);
  out << (r.consistent() ? "consistent" : "INCONSISTENT") << '\n';
}

}  // namespace

Elem parse_psi(const FieldCtx& F, const std::string& text) {
  if (text.find(',') == std::string::npos) {
    const std::int64_t v = parse_int(text);
    if (F.f() > 1 && (v < 0 || v >= static_cast<std::int64_t>(F.p()))) {
      throw Error(Errc::InvalidArgument, "for f > 1 give psi as base-p digits (least significant first) or an integer in [0, p)");
    }
    return F.from_int(v);
  }
  std::vector<std::uint32_t> digits;
  for (const auto& part : split(text, ',')) {
    const std::int64_t d = parse_int(part);
    if (d < 0 || d >= static_cast<std::int64_t>(F.p())) throw Error(Errc::InvalidArgument, "psi digit out of range: " + part);
    digits.push_back(static_cast<std::uint32_t>(d));
  }
  if (digits.size() > F.f()) throw Error(Errc::InvalidArgument, "psi has more than f digits");
  digits.resize(F.f(), 0);
  return F.from_digits(digits);
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::error_code ec;
  if (std::filesystem::is_regular_file(text, ec)) {
    std::ifstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      out.push_back(parse_int(line));
    }
  } else {
    for (const auto& part : split(text, ',')) out.push_back(parse_int(part));
  }
  if (out.empty()) throw Error(Errc::EmptyList, "no integers given");
  return out;
}

int field_info(const RunConfig& cfg, std::uint32_t p, unsigned f, const std::vector<std::uint32_t>& modulus,
               std::ostream& out) {
  const FieldCtx F = modulus.empty() ? build_field(cfg, p, f) : FieldCtx::build(p, f, modulus, cfg.table_cap);
  const auto j = field_json(F);
  switch (cfg.output) {
    case Output::json: print_json(out, j); break;
    case Output::csv:
      out << "p,f,q,generator\n" << F.p() << ',' << F.f() << ',' << F.q() << ',' << F.generator() << '\n';
      break;
    case Output::human:
      out << "F_" << F.q() << " = F_" << F.p() << "^" << F.f() << '\n';
      if (F.f() > 1) {
        out << "modulus (low to high):";
        for (auto c : F.modulus()) out << ' ' << c;
        out << '\n';
      }
      out << "generator " << F.generator() << '\n';
      break;
  }
  return 0;
}

int char_check(const RunConfig& cfg, std::uint32_t p, unsigned f, std::ostream& out) {
  const CharTable t(build_field(cfg, p, f));
  spdlog::info("identity suite over F_{} with seed {}", t.q(), cfg.seed);
  const IdentityReport r = identity_suite(t, cfg.tol_identity, cfg.seed);
  switch (cfg.output) {
    case Output::csv: out << identity_csv(r); break;
    case Output::human:
      for (const auto& c : r.checks) out << pad(c.name, 28) << ' ' << c.max_residual << "  (" << c.evaluations << " evaluations)\n";
      out << (r.passed ? "all identities hold" : "FAILED") << " within " << r.tol << '\n';
      break;
    case Output::json: print_json(out, to_json(r)); break;
  }
  require_passed(r);
  return 0;
}

int classes(const RunConfig& cfg, unsigned n, std::ostream& out) {
  const auto cls = enumerate_classes(n);
  switch (cfg.output) {
    case Output::json: {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& c : cls) arr.push_back(to_json(c));
      print_json(out, arr);
      break;
    }
    case Output::csv: out << classes_csv(cls); break;
    case Output::human: {
      out << pad("representative", 24) << rpad("gamma", 7) << rpad("K", 3) << rpad("m", 3) << rpad("m'", 4)
          << rpad("d", 3) << "  equation\n";
      for (const auto& c : cls) {
        std::string eq;
        if (c.special == SpecialClass::zero) eq = "(mirror family)";
        if (c.special == SpecialClass::full) eq = "(special)";
        if (c.display) eq = to_string(*c.display);
        else if (c.hyper) eq = to_string(*c.hyper);
        out << pad(residues_string(c.rep), 24) << rpad(std::to_string(c.gamma), 7) << rpad(std::to_string(c.K), 3)
            << rpad(std::to_string(c.m), 3) << rpad(c.pairing ? std::to_string(c.pairing->mprime) : "-", 4)
            << rpad(c.d ? std::to_string(*c.d) : "-", 3) << "  " << eq << '\n';
      }
      out << "partition total " << partition_total(cls) << '\n';
      break;
    }
  }
  return 0;
}

int count(const RunConfig& cfg, const CountArgs& a, std::ostream& out) {
  const FieldCtx base = build_field(cfg, a.p, a.f);
  const Elem psi = parse_psi(base, a.psi);
  const CountOptions opt = count_options(cfg);
  spdlog::info("count {} n={} over F_{}^{} psi={} threads={}", a.variety, a.n, base.q(), a.r, psi, cfg.threads);
  CountResult r;
  if (a.variety == "dwork") {
    r = count_dwork_over(base, a.r, a.n, psi, opt, cfg.table_cap);
  } else if (a.variety == "mirror") {
    r = count_mirror_over(base, a.r, a.n, psi, opt, cfg.table_cap);
  } else {
    if (a.cls.empty()) throw Error(Errc::InvalidArgument, "count hyper needs --class");
    Residues s;
    for (auto v : parse_int_list(a.cls)) s.push_back(static_cast<int>(((v % a.n) + a.n) % a.n));
    if (s.size() != a.n) throw Error(Errc::InvalidArgument, "--class needs n residues");
    const ClassRecord rec = make_class_record(s, a.n);
    if (rec.special != SpecialClass::none) throw Error(Errc::SpecialClass, "special classes carry no hypergeometric variety");
    const Extension ext = make_extension(base, a.r, cfg.table_cap);
    r = count_hyper(ext.field, build_hyper_from_class(ext.field, rec, ext.embed(psi)), opt);
    r.r = a.r;
  }
  switch (cfg.output) {
    case Output::json: print_json(out, to_json(r)); break;
    case Output::csv: out << count_csv(r); break;
    case Output::human:
      out << r.variety << " over F_" << r.q << ": affine " << r.affine;
      if (r.projective) out << ", projective " << *r.projective;
      out << "  (" << r.seconds << " s)\n";
      break;
  }
  return 0;
}

int decompose(const RunConfig& cfg, std::uint32_t p, unsigned f, unsigned n, const std::string& psi_text,
              std::ostream& out) {
  const CharTable t(build_field(cfg, p, f));
  const Elem psi = parse_psi(t.field(), psi_text);
  const DecompositionReport r =
      decompose(t, n, psi, count_options(cfg), FormulaOptions{cfg.tol_round, kDefaultFormTol});
  switch (cfg.output) {
    case Output::json: print_json(out, to_json(r)); break;
    case Output::csv: out << decomposition_csv(r); break;
    case Output::human: human_decomposition(r, false, out); break;
  }
  require_consistent(r);
  return 0;
}

int examples(const RunConfig& cfg, unsigned n, std::uint32_t p, const std::string& psi_text, std::ostream& out) {
  if (n != 5 && n != 7) throw Error(Errc::InvalidArgument, "examples exist for n = 5 and n = 7");
  if (p == 0) p = n == 5 ? 11 : 29;
  const std::string psi = psi_text.empty() ? (n == 5 ? "2" : "3") : psi_text;
  const CharTable t(build_field(cfg, p, 1));
  const DecompositionReport r =
      decompose(t, n, parse_psi(t.field(), psi), count_options(cfg), FormulaOptions{cfg.tol_round, kDefaultFormTol});
  switch (cfg.output) {
    case Output::json: print_json(out, to_json(r)); break;
    case Output::csv: out << decomposition_csv(r); break;
    case Output::human: human_decomposition(r, true, out); break;
  }
  require_consistent(r);
  return 0;
}

int zeta(const RunConfig& cfg, const ZetaArgs& a, std::ostream& out) {
  ZetaSeries z;
  std::optional<unsigned> strip = a.strip_n;
  if (!a.counts.empty()) {
    if (a.q.empty()) throw Error(Errc::InvalidArgument, "--counts needs --q");
    std::vector<BigInt> counts;
    for (auto v : parse_int_list(a.counts)) {
      if (v < 0) throw Error(Errc::InvalidArgument, "counts must be nonnegative");
      counts.emplace_back(v);
    }
    z = zeta_from_counts(BigInt(a.q), counts);
  } else {
    if (a.p == 0 || a.R == 0 || a.psi.empty()) {
      throw Error(Errc::InvalidArgument, "give --q and --counts, or --p, --psi and --R to count");
    }
    if (a.R > 2 && !a.deep) throw Error(Errc::InvalidArgument, "R > 2 counts over large extensions; pass --deep");
    const FieldCtx base = build_field(cfg, a.p, a.f);
    const Elem psi = parse_psi(base, a.psi);
    std::vector<std::int64_t> counts;
    for (unsigned r = 1; r <= a.R; ++r) {
      const CountResult c = count_dwork_over(base, r, a.n, psi, count_options(cfg), cfg.table_cap);
      spdlog::info("N_{} = {} ({:.3f} s)", r, *c.projective, c.seconds);
      counts.push_back(static_cast<std::int64_t>(*c.projective));
    }
    z = zeta_from_counts(static_cast<std::int64_t>(base.q()), counts);
    if (!strip) strip = a.n;
  }
  const ZetaSeries shown = strip ? strip_trivial(z, *strip) : z;
  switch (cfg.output) {
    case Output::json: {
      auto j = to_json(shown);
      j["stripped_n"] = strip ? nlohmann::json(*strip) : nlohmann::json(nullptr);
      print_json(out, j);
      break;
    }
    case Output::csv: out << zeta_csv(shown); break;
    case Output::human:
      out << "counts:";
      for (const auto& c : z.counts) out << ' ' << c;
      out << "\n" << (strip ? "stripped series:" : "series:");
      for (const auto& c : shown.coeffs) out << ' ' << to_string(c);
      out << '\n';
      break;
  }
  if (strip) shown.integer_coeffs();  // throws NonIntegral
  return 0;
}

int selftest(const RunConfig& cfg, const std::vector<int>& criteria, unsigned trials, std::ostream& out) {
  AcceptanceOptions opt;
  opt.threads = std::max(cfg.threads, 4u);
  opt.seed = cfg.seed;
  opt.trials = trials;
  opt.tol_round = cfg.tol_round;
  opt.tol_identity = cfg.tol_identity;
  std::vector<int> ids = criteria;
  if (ids.empty()) {
    for (int i = 1; i <= kCriterionCount; ++i) ids.push_back(i);
  }
  spdlog::info("selftest seed {} trials {} threads {}", opt.seed, opt.trials, opt.threads);
  bool all = true;
  nlohmann::json arr = nlohmann::json::array();
  if (cfg.output == Output::csv) out << "id,passed,seconds,limit_seconds,name,detail\n";
  for (int id : ids) {
    const CriterionResult r = run_criterion(id, opt);
    all = all && r.passed;
    switch (cfg.output) {
      case Output::json: arr.push_back(to_json(r)); break;
      case Output::csv: {
        out << r.id << ',' << r.passed << ',' << r.seconds << ',' << r.limit_seconds << ",\"" << r.name << "\","
            << nlohmann::json(r.detail).dump() << '\n';
        break;
      }
      case Output::human:
        out << "criterion " << r.id << ": " << (r.passed ? "PASS" : "FAIL") << "  " << r.name << "  ("
            << std::fixed << std::setprecision(2) << r.seconds << " s)\n";
        out.unsetf(std::ios::floatfield);
        out << "    " << r.detail << '\n' << std::flush;
        break;
    }
  }
  if (cfg.output == Output::json) print_json(out, arr);
  return all ? 0 : 1;
}

}  // namespace dwork::cli
