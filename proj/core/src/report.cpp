#include "dwork/report.hpp"

#include <sstream>

namespace dwork {

using nlohmann::json;

namespace {

const char* special_name(SpecialClass s) {
  switch (s) {
    case SpecialClass::zero: return "zero";
    case SpecialClass::full: return "full";
    default: return "none";
  }
}

json optional_int(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string display_of(const ClassRecord& c) {
  if (c.display) return to_string(*c.display);
  if (c.hyper) return to_string(*c.hyper);
  return "";
}

}  // namespace

std::string residues_string(const Residues& r) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
  os << ")";
  return os.str();
}

json field_json(const FieldCtx& F) {
  json j;
  j["p"] = F.p();
  j["f"] = F.f();
  j["q"] = F.q();
  j["modulus"] = std::vector<std::uint32_t>(F.modulus().begin(), F.modulus().end());
  j["generator"] = F.generator();
  j["generator_digits"] = F.digits(F.generator());
  return j;
}

json to_json(const CountResult& r) {
  return json{{"variety", r.variety},
              {"p", r.p},
              {"f", r.f},
              {"r", r.r},
              {"q", r.q},
              {"affine", r.affine},
              {"projective", r.projective ? json(*r.projective) : json(nullptr)},
              {"seconds", r.seconds}};
}

json to_json(const HyperShape& h) {
  return json{{"n", h.n},           {"l", h.l},         {"k", h.k},
              {"alphas", h.alphas}, {"betas", h.betas}, {"complete_pairing", h.complete_pairing()}};
}

json to_json(const ClassRecord& c) {
  json j;
  j["n"] = c.n;
  j["rep"] = c.rep;
  j["kprofile"] = c.kprofile;
  j["nprime"] = c.nprime;
  j["m"] = c.m;
  j["gamma"] = c.gamma;
  j["K"] = c.K;
  j["special"] = special_name(c.special);
  j["ordered_classes"] = c.ordered_classes;
  if (c.pairing) {
    j["v"] = c.pairing->v;
    j["w"] = c.pairing->w;
    j["mprime"] = c.pairing->mprime;
  } else {
    j["v"] = nullptr;
    j["w"] = nullptr;
    j["mprime"] = nullptr;
  }
  j["d"] = optional_int(c.d);
  j["hyper"] = c.hyper ? to_json(*c.hyper) : json(nullptr);
  j["equation"] = c.special == SpecialClass::none ? json(display_of(c)) : json(nullptr);
  return j;
}

json to_json(const IdentityReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"max_residual", c.max_residual},
                      {"witness", c.witness},
                      {"evaluations", c.evaluations},
                      {"skipped_trivial", c.skipped_trivial}});
  }
  return json{{"p", r.p},     {"f", r.f},           {"q", r.q},
              {"tol", r.tol}, {"seed", r.seed},     {"checks", checks},
              {"max_residual", r.max_residual}, {"passed", r.passed}};
}

json to_json(const DecompositionReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"rep", row.cls.rep},
                    {"gamma", row.cls.gamma},
                    {"K", row.cls.K},
                    {"m", row.cls.m},
                    {"mprime", row.cls.pairing ? json(row.cls.pairing->mprime) : json(nullptr)},
                    {"d", optional_int(row.cls.d)},
                    {"multiplier", row.multiplier},
                    {"q_exponent", row.q_exponent},
                    {"n_class", row.n_class},
                    {"n_lambda_formula", row.n_lambda_formula},
                    {"n_lambda_count", row.n_lambda_count},
                    {"link_residual", row.link_residual},
                    {"equation", display_of(row.cls)},
                    {"hyper", to_json(row.hyper.shape)}});
  }
  json nd = json::object();
  for (const auto& [d, v] : r.n_d) nd[std::to_string(d)] = v;
  return json{{"n", r.n},
              {"p", r.p},
              {"f", r.f},
              {"q", r.q},
              {"psi", r.psi},
              {"lambda", r.lambda},
              {"singular", r.singular},
              {"trivial_part", r.trivial_part},
              {"n_mirror_formula", r.n_mirror_formula},
              {"n_mirror_count", r.n_mirror_count},
              {"singular_term", r.singular_term},
              {"rows", rows},
              {"n_d", nd},
              {"formula_total", r.formula_total},
              {"gauss_sum_total", r.gauss_sum_total ? json(*r.gauss_sum_total) : json(nullptr)},
              {"assembled_total", r.assembled_total},
              {"brute_force_total", r.brute_force_total},
              {"max_rounding_residual", r.max_rounding_residual},
              {"consistent", r.consistent()},
              {"seconds", r.seconds}};
}

json to_json(const ZetaSeries& z) {
  json counts = json::array(), coeffs = json::array();
  for (const auto& c : z.counts) counts.push_back(c.str());
  for (const auto& c : z.coeffs) coeffs.push_back(to_string(c));
  return json{{"q", z.q.str()}, {"counts", counts}, {"coeffs", coeffs}, {"integral", z.integral()}};
}

json to_json(const CriterionResult& r) {
  return json{{"id", r.id},
              {"name", r.name},
              {"passed", r.passed},
              {"seconds", r.seconds},
              {"limit_seconds", r.limit_seconds},
              {"detail", r.detail}};
}

json error_json(const std::string& error, const std::string& message) {
  return json{{"error", error}, {"message", message}};
}

std::string classes_csv(const std::vector<ClassRecord>& classes) {
  std::ostringstream os;
  os << "rep,gamma,K,m,mprime,d,special,equation\n";
  for (const auto& c : classes) {
    os << csv_field(residues_string(c.rep)) << ',' << c.gamma << ',' << c.K << ',' << c.m << ',';
    if (c.pairing) os << c.pairing->mprime;
    os << ',';
    if (c.d) os << *c.d;
    os << ',' << special_name(c.special) << ',' << csv_field(display_of(c)) << '\n';
  }
  return os.str();
}

std::string decomposition_csv(const DecompositionReport& r) {
  std::ostringstream os;
  os << "rep,gamma,K,m,mprime,d,multiplier,q_exponent,n_class,n_lambda_formula,n_lambda_count,link_residual\n";
  for (const auto& row : r.rows) {
    os << csv_field(residues_string(row.cls.rep)) << ',' << row.cls.gamma << ',' << row.cls.K << ',' << row.cls.m
       << ',' << (row.cls.pairing ? row.cls.pairing->mprime : 0) << ',' << row.cls.d.value_or(0) << ','
       << row.multiplier << ',' << row.q_exponent << ',' << row.n_class << ',' << row.n_lambda_formula << ','
       << row.n_lambda_count << ',' << row.link_residual << '\n';
  }
  return os.str();
}

std::string count_csv(const CountResult& r) {
  std::ostringstream os;
  os << "variety,p,f,r,q,affine,projective,seconds\n"
     << r.variety << ',' << r.p << ',' << r.f << ',' << r.r << ',' << r.q << ',' << r.affine << ',';
  if (r.projective) os << *r.projective;
  os << ',' << r.seconds << '\n';
  return os.str();
}

std::string identity_csv(const IdentityReport& r) {
  std::ostringstream os;
  os << "identity,max_residual,evaluations,witness\n";
  for (const auto& c : r.checks) {
    os << csv_field(c.name) << ',' << c.max_residual << ',' << c.evaluations << ',' << csv_field(c.witness) << '\n';
  }
  return os.str();
}

std::string zeta_csv(const ZetaSeries& z) {
  std::ostringstream os;
  os << "r,count,coeff\n";
  for (std::size_t i = 0; i < z.coeffs.size(); ++i) {
    os << i << ',';
    if (i >= 1 && i <= z.counts.size()) os << z.counts[i - 1];
    os << ',' << to_string(z.coeffs[i]) << '\n';
  }
  return os.str();
}

}  // namespace dwork
