#include <gtest/gtest.h>

#include <fstream>
#include <set>

#include "dwork/report.hpp"

using namespace dwork;
using nlohmann::json;

namespace {

json load_golden(const std::string& name) {
  std::ifstream in(std::string(DWORK_GOLDEN_DIR) + "/" + name);
  EXPECT_TRUE(in.good()) << name;
  return json::parse(in);
}

json classes_json(unsigned n) {
  json arr = json::array();
  for (const auto& c : enumerate_classes(n)) arr.push_back(to_json(c));
  return arr;
}

std::set<std::string> keys(const json& j) {
  std::set<std::string> out;
  for (auto it = j.begin(); it != j.end(); ++it) out.insert(it.key());
  return out;
}

json without_float_fields(json j) {
  j.erase("seconds");
  j.erase("max_rounding_residual");
  return j;
}

}  // namespace

TEST(Golden, QuinticClassTable) { EXPECT_EQ(classes_json(5), load_golden("classes_n5.json")); }

TEST(Golden, SepticClassTable) { EXPECT_EQ(classes_json(7), load_golden("classes_n7.json")); }

TEST(Golden, QuinticDecomposition) {
  const CharTable t(FieldCtx::build(11));
  EXPECT_EQ(without_float_fields(to_json(decompose(t, 5, 2))), load_golden("decompose_n5_q11_psi2.json"));
}

TEST(Schema, FixedFieldSets) {
  const CharTable t(FieldCtx::build(11));
  EXPECT_EQ(keys(to_json(enumerate_classes(5)[2])),
            (std::set<std::string>{"n", "rep", "kprofile", "nprime", "m", "gamma", "K", "special", "ordered_classes",
                                   "v", "w", "mprime", "d", "hyper", "equation"}));
  // special classes keep the same keys, with nulls
  EXPECT_EQ(keys(to_json(enumerate_classes(5)[0])), keys(to_json(enumerate_classes(5)[2])));
  EXPECT_EQ(keys(to_json(count_dwork(t.field(), 5, 2))),
            (std::set<std::string>{"variety", "p", "f", "r", "q", "affine", "projective", "seconds"}));
  EXPECT_EQ(keys(to_json(identity_suite(t, 1e-9))),
            (std::set<std::string>{"p", "f", "q", "tol", "seed", "checks", "max_residual", "passed"}));
  const std::vector<std::int64_t> counts{1, 1};
  EXPECT_EQ(keys(to_json(zeta_from_counts(11, counts))), (std::set<std::string>{"q", "counts", "coeffs", "integral"}));
  EXPECT_EQ(keys(to_json(CriterionResult{})),
            (std::set<std::string>{"id", "name", "passed", "seconds", "limit_seconds", "detail"}));
  EXPECT_EQ(error_json("PsiZero", "x").dump(), R"({"error":"PsiZero","message":"x"})");
}

TEST(Csv, Tables) {
  const std::string csv = classes_csv(enumerate_classes(5));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "rep,gamma,K,m,mprime,d,special,equation");
  EXPECT_NE(csv.find("\"(0,0,0,1,4)\",20,2,2,0,1,none,y^5 = x^2 (1-x)^3 (1-L*x)^2"), std::string::npos);
  const std::vector<std::int64_t> counts{1, 1, 1};
  EXPECT_EQ(zeta_csv(zeta_from_counts(11, counts)), "r,count,coeff\n0,,1\n1,1,1\n2,1,1\n3,1,1\n");
}
