#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dwork/formulas.hpp"

namespace dwork {

struct AcceptanceOptions {
  unsigned threads = 4;
  std::uint64_t seed = 20240601;
  unsigned trials = 100;
  double tol_round = kDefaultRoundTol;
  double tol_identity = 1e-9;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double seconds = 0;
  double limit_seconds = 0;
  std::string detail;
};

inline constexpr int kCriterionCount = 8;

/// Runs one criterion (1..8). Never throws: failures land in `detail`.
CriterionResult run_criterion(int id, const AcceptanceOptions& opt = {});
/// Runs every criterion in order, reporting each as soon as it finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt = {},
                                            const std::function<void(const CriterionResult&)>& on_result = {});

/// One row of the reference class tables.
struct ExpectedClass {
  Residues rep;
  std::uint64_t gamma;
  unsigned K, m, mprime;
  int d;
};
/// Non-special rows for n = 5 and n = 7 in table order; empty otherwise.
std::vector<ExpectedClass> published_classes(unsigned n);

/// The displayed single-equation forms for n = 5: y^5 = x^2(1-x)^3(1-Lx)^2
/// and y^5 = x^2(1-x)^4(1-Lx).
DisplayEquation published_quintic_A();
DisplayEquation published_quintic_B();

}  // namespace dwork
