#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dwork/ffield.hpp"

namespace dwork {

/// Exponent data of the affine variety
///   y^n = x_1^{a_1}...x_k^{a_k} (1-x_1)^{b_1}...(1-x_{l-1})^{b_{l-1}} (1-x_l-...-x_k)^{b_l},
///   lambda x_1...x_l = 1.
/// Exponents are stored as representatives in [1, n].
struct HyperShape {
  unsigned n = 0;
  unsigned l = 0;
  unsigned k = 0;
  std::vector<int> alphas;  // size k
  std::vector<int> betas;   // size l

  /// Residues (b_1..b_l, a_{l+1}..a_k) pair off into opposite classes mod n
  /// with none divisible by n.
  bool complete_pairing() const;
  /// Dimension of the variety, k - 1.
  unsigned dimension() const noexcept { return k - 1; }
  friend bool operator==(const HyperShape&, const HyperShape&) = default;
};

/// Throws InvalidArgument unless k >= l >= 2 and every exponent is in [1, n].
void validate(const HyperShape& h);

struct HyperVariety {
  HyperShape shape;
  Elem lambda = 0;
  std::optional<std::vector<int>> source_class;
};

/// Single-equation form y^n = monomial * product of factors, in variables
/// x_1..x_nvars (1-based in `vars`). Each factor is either 1 - (sum of vars)
/// or, when `lambda` is set, 1 - lambda * (product of vars).
struct DisplayEquation {
  struct Factor {
    std::vector<unsigned> vars;
    bool lambda = false;
    int exponent = 0;
    friend bool operator==(const Factor&, const Factor&) = default;
  };
  unsigned n = 0;
  unsigned nvars = 0;
  std::vector<int> monomial;  // exponent of x_i, size nvars
  std::vector<Factor> factors;
  friend bool operator==(const DisplayEquation&, const DisplayEquation&) = default;
};

/// Eliminates one variable through the constraint when the exponents allow
/// it: x_l when k == l and a_l + b_l = 0 mod n, otherwise x_1 when
/// a_1 + b_1 = 0 mod n. The affine count of the result is q^{k-1} + N_lambda.
std::optional<DisplayEquation> display_form(const HyperShape& h);
/// Inverse of display_form: rebuilds a shape whose count differs from the
/// display count by the same main term. Throws InvalidArgument when the
/// equation is not of one of the two reducible layouts.
HyperShape shape_from_display(const DisplayEquation& eq);

/// "y^5 = x^2(1-x)^3(1-L x)^2" style rendering; `lambda_name` replaces L.
std::string to_string(const DisplayEquation& eq, const std::string& lambda_name = "L");
/// Two-line system rendering of a shape.
std::string to_string(const HyperShape& h, const std::string& lambda_name = "L");

}  // namespace dwork
