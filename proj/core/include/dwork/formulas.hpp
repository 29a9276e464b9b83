#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "dwork/charsums.hpp"
#include "dwork/counting.hpp"
#include "dwork/hyper.hpp"
#include "dwork/orbits.hpp"

namespace dwork {

inline constexpr double kDefaultRoundTol = 1e-6;
inline constexpr double kDefaultFormTol = 1e-9;

struct FormulaOptions {
  double tol_round = kDefaultRoundTol;
  double tol_form = kDefaultFormTol;  // relative agreement of two evaluations of one quantity
};

/// beta_{s, chi, eta} with the bookkeeping of both evaluations.
struct BetaEval {
  Residues s;
  std::uint32_t chi_exponent = 0;
  std::uint32_t eta_exponent = 0;
  CycValue value;         // quotient over all n shifts of eta
  CycValue value_vw;      // reduced v/w quotient
  unsigned z = 0;         // trivial characters among chi^{s_i} eta
  unsigned delta = 0;
  unsigned nu = 0;        // trivial characters among chi^{w_i} eta
  double form_residual = 0;
};

/// Evaluates beta both ways. Throws OrderMismatch unless chi has order n =
/// |s|, FormMismatch when the two forms disagree or z + delta != 1 + nu.
BetaEval beta(const CharTable& t, std::span<const int> s, MultChar chi, MultChar eta,
              const FormulaOptions& opt = {});

struct ClassTerm {
  CycValue n_bar_chi;         // N_{[s],chi} for the representative
  CycValue orbit_sum;         // sum over k = 1..n-1 of N_{[ks],chi}
  std::int64_t orbit_sum_int = 0;
  std::int64_t value = 0;     // N_<s> = ordered_classes * orbit_sum / K
  double max_residual = 0;    // worst rounding / form residual met
};

/// N_{[s],chi} and N_<s> for one class record and lambda = 1/psi^n.
ClassTerm N_class(const CharTable& t, const ClassRecord& rec, MultChar chi, Elem psi,
                  const FormulaOptions& opt = {});

struct DworkFormula {
  std::int64_t total = 0;           // sum of class terms plus 1 + q + ... + q^{n-2}
  // direct evaluation of the Gauss-sum count; empty when long double cannot certify the integer
  std::optional<std::int64_t> gauss_sum_total;
  std::vector<std::int64_t> class_terms;  // aligned with enumerate_classes(n)
  double max_residual = 0;
};

/// Projective count of x_1^n + ... + x_n^n = n psi x_1...x_n from character
/// sums, by the class decomposition and independently from the sum over
/// Z/nZ-classes of zero-sum tuples. Throws FormMismatch if the two disagree.
DworkFormula dwork_count_formula(const CharTable& t, unsigned n, Elem psi,
                                 const FormulaOptions& opt = {});
/// Chooses chi^c with c coprime to n as the order-n character.
DworkFormula dwork_count_formula(const CharTable& t, unsigned n, Elem psi, unsigned chi_power,
                                 const FormulaOptions& opt = {});

/// N_{lambda, chi, eta} for one pair of characters.
struct HyperTerm {
  CycValue jacobi;                 // product of Jacobi sums
  std::optional<CycValue> paired;  // q^{k/2 - nu} quotient, complete pairing only
  unsigned nu = 0;
};
HyperTerm hyper_term(const CharTable& t, const HyperShape& h, MultChar chi, MultChar eta);

struct HyperFormula {
  std::vector<CycValue> n_chi;  // N_{lambda, chi^c} for c = 1..n-1
  CycValue n_lambda_value;
  std::int64_t n_lambda = 0;
  std::int64_t main_term = 0;   // (q-1)^{l-1} q^{k-l}
  std::int64_t predicted = 0;
  double max_residual = 0;
};

/// Affine count predicted by character sums. Throws PairingInvariantViolated
/// when the complete-pairing form disagrees with the Jacobi-sum form.
HyperFormula N_hyper_formula(const CharTable& t, const HyperVariety& h, const FormulaOptions& opt = {});

/// lambda = 1/psi^n.
Elem lambda_of(const FieldCtx& F, unsigned n, Elem psi);

/// Variety attached to a non-special class (the record's chosen pairing).
HyperVariety build_hyper_from_class(const FieldCtx& F, const ClassRecord& rec, Elem psi);
/// Same, for an explicit pairing of the record's v and w.
HyperVariety build_hyper_from_pairing(const FieldCtx& F, const ClassRecord& rec, const Pairing& p,
                                      Elem psi);

struct LinkCheck {
  std::int64_t n_class = 0;
  std::int64_t n_lambda = 0;
  std::uint64_t multiplier = 0;  // gamma / K
  int q_exponent = 0;            // (n - d - 2) / 2
  std::int64_t rhs = 0;          // multiplier * q^e * N_lambda
  std::int64_t residual = 0;
  double max_residual = 0;
};

/// Compares N_<s> with (gamma/K) q^{(n-d-2)/2} N_lambda. Throws SpecialClass
/// for the two special classes, NonIntegralMultiplicity if K does not divide gamma.
LinkCheck link_check(const CharTable& t, const ClassRecord& rec, Elem psi, const FormulaOptions& opt = {});

struct DecompositionRow {
  ClassRecord cls;
  std::uint64_t multiplier = 0;
  int q_exponent = 0;
  std::int64_t n_class = 0;
  std::int64_t n_lambda_formula = 0;
  std::int64_t n_lambda_count = 0;  // count_hyper minus the main term
  std::int64_t link_residual = 0;
  HyperVariety hyper;
};

struct DecompositionReport {
  unsigned n = 0;
  std::uint32_t p = 0;
  unsigned f = 0;
  std::uint64_t q = 0;
  Elem psi = 0;
  Elem lambda = 0;
  bool singular = false;               // psi^n = 1
  std::int64_t trivial_part = 0;       // 1 + q + ... + q^{n-2}
  std::int64_t n_mirror_formula = 0;   // N_<0>
  std::int64_t n_mirror_count = 0;     // count_mirror minus the trivial part
  std::int64_t singular_term = 0;      // N_<(0,1,...,n-1)>
  std::vector<DecompositionRow> rows;
  std::map<int, std::int64_t> n_d;     // d -> sum of multiplier * N_lambda
  std::int64_t formula_total = 0;
  std::optional<std::int64_t> gauss_sum_total;
  std::int64_t assembled_total = 0;    // trivial + mirror + singular + sum q^e N_d
  std::int64_t brute_force_total = 0;
  double max_rounding_residual = 0;
  double seconds = 0;

  bool consistent() const;
};

/// Full decomposition of the count, with every term checked against brute force.
DecompositionReport decompose(const CharTable& t, unsigned n, Elem psi, const CountOptions& copt = {},
                              const FormulaOptions& opt = {});
/// Throws CountInvariantViolated naming the first failed comparison.
void require_consistent(const DecompositionReport& r);

}  // namespace dwork
