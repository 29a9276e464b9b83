#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dwork/hyper.hpp"

namespace dwork {

/// Residues mod n, each in [0, n).
using Residues = std::vector<int>;

inline constexpr unsigned kMaxClassN = 13;

enum class SpecialClass { none, zero, full };  // <0> and <(0,1,...,n-1)>

/// A (v, w) arrangement with the first m' positions paired:
/// w_{2i-1} - v_{2i-1} = -(w_{2i} - v_{2i}) mod n for i <= m'/2.
struct Pairing {
  Residues v;
  Residues w;
  unsigned mprime = 0;
  friend bool operator==(const Pairing&, const Pairing&) = default;
};

struct ClassRecord {
  unsigned n = 0;
  Residues rep;                      // canonical representative, sorted
  std::vector<unsigned> kprofile;    // k(b) for b in [0, n)
  unsigned nprime = 0;
  unsigned m = 0;
  std::uint64_t gamma = 0;
  unsigned K = 0;
  SpecialClass special = SpecialClass::none;
  /// Number of Z/nZ-classes of ordered tuples in the orbit that carry the
  /// class term: gamma for ordinary classes, (n-1)! for <(0,...,n-1)>.
  std::uint64_t ordered_classes = 0;
  std::optional<Pairing> pairing;    // absent for the special classes
  std::optional<int> d;              // 2m - m' - 3
  std::optional<HyperShape> hyper;
  std::optional<DisplayEquation> display;
};

std::vector<unsigned> kprofile_of(std::span<const int> s, unsigned n);
/// n! / prod k(b)!.
std::uint64_t gamma_of(std::span<const unsigned> kprofile);
/// Units k with k*s equal, up to a shift and a permutation, to s.
unsigned K_of(std::span<const int> s, unsigned n);
/// Lexicographically smallest sorted tuple in the orbit of s under shifts,
/// unit multiplication and permutations.
Residues canonical_rep(std::span<const int> s, unsigned n);

/// v: residues with k(b) = 0; w: residues with k(b) >= 2, repeated k(b) - 1 times.
/// Both ascending.
std::pair<Residues, Residues> vw_sequences(std::span<const unsigned> kprofile);

/// Largest number of paired positions, capped at m - 2, over every way of
/// matching the entries of w to those of v.
unsigned max_pairing_size(std::span<const int> v, std::span<const int> w, unsigned n);

/// Arrangement realising max_pairing_size. Tie-break: arrangements whose
/// hypergeometric equation reduces to a single equation first (w_m = 0 when
/// m' = m - 2, w_1 = 0 otherwise), then the lexicographically smallest
/// interleaving (v_1, w_1, v_2, w_2, ...). Throws PairingBoundViolated if
/// m' < 2m - n + 1.
Pairing max_pairing(std::span<const int> v, std::span<const int> w, unsigned n);

/// Up to `limit` distinct arrangements with the maximal m' (no tie-break).
std::vector<Pairing> maximal_pairings(std::span<const int> v, std::span<const int> w, unsigned n,
                                      std::size_t limit);

/// Exponents of the hypergeometric variety attached to a pairing, lifted to [1, n].
HyperShape hyper_shape_from_pairing(const Pairing& p, unsigned n);

/// Builds the full record for a zero-sum tuple (any representative).
ClassRecord make_class_record(std::span<const int> s, unsigned n);

/// One record per orbit, specials first, then by (d, m, gamma) and descending rep.
std::vector<ClassRecord> enumerate_classes(unsigned n);

/// Number of Z/nZ-classes covered by all records: 1 + (n-1)! + sum (n-1)/K * gamma.
std::uint64_t partition_total(std::span<const ClassRecord> classes);

}  // namespace dwork
