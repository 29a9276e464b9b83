#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "dwork/ffield.hpp"
#include "dwork/hyper.hpp"

namespace dwork {

enum class Kernel {
  automatic,  // recursive when its tables fit, fibered otherwise
  naive,      // q^n equation evaluations; tiny fields only
  fibered,    // q^2 fibre table, q^{n-1} lookups
  recursive,  // n levels of q^2 tables, n q^3 work
};

struct CountOptions {
  unsigned threads = 1;
  Kernel kernel = Kernel::automatic;
};

struct CountResult {
  std::string variety;
  std::uint32_t p = 0;
  unsigned f = 0;          // degree of the counting field over F_p
  unsigned r = 1;          // degree over the field holding the parameter
  std::uint64_t q = 0;     // size of the counting field
  std::uint64_t affine = 0;
  std::optional<std::uint64_t> projective;
  double seconds = 0;
};

/// Projective count of x_1^n + ... + x_n^n - n psi x_1...x_n = 0 over `field`
/// (psi already an element of `field`).
CountResult count_dwork(const FieldCtx& field, unsigned n, Elem psi, const CountOptions& opt = {});
/// Projective count of (y_1 + ... + y_n)^n = (n psi)^n y_1...y_n.
CountResult count_mirror(const FieldCtx& field, unsigned n, Elem psi, const CountOptions& opt = {});
/// Affine count of {y^n = Q(x), lambda x_1...x_l = 1} in A^{k+1}.
CountResult count_hyper(const FieldCtx& field, const HyperVariety& h, const CountOptions& opt = {});
/// Affine count of a single-equation display form in A^{nvars+1}.
CountResult count_display(const FieldCtx& field, const DisplayEquation& eq, Elem lambda,
                          const CountOptions& opt = {});

/// Counts over F_{q^r} with psi given in `base` and embedded.
CountResult count_dwork_over(const FieldCtx& base, unsigned r, unsigned n, Elem psi,
                             const CountOptions& opt = {},
                             std::uint64_t table_cap = kDefaultTableCap);
CountResult count_mirror_over(const FieldCtx& base, unsigned r, unsigned n, Elem psi,
                              const CountOptions& opt = {},
                              std::uint64_t table_cap = kDefaultTableCap);

/// Worker count from DWORK_THREADS, falling back to hardware concurrency.
unsigned default_threads();

}  // namespace dwork
