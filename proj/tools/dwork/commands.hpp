#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dwork/counting.hpp"
#include "dwork/ffield.hpp"

namespace dwork::cli {

enum class Output { human, json, csv };

struct RunConfig {
  double tol_round = 1e-6;
  double tol_identity = 1e-9;
  unsigned threads = 1;
  std::uint64_t table_cap = kDefaultTableCap;
  Output output = Output::human;
  std::uint64_t seed = 20240601;
  Kernel kernel = Kernel::automatic;
};

/// psi as typed on the command line: an integer (reduced mod p), or for f > 1
/// base-p digits, least significant first, separated by commas.
Elem parse_psi(const FieldCtx& F, const std::string& text);
/// "1,2,3", whitespace tolerant; a path to a file with one integer per line
/// is read instead when it exists.
std::vector<std::int64_t> parse_int_list(const std::string& text);

int field_info(const RunConfig& cfg, std::uint32_t p, unsigned f, const std::vector<std::uint32_t>& modulus,
               std::ostream& out);
int char_check(const RunConfig& cfg, std::uint32_t p, unsigned f, std::ostream& out);
int classes(const RunConfig& cfg, unsigned n, std::ostream& out);

struct CountArgs {
  std::string variety;  // dwork, mirror or hyper
  std::uint32_t p = 0;
  unsigned f = 1;
  unsigned r = 1;
  unsigned n = 5;
  std::string psi;
  std::string cls;  // representative tuple, hyper only
};
int count(const RunConfig& cfg, const CountArgs& a, std::ostream& out);

int decompose(const RunConfig& cfg, std::uint32_t p, unsigned f, unsigned n, const std::string& psi,
              std::ostream& out);
int examples(const RunConfig& cfg, unsigned n, std::uint32_t p, const std::string& psi, std::ostream& out);

struct ZetaArgs {
  std::string q;       // with --counts
  std::string counts;
  std::optional<unsigned> strip_n;
  // Counting mode: counts of X_psi over F_{p^f}, ..., F_{p^{fR}}.
  std::uint32_t p = 0;
  unsigned f = 1;
  unsigned n = 5;
  std::string psi;
  unsigned R = 0;
  bool deep = false;
};
int zeta(const RunConfig& cfg, const ZetaArgs& a, std::ostream& out);

int selftest(const RunConfig& cfg, const std::vector<int>& criteria, unsigned trials, std::ostream& out);

}  // namespace dwork::cli
