#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "commands.hpp"
#include "dwork/report.hpp"

using namespace dwork;
using namespace dwork::cli;

namespace {

void add_field_opts(CLI::App* sub, std::uint32_t& p, unsigned& f) {
  sub->add_option("--p", p, "characteristic")->required();
  sub->add_option("--f", f, "degree over F_p")->check(CLI::PositiveNumber);
}

CLI::Option* add_json_flag(CLI::App* sub, bool& json) { return sub->add_flag("--json", json, "same as --output json"); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Point counts and character-sum formulas for Dwork hypersurfaces"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  cfg.threads = default_threads();
  std::string log_level = "warn";
  const std::map<std::string, Output> outputs{{"human", Output::human}, {"json", Output::json}, {"csv", Output::csv}};
  const std::map<std::string, Kernel> kernels{{"auto", Kernel::automatic},
                                              {"naive", Kernel::naive},
                                              {"fibered", Kernel::fibered},
                                              {"recursive", Kernel::recursive}};
  app.add_option("--tol-round", cfg.tol_round, "tolerance for rounding character sums to integers")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol-identity", cfg.tol_identity, "tolerance for identity residuals")->check(CLI::PositiveNumber);
  app.add_option("--threads", cfg.threads, "worker threads for counting (default: DWORK_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  app.add_option("--table-cap", cfg.table_cap, "largest field size with full tables")->check(CLI::PositiveNumber);
  app.add_option("--output", cfg.output, "human, json or csv")->transform(CLI::CheckedTransformer(outputs));
  app.add_option("--seed", cfg.seed, "seed for randomized checks");
  app.add_option("--kernel", cfg.kernel, "counting kernel: auto, naive, fibered, recursive")
      ->transform(CLI::CheckedTransformer(kernels));
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error, off");

  bool json = false;

  std::uint32_t p = 0;
  unsigned f = 1, n = 5;
  std::string psi, cls;

  auto* field = app.add_subcommand("field", "finite field tables");
  field->require_subcommand(1);
  auto* field_info_cmd = field->add_subcommand("info", "generator and modulus of F_{p^f}");
  std::vector<std::uint32_t> modulus;
  add_field_opts(field_info_cmd, p, f);
  field_info_cmd->add_option("--modulus", modulus, "monic modulus, coefficients low to high")->delimiter(',');
  add_json_flag(field_info_cmd, json);

  auto* chr = app.add_subcommand("char", "character sums");
  chr->require_subcommand(1);
  auto* check = chr->add_subcommand("check", "evaluate every character-sum identity");
  add_field_opts(check, p, f);
  check->add_option("--tol", cfg.tol_identity, "same as --tol-identity")->check(CLI::PositiveNumber);
  add_json_flag(check, json);

  auto* cls_cmd = app.add_subcommand("classes", "orbit classes of zero-sum tuples");
  cls_cmd->add_option("--n", n, "odd prime n")->required();
  add_json_flag(cls_cmd, json);

  auto* cnt = app.add_subcommand("count", "brute-force point counts");
  cnt->require_subcommand(1);
  CountArgs ca;
  for (const char* v : {"dwork", "mirror", "hyper"}) {
    auto* sub = cnt->add_subcommand(v, std::string("count the ") + v + " variety");
    add_field_opts(sub, ca.p, ca.f);
    sub->add_option("--r", ca.r, "count over the degree-r extension")->check(CLI::PositiveNumber);
    sub->add_option("--n", ca.n, "exponent n")->required();
    sub->add_option("--psi", ca.psi, "psi in F_{p^f}")->required();
    if (std::string(v) == "hyper") sub->add_option("--class", ca.cls, "class representative, e.g. 0,0,0,1,4")->required();
    add_json_flag(sub, json);
    sub->callback([&ca, v] { ca.variety = v; });
  }

  auto* dec = app.add_subcommand("decompose", "class-by-class decomposition of |X_psi|");
  add_field_opts(dec, p, f);
  dec->add_option("--n", n, "exponent n")->required();
  dec->add_option("--psi", psi, "psi in F_{p^f}")->required();
  add_json_flag(dec, json);

  auto* ex = app.add_subcommand("examples", "the n = 5 and n = 7 tables with formula and count columns");
  ex->add_option("--n", n, "5 or 7")->required()->check(CLI::IsMember({5u, 7u}));
  ex->add_option("--p", p, "prime with p = 1 mod n (default 11 or 29)");
  ex->add_option("--psi", psi, "psi (default 2 or 3)");
  add_json_flag(ex, json);

  auto* zt = app.add_subcommand("zeta", "truncated zeta series from point counts");
  ZetaArgs za;
  zt->add_option("--q", za.q, "field size for --counts");
  zt->add_option("--counts", za.counts, "N_1,...,N_R or a file with one count per line");
  zt->add_option("--strip-n", za.strip_n, "multiply by (1-t)(1-qt)...(1-q^{n-2}t)");
  zt->add_option("--p", za.p, "count X_psi over F_{p^f}, ..., F_{p^{fR}}");
  zt->add_option("--f", za.f, "degree of the base field")->check(CLI::PositiveNumber);
  zt->add_option("--n", za.n, "exponent n when counting");
  zt->add_option("--psi", za.psi, "psi when counting");
  zt->add_option("--R", za.R, "number of counts to take");
  zt->add_flag("--deep", za.deep, "allow R > 2 (large extension fields)");
  add_json_flag(zt, json);

  auto* st = app.add_subcommand("selftest", "run the acceptance criteria");
  std::vector<int> criteria;
  unsigned trials = 100;
  st->add_option("--criterion", criteria, "run only these criteria (1-8)")->check(CLI::Range(1, 8))->delimiter(',');
  st->add_option("--trials", trials, "trials per property suite")->check(CLI::PositiveNumber);
  add_json_flag(st, json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (json) cfg.output = Output::json;

  auto logger = spdlog::stderr_color_mt("dwork");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::from_str(log_level));
  spdlog::info("threads={} tol_round={} tol_identity={} table_cap={} seed={}", cfg.threads, cfg.tol_round,
               cfg.tol_identity, cfg.table_cap, cfg.seed);

  try {
    if (*field_info_cmd) return field_info(cfg, p, f, modulus, std::cout);
    if (*check) return char_check(cfg, p, f, std::cout);
    if (*cls_cmd) return classes(cfg, n, std::cout);
    if (*cnt) return count(cfg, ca, std::cout);
    if (*dec) return decompose(cfg, p, f, n, psi, std::cout);
    if (*ex) return examples(cfg, n, p, psi, std::cout);
    if (*zt) return zeta(cfg, za, std::cout);
    if (*st) return selftest(cfg, criteria, trials, std::cout);
  } catch (const Error& e) {
    std::cout << error_json(errc_name(e.code()), e.what()).dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cout << error_json("InternalError", e.what()).dump() << '\n';
    return 1;
  }
  return 2;
}
