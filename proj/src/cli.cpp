#include "ginv/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <random>
#include <string>

#include "ginv/check.hpp"
#include "ginv/classical.hpp"
#include "ginv/errors.hpp"
#include "ginv/matrix_io.hpp"
#include "ginv/solvers.hpp"
#include "ginv/testgen.hpp"
#include "ginv/weighted.hpp"
#include "ginv/wmwgmp.hpp"

namespace ginv {

namespace {

enum Exit { ok = 0, check_failed = 1, usage = 2, domain = 3, verify_failed = 4, capacity = 5 };

struct CommonFlags {
  std::optional<double> tol;
  std::optional<double> rank_tol;
  int precision = 17;
  int m = 1;

  ToleranceConfig config() const {
    ToleranceConfig c;
    if (const char* env = std::getenv("GINV_TOL"); env && *env) {
      char* end = nullptr;
      const double v = std::strtod(env, &end);
      if (end == env || *end != '\0')
        throw ParameterError(std::string("GINV_TOL is not a number: '") + env + "'");
      c.cmp_rel_tol = v;
    }
    if (tol) c.cmp_rel_tol = *tol;
    if (rank_tol) c.rank_rel_tol = *rank_tol;
    c.validate();
    return c;
  }
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--tol", f.tol, "relative comparison tolerance (overrides GINV_TOL)");
  cmd->add_option("--rank-tol", f.rank_tol, "relative rank tolerance");
  cmd->add_option("--precision", f.precision, "significant digits of output entries")
      ->check(CLI::Range(1, 17));
  cmd->add_option("--m", f.m, "order m >= 1")->check(CLI::PositiveNumber);
}

ComplexMatrix weight_or_identity(const std::string& path, const ComplexMatrix& a) {
  if (!path.empty()) return load_matrix(path);
  if (a.rows() != a.cols())
    throw ShapeError("the default identity weight needs a square A; pass --W for a " +
                     std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " A");
  return identity(a.rows());
}

struct InverseArgs {
  CommonFlags common;
  std::string a_path, w_path, kind = "w-mwgmp", route = "DEF";
  bool verify = false;
};

int cmd_inverse(const InverseArgs& args, std::ostream& out, std::ostream& err) {
  const ToleranceConfig tol = args.common.config();
  const int m = args.common.m;
  const RouteId route = parse_route(args.route);
  const std::string& kind = args.kind;
  if (route != RouteId::DEF && kind != "w-mwgmp")
    throw ParameterError("--route applies only to --kind w-mwgmp");
  const bool weighted = kind.rfind("w-", 0) == 0;
  if (!weighted && !args.w_path.empty())
    throw ParameterError("--W applies only to the weighted kinds (w-*)");

  const ComplexMatrix a = load_matrix(args.a_path);
  ComplexMatrix x;
  bool verified = true;
  double mismatch = 0.0;

  if (!weighted) {
    if (kind == "mp") {
      x = moore_penrose(a, tol);
      mismatch = std::max(relative_difference(x * a * x, x), relative_difference(a * x * a, a));
    } else if (kind == "drazin") {
      x = drazin(a, tol).inverse;
    } else if (kind == "group") {
      x = group_inverse(a, tol).inverse;
    } else if (kind == "core-ep") {
      x = core_ep(a, tol).inverse;
    } else if (kind == "dmp") {
      x = dmp(a, tol).inverse;
    } else if (kind == "mwg") {
      x = m_weak_group(a, m, tol).inverse;
    } else if (kind == "mwgmp") {
      x = m_weak_group_mp(a, m, tol).inverse;
    } else {
      throw ParameterError("unknown --kind '" + kind + "'");
    }
    if (args.verify && kind == "mwgmp") {
      // Same object through the weighted path with W = I.
      const WeightedPair p = make_weighted_pair(a, identity(a.rows()), tol);
      mismatch = relative_difference(x, wmwgmp(p, m).inverse);
    } else if (args.verify && kind != "mp") {
      mismatch = relative_difference(x * a * x, x);
    }
  } else {
    const WeightedPair p = make_weighted_pair(a, weight_or_identity(args.w_path, a), tol);
    const ComplexMatrix wa_w = p.w() * p.a() * p.w();
    if (kind == "w-drazin") {
      x = w_drazin(p);
    } else if (kind == "w-core-ep") {
      x = w_core_ep(p);
    } else if (kind == "w-mwg") {
      x = w_m_weak_group(p, m);
    } else if (kind == "w-mwgmp") {
      x = wmwgmp_route(p, m, route).inverse;
    } else {
      throw ParameterError("unknown --kind '" + kind + "'");
    }
    if (args.verify) {
      if (kind == "w-mwgmp") {
        mismatch = relative_difference(x, wmwgmp(p, m).inverse);
      } else {
        // Weighted outer-inverse identity X (W A W) X = X.
        mismatch = relative_difference(x * wa_w * x, x);
      }
    }
  }
  if (args.verify) verified = mismatch <= tol.cmp_rel_tol;

  write_matrix(out, x, args.common.precision);
  if (args.verify && !verified) {
    err << "ginv: verification failed: relative mismatch " << mismatch << " exceeds "
        << tol.cmp_rel_tol << '\n';
    return verify_failed;
  }
  return ok;
}

struct SolveArgs {
  CommonFlags common;
  std::string a_path, w_path, b_path, z_path, problem, cramer_rhs = "proof";
  bool cramer = false;
  bool report = false;
};

int cmd_solve(const SolveArgs& args, std::ostream& out) {
  const ToleranceConfig tol = args.common.config();
  const int m = args.common.m;
  if (args.cramer && args.problem == "min-wg")
    throw ParameterError("--cramer applies only to --problem equation or min-wmwgmp");
  if (!args.z_path.empty() && args.problem != "equation")
    throw ParameterError("--Z applies only to --problem equation");
  if (args.cramer && !args.z_path.empty())
    throw ParameterError("--cramer returns the Z = 0 solution; drop --Z");

  const ComplexMatrix a = load_matrix(args.a_path);
  const WeightedPair p = make_weighted_pair(a, weight_or_identity(args.w_path, a), tol);
  const ComplexMatrix b = load_matrix(args.b_path);

  CramerOptions copt;
  copt.rhs = args.cramer_rhs == "statement" ? CramerRhs::unbordered : CramerRhs::bordered;

  ComplexMatrix x;
  std::vector<std::pair<std::string, double>> lines;
  if (args.problem == "min-wg") {
    const ConstrainedSolveResult r = solve_constrained_wg(p, m, b);
    x = r.x;
    lines = {{"objective", r.residual_frobenius}, {"constraint_residual", r.constraint_residual}};
  } else if (args.problem == "min-wmwgmp") {
    if (args.cramer) {
      x = cramer_solve(p, m, b, copt);
    } else {
      x = solve_constrained_wmwgmp(p, m, b).x;
    }
    lines = {{"objective", objective_wmwgmp(p, m, b, x)},
             {"constraint_residual",
              distance_from_subspace(x, power_range_basis(p.wa(), p.k(), tol,
                                                          p.product_scale()))}};
  } else if (args.problem == "equation") {
    if (args.cramer) {
      x = cramer_solve(p, m, b, copt);
    } else {
      const ComplexMatrix z = args.z_path.empty()
                                  ? ComplexMatrix::Zero(p.cols(), b.cols())
                                  : load_matrix(args.z_path);
      x = general_solution(p, m, b, z);
    }
    lines = {{"equation_residual", equation_residual(p, m, b, x)},
             {"constraint_residual",
              distance_from_subspace(x, power_range_basis(p.wa(), p.k(), tol,
                                                          p.product_scale()))}};
  } else {
    throw ParameterError("unknown --problem '" + args.problem + "'");
  }

  write_matrix(out, x, args.common.precision);
  if (args.report) {
    for (const auto& [name, value] : lines) {
      out << "# " << name << ' ' << format_entry(value, 6, false) << '\n';
    }
  }
  return ok;
}

struct CheckArgs {
  std::uint64_t seeds = 20;
  Index max_size = 8;
  int k_max = 3;
  std::optional<double> tol;
  std::optional<double> rank_tol;
  std::string bundle_dir;
};

int cmd_check(const CheckArgs& args, std::ostream& out, std::ostream& err) {
  check::CheckOptions opt;
  opt.seeds = args.seeds;
  opt.max_size = args.max_size;
  opt.k_max = args.k_max;
  opt.bundle_dir = args.bundle_dir;
  if (args.rank_tol) opt.numeric.rank_rel_tol = *args.rank_tol;
  opt.numeric.validate();
  if (args.tol) {
    if (!(*args.tol > 0.0)) throw ParameterError("--tol must be positive");
    opt.tol = args.tol;
  } else if (const char* env = std::getenv("GINV_TOL"); env && *env) {
    CommonFlags f;
    opt.tol = f.config().cmp_rel_tol;
  }
  if (args.seeds == 0) {
    err << "ginv: warning: --seeds 0 checks nothing; passing vacuously\n";
    return ok;
  }
  const check::CheckReport report = check::run_check(opt, out);
  if (!report.ok()) {
    err << "ginv: check failed";
    if (report.bundle_path) err << "; reproduction bundle in " << *report.bundle_path;
    err << '\n';
    return check_failed;
  }
  return ok;
}

struct GenerateArgs {
  testgen::PairSpec spec;
  std::string a_path, w_path, b_path;
  Index rhs_cols = 1;
  int precision = 17;
};

int cmd_generate(const GenerateArgs& args, std::ostream& out) {
  const testgen::GeneratedPair g = testgen::generate_pair(args.spec);
  save_matrix(args.a_path, g.pair.a(), args.precision);
  save_matrix(args.w_path, g.pair.w(), args.precision);
  if (!args.b_path.empty()) {
    std::mt19937_64 rng(args.spec.seed ^ 0xB0B0ULL);
    save_matrix(args.b_path, testgen::random_gaussian(args.spec.q, args.rhs_cols, rng),
                args.precision);
  }
  out << "# generated q " << g.pair.rows() << " n " << g.pair.cols() << " t " << args.spec.t
      << " k " << g.pair.k() << '\n';
  return ok;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized inverses and the W-weighted m-weak group MP inverse", "ginv"};
  app.require_subcommand(1);

  InverseArgs inv;
  CLI::App* inverse = app.add_subcommand("inverse", "compute a generalized inverse");
  inverse->add_option("--A", inv.a_path, "matrix file for A")->required();
  inverse->add_option("--W", inv.w_path, "matrix file for W (default: identity)");
  inverse->add_option("--kind", inv.kind, "which inverse")
      ->check(CLI::IsMember({"mp", "drazin", "group", "core-ep", "dmp", "mwg", "mwgmp",
                             "w-drazin", "w-core-ep", "w-mwg", "w-mwgmp"}));
  inverse->add_option("--route", inv.route, "DEF or R1..R9 (w-mwgmp only)");
  inverse->add_flag("--verify", inv.verify, "recompute through an independent formula");
  add_common(inverse, inv.common);

  SolveArgs sol;
  CLI::App* solve = app.add_subcommand("solve", "constrained problems and the matrix equation");
  solve->add_option("--A", sol.a_path, "matrix file for A")->required();
  solve->add_option("--W", sol.w_path, "matrix file for W (default: identity)");
  solve->add_option("--B", sol.b_path, "right-hand side")->required();
  solve->add_option("--Z", sol.z_path, "free parameter of the equation problem (default 0)");
  solve->add_option("--problem", sol.problem, "min-wg, min-wmwgmp or equation")
      ->required()
      ->check(CLI::IsMember({"min-wg", "min-wmwgmp", "equation"}));
  solve->add_flag("--cramer", sol.cramer, "solve by Cramer's rule on the bordered system");
  solve->add_option("--cramer-rhs", sol.cramer_rhs, "proof (default) or statement")
      ->check(CLI::IsMember({"proof", "statement"}));
  solve->add_flag("--report", sol.report, "append residuals as comment lines");
  add_common(solve, sol.common);

  CheckArgs chk;
  CLI::App* check = app.add_subcommand("check", "run the property suite on generated pairs");
  check->add_option("--seeds", chk.seeds, "number of generated instances");
  check->add_option("--max-size", chk.max_size, "largest q and n")->check(CLI::PositiveNumber);
  check->add_option("--k-max", chk.k_max, "largest index k")->check(CLI::PositiveNumber);
  check->add_option("--tol", chk.tol, "replace every property threshold");
  check->add_option("--rank-tol", chk.rank_tol, "relative rank tolerance");
  check->add_option("--bundle-dir", chk.bundle_dir, "where to write a failing instance");

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand("generate", "write a generated (A, W) pair");
  generate->add_option("--q", gen.spec.q, "rows of A")->required();
  generate->add_option("--n", gen.spec.n, "columns of A")->required();
  generate->add_option("--t", gen.spec.t, "core size");
  generate->add_option("--k", gen.spec.target_k, "index k");
  generate->add_option("--seed", gen.spec.seed, "random seed");
  generate->add_option("--condition-cap", gen.spec.condition_cap, "bound on cond(A1), cond(W1)");
  generate->add_option("--A", gen.a_path, "output file for A")->required();
  generate->add_option("--W", gen.w_path, "output file for W")->required();
  generate->add_option("--B", gen.b_path, "optional output file for a random q x p B");
  generate->add_option("--p", gen.rhs_cols, "columns of B")->check(CLI::PositiveNumber);
  generate->add_option("--precision", gen.precision, "significant digits")
      ->check(CLI::Range(1, 17));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "ginv: " << e.what() << '\n';
    return usage;
  }

  try {
    if (*inverse) return cmd_inverse(inv, out, err);
    if (*solve) return cmd_solve(sol, out);
    if (*check) return cmd_check(chk, out, err);
    return cmd_generate(gen, out);
  } catch (const CapacityError& e) {
    err << "ginv: " << e.what() << '\n';
    return capacity;
  } catch (const InvalidInputError& e) {
    err << "ginv: " << e.what() << '\n';
    return usage;
  } catch (const ShapeError& e) {
    err << "ginv: " << e.what() << '\n';
    return usage;
  } catch (const ParameterError& e) {
    err << "ginv: " << e.what() << '\n';
    return usage;
  } catch (const Error& e) {
    err << "ginv: " << e.what() << '\n';
    return domain;
  } catch (const std::exception& e) {
    err << "ginv: " << e.what() << '\n';
    return usage;
  }
}

}  // namespace ginv
