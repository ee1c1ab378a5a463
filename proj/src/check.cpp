#include "ginv/check.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "ginv/classical.hpp"
#include "ginv/errors.hpp"
#include "ginv/matrix_io.hpp"
#include "ginv/solvers.hpp"
#include "ginv/weighted.hpp"
#include "ginv/wmwgmp.hpp"

namespace ginv::check {

PropertyTolerances PropertyTolerances::uniform(double t) {
  return {t, t, t, t, t, t, t, t, t, t, t, t};
}

InstanceSpec draw_instance(std::uint64_t index, Index max_size, int k_max) {
  if (max_size < 1) throw ParameterError("max size must be positive");
  if (k_max < 1) throw ParameterError("k max must be positive");
  std::mt19937_64 rng(0x9E3779B97F4A7C15ULL ^ (index * 0xD1B54A32D192ED03ULL));
  const Index lo = std::min<Index>(3, max_size);
  std::uniform_int_distribution<Index> size(lo, max_size);
  InstanceSpec spec;
  spec.pair.q = size(rng);
  spec.pair.n = size(rng);
  spec.pair.t = std::uniform_int_distribution<Index>(0, std::min(spec.pair.q, spec.pair.n))(rng);
  const int k_top =
      std::min(k_max, testgen::max_feasible_k(spec.pair.q, spec.pair.n, spec.pair.t));
  spec.pair.target_k = std::uniform_int_distribution<int>(1, k_top)(rng);
  spec.pair.seed = index;
  const int k = spec.pair.target_k;
  const int ms[] = {1, 2, k, k + 2};
  spec.m = ms[std::uniform_int_distribution<int>(0, 3)(rng)];
  spec.rhs_cols = std::uniform_int_distribution<int>(0, 1)(rng) == 0 ? 1 : 3;
  return spec;
}

namespace {

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

ComplexMatrix unit_direction(Index rows, Index cols, std::mt19937_64& rng) {
  ComplexMatrix d = testgen::random_gaussian(rows, cols, rng);
  const double norm = frobenius(d);
  return norm > 0.0 ? ComplexMatrix(d / norm) : d;
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(3);
  s << v;
  return s.str();
}

class Recorder {
 public:
  explicit Recorder(std::vector<PropertyOutcome>& out) : out_(out) {}

  // Runs `body`, which returns a residual, and records residual <= limit.
  void measure(const std::string& name, double limit, const std::function<double()>& body) {
    try {
      const double r = body();
      out_.push_back({name, r <= limit, "residual " + fmt(r) + " (limit " + fmt(limit) + ")"});
    } catch (const std::exception& e) {
      out_.push_back({name, false, std::string("error: ") + e.what()});
    }
  }

  void verdict(const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
    try {
      auto [ok, detail] = body();
      out_.push_back({name, ok, detail});
    } catch (const std::exception& e) {
      out_.push_back({name, false, std::string("error: ") + e.what()});
    }
  }

 private:
  std::vector<PropertyOutcome>& out_;
};

}  // namespace

InstanceResult check_instance(const InstanceSpec& spec, const PropertyTolerances& ptol,
                              const ToleranceConfig& tol) {
  InstanceResult res;
  res.spec = spec;
  Recorder rec(res.outcomes);
  try {
    res.generated = testgen::generate_pair(spec.pair, tol);
  } catch (const std::exception& e) {
    res.outcomes.push_back({"generation", false, e.what()});
    return res;
  }
  const WeightedPair& p = res.generated->pair;
  const ComplexMatrix& a = p.a();
  const ComplexMatrix& w = p.w();
  const Index q = p.rows();
  const Index n = p.cols();
  const int m = spec.m;
  const int k = p.k();
  const double ps = p.product_scale();
  const ComplexMatrix wa = p.wa();
  const ComplexMatrix a_pinv = moore_penrose(a, tol);

  std::mt19937_64 rng(spec.pair.seed ^ 0xC0FFEEULL);
  res.rhs_q = testgen::random_gaussian(q, spec.rhs_cols, rng);
  res.rhs_n = testgen::random_gaussian(n, spec.rhs_cols, rng);

  const ComplexMatrix x = wmwgmp(p, m).inverse;
  const SubspaceBasis core_wa = power_range_basis(wa, k, tol, ps);
  const SubspaceBasis core_aw = power_range_basis(p.aw(), k, tol, ps);
  const Index t = core_wa.dimension();
  const ComplexMatrix h = matrix_power(wa, k).adjoint() * matrix_power(wa, m + 1);
  const double h_scale = std::pow(ps, k + m + 1);
  const bool a_nonzero = max_abs(a) > 0.0;

  rec.measure("route_agreement", ptol.route, [&] {
    double worst = 0.0;
    for (RouteId r : kAllRoutes) {
      if (r == RouteId::R9 && !a_nonzero) continue;
      worst = std::max(worst, relative_difference(wmwgmp_route(p, m, r).inverse, x));
    }
    return worst;
  });

  rec.measure("outer_inverse", ptol.outer, [&] { return relative_difference(x * a * x, x); });

  rec.verdict("rank_identity", [&] {
    const Index r = rank_of(x, tol, 1.0 / std::max(spectral_norm(a), 1e-300));
    return std::pair{r == t, "rank(X) = " + std::to_string(r) + ", rank((WA)^k) = " +
                                 std::to_string(t)};
  });

  ToleranceConfig sub_tol = tol;
  sub_tol.cmp_rel_tol = ptol.subspace;
  const double x_floor = 1.0 / std::max(spectral_norm(a), 1e-300);
  rec.verdict("range_identity", [&] {
    const bool ok = subspaces_equal(subspace_basis(x, SubspaceKind::range, tol, x_floor),
                                    core_wa, sub_tol);
    return std::pair{ok, std::string(ok ? "R(X) = R((WA)^k)" : "R(X) != R((WA)^k)")};
  });
  rec.verdict("nullspace_identity", [&] {
    const ComplexMatrix g = h * a_pinv;
    const bool ok = subspaces_equal(
        subspace_basis(x, SubspaceKind::nullspace, tol, x_floor),
        subspace_basis(g, SubspaceKind::nullspace, tol, h_scale * spectral_norm(a_pinv)),
        sub_tol);
    return std::pair{ok, std::string(ok ? "nullspaces match" : "nullspaces differ")};
  });

  ToleranceConfig proj_tol = tol;
  proj_tol.cmp_rel_tol = ptol.subspace;
  rec.verdict("projector_right", [&] {
    const ComplexMatrix pr = projector(p, m, ProjectorSide::right);
    const double idem = relative_difference(pr * pr, pr);
    const bool range_ok =
        subspaces_equal(subspace_basis(pr, SubspaceKind::range, tol, 1.0), core_aw, proj_tol);
    const bool null_ok = subspaces_equal(
        subspace_basis(pr, SubspaceKind::nullspace, tol, 1.0),
        subspace_basis(h * a_pinv, SubspaceKind::nullspace, tol,
                       h_scale * spectral_norm(a_pinv)),
        proj_tol);
    return std::pair{idem <= ptol.projector && range_ok && null_ok,
                     "idempotency " + fmt(idem) + ", range " + (range_ok ? "ok" : "differs") +
                         ", nullspace " + (null_ok ? "ok" : "differs")};
  });
  rec.verdict("projector_left", [&] {
    const ComplexMatrix pl = projector(p, m, ProjectorSide::left);
    const double idem = relative_difference(pl * pl, pl);
    const bool range_ok =
        subspaces_equal(subspace_basis(pl, SubspaceKind::range, tol, 1.0), core_wa, proj_tol);
    const bool null_ok =
        subspaces_equal(subspace_basis(pl, SubspaceKind::nullspace, tol, 1.0),
                        subspace_basis(h, SubspaceKind::nullspace, tol, h_scale), proj_tol);
    return std::pair{idem <= ptol.projector && range_ok && null_ok,
                     "idempotency " + fmt(idem) + ", range " + (range_ok ? "ok" : "differs") +
                         ", nullspace " + (null_ok ? "ok" : "differs")};
  });

  rec.measure("collapse_weak_core", ptol.collapse, [&] {
    const ComplexMatrix c = w_core_ep(p);
    const ComplexMatrix weak = c * w * c * w * a;
    return relative_difference(wmwgmp(p, 1).inverse, w * weak * w * a * a_pinv);
  });
  rec.measure("collapse_dmp", ptol.collapse, [&] {
    return relative_difference(wmwgmp(p, k + 2).inverse, w * w_drazin(p) * w * a * a_pinv);
  });
  rec.measure("collapse_identity_weight", ptol.collapse, [&] {
    ComplexMatrix sq = a;
    if (q != n) {
      testgen::PairSpec square = spec.pair;
      square.q = square.n = n;
      square.t = std::min(square.t, n);
      square.target_k = 1;
      sq = testgen::generate_pair(square, tol).pair.a();
    }
    const WeightedPair id_pair = make_weighted_pair(sq, identity(sq.rows()), tol);
    return relative_difference(wmwgmp(id_pair, m).inverse,
                               m_weak_group_mp(sq, m, tol).inverse);
  });

  rec.verdict("defining_system", [&] {
    ToleranceConfig def_tol = tol;
    def_tol.cmp_rel_tol = ptol.defining;
    const DefiningSystemReport r = verify_defining_system(p, m, x, def_tol);
    return std::pair{r.holds && r.characterization_holds,
                     "fixed point " + fmt(r.fixed_point_residual) + ", image " +
                         fmt(r.image_residual) + ", characterization " +
                         fmt(r.characterization_residual) + ", range " +
                         fmt(r.range_residual)};
  });
  if (t < std::min(q, n)) {
    try {
      res.distinguishes = !verify_defining_system(p, m, a_pinv, tol).holds;
    } catch (const std::exception&) {
      res.distinguishes = false;
    }
  }

  const auto optimality = [&](const ComplexMatrix& xs, const SubspaceBasis& c,
                              const std::function<double(const ComplexMatrix&)>& objective) {
    const double best = objective(xs);
    double margin = std::numeric_limits<double>::infinity();
    if (c.dimension() > 0) {
      for (int i = 0; i < 20; ++i) {
        const double step = i < 10 ? 1e-2 : 1.0;
        const ComplexMatrix moved =
            xs + step * c.matrix * unit_direction(c.dimension(), xs.cols(), rng);
        margin = std::min(margin, objective(moved) - best);
      }
    }
    return std::max(0.0, -margin);
  };
  rec.measure("optimality_wg", ptol.optimality, [&] {
    const ConstrainedSolveResult r = solve_constrained_wg(p, m, res.rhs_n);
    return optimality(r.x, core_aw,
                      [&](const ComplexMatrix& y) { return objective_wg(p, m, res.rhs_n, y); });
  });
  rec.measure("optimality_wmwgmp", ptol.optimality, [&] {
    const ConstrainedSolveResult r = solve_constrained_wmwgmp(p, m, res.rhs_q);
    return optimality(r.x, core_wa, [&](const ComplexMatrix& y) {
      return objective_wmwgmp(p, m, res.rhs_q, y);
    });
  });

  rec.measure("equation", ptol.equation, [&] {
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
      const ComplexMatrix z = testgen::random_gaussian(n, spec.rhs_cols, rng);
      worst = std::max(worst,
                       equation_residual(p, m, res.rhs_q, general_solution(p, m, res.rhs_q, z)));
    }
    return worst;
  });
  // Z = 0 gives the constrained solution: it lies in R((WA)^k) and matches the
  // solution of the reduced system H Q Y = H A^+ B built here from scratch.
  const auto x0 = [&] {
    return general_solution(p, m, res.rhs_q, ComplexMatrix::Zero(n, spec.rhs_cols));
  };
  const double x0_ref = frobenius(a_pinv * res.rhs_q);
  rec.measure("equation_constraint", ptol.equation, [&] {
    const ComplexMatrix x_zero = x0();
    return distance_from_subspace(x_zero, core_wa) / std::max(frobenius(x_zero), x0_ref);
  });
  rec.measure("equation_uniqueness", ptol.uniqueness, [&] {
    ComplexMatrix reduced = ComplexMatrix::Zero(n, spec.rhs_cols);
    if (t > 0) {
      const ComplexMatrix hq = h * core_wa.matrix;
      const ComplexMatrix y = hq.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV)
                                  .solve(h * a_pinv * res.rhs_q);
      reduced = core_wa.matrix * y;
    }
    return relative_difference(x0(), reduced, x0_ref);
  });

  rec.measure("bordering", ptol.bordering, [&] {
    const BorderingData d = build_bordering_E(p, m, tol);
    const ComplexMatrix ga_sharp =
        group_inverse(d.ga, tol, std::pow(ps, 2 * k + m + 1)).inverse;
    const ComplexMatrix e_sharp = group_inverse(d.e, tol, 1.0).inverse;
    const ComplexMatrix bordered = d.ga + d.e;
    const ComplexMatrix inv = ga_sharp + e_sharp;
    return std::max(relative_difference(bordered * inv, identity(n)),
                    relative_difference(inv * bordered, identity(n)));
  });

  rec.measure("cramer", ptol.cramer, [&] {
    const ComplexMatrix xc = cramer_solve(p, m, res.rhs_q);
    const ComplexMatrix xs = solve_constrained_wmwgmp(p, m, res.rhs_q).x;
    const double ref = std::max(max_abs(xs), max_abs(a_pinv * res.rhs_q));
    return max_abs(xc - xs) / std::max(ref, 1e-300);
  });

  rec.measure("decomposition_core_ep", ptol.decomposition, [&] {
    const WeightedCoreEPDecomposition d = weighted_core_ep_decompose(p, tol);
    return std::max(relative_difference(d.assemble_a(), a),
                    relative_difference(d.assemble_w(), w));
  });
  rec.measure("decomposition_hs", ptol.decomposition, [&] {
    if (!a_nonzero) return 0.0;
    const HartwigSpindelbockDecomposition d = weighted_hs_decompose(p, tol);
    const auto normalization = [](const ComplexMatrix& kk, const ComplexMatrix& ll) {
      const ComplexMatrix g = kk * kk.adjoint() + ll * ll.adjoint();
      return relative_difference(g, identity(g.rows()));
    };
    return std::max({relative_difference(d.assemble_a(), a),
                     relative_difference(d.assemble_w(), w), normalization(d.k1, d.l1),
                     normalization(d.k2, d.l2)});
  });
  return res;
}

bool CheckReport::ok() const {
  return std::all_of(tallies.begin(), tallies.end(),
                     [](const PropertyTally& t) { return t.failed == 0; });
}

std::string write_bundle(const std::string& dir, const InstanceResult& failing,
                         const PropertyOutcome& first_failure) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const auto& s = failing.spec;
  if (failing.generated) {
    save_matrix((fs::path(dir) / "A.mat").string(), failing.generated->pair.a());
    save_matrix((fs::path(dir) / "W.mat").string(), failing.generated->pair.w());
    save_matrix((fs::path(dir) / "B_q.mat").string(), failing.rhs_q);
    save_matrix((fs::path(dir) / "B_n.mat").string(), failing.rhs_n);
  }
  std::ofstream info(fs::path(dir) / "info.txt");
  info << "property " << first_failure.property << '\n'
       << "detail " << first_failure.detail << '\n'
       << "q " << s.pair.q << "\nn " << s.pair.n << "\nt " << s.pair.t << "\nk "
       << s.pair.target_k << "\nm " << s.m << "\np " << s.rhs_cols << "\nseed " << s.pair.seed
       << '\n';
  return dir;
}

CheckReport run_check(const CheckOptions& options, std::ostream& out) {
  options.numeric.validate();
  const PropertyTolerances ptol =
      options.tol ? PropertyTolerances::uniform(*options.tol) : PropertyTolerances{};

  CheckReport report;
  std::map<std::string, std::size_t> slot;
  const auto tally = [&](const std::string& name) -> PropertyTally& {
    auto it = slot.find(name);
    if (it == slot.end()) {
      it = slot.emplace(name, report.tallies.size()).first;
      report.tallies.push_back({name, 0, 0});
    }
    return report.tallies[it->second];
  };

  int eligible = 0;
  int distinguished = 0;
  for (std::uint64_t i = 0; i < options.seeds; ++i) {
    const InstanceSpec spec = draw_instance(i, options.max_size, options.k_max);
    const InstanceResult r = check_instance(spec, ptol, options.numeric);
    ++report.instances;
    for (const PropertyOutcome& o : r.outcomes) {
      PropertyTally& t = tally(o.property);
      (o.passed ? t.passed : t.failed)++;
      if (!o.passed && !report.bundle_path) {
        const std::string dir =
            options.bundle_dir.empty()
                ? (std::filesystem::temp_directory_path() /
                   ("ginv-check-seed-" + std::to_string(spec.pair.seed)))
                      .string()
                : options.bundle_dir;
        report.bundle_path = write_bundle(dir, r, o);
        out << "FAIL " << o.property << " on seed " << spec.pair.seed << " (q=" << spec.pair.q
            << " n=" << spec.pair.n << " t=" << spec.pair.t << " k=" << spec.pair.target_k
            << " m=" << spec.m << "): " << o.detail << '\n';
      }
    }
    if (r.distinguishes) {
      ++eligible;
      if (*r.distinguishes) ++distinguished;
    }
  }

  if (eligible > 0) {
    PropertyTally& t = tally("distinguishability");
    const bool ok = distinguished >= 0.9 * eligible;
    (ok ? t.passed : t.failed)++;
    out << "distinguishability: " << distinguished << "/" << eligible
        << " instances reject the Moore-Penrose inverse\n";
  }
  for (const PropertyTally& t : report.tallies)
    out << t.property << ": " << t.passed << "/" << (t.passed + t.failed) << " passed\n";
  if (report.bundle_path) out << "reproduction bundle: " << *report.bundle_path << '\n';
  return report;
}

}  // namespace ginv::check
