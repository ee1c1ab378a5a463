#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ginv/classical.hpp"
#include "ginv/core_linalg.hpp"
#include "ginv/errors.hpp"
#include "ginv/matrix_io.hpp"
#include "ginv/solvers.hpp"
#include "ginv/testgen.hpp"
#include "ginv/weighted.hpp"
#include "ginv/wmwgmp.hpp"

namespace py = pybind11;
using namespace ginv;

namespace {

ToleranceConfig make_tol(std::optional<double> rank_tol, double tol) {
  ToleranceConfig t;
  t.rank_rel_tol = rank_tol;
  t.cmp_rel_tol = tol;
  t.validate();
  return t;
}

WeightedPair pair_of(const ComplexMatrix& a, const ComplexMatrix& w,
                     std::optional<double> rank_tol) {
  return make_weighted_pair(a, w, make_tol(rank_tol, 1e-8));
}

template <class F>
void def_square(py::module_& m, const char* name, F f, const char* doc) {
  m.def(
      name,
      [f](const ComplexMatrix& a, std::optional<double> rank_tol) {
        return f(a, make_tol(rank_tol, 1e-8)).inverse;
      },
      py::arg("a"), py::kw_only(), py::arg("rank_tol") = py::none(), doc);
}

}  // namespace

PYBIND11_MODULE(_ginv, m) {
  m.doc() = "Generalized inverses of complex matrices";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidInputError>(m, "InvalidInputError", error.ptr());
  py::register_exception<ShapeError>(m, "ShapeError", error.ptr());
  py::register_exception<DomainError>(m, "DomainError", error.ptr());
  py::register_exception<IndexError>(m, "IndexError", error.ptr());
  py::register_exception<ParameterError>(m, "ParameterError", error.ptr());
  py::register_exception<GeometryError>(m, "GeometryError", error.ptr());
  py::register_exception<DecompositionError>(m, "DecompositionError", error.ptr());
  py::register_exception<BorderingError>(m, "BorderingError", error.ptr());
  py::register_exception<CapacityError>(m, "CapacityError", error.ptr());

  m.def(
      "pinv",
      [](const ComplexMatrix& a, std::optional<double> rank_tol) {
        return moore_penrose(a, make_tol(rank_tol, 1e-8));
      },
      py::arg("a"), py::kw_only(), py::arg("rank_tol") = py::none(),
      "Moore-Penrose inverse");
  m.def(
      "rank",
      [](const ComplexMatrix& a, std::optional<double> rank_tol) {
        return rank_of(a, make_tol(rank_tol, 1e-8));
      },
      py::arg("a"), py::kw_only(), py::arg("rank_tol") = py::none());
  m.def(
      "index",
      [](const ComplexMatrix& a, std::optional<double> rank_tol) {
        return index_of(a, make_tol(rank_tol, 1e-8));
      },
      py::arg("a"), py::kw_only(), py::arg("rank_tol") = py::none());

  def_square(m, "drazin", [](const ComplexMatrix& a, const ToleranceConfig& t) { return drazin(a, t); },
             "Drazin inverse");
  def_square(m, "group_inverse",
             [](const ComplexMatrix& a, const ToleranceConfig& t) { return group_inverse(a, t); },
             "group inverse; IndexError when the index exceeds 1");
  def_square(m, "core_ep", [](const ComplexMatrix& a, const ToleranceConfig& t) { return core_ep(a, t); },
             "core-EP inverse");
  def_square(m, "dmp", [](const ComplexMatrix& a, const ToleranceConfig& t) { return dmp(a, t); },
             "DMP inverse A^D A A^+");
  m.def(
      "m_weak_group",
      [](const ComplexMatrix& a, int order, std::optional<double> rank_tol) {
        return m_weak_group(a, order, make_tol(rank_tol, 1e-8)).inverse;
      },
      py::arg("a"), py::arg("m"), py::kw_only(), py::arg("rank_tol") = py::none());
  m.def(
      "m_weak_group_mp",
      [](const ComplexMatrix& a, int order, std::optional<double> rank_tol) {
        return m_weak_group_mp(a, order, make_tol(rank_tol, 1e-8)).inverse;
      },
      py::arg("a"), py::arg("m"), py::kw_only(), py::arg("rank_tol") = py::none());

  m.def(
      "weighted_index",
      [](const ComplexMatrix& a, const ComplexMatrix& w, std::optional<double> rank_tol) {
        return pair_of(a, w, rank_tol).k();
      },
      py::arg("a"), py::arg("w"), py::kw_only(), py::arg("rank_tol") = py::none(),
      "k = max(Ind(AW), Ind(WA), 1)");
  m.def(
      "w_drazin",
      [](const ComplexMatrix& a, const ComplexMatrix& w, std::optional<double> rank_tol) {
        return w_drazin(pair_of(a, w, rank_tol));
      },
      py::arg("a"), py::arg("w"), py::kw_only(), py::arg("rank_tol") = py::none());
  m.def(
      "w_core_ep",
      [](const ComplexMatrix& a, const ComplexMatrix& w, std::optional<double> rank_tol) {
        return w_core_ep(pair_of(a, w, rank_tol));
      },
      py::arg("a"), py::arg("w"), py::kw_only(), py::arg("rank_tol") = py::none());
  m.def(
      "w_m_weak_group",
      [](const ComplexMatrix& a, const ComplexMatrix& w, int order,
         std::optional<double> rank_tol) {
        return w_m_weak_group(pair_of(a, w, rank_tol), order);
      },
      py::arg("a"), py::arg("w"), py::arg("m"), py::kw_only(),
      py::arg("rank_tol") = py::none());
  m.def(
      "wmwgmp",
      [](const ComplexMatrix& a, const ComplexMatrix& w, int order, const std::string& route,
         std::optional<double> rank_tol) {
        return wmwgmp_route(pair_of(a, w, rank_tol), order, parse_route(route)).inverse;
      },
      py::arg("a"), py::arg("w"), py::arg("m"), py::kw_only(), py::arg("route") = "DEF",
      py::arg("rank_tol") = py::none(), "W-weighted m-weak group MP inverse by route");
  m.def(
      "verify_defining_system",
      [](const ComplexMatrix& a, const ComplexMatrix& w, int order, const ComplexMatrix& x,
         double tol) {
        const WeightedPair p = make_weighted_pair(a, w, make_tol(std::nullopt, tol));
        const DefiningSystemReport r = verify_defining_system(p, order, x, p.tol());
        py::dict d;
        d["holds"] = r.holds;
        d["fixed_point_residual"] = r.fixed_point_residual;
        d["image_residual"] = r.image_residual;
        d["characterization_holds"] = r.characterization_holds;
        d["characterization_residual"] = r.characterization_residual;
        d["range_residual"] = r.range_residual;
        return d;
      },
      py::arg("a"), py::arg("w"), py::arg("m"), py::arg("x"), py::kw_only(),
      py::arg("tol") = 1e-8);

  m.def(
      "solve_constrained_wg",
      [](const ComplexMatrix& a, const ComplexMatrix& w, int order, const ComplexMatrix& b) {
        const ConstrainedSolveResult r = solve_constrained_wg(make_weighted_pair(a, w), order, b);
        return py::make_tuple(r.x, r.residual_frobenius, r.constraint_residual);
      },
      py::arg("a"), py::arg("w"), py::arg("m"), py::arg("b"),
      "(X, objective, constraint residual); B is n x p");
  m.def(
      "solve_constrained_wmwgmp",
      [](const ComplexMatrix& a, const ComplexMatrix& w, int order, const ComplexMatrix& b) {
        const ConstrainedSolveResult r =
            solve_constrained_wmwgmp(make_weighted_pair(a, w), order, b);
        return py::make_tuple(r.x, r.residual_frobenius, r.constraint_residual);
      },
      py::arg("a"), py::arg("w"), py::arg("m"), py::arg("b"),
      "(X, objective, constraint residual); B is q x p");
  m.def(
      "general_solution",
      [](const ComplexMatrix& a, const ComplexMatrix& w, int order, const ComplexMatrix& b,
         const ComplexMatrix& z) { return general_solution(make_weighted_pair(a, w), order, b, z); },
      py::arg("a"), py::arg("w"), py::arg("m"), py::arg("b"), py::arg("z"));
  m.def(
      "cramer_solve",
      [](const ComplexMatrix& a, const ComplexMatrix& w, int order, const ComplexMatrix& b,
         const std::string& rhs) {
        CramerOptions o;
        if (rhs == "statement") o.rhs = CramerRhs::unbordered;
        else if (rhs != "proof") throw ParameterError("rhs must be 'proof' or 'statement'");
        return cramer_solve(make_weighted_pair(a, w), order, b, o);
      },
      py::arg("a"), py::arg("w"), py::arg("m"), py::arg("b"), py::kw_only(),
      py::arg("rhs") = "proof");

  m.def(
      "generate_pair",
      [](Index q, Index n, Index t, int k, std::uint64_t seed, double condition_cap) {
        testgen::PairSpec s;
        s.q = q;
        s.n = n;
        s.t = t;
        s.target_k = k;
        s.seed = seed;
        s.condition_cap = condition_cap;
        const testgen::GeneratedPair g = testgen::generate_pair(s);
        return py::make_tuple(g.pair.a(), g.pair.w());
      },
      py::arg("q"), py::arg("n"), py::kw_only(), py::arg("t") = 0, py::arg("k") = 1,
      py::arg("seed") = 0, py::arg("condition_cap") = 2.0, "(A, W) with core size t, index k");

  m.def("format_matrix", &format_matrix, py::arg("m"), py::arg("precision") = 17);
  m.def("parse_matrix", &parse_matrix, py::arg("text"));
}
