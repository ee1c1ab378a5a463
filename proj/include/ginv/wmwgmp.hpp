#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "ginv/core_linalg.hpp"
#include "ginv/weighted.hpp"

// The W-weighted m-weak group MP inverse
//   X = W A^{wg_m,W} W A A^+      (n x q)
// computed by its definition and by nine independent representations.
namespace ginv {

enum class RouteId { DEF, R1, R2, R3, R4, R5, R6, R7, R8, R9 };

inline constexpr std::array<RouteId, 10> kAllRoutes = {
    RouteId::DEF, RouteId::R1, RouteId::R2, RouteId::R3, RouteId::R4,
    RouteId::R5,  RouteId::R6, RouteId::R7, RouteId::R8, RouteId::R9};

std::string_view to_string(RouteId route);

/// Parses "DEF", "R1", ..., "R9" (case-insensitive). ParameterError otherwise.
RouteId parse_route(std::string_view text);

struct WmwgmpResult {
  ComplexMatrix inverse;
  RouteId route = RouteId::DEF;
  int m = 1;
  int k = 1;
};

struct RouteOptions {
  // Exponent l used by R3; any l >= k gives the same matrix. Defaults to k.
  std::optional<int> r3_exponent;
};

WmwgmpResult wmwgmp(const WeightedPair& p, int m);

WmwgmpResult wmwgmp_route(const WeightedPair& p, int m, RouteId route,
                          const RouteOptions& options = {});

enum class ProjectorSide { right, left };

/// right: A X (q x q), left: X A (n x n), with X the DEF-route inverse.
ComplexMatrix projector(const WeightedPair& p, int m, ProjectorSide side);

/// Residuals of the two characterizations of X:
///   system:         X = W A^{D,W} W A X  and  A X = A W A^{wg_m,W} W A A^+
///   characterized:  A X = (A^{c,W})^{*m} W A^{*m} W A A^+  and  R(X) in R(W A^{D,W})
/// All residuals are relative Frobenius.
struct DefiningSystemReport {
  bool holds = false;  // both equations of the defining system
  double fixed_point_residual = 0.0;
  double image_residual = 0.0;

  bool characterization_holds = false;
  double characterization_residual = 0.0;
  double range_residual = 0.0;

  bool disagreement = false;  // the two verdicts differ
};

DefiningSystemReport verify_defining_system(const WeightedPair& p, int m,
                                            const ComplexMatrix& x,
                                            const ToleranceConfig& tol);

}  // namespace ginv
