#pragma once

#include <map>

#include "opcalc/diffgeo.hpp"
#include "opcalc/report.hpp"

namespace opcalc::geometry {

/// Cometric rows (r/2, u; u, 2ru) over (r, u).
CoMetric coulomb_cometric();
/// Log-gradient of e^{beta r} (r^2-u)^{-p/2} u^{-(1+2mu)/4}; without the
/// u-power when `with_u_power` is false.
GaugeData schrodinger_gauge(bool with_u_power = true);
/// (4 mu^2 - 1) r / (8u) + beta^2 r / 2.
Expr effective_potential();

/// det and inverse of the cometric.
CheckReport check_metric(const std::map<SymbolId, Expr>& bindings = {});
/// Scalar curvature against the closed form, Brioschi, the sphere, flat
/// space and randomized diagonal metrics.
CheckReport check_curvature(const std::map<SymbolId, Expr>& bindings = {});
/// Laplace-Beltrami structure: principal symbol, volume-weight identity,
/// flat embeddings.
CheckReport check_laplacian(const std::map<SymbolId, Expr>& bindings = {});
/// Gamma_a^{-1} h_a Gamma_a = -Delta_LB + V_eff.
CheckReport check_schrodinger(const std::map<SymbolId, Expr>& bindings = {});

}  // namespace opcalc::geometry
