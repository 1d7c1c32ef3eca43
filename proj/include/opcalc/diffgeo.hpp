#pragma once

#include <vector>

#include "opcalc/diffop.hpp"

namespace opcalc {

using ExprMatrix = std::vector<std::vector<Expr>>;

/// Inverse metric g^{mu nu} in named coordinates.
struct CoMetric {
  std::vector<SymbolId> coords;
  ExprMatrix entries;
};

/// g^{mu nu} = grad q_mu . grad q_nu in the flat ambient space of `ambient`.
/// `coords[k]` is the expression of the coordinate named `names[k]`; the
/// entries must be expressible through the coordinate names alone.
CoMetric cometric_from_embedding(const std::vector<SymbolId>& names, const std::vector<Expr>& coords,
                                 const AlgebraicContext* ambient);

/// (1/sqrt g) d_mu sqrt g g^{mu nu} d_nu over `spec` (whose variables are the
/// coordinates). sqrt g enters only through d log det.
DiffOp laplace_beltrami(const CoMetric& g, const SpecPtr& spec);

struct Inversion {
  ExprMatrix inverse;
  Expr determinant;
};

/// Exact inverse and determinant; throws std::domain_error when singular.
Inversion invert_and_det(const ExprMatrix& m);

/// Scalar curvature of the metric g_{mu nu} (lower indices) in the given
/// coordinates, via Christoffel symbols, Riemann and Ricci tensors. The
/// convention gives the round unit sphere R = +2.
Expr scalar_curvature(const ExprMatrix& metric, const std::vector<SymbolId>& coords);

/// Twice the Gaussian curvature by the Brioschi formula; 2D only.
Expr brioschi_curvature(const ExprMatrix& metric, const std::vector<SymbolId>& coords);

}  // namespace opcalc
