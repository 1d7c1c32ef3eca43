#pragma once

#include "opcalc/context.hpp"

namespace opcalc {

/// Base (x, y, z) with r = sqrt(x^2+y^2+z^2) adjoined; x^2 is rewritten as
/// r^2 - y^2 - z^2 so that every denominator is a power of r.
const AlgebraicContext* cartesian_context();

/// Base (x, y, z) with r, rho = sqrt(x^2+y^2) and phi = atan(y/x) adjoined.
/// Relations x^2 -> rho^2 - y^2 and z^2 -> r^2 - rho^2.
const AlgebraicContext* cylindrical_context();

}  // namespace opcalc
