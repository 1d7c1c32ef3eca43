#include "opcalc/rings.hpp"

namespace opcalc {

namespace {
MultiPoly v(SymbolId s, unsigned e = 1) { return MultiPoly::var(s, e); }
}  // namespace

const AlgebraicContext* cartesian_context() {
  using namespace symbols;
  static const AlgebraicContext* ctx =
      AlgebraicContext::Builder({x, y, z})
          .dependent(r, {{v(x), v(r)}, {v(y), v(r)}, {v(z), v(r)}})
          .relation(x, v(r, 2) - v(y, 2) - v(z, 2))
          .build("cartesian");
  return ctx;
}

const AlgebraicContext* cylindrical_context() {
  using namespace symbols;
  static const AlgebraicContext* ctx =
      AlgebraicContext::Builder({x, y, z})
          .dependent(r, {{v(x), v(r)}, {v(y), v(r)}, {v(z), v(r)}})
          .dependent(rho, {{v(x), v(rho)}, {v(y), v(rho)}, {MultiPoly(), MultiPoly(1)}})
          .dependent(phi, {{-v(y), v(rho, 2)}, {v(x), v(rho, 2)}, {MultiPoly(), MultiPoly(1)}})
          .relation(x, v(rho, 2) - v(y, 2))
          .relation(z, v(r, 2) - v(rho, 2))
          .build("cylindrical");
  return ctx;
}

}  // namespace opcalc
