#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "opcalc/report.hpp"

namespace opcalc::coulomb3d {

/// (x, y, z) over the ring with r adjoined; parameters alpha, E, beta.
const SpecPtr& cartesian_spec();

using VectorOp = std::array<DiffOp, 3>;

/// H = -Delta/2 - alpha/r.
DiffOp hamiltonian();
/// K = -(r/2) Delta - E r.
DiffOp k_operator();
/// L = r x p with p = -i grad.
VectorOp angular_momentum();
/// (p x L - L x p)/2.
VectorOp symmetrized_cross();
/// Runge-Lenz vector (p x L - L x p)/2 - alpha r/|r|.
VectorOp runge_lenz();

/// One reading of the modified Runge-Lenz vector.
struct BCandidate {
  std::string label;
  std::string description;
  VectorOp b;
};

/// Printed-term orderings ("printed-right", "printed-left", "printed-sym")
/// followed by the readings with alpha replaced by K ("cm-right", "cm-left",
/// "cm-sym").
const std::vector<BCandidate>& b_candidates();

CheckReport check_eq7(const std::map<SymbolId, Expr>& bindings = {});
/// [L, H] = [A, H] = 0.
CheckReport check_h_integrals(const std::map<SymbolId, Expr>& bindings = {});
CheckReport check_eq4(const std::map<SymbolId, Expr>& bindings = {});
CheckReport check_eq5(const std::map<SymbolId, Expr>& bindings = {});
/// which: "LL", "AL" or "AA".
CheckReport check_eq6(const std::string& which, const std::map<SymbolId, Expr>& bindings = {});
CheckReport check_lk(const std::map<SymbolId, Expr>& bindings = {});
/// Every B identity for one candidate.
CheckReport check_b_candidate(const BCandidate& cand, const std::map<SymbolId, Expr>& bindings = {});
/// Passes when some candidate satisfies every B identity; names it.
CheckReport check_b_sweep(const std::map<SymbolId, Expr>& bindings = {});
/// so(4) after E -> -beta^2/2 and B -> B/beta, using the first passing
/// candidate.
CheckReport check_so4(const std::map<SymbolId, Expr>& bindings = {});

/// Label of the first candidate satisfying every B identity, or "".
std::string passing_b_candidate();

}  // namespace opcalc::coulomb3d
