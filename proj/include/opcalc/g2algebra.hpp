#pragma once

#include <map>
#include <string>
#include <vector>

#include "opcalc/linsolve.hpp"
#include "opcalc/report.hpp"

namespace opcalc::g2 {

/// (r, u) with parameters n, beta, mu, p. Compatible with the 2D operators.
const SpecPtr& spec();

struct Generator {
  std::string name;
  DiffOp op;
};

/// The eleven generators at mark n, in the canonical precedence
/// J0 < J1 < J2 < J3 < J4 < R0 < R1 < R2 < T0 < T1 < T2 (J0 is the
/// Euler-Cartan generator).
struct GeneratorSet {
  Expr mark;
  std::vector<Generator> generators;
  const DiffOp& get(const std::string& name) const;
  /// "lowering+gl2" (first eight), "raising" (the T's) or "all".
  std::vector<Generator> subset(const std::string& tag) const;
};

/// `n` may be a literal or the symbol n.
GeneratorSet build_generators(const Expr& n);
/// J+ = r^2 d_r - n r, J0 = 2 r d_r - n, J- = d_r.
std::vector<Generator> sl2_generators(const Expr& n);

/// Every generator at mark n preserves P_n, for each listed mark. Also runs
/// the mismatched-mark control J4 at mark 0 on P_2 and records its outcome.
CheckReport check_flag_invariance(const std::vector<unsigned>& marks = {0, 1, 2, 3, 5},
                                  const std::map<SymbolId, Expr>& bindings = {});

struct StructureEntry {
  std::string a, b;
  /// Span element name ("1" for the identity) -> coefficient.
  std::vector<std::pair<std::string, Expr>> coefficients;
  bool in_span = false;
};

struct StructureTable {
  std::vector<std::string> names;
  std::vector<StructureEntry> entries;
  bool closed = true;
};

/// All pairwise commutators, each expanded in span(gens, 1) with coefficients
/// polynomial in n of degree <= n_degree.
StructureTable structure_table(const std::vector<Generator>& gens, unsigned n_degree = 2);

/// Table for "lowering+gl2", "sl2" or "all" at symbolic n; passes iff closed.
CheckReport check_structure(const std::string& tag, const std::map<SymbolId, Expr>& bindings = {});

/// Generator form of h_a at n = 0; optionally without the beta J0 term.
DiffOp h_lie_form(bool drop_beta_j0 = false);
/// Generator form of l_a at n = 0.
DiffOp l_lie_form();
CheckReport check_lie_forms(const std::map<SymbolId, Expr>& bindings = {});

/// Jacobi identity on every triple of the "lowering+gl2" subset at symbolic n.
CheckReport check_jacobi(const std::map<SymbolId, Expr>& bindings = {});

struct EnvelopingDecomposition {
  std::string target;
  std::vector<std::string> subset;
  unsigned degree_bound = 0;
  /// Ordered monomials as non-decreasing index lists into `subset`.
  std::vector<std::vector<unsigned>> monomials;
  Combination combination;
  /// Monomial string -> coefficient string, nonzero entries only.
  std::vector<std::pair<std::string, std::string>> table;
  /// Set when a grading argument rules out any decomposition.
  std::string obstruction;
  bool exact() const { return combination.exact; }
};

/// Monomial text such as "J2*J3^2*R1"; "1" for the empty word.
std::string monomial_str(const std::vector<unsigned>& word, const std::vector<std::string>& names);

/// Exact expansion of `target` over ordered generator monomials of degree
/// <= degree_bound, coefficients polynomial in (beta, mu, p) with each degree
/// <= param_degree.
EnvelopingDecomposition decompose(const std::string& target_name, const DiffOp& target,
                                  const std::vector<Generator>& subset, unsigned degree_bound,
                                  unsigned param_degree = 4);

/// Largest (u-degree - d_u order) over the terms of an operator with
/// polynomial coefficients. Composition is subadditive in it.
int u_excess(const DiffOp& a);

/// target: "h_a", "l_a", "b_a" or "c"; decomposes over "lowering+gl2" at
/// mark 0. When that fails, the full generator set is tried and reported in
/// the notes.
CheckReport check_decompose(const std::string& target, unsigned degree_bound,
                            const std::map<SymbolId, Expr>& bindings = {});

}  // namespace opcalc::g2
