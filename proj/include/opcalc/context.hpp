#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "opcalc/multipoly.hpp"

namespace opcalc {

/// Algebraic context of a coefficient ring: which symbols are base variables
/// (the ones we differentiate in), which are functions of them (with an explicit
/// gradient table), and which square relations s^2 = f are imposed.
///
/// Relations are oriented as rewrite rules s^2 -> f. No right-hand side may
/// mention a rewritten symbol, so one pass yields the unique normal form with
/// every rewritten symbol of degree at most one.
class AlgebraicContext {
 public:
  struct Relation {
    SymbolId symbol;
    MultiPoly square;
  };
  /// d(symbol)/d(base[k]) = num[k] / den[k].
  struct Gradient {
    std::vector<MultiPoly> num;
    std::vector<MultiPoly> den;
  };

  class Builder {
   public:
    explicit Builder(std::vector<SymbolId> base) : base_(std::move(base)) {}
    /// Declares `s` as a function of the base variables.
    Builder& dependent(SymbolId s, std::vector<std::pair<MultiPoly, MultiPoly>> gradient);
    /// Imposes s^2 = square.
    Builder& relation(SymbolId s, MultiPoly square);
    /// Validates and registers the context; the pointer stays valid for the
    /// lifetime of the process.
    const AlgebraicContext* build(std::string name);

   private:
    std::vector<SymbolId> base_;
    std::map<SymbolId, Gradient> gradients_;
    std::vector<Relation> relations_;
  };

  const std::string& name() const { return name_; }
  const std::vector<SymbolId>& base() const { return base_; }
  bool is_base(SymbolId s) const;
  int base_index(SymbolId s) const;
  bool is_dependent(SymbolId s) const { return gradients_.count(s) > 0; }
  const Gradient* gradient(SymbolId s) const;
  const std::vector<Relation>& relations() const { return relations_; }
  bool is_rewritten(SymbolId s) const { return (rewritten_mask_ >> s) & 1u; }
  std::uint32_t rewritten_mask() const { return rewritten_mask_; }
  std::uint32_t dependent_mask() const { return dependent_mask_; }

  /// Normal form modulo the square relations.
  MultiPoly reduce(const MultiPoly& p) const;

 private:
  AlgebraicContext() = default;

  std::string name_;
  std::vector<SymbolId> base_;
  std::map<SymbolId, Gradient> gradients_;
  std::vector<Relation> relations_;
  std::uint32_t rewritten_mask_ = 0;
  std::uint32_t dependent_mask_ = 0;
};

}  // namespace opcalc
