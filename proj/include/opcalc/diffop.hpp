#pragma once

#include <array>
#include <compare>
#include <cstring>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "opcalc/expr.hpp"

namespace opcalc {

inline constexpr std::size_t kMaxSpaceVars = 3;

/// Coordinates an operator acts on, its parameters and coefficient context.
class VariableSpec {
 public:
  static std::shared_ptr<const VariableSpec> make(std::string name, std::vector<SymbolId> vars,
                                                  std::vector<SymbolId> params,
                                                  const AlgebraicContext* ctx = nullptr);

  const std::string& name() const { return name_; }
  const std::vector<SymbolId>& vars() const { return vars_; }
  const std::vector<SymbolId>& params() const { return params_; }
  const AlgebraicContext* context() const { return ctx_; }
  /// Position of a space variable, or -1.
  int index_of(SymbolId s) const;

 private:
  std::string name_;
  std::vector<SymbolId> vars_;
  std::vector<SymbolId> params_;
  const AlgebraicContext* ctx_ = nullptr;
};

using SpecPtr = std::shared_ptr<const VariableSpec>;

/// Derivative multi-index. Byte 0 holds the total order so byte comparison is
/// graded-lex, matching the printing order.
class DerivIndex {
 public:
  DerivIndex() { bytes_.fill(0); }
  static DerivIndex unit(std::size_t var, unsigned k = 1);

  unsigned order() const { return bytes_[0]; }
  unsigned operator[](std::size_t var) const { return bytes_[1 + var]; }
  void set(std::size_t var, unsigned k);

  DerivIndex operator+(const DerivIndex& o) const;
  DerivIndex operator-(const DerivIndex& o) const;
  bool le(const DerivIndex& o) const;

  friend bool operator==(const DerivIndex& a, const DerivIndex& b) {
    return std::memcmp(a.bytes_.data(), b.bytes_.data(), a.bytes_.size()) == 0;
  }
  friend std::strong_ordering operator<=>(const DerivIndex& a, const DerivIndex& b) {
    int c = std::memcmp(a.bytes_.data(), b.bytes_.data(), a.bytes_.size());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  std::array<std::uint8_t, kMaxSpaceVars + 1> bytes_;
};

/// Normal-ordered differential operator: sum of coeff * d^index with every
/// coefficient to the left of every derivative.
class DiffOp {
 public:
  using TermMap = std::map<DerivIndex, Expr, std::greater<>>;

  explicit DiffOp(SpecPtr spec) : spec_(std::move(spec)) {}

  static DiffOp multiplication(SpecPtr spec, const Expr& f);
  static DiffOp identity(SpecPtr spec) { return multiplication(std::move(spec), Expr(1)); }
  /// d^k / d(var)^k.
  static DiffOp derivative(SpecPtr spec, SymbolId var, unsigned k = 1);

  const SpecPtr& spec() const { return spec_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  unsigned order() const { return terms_.empty() ? 0 : terms_.begin()->first.order(); }
  Expr coefficient(const DerivIndex& idx) const;
  /// Adds c * d^idx.
  void add_term(const DerivIndex& idx, const Expr& c);

  DiffOp operator-() const;
  DiffOp& operator+=(const DiffOp& o);
  DiffOp& operator-=(const DiffOp& o);
  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  /// Operator product (composition).
  friend DiffOp operator*(const DiffOp& a, const DiffOp& b);
  /// Left multiplication by a function.
  friend DiffOp operator*(const Expr& f, const DiffOp& a);

  friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.terms_ == b.terms_; }

  /// Applies a coefficient-wise map (e.g. parameter specialization).
  template <typename F>
  DiffOp map_coefficients(F&& f) const {
    DiffOp out(spec_);
    for (const auto& [idx, c] : terms_) out.add_term(idx, f(c));
    return out;
  }
  DiffOp substitute(const std::map<SymbolId, Expr>& values) const;
  /// Same operator over another spec whose variables include every variable
  /// this one differentiates in.
  DiffOp rebase(SpecPtr target) const;

  /// Canonical text form; reparses with parse_operator.
  std::string str() const;
  /// One printed entry per derivative index.
  std::vector<std::string> term_strings() const;
  std::string index_str(const DerivIndex& idx) const;

  /// Throws when `o` lives over a different variable spec.
  void check_same_spec(const DiffOp& o) const;

 private:

  SpecPtr spec_;
  TermMap terms_;
};

DiffOp compose(const DiffOp& a, const DiffOp& b);
DiffOp commutator(const DiffOp& a, const DiffOp& b);
Expr apply(const DiffOp& a, const Expr& f);

/// Gauge factor described by d(log Gamma) along each space variable.
struct GaugeData {
  std::vector<Expr> log_gradient;
};

/// Gamma^{-1} A Gamma via d_v -> d_v + w_v. Throws when the log-gradient is not
/// closed.
DiffOp conjugate(const DiffOp& a, const GaugeData& g);

/// Rewrites `a` in the coordinates of `target`, where each old space variable
/// is given as an expression in the new ones. Throws when the Jacobian is
/// singular.
DiffOp change_variables(const DiffOp& a, const SpecPtr& target, const std::map<SymbolId, Expr>& old_in_new);

/// Acts on functions carrying a factor exp(charge/i * angle): d_angle -> charge.
/// The result lives in `target` (which omits the angle). Throws on angle
/// dependent coefficients and on a surviving imaginary part.
DiffOp project_angular(const DiffOp& a, SymbolId angle, const Expr& charge, const SpecPtr& target);

}  // namespace opcalc
