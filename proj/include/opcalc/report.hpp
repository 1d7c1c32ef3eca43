#pragma once

#include <chrono>
#include <map>
#include <string>
#include <vector>

#include "opcalc/diffop.hpp"

namespace opcalc {

enum class Status { Pass, Fail, Error };

const char* status_name(Status s);

/// Outcome of one verification.
struct CheckReport {
  std::string check;
  Status status = Status::Pass;
  std::size_t residual_terms = 0;
  std::vector<std::string> witnesses;
  std::vector<std::string> notes;
  long elapsed_ms = 0;
};

/// Accumulates residuals of the sub-identities of a check. Residuals are
/// specialized at the given parameter bindings before they are judged.
class CheckBuilder {
 public:
  static constexpr std::size_t kMaxWitnesses = 8;

  explicit CheckBuilder(std::string name, std::map<SymbolId, Expr> bindings = {});

  /// Records `residual` under `label`; passes iff it is the zero operator.
  bool expect_zero(const std::string& label, const DiffOp& residual);
  bool expect_equal(const std::string& label, const DiffOp& got, const DiffOp& want) {
    return expect_zero(label, got - want);
  }
  bool expect_equal(const std::string& label, const Expr& got, const Expr& want);
  /// Records a failed sub-identity that has no operator residual.
  void fail(const std::string& label, const std::string& detail);
  void note(std::string text) { report_.notes.push_back(std::move(text)); }
  const std::map<SymbolId, Expr>& bindings() const { return bindings_; }
  DiffOp specialize(const DiffOp& a) const;
  Expr specialize(const Expr& e) const;

  CheckReport finish();

 private:
  void add_witness(std::string w);

  CheckReport report_;
  std::map<SymbolId, Expr> bindings_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace opcalc
