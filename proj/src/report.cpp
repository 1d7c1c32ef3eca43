#include "opcalc/report.hpp"

namespace opcalc {

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Error:
      return "error";
  }
  return "error";
}

CheckBuilder::CheckBuilder(std::string name, std::map<SymbolId, Expr> bindings)
    : bindings_(std::move(bindings)), start_(std::chrono::steady_clock::now()) {
  report_.check = std::move(name);
}

DiffOp CheckBuilder::specialize(const DiffOp& a) const {
  if (bindings_.empty()) return a;
  std::map<SymbolId, Expr> b;
  for (const auto& [s, v] : bindings_)
    if (a.spec()->index_of(s) < 0) b.emplace(s, v);
  return a.substitute(b);
}

Expr CheckBuilder::specialize(const Expr& e) const { return bindings_.empty() ? e : e.substitute(bindings_); }

void CheckBuilder::add_witness(std::string w) {
  if (report_.witnesses.size() < kMaxWitnesses) report_.witnesses.push_back(std::move(w));
}

bool CheckBuilder::expect_zero(const std::string& label, const DiffOp& residual) {
  DiffOp r = specialize(residual);
  if (r.is_zero()) return true;
  if (report_.status == Status::Pass) report_.status = Status::Fail;
  report_.residual_terms += r.terms().size();
  for (const auto& t : r.term_strings()) add_witness(label + ": " + t);
  return false;
}

bool CheckBuilder::expect_equal(const std::string& label, const Expr& got, const Expr& want) {
  Expr r = specialize(got - want);
  if (r.is_zero()) return true;
  if (report_.status == Status::Pass) report_.status = Status::Fail;
  report_.residual_terms += r.num().size();
  add_witness(label + ": got " + specialize(got).str() + ", expected " + specialize(want).str());
  return false;
}

void CheckBuilder::fail(const std::string& label, const std::string& detail) {
  if (report_.status == Status::Pass) report_.status = Status::Fail;
  report_.residual_terms += 1;
  add_witness(label + ": " + detail);
}

CheckReport CheckBuilder::finish() {
  report_.elapsed_ms = static_cast<long>(
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count());
  return report_;
}

}  // namespace opcalc
