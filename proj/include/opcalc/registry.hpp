#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "opcalc/report.hpp"

namespace opcalc {

using Bindings = std::map<SymbolId, Expr>;

struct CheckEntry {
  std::string name;
  std::string summary;
  std::function<CheckReport(const Bindings&)> run;
};

/// Every registered check, sorted by name.
const std::vector<CheckEntry>& check_registry();

/// Entries whose name matches the shell-style glob.
std::vector<const CheckEntry*> match_checks(const std::string& glob);

/// Runs the entries on up to `jobs` threads. Exceptions become Error reports.
/// The result is ordered like `entries`.
std::vector<CheckReport> run_checks(const std::vector<const CheckEntry*>& entries, const Bindings& bindings,
                                    unsigned jobs = 1);

/// Parses "name=value" into a binding; the value uses the expression grammar.
std::pair<SymbolId, Expr> parse_binding(const std::string& text);

}  // namespace opcalc
