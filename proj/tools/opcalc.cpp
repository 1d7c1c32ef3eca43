// Command-line front end for the check suite and the operator toolkit.
#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>

#include "opcalc/coulomb2d.hpp"
#include "opcalc/coulomb3d.hpp"
#include "opcalc/flagrep.hpp"
#include "opcalc/g2algebra.hpp"
#include "opcalc/parser.hpp"
#include "opcalc/registry.hpp"
#include "opcalc/rings.hpp"

using namespace opcalc;
using json = nlohmann::ordered_json;

namespace {

constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json report_json(const CheckReport& r) {
  json j{{"check", r.check},
         {"status", status_name(r.status)},
         {"residual_terms", r.residual_terms},
         {"witnesses", r.witnesses},
         {"elapsed_ms", r.elapsed_ms}};
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

void print_text(std::ostream& os, const CheckReport& r, bool timing) {
  os << upper(status_name(r.status)) << "  " << r.check;
  if (r.status != Status::Pass) os << "  (" << r.residual_terms << " residual terms)";
  if (timing) os << "  [" << r.elapsed_ms << " ms]";
  os << "\n";
  for (const auto& w : r.witnesses) os << "    witness: " << w << "\n";
  for (const auto& n : r.notes) os << "    note: " << n << "\n";
}

// Named operators, for show/matrix/decompose.
std::optional<DiffOp> named_operator(const std::string& name, long mark) {
  namespace c2 = coulomb2d;
  namespace c3 = coulomb3d;
  if (name == "h") return c2::h_operator();
  if (name == "h_a") return c2::h_a();
  if (name == "l_a") return c2::l_a();
  if (name == "b_a") return c2::b_a();
  if (name == "2b_a") return c2::two_b_a();
  if (name == "c") return c2::named().c;
  if (name == "identity") return DiffOp::identity(c2::ru_spec());
  if (name == "laplacian") return c2::laplacian_cylindrical();
  if (name == "H") return c3::hamiltonian();
  if (name == "K") return c3::k_operator();
  static const std::map<char, int> axis{{'x', 0}, {'y', 1}, {'z', 2}};
  if (name.size() == 3 && name[1] == '_' && axis.count(name[2])) {
    int i = axis.at(name[2]);
    if (name[0] == 'L') return c3::angular_momentum()[i];
    if (name[0] == 'A') return c3::runge_lenz()[i];
    if (name[0] == 'B') {
      std::string lbl = c3::passing_b_candidate();
      for (const auto& c : c3::b_candidates())
        if (c.label == lbl) return c.b[i];
    }
  }
  auto gens = g2::build_generators(Expr(mark));
  for (const auto& g : gens.generators)
    if (g.name == name) return g.op;
  return std::nullopt;
}

DiffOp require_operator(const std::string& name, long mark) {
  auto op = named_operator(name, mark);
  if (!op) throw UsageError("unknown operator '" + name + "'");
  return *op;
}

SpecPtr spec_for(const std::string& vars) {
  if (vars == "r,u") return coulomb2d::ru_spec();
  if (vars == "r,rho") return coulomb2d::rrho_spec();
  if (vars == "r,rho,phi") return coulomb2d::cylinder_spec();
  if (vars == "x,y,z") return coulomb3d::cartesian_spec();
  throw UsageError("unsupported variable set '" + vars + "' (use r,u | r,rho | r,rho,phi | x,y,z)");
}

void check_format(const std::string& f) {
  if (f != "text" && f != "json") throw UsageError("format must be text or json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact operator calculus for the two-body Coulomb problem"};
  app.require_subcommand(1);

  std::string glob, format = "text";
  unsigned jobs = 1;
  std::vector<std::string> params;
  bool no_timing = false;
  auto* verify = app.add_subcommand("verify", "Run registered checks whose names match a glob");
  verify->add_option("glob", glob, "Check name pattern, e.g. \"2d.*\"")->required();
  verify->add_option("--format", format, "text or json");
  verify->add_option("--jobs", jobs, "Parallel checks");
  verify->add_option("--param", params, "Parameter binding such as beta=3/2");
  verify->add_flag("--no-timing", no_timing, "Omit elapsed times");

  auto* list = app.add_subcommand("list", "List registered checks");

  std::string opname;
  long mark = 0;
  auto* show = app.add_subcommand("show", "Print a named operator");
  show->add_option("name", opname)->required();
  show->add_option("--mark", mark, "Mark n for g2 generators");

  unsigned space = 0;
  auto* matrix = app.add_subcommand("matrix", "Matrix of an operator on P_n");
  matrix->add_option("name", opname)->required();
  matrix->add_option("n", space)->required();
  matrix->add_option("--format", format, "text or json");
  matrix->add_option("--mark", mark, "Mark n for g2 generators");

  unsigned degree = 4;
  std::string subset = "lowering";
  auto* decompose = app.add_subcommand("decompose", "Expand an operator over ordered g2 generator monomials");
  decompose->add_option("name", opname)->required();
  decompose->add_option("--degree", degree, "Total degree bound");
  decompose->add_option("--subset", subset, "lowering | all");
  decompose->add_option("--format", format, "text or json");

  std::string text, vars = "r,u";
  auto* parse = app.add_subcommand("parse", "Parse an operator and print its canonical form");
  parse->add_option("expr", text)->required();
  parse->add_option("--vars", vars, "r,u | r,rho | r,rho,phi | x,y,z");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    check_format(format);
    if (*verify) {
      Bindings bindings;
      for (const auto& p : params) bindings.insert(parse_binding(p));
      auto entries = match_checks(glob);
      if (entries.empty()) {
        std::cerr << "no checks matched '" << glob << "'\n";
        return kUsage;
      }
      auto reports = run_checks(entries, bindings, jobs);
      if (no_timing)
        for (auto& r : reports) r.elapsed_ms = 0;
      bool ok = true;
      json arr = json::array();
      for (const auto& r : reports) {
        ok = ok && r.status == Status::Pass;
        if (format == "json") {
          arr.push_back(report_json(r));
        } else {
          print_text(std::cout, r, !no_timing);
        }
      }
      if (format == "json") std::cout << arr.dump(2) << "\n";
      return ok ? 0 : 1;
    }
    if (*list) {
      for (const auto& e : check_registry()) std::cout << e.name << "  " << e.summary << "\n";
      return 0;
    }
    if (*show) {
      std::cout << require_operator(opname, mark).str() << "\n";
      return 0;
    }
    if (*matrix) {
      OperatorMatrix m = matrix_of(require_operator(opname, mark), space);
      const auto& basis = m.basis();
      if (format == "json") {
        json j{{"operator", opname}, {"n", space}, {"basis", json::array()}, {"rows", json::array()}};
        for (std::size_t k = 0; k < basis.size(); ++k) j["basis"].push_back(basis.label(k));
        for (std::size_t i = 0; i < m.size(); ++i) {
          json row = json::array();
          for (std::size_t k = 0; k < m.size(); ++k) row.push_back(m(i, k).str());
          j["rows"].push_back(row);
        }
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "basis:";
        for (std::size_t k = 0; k < basis.size(); ++k) std::cout << " " << basis.label(k);
        std::cout << "\n";
        for (std::size_t i = 0; i < m.size(); ++i) {
          for (std::size_t k = 0; k < m.size(); ++k) std::cout << (k ? " | " : "") << m(i, k).str();
          std::cout << "\n";
        }
      }
      return 0;
    }
    if (*decompose) {
      if (subset != "lowering" && subset != "all") throw UsageError("subset must be lowering or all");
      auto gens = g2::build_generators(Expr(0)).subset(subset == "all" ? "all" : "lowering+gl2");
      auto dec = g2::decompose(opname, require_operator(opname, 0), gens, degree);
      if (format == "json") {
        json j{{"target", opname}, {"subset", dec.subset}, {"degree", degree}, {"exact", dec.exact()}};
        json table = json::object();
        for (const auto& [k, v] : dec.table) table[k] = v;
        j["table"] = table;
        if (!dec.exact()) j["residual_terms"] = dec.combination.residual.terms().size();
        if (!dec.obstruction.empty()) j["obstruction"] = dec.obstruction;
        std::cout << j.dump(2) << "\n";
      } else if (dec.exact()) {
        for (const auto& [k, v] : dec.table) std::cout << k << "  " << v << "\n";
      } else {
        std::cout << "no exact decomposition (" << dec.combination.residual.terms().size() << " residual terms)\n";
        if (!dec.obstruction.empty()) std::cout << "obstruction: " << dec.obstruction << "\n";
      }
      return dec.exact() ? 0 : 1;
    }
    if (*parse) {
      std::cout << parse_operator(text, spec_for(vars)).str() << "\n";
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvarianceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
