// Acceptance criteria 1-9. Usage: acceptance [criterion...]; with no
// arguments every criterion runs. Prints one PASS/FAIL line per criterion,
// followed by indented detail for failing checks. Tolerance is exact zero.
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>

#include "cli_runner.hpp"
#include "opcalc/flagrep.hpp"
#include "opcalc/g2algebra.hpp"
#include "opcalc/registry.hpp"
#include "opcalc/rings.hpp"
#include "test_support.hpp"

using namespace opcalc;
using namespace opcalc::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;
};

struct Criterion {
  int id;
  std::string title;
  double limit_s;
  std::function<Outcome()> run;
};

Outcome run_named(const std::vector<std::string>& names) {
  Outcome out;
  std::vector<const CheckEntry*> entries;
  for (const auto& n : names) {
    auto m = match_checks(n);
    if (m.size() != 1) {
      out.pass = false;
      out.details.push_back(n + ": not registered");
      continue;
    }
    entries.push_back(m.front());
  }
  for (const auto& r : run_checks(entries, {}, 1)) {
    std::string line = r.check + ": " + status_name(r.status);
    if (r.status == Status::Pass) {
      out.details.push_back(line);
      continue;
    }
    out.pass = false;
    out.details.push_back(line + " (" + std::to_string(r.residual_terms) + " residual terms)");
    for (std::size_t k = 0; k < r.witnesses.size() && k < 2; ++k) out.details.push_back("  witness: " + r.witnesses[k]);
    for (std::size_t k = 0; k < r.notes.size() && k < 3; ++k) out.details.push_back("  note: " + r.notes[k]);
  }
  return out;
}

void property(Outcome& out, const std::string& name, int cases, const std::function<bool(std::mt19937&)>& body) {
  std::mt19937 rng(static_cast<unsigned>(std::hash<std::string>{}(name)));
  for (int k = 0; k < cases; ++k) {
    if (!body(rng)) {
      out.pass = false;
      out.details.push_back(name + ": counterexample at case " + std::to_string(k));
      return;
    }
  }
  out.details.push_back(name + ": " + std::to_string(cases) + " cases");
}

DiffOp random_flag_op(std::mt19937& rng, const std::vector<g2::Generator>& gens) {
  std::uniform_int_distribution<int> coef(-3, 3);
  DiffOp a = Expr(coef(rng)) * DiffOp::identity(gens.front().op.spec());
  for (const auto& g : gens) {
    int c = coef(rng);
    if (c != 0) a = a + Expr(c) * g.op;
  }
  return a;
}

Outcome properties() {
  Outcome out;
  property(out, "Jacobi identity", 1000, [](std::mt19937& rng) {
    DiffOp a = random_op(rng, 2), b = random_op(rng, 2), c = random_op(rng, 2);
    return (commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b)))
        .is_zero();
  });
  property(out, "associativity of composition", 1000, [](std::mt19937& rng) {
    DiffOp a = random_op(rng, 2), b = random_op(rng, 2), c = random_op(rng, 2);
    return compose(compose(a, b), c) == compose(a, compose(b, c));
  });
  std::vector<std::vector<g2::Generator>> gens;
  for (unsigned n = 0; n <= 5; ++n) gens.push_back(g2::build_generators(Expr(static_cast<long>(n))).subset("lowering+gl2"));
  property(out, "matrix homomorphism on P_n", 1000, [&](std::mt19937& rng) {
    unsigned n = rng() % 6;
    DiffOp a = random_flag_op(rng, gens[n]), b = random_flag_op(rng, gens[n]);
    OperatorMatrix ma = matrix_of(a, n), mb = matrix_of(b, n);
    return matrix_of(compose(a, b), n) == ma * mb && matrix_of(commutator(a, b), n) == ma * mb - mb * ma;
  });
  property(out, "equality oracle vs term-map equality", 1000, [](std::mt19937& rng) {
    DiffOp a = random_op(rng, 3);
    DiffOp b = (rng() % 2) ? a : a + random_op(rng, 3) - random_op(rng, 3);
    return equality_oracle(a, b, std::max(a.order(), b.order())) == (a == b);
  });

  std::string unstable = first_unstable_operator();
  if (unstable.empty()) {
    out.details.push_back("CLI show/parse round trip: " + std::to_string(builtin_operators().size()) + " operators");
  } else {
    out.pass = false;
    out.details.push_back("CLI show/parse round trip: unstable on " + unstable);
  }
  std::string args = "verify '[3g]*' --format json --no-timing";
  auto a = run_cli(args + " --jobs 1"), b = run_cli(args + " --jobs 3"), c = run_cli(args + " --jobs 3");
  if (!a.out.empty() && a.out == b.out && b.out == c.out) {
    out.details.push_back("CLI determinism: identical reports across runs and job counts");
  } else {
    out.pass = false;
    out.details.push_back("CLI determinism: reports differ");
  }
  return out;
}

std::vector<Criterion> criteria() {
  return {
      {1, "3D identity suite with a B ordering, and so(4)", 30,
       [] {
         return run_named({"3d.eq7", "3d.integrals.H", "3d.eq4", "3d.eq5", "3d.eq6.LL", "3d.eq6.AL", "3d.eq6.AA",
                           "3d.LK", "3d.B", "3d.so4"});
       }},
      {2, "K -> h pipeline at both parities, h = h_a under u = rho^2", 10,
       [] { return run_named({"2d.pipeline.p0", "2d.pipeline.p1", "2d.relate"}); }},
      {3, "h_a commutes with l_a, b_a, c for symbolic beta, mu, p", 30,
       [] { return run_named({"2d.integrals"}); }},
      {4, "leading terms of c", 60, [] { return run_named({"2d.c.leading"}); }},
      {5, "cubic closure of [c, l_a] and [c, b_a]", 300, [] { return run_named({"2d.cubic.l", "2d.cubic.b"}); }},
      {6, "spectrum of h_a on P_n, n <= 8", 60, [] { return run_named({"2d.spectrum"}); }},
      {7, "cometric, curvature and Schrodinger form", 10,
       [] { return run_named({"geo.metric", "geo.curvature", "geo.schrodinger"}); }},
      {8, "generator forms, flag invariance, b_a and c in the lowering enveloping algebra", 300,
       [] { return run_named({"g2.lie", "g2.flag", "g2.decompose.b_a", "g2.decompose.c"}); }},
      {9, "property suites, CLI round trip and determinism", 600, properties},
  };
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> wanted;
  for (int k = 1; k < argc; ++k) {
    try {
      wanted.push_back(std::stoi(argv[k]));
    } catch (const std::exception&) {
      std::cerr << "usage: acceptance [criterion 1-9 ...]\n";
      return 2;
    }
  }
  bool all_pass = true;
  for (const auto& c : criteria()) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.details.push_back(std::string("error: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (s > c.limit_s) {
      o.pass = false;
      o.details.push_back("runtime above the " + std::to_string(static_cast<int>(c.limit_s)) + " s budget");
    }
    all_pass = all_pass && o.pass;
    std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << c.title << "  ["
              << std::fixed << std::setprecision(1) << s << " s]\n";
    for (const auto& d : o.details) std::cout << "    " << d << "\n";
    std::cout.flush();
  }
  return all_pass ? 0 : 1;
}
