#include "opcalc/registry.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

#include "opcalc/coulomb2d.hpp"
#include "opcalc/coulomb3d.hpp"
#include "opcalc/g2algebra.hpp"
#include "opcalc/geometry.hpp"
#include "opcalc/parser.hpp"

namespace opcalc {

namespace {

std::vector<CheckEntry> build_registry() {
  namespace c2 = coulomb2d;
  namespace c3 = coulomb3d;
  std::vector<CheckEntry> out{
      {"3d.eq7", "r(H - E) = K - alpha", c3::check_eq7},
      {"3d.integrals.H", "L and A commute with H", c3::check_h_integrals},
      {"3d.eq4", "A^2 = alpha^2 + 2H(L^2 + 1)", c3::check_eq4},
      {"3d.eq5", "L.A = A.L = 0", c3::check_eq5},
      {"3d.eq6.LL", "[L_i, L_j] = i eps L_k", [](const Bindings& b) { return c3::check_eq6("LL", b); }},
      {"3d.eq6.AL", "[A_i, L_j] = i eps A_k", [](const Bindings& b) { return c3::check_eq6("AL", b); }},
      {"3d.eq6.AA", "[A_i, A_j] = -2i eps L_k H", [](const Bindings& b) { return c3::check_eq6("AA", b); }},
      {"3d.LK", "L commutes with K", c3::check_lk},
      {"3d.B", "some reading of B satisfies every B identity", c3::check_b_sweep},
      {"3d.so4", "so(4) after E = -beta^2/2, B -> B/beta", c3::check_so4},
      {"2d.pipeline.p0", "K -> h at parity 0", [](const Bindings& b) { return c2::check_pipeline(0, b); }},
      {"2d.pipeline.p1", "K -> h at parity 1", [](const Bindings& b) { return c2::check_pipeline(1, b); }},
      {"2d.relate", "h_a with u = rho^2 equals h", c2::check_relate_h_ha},
      {"2d.c.leading", "order-5 and order-4 terms of c", c2::check_c_leading},
      {"2d.integrals", "h_a commutes with l_a, b_a, c", c2::check_integrals},
      {"2d.cubic.l", "[c, l_a] as a cubic in h_a, l_a, b_a, c", [](const Bindings& b) { return c2::check_cubic('l', b); }},
      {"2d.cubic.b", "[c, b_a] as a cubic in h_a, l_a, b_a, c", [](const Bindings& b) { return c2::check_cubic('b', b); }},
      {"2d.spectrum", "characteristic polynomials of h_a on P_n, n <= 8",
       [](const Bindings& b) { return c2::check_spectrum(8, b); }},
      {"2d.flag", "h_a, l_a, b_a, c preserve P_n, n <= 8",
       [](const Bindings& b) { return c2::check_flag_invariance(8, b); }},
      {"geo.metric", "cometric determinant and inverse", geometry::check_metric},
      {"geo.curvature", "scalar curvature of the 2D metric", geometry::check_curvature},
      {"geo.laplacian", "Laplace-Beltrami structure", geometry::check_laplacian},
      {"geo.schrodinger", "gauge rotation of h_a to -Delta_LB + V_eff", geometry::check_schrodinger},
      {"g2.flag", "generators preserve P_n", [](const Bindings& b) { return g2::check_flag_invariance({0, 1, 2, 3, 5}, b); }},
      {"g2.structure.gl2", "lowering + gl(2) subset closes",
       [](const Bindings& b) { return g2::check_structure("lowering+gl2", b); }},
      {"g2.structure.sl2", "sl(2) realization closes", [](const Bindings& b) { return g2::check_structure("sl2", b); }},
      {"g2.lie", "generator forms of h_a and l_a", g2::check_lie_forms},
      {"g2.jacobi", "Jacobi identity on the lowering + gl(2) subset", g2::check_jacobi},
      {"g2.decompose.h_a", "h_a in the enveloping algebra, degree 2",
       [](const Bindings& b) { return g2::check_decompose("h_a", 2, b); }},
      {"g2.decompose.l_a", "l_a in the enveloping algebra, degree 2",
       [](const Bindings& b) { return g2::check_decompose("l_a", 2, b); }},
      {"g2.decompose.b_a", "b_a in the enveloping algebra, degree 4",
       [](const Bindings& b) { return g2::check_decompose("b_a", 4, b); }},
      {"g2.decompose.c", "c in the enveloping algebra, degree 4",
       [](const Bindings& b) { return g2::check_decompose("c", 4, b); }},
  };
  for (const auto& cand : c3::b_candidates()) {
    std::string label = cand.label;
    out.push_back({"3d.B." + label, cand.description, [label](const Bindings& b) {
                     for (const auto& c : c3::b_candidates())
                       if (c.label == label) return c3::check_b_candidate(c, b);
                     throw std::logic_error("candidate vanished");
                   }});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return out;
}

}  // namespace

const std::vector<CheckEntry>& check_registry() {
  static const std::vector<CheckEntry> all = build_registry();
  return all;
}

std::vector<const CheckEntry*> match_checks(const std::string& glob) {
  std::vector<const CheckEntry*> out;
  for (const auto& e : check_registry())
    if (fnmatch(glob.c_str(), e.name.c_str(), 0) == 0) out.push_back(&e);
  return out;
}

std::vector<CheckReport> run_checks(const std::vector<const CheckEntry*>& entries, const Bindings& bindings,
                                    unsigned jobs) {
  std::vector<CheckReport> out(entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < entries.size();) {
      auto start = std::chrono::steady_clock::now();
      try {
        out[k] = entries[k]->run(bindings);
      } catch (const std::exception& e) {
        out[k] = CheckReport{entries[k]->name, Status::Error, 0, {e.what()}, {}, 0};
        out[k].elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - start)
                                .count();
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(entries.size())));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

std::pair<SymbolId, Expr> parse_binding(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw std::invalid_argument("expected name=value, got '" + text + "'");
  std::string name = text.substr(0, eq);
  SymbolId id;
  if (!symbols::find(name, id)) throw std::invalid_argument("unknown parameter '" + name + "'");
  return {id, parse_expr(text.substr(eq + 1))};
}

}  // namespace opcalc
