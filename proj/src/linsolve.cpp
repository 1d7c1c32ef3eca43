#include "opcalc/linsolve.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace opcalc {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }
u64 addmod(u64 a, u64 b, u64 p) {
  u64 s = a + b;
  return s >= p ? s - p : s;
}
u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}
u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

// Descending primes just below 2^61.
u64 nth_prime(std::size_t k) {
  static std::vector<u64> cache;
  while (cache.size() <= k) {
    Integer start = cache.empty() ? (Integer(1) << 61) : Integer(static_cast<unsigned long>(cache.back()));
    Integer q = start - 1;
    while (mpz_probab_prime_p(q.get_mpz_t(), 30) == 0) --q;
    cache.push_back(q.get_ui());
  }
  return cache[k];
}

using ModRow = std::vector<std::pair<std::size_t, u64>>;

// row -= f * pivot, both sorted by column.
ModRow axpy(const ModRow& row, u64 f, const ModRow& pivot, u64 p) {
  ModRow out;
  out.reserve(row.size() + pivot.size());
  std::size_t i = 0, j = 0;
  while (i < row.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
      out.push_back(row[i++]);
    } else if (i == row.size() || pivot[j].first < row[i].first) {
      out.emplace_back(pivot[j].first, submod(0, mulmod(f, pivot[j].second, p), p));
      ++j;
    } else {
      u64 v = submod(row[i].second, mulmod(f, pivot[j].second, p), p);
      if (v) out.emplace_back(row[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

struct ModResult {
  bool ok = true;  // false when the prime divides a denominator
  std::vector<std::size_t> pivots;
  // x[k][j]: solution for right-hand side k.
  std::vector<std::vector<u64>> x;
  std::vector<std::vector<std::size_t>> conflicts;
};

bool reduce_mod(const Rational& q, u64 p, u64& out) { return to_mod(q, p, out); }

ModResult solve_mod(const std::vector<SparseColumn>& columns, const std::vector<SparseColumn>& rhs,
                    std::size_t rows, u64 p) {
  ModResult res;
  std::size_t nc = columns.size();
  std::vector<ModRow> mat(rows);
  auto load = [&](const SparseColumn& col, std::size_t j) {
    for (const auto& [row, val] : col) {
      if (row >= rows) throw std::out_of_range("sparse column row index out of range");
      u64 v;
      if (!reduce_mod(val, p, v)) return false;
      if (v) mat[row].emplace_back(j, v);
    }
    return true;
  };
  for (std::size_t j = 0; j < nc; ++j)
    if (!load(columns[j], j)) return {false, {}, {}, {}};
  for (std::size_t k = 0; k < rhs.size(); ++k)
    if (!load(rhs[k], nc + k)) return {false, {}, {}, {}};

  std::map<std::size_t, ModRow> pivots;
  res.conflicts.resize(rhs.size());
  for (std::size_t r = 0; r < rows; ++r) {
    ModRow row = std::move(mat[r]);
    std::sort(row.begin(), row.end());
    while (!row.empty() && row.front().first < nc) {
      auto it = pivots.find(row.front().first);
      if (it == pivots.end()) break;
      row = axpy(row, row.front().second, it->second, p);
    }
    if (row.empty()) continue;
    if (row.front().first >= nc) {
      for (const auto& [c, v] : row) res.conflicts[c - nc].push_back(r);
      continue;
    }
    u64 inv = invmod(row.front().second, p);
    for (auto& e : row) e.second = mulmod(e.second, inv, p);
    pivots.emplace(row.front().first, std::move(row));
  }
  for (const auto& [c, row] : pivots) res.pivots.push_back(c);
  res.x.assign(rhs.size(), std::vector<u64>(nc, 0));
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    const ModRow& row = it->second;
    for (std::size_t k = 0; k < rhs.size(); ++k) {
      u64 v = 0;
      for (std::size_t e = 1; e < row.size(); ++e) {
        std::size_t c = row[e].first;
        if (c >= nc) {
          if (c == nc + k) v = addmod(v, row[e].second, p);
        } else if (res.x[k][c]) {
          v = submod(v, mulmod(row[e].second, res.x[k][c], p), p);
        }
      }
      res.x[k][it->first] = v;
    }
  }
  return res;
}

bool rational_reconstruct(const Integer& a, const Integer& m, Rational& out) {
  Integer bound;
  mpz_sqrt(bound.get_mpz_t(), Integer(m / 2).get_mpz_t());
  Integer r0 = m, r1 = a, t0 = 0, t1 = 1;
  while (r1 > bound) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1;
    Integer t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return false;
  out = Rational(r1, t1);
  out.canonicalize();
  return true;
}

bool verify(const std::vector<SparseColumn>& columns, const SparseColumn& rhs, const std::vector<Rational>& x,
            std::size_t rows) {
  std::vector<Rational> acc(rows);
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (sgn(x[j]) == 0) continue;
    for (const auto& [row, val] : columns[j]) acc[row] += val * x[j];
  }
  for (const auto& [row, val] : rhs) acc[row] -= val;
  return std::all_of(acc.begin(), acc.end(), [](const Rational& q) { return sgn(q) == 0; });
}

}  // namespace

std::vector<SparseSolution> solve_sparse_multi(const std::vector<SparseColumn>& columns,
                                               const std::vector<SparseColumn>& rhs, std::size_t rows) {
  std::size_t nc = columns.size();
  std::vector<SparseSolution> out(rhs.size());
  std::vector<bool> done(rhs.size(), false);
  std::vector<std::vector<Integer>> residues(rhs.size(), std::vector<Integer>(nc));
  std::vector<std::vector<Rational>> previous(rhs.size());
  Integer modulus = 1;
  std::vector<std::size_t> pivot_set;
  constexpr std::size_t kMaxPrimes = 64;
  std::size_t used = 0;
  for (std::size_t k = 0; k < kMaxPrimes && std::count(done.begin(), done.end(), false) > 0; ++k) {
    u64 p = nth_prime(k);
    ModResult mr = solve_mod(columns, rhs, rows, p);
    if (!mr.ok) continue;
    if (used == 0) {
      pivot_set = mr.pivots;
    } else if (mr.pivots != pivot_set) {
      continue;  // unlucky prime: rank drop
    }
    Integer pz(static_cast<unsigned long>(p));
    for (std::size_t t = 0; t < rhs.size(); ++t) {
      if (done[t]) continue;
      // CRT: combine residues mod `modulus` with x mod p.
      for (std::size_t j = 0; j < nc; ++j) {
        Integer xj(static_cast<unsigned long>(mr.x[t][j]));
        if (used == 0) {
          residues[t][j] = xj;
          continue;
        }
        Integer diff = (xj - residues[t][j]) % pz;
        if (diff < 0) diff += pz;
        Integer minv;
        Integer mm = modulus % pz;
        mpz_invert(minv.get_mpz_t(), mm.get_mpz_t(), pz.get_mpz_t());
        Integer h = (diff * minv) % pz;
        residues[t][j] += modulus * h;
      }
    }
    Integer new_mod = modulus * pz;
    for (std::size_t t = 0; t < rhs.size(); ++t) {
      if (done[t]) continue;
      SparseSolution& sol = out[t];
      sol.rank = pivot_set.size();
      sol.consistent = mr.conflicts[t].empty();
      if (!sol.consistent) {
        sol.conflicting_rows.assign(mr.conflicts[t].begin(),
                                    mr.conflicts[t].begin() + std::min<std::size_t>(mr.conflicts[t].size(), 8));
      }
      std::vector<Rational> x(nc);
      bool rec = true;
      for (std::size_t j = 0; j < nc && rec; ++j) rec = rational_reconstruct(residues[t][j], new_mod, x[j]);
      if (!rec) continue;
      if (sol.consistent) {
        if (verify(columns, rhs[t], x, rows)) {
          sol.x = std::move(x);
          done[t] = true;
        }
      } else if (x == previous[t]) {
        // Inconsistent: accept once the reconstruction is stable.
        sol.x = std::move(x);
        done[t] = true;
      } else {
        previous[t] = std::move(x);
      }
    }
    modulus = new_mod;
    ++used;
  }
  for (std::size_t t = 0; t < rhs.size(); ++t)
    if (!done[t] && out[t].consistent) throw std::runtime_error("rational reconstruction did not converge");
  return out;
}

SparseSolution solve_sparse(const std::vector<SparseColumn>& columns, const SparseColumn& rhs, std::size_t rows) {
  return solve_sparse_multi(columns, {rhs}, rows).front();
}

std::vector<Monomial> parameter_monomials(const std::vector<SymbolId>& params, unsigned max_degree) {
  std::vector<Monomial> out{Monomial()};
  for (auto s : params) {
    std::vector<Monomial> next;
    for (const auto& m : out)
      for (unsigned e = 0; e <= max_degree; ++e) {
        Monomial t = m;
        t.set(s, e);
        next.push_back(t);
      }
    out = std::move(next);
  }
  return out;
}

namespace {

// Row numbering of the coefficient equations (derivative index, monomial,
// imaginary flag).
class RowIndex {
 public:
  std::size_t operator()(const DerivIndex& idx, const Monomial& m, bool imag) {
    auto [it, inserted] = rows_.try_emplace(Key{idx, m, imag}, rows_.size());
    return it->second;
  }
  std::size_t size() const { return rows_.size(); }

 private:
  struct Key {
    DerivIndex idx;
    Monomial m;
    bool imag;
    auto operator<=>(const Key&) const = default;
  };
  std::map<Key, std::size_t> rows_;
};

void require_polynomial(const DiffOp& a) {
  for (const auto& [idx, c] : a.terms())
    if (!c.is_polynomial()) throw std::invalid_argument("linear combination needs polynomial coefficients");
}

// Column of `scale * monomial * a`, where scale is 1 or i.
SparseColumn column_of(const DiffOp& a, const Monomial& mult, bool times_i, RowIndex& rows) {
  std::map<std::size_t, Rational> acc;
  for (const auto& [idx, c] : a.terms()) {
    for (const auto& [m, s] : c.num().terms()) {
      Monomial mm = m * mult;
      Scalar v = times_i ? s * Scalar::i() : s;
      if (sgn(v.re()) != 0) acc[rows(idx, mm, false)] += v.re();
      if (sgn(v.im()) != 0) acc[rows(idx, mm, true)] += v.im();
    }
  }
  SparseColumn col;
  for (auto& [r, q] : acc)
    if (sgn(q) != 0) col.emplace_back(r, q);
  return col;
}

}  // namespace

Combination solve_combination(const std::vector<DiffOp>& basis, const DiffOp& target,
                              const std::vector<std::vector<Monomial>>& allowed, bool complex_coefficients) {
  require_polynomial(target);
  for (const auto& b : basis) {
    require_polynomial(b);
    target.check_same_spec(b);
  }
  std::uint32_t space = 0;
  for (auto v : target.spec()->vars()) space |= 1u << v;
  bool parameter_free = std::all_of(basis.begin(), basis.end(), [&](const DiffOp& b) {
    return std::all_of(b.terms().begin(), b.terms().end(),
                       [&](const auto& t) { return (t.second.symbol_mask() & ~space) == 0; });
  });

  Combination res{false, std::vector<Expr>(basis.size()), DiffOp(target.spec()), 0, 0};
  RowIndex rows;
  std::vector<Scalar> units{Scalar(1)};
  if (complex_coefficients) units.push_back(Scalar::i());

  if (parameter_free) {
    std::vector<SparseColumn> cols;
    for (const auto& b : basis)
      for (std::size_t u = 0; u < units.size(); ++u) cols.push_back(column_of(b, Monomial(), u == 1, rows));
    // Split the target by parameter monomial.
    std::map<Monomial, DiffOp> parts;
    for (const auto& [idx, c] : target.terms()) {
      for (const auto& [m, s] : c.num().terms()) {
        Monomial spatial, param;
        for (SymbolId v = 0; v < kMaxSymbols; ++v) {
          if (m[v] == 0) continue;
          if ((space >> v) & 1u) {
            spatial.set(v, m[v]);
          } else {
            param.set(v, m[v]);
          }
        }
        auto it = parts.try_emplace(param, target.spec()).first;
        it->second.add_term(idx, Expr(MultiPoly::term(spatial, s)));
      }
    }
    std::vector<Monomial> keys;
    std::vector<SparseColumn> rhs;
    for (const auto& [param, part] : parts) {
      keys.push_back(param);
      rhs.push_back(column_of(part, Monomial(), false, rows));
    }
    res.unknowns = cols.size();
    res.equations = rows.size();
    auto sols = solve_sparse_multi(cols, rhs, rows.size());
    for (std::size_t t = 0; t < sols.size(); ++t) {
      if (sols[t].x.empty()) continue;
      for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t u = 0; u < units.size(); ++u) {
          const Rational& q = sols[t].x[j * units.size() + u];
          if (sgn(q) != 0) res.coefficients[j] += Expr(MultiPoly::term(keys[t], Scalar(q) * units[u]));
        }
    }
  } else {
    if (allowed.size() != basis.size()) throw std::invalid_argument("one allowed-monomial list per basis element");
    std::vector<SparseColumn> cols;
    std::vector<std::pair<std::size_t, Scalar>> owner;  // basis index, multiplier unit
    std::vector<Monomial> mono;
    for (std::size_t j = 0; j < basis.size(); ++j)
      for (const auto& m : allowed[j])
        for (std::size_t u = 0; u < units.size(); ++u) {
          cols.push_back(column_of(basis[j], m, u == 1, rows));
          owner.emplace_back(j, units[u]);
          mono.push_back(m);
        }
    SparseColumn rhs = column_of(target, Monomial(), false, rows);
    res.unknowns = cols.size();
    res.equations = rows.size();
    SparseSolution sol = solve_sparse(cols, rhs, rows.size());
    if (!sol.x.empty()) {
      for (std::size_t k = 0; k < cols.size(); ++k)
        if (sgn(sol.x[k]) != 0)
          res.coefficients[owner[k].first] += Expr(MultiPoly::term(mono[k], Scalar(sol.x[k]) * owner[k].second));
    }
  }
  DiffOp recon(target.spec());
  for (std::size_t j = 0; j < basis.size(); ++j)
    if (!res.coefficients[j].is_zero()) recon += res.coefficients[j] * basis[j];
  res.residual = target - recon;
  res.exact = res.residual.is_zero();
  return res;
}

}  // namespace opcalc
