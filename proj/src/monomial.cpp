#include "opcalc/monomial.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace opcalc {
namespace symbols {
namespace {

struct Table {
  std::mutex mu;
  std::vector<std::string> names{"r",    "u",  "rho", "phi",   "x", "y", "z", "t",
                                 "s",    "beta", "mu", "p", "alpha", "E", "n", "lambda"};
};

Table& table() {
  static Table t;
  return t;
}

}  // namespace

SymbolId intern(std::string_view name) {
  auto& t = table();
  std::lock_guard lock(t.mu);
  for (std::size_t i = 0; i < t.names.size(); ++i)
    if (t.names[i] == name) return static_cast<SymbolId>(i);
  if (t.names.size() >= kMaxSymbols) throw std::length_error("symbol table full");
  t.names.emplace_back(name);
  return static_cast<SymbolId>(t.names.size() - 1);
}

bool find(std::string_view name, SymbolId& out) {
  auto& t = table();
  std::lock_guard lock(t.mu);
  for (std::size_t i = 0; i < t.names.size(); ++i) {
    if (t.names[i] == name) {
      out = static_cast<SymbolId>(i);
      return true;
    }
  }
  return false;
}

const std::string& name(SymbolId id) {
  auto& t = table();
  std::lock_guard lock(t.mu);
  if (id >= t.names.size()) throw std::out_of_range("unknown symbol id");
  return t.names[id];
}

}  // namespace symbols

void Monomial::set(SymbolId s, unsigned e) {
  unsigned old = bytes_[1 + s];
  unsigned deg = bytes_[0] - old + e;
  if (e > 255 || deg > 255) throw std::overflow_error("monomial exponent overflow");
  bytes_[1 + s] = static_cast<std::uint8_t>(e);
  bytes_[0] = static_cast<std::uint8_t>(deg);
}

Monomial& Monomial::operator*=(const Monomial& o) {
  for (std::size_t i = 0; i < bytes_.size(); ++i) {
    unsigned v = unsigned(bytes_[i]) + o.bytes_[i];
    if (v > 255) throw std::overflow_error("monomial exponent overflow");
    bytes_[i] = static_cast<std::uint8_t>(v);
  }
  return *this;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial m;
  for (std::size_t i = 0; i < bytes_.size(); ++i)
    m.bytes_[i] = static_cast<std::uint8_t>(bytes_[i] - o.bytes_[i]);
  return m;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial m;
  unsigned deg = 0;
  for (std::size_t i = 1; i < a.bytes_.size(); ++i) {
    m.bytes_[i] = std::min(a.bytes_[i], b.bytes_[i]);
    deg += m.bytes_[i];
  }
  m.bytes_[0] = static_cast<std::uint8_t>(deg);
  return m;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  Monomial m;
  unsigned deg = 0;
  for (std::size_t i = 1; i < a.bytes_.size(); ++i) {
    m.bytes_[i] = std::max(a.bytes_[i], b.bytes_[i]);
    deg += m.bytes_[i];
  }
  if (deg > 255) throw std::overflow_error("monomial exponent overflow");
  m.bytes_[0] = static_cast<std::uint8_t>(deg);
  return m;
}

std::string Monomial::str() const {
  if (is_one()) return "1";
  std::string s;
  for (std::size_t i = 1; i < bytes_.size(); ++i) {
    if (bytes_[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += symbols::name(static_cast<SymbolId>(i - 1));
    if (bytes_[i] > 1) s += "^" + std::to_string(bytes_[i]);
  }
  return s;
}

std::size_t Monomial::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto b : bytes_) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace opcalc
