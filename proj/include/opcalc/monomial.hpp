#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <functional>
#include <string>
#include <string_view>

namespace opcalc {

/// Index into the global symbol table.
using SymbolId = std::uint8_t;

inline constexpr std::size_t kMaxSymbols = 23;

/// Process-wide symbol table. The first entries are fixed so that term order
/// (and therefore every printed report) is identical from run to run.
namespace symbols {
inline constexpr SymbolId r = 0;
inline constexpr SymbolId u = 1;
inline constexpr SymbolId rho = 2;
inline constexpr SymbolId phi = 3;
inline constexpr SymbolId x = 4;
inline constexpr SymbolId y = 5;
inline constexpr SymbolId z = 6;
inline constexpr SymbolId t = 7;
inline constexpr SymbolId s = 8;
inline constexpr SymbolId beta = 9;
inline constexpr SymbolId mu = 10;
inline constexpr SymbolId p = 11;
inline constexpr SymbolId alpha = 12;
inline constexpr SymbolId E = 13;
inline constexpr SymbolId n = 14;
inline constexpr SymbolId lambda = 15;

/// Looks up (or registers) a symbol by name. Throws when the table is full.
SymbolId intern(std::string_view name);
/// Lookup only; returns false when unknown.
bool find(std::string_view name, SymbolId& out);
const std::string& name(SymbolId id);
}  // namespace symbols

/// Exponent vector over the global symbol table. Byte 0 carries the total
/// degree, so a plain byte comparison realizes graded-lexicographic order.
class Monomial {
 public:
  Monomial() { bytes_.fill(0); }

  static Monomial var(SymbolId s, unsigned e = 1) {
    Monomial m;
    m.set(s, e);
    return m;
  }

  unsigned degree() const { return bytes_[0]; }
  unsigned operator[](SymbolId s) const { return bytes_[1 + s]; }
  void set(SymbolId s, unsigned e);

  bool is_one() const { return bytes_[0] == 0; }
  bool divides(const Monomial& o) const {
    for (std::size_t i = 1; i < bytes_.size(); ++i)
      if (bytes_[i] > o.bytes_[i]) return false;
    return true;
  }

  Monomial& operator*=(const Monomial& o);
  friend Monomial operator*(Monomial a, const Monomial& b) { return a *= b; }
  /// Exact quotient; caller guarantees divisibility.
  Monomial operator/(const Monomial& o) const;

  static Monomial gcd(const Monomial& a, const Monomial& b);
  static Monomial lcm(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return std::memcmp(a.bytes_.data(), b.bytes_.data(), a.bytes_.size()) == 0;
  }
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    int c = std::memcmp(a.bytes_.data(), b.bytes_.data(), a.bytes_.size());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// "r^2*u", or "1" for the empty monomial.
  std::string str() const;
  std::size_t hash() const;

 private:
  std::array<std::uint8_t, kMaxSymbols + 1> bytes_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace opcalc
