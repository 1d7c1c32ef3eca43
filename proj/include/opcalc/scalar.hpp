#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace opcalc {

using Rational = mpq_class;
using Integer = mpz_class;

/// Exact Gaussian rational re + im*i. Both parts are kept canonical by GMP
/// (coprime numerator/denominator, positive denominator, zero as 0/1).
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(const Rational& re) : re_(re) {}  // NOLINT
  Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}
  Scalar(long num, long den) : re_(num, den) { re_.canonicalize(); }

  static Scalar i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  Scalar conj() const { return {re_, -im_}; }
  /// |z|^2, always real.
  Rational norm() const { return re_ * re_ + im_ * im_; }

  Scalar operator-() const { return {-re_, -im_}; }
  Scalar& operator+=(const Scalar& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// Canonical text: "3/2", "-i", "(1/2+3*i)".
  std::string str() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

/// Modular image of a rational; returns false when the prime divides the denominator.
bool to_mod(const Rational& q, std::uint64_t prime, std::uint64_t& out);

}  // namespace opcalc
