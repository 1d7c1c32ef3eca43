#include "opcalc/scalar.hpp"

namespace opcalc {

Scalar& Scalar::operator*=(const Scalar& o) {
  if (o.is_real()) {
    re_ *= o.re_;
    im_ *= o.re_;
    return *this;
  }
  if (is_real()) {
    im_ = re_ * o.im_;
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw std::domain_error("Scalar: division by zero");
  if (o.is_real()) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  Rational n = o.norm();
  *this *= o.conj();
  re_ /= n;
  im_ /= n;
  return *this;
}

std::string Scalar::str() const {
  if (is_real()) return re_.get_str();
  std::string im;
  if (im_ == 1) {
    im = "i";
  } else if (im_ == -1) {
    im = "-i";
  } else {
    im = im_.get_str() + "*i";
  }
  if (sgn(re_) == 0) return im;
  std::string s = "(" + re_.get_str();
  if (sgn(im_) > 0) s += "+";
  return s + im + ")";
}

bool to_mod(const Rational& q, std::uint64_t prime, std::uint64_t& out) {
  Integer p;
  mpz_set_ui(p.get_mpz_t(), prime);
  Integer den = q.get_den() % p;
  if (den == 0) return false;
  Integer num = q.get_num() % p;
  if (num < 0) num += p;
  Integer inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
  Integer r = (num * inv) % p;
  out = r.get_ui();
  return true;
}

}  // namespace opcalc
