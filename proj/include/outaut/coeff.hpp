#pragma once

// Gaussian rationals re + im*i. Over the base Q the imaginary part stays 0.

#include <gmpxx.h>

#include <optional>
#include <string>

#include "outaut/arith.hpp"
#include "outaut/errors.hpp"

namespace outaut {

enum class Base { Rationals, GaussianRationals };

class Coeff {
 public:
  Coeff() = default;
  Coeff(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  Coeff(const mpz_class& v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  Coeff(const mpq_class& re, const mpq_class& im = 0) : re_(re), im_(im) {}  // NOLINT

  static Coeff imag_unit() { return Coeff(mpq_class(0), mpq_class(1)); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }
  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_one() const { return re_ == 1 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  Coeff conj() const { return Coeff(re_, -im_); }
  mpq_class norm() const { return re_ * re_ + im_ * im_; }

  Coeff inverse() const {
    if (is_zero()) throw DivisionByZero();
    mpq_class n = norm();
    return Coeff(re_ / n, -im_ / n);
  }

  Coeff operator-() const { return Coeff(-re_, -im_); }
  Coeff& operator+=(const Coeff& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Coeff& operator-=(const Coeff& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Coeff& operator*=(const Coeff& o) {
    if (im_ == 0 && o.im_ == 0) {
      re_ *= o.re_;
      return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = r;
    return *this;
  }
  Coeff& operator/=(const Coeff& o) {
    if (o.im_ == 0) {
      if (o.re_ == 0) throw DivisionByZero();
      re_ /= o.re_;
      im_ /= o.re_;
      return *this;
    }
    return *this *= o.inverse();
  }
  friend Coeff operator+(Coeff a, const Coeff& b) { return a += b; }
  friend Coeff operator-(Coeff a, const Coeff& b) { return a -= b; }
  friend Coeff operator*(Coeff a, const Coeff& b) { return a *= b; }
  friend Coeff operator/(Coeff a, const Coeff& b) { return a /= b; }
  friend bool operator==(const Coeff& a, const Coeff& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
  friend bool operator!=(const Coeff& a, const Coeff& b) { return !(a == b); }

  // Exact square root inside the given base, if one exists.
  std::optional<Coeff> sqrt_in(Base base) const {
    if (is_zero()) return Coeff(0);
    if (im_ == 0) {
      if (auto r = arith::sqrt_exact(re_)) return Coeff(*r);
      if (base == Base::GaussianRationals)
        if (auto r = arith::sqrt_exact(mpq_class(-re_))) return Coeff(0, *r);
      return std::nullopt;
    }
    if (base == Base::Rationals) return std::nullopt;
    auto n = arith::sqrt_exact(norm());
    if (!n) return std::nullopt;
    auto x = arith::sqrt_exact(mpq_class((re_ + *n) / 2));
    if (!x || *x == 0) return std::nullopt;
    mpq_class y = im_ / (2 * *x);
    return Coeff(*x, y);
  }

  std::string str(const std::string& imag = "i") const {
    auto q = [](const mpq_class& v) { return v.get_str(); };
    if (im_ == 0) return q(re_);
    std::string ims;
    if (im_ == 1) ims = imag;
    else if (im_ == -1) ims = "-" + imag;
    else ims = q(im_) + "*" + imag;
    if (re_ == 0) return ims;
    std::string s = q(re_);
    if (ims[0] == '-') return s + ims;
    return s + "+" + ims;
  }

 private:
  mpq_class re_ = 0, im_ = 0;
};

}  // namespace outaut
