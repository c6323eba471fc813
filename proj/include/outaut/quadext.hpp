#pragma once

// Formal quadratic extensions K = F(w), w^2 = d, over a field type T.
// Elements are x + y*w; the nontrivial automorphism iota sends w to -w.

#include <memory>
#include <string>

#include "outaut/errors.hpp"
#include "outaut/scalar.hpp"

namespace outaut {

inline Scalar zero_like(const Scalar& x) { return Scalar(x.tower()); }
inline Scalar one_like(const Scalar& x) { return Scalar(x.tower(), 1); }
inline std::string to_string(const Scalar& x) { return x.str(); }

template <class T>
class QuadExt {
 public:
  QuadExt() = default;
  // The element x + y*w of F(w), w^2 = d.
  QuadExt(T d, T x, T y) : d_(std::make_shared<const T>(std::move(d))), x_(std::move(x)), y_(std::move(y)) {}
  QuadExt(std::shared_ptr<const T> d, T x, T y) : d_(std::move(d)), x_(std::move(x)), y_(std::move(y)) {}

  static QuadExt from_base(const QuadExt& like, const T& x) { return QuadExt(like.d_, x, zero_like(x)); }
  static QuadExt root(const T& d) { return QuadExt(d, zero_like(d), one_like(d)); }

  const T& x() const { return x_; }
  const T& y() const { return y_; }
  const T& d() const { return *d_; }
  const std::shared_ptr<const T>& d_ptr() const { return d_; }

  bool is_zero() const { return x_.is_zero() && y_.is_zero(); }
  bool in_base() const { return y_.is_zero(); }

  QuadExt operator-() const { return QuadExt(d_, -x_, -y_); }
  friend QuadExt operator+(const QuadExt& a, const QuadExt& b) {
    a.check(b);
    return QuadExt(a.d_, a.x_ + b.x_, a.y_ + b.y_);
  }
  friend QuadExt operator-(const QuadExt& a, const QuadExt& b) {
    a.check(b);
    return QuadExt(a.d_, a.x_ - b.x_, a.y_ - b.y_);
  }
  friend QuadExt operator*(const QuadExt& a, const QuadExt& b) {
    a.check(b);
    return QuadExt(a.d_, a.x_ * b.x_ + *a.d_ * a.y_ * b.y_, a.x_ * b.y_ + a.y_ * b.x_);
  }
  QuadExt conj() const { return QuadExt(d_, x_, -y_); }
  T norm() const { return x_ * x_ - *d_ * y_ * y_; }
  QuadExt inverse() const {
    T n = norm();
    if (n.is_zero()) throw DivisionByZero();
    return QuadExt(d_, x_ / n, -y_ / n);
  }
  friend QuadExt operator/(const QuadExt& a, const QuadExt& b) { return a * b.inverse(); }
  QuadExt& operator+=(const QuadExt& o) { return *this = *this + o; }
  QuadExt& operator-=(const QuadExt& o) { return *this = *this - o; }
  QuadExt& operator*=(const QuadExt& o) { return *this = *this * o; }
  QuadExt& operator/=(const QuadExt& o) { return *this = *this / o; }
  friend bool operator==(const QuadExt& a, const QuadExt& b) { return a.x_ == b.x_ && a.y_ == b.y_; }
  friend bool operator!=(const QuadExt& a, const QuadExt& b) { return !(a == b); }

  std::string str(const std::string& w = "w") const {
    if (y_.is_zero()) return to_string(x_);
    std::string ys = "(" + to_string(y_) + ")*" + w;
    if (x_.is_zero()) return ys;
    return "(" + to_string(x_) + ") + " + ys;
  }

 private:
  void check(const QuadExt& o) const {
    if (d_ != o.d_ && !(*d_ == *o.d_)) throw PreconditionError("quadratic extensions differ");
  }

  std::shared_ptr<const T> d_;
  T x_, y_;
};

template <class T>
QuadExt<T> zero_like(const QuadExt<T>& x) {
  return QuadExt<T>(x.d_ptr(), zero_like(x.x()), zero_like(x.x()));
}
template <class T>
QuadExt<T> one_like(const QuadExt<T>& x) {
  return QuadExt<T>(x.d_ptr(), one_like(x.x()), zero_like(x.x()));
}
template <class T>
std::string to_string(const QuadExt<T>& x) {
  return x.str();
}

}  // namespace outaut
