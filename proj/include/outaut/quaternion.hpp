#pragma once

// Quaternion algebras (a,b)_F with basis 1, i, j, k = ij over a field type T
// (Scalar, or QuadExt<Scalar> for algebras extended to a quadratic K/F),
// and the split/division, pure-square and splitting-field decisions over
// Scalar towers.

#include <algorithm>
#include <array>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "outaut/certificate.hpp"
#include "outaut/parse.hpp"
#include "outaut/quadext.hpp"
#include "outaut/quadform.hpp"

namespace outaut {

template <class T>
class QuatAlgebra {
 public:
  QuatAlgebra(T a, T b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.is_zero() || b_.is_zero()) throw PreconditionError("quaternion structure constants must be nonzero");
  }
  static std::shared_ptr<const QuatAlgebra> make(T a, T b) {
    return std::make_shared<const QuatAlgebra>(std::move(a), std::move(b));
  }
  const T& a() const { return a_; }
  const T& b() const { return b_; }
  T zero() const { return zero_like(a_); }
  T one() const { return one_like(a_); }
  std::string str() const { return "(" + to_string(a_) + ", " + to_string(b_) + ")"; }
  friend bool operator==(const QuatAlgebra& x, const QuatAlgebra& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

 private:
  T a_, b_;
};

template <class T>
using QuatAlgebraPtr = std::shared_ptr<const QuatAlgebra<T>>;

template <class T>
class QuatElement {
 public:
  QuatElement() = default;
  explicit QuatElement(QuatAlgebraPtr<T> alg) : alg_(std::move(alg)) {
    for (auto& c : x_) c = alg_->zero();
  }
  QuatElement(QuatAlgebraPtr<T> alg, T x0, T x1, T x2, T x3)
      : alg_(std::move(alg)), x_{std::move(x0), std::move(x1), std::move(x2), std::move(x3)} {}

  static QuatElement scalar(const QuatAlgebraPtr<T>& alg, const T& c) {
    QuatElement e(alg);
    e.x_[0] = c;
    return e;
  }
  // basis(alg, 0..3) = 1, i, j, k
  static QuatElement basis(const QuatAlgebraPtr<T>& alg, std::size_t k) {
    QuatElement e(alg);
    e.x_.at(k) = alg->one();
    return e;
  }
  static QuatElement pure(const QuatAlgebraPtr<T>& alg, const T& x1, const T& x2, const T& x3) {
    return QuatElement(alg, alg->zero(), x1, x2, x3);
  }

  const QuatAlgebraPtr<T>& algebra() const { return alg_; }
  const T& operator[](std::size_t k) const { return x_[k]; }
  const std::array<T, 4>& coords() const { return x_; }

  bool is_zero() const {
    for (auto& c : x_)
      if (!c.is_zero()) return false;
    return true;
  }
  bool is_pure() const { return x_[0].is_zero(); }
  bool is_scalar() const { return x_[1].is_zero() && x_[2].is_zero() && x_[3].is_zero(); }

  QuatElement operator-() const { return QuatElement(alg_, -x_[0], -x_[1], -x_[2], -x_[3]); }
  friend QuatElement operator+(const QuatElement& p, const QuatElement& q) {
    p.check(q);
    return QuatElement(p.alg_, p.x_[0] + q.x_[0], p.x_[1] + q.x_[1], p.x_[2] + q.x_[2], p.x_[3] + q.x_[3]);
  }
  friend QuatElement operator-(const QuatElement& p, const QuatElement& q) { return p + (-q); }
  friend QuatElement operator*(const QuatElement& p, const QuatElement& q) {
    p.check(q);
    const T& a = p.alg_->a();
    const T& b = p.alg_->b();
    const auto& x = p.x_;
    const auto& y = q.x_;
    T ab = a * b;
    return QuatElement(p.alg_, x[0] * y[0] + a * x[1] * y[1] + b * x[2] * y[2] - ab * x[3] * y[3],
                       x[0] * y[1] + x[1] * y[0] - b * x[2] * y[3] + b * x[3] * y[2],
                       x[0] * y[2] + x[2] * y[0] + a * x[1] * y[3] - a * x[3] * y[1],
                       x[0] * y[3] + x[3] * y[0] + x[1] * y[2] - x[2] * y[1]);
  }
  friend QuatElement operator*(const T& c, const QuatElement& q) {
    return QuatElement(q.alg_, c * q.x_[0], c * q.x_[1], c * q.x_[2], c * q.x_[3]);
  }
  QuatElement& operator+=(const QuatElement& o) { return *this = *this + o; }
  QuatElement& operator-=(const QuatElement& o) { return *this = *this - o; }
  QuatElement& operator*=(const QuatElement& o) { return *this = *this * o; }

  QuatElement conj() const { return QuatElement(alg_, x_[0], -x_[1], -x_[2], -x_[3]); }
  T trd() const { return x_[0] + x_[0]; }
  T nrd() const {
    const T& a = alg_->a();
    const T& b = alg_->b();
    return x_[0] * x_[0] - a * x_[1] * x_[1] - b * x_[2] * x_[2] + a * b * x_[3] * x_[3];
  }
  QuatElement inverse() const {
    T n = nrd();
    if (n.is_zero()) throw DivisionByZero();
    T inv = one_like(n) / n;
    return inv * conj();
  }
  friend QuatElement operator/(const QuatElement& p, const QuatElement& q) { return p * q.inverse(); }
  QuatElement pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    QuatElement r = scalar(alg_, alg_->one()), b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }
  // Apply a map to every coordinate (e.g. the automorphism iota of the centre).
  template <class F>
  QuatElement map(F&& f) const {
    return QuatElement(alg_, f(x_[0]), f(x_[1]), f(x_[2]), f(x_[3]));
  }

  friend bool operator==(const QuatElement& p, const QuatElement& q) { return p.x_ == q.x_; }
  friend bool operator!=(const QuatElement& p, const QuatElement& q) { return !(p == q); }

 private:
  void check(const QuatElement& o) const {
    if (alg_ != o.alg_ && !(*alg_ == *o.alg_)) throw PreconditionError("quaternions from different algebras");
  }

  QuatAlgebraPtr<T> alg_;
  std::array<T, 4> x_;
};

template <class T>
QuatElement<T> zero_like(const QuatElement<T>& x) {
  return QuatElement<T>(x.algebra());
}
template <class T>
QuatElement<T> one_like(const QuatElement<T>& x) {
  return QuatElement<T>::scalar(x.algebra(), x.algebra()->one());
}

// ---------------------------------------------------------------------------
// Concrete algebras over Scalar towers.

using Quat = QuatElement<Scalar>;
using QuatAlg = QuatAlgebraPtr<Scalar>;

inline QuatAlg make_quat_algebra(const Scalar& a, const Scalar& b) { return QuatAlgebra<Scalar>::make(a, b); }
inline QuatAlg parse_quat_algebra(const TowerPtr& t, const std::string& a, const std::string& b) {
  return make_quat_algebra(parse_scalar(t, a), parse_scalar(t, b));
}

// Element syntax: x0 + x1*i + x2*j + x3*k; I is the Gaussian unit of a Q(i) base.
inline std::string quat_str(const Quat& q) {
  static const char* names[] = {"", "i", "j", "k"};
  std::string s;
  for (std::size_t k = 0; k < 4; ++k) {
    const Scalar& c = q[k];
    if (c.is_zero()) continue;
    std::string cs = c.str("I");
    bool compound = cs[0] != '(' && cs.find_first_of("+-", 1) != std::string::npos;
    std::string term;
    if (k == 0) {
      term = compound ? "(" + cs + ")" : cs;
    } else if (cs == "1") {
      term = names[k];
    } else if (cs == "-1") {
      term = std::string("-") + names[k];
    } else {
      term = (compound ? "(" + cs + ")" : cs) + "*" + names[k];
    }
    if (s.empty()) {
      s = term;
    } else if (term[0] == '-') {
      s += " - " + term.substr(1);
    } else {
      s += " + " + term;
    }
  }
  return s.empty() ? "0" : s;
}

namespace quat_detail {

struct QuatContext {
  QuatAlg alg;
  TowerPtr tower;
  Quat integer(const mpz_class& v) const { return Quat::scalar(alg, Scalar(tower, Coeff(v))); }
  Quat atom(const std::string& name, std::size_t pos) const {
    if (name == "i") return Quat::basis(alg, 1);
    if (name == "j") return Quat::basis(alg, 2);
    if (name == "k") return Quat::basis(alg, 3);
    if (name == "I") {
      if (tower->base() != Base::GaussianRationals) throw ParseError("Gaussian unit outside Q(i)", pos);
      return Quat::scalar(alg, Scalar::imag_unit(tower));
    }
    int idx = tower->index_of(name);
    if (idx < 0) throw ParseError("unknown identifier '" + name + "'", pos);
    return Quat::scalar(alg, Scalar::var(tower, static_cast<std::size_t>(idx)));
  }
  Quat divide(const Quat& a, const Quat& b) const { return a / b; }
  Quat power(const Quat& a, long e) const { return a.pow(e); }
};

}  // namespace quat_detail

inline Quat parse_quat(const QuatAlg& alg, const std::string& text) {
  quat_detail::QuatContext ctx{alg, alg->a().tower()};
  return ExprParser<Quat, quat_detail::QuatContext>(text, ctx).parse();
}

inline QuadForm norm_form(const QuatAlg& q) {
  const Scalar& a = q->a();
  const Scalar& b = q->b();
  return QuadForm(a.tower(), {Scalar(a.tower(), 1), -a, -b, a * b});
}
// q^2 = a x1^2 + b x2^2 - ab x3^2 for pure q.
inline QuadForm pure_square_form(const QuatAlg& q) {
  const Scalar& a = q->a();
  const Scalar& b = q->b();
  return QuadForm(a.tower(), {a, b, -(a * b)});
}

enum class Division { division, split, unknown };

inline std::string to_string(Division d) {
  switch (d) {
    case Division::division: return "division";
    case Division::split: return "split";
    default: return "unknown";
  }
}

struct DivisionResult {
  Division verdict;
  Certificate cert;
  std::optional<Quat> zero_divisor;  // z != 0 with Nrd(z) = 0, so z * conj(z) = 0
};

inline DivisionResult is_division(const QuatAlg& q, const SearchOptions& opts = {}) {
  auto r = certify_anisotropic(norm_form(q), opts);
  if (r.verdict == Anisotropy::anisotropic) {
    Certificate c = r.cert;
    c["algebra"] = json::array({q->a().str(), q->b().str()});
    return {Division::division, c, std::nullopt};
  }
  if (r.verdict == Anisotropy::isotropic) {
    const auto& w = r.witness;
    Quat z(q, w[0], w[1], w[2], w[3]);
    if (z.is_zero() || !z.nrd().is_zero()) throw ConsistencyError("zero divisor failed verification");
    Certificate c = r.cert;
    c["algebra"] = json::array({q->a().str(), q->b().str()});
    c["zero_divisor"] = quat_str(z);
    return {Division::split, c, z};
  }
  return {Division::unknown, r.cert, std::nullopt};
}

struct PureSquareResult {
  Verdict verdict;
  Certificate cert;
  std::optional<Quat> element;
};

namespace quat_detail {

// Small vectors with entries in {0,1,2} (and the Gaussian unit over Q(i)), ordered by
// weight and then descending lexicographically; 3 encodes the Gaussian unit, of weight 1.
inline std::optional<std::vector<Scalar>> small_representation(const QuadForm& f, const Scalar& c) {
  std::size_t n = f.dim();
  long top = f.tower()->base() == Base::GaussianRationals ? 3 : 2;
  auto weight = [](long e) { return e == 3 ? 1 : e; };
  std::vector<std::vector<long>> vs;
  std::vector<long> v(n, 0);
  for (;;) {
    vs.push_back(v);
    std::size_t k = 0;
    while (k < n && v[k] == top) v[k++] = 0;
    if (k == n) break;
    ++v[k];
  }
  std::stable_sort(vs.begin(), vs.end(), [&](const std::vector<long>& x, const std::vector<long>& y) {
    long sx = 0, sy = 0;
    for (long e : x) sx += weight(e);
    for (long e : y) sy += weight(e);
    if (sx != sy) return sx < sy;
    return x > y;
  });
  for (auto& u : vs) {
    std::vector<Scalar> x;
    for (long e : u) x.push_back(e == 3 ? Scalar::imag_unit(f.tower()) : Scalar(f.tower(), e));
    if (f.evaluate(x) == c) return x;
  }
  return std::nullopt;
}

}  // namespace quat_detail

inline PureSquareResult pure_with_square(const QuatAlg& q, const Scalar& c, const SearchOptions& opts = {},
                                         const std::vector<std::vector<Scalar>>& hints = {}) {
  if (c.is_zero()) throw PreconditionError("pure_with_square: c must be nonzero");
  QuadForm f = pure_square_form(q);
  std::vector<std::vector<Scalar>> all_hints = hints;
  if (auto s = quat_detail::small_representation(f, c)) all_hints.insert(all_hints.begin(), *s);
  auto r = represents(f, c, opts, all_hints);
  if (r.verdict != Verdict::yes) return {r.verdict, r.cert, std::nullopt};
  Quat e = Quat::pure(q, r.vector[0], r.vector[1], r.vector[2]);
  if (!(e * e == Quat::scalar(q, c))) throw ConsistencyError("pure quaternion failed verification");
  r.cert["element"] = quat_str(e);
  return {Verdict::yes, r.cert, e};
}

// Nonzero pure u with uq = -qu, first nonzero candidate scaled so its first nonzero coordinate is 1.
template <class T>
QuatElement<T> anticommuting_pure(const QuatElement<T>& q) {
  if (!q.is_pure()) throw PreconditionError("anticommuting_pure needs a pure quaternion");
  if ((q * q)[0].is_zero()) throw PreconditionError("anticommuting_pure needs q^2 != 0");
  const auto& alg = q.algebra();
  const T& a = alg->a();
  const T& b = alg->b();
  T zero = alg->zero();
  std::vector<std::array<T, 3>> cands{{b * q[2], -(a * q[1]), zero}, {b * q[3], zero, q[1]}, {zero, a * q[3], q[2]}};
  for (auto& c : cands) {
    std::size_t lead = 3;
    for (std::size_t k = 0; k < 3 && lead == 3; ++k)
      if (!c[k].is_zero()) lead = k;
    if (lead == 3) continue;
    T s = one_like(a) / c[lead];
    auto u = QuatElement<T>::pure(alg, s * c[0], s * c[1], s * c[2]);
    if (!(u * q == -(q * u))) throw ConsistencyError("anticommuting element failed verification");
    return u;
  }
  throw ConsistencyError("no anticommuting candidate");
}

// x = u * v with u, v pure; needs an invertible pure element anticommuting with the pure part.
template <class T>
std::pair<QuatElement<T>, QuatElement<T>> pure_factorization(const QuatElement<T>& x) {
  const auto& alg = x.algebra();
  QuatElement<T> p = QuatElement<T>::pure(alg, x[1], x[2], x[3]);
  QuatElement<T> u = p.is_zero() ? QuatElement<T>::basis(alg, 1) : anticommuting_pure(p);
  QuatElement<T> v = u.inverse() * x;
  if (!u.is_pure() || !v.is_pure() || !(u * v == x)) throw ConsistencyError("pure factorization failed");
  return {u, v};
}

struct SplitResult {
  Verdict verdict;
  Certificate cert;
  std::optional<Quat> element;  // pure q with q^2 = delta
};

inline SplitResult splits_over(const QuatAlg& q, const Scalar& delta, const SearchOptions& opts = {},
                               const std::vector<std::vector<Scalar>>& hints = {}) {
  if (delta.is_zero()) throw PreconditionError("splits_over: delta must be nonzero");
  if (is_square(delta)) throw PreconditionError("splits_over: delta is a square, the extension is trivial");
  auto r = pure_with_square(q, delta, opts, hints);
  Certificate c = r.cert;
  c["algebra"] = json::array({q->a().str(), q->b().str()});
  c["delta"] = delta.str();
  return {r.verdict, c, r.element};
}

}  // namespace outaut
