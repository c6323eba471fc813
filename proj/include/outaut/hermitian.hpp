#pragma once

// Diagonal skew-hermitian forms over (Q, conjugation), hermitian forms over
// (Q0 (x) K, theta) with theta = conjugation composed with iota, and exact
// construction/verification of similitudes.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "outaut/certificate.hpp"
#include "outaut/quadext.hpp"
#include "outaut/quadform.hpp"
#include "outaut/quaternion.hpp"

namespace outaut {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, const T& fill) : r_(r), c_(c), a_(r * c, fill) {}

  static Matrix diagonal(const std::vector<T>& d, const T& zero) {
    Matrix m(d.size(), d.size(), zero);
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }
  static Matrix identity(std::size_t n, const T& one) { return diagonal(std::vector<T>(n, one), zero_like(one)); }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  T& operator()(std::size_t i, std::size_t j) { return a_.at(i * c_ + j); }
  const T& operator()(std::size_t i, std::size_t j) const { return a_.at(i * c_ + j); }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.c_ != y.r_ || x.c_ == 0) throw PreconditionError("matrix dimensions do not match");
    Matrix m(x.r_, y.c_, zero_like(x(0, 0)));
    for (std::size_t i = 0; i < x.r_; ++i)
      for (std::size_t j = 0; j < y.c_; ++j) {
        T s = x(i, 0) * y(0, j);
        for (std::size_t k = 1; k < x.c_; ++k) s += x(i, k) * y(k, j);
        m(i, j) = s;
      }
    return m;
  }
  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    x.check_same_shape(y);
    Matrix m = x;
    for (std::size_t k = 0; k < m.a_.size(); ++k) m.a_[k] += y.a_[k];
    return m;
  }
  friend Matrix operator-(const Matrix& x, const Matrix& y) {
    x.check_same_shape(y);
    Matrix m = x;
    for (std::size_t k = 0; k < m.a_.size(); ++k) m.a_[k] -= y.a_[k];
    return m;
  }
  template <class F>
  auto map(F&& f) const {
    using U = decltype(f(a_.front()));
    Matrix<U> m;
    m.r_ = r_;
    m.c_ = c_;
    for (auto& e : a_) m.a_.push_back(f(e));
    return m;
  }
  Matrix transpose() const {
    Matrix m(c_, r_, a_.front());
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }
  bool is_diagonal() const {
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j)
        if (i != j && !(*this)(i, j).is_zero()) return false;
    return true;
  }
  friend bool operator==(const Matrix& x, const Matrix& y) { return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_; }
  friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

 private:
  template <class>
  friend class Matrix;
  void check_same_shape(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw PreconditionError("matrix dimensions do not match");
  }

  std::size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
};

// Determinant over a field by Gaussian elimination.
template <class T>
T determinant(Matrix<T> m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw PreconditionError("determinant needs a nonempty square matrix");
  std::size_t n = m.rows();
  T det = one_like(m(0, 0));
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) return zero_like(det);
    if (p != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m(p, k), m(c, k));
      det = -det;
    }
    det *= m(c, c);
    T inv = one_like(det) / m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m(r, c).is_zero()) continue;
      T f = m(r, c) * inv;
      for (std::size_t k = c; k < n; ++k) m(r, k) -= f * m(c, k);
    }
  }
  return det;
}

using QuatMatrix = Matrix<Quat>;

inline json matrix_json(const QuatMatrix& g) {
  json rows = json::array();
  for (std::size_t i = 0; i < g.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < g.cols(); ++j) row.push_back(quat_str(g(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline QuatMatrix conj_transpose(const QuatMatrix& g) {
  return g.map([](const Quat& x) { return x.conj(); }).transpose();
}

// ---------------------------------------------------------------------------
// Reduced norm of M_n(Q), computed in M_2n(F(w)) with w^2 = a: the basis
// i, j maps to diag(w, -w) and [[0, b], [1, 0]].

namespace herm_detail {

template <class T, class Lift>
T reduced_norm_via(const QuatMatrix& g, const T& w, Lift lift) {
  std::size_t n = g.rows();
  const Scalar& b = g(0, 0).algebra()->b();
  T bb = lift(b);
  Matrix<T> m(2 * n, 2 * n, zero_like(w));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const Quat& x = g(r, c);
      T x0 = lift(x[0]), x1 = lift(x[1]), x2 = lift(x[2]), x3 = lift(x[3]);
      m(2 * r, 2 * c) = x0 + x1 * w;
      m(2 * r, 2 * c + 1) = bb * (x2 + x3 * w);
      m(2 * r + 1, 2 * c) = x2 - x3 * w;
      m(2 * r + 1, 2 * c + 1) = x0 - x1 * w;
    }
  return determinant(m);
}

}  // namespace herm_detail

inline Scalar reduced_norm(const QuatMatrix& g) {
  if (g.rows() != g.cols() || g.rows() == 0) throw PreconditionError("reduced norm needs a nonempty square matrix");
  const Scalar& a = g(0, 0).algebra()->a();
  if (auto s = sqrt(a)) return herm_detail::reduced_norm_via(g, *s, [](const Scalar& x) { return x; });
  using K = QuadExt<Scalar>;
  K w = K::root(a);
  K det = herm_detail::reduced_norm_via(g, w, [&](const Scalar& x) { return K::from_base(w, x); });
  if (!det.in_base()) throw ConsistencyError("reduced norm left the base field");
  return det.x();
}

// ---------------------------------------------------------------------------

class SkewHermForm {
 public:
  SkewHermForm(QuatAlg alg, std::vector<Quat> entries, std::vector<std::string> weights = {})
      : alg_(std::move(alg)), entries_(std::move(entries)), weight_names_(std::move(weights)) {
    if (entries_.empty()) throw PreconditionError("skew-hermitian form needs at least one entry");
    for (auto& q : entries_) {
      if (!q.is_pure() || q.is_zero()) throw PreconditionError("skew-hermitian entries must be nonzero pure quaternions");
      if ((q * q)[0].is_zero()) throw PreconditionError("skew-hermitian entries must have nonzero square");
    }
    if (!weight_names_.empty()) {
      if (weight_names_.size() != entries_.size()) throw PreconditionError("one generic weight per entry");
      const auto& t = alg_->a().tower();
      int last = -1;
      for (auto& w : weight_names_) {
        int idx = t->index_of(w);
        if (idx < 0) throw PreconditionError("generic weight '" + w + "' is not a tower variable");
        if (idx <= last) throw PreconditionError("generic weights must be distinct and in tower order");
        last = idx;
        weights_.push_back(Scalar::var(t, static_cast<std::size_t>(idx)));
      }
    }
  }

  const QuatAlg& algebra() const { return alg_; }
  std::size_t rank() const { return entries_.size(); }
  const std::vector<Quat>& entries() const { return entries_; }
  const std::vector<std::string>& weight_names() const { return weight_names_; }
  bool weighted() const { return !weights_.empty(); }

  // q_i^2
  Scalar square(std::size_t i) const { return (entries_.at(i) * entries_.at(i))[0]; }
  std::vector<Scalar> squares() const {
    std::vector<Scalar> out;
    for (std::size_t i = 0; i < rank(); ++i) out.push_back(square(i));
    return out;
  }
  // The i-th diagonal entry t_i q_i (or q_i when unweighted).
  Quat entry(std::size_t i) const { return weighted() ? weights_[i] * entries_.at(i) : entries_.at(i); }
  Scalar weight(std::size_t i) const { return weighted() ? weights_[i] : alg_->one(); }
  QuatMatrix gram() const {
    std::vector<Quat> d;
    for (std::size_t i = 0; i < rank(); ++i) d.push_back(entry(i));
    return QuatMatrix::diagonal(d, Quat(alg_));
  }

  json to_json() const {
    json e = json::array();
    for (auto& q : entries_) e.push_back(quat_str(q));
    return json{{"algebra", json::array({alg_->a().str(), alg_->b().str()})},
                {"tower", alg_->a().tower()->str()},
                {"entries", e},
                {"weights", weight_names_}};
  }

 private:
  QuatAlg alg_;
  std::vector<Quat> entries_;
  std::vector<std::string> weight_names_;
  std::vector<Scalar> weights_;
};

struct Discriminant {
  Scalar value;  // product of the q_i^2
  SquareClassSupport cls;
};

inline Discriminant discriminant(const SkewHermForm& h) {
  Scalar d = h.algebra()->one();
  for (auto& s : h.squares()) d *= s;
  return {d, square_class(d)};
}

enum class MultClass { plus, minus, neither, unknown };

inline std::string to_string(MultClass m) {
  switch (m) {
    case MultClass::plus: return "G+";
    case MultClass::minus: return "G-";
    case MultClass::neither: return "neither";
    default: return "unknown";
  }
}

struct MultClassResult {
  MultClass cls;
  Certificate cert;
};

// Class of mu relative to a = q^2: (a,mu) split gives G+, (a,mu) = Q gives G-.
// With u anticommuting with q and c = u^2 we have Q = (a,c), so (a,mu) = Q iff (a,mu*c) splits.
inline MultClassResult multiplier_class(const Quat& q, const Scalar& mu, const SearchOptions& opts = {}) {
  if (mu.is_zero()) throw PreconditionError("multiplier must be nonzero");
  Scalar a = (q * q)[0];
  Quat u = anticommuting_pure(q);
  Scalar c = (u * u)[0];
  auto plus = is_division(make_quat_algebra(a, mu), opts);
  Certificate cert(CertKind::Composite, "multiplier-class");
  cert["a"] = a.str();
  cert["mu"] = mu.str();
  cert.add_sub("a-mu", plus.cert);
  if (plus.verdict == Division::split) {
    cert["class"] = to_string(MultClass::plus);
    return {MultClass::plus, cert};
  }
  auto minus = is_division(make_quat_algebra(a, mu * c), opts);
  cert["c"] = c.str();
  cert.add_sub("a-mu-c", minus.cert);
  MultClass m = MultClass::unknown;
  if (minus.verdict == Division::split) {
    m = MultClass::minus;
  } else if (plus.verdict == Division::division && minus.verdict == Division::division) {
    m = MultClass::neither;
  }
  cert["class"] = to_string(m);
  if (m == MultClass::unknown) {
    Certificate none;
    none["reason"] = "undecided quaternion algebra";
    none.add_sub("evidence", cert);
    return {m, none};
  }
  return {m, cert};
}

inline MultClassResult multiplier_class(const Scalar& a, const Scalar& mu, const QuatAlg& Q,
                                        const SearchOptions& opts = {},
                                        const std::vector<std::vector<Scalar>>& hints = {}) {
  auto q = pure_with_square(Q, a, opts, hints);
  if (q.verdict != Verdict::yes) throw PreconditionError("a is not the square of a pure quaternion of Q");
  return multiplier_class(*q.element, mu, opts);
}

enum class SimType { proper, improper, unknown };

inline std::string to_string(SimType t) {
  switch (t) {
    case SimType::proper: return "proper";
    case SimType::improper: return "improper";
    default: return "unknown";
  }
}

struct SimilitudeMatrix {
  QuatMatrix g;
  Scalar mu;
  SimType type;

  json to_json() const { return json{{"matrix", matrix_json(g)}, {"mu", mu.str()}, {"type", to_string(type)}}; }
};

struct BlockReport {
  std::size_t index;
  SimType type;
  Verdict verdict;
  Certificate cert;
  std::optional<Quat> element;
};

struct SimilitudeBuild {
  Verdict verdict;
  std::optional<SimilitudeMatrix> similitude;
  std::vector<BlockReport> blocks;
};

// Per block i: proper g_i = x + y q_i with x^2 - a_i y^2 = mu; improper g_i = x u + y u q_i with
// u anticommuting with q_i, so g_i^2 = c(x^2 - a_i y^2), c = u^2.
inline SimilitudeBuild build_diagonal_similitude(const SkewHermForm& h, const Scalar& mu,
                                                 const std::vector<SimType>& pattern, const SearchOptions& opts = {},
                                                 const std::vector<std::vector<std::vector<Scalar>>>& hints = {}) {
  if (mu.is_zero()) throw PreconditionError("multiplier must be nonzero");
  if (pattern.size() != h.rank()) throw PreconditionError("pattern length must equal the rank");
  const auto& alg = h.algebra();
  const auto& t = alg->a().tower();
  SimilitudeBuild out{Verdict::yes, std::nullopt, {}};
  std::vector<Quat> diag;
  std::size_t improper = 0;
  for (std::size_t i = 0; i < h.rank(); ++i) {
    if (pattern[i] == SimType::unknown) throw PreconditionError("pattern entries must be proper or improper");
    const Quat& q = h.entries()[i];
    Scalar a = h.square(i);
    Quat base1 = Quat::scalar(alg, alg->one()), base2 = q;
    QuadForm f(t, {alg->one(), -a});
    if (pattern[i] == SimType::improper) {
      ++improper;
      base1 = anticommuting_pure(q);
      base2 = base1 * q;
      Scalar c = (base1 * base1)[0];
      f = QuadForm(t, {c, -(c * a)});
    }
    std::vector<std::vector<Scalar>> hs = i < hints.size() ? hints[i] : std::vector<std::vector<Scalar>>{};
    if (auto s = quat_detail::small_representation(f, mu)) hs.insert(hs.begin(), *s);
    auto r = represents(f, mu, opts, hs);
    BlockReport br{i, pattern[i], r.verdict, r.cert, std::nullopt};
    if (r.verdict == Verdict::yes) {
      Quat gi = r.vector[0] * base1 + r.vector[1] * base2;
      if (!(gi.conj() * q * gi == mu * q)) throw ConsistencyError("block similitude failed verification");
      br.element = gi;
      diag.push_back(gi);
    } else if (r.verdict == Verdict::no) {
      out.verdict = Verdict::no;
    } else if (out.verdict == Verdict::yes) {
      out.verdict = Verdict::unknown;
    }
    out.blocks.push_back(std::move(br));
  }
  if (out.verdict == Verdict::yes)
    out.similitude = SimilitudeMatrix{QuatMatrix::diagonal(diag, Quat(alg)), mu,
                                      improper % 2 ? SimType::improper : SimType::proper};
  return out;
}

struct SimilitudeCheck {
  bool valid;
  SimType type;
  std::optional<Scalar> nrd;
};

// g* H g = mu H, and Nrd(g) = +mu^n (proper) or -mu^n (improper).
inline SimilitudeCheck verify_similitude(const QuatMatrix& H, const QuatMatrix& g, const Scalar& mu) {
  if (H.rows() != H.cols() || g.rows() != g.cols() || g.rows() != H.rows())
    throw PreconditionError("similitude and form dimensions do not match");
  if (mu.is_zero()) return {false, SimType::unknown, std::nullopt};
  if (!(conj_transpose(g) * H * g == H.map([&](const Quat& x) { return mu * x; })))
    return {false, SimType::unknown, std::nullopt};
  Scalar n = reduced_norm(g);
  Scalar mun = mu.pow(static_cast<long>(H.rows()));
  if (n == mun) return {true, SimType::proper, n};
  if (n == -mun) return {true, SimType::improper, n};
  return {false, SimType::unknown, n};
}

inline SimilitudeCheck verify_similitude(const SkewHermForm& h, const QuatMatrix& g, const Scalar& mu) {
  return verify_similitude(h.gram(), g, mu);
}

// ---------------------------------------------------------------------------
// Unitary setting: K = F(t), t^2 = d, iota(t) = -t, Qhat = Q0 (x) K,
// theta = conjugation composed with iota.

using KScalar = QuadExt<Scalar>;
using QuatHat = QuatElement<KScalar>;
using QuatHatMatrix = Matrix<QuatHat>;

class UnitaryDatum {
 public:
  UnitaryDatum(QuatAlg q0, Scalar d) : q0_(std::move(q0)), d_(std::make_shared<const Scalar>(std::move(d))) {
    if (d_->is_zero() || is_square(*d_)) throw PreconditionError("descent datum needs a nonsquare d");
    qhat_ = QuatAlgebra<KScalar>::make(lift(q0_->a()), lift(q0_->b()));
  }
  const QuatAlg& q0() const { return q0_; }
  const Scalar& d() const { return *d_; }
  const QuatAlgebraPtr<KScalar>& qhat() const { return qhat_; }
  const TowerPtr& tower() const { return d_->tower(); }

  KScalar lift(const Scalar& x) const { return KScalar(d_, x, zero_like(x)); }
  KScalar t() const { return KScalar(d_, zero_like(*d_), one_like(*d_)); }
  QuatHat lift(const Quat& x) const { return QuatHat(qhat_, lift(x[0]), lift(x[1]), lift(x[2]), lift(x[3])); }
  QuatHat scalar(const KScalar& x) const { return QuatHat::scalar(qhat_, x); }
  // x = f + p t with f, p in Q0
  QuatHat combine(const Quat& f, const Quat& p) const {
    KScalar tt = t();
    return QuatHat(qhat_, lift(f[0]) + lift(p[0]) * tt, lift(f[1]) + lift(p[1]) * tt, lift(f[2]) + lift(p[2]) * tt,
                   lift(f[3]) + lift(p[3]) * tt);
  }
  // x = f + p t
  std::pair<Quat, Quat> parts(const QuatHat& x) const {
    return {Quat(q0_, x[0].x(), x[1].x(), x[2].x(), x[3].x()), Quat(q0_, x[0].y(), x[1].y(), x[2].y(), x[3].y())};
  }

  QuatHat iota(const QuatHat& x) const {
    return x.map([](const KScalar& c) { return c.conj(); });
  }
  QuatHat theta(const QuatHat& x) const { return iota(x).conj(); }
  bool theta_symmetric(const QuatHat& x) const { return theta(x) == x; }

  QuatHatMatrix iota(const QuatHatMatrix& g) const {
    return g.map([&](const QuatHat& x) { return iota(x); });
  }
  QuatHatMatrix theta_adjoint(const QuatHatMatrix& g) const {
    return g.map([&](const QuatHat& x) { return theta(x); }).transpose();
  }

  std::string str(const QuatHat& x) const {
    auto [f, p] = parts(x);
    if (p.is_zero()) return quat_str(f);
    std::string ps = "(" + quat_str(p) + ")*t";
    return f.is_zero() ? ps : quat_str(f) + " + " + ps;
  }

 private:
  QuatAlg q0_;
  std::shared_ptr<const Scalar> d_;
  QuatAlgebraPtr<KScalar> qhat_;
};

class UnitaryHermForm {
 public:
  UnitaryHermForm(std::shared_ptr<const UnitaryDatum> datum, std::vector<QuatHat> entries)
      : datum_(std::move(datum)), entries_(std::move(entries)) {
    if (entries_.empty()) throw PreconditionError("hermitian form needs at least one entry");
    for (auto& e : entries_)
      if (e.is_zero() || !datum_->theta_symmetric(e))
        throw PreconditionError("hermitian entries must be nonzero and theta-symmetric");
  }
  // h1 (F-scalars) perp <t> h2 (pure quaternions of Q0)
  static UnitaryHermForm weighted(std::shared_ptr<const UnitaryDatum> datum, const std::vector<Scalar>& h1,
                                  const std::vector<Quat>& h2) {
    std::vector<QuatHat> es;
    for (auto& x : h1) {
      if (x.is_zero()) throw PreconditionError("hermitian part entries must be nonzero");
      es.push_back(datum->scalar(datum->lift(x)));
    }
    Quat zero(datum->q0());
    for (auto& p : h2) {
      if (!p.is_pure() || p.is_zero()) throw PreconditionError("skew part entries must be nonzero pure quaternions");
      es.push_back(datum->combine(zero, p));
    }
    UnitaryHermForm f(std::move(datum), std::move(es));
    f.h1_size_ = h1.size();
    return f;
  }

  const std::shared_ptr<const UnitaryDatum>& datum() const { return datum_; }
  std::size_t rank() const { return entries_.size(); }
  const std::vector<QuatHat>& entries() const { return entries_; }
  std::optional<std::size_t> h1_size() const { return h1_size_; }

  QuatHatMatrix gram() const { return QuatHatMatrix::diagonal(entries_, QuatHat(datum_->qhat())); }

  json to_json() const {
    json e = json::array();
    for (auto& x : entries_) e.push_back(datum_->str(x));
    json j{{"d", datum_->d().str()},
           {"Q0", json::array({datum_->q0()->a().str(), datum_->q0()->b().str()})},
           {"tower", datum_->tower()->str()},
           {"entries", e}};
    if (h1_size_) j["h1_size"] = *h1_size_;
    return j;
  }

 private:
  std::shared_ptr<const UnitaryDatum> datum_;
  std::vector<QuatHat> entries_;
  std::optional<std::size_t> h1_size_;
};

// The iota-conjugate form: entrywise iota of the Gram matrix, i.e. h1 perp <-t> h2 in weighted shape.
inline UnitaryHermForm conjugate_unitary_form(const UnitaryHermForm& h) {
  std::vector<QuatHat> es;
  for (auto& e : h.entries()) es.push_back(h.datum()->iota(e));
  UnitaryHermForm out(h.datum(), std::move(es));
  if (h.h1_size()) {
    std::vector<Scalar> h1;
    std::vector<Quat> h2;
    for (std::size_t i = 0; i < out.rank(); ++i) {
      auto [f, p] = h.datum()->parts(out.entries()[i]);
      if (i < *h.h1_size()) {
        if (!f.is_scalar() || !p.is_zero()) throw PreconditionError("weighted form has a non-scalar hermitian entry");
        h1.push_back(f[0]);
      } else {
        if (!f.is_zero()) throw PreconditionError("weighted form has a non-skew entry in the t-block");
        h2.push_back(p);
      }
    }
    return UnitaryHermForm::weighted(h.datum(), h1, h2);
  }
  return out;
}

struct UnitarySimilitudeCheck {
  bool valid = false;
  bool order2 = false;
  std::optional<Scalar> lambda;  // g g^iota = lambda when order2
  bool lambda_pm_mu = false;     // lambda = +mu or -mu
};

// theta-adjoint(g) H^iota g = mu H; order 2 iff g g^iota is a scalar of F^x, and then lambda = +-mu.
inline UnitarySimilitudeCheck unitary_similitude_check(const UnitaryHermForm& h, const QuatHatMatrix& g,
                                                       const Scalar& mu) {
  const auto& D = *h.datum();
  if (g.rows() != h.rank() || g.cols() != h.rank()) throw PreconditionError("similitude and form dimensions do not match");
  UnitarySimilitudeCheck out;
  if (mu.is_zero()) return out;
  QuatHatMatrix H = h.gram();
  QuatHatMatrix Hi = D.iota(H);
  KScalar muk = D.lift(mu);
  out.valid = D.theta_adjoint(g) * Hi * g == H.map([&](const QuatHat& x) { return muk * x; });
  if (!out.valid) return out;
  QuatHatMatrix gg = g * D.iota(g);
  const QuatHat& l = gg(0, 0);
  bool scalar = gg.is_diagonal() && l.is_scalar() && l[0].in_base() && !l[0].is_zero();
  for (std::size_t i = 1; scalar && i < gg.rows(); ++i) scalar = gg(i, i) == l;
  if (scalar) {
    out.order2 = true;
    out.lambda = l[0].x();
    out.lambda_pm_mu = *out.lambda == mu || *out.lambda == -mu;
    if (!out.lambda_pm_mu) throw ConsistencyError("order-2 similitude with lambda != +-mu");
  }
  return out;
}

}  // namespace outaut
