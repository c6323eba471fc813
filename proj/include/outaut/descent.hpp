#pragma once

// Descent of unitary involutions on hermitian forms over Q0 (x) K, split-case
// descent over (K, iota), and iota-semilinear automorphisms.

#include <optional>
#include <string>
#include <vector>

#include "outaut/hermitian.hpp"
#include "outaut/quadform.hpp"

namespace outaut {

namespace descent_detail {

// Reduced row echelon form in place; returns pivot columns.
template <class T>
std::vector<std::size_t> row_reduce(Matrix<T>& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(p, k), m(r, k));
    T inv = one_like(m(r, c)) / m(r, c);
    for (std::size_t k = 0; k < m.cols(); ++k) m(r, k) = inv * m(r, k);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      T f = m(i, c);
      for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = m(i, k) - f * m(r, k);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// Basis of {x : m x = 0}, one vector per free column in increasing order.
template <class T>
std::vector<std::vector<T>> nullspace(Matrix<T> m, const T& zero) {
  auto piv = row_reduce(m);
  std::vector<std::vector<T>> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (std::find(piv.begin(), piv.end(), f) != piv.end()) continue;
    std::vector<T> v(m.cols(), zero);
    v[f] = one_like(zero);
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(r, f);
    out.push_back(v);
  }
  return out;
}

template <class T>
std::size_t rank(Matrix<T> m) {
  return row_reduce(m).size();
}

// F-coordinates of x in Qhat: (x_k, y_k) with x = sum (x_k + y_k t) e_k.
inline std::vector<Scalar> f_coords(const QuatHat& x) {
  std::vector<Scalar> v;
  for (std::size_t k = 0; k < 4; ++k) v.push_back(x[k].x());
  for (std::size_t k = 0; k < 4; ++k) v.push_back(x[k].y());
  return v;
}

// Matrix inverse by Gauss-Jordan over a division ring (left multiplication by pivot inverses).
inline QuatHatMatrix inverse(const QuatHatMatrix& g) {
  std::size_t n = g.rows();
  if (g.cols() != n || n == 0) throw PreconditionError("inverse of a non-square matrix");
  QuatHat one = one_like(g(0, 0));
  QuatHatMatrix a = g, b = QuatHatMatrix::identity(n, one);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c).nrd().is_zero()) ++p;
    if (p == n) throw DivisionByZero();
    for (std::size_t k = 0; k < n; ++k) {
      std::swap(a(p, k), a(c, k));
      std::swap(b(p, k), b(c, k));
    }
    QuatHat inv = a(c, c).inverse();
    for (std::size_t k = 0; k < n; ++k) {
      a(c, k) = inv * a(c, k);
      b(c, k) = inv * b(c, k);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c).is_zero()) continue;
      QuatHat f = a(i, c);
      for (std::size_t k = 0; k < n; ++k) {
        a(i, k) = a(i, k) - f * a(c, k);
        b(i, k) = b(i, k) - f * b(c, k);
      }
    }
  }
  return b;
}

// F-spanning set of M_n(Qhat): E_ab (x) e_k and E_ab (x) t e_k.
inline std::vector<QuatHatMatrix> spanning_set(const UnitaryDatum& D, std::size_t n) {
  std::vector<QuatHatMatrix> out;
  QuatHat zero(D.qhat());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (int w = 0; w < 2; ++w)
        for (std::size_t k = 0; k < 4; ++k) {
          QuatHatMatrix m(n, n, zero);
          QuatHat e = QuatHat::basis(D.qhat(), k);
          m(a, b) = w ? D.t() * e : e;
          out.push_back(m);
        }
  return out;
}

// Y_ij = d_i^{-1} f(X_ji) d_j, the adjoint of the diagonal form <d_1..d_n> for the involution f.
template <class F>
QuatHatMatrix diagonal_adjoint(const std::vector<QuatHat>& d, const std::vector<QuatHat>& dinv, const QuatHatMatrix& X,
                               F&& f) {
  QuatHatMatrix Y(X.rows(), X.cols(), zero_like(d.at(0)));
  for (std::size_t i = 0; i < X.rows(); ++i)
    for (std::size_t j = 0; j < X.cols(); ++j)
      if (!X(j, i).is_zero()) Y(i, j) = dinv[i] * f(X(j, i)) * d[j];
  return Y;
}

inline std::vector<QuatHat> inverses(const std::vector<QuatHat>& d) {
  std::vector<QuatHat> out;
  for (auto& x : d) out.push_back(x.inverse());
  return out;
}

// ad_h(X) = H^{-1} theta(X)^T H
class AdjointInvolution {
 public:
  explicit AdjointInvolution(const UnitaryHermForm& h) : D_(h.datum()), d_(h.entries()), dinv_(inverses(d_)) {}
  QuatHatMatrix operator()(const QuatHatMatrix& X) const {
    return diagonal_adjoint(d_, dinv_, X, [&](const QuatHat& x) { return D_->theta(x); });
  }

 private:
  std::shared_ptr<const UnitaryDatum> D_;
  std::vector<QuatHat> d_, dinv_;
};

}  // namespace descent_detail

// {s : s conj(q_i) + q_i conj(s) = 0 for all i}, a K-basis.
inline std::vector<QuatHat> theta_perp(const std::vector<QuatHat>& qs, const UnitaryDatum& D) {
  for (auto& q : qs)
    if (q.is_zero() || !D.theta_symmetric(q)) throw PreconditionError("entries must be nonzero and theta-symmetric");
  KScalar zero = D.lift(Scalar(D.tower()));
  Matrix<KScalar> m(qs.size(), 4, zero);
  for (std::size_t i = 0; i < qs.size(); ++i)
    for (std::size_t k = 0; k < 4; ++k) {
      QuatHat e = QuatHat::basis(D.qhat(), k);
      m(i, k) = (e * qs[i].conj() + qs[i] * e.conj())[0];
    }
  std::vector<QuatHat> out;
  for (auto& v : descent_detail::nullspace(m, zero)) out.emplace_back(D.qhat(), v[0], v[1], v[2], v[3]);
  return out;
}

struct DescentChecks {
  bool theta_q_skew = false;
  std::vector<bool> iota_prime_fixes;
  bool q_iota_q_central = false;
  bool subalgebra_fixed = false;
  bool entries_pure = false;
  bool roundtrip = false;

  bool all() const {
    bool f = std::all_of(iota_prime_fixes.begin(), iota_prime_fixes.end(), [](bool b) { return b; });
    return theta_q_skew && f && q_iota_q_central && subalgebra_fixed && entries_pure && roundtrip;
  }
  json to_json() const {
    return json{{"theta_q_eq_minus_q", theta_q_skew},
                {"iota_prime_fixes_qq_i", iota_prime_fixes},
                {"q_iota_q_in_F", q_iota_q_central},
                {"Q0prime_fixed_by_iota_prime", subalgebra_fixed},
                {"hprime_entries_pure", entries_pure},
                {"involution_roundtrip", roundtrip}};
  }
};

struct DescentResult {
  QuatHat q;
  QuatHat s;
  std::vector<QuatHat> basis;  // 1, i', j', i'j' of Q0' inside Qhat
  QuatAlg q0prime;             // (i'^2, j'^2) over F
  std::optional<SkewHermForm> hprime;
  std::vector<QuatHat> hprime_hat;  // q q_i
  DescentChecks checks;

  json to_json(const UnitaryDatum& D) const {
    json b = json::array(), hp = json::array();
    for (auto& x : basis) b.push_back(D.str(x));
    for (auto& x : hprime->entries()) hp.push_back(quat_str(x));
    return json{{"q", D.str(q)},
                {"s", D.str(s)},
                {"Q0prime", json::array({q0prime->a().str(), q0prime->b().str()})},
                {"Q0primeBasis", b},
                {"hPrime", hp},
                {"checks", checks.to_json()}};
  }
};

// iota' = Int(q) o iota
inline QuatHat iota_prime(const UnitaryDatum& D, const QuatHat& q, const QuatHat& x) {
  return q * D.iota(x) * q.inverse();
}

inline DescentResult descend(const UnitaryHermForm& h) {
  const auto& D = *h.datum();
  if (h.rank() > 3) throw PreconditionError("descent is implemented for rank at most 3");
  auto perp = theta_perp(h.entries(), D);
  if (perp.empty()) throw PreconditionError("entries span more than 3 dimensions");
  // first s with theta(s) != s and s - theta(s) invertible; t s is tried after s
  std::optional<QuatHat> s;
  for (auto& b : perp) {
    for (const QuatHat& c : {b, D.scalar(D.t()) * b}) {
      QuatHat x = c - D.theta(c);
      if (!x.is_zero() && !x.nrd().is_zero()) {
        s = c;
        break;
      }
    }
    if (s) break;
  }
  if (!s) throw ConsistencyError("every element of the perp space is theta-fixed or s - theta(s) is singular");
  DescentResult out;
  out.s = *s;
  out.q = (*s - D.theta(*s)).inverse();
  const QuatHat& q = out.q;
  out.checks.theta_q_skew = D.theta(q) == -q;
  QuatHat qiq = q * D.iota(q);
  out.checks.q_iota_q_central = qiq.is_scalar() && qiq[0].in_base() && !qiq[0].is_zero();
  for (auto& e : h.entries()) {
    QuatHat z = q * e;
    out.hprime_hat.push_back(z);
    out.checks.iota_prime_fixes.push_back(iota_prime(D, q, z) == z);
  }

  // Q0' = fixed points of iota': span of y + iota'(y) over an F-basis of Qhat
  std::vector<QuatHat> fixed;
  {
    Scalar fz(D.tower());
    for (int w = 0; w < 2; ++w)
      for (std::size_t k = 0; k < 4; ++k) {
        QuatHat e = QuatHat::basis(D.qhat(), k);
        if (w) e = D.scalar(D.t()) * e;
        QuatHat c = e + iota_prime(D, q, e);
        if (c.is_zero()) continue;
        std::vector<QuatHat> trial = fixed;
        trial.push_back(c);
        Matrix<Scalar> m(trial.size(), 8, fz);
        for (std::size_t r = 0; r < trial.size(); ++r) {
          auto v = descent_detail::f_coords(trial[r]);
          for (std::size_t k2 = 0; k2 < 8; ++k2) m(r, k2) = v[k2];
        }
        if (descent_detail::rank(m) == trial.size()) fixed = trial;
      }
    if (fixed.size() != 4) throw ConsistencyError("fixed algebra of iota' is not 4-dimensional over F");
  }
  out.checks.subalgebra_fixed = true;
  for (auto& f : fixed) out.checks.subalgebra_fixed = out.checks.subalgebra_fixed && iota_prime(D, q, f) == f;

  // orthogonal pure basis i', j' of Q0'
  std::vector<QuatHat> pure;
  for (auto& f : fixed) {
    QuatHat p = f - D.scalar(f[0]);
    if (!p.is_zero()) pure.push_back(p);
  }
  auto trd = [](const QuatHat& x) { return x.trd(); };
  QuatHat ip = pure.at(0);
  {
    Scalar fz(D.tower());
    Matrix<Scalar> m(1, pure.size(), fz);
    for (std::size_t k = 0; k < pure.size(); ++k) {
      KScalar v = trd(ip * pure[k]);
      if (!v.in_base()) throw ConsistencyError("trace form on Q0' leaves F");
      m(0, k) = v.x();
    }
    for (auto& v : descent_detail::nullspace(m, fz)) {
      QuatHat cand(D.qhat());
      for (std::size_t k = 0; k < pure.size(); ++k) cand = cand + D.scalar(D.lift(v[k])) * pure[k];
      if (cand.is_zero() || !(cand * ip + ip * cand).is_zero()) continue;
      out.basis = {one_like(ip), ip, cand, ip * cand};
      break;
    }
  }
  if (out.basis.size() != 4) throw ConsistencyError("no anticommuting pure basis of Q0'");
  KScalar a2 = (out.basis[1] * out.basis[1])[0], b2 = (out.basis[2] * out.basis[2])[0];
  if (!a2.in_base() || !b2.in_base()) throw ConsistencyError("Q0' structure constants leave F");
  out.q0prime = make_quat_algebra(a2.x(), b2.x());
  KScalar kk = (out.basis[3] * out.basis[3])[0];
  std::vector<Quat> hp;
  out.checks.entries_pure = true;
  for (auto& z : out.hprime_hat) {
    // Trd(z e_k) = 2 c_k e_k^2 with e_0 = 1
    std::array<Scalar, 4> c;
    KScalar sq[4] = {D.lift(Scalar(D.tower(), 1)), a2, b2, kk};
    for (std::size_t k = 0; k < 4; ++k) {
      KScalar v = trd(z * out.basis[k]) / (D.lift(Scalar(D.tower(), 2)) * sq[k]);
      if (!v.in_base()) throw ConsistencyError("entry of h' has coordinates outside F");
      c[k] = v.x();
    }
    QuatHat back(D.qhat());
    for (std::size_t k = 0; k < 4; ++k) back = back + D.scalar(D.lift(c[k])) * out.basis[k];
    if (!(back == z)) throw ConsistencyError("entry of h' is not in Q0'");
    Quat e(out.q0prime, c[0], c[1], c[2], c[3]);
    out.checks.entries_pure = out.checks.entries_pure && e.is_pure();
    hp.push_back(e);
  }
  out.hprime = SkewHermForm(out.q0prime, hp);

  // ad_{h'} (x) iota agrees with ad_h on the spanning set
  descent_detail::AdjointInvolution ad(h);
  auto hpinv = descent_detail::inverses(out.hprime_hat);
  QuatHat qinv = q.inverse();
  out.checks.roundtrip = true;
  for (auto& X : descent_detail::spanning_set(D, h.rank())) {
    auto tau = descent_detail::diagonal_adjoint(out.hprime_hat, hpinv, X,
                                                [&](const QuatHat& x) { return (q * D.iota(x) * qinv).conj(); });
    if (!(tau == ad(X))) {
      out.checks.roundtrip = false;
      break;
    }
  }
  if (!out.checks.all()) throw ConsistencyError("descent postcondition failed");
  return out;
}

// ---------------------------------------------------------------------------
// Split case: hermitian forms over (K, iota).

struct SplitDescent {
  QuadForm form;
  Matrix<KScalar> change;  // P with iota(P)^T H P diagonal
  bool congruence_verified = false;
};

inline Matrix<KScalar> iota_adjoint(const Matrix<KScalar>& m) {
  return m.map([](const KScalar& x) { return x.conj(); }).transpose();
}

inline SplitDescent split_unitary_descent(const Matrix<KScalar>& H) {
  std::size_t n = H.rows();
  if (n == 0 || H.cols() != n) throw PreconditionError("hermitian Gram matrix must be square");
  if (!(iota_adjoint(H) == H)) throw PreconditionError("Gram matrix is not hermitian");
  KScalar zero = zero_like(H(0, 0)), one = one_like(H(0, 0));
  Matrix<KScalar> P = Matrix<KScalar>::identity(n, one);
  Matrix<KScalar> M = H;
  auto apply = [&](const Matrix<KScalar>& E) {
    P = P * E;
    M = iota_adjoint(E) * M * E;
  };
  for (std::size_t k = 0; k < n; ++k) {
    if (M(k, k).is_zero()) {
      std::size_t j = k + 1;
      while (j < n && M(j, j).is_zero()) ++j;
      if (j < n) {
        Matrix<KScalar> E = Matrix<KScalar>::identity(n, one);
        E(k, k) = zero;
        E(j, j) = zero;
        E(k, j) = one;
        E(j, k) = one;
        apply(E);
      } else {
        j = k + 1;
        while (j < n && M(k, j).is_zero()) ++j;
        if (j == n) throw PreconditionError("degenerate hermitian form");
        // e_k += c e_j with c M(k,j) = 1 gives h(e_k, e_k) = 2
        Matrix<KScalar> E = Matrix<KScalar>::identity(n, one);
        E(j, k) = M(k, j).inverse();
        apply(E);
      }
    }
    Matrix<KScalar> E = Matrix<KScalar>::identity(n, one);
    KScalar inv = M(k, k).inverse();
    for (std::size_t j = k + 1; j < n; ++j) E(k, j) = -(inv * M(k, j));
    apply(E);
  }
  std::vector<Scalar> diag;
  for (std::size_t k = 0; k < n; ++k) {
    if (!M(k, k).in_base()) throw ConsistencyError("diagonal entry of a hermitian form outside F");
    diag.push_back(M(k, k).x());
  }
  bool ok = M.is_diagonal() && iota_adjoint(P) * H * P == M;
  if (!ok) throw ConsistencyError("hermitian diagonalization failed");
  return {QuadForm(diag[0].tower(), diag), P, ok};
}

// ---------------------------------------------------------------------------
// phi(f) = g f^iota g^{-1} on End(V) = M_n(Qhat).

struct SemilinearAutomorphism {
  std::shared_ptr<const UnitaryDatum> datum;
  QuatHatMatrix g, ginv;
  Scalar mu;              // theta-adjoint(g) H g = mu H^iota
  bool order2 = false;    // g g^iota in F^x
  bool commutes = false;  // phi o ad_h = ad_h o phi on the spanning set
  bool squares_to_identity = false;
  std::optional<QuatHatMatrix> witness;  // phi^2(X) != X when not of order 2

  QuatHatMatrix apply(const QuatHatMatrix& X) const { return g * datum->iota(X) * ginv; }
  json to_json() const {
    json rows = json::array();
    for (std::size_t i = 0; i < g.rows(); ++i) {
      json r = json::array();
      for (std::size_t j = 0; j < g.cols(); ++j) r.push_back(datum->str(g(i, j)));
      rows.push_back(r);
    }
    json j{{"g", rows}, {"mu", mu.str()}, {"order2", order2}, {"commutes_with_adjoint", commutes},
           {"phi_squared_identity", squares_to_identity}};
    if (witness) {
      json w = json::array();
      for (std::size_t a = 0; a < witness->rows(); ++a)
        for (std::size_t b = 0; b < witness->cols(); ++b)
          if (!(*witness)(a, b).is_zero()) w.push_back(json{{"row", a}, {"col", b}, {"entry", datum->str((*witness)(a, b))}});
      j["non_involutive_on"] = w;
    }
    return j;
  }
};

inline SemilinearAutomorphism build_semilinear_automorphism(const UnitaryHermForm& h, const QuatHatMatrix& g) {
  const auto D = h.datum();
  if (g.rows() != h.rank() || g.cols() != h.rank()) throw PreconditionError("similitude and form dimensions do not match");
  QuatHatMatrix H = h.gram();
  QuatHatMatrix M = D->theta_adjoint(g) * H * g;
  QuatHatMatrix Hi = D->iota(H);
  QuatHat ratio = M(0, 0) * Hi(0, 0).inverse();
  if (!ratio.is_scalar() || !ratio[0].in_base() || ratio[0].is_zero())
    throw PreconditionError("g is not a similitude onto the iota-conjugate form");
  Scalar mu = ratio[0].x();
  if (!(M == Hi.map([&](const QuatHat& x) { return D->scalar(D->lift(mu)) * x; })))
    throw PreconditionError("g is not a similitude onto the iota-conjugate form");
  SemilinearAutomorphism out{D, g, descent_detail::inverse(g), mu};
  QuatHatMatrix ggi = g * D->iota(g);
  QuatHat c = ggi(0, 0);
  out.order2 = c.is_scalar() && c[0].in_base() && !c[0].is_zero() &&
               ggi == QuatHatMatrix::identity(g.rows(), QuatHat::scalar(D->qhat(), c[0]));
  out.commutes = true;
  out.squares_to_identity = true;
  descent_detail::AdjointInvolution ad(h);
  for (auto& X : descent_detail::spanning_set(*D, h.rank())) {
    if (out.commutes && !(out.apply(ad(X)) == ad(out.apply(X))))
      out.commutes = false;
    if (out.squares_to_identity && !(out.apply(out.apply(X)) == X)) {
      out.squares_to_identity = false;
      out.witness = X;
    }
  }
  if (!out.commutes) throw ConsistencyError("semilinear map does not commute with the adjoint involution");
  if (out.order2 != out.squares_to_identity) throw ConsistencyError("order-2 test disagrees with phi^2 on the spanning set");
  return out;
}

}  // namespace outaut
