#pragma once

// Local theory over Q: Hilbert symbols, local squares, local isotropy of
// diagonal forms (Serre's criteria), and Legendre's ternary solver.

#include <gmpxx.h>

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "outaut/arith.hpp"
#include "outaut/errors.hpp"

namespace outaut::local {

// A place of Q: a prime p, or the real place (p == 0).
struct Place {
  mpz_class p = 0;

  static Place infinity() { return Place{0}; }
  static Place prime(const mpz_class& q) { return Place{q}; }
  bool is_infinite() const { return p == 0; }
  std::string str() const { return is_infinite() ? "inf" : p.get_str(); }
  static Place parse(const std::string& s) {
    if (s == "inf" || s == "infinity" || s == "oo") return infinity();
    mpz_class q;
    if (q.set_str(s, 10) != 0 || !arith::is_probable_prime(q)) throw ParseError("invalid place '" + s + "'", 0);
    return prime(q);
  }
  friend bool operator<(const Place& a, const Place& b) { return a.p < b.p; }
  friend bool operator==(const Place& a, const Place& b) { return a.p == b.p; }
};

namespace detail {

// x = n/d has the square class of n*d.
inline mpz_class integral_rep(const mpq_class& x) { return x.get_num() * x.get_den(); }

inline int eps2(const mpz_class& u) { return arith::mod(u, 4) == 3 ? 1 : 0; }
inline int omega2(const mpz_class& u) {
  mpz_class r = arith::mod(u, 8);
  return (r == 3 || r == 5) ? 1 : 0;
}

}  // namespace detail

inline int hilbert_symbol(const mpq_class& a_in, const mpq_class& b_in, const Place& v) {
  if (a_in == 0 || b_in == 0) throw PreconditionError("Hilbert symbol of zero");
  mpz_class a = detail::integral_rep(a_in), b = detail::integral_rep(b_in);
  if (v.is_infinite()) return (a < 0 && b < 0) ? -1 : 1;
  const mpz_class& p = v.p;
  int alpha = arith::valuation(a, p), beta = arith::valuation(b, p);
  mpz_class u = a, w = b;
  for (int k = 0; k < alpha; ++k) u /= p;
  for (int k = 0; k < beta; ++k) w /= p;
  if (p == 2) {
    int e = detail::eps2(u) * detail::eps2(w) + alpha * detail::omega2(w) + beta * detail::omega2(u);
    return e % 2 ? -1 : 1;
  }
  int s = 1;
  if ((alpha % 2) && (beta % 2) && arith::mod(p, 4) == 3) s = -s;
  if (beta % 2) s *= arith::legendre(u, p);
  if (alpha % 2) s *= arith::legendre(w, p);
  return s;
}

inline bool is_local_square(const mpq_class& x, const Place& v) {
  if (x == 0) throw PreconditionError("local square test of zero");
  mpz_class n = detail::integral_rep(x);
  if (v.is_infinite()) return n > 0;
  int k = arith::valuation(n, v.p);
  if (k % 2) return false;
  mpz_class u = n;
  for (int i = 0; i < k; ++i) u /= v.p;
  if (v.p == 2) return arith::mod(u, 8) == 1;
  return arith::legendre(u, v.p) == 1;
}

// Places where something about the given rationals can be non-trivial: inf, 2, odd primes of their supports.
inline std::vector<Place> relevant_places(const std::vector<mpq_class>& xs) {
  std::set<mpz_class> primes{2};
  for (auto& x : xs) {
    if (x == 0) continue;
    for (auto& [p, e] : arith::factor(detail::integral_rep(x))) primes.insert(p);
  }
  std::vector<Place> out{Place::infinity()};
  for (auto& p : primes) out.push_back(Place::prime(p));
  return out;
}

// Representatives of Q_v^x / squares.
inline std::vector<mpq_class> local_square_classes(const Place& v) {
  if (v.is_infinite()) return {1, -1};
  if (v.p == 2) return {1, 3, 5, 7, 2, 6, 10, 14};
  mpz_class u = 2;
  while (arith::legendre(u, v.p) != -1) ++u;
  return {1, mpq_class(u), mpq_class(v.p), mpq_class(u * v.p)};
}

struct LocalData {
  mpq_class disc;
  int epsilon;  // prod_{i<j} (a_i, a_j)_v
};

inline LocalData local_invariants(const std::vector<mpq_class>& a, const Place& v) {
  LocalData d{1, 1};
  for (std::size_t i = 0; i < a.size(); ++i) {
    d.disc *= a[i];
    for (std::size_t j = i + 1; j < a.size(); ++j) d.epsilon *= hilbert_symbol(a[i], a[j], v);
  }
  return d;
}

inline bool locally_isotropic(const std::vector<mpq_class>& a, const Place& v) {
  std::size_t n = a.size();
  if (n <= 1) return false;
  if (v.is_infinite()) {
    bool pos = false, neg = false;
    for (auto& x : a) (x > 0 ? pos : neg) = true;
    return pos && neg;
  }
  if (n == 2) return is_local_square(mpq_class(-a[0] * a[1]), v);
  if (n >= 5) return true;
  LocalData d = local_invariants(a, v);
  if (n == 3) return hilbert_symbol(-1, mpq_class(-d.disc), v) == d.epsilon;
  return !is_local_square(d.disc, v) || d.epsilon == hilbert_symbol(-1, -1, v);
}

// First place where the form is locally anisotropic, if any.
inline std::optional<Place> anisotropic_place(const std::vector<mpq_class>& a) {
  for (auto& v : relevant_places(a))
    if (!locally_isotropic(a, v)) return v;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Legendre's equation.

namespace detail {

struct SqfSplit {
  mpz_class s;  // square-free, signed
  mpz_class r;  // x = s * r^2
};

inline SqfSplit split_square(const mpz_class& x) {
  mpz_class s = sgn(x) < 0 ? -1 : 1, r = 1;
  for (auto& [p, e] : arith::factor(x)) {
    if (e % 2) s *= p;
    for (int k = 0; k < e / 2; ++k) r *= p;
  }
  return {s, r};
}

// Integer (X, Y, Z) != 0 with X^2 = A Y^2 + B Z^2; A, B square-free and the equation solvable.
inline std::vector<mpz_class> legendre_solve(mpz_class A, mpz_class B, int depth = 0) {
  if (depth > 400) throw ConsistencyError("Legendre descent too deep");
  if (A == 1) return {1, 1, 0};
  if (B == 1) return {1, 0, 1};
  if (A + B == 0) return {0, 1, 1};
  if (abs(A) > abs(B)) {
    auto r = legendre_solve(B, A, depth + 1);
    return {r[0], r[2], r[1]};
  }
  mpz_class m = abs(B);
  if (m == 1) throw ConsistencyError("Legendre equation not solvable");
  auto t0 = arith::sqrt_mod_squarefree(A, m);
  if (!t0) throw ConsistencyError("Legendre equation not solvable");
  mpz_class t = *t0;
  if (2 * t > m) t -= m;
  mpz_class k = (t * t - A) / B;
  if (k == 0) throw ConsistencyError("Legendre descent hit a square");
  SqfSplit ks = split_square(k);
  auto r = legendre_solve(A, ks.s, depth + 1);
  mpz_class X = r[0] * t + A * r[1];
  mpz_class Y = r[0] + t * r[1];
  mpz_class Z = ks.s * ks.r * r[2];
  mpz_class g = gcd(gcd(X, Y), Z);
  if (g > 1) {
    X /= g;
    Y /= g;
    Z /= g;
  }
  return {X, Y, Z};
}

}  // namespace detail

// Nonzero rational solution of a x^2 + b y^2 + c z^2 = 0; the form must be isotropic.
inline std::vector<mpq_class> solve_ternary(const mpq_class& a, const mpq_class& b, const mpq_class& c) {
  // clear denominators: scale the whole form and each coordinate
  auto sa = detail::split_square(detail::integral_rep(a));
  auto sb = detail::split_square(detail::integral_rep(b));
  auto sc = detail::split_square(detail::integral_rep(c));
  // a = sa.s * (sa.r / a_den)^2, since a = num/den ~ num*den/den^2
  mpq_class ra(sa.r, mpz_class(a.get_den())), rb(sb.r, mpz_class(b.get_den())), rc(sc.r, mpz_class(c.get_den()));
  ra.canonicalize();
  rb.canonicalize();
  rc.canonicalize();
  // s_a x'^2 + s_b y'^2 + s_c z'^2 = 0, x' = ra x, ...
  // (s_a x')^2 = A y'^2 + B z'^2 with A = -s_a s_b, B = -s_a s_c
  auto A = detail::split_square(mpz_class(-sa.s * sb.s));
  auto B = detail::split_square(mpz_class(-sa.s * sc.s));
  auto sol = detail::legendre_solve(A.s, B.s);
  // X^2 = A.s Y^2 + B.s Z^2, y' = Y / A.r, z' = Z / B.r, x' = X / s_a
  mpq_class xp(sol[0], sa.s), yp(sol[1], A.r), zp(sol[2], B.r);
  xp.canonicalize();
  yp.canonicalize();
  zp.canonicalize();
  std::vector<mpq_class> out{xp / ra, yp / rb, zp / rc};
  mpq_class check = a * out[0] * out[0] + b * out[1] * out[1] + c * out[2] * out[2];
  if (check != 0) throw ConsistencyError("ternary solution failed verification");
  return out;
}

}  // namespace outaut::local
