#pragma once

// Integer helpers on top of GMP: factorization, square roots modulo primes,
// square-free parts.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "outaut/errors.hpp"

namespace outaut::arith {

using Factorization = std::vector<std::pair<mpz_class, int>>;

inline const std::vector<unsigned long>& small_primes() {
  static const std::vector<unsigned long> primes = [] {
    const unsigned long limit = 100000;
    std::vector<bool> sieve(limit + 1, true);
    std::vector<unsigned long> out;
    for (unsigned long i = 2; i <= limit; ++i) {
      if (!sieve[i]) continue;
      out.push_back(i);
      for (unsigned long j = i * i; j <= limit; j += i) sieve[j] = false;
    }
    return out;
  }();
  return primes;
}

inline bool is_probable_prime(const mpz_class& n) {
  return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

inline mpz_class next_prime(const mpz_class& n) {
  mpz_class r;
  mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

namespace detail {

inline std::optional<mpz_class> brent_rho(const mpz_class& n, unsigned long seed) {
  if (n % 2 == 0) return mpz_class(2);
  mpz_class y = seed % n, c = (seed * 7 + 1) % n, g = 1, q = 1, x, ys;
  const unsigned long m = 128;
  unsigned long r = 1;
  auto f = [&](const mpz_class& v) { return mpz_class((v * v + c) % n); };
  const unsigned long max_r = 1ul << 22;
  while (g == 1) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) y = f(y);
    unsigned long k = 0;
    while (k < r && g == 1) {
      ys = y;
      unsigned long lim = std::min(m, r - k);
      for (unsigned long i = 0; i < lim; ++i) {
        y = f(y);
        mpz_class diff = x - y;
        q = (q * abs(diff)) % n;
      }
      g = gcd(q, n);
      k += m;
    }
    r *= 2;
    if (r > max_r) return std::nullopt;
  }
  if (g == n) {
    do {
      ys = f(ys);
      mpz_class diff = x - ys;
      g = gcd(mpz_class(abs(diff)), n);
    } while (g == 1);
  }
  if (g == n) return std::nullopt;
  return g;
}

inline void factor_into(mpz_class n, std::map<mpz_class, int>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
    std::map<mpz_class, int> half;
    factor_into(s, half);
    for (auto& [p, e] : half) out[p] += 2 * e;
    return;
  }
  for (unsigned long seed = 2; seed < 40; ++seed) {
    if (auto d = brent_rho(n, seed)) {
      factor_into(*d, out);
      factor_into(n / *d, out);
      return;
    }
  }
  throw CapacityError("integer factorization failed for " + n.get_str());
}

}  // namespace detail

// Prime factorization of |n|, primes ascending. n must be nonzero.
inline Factorization factor(const mpz_class& n_in) {
  if (n_in == 0) throw PreconditionError("factor of zero");
  mpz_class n = abs(n_in);
  std::map<mpz_class, int> found;
  for (unsigned long p : small_primes()) {
    if (n == 1) break;
    if (mpz_class(p) * p > n) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++found[mpz_class(p)];
    }
  }
  if (n > 1) detail::factor_into(n, found);
  return Factorization(found.begin(), found.end());
}

inline int valuation(mpz_class n, const mpz_class& p) {
  if (n == 0) throw PreconditionError("valuation of zero");
  int v = 0;
  while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return v;
}

inline int valuation(const mpq_class& x, const mpz_class& p) {
  return valuation(mpz_class(x.get_num()), p) - valuation(mpz_class(x.get_den()), p);
}

// Signed square-free integer s with x = s * r^2 for rational r.
inline mpz_class squarefree_part(const mpq_class& x) {
  if (x == 0) throw PreconditionError("square-free part of zero");
  mpz_class n = x.get_num() * x.get_den();
  mpz_class s = sgn(n) < 0 ? -1 : 1;
  for (auto& [p, e] : factor(n))
    if (e % 2) s *= p;
  return s;
}

inline bool is_square(const mpz_class& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t());
}

inline bool is_square(const mpq_class& x) {
  return x >= 0 && is_square(mpz_class(x.get_num())) && is_square(mpz_class(x.get_den()));
}

inline mpz_class isqrt(const mpz_class& n) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline std::optional<mpq_class> sqrt_exact(const mpq_class& x) {
  if (!is_square(x)) return std::nullopt;
  mpq_class r(isqrt(x.get_num()), isqrt(x.get_den()));
  r.canonicalize();
  return r;
}

inline int legendre(const mpz_class& a, const mpz_class& p) {
  return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

inline mpz_class mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline mpz_class powm(const mpz_class& b, const mpz_class& e, const mpz_class& m) {
  mpz_class r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

// Tonelli-Shanks. Returns r with r^2 = a mod p for odd prime p, if a is a square.
inline std::optional<mpz_class> sqrt_mod_prime(const mpz_class& a_in, const mpz_class& p) {
  mpz_class a = mod(a_in, p);
  if (p == 2) return a;
  if (a == 0) return mpz_class(0);
  if (legendre(a, p) != 1) return std::nullopt;
  mpz_class q = p - 1;
  unsigned long s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  mpz_class z = 2;
  while (legendre(z, p) != -1) ++z;
  mpz_class m = s, c = powm(z, q, p), t = powm(a, q, p), r = powm(a, (q + 1) / 2, p);
  while (t != 1) {
    unsigned long i = 0;
    mpz_class tt = t;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
    }
    mpz_class b = c;
    for (unsigned long k = 0; k + i + 1 < m.get_ui(); ++k) b = b * b % p;
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return r;
}

// Square root of a modulo a square-free modulus m > 0, combined by CRT.
inline std::optional<mpz_class> sqrt_mod_squarefree(const mpz_class& a, const mpz_class& m) {
  if (m == 1) return mpz_class(0);
  mpz_class result = 0, modulus = 1;
  for (auto& [p, e] : factor(m)) {
    if (e != 1) throw PreconditionError("modulus not square-free");
    auto r = sqrt_mod_prime(a, p);
    if (!r) return std::nullopt;
    // combine result mod modulus with r mod p
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), mpz_class(modulus % p).get_mpz_t(), p.get_mpz_t());
    mpz_class k = mod((*r - result) * inv, p);
    result += modulus * k;
    modulus *= p;
  }
  return mod(result, modulus);
}

// Gaussian integer a + b i.
struct GaussInt {
  mpz_class re, im;
  friend bool operator==(const GaussInt& x, const GaussInt& y) { return x.re == y.re && x.im == y.im; }
  friend bool operator<(const GaussInt& x, const GaussInt& y) {
    return x.re != y.re ? x.re < y.re : x.im < y.im;
  }
  GaussInt operator*(const GaussInt& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
  mpz_class norm() const { return re * re + im * im; }
};

// Exact division test x / y in Z[i].
inline std::optional<GaussInt> gauss_divide(const GaussInt& x, const GaussInt& y) {
  mpz_class n = y.norm();
  mpz_class re = x.re * y.re + x.im * y.im;
  mpz_class im = x.im * y.re - x.re * y.im;
  if (!mpz_divisible_p(re.get_mpz_t(), n.get_mpz_t()) || !mpz_divisible_p(im.get_mpz_t(), n.get_mpz_t()))
    return std::nullopt;
  return GaussInt{re / n, im / n};
}

inline mpz_class round_div(const mpz_class& a, const mpz_class& b) {
  // nearest integer to a/b, b > 0
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), mpz_class(2 * a + b).get_mpz_t(), mpz_class(2 * b).get_mpz_t());
  return q;
}

inline GaussInt gauss_gcd(GaussInt a, GaussInt b) {
  while (!(b.re == 0 && b.im == 0)) {
    mpz_class n = b.norm();
    mpz_class re = a.re * b.re + a.im * b.im;
    mpz_class im = a.im * b.re - a.re * b.im;
    GaussInt q{round_div(re, n), round_div(im, n)};
    GaussInt qb = q * b;
    GaussInt r{a.re - qb.re, a.im - qb.im};
    a = b;
    b = r;
  }
  return a;
}

// Associate with re > 0, im >= 0.
inline GaussInt gauss_normalize(GaussInt z) {
  for (int k = 0; k < 4; ++k) {
    if (z.re > 0 && z.im >= 0) return z;
    z = GaussInt{-z.im, z.re};
  }
  return z;
}

inline constexpr unsigned long kGaussianPrimeCap = 10000;

// Gaussian prime above the rational prime p (p = 2 or p = 1 mod 4), normalized.
inline GaussInt gaussian_prime_above(const mpz_class& p) {
  if (p == 2) return {1, 1};
  auto r = sqrt_mod_prime(mpz_class(-1), p);
  if (!r) throw PreconditionError("prime is inert in Z[i]");
  // Euclid on (p, r) until remainder < sqrt(p)
  mpz_class a = p, b = *r, lim = isqrt(p);
  while (b > lim) {
    mpz_class t = a % b;
    a = b;
    b = t;
  }
  mpz_class c = isqrt(mpz_class(p - b * b));
  return gauss_normalize(GaussInt{b, c});
}

struct GaussFactorization {
  int unit_power = 0;  // unit = i^unit_power
  std::vector<std::pair<GaussInt, int>> primes;
};

// Factorization of a nonzero Gaussian integer into normalized primes.
inline GaussFactorization gauss_factor(GaussInt z) {
  mpz_class n = z.norm();
  if (n == 0) throw PreconditionError("factor of zero");
  GaussFactorization out;
  for (auto& [p, e] : factor(n)) {
    if (p > kGaussianPrimeCap)
      throw CapacityError("Gaussian factorization limited to rational primes <= 10000, got " + p.get_str());
    std::vector<GaussInt> cands;
    if (p % 4 == 3) {
      cands.push_back(GaussInt{p, 0});
    } else {
      GaussInt pi = gaussian_prime_above(p);
      cands.push_back(pi);
      GaussInt conj = gauss_normalize(GaussInt{pi.re, -pi.im});
      if (!(conj == pi)) cands.push_back(conj);
    }
    std::sort(cands.begin(), cands.end());
    for (auto& pi : cands) {
      int k = 0;
      while (auto q = gauss_divide(z, pi)) {
        z = *q;
        ++k;
      }
      if (k) out.primes.emplace_back(pi, k);
    }
  }
  if (z == GaussInt{1, 0}) out.unit_power = 0;
  else if (z == GaussInt{0, 1}) out.unit_power = 1;
  else if (z == GaussInt{-1, 0}) out.unit_power = 2;
  else if (z == GaussInt{0, -1}) out.unit_power = 3;
  else throw ConsistencyError("Gaussian factorization left a non-unit");
  return out;
}

}  // namespace outaut::arith
