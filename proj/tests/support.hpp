#pragma once

// Random generators shared by the test binaries.

#include <random>

#include "outaut/scalar.hpp"

namespace outaut::test {

inline long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline mpq_class random_rational(std::mt19937_64& rng, long height) {
  long n = uniform(rng, -height, height);
  long d = uniform(rng, 1, height);
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

inline mpq_class random_nonzero_rational(std::mt19937_64& rng, long height) {
  for (;;) {
    mpq_class q = random_rational(rng, height);
    if (q != 0) return q;
  }
}

inline Coeff random_coeff(std::mt19937_64& rng, Base base, long height) {
  if (base == Base::Rationals) return Coeff(mpz_class(uniform(rng, -height, height)));
  return Coeff(mpz_class(uniform(rng, -height, height)), mpz_class(uniform(rng, -height, height)));
}

// Random polynomial of total degree <= deg with a few terms.
inline Poly random_poly(std::mt19937_64& rng, const TowerPtr& t, unsigned deg, int terms = 3) {
  std::vector<Term> ts;
  for (int k = 0; k < terms; ++k) {
    Exponents e(t->nvars(), 0);
    unsigned left = deg == 0 ? 0 : static_cast<unsigned>(uniform(rng, 0, deg));
    while (left > 0 && t->nvars() > 0) {
      ++e[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(t->nvars()) - 1))];
      --left;
    }
    ts.push_back({e, random_coeff(rng, t->base(), 5)});
  }
  return Poly::from_terms(t->nvars(), ts);
}

inline Scalar random_scalar(std::mt19937_64& rng, const TowerPtr& t, unsigned deg) {
  Poly n = random_poly(rng, t, deg);
  Poly d = random_poly(rng, t, deg > 0 ? deg - 1 : 0, 2);
  if (d.is_zero()) d = Poly::constant(t->nvars(), Coeff(1));
  return Scalar(t, n, d);
}

inline Scalar random_nonzero_scalar(std::mt19937_64& rng, const TowerPtr& t, unsigned deg) {
  for (;;) {
    Scalar s = random_scalar(rng, t, deg);
    if (!s.is_zero()) return s;
  }
}

}  // namespace outaut::test
