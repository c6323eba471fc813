#pragma once

// Sparse multivariate polynomials over Q or Q(i).
//
// Terms are kept sorted in decreasing lexicographic order where the LAST
// variable is the most significant one, matching the tower order.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "outaut/coeff.hpp"
#include "outaut/errors.hpp"

namespace outaut {

using Exponents = std::vector<std::uint32_t>;

// <0, 0, >0 like a three-way compare, last index most significant.
inline int lex_cmp(const Exponents& a, const Exponents& b) {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

struct Term {
  Exponents exp;
  Coeff c;
};

class Poly {
 public:
  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const Coeff& c) {
    Poly p(nvars);
    if (!c.is_zero()) p.terms_.push_back({Exponents(nvars, 0), c});
    return p;
  }
  static Poly variable(std::size_t nvars, std::size_t idx, std::uint32_t power = 1) {
    Poly p(nvars);
    Exponents e(nvars, 0);
    e[idx] = power;
    p.terms_.push_back({std::move(e), Coeff(1)});
    return p;
  }
  static Poly monomial(Exponents e, const Coeff& c) {
    Poly p(e.size());
    if (!c.is_zero()) p.terms_.push_back({std::move(e), c});
    return p;
  }
  // Terms may be unsorted and contain duplicates.
  static Poly from_terms(std::size_t nvars, std::vector<Term> terms) {
    Poly p(nvars);
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && is_zero_exp(terms_[0].exp));
  }
  bool is_one() const { return is_constant() && !terms_.empty() && terms_[0].c.is_one(); }
  Coeff constant_value() const {
    if (!is_constant()) throw PreconditionError("polynomial is not constant");
    return terms_.empty() ? Coeff(0) : terms_[0].c;
  }
  const Term& lt() const { return terms_.front(); }
  const Coeff& lc() const { return terms_.front().c; }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (a.terms_[i].exp != b.terms_[i].exp || a.terms_[i].c != b.terms_[i].c) return false;
    }
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.c = -t.c;
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) { return merge(a, b, false); }
  friend Poly operator-(const Poly& a, const Poly& b) { return merge(a, b, true); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(std::max(a.nvars_, b.nvars_));
    if (b.terms_.size() == 1) return a.mul_term(b.terms_[0]);
    if (a.terms_.size() == 1) return b.mul_term(a.terms_[0]);
    std::vector<Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (auto& x : a.terms_) {
      for (auto& y : b.terms_) {
        Exponents e(a.nvars_);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = x.exp[i] + y.exp[i];
        out.push_back({std::move(e), x.c * y.c});
      }
    }
    return from_terms(a.nvars_, std::move(out));
  }

  Poly scaled(const Coeff& c) const {
    if (c.is_zero()) return Poly(nvars_);
    Poly r = *this;
    for (auto& t : r.terms_) t.c *= c;
    return r;
  }

  Poly mul_term(const Term& m) const {
    Poly r(nvars_);
    if (m.c.is_zero()) return r;
    r.terms_.reserve(terms_.size());
    for (auto& t : terms_) {
      Exponents e(nvars_);
      for (std::size_t i = 0; i < nvars_; ++i) e[i] = t.exp[i] + m.exp[i];
      r.terms_.push_back({std::move(e), t.c * m.c});
    }
    return r;  // order preserved under multiplication by a monomial
  }

  Poly pow(unsigned k) const {
    Poly r = constant(nvars_, Coeff(1)), b = *this;
    while (k) {
      if (k & 1) r = r * b;
      k >>= 1;
      if (k) b = b * b;
    }
    return r;
  }

  std::uint32_t degree(std::size_t var) const {
    std::uint32_t d = 0;
    for (auto& t : terms_) d = std::max(d, t.exp[var]);
    return d;
  }
  std::uint32_t min_degree(std::size_t var) const {
    if (terms_.empty()) return 0;
    std::uint32_t d = terms_[0].exp[var];
    for (auto& t : terms_) d = std::min(d, t.exp[var]);
    return d;
  }
  std::uint32_t total_degree() const {
    std::uint32_t d = 0;
    for (auto& t : terms_) {
      std::uint32_t s = 0;
      for (auto e : t.exp) s += e;
      d = std::max(d, s);
    }
    return d;
  }
  bool uses(std::size_t var) const {
    for (auto& t : terms_)
      if (t.exp[var]) return true;
    return false;
  }
  // Highest-index variable occurring, or -1 for constants.
  int main_var() const {
    int best = -1;
    for (auto& t : terms_)
      for (std::size_t i = nvars_; i-- > 0;)
        if (t.exp[i]) {
          best = std::max(best, static_cast<int>(i));
          break;
        }
    return best;
  }

  // Coefficients of var^0, var^1, ... (var removed from exponents, same nvars).
  std::vector<Poly> to_univariate(std::size_t var) const {
    std::vector<std::vector<Term>> buckets(degree(var) + 1);
    for (auto& t : terms_) {
      Term u = t;
      u.exp[var] = 0;
      buckets[t.exp[var]].push_back(std::move(u));
    }
    std::vector<Poly> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) {
      Poly p(nvars_);
      p.terms_ = std::move(b);  // relative order kept, var exponent constant within bucket
      out.push_back(std::move(p));
    }
    return out;
  }
  static Poly from_univariate(const std::vector<Poly>& cs, std::size_t var, std::size_t nvars) {
    std::vector<Term> all;
    for (std::size_t d = 0; d < cs.size(); ++d)
      for (auto& t : cs[d].terms_) {
        Term u = t;
        u.exp[var] += static_cast<std::uint32_t>(d);
        all.push_back(std::move(u));
      }
    return from_terms(nvars, std::move(all));
  }

  Poly coeff_of(std::size_t var, std::uint32_t d) const {
    Poly p(nvars_);
    for (auto& t : terms_)
      if (t.exp[var] == d) {
        Term u = t;
        u.exp[var] = 0;
        p.terms_.push_back(std::move(u));
      }
    return p;
  }

  Poly derivative(std::size_t var) const {
    std::vector<Term> out;
    for (auto& t : terms_) {
      if (!t.exp[var]) continue;
      Term u = t;
      u.c *= Coeff(static_cast<long>(t.exp[var]));
      --u.exp[var];
      out.push_back(std::move(u));
    }
    Poly p(nvars_);
    p.terms_ = std::move(out);
    return p;
  }

  // Substitute var := value (a polynomial in the same ring).
  Poly substitute(std::size_t var, const Poly& value) const {
    auto cs = to_univariate(var);
    Poly r(nvars_);
    for (std::size_t d = cs.size(); d-- > 0;) r = r * value + cs[d];
    return r;
  }

  Coeff evaluate(const std::vector<Coeff>& point) const {
    Coeff s(0);
    for (auto& t : terms_) {
      Coeff m = t.c;
      for (std::size_t i = 0; i < nvars_; ++i)
        for (std::uint32_t k = 0; k < t.exp[i]; ++k) m *= point[i];
      s += m;
    }
    return s;
  }

  // Change variable layout: new index of old variable i is map[i] (must not use dropped vars).
  Poly remap(std::size_t new_nvars, const std::vector<int>& map) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      Exponents e(new_nvars, 0);
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (!t.exp[i]) continue;
        if (map[i] < 0) throw PreconditionError("remap drops a variable that occurs");
        e[map[i]] = t.exp[i];
      }
      out.push_back({std::move(e), t.c});
    }
    return from_terms(new_nvars, std::move(out));
  }

  Poly conj_coeffs() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.c = t.c.conj();
    return r;
  }

  std::string str(const std::vector<std::string>& names, const std::string& imag = "i") const;

 private:
  static bool is_zero_exp(const Exponents& e) {
    for (auto x : e)
      if (x) return false;
    return true;
  }

  void normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return lex_cmp(a.exp, b.exp) > 0; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().exp == t.exp) {
        out.back().c += t.c;
      } else {
        if (!out.empty() && out.back().c.is_zero()) out.pop_back();
        out.push_back(std::move(t));
      }
    }
    if (!out.empty() && out.back().c.is_zero()) out.pop_back();
    terms_ = std::move(out);
  }

  static Poly merge(const Poly& a, const Poly& b, bool negate_b) {
    Poly r(std::max(a.nvars_, b.nvars_));
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      int c;
      if (i == a.terms_.size()) c = -1;
      else if (j == b.terms_.size()) c = 1;
      else c = lex_cmp(a.terms_[i].exp, b.terms_[j].exp);
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        Term t = b.terms_[j++];
        if (negate_b) t.c = -t.c;
        r.terms_.push_back(std::move(t));
      } else {
        Coeff s = negate_b ? a.terms_[i].c - b.terms_[j].c : a.terms_[i].c + b.terms_[j].c;
        if (!s.is_zero()) r.terms_.push_back({a.terms_[i].exp, s});
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

inline std::string Poly::str(const std::vector<std::string>& names, const std::string& imag) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto& t : terms_) {
    std::string mono;
    for (std::size_t i = nvars_; i-- > 0;) {
      if (!t.exp[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (t.exp[i] > 1) mono += "^" + std::to_string(t.exp[i]);
    }
    Coeff c = t.c;
    bool neg = false;
    if (c.is_real() && c.re() < 0) {
      neg = true;
      c = -c;
    }
    std::string cs;
    if (mono.empty()) {
      cs = c.is_real() ? c.str(imag) : "(" + c.str(imag) + ")";
    } else if (c.is_one()) {
      cs = mono;
    } else {
      cs = (c.is_real() ? c.str(imag) : "(" + c.str(imag) + ")") + "*" + mono;
    }
    if (first) out += neg ? "-" + cs : cs;
    else out += neg ? " - " + cs : " + " + cs;
    first = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Division, gcd, square-free decomposition, square roots.

inline bool divides_exp(const Exponents& d, const Exponents& n) {
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] > n[i]) return false;
  return true;
}

// Exact quotient a / b, or nullopt when b does not divide a.
inline std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DivisionByZero();
  std::size_t nv = a.nvars();
  if (a.is_zero()) return Poly(nv);
  if (b.is_constant()) return a.scaled(b.constant_value().inverse());
  Poly q(nv), r = a;
  const Term& lb = b.lt();
  Coeff inv = lb.c.inverse();
  std::size_t guard = 0;
  while (!r.is_zero()) {
    const Term& lr = r.lt();
    if (!divides_exp(lb.exp, lr.exp)) return std::nullopt;
    Exponents e(nv);
    for (std::size_t i = 0; i < nv; ++i) e[i] = lr.exp[i] - lb.exp[i];
    Term t{std::move(e), lr.c * inv};
    q = q + Poly::monomial(t.exp, t.c);
    r = r - b.mul_term(t);
    if (++guard > 1000000) throw CapacityError("polynomial division did not terminate");
  }
  return q;
}

inline Poly divide_or_throw(const Poly& a, const Poly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw ConsistencyError("expected exact polynomial division");
  return *q;
}

inline Poly make_monic(const Poly& p) {
  if (p.is_zero()) return p;
  if (p.lc().is_one()) return p;
  return p.scaled(p.lc().inverse());
}

inline Poly poly_gcd(const Poly& a, const Poly& b);

namespace poly_detail {

inline Poly content_of(const std::vector<Poly>& cs) {
  Poly g(cs.empty() ? 0 : cs[0].nvars());
  for (auto& c : cs) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? make_monic(c) : poly_gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

inline void trim(std::vector<Poly>& u) {
  while (!u.empty() && u.back().is_zero()) u.pop_back();
}

// Pseudo-remainder of univariate polynomials with polynomial coefficients.
inline std::vector<Poly> prem(std::vector<Poly> r, const std::vector<Poly>& b) {
  std::size_t n = b.size() - 1;
  const Poly& lcb = b.back();
  trim(r);
  while (!r.empty() && r.size() - 1 >= n) {
    Poly lcr = r.back();
    std::size_t shift = r.size() - 1 - n;
    for (auto& c : r) c = c * lcb;
    for (std::size_t k = 0; k <= n; ++k) r[k + shift] = r[k + shift] - lcr * b[k];
    trim(r);
  }
  return r;
}

// Scale so that the coefficients become coprime (Gaussian) integers; keeps PRS
// coefficients small.
inline void clear_rational_content(std::vector<Poly>& u) {
  mpz_class den = 1;
  bool gaussian = false, any = false;
  for (auto& c : u)
    for (auto& t : c.terms()) {
      any = true;
      if (!t.c.is_real()) gaussian = true;
      den = lcm(den, mpz_class(t.c.re().get_den()));
      den = lcm(den, mpz_class(t.c.im().get_den()));
    }
  if (!any) return;
  arith::GaussInt g{0, 0};
  for (auto& c : u)
    for (auto& t : c.terms()) {
      arith::GaussInt z{mpz_class(t.c.re() * den), mpz_class(t.c.im() * den)};
      if (gaussian) {
        g = arith::gauss_gcd(g, z);
      } else {
        g.re = gcd(g.re, z.re);
      }
      if (!gaussian && g.re == 1) break;
    }
  Coeff f = Coeff(mpq_class(den)) / Coeff(mpq_class(g.re), mpq_class(g.im));
  if (f.is_one()) return;
  for (auto& c : u) c = c.scaled(f);
}

inline Poly monomial_content(const Poly& p) {
  Exponents e = p.terms()[0].exp;
  for (auto& t : p.terms())
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::min(e[i], t.exp[i]);
  return Poly::monomial(e, Coeff(1));
}

}  // namespace poly_detail

// Monic gcd (leading coefficient 1); gcd(0, 0) = 0.
inline Poly poly_gcd(const Poly& a, const Poly& b) {
  using namespace poly_detail;
  std::size_t nv = std::max(a.nvars(), b.nvars());
  if (a.is_zero()) return make_monic(b);
  if (b.is_zero()) return make_monic(a);
  if (a.is_constant() || b.is_constant()) return Poly::constant(nv, Coeff(1));
  if (a == b) return make_monic(a);
  if (a.terms().size() == 1 || b.terms().size() == 1) {
    Poly m = monomial_content(a.terms().size() == 1 ? b : a);
    const Exponents& e = (a.terms().size() == 1 ? a : b).terms()[0].exp;
    Exponents r = m.terms()[0].exp;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::min(r[i], e[i]);
    return Poly::monomial(r, Coeff(1));
  }
  int va = a.main_var(), vb = b.main_var();
  int v = std::max(va, vb);
  if (!a.uses(v)) return poly_gcd(a, content_of(b.to_univariate(v)));
  if (!b.uses(v)) return poly_gcd(content_of(a.to_univariate(v)), b);
  auto ua = a.to_univariate(v), ub = b.to_univariate(v);
  Poly ca = content_of(ua), cb = content_of(ub);
  Poly c = poly_gcd(ca, cb);
  for (auto& x : ua) x = divide_or_throw(x, ca);
  for (auto& x : ub) x = divide_or_throw(x, cb);
  clear_rational_content(ua);
  clear_rational_content(ub);
  if (ua.size() < ub.size()) std::swap(ua, ub);
  while (!ub.empty()) {
    auto r = prem(ua, ub);
    ua = std::move(ub);
    if (r.empty()) {
      ub.clear();
      break;
    }
    if (r.size() == 1) {  // constant in v: primitive parts are coprime
      ua = {Poly::constant(nv, Coeff(1))};
      ub.clear();
      break;
    }
    Poly cr = content_of(r);
    for (auto& x : r) x = divide_or_throw(x, cr);
    clear_rational_content(r);
    ub = std::move(r);
  }
  Poly cpp = content_of(ua);
  for (auto& x : ua) x = divide_or_throw(x, cpp);
  return make_monic(Poly::from_univariate(ua, v, nv) * c);
}

struct SquareFreeDecomposition {
  Coeff unit;
  std::vector<std::pair<Poly, int>> factors;  // monic, square-free, pairwise coprime
};

// p = unit * prod f^m.
inline SquareFreeDecomposition squarefree_decomposition(const Poly& p) {
  if (p.is_zero()) throw PreconditionError("square-free decomposition of zero");
  SquareFreeDecomposition out;
  out.unit = p.lc();
  std::vector<std::pair<Poly, int>> acc;
  Poly cur = make_monic(p);
  while (!cur.is_constant()) {
    int v = cur.main_var();
    Poly cont = poly_detail::content_of(cur.to_univariate(v));
    Poly f = divide_or_throw(cur, cont);
    // Yun's algorithm in the variable v (f is primitive in v)
    Poly fp = f.derivative(v);
    Poly a0 = poly_gcd(f, fp);
    Poly b = divide_or_throw(f, a0);
    Poly c = divide_or_throw(fp, a0);
    Poly d = c - b.derivative(v);
    int i = 1;
    while (!b.is_constant()) {
      Poly ai = poly_gcd(b, d);
      b = divide_or_throw(b, ai);
      c = divide_or_throw(d, ai);
      d = c - b.derivative(v);
      if (!ai.is_constant()) acc.emplace_back(make_monic(ai), i);
      ++i;
    }
    cur = cont;
  }
  out.factors = std::move(acc);
  return out;
}

// Exact square root with canonical sign, or nullopt.
inline std::optional<Poly> poly_sqrt(const Poly& p, Base base) {
  std::size_t nv = p.nvars();
  if (p.is_zero()) return p;
  const Term& l = p.lt();
  Exponents e0(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    if (l.exp[i] % 2) return std::nullopt;
    e0[i] = l.exp[i] / 2;
  }
  auto c0 = l.c.sqrt_in(base);
  if (!c0) return std::nullopt;
  Term s0{e0, *c0};
  Poly s = Poly::monomial(e0, *c0);
  Poly r = p - s * s;
  Coeff inv2 = (Coeff(2) * s0.c).inverse();
  Exponents last = e0;
  std::size_t guard = 0;
  while (!r.is_zero()) {
    const Term& lr = r.lt();
    if (!divides_exp(s0.exp, lr.exp)) return std::nullopt;
    Exponents e(nv);
    for (std::size_t i = 0; i < nv; ++i) e[i] = lr.exp[i] - s0.exp[i];
    if (lex_cmp(e, last) >= 0) return std::nullopt;
    Poly t = Poly::monomial(e, lr.c * inv2);
    r = r - (s * t).scaled(Coeff(2)) - t * t;
    s = s + t;
    last = e;
    if (++guard > 100000) throw CapacityError("polynomial square root did not terminate");
  }
  return s;
}

}  // namespace outaut
