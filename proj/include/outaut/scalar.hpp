#pragma once

// Elements of a field tower: reduced quotients of polynomials with a monic
// denominator, plus square classes and discrete valuations.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "outaut/errors.hpp"
#include "outaut/poly.hpp"
#include "outaut/tower.hpp"

namespace outaut {

class Scalar {
 public:
  Scalar() = default;
  explicit Scalar(TowerPtr t) : tower_(std::move(t)), num_(tower_->nvars()), den_(one_poly(*tower_)) {}
  Scalar(TowerPtr t, long v) : Scalar(t, Coeff(v)) {}
  Scalar(TowerPtr t, const Coeff& c)
      : tower_(std::move(t)), num_(Poly::constant(tower_->nvars(), c)), den_(one_poly(*tower_)) {
    check_base(c);
  }
  Scalar(TowerPtr t, Poly num, Poly den) : tower_(std::move(t)), num_(std::move(num)), den_(std::move(den)) {
    reduce();
  }
  static Scalar from_poly(TowerPtr t, Poly num) {
    Scalar s(std::move(t));
    s.num_ = std::move(num);
    return s;
  }
  static Scalar var(TowerPtr t, const std::string& name) {
    std::size_t idx = t->require_index(name);
    std::size_t n = t->nvars();
    return from_poly(std::move(t), Poly::variable(n, idx));
  }
  static Scalar var(TowerPtr t, std::size_t idx) {
    std::size_t n = t->nvars();
    return from_poly(std::move(t), Poly::variable(n, idx));
  }
  static Scalar imag_unit(TowerPtr t) { return Scalar(std::move(t), Coeff::imag_unit()); }

  const TowerPtr& tower() const { return tower_; }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_one(); }
  Coeff constant_value() const { return num_.constant_value(); }

  Scalar operator-() const {
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    a.check_same(b);
    if (a.den_.is_one() && b.den_.is_one()) return from_poly(a.tower_, a.num_ + b.num_);
    if (a.den_ == b.den_) return Scalar(a.tower_, a.num_ + b.num_, a.den_);
    return Scalar(a.tower_, a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    a.check_same(b);
    if (a.den_.is_one() && b.den_.is_one()) return from_poly(a.tower_, a.num_ * b.num_);
    if (a.is_zero() || b.is_zero()) return Scalar(a.tower_);
    // cross-cancel before multiplying
    Poly g1 = poly_gcd(a.num_, b.den_), g2 = poly_gcd(b.num_, a.den_);
    Poly n = divide_or_throw(a.num_, g1) * divide_or_throw(b.num_, g2);
    Poly d = divide_or_throw(a.den_, g2) * divide_or_throw(b.den_, g1);
    Scalar r(a.tower_);
    r.num_ = std::move(n);
    r.den_ = std::move(d);
    r.normalize_den();
    return r;
  }
  Scalar inverse() const {
    if (is_zero()) throw DivisionByZero();
    Scalar r(tower_);
    r.num_ = den_;
    r.den_ = num_;
    r.normalize_den();
    return r;
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    a.check_same(b);
    return a * b.inverse();
  }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  Scalar pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    Scalar r(tower_);
    r.num_ = num_.pow(static_cast<unsigned>(k));
    r.den_ = den_.pow(static_cast<unsigned>(k));
    return r;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return same_tower(a.tower_, b.tower_) && a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Scalar conj_base() const {
    Scalar r(tower_);
    r.num_ = num_.conj_coeffs();
    r.den_ = den_.conj_coeffs();
    return r;
  }

  // Same element viewed in another tower that contains all variables used here.
  Scalar embed(const TowerPtr& target) const {
    if (same_tower(tower_, target)) {
      Scalar r = *this;
      r.tower_ = target;
      return r;
    }
    if (target->base() == Base::Rationals && tower_->base() == Base::GaussianRationals)
      throw PreconditionError("cannot embed Q(i) scalars into a Q tower");
    std::vector<int> map(tower_->nvars());
    for (std::size_t i = 0; i < map.size(); ++i) map[i] = target->index_of(tower_->vars()[i]);
    Scalar r(target);
    r.num_ = num_.remap(target->nvars(), map);
    r.den_ = den_.remap(target->nvars(), map);
    return r;
  }

  // Substitute a variable by another element of the same tower.
  Scalar substitute(std::size_t var, const Scalar& value) const {
    check_same(value);
    auto sub = [&](const Poly& p) {
      auto cs = p.to_univariate(var);
      Scalar acc(tower_);
      for (std::size_t d = cs.size(); d-- > 0;) acc = acc * value + from_poly(tower_, cs[d]);
      return acc;
    };
    return sub(num_) / sub(den_);
  }

  std::string str(const std::string& imag = "i") const {
    std::string n = num_.str(tower_->vars(), imag);
    if (den_.is_one()) return n;
    std::string d = den_.str(tower_->vars(), imag);
    bool simple_n = num_.terms().size() == 1 && num_.terms()[0].c.is_real();
    bool simple_d = den_.terms().size() == 1 && den_.terms()[0].c.is_one();
    return (simple_n ? n : "(" + n + ")") + "/" + (simple_d ? d : "(" + d + ")");
  }

 private:
  static Poly one_poly(const FieldTower& t) { return Poly::constant(t.nvars(), Coeff(1)); }

  void check_base(const Coeff& c) const {
    if (!c.is_real() && tower_->base() == Base::Rationals)
      throw PreconditionError("Gaussian coefficient in a Q tower");
  }
  void check_same(const Scalar& o) const {
    if (!tower_ || !o.tower_) throw PreconditionError("uninitialized scalar");
    if (!same_tower(tower_, o.tower_))
      throw PreconditionError("tower mismatch: " + tower_->str() + " vs " + o.tower_->str());
  }
  void normalize_den() {
    if (den_.is_zero()) throw DivisionByZero();
    if (num_.is_zero()) {
      den_ = one_poly(*tower_);
      return;
    }
    Coeff c = den_.lc();
    if (!c.is_one()) {
      Coeff inv = c.inverse();
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }
  void reduce() {
    if (den_.is_zero()) throw DivisionByZero();
    if (!den_.is_constant() && !num_.is_zero()) {
      Poly g = poly_gcd(num_, den_);
      if (!g.is_one()) {
        num_ = divide_or_throw(num_, g);
        den_ = divide_or_throw(den_, g);
      }
    }
    normalize_den();
  }

  TowerPtr tower_;
  Poly num_, den_;
};

inline Scalar operator+(const Scalar& a, long b) { return a + Scalar(a.tower(), b); }
inline Scalar operator-(const Scalar& a, long b) { return a - Scalar(a.tower(), b); }
inline Scalar operator*(const Scalar& a, long b) { return a * Scalar(a.tower(), b); }
inline Scalar operator+(long a, const Scalar& b) { return Scalar(b.tower(), a) + b; }
inline Scalar operator-(long a, const Scalar& b) { return Scalar(b.tower(), a) - b; }
inline Scalar operator*(long a, const Scalar& b) { return Scalar(b.tower(), a) * b; }

// ---------------------------------------------------------------------------
// Squares.

inline std::optional<Scalar> sqrt(const Scalar& x) {
  if (x.is_zero()) return x;
  Base b = x.tower()->base();
  auto n = poly_sqrt(x.num(), b);
  if (!n) return std::nullopt;
  auto d = poly_sqrt(x.den(), b);
  if (!d) return std::nullopt;
  return Scalar(x.tower(), *n, *d);
}

inline bool is_square(const Scalar& x) { return sqrt(x).has_value(); }

// Canonical representative of a nonzero base-field element modulo squares.
inline Coeff base_square_class(const Coeff& c, Base base) {
  if (c.is_zero()) throw PreconditionError("square class of zero");
  if (base == Base::Rationals || c.is_real()) {
    if (!c.is_real()) throw PreconditionError("Gaussian coefficient in a Q tower");
    if (base == Base::Rationals) return Coeff(mpq_class(arith::squarefree_part(c.re())));
  }
  // Over Q(i): write c = z / d^2 with z a Gaussian integer, factor z.
  mpz_class d = lcm(mpz_class(c.re().get_den()), mpz_class(c.im().get_den()));
  mpq_class re = c.re() * d * d, im = c.im() * d * d;
  arith::GaussInt z{mpz_class(re.get_num()), mpz_class(im.get_num())};
  auto f = arith::gauss_factor(z);
  arith::GaussInt acc = f.unit_power % 2 ? arith::GaussInt{0, 1} : arith::GaussInt{1, 0};
  for (auto& [pi, e] : f.primes)
    if (e % 2) acc = acc * pi;
  return Coeff(mpq_class(acc.re), mpq_class(acc.im));
}

struct SquareClassSupport {
  Coeff unit;     // canonical representative of the base-field part
  Poly odd_part;  // monic square-free polynomial

  friend bool operator==(const SquareClassSupport& a, const SquareClassSupport& b) {
    return a.unit == b.unit && a.odd_part == b.odd_part;
  }
  friend bool operator!=(const SquareClassSupport& a, const SquareClassSupport& b) { return !(a == b); }
  bool is_trivial() const { return unit.is_one() && odd_part.is_one(); }
};

inline SquareClassSupport square_class(const Scalar& x) {
  if (x.is_zero()) throw PreconditionError("square class of zero");
  Base base = x.tower()->base();
  Poly p = x.num() * x.den();
  auto sf = squarefree_decomposition(p);
  Poly odd = Poly::constant(p.nvars(), Coeff(1));
  for (auto& [f, m] : sf.factors)
    if (m % 2) odd = odd * f;
  return {base_square_class(sf.unit, base), odd};
}

inline Scalar to_scalar(const SquareClassSupport& s, const TowerPtr& t) {
  return Scalar::from_poly(t, s.odd_part.scaled(s.unit));
}

inline bool same_square_class(const Scalar& x, const Scalar& y) { return is_square(x / y); }

// ---------------------------------------------------------------------------
// Discrete valuations of the two supported shapes: a tower variable, or a
// linear uniformizer alpha*(var - c) with c in the base field.

struct ValuationSpec {
  std::size_t var = 0;
  bool linear = false;
  Coeff shift = Coeff(0);  // c
  Coeff scale = Coeff(1);  // alpha

  static ValuationSpec at_variable(std::size_t v) { return {v, false, Coeff(0), Coeff(1)}; }
  static ValuationSpec at_linear(std::size_t v, const Coeff& c, const Coeff& alpha = Coeff(1)) {
    return {v, true, c, alpha};
  }
};

struct Residue {
  long valuation;
  Scalar residue;  // over the residue tower (the variable removed)
};

namespace scalar_detail {

inline Poly shift_var(const Poly& p, std::size_t var, const Coeff& c) {
  if (c.is_zero()) return p;
  Poly x = Poly::variable(p.nvars(), var) + Poly::constant(p.nvars(), c);
  return p.substitute(var, x);
}

inline std::vector<int> drop_map(std::size_t nvars, std::size_t var) {
  std::vector<int> map(nvars);
  for (std::size_t i = 0; i < nvars; ++i)
    map[i] = i < var ? static_cast<int>(i) : (i == var ? -1 : static_cast<int>(i) - 1);
  return map;
}

}  // namespace scalar_detail

inline Residue tame_residue(const Scalar& x, const ValuationSpec& v) {
  if (x.is_zero()) throw PreconditionError("residue of zero");
  const TowerPtr& t = x.tower();
  if (v.var >= t->nvars()) throw PreconditionError("valuation variable out of range");
  Poly n = x.num(), d = x.den();
  if (v.linear) {
    if (v.scale.is_zero()) throw PreconditionError("zero uniformizer scale");
    n = scalar_detail::shift_var(n, v.var, v.shift);
    d = scalar_detail::shift_var(d, v.var, v.shift);
  }
  std::uint32_t vn = n.min_degree(v.var), vd = d.min_degree(v.var);
  TowerPtr rt = t->without(v.var);
  auto map = scalar_detail::drop_map(t->nvars(), v.var);
  Poly rn = n.coeff_of(v.var, vn).remap(rt->nvars(), map);
  Poly rd = d.coeff_of(v.var, vd).remap(rt->nvars(), map);
  long val = static_cast<long>(vn) - static_cast<long>(vd);
  Scalar res(rt, rn, rd);
  if (v.linear && val != 0) res = res * Scalar(rt, v.scale).pow(-val);
  return {val, res};
}

inline long valuation(const Scalar& x, const ValuationSpec& v) { return tame_residue(x, v).valuation; }

}  // namespace outaut
