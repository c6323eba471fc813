#pragma once

// Diagonal quadratic forms over field towers: Hasse-Minkowski over Q,
// Springer residue chains over function fields, witness search,
// representation and generic-value refutation.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "outaut/certificate.hpp"
#include "outaut/hilbert.hpp"
#include "outaut/parse.hpp"
#include "outaut/scalar.hpp"

namespace outaut {

class QuadForm {
 public:
  QuadForm() = default;
  QuadForm(TowerPtr t, std::vector<Scalar> entries) : tower_(std::move(t)), entries_(std::move(entries)) {
    for (auto& e : entries_) {
      if (e.is_zero()) throw PreconditionError("quadratic form entries must be nonzero");
      if (!same_tower(e.tower(), tower_)) e = e.embed(tower_);
    }
  }
  static QuadForm parse(const TowerPtr& t, const std::vector<std::string>& xs) {
    std::vector<Scalar> es;
    for (auto& x : xs) es.push_back(parse_scalar(t, x));
    return QuadForm(t, std::move(es));
  }

  const TowerPtr& tower() const { return tower_; }
  std::size_t dim() const { return entries_.size(); }
  const std::vector<Scalar>& entries() const { return entries_; }
  const Scalar& operator[](std::size_t i) const { return entries_[i]; }

  QuadForm perp(const QuadForm& o) const {
    std::vector<Scalar> es = entries_;
    for (auto& e : o.entries_) es.push_back(e);
    return QuadForm(tower_, std::move(es));
  }
  QuadForm scaled(const Scalar& c) const {
    std::vector<Scalar> es;
    for (auto& e : entries_) es.push_back(e * c);
    return QuadForm(tower_, std::move(es));
  }
  QuadForm embed(const TowerPtr& t) const {
    std::vector<Scalar> es;
    for (auto& e : entries_) es.push_back(e.embed(t));
    return QuadForm(t, std::move(es));
  }
  Scalar evaluate(const std::vector<Scalar>& x) const {
    if (x.size() != dim()) throw PreconditionError("vector length does not match form dimension");
    Scalar s(tower_);
    for (std::size_t i = 0; i < dim(); ++i) s += entries_[i] * x[i] * x[i];
    return s;
  }
  Scalar discriminant() const {
    Scalar d(tower_, 1);
    for (auto& e : entries_) d *= e;
    return d;
  }
  bool uses_variables() const {
    for (auto& e : entries_)
      if (!e.is_constant()) return true;
    return false;
  }
  // Highest tower variable occurring in an entry, or -1.
  int top_variable() const {
    int v = -1;
    for (auto& e : entries_) v = std::max({v, e.num().main_var(), e.den().main_var()});
    return v;
  }
  // Same form over the smallest tower prefix containing its entries.
  QuadForm trimmed() const {
    std::size_t k = static_cast<std::size_t>(top_variable() + 1);
    if (k == tower_->nvars()) return *this;
    return embed(tower_->prefix(k));
  }
  std::vector<mpq_class> rationals() const {
    std::vector<mpq_class> out;
    for (auto& e : entries_) {
      if (!e.is_constant() || !e.constant_value().is_real())
        throw PreconditionError("form is not defined over Q");
      out.push_back(e.constant_value().re());
    }
    return out;
  }
  std::vector<std::string> strings() const {
    std::vector<std::string> out;
    for (auto& e : entries_) out.push_back(e.str());
    return out;
  }
  std::string str() const {
    std::string s = "<";
    for (std::size_t i = 0; i < dim(); ++i) s += (i ? ", " : "") + entries_[i].str();
    return s + ">";
  }

 private:
  TowerPtr tower_;
  std::vector<Scalar> entries_;
};

enum class Anisotropy { anisotropic, isotropic, unknown };
enum class Verdict { yes, no, unknown };

inline std::string to_string(Anisotropy a) {
  switch (a) {
    case Anisotropy::anisotropic: return "anisotropic";
    case Anisotropy::isotropic: return "isotropic";
    default: return "unknown";
  }
}
inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    default: return "unknown";
  }
}

struct SearchOptions {
  long height = 1000;         // integer height bound for searches over Q
  unsigned degree = 2;        // monomial degree of candidate coordinates over function fields
  unsigned max_free = 2;      // nonzero free coordinates per trial
  std::size_t budget = 20000; // trials per search
};

struct IsotropyQ {
  bool isotropic;
  Certificate cert;
  std::vector<mpq_class> witness;
};

struct AnisotropyResult {
  Anisotropy verdict;
  Certificate cert;
  std::vector<Scalar> witness;
};

struct RepResult {
  Verdict verdict;
  Certificate cert;
  std::vector<Scalar> vector;  // q(vector) = c when verdict == yes
};

namespace qf_detail {

inline json strings_json(const std::vector<std::string>& xs) { return json(xs); }

inline std::vector<std::string> scalar_strings(const std::vector<Scalar>& xs) {
  std::vector<std::string> out;
  for (auto& x : xs) out.push_back(x.str());
  return out;
}

inline std::vector<std::string> rational_strings(const std::vector<mpq_class>& xs) {
  std::vector<std::string> out;
  for (auto& x : xs) out.push_back(x.get_str());
  return out;
}

// Integer vectors of length m with max-norm exactly h, in a fixed order.
inline void for_each_shell(std::size_t m, long h, const std::function<bool(const std::vector<long>&)>& f) {
  std::vector<long> v(m, -h);
  for (;;) {
    long mx = 0;
    for (long x : v) mx = std::max(mx, std::labs(x));
    if (mx == h && !f(v)) return;
    std::size_t k = 0;
    while (k < m && v[k] == h) v[k++] = -h;
    if (k == m) return;
    ++v[k];
  }
}

inline json local_table(const std::vector<mpq_class>& a, const local::Place& v) {
  json t;
  t["place"] = v.str();
  t["dim"] = a.size();
  if (a.size() >= 2 && !v.is_infinite()) {
    auto d = local::local_invariants(a, v);
    t["disc"] = d.disc.get_str();
    t["disc_is_local_square"] = local::is_local_square(d.disc, v);
    t["epsilon"] = d.epsilon;
    t["hilbert_minus1_minus_disc"] = local::hilbert_symbol(-1, mpq_class(-d.disc), v);
    t["hilbert_minus1_minus1"] = local::hilbert_symbol(-1, -1, v);
  }
  return t;
}

}  // namespace qf_detail

// Hasse-Minkowski over Q with explicit witnesses.
inline IsotropyQ is_isotropic_Q(const QuadForm& q, const SearchOptions& opts = {}) {
  if (q.tower()->base() != Base::Rationals || q.uses_variables())
    throw PreconditionError("is_isotropic_Q needs a form over Q");
  std::vector<mpq_class> a = q.rationals();
  std::size_t n = a.size();
  auto anis = [&](const std::string& reason, const std::optional<local::Place>& v) {
    Certificate c(CertKind::LocalTable, "anisotropic");
    c["tower"] = "Q";
    c["form"] = qf_detail::rational_strings(a);
    c["reason"] = reason;
    c["places"] = json::object();
    if (v) c["places"] = qf_detail::local_table(a, *v);
    return IsotropyQ{false, c, {}};
  };
  if (n == 0) return anis("zero-dimensional", std::nullopt);
  if (n == 1) return anis("one-dimensional", std::nullopt);
  if (auto v = local::anisotropic_place(a)) return anis("locally anisotropic", *v);

  std::vector<mpq_class> w(n, 0);
  if (n == 2) {
    auto s = arith::sqrt_exact(mpq_class(-a[1] / a[0]));
    if (!s) throw ConsistencyError("binary form locally isotropic everywhere but not split");
    w = {*s, 1};
  } else if (n == 3) {
    w = local::solve_ternary(a[0], a[1], a[2]);
  } else {
    // head pair with opposite signs, search tail vectors making the ternary isotropic
    std::size_t h0 = 0, h1 = 1;
    bool found_pair = false;
    for (std::size_t i = 0; i < n && !found_pair; ++i)
      for (std::size_t j = i + 1; j < n && !found_pair; ++j)
        if ((a[i] > 0) != (a[j] > 0)) {
          h0 = i;
          h1 = j;
          found_pair = true;
        }
    std::vector<std::size_t> tail;
    for (std::size_t i = 0; i < n; ++i)
      if (i != h0 && i != h1) tail.push_back(i);
    bool done = false;
    long cap = std::min<long>(opts.height, 200);
    for (long h = 1; h <= cap && !done; ++h) {
      qf_detail::for_each_shell(tail.size(), h, [&](const std::vector<long>& y) {
        mpq_class c = 0;
        for (std::size_t k = 0; k < tail.size(); ++k) c += a[tail[k]] * y[k] * y[k];
        std::vector<mpq_class> x3;
        if (c == 0) {
          x3 = {0, 0, 1};
        } else {
          std::vector<mpq_class> tern{a[h0], a[h1], c};
          if (local::anisotropic_place(tern)) return true;
          x3 = local::solve_ternary(a[h0], a[h1], c);
        }
        w.assign(n, 0);
        w[h0] = x3[0];
        w[h1] = x3[1];
        for (std::size_t k = 0; k < tail.size(); ++k) w[tail[k]] = x3[2] * y[k];
        done = true;
        return false;
      });
    }
    if (!done) throw CapacityError("isotropic vector search exceeded height " + std::to_string(cap));
  }
  mpq_class val = 0;
  for (std::size_t i = 0; i < n; ++i) val += a[i] * w[i] * w[i];
  bool nonzero = std::any_of(w.begin(), w.end(), [](const mpq_class& x) { return x != 0; });
  if (val != 0 || !nonzero) throw ConsistencyError("isotropic witness failed verification");
  Certificate c(CertKind::Witness, "isotropic");
  c["tower"] = "Q";
  c["form"] = qf_detail::rational_strings(a);
  c["witness"] = qf_detail::rational_strings(w);
  return {true, c, w};
}

inline std::pair<QuadForm, QuadForm> springer_split(const QuadForm& q, std::size_t var) {
  const TowerPtr& t = q.tower();
  if (t->nvars() == 0 || var != t->nvars() - 1)
    throw PreconditionError("springer_split needs the outermost tower variable");
  TowerPtr rt = t->without(var);
  std::vector<Scalar> even, odd;
  for (auto& e : q.entries()) {
    auto r = tame_residue(e, ValuationSpec::at_variable(var));
    (r.valuation % 2 == 0 ? even : odd).push_back(r.residue);
  }
  return {QuadForm(rt, std::move(even)), QuadForm(rt, std::move(odd))};
}

namespace qf_detail {

// Base-field anisotropy decision for forms without variables. nullopt = not certified.
inline std::optional<json> base_anisotropy_leaf(const QuadForm& q) {
  json leaf;
  if (q.dim() <= 1) {
    leaf["reason"] = q.dim() == 0 ? "zero-dimensional" : "one-dimensional";
    return leaf;
  }
  if (q.tower()->base() == Base::Rationals) {
    auto a = q.rationals();
    auto v = local::anisotropic_place(a);
    if (!v) return std::nullopt;
    leaf["reason"] = "locally anisotropic";
    leaf["places"] = local_table(a, *v);
    return leaf;
  }
  if (q.dim() == 2) {
    Scalar r = -(q[0] * q[1]);
    if (is_square(r)) return std::nullopt;
    leaf["reason"] = "binary with non-square -disc";
    return leaf;
  }
  return std::nullopt;
}

inline bool residue_chain(const QuadForm& q0, const std::string& path, json& steps) {
  QuadForm q = q0.trimmed();
  json step;
  step["path"] = path;
  step["tower"] = q.tower()->str();
  step["form"] = q.strings();
  if (q.dim() <= 1 || !q.uses_variables()) {
    auto leaf = base_anisotropy_leaf(q);
    if (!leaf) return false;
    step["leaf"] = *leaf;
    steps.push_back(step);
    return true;
  }
  std::size_t v = q.tower()->nvars() - 1;
  auto [q1, q2] = springer_split(q, v);
  step["var"] = q.tower()->vars()[v];
  step["even"] = q1.strings();
  step["odd"] = q2.strings();
  step["residue_tower"] = q1.tower()->str();
  steps.push_back(step);
  return residue_chain(q1, path + "e", steps) && residue_chain(q2, path + "o", steps);
}

}  // namespace qf_detail

// ---------------------------------------------------------------------------
// Witness search over function fields.

namespace qf_detail {

struct NumericProbe {
  std::vector<std::vector<Coeff>> points;

  explicit NumericProbe(std::size_t nvars) {
    static const long seeds[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
    for (int k = 0; k < 3; ++k) {
      std::vector<Coeff> p;
      for (std::size_t i = 0; i < nvars; ++i) {
        long v = seeds[(i * 3 + static_cast<std::size_t>(k) * 5) % 14] * (k + 1) + static_cast<long>(i);
        p.push_back(Coeff(mpq_class(v, 1 + static_cast<long>(i % 3))));
      }
      points.push_back(std::move(p));
    }
  }
  static std::optional<Coeff> eval(const Scalar& s, const std::vector<Coeff>& pt) {
    Coeff d = s.den().evaluate(pt);
    if (d.is_zero()) return std::nullopt;
    return s.num().evaluate(pt) / d;
  }
};

inline std::vector<Scalar> candidate_values(const TowerPtr& t, const std::vector<std::size_t>& vars, unsigned degree) {
  std::vector<Coeff> coeffs{Coeff(1), Coeff(2)};
  if (t->base() == Base::GaussianRationals) coeffs = {Coeff(1), Coeff::imag_unit(), Coeff(1, 1), Coeff(2)};
  std::vector<Exponents> monos;
  std::function<void(std::size_t, unsigned, Exponents&)> rec = [&](std::size_t k, unsigned left, Exponents& e) {
    if (k == vars.size()) {
      monos.push_back(e);
      return;
    }
    for (unsigned d = 0; d <= left; ++d) {
      e[vars[k]] = d;
      rec(k + 1, left - d, e);
    }
    e[vars[k]] = 0;
  };
  Exponents e(t->nvars(), 0);
  rec(0, degree, e);
  std::stable_sort(monos.begin(), monos.end(), [](const Exponents& x, const Exponents& y) {
    unsigned sx = 0, sy = 0;
    for (auto v : x) sx += v;
    for (auto v : y) sy += v;
    return sx < sy;
  });
  std::vector<Scalar> out;
  for (auto& m : monos)
    for (auto& c : coeffs) out.push_back(Scalar::from_poly(t, Poly::monomial(m, c)));
  return out;
}

inline std::vector<std::size_t> used_vars(const std::vector<Scalar>& xs) {
  std::vector<std::size_t> out;
  if (xs.empty()) return out;
  std::size_t n = xs[0].tower()->nvars();
  for (std::size_t v = 0; v < n; ++v)
    for (auto& x : xs)
      if (x.num().uses(v) || x.den().uses(v)) {
        out.push_back(v);
        break;
      }
  return out;
}

// x with q(x) = c (c may be zero: nonzero isotropic vector), or nullopt.
inline std::optional<std::vector<Scalar>> search_solution(const QuadForm& q, const Scalar& c, const SearchOptions& opts) {
  std::size_t n = q.dim();
  if (n == 0) return std::nullopt;
  const TowerPtr& t = q.tower();
  Base base = t->base();
  std::vector<Scalar> involved = q.entries();
  if (!c.is_zero()) involved.push_back(c);
  auto cands = candidate_values(t, used_vars(involved), opts.degree);
  NumericProbe probe(t->nvars());
  // numeric images
  std::vector<std::vector<Coeff>> a_num, cand_num;
  std::vector<Coeff> c_num;
  std::vector<std::size_t> good_points;
  for (std::size_t k = 0; k < probe.points.size(); ++k) {
    bool ok = true;
    std::vector<Coeff> av;
    for (auto& e : q.entries()) {
      auto v = NumericProbe::eval(e, probe.points[k]);
      if (!v || v->is_zero()) {
        ok = false;
        break;
      }
      av.push_back(*v);
    }
    auto cv = NumericProbe::eval(c, probe.points[k]);
    if (!ok || !cv) continue;
    std::vector<Coeff> cn;
    for (auto& x : cands) cn.push_back(*NumericProbe::eval(x, probe.points[k]));
    a_num.push_back(std::move(av));
    cand_num.push_back(std::move(cn));
    c_num.push_back(*cv);
  }
  std::size_t trials = 0;
  std::size_t maxf = std::min<std::size_t>(opts.max_free, n - 1);
  for (std::size_t free = 0; free <= maxf; ++free) {
    if (c.is_zero() && free == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::size_t> others;
      for (std::size_t i = 0; i < n; ++i)
        if (i != j) others.push_back(i);
      // subsets of `others` of size `free`
      std::vector<bool> mask(others.size(), false);
      std::fill(mask.begin(), mask.begin() + static_cast<long>(free), true);
      do {
        std::vector<std::size_t> S;
        for (std::size_t k = 0; k < others.size(); ++k)
          if (mask[k]) S.push_back(others[k]);
        std::vector<std::size_t> idx(S.size(), 0);
        for (;;) {
          if (++trials > opts.budget) return std::nullopt;
          bool plausible = true;
          for (std::size_t p = 0; p < a_num.size() && plausible; ++p) {
            Coeff r = c_num[p];
            for (std::size_t s = 0; s < S.size(); ++s) {
              const Coeff& x = cand_num[p][idx[s]];
              r -= a_num[p][S[s]] * x * x;
            }
            r /= a_num[p][j];
            if (!r.sqrt_in(base)) plausible = false;
          }
          if (plausible) {
            Scalar r = c;
            for (std::size_t s = 0; s < S.size(); ++s) r -= q[S[s]] * cands[idx[s]] * cands[idx[s]];
            r /= q[j];
            if (auto root = sqrt(r)) {
              std::vector<Scalar> x(n, Scalar(t));
              for (std::size_t s = 0; s < S.size(); ++s) x[S[s]] = cands[idx[s]];
              x[j] = *root;
              bool nonzero = std::any_of(x.begin(), x.end(), [](const Scalar& v) { return !v.is_zero(); });
              if (nonzero && q.evaluate(x) == c) return x;
            }
          }
          std::size_t k = 0;
          while (k < idx.size() && ++idx[k] == cands.size()) idx[k++] = 0;
          if (k == idx.size()) break;
        }
      } while (std::prev_permutation(mask.begin(), mask.end()));
    }
  }
  return std::nullopt;
}

// From q(v) = 0, v != 0, build x with q(x) = c.
inline std::vector<Scalar> universal_representation(const QuadForm& q, const std::vector<Scalar>& v, const Scalar& c) {
  for (std::size_t k = 0; k < q.dim(); ++k) {
    if (v[k].is_zero()) continue;
    // q(s v + e_k) = 2 s a_k v_k + a_k
    Scalar s = (c - q[k]) / (2 * q[k] * v[k]);
    std::vector<Scalar> x;
    for (auto& vi : v) x.push_back(s * vi);
    x[k] += Scalar(q.tower(), 1);
    if (q.evaluate(x) != c) throw ConsistencyError("universal representation failed verification");
    return x;
  }
  throw PreconditionError("zero isotropic vector");
}

}  // namespace qf_detail

inline Certificate witness_certificate(const QuadForm& q, const std::vector<Scalar>& x, const std::string& claim,
                                       const std::optional<Scalar>& target = std::nullopt) {
  Certificate c(CertKind::Witness, claim);
  c["tower"] = q.tower()->str();
  c["form"] = q.strings();
  c["witness"] = qf_detail::scalar_strings(x);
  if (target) c["target"] = target->str();
  return c;
}

inline AnisotropyResult certify_anisotropic(const QuadForm& q, const SearchOptions& opts = {}) {
  if (q.tower()->base() == Base::Rationals && !q.uses_variables()) {
    auto r = is_isotropic_Q(q.embed(q.tower()->base_tower()), opts);
    if (!r.isotropic) return {Anisotropy::anisotropic, r.cert, {}};
    std::vector<Scalar> w;
    for (auto& x : r.witness) w.push_back(Scalar(q.tower(), Coeff(x)));
    return {Anisotropy::isotropic, witness_certificate(q, w, "isotropic"), w};
  }
  json steps = json::array();
  if (qf_detail::residue_chain(q, "", steps)) {
    Certificate c(CertKind::ResidueChain, "anisotropic");
    c["tower"] = q.tower()->str();
    c["form"] = q.strings();
    c["steps"] = steps;
    return {Anisotropy::anisotropic, c, {}};
  }
  if (auto w = qf_detail::search_solution(q, Scalar(q.tower()), opts))
    return {Anisotropy::isotropic, witness_certificate(q, *w, "isotropic"), *w};
  Certificate c(CertKind::None, "unknown");
  c["tower"] = q.tower()->str();
  c["form"] = q.strings();
  c["reason"] = "residue chain reached an isotropic or undecided leaf and the witness search found nothing";
  return {Anisotropy::unknown, c, {}};
}

// ---------------------------------------------------------------------------
// Generic values and representation.

enum class GenericVerdict { not_represented, unknown };

struct GenericResult {
  GenericVerdict verdict;
  Certificate cert;
};

inline GenericResult generic_value_refute(const QuadForm& psi, const QuadForm& phi, const SearchOptions& opts = {}) {
  if (!same_tower(psi.tower(), phi.tower())) throw PreconditionError("forms over different towers");
  if (phi.dim() > psi.dim()) throw PreconditionError("generic form has larger dimension than the representing form");
  auto an = certify_anisotropic(psi, opts);
  if (an.verdict != Anisotropy::anisotropic)
    throw PreconditionError("representing form is not certified anisotropic");
  Certificate unknown(CertKind::None, "unknown");
  unknown["psi"] = psi.strings();
  unknown["phi"] = phi.strings();
  bool identical = psi.dim() == phi.dim();
  for (std::size_t i = 0; identical && i < psi.dim(); ++i) identical = psi[i] == phi[i];
  if (identical) {
    unknown["reason"] = "identical forms: the generic value is represented";
    return {GenericVerdict::unknown, unknown};
  }
  if (phi.dim() < psi.dim()) {
    unknown["reason"] = "subform test below full dimension not mechanized";
    return {GenericVerdict::unknown, unknown};
  }
  Scalar ratio = psi.discriminant() / phi.discriminant();
  if (!is_square(ratio)) {
    Certificate c(CertKind::DiscriminantMismatch, "not-represented");
    c["tower"] = psi.tower()->str();
    c["form"] = psi.strings();
    c["psi"] = psi.strings();
    c["phi"] = phi.strings();
    c["disc_psi"] = psi.discriminant().str();
    c["disc_phi"] = phi.discriminant().str();
    c["ratio"] = ratio.str();
    auto sc = square_class(ratio);
    c["ratio_class"] = to_scalar(sc, psi.tower()).str();
    c.add_sub("psi-anisotropic", an.cert);
    return {GenericVerdict::not_represented, c};
  }
  if (psi.tower()->base() == Base::Rationals && !psi.uses_variables() && !phi.uses_variables()) {
    auto a = psi.rationals(), b = phi.rationals();
    for (auto& v : local::relevant_places([&] {
           auto all = a;
           all.insert(all.end(), b.begin(), b.end());
           return all;
         }())) {
      if (local::local_invariants(a, v).epsilon != local::local_invariants(b, v).epsilon ||
          (v.is_infinite() && std::count_if(a.begin(), a.end(), [](auto& x) { return x < 0; }) !=
                                  std::count_if(b.begin(), b.end(), [](auto& x) { return x < 0; }))) {
        Certificate c(CertKind::LocalTable, "not-isometric");
        c["tower"] = "Q";
        c["psi"] = psi.strings();
        c["phi"] = phi.strings();
        c["form"] = psi.strings();
        c["places"] = json{{"place", v.str()}};
        c.add_sub("psi-anisotropic", an.cert);
        return {GenericVerdict::not_represented, c};
      }
    }
  }
  unknown["reason"] = "discriminants agree";
  return {GenericVerdict::unknown, unknown};
}

namespace qf_detail {

// If c = sum phi_j x_j^2 with x_j variables absent from q, return phi over the smaller tower.
struct GenericShape {
  QuadForm psi, phi;
};

inline std::optional<GenericShape> detect_generic_value(const QuadForm& q, const Scalar& c) {
  const TowerPtr& t = q.tower();
  std::vector<bool> in_q(t->nvars(), false);
  for (auto v : used_vars(q.entries())) in_q[v] = true;
  std::vector<std::size_t> fresh;
  for (auto v : used_vars({c}))
    if (!in_q[v]) fresh.push_back(v);
  if (fresh.empty()) return std::nullopt;
  for (auto v : fresh)
    if (c.den().uses(v)) return std::nullopt;
  std::vector<std::vector<Term>> parts(fresh.size());
  for (auto& term : c.num().terms()) {
    int which = -1;
    for (std::size_t k = 0; k < fresh.size(); ++k) {
      std::uint32_t e = term.exp[fresh[k]];
      if (e == 0) continue;
      if (e != 2 || which >= 0) return std::nullopt;
      which = static_cast<int>(k);
    }
    if (which < 0) return std::nullopt;
    Term u = term;
    u.exp[fresh[static_cast<std::size_t>(which)]] = 0;
    parts[static_cast<std::size_t>(which)].push_back(std::move(u));
  }
  // the smaller tower k: drop the fresh variables
  TowerPtr k = t;
  for (std::size_t v = t->nvars(); v-- > 0;)
    if (std::find(fresh.begin(), fresh.end(), v) != fresh.end()) k = k->without(k->require_index(t->vars()[v]));
  Scalar den = Scalar::from_poly(t, c.den());
  std::vector<Scalar> phi;
  for (auto& p : parts) {
    if (p.empty()) return std::nullopt;
    Scalar coef = Scalar::from_poly(t, Poly::from_terms(t->nvars(), p)) / den;
    phi.push_back(coef.embed(k));
  }
  return GenericShape{q.embed(k), QuadForm(k, phi)};
}

}  // namespace qf_detail

inline RepResult represents(const QuadForm& q, const Scalar& c_in, const SearchOptions& opts = {},
                            const std::vector<std::vector<Scalar>>& hints = {}) {
  if (c_in.is_zero()) throw PreconditionError("represents: target must be nonzero");
  Scalar c = same_tower(c_in.tower(), q.tower()) ? c_in : c_in.embed(q.tower());
  const TowerPtr& t = q.tower();
  auto yes = [&](const std::vector<Scalar>& x, const std::string& how) {
    Certificate cert = witness_certificate(q, x, "represents", c);
    cert["method"] = how;
    return RepResult{Verdict::yes, cert, x};
  };
  for (auto& h : hints) {
    std::vector<Scalar> x;
    for (auto& s : h) x.push_back(same_tower(s.tower(), t) ? s : s.embed(t));
    if (x.size() == q.dim() && q.evaluate(x) == c) return yes(x, "hint");
  }
  QuadForm aug = q.perp(QuadForm(t, {-c}));
  if (t->base() == Base::Rationals && !aug.uses_variables()) {
    auto r = is_isotropic_Q(aug.embed(t->base_tower()), opts);
    if (!r.isotropic) {
      Certificate cert = r.cert;
      cert["target"] = c.str();
      cert["claim"] = "anisotropic";
      return {Verdict::no, cert, {}};
    }
    std::vector<Scalar> w;
    for (auto& x : r.witness) w.push_back(Scalar(t, Coeff(x)));
    std::vector<Scalar> head(w.begin(), w.end() - 1);
    if (!w.back().is_zero()) {
      for (auto& x : head) x /= w.back();
      return yes(head, "hasse-minkowski");
    }
    return yes(qf_detail::universal_representation(q, head, c), "isotropic-universal");
  }
  json steps = json::array();
  if (qf_detail::residue_chain(aug, "", steps)) {
    Certificate cert(CertKind::ResidueChain, "anisotropic");
    cert["tower"] = t->str();
    cert["form"] = aug.strings();
    cert["target"] = c.str();
    cert["steps"] = steps;
    return {Verdict::no, cert, {}};
  }
  if (auto x = qf_detail::search_solution(q, c, opts)) return yes(*x, "search");
  if (auto v = qf_detail::search_solution(q, Scalar(t), opts))
    return yes(qf_detail::universal_representation(q, *v, c), "isotropic-universal");
  if (auto g = qf_detail::detect_generic_value(q, c)) {
    auto an = certify_anisotropic(g->psi, opts);
    if (an.verdict == Anisotropy::anisotropic && g->phi.dim() <= g->psi.dim()) {
      auto r = generic_value_refute(g->psi, g->phi, opts);
      if (r.verdict == GenericVerdict::not_represented) {
        Certificate cert = r.cert;
        cert["target"] = c.str();
        cert["target_tower"] = t->str();
        return {Verdict::no, cert, {}};
      }
    }
  }
  Certificate cert(CertKind::None, "unknown");
  cert["tower"] = t->str();
  cert["form"] = q.strings();
  cert["target"] = c.str();
  return {Verdict::unknown, cert, {}};
}

// ---------------------------------------------------------------------------
// Hyperbolicity over Q and non-hyperbolicity chains.

inline bool is_hyperbolic_Q(const std::vector<mpq_class>& a, std::string* reason = nullptr,
                            std::string* place = nullptr) {
  std::size_t n = a.size();
  if (n % 2) {
    if (reason) *reason = "odd dimension";
    return false;
  }
  long neg = std::count_if(a.begin(), a.end(), [](const mpq_class& x) { return x < 0; });
  if (2 * neg != static_cast<long>(n)) {
    if (reason) *reason = "nonzero signature";
    if (place) *place = "inf";
    return false;
  }
  std::vector<mpq_class> h;
  for (std::size_t i = 0; i < n / 2; ++i) {
    h.push_back(1);
    h.push_back(-1);
  }
  mpq_class d = 1;
  for (auto& x : a) d *= x;
  mpq_class dh = (n / 2) % 2 ? -1 : 1;
  if (!arith::is_square(mpq_class(d / dh))) {
    if (reason) *reason = "discriminant";
    return false;
  }
  for (auto& v : local::relevant_places(a)) {
    if (local::local_invariants(a, v).epsilon != local::local_invariants(h, v).epsilon) {
      if (reason) *reason = "hasse invariant";
      if (place) *place = v.str();
      return false;
    }
  }
  return true;
}

namespace qf_detail {

inline bool non_hyperbolic_chain(const QuadForm& q0, const std::string& path, json& steps) {
  QuadForm q = q0.trimmed();
  json step;
  step["path"] = path;
  step["tower"] = q.tower()->str();
  step["form"] = q.strings();
  if (q.dim() % 2) {
    step["leaf"] = json{{"reason", "odd dimension"}};
    steps.push_back(step);
    return true;
  }
  if (!q.uses_variables()) {
    if (q.tower()->base() != Base::Rationals) return false;
    std::string reason, place;
    if (is_hyperbolic_Q(q.rationals(), &reason, &place)) return false;
    step["leaf"] = json{{"reason", reason}, {"place", place}};
    steps.push_back(step);
    return true;
  }
  std::size_t v = q.tower()->nvars() - 1;
  auto [q1, q2] = springer_split(q, v);
  step["var"] = q.tower()->vars()[v];
  step["even"] = q1.strings();
  step["odd"] = q2.strings();
  step["residue_tower"] = q1.tower()->str();
  std::size_t mark = steps.size();
  steps.push_back(step);
  if (non_hyperbolic_chain(q1, path + "e", steps)) return true;
  if (non_hyperbolic_chain(q2, path + "o", steps)) return true;
  steps.erase(steps.begin() + static_cast<long>(mark), steps.end());
  return false;
}

}  // namespace qf_detail

// Certificate that q is not hyperbolic: a residue path ending in a non-hyperbolic base form.
inline std::optional<Certificate> certify_non_hyperbolic(const QuadForm& q) {
  json steps = json::array();
  if (!qf_detail::non_hyperbolic_chain(q, "", steps)) return std::nullopt;
  Certificate c(CertKind::ResidueChain, "non-hyperbolic");
  c["tower"] = q.tower()->str();
  c["form"] = q.strings();
  c["steps"] = steps;
  return c;
}

}  // namespace outaut
