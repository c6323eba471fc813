#pragma once

// Independent re-checking of certificates from their JSON alone. Only field
// arithmetic, residue maps and base-case local decisions are used; none of
// the searches that produced the certificate are re-run.

#include <map>
#include <string>
#include <vector>

#include "outaut/certificate.hpp"
#include "outaut/hilbert.hpp"
#include "outaut/quadform.hpp"
#include "outaut/symbols.hpp"

namespace outaut {

namespace verify_detail {

inline std::vector<std::string> strs(const json& j) { return j.get<std::vector<std::string>>(); }

inline QuadForm form_of(const json& tower, const json& entries) {
  auto t = FieldTower::parse(tower.get<std::string>());
  return QuadForm::parse(t, strs(entries));
}

inline std::vector<mpq_class> rationals_of(const json& entries) {
  std::vector<mpq_class> out;
  for (auto& s : strs(entries)) {
    mpq_class x(s);
    x.canonicalize();
    out.push_back(x);
  }
  return out;
}

inline bool verify_witness(const Certificate& c) {
  if (c.has("constraints")) {
    std::vector<SymbolConstraint> cs;
    for (auto& e : c.at("constraints"))
      cs.push_back({mpq_class(e.at("a").get<std::string>()),
                    e.at("target").get<std::string>() == "split" ? SymbolTarget::split : SymbolTarget::equal_to_Q});
    auto q = strs(c.at("Q"));
    return verify_symbol_witness(cs, mpq_class(q[0]), mpq_class(q[1]), mpq_class(strs(c.at("witness"))[0]));
  }
  QuadForm q = form_of(c.at("tower"), c.at("form"));
  std::vector<Scalar> w;
  for (auto& s : strs(c.at("witness"))) w.push_back(parse_scalar(q.tower(), s));
  if (w.size() != q.dim()) return false;
  if (c.has("target")) return q.evaluate(w) == parse_scalar(q.tower(), c.at("target").get<std::string>());
  bool nonzero = false;
  for (auto& x : w) nonzero = nonzero || !x.is_zero();
  return nonzero && q.evaluate(w).is_zero();
}

inline bool verify_local_anisotropic(const std::vector<mpq_class>& a, const json& places, const std::string& reason) {
  if (reason == "zero-dimensional") return a.empty();
  if (reason == "one-dimensional") return a.size() == 1;
  if (!places.contains("place")) return false;
  return !local::locally_isotropic(a, local::Place::parse(places.at("place").get<std::string>()));
}

inline long negatives(const std::vector<mpq_class>& a) {
  long n = 0;
  for (auto& x : a) n += x < 0;
  return n;
}

inline bool verify_leaf(const QuadForm& q, const json& leaf, bool hyperbolicity) {
  std::string reason = leaf.at("reason").get<std::string>();
  if (hyperbolicity) {
    if (reason == "odd dimension") return q.dim() % 2 == 1;
    if (q.uses_variables() || q.tower()->base() != Base::Rationals) return false;
    std::string r;
    return !is_hyperbolic_Q(q.rationals(), &r);
  }
  if (q.dim() == 0) return reason == "zero-dimensional";
  if (q.dim() == 1) return reason == "one-dimensional";
  if (q.uses_variables()) return false;
  if (reason == "binary with non-square -disc") return q.dim() == 2 && !is_square(-(q[0] * q[1]));
  if (q.tower()->base() != Base::Rationals) return false;
  return verify_local_anisotropic(q.rationals(), leaf.value("places", json::object()), reason);
}

// Anisotropy chains need both residue branches; non-hyperbolicity chains follow a single path.
inline bool verify_chain(const QuadForm& q0, const std::map<std::string, json>& steps, const std::string& path,
                         bool hyperbolicity) {
  auto it = steps.find(path);
  if (it == steps.end()) return false;
  const json& s = it->second;
  QuadForm q = q0.trimmed();
  if (s.at("tower").get<std::string>() != q.tower()->str() || strs(s.at("form")) != q.strings()) return false;
  if (s.contains("leaf")) return verify_leaf(q, s.at("leaf"), hyperbolicity);
  if (!q.uses_variables()) return false;
  std::size_t v = q.tower()->nvars() - 1;
  if (s.at("var").get<std::string>() != q.tower()->vars()[v]) return false;
  auto [q1, q2] = springer_split(q, v);
  if (strs(s.at("even")) != q1.strings() || strs(s.at("odd")) != q2.strings()) return false;
  if (hyperbolicity) {
    bool e = steps.count(path + "e"), o = steps.count(path + "o");
    if (e == o) return false;
    return e ? verify_chain(q1, steps, path + "e", true) : verify_chain(q2, steps, path + "o", true);
  }
  return verify_chain(q1, steps, path + "e", false) && verify_chain(q2, steps, path + "o", false);
}

inline bool verify_residue_chain(const Certificate& c) {
  std::map<std::string, json> steps;
  for (auto& s : c.at("steps")) steps[s.at("path").get<std::string>()] = s;
  QuadForm q = form_of(c.at("tower"), c.at("form"));
  if (c.claim() == "non-hyperbolic") return verify_chain(q, steps, "", true);
  if (c.claim() == "anisotropic") return verify_chain(q, steps, "", false);
  return false;
}

inline bool verify_obstruction(const Certificate& c) {
  std::vector<SymbolConstraint> cs;
  for (auto& e : c.at("constraints"))
    cs.push_back({mpq_class(e.at("a").get<std::string>()),
                  e.at("target").get<std::string>() == "split" ? SymbolTarget::split : SymbolTarget::equal_to_Q});
  auto q = strs(c.at("Q"));
  mpq_class qa(q[0]), qb(q[1]);
  if (quaternion_split_Q(qa, qb)) return false;
  auto v = local::Place::parse(c.at("places").at("place").get<std::string>());
  for (auto& x : local::local_square_classes(v))
    if (sym_detail::first_failure(cs, qa, qb, x, v) < 0) return false;
  return true;
}

}  // namespace verify_detail

inline bool verify(const Certificate& c);

namespace verify_detail {

inline bool verify_subs(const Certificate& c) {
  for (auto& s : c.subs())
    if (!verify(s)) return false;
  return true;
}

inline bool verify_discriminant_mismatch(const Certificate& c) {
  auto t = FieldTower::parse(c.at("tower").get<std::string>());
  QuadForm psi = QuadForm::parse(t, strs(c.at("psi"))), phi = QuadForm::parse(t, strs(c.at("phi")));
  if (psi.dim() != phi.dim()) return false;
  bool aniso = false;
  for (auto& s : c.subs())
    if (s.to_json().value("role", "") == "psi-anisotropic" && s.claim() == "anisotropic" &&
        strs(s.at("form")) == psi.strings())
      aniso = true;
  return aniso && !is_square(psi.discriminant() / phi.discriminant()) && verify_subs(c);
}

inline bool verify_local_table(const Certificate& c) {
  if (c.claim() == "anisotropic")
    return verify_local_anisotropic(rationals_of(c.at("form")), c.at("places"), c.at("reason").get<std::string>());
  if (c.claim() == "not-isometric") {
    auto a = rationals_of(c.at("psi")), b = rationals_of(c.at("phi"));
    if (a.size() != b.size()) return false;
    auto v = local::Place::parse(c.at("places").at("place").get<std::string>());
    bool differ = local::local_invariants(a, v).epsilon != local::local_invariants(b, v).epsilon ||
                  (v.is_infinite() && negatives(a) != negatives(b));
    bool aniso = false;
    for (auto& s : c.subs()) aniso = aniso || (s.to_json().value("role", "") == "psi-anisotropic");
    return differ && aniso && verify_subs(c);
  }
  return false;
}

}  // namespace verify_detail

inline bool verify(const Certificate& c) {
  try {
    switch (c.kind()) {
      case CertKind::Witness: return verify_detail::verify_witness(c);
      case CertKind::ResidueChain: return verify_detail::verify_residue_chain(c);
      case CertKind::LocalTable: return verify_detail::verify_local_table(c);
      case CertKind::ReciprocityObstruction: return verify_detail::verify_obstruction(c);
      case CertKind::DiscriminantMismatch: return verify_detail::verify_discriminant_mismatch(c);
      case CertKind::Composite: return !c.subs().empty() && verify_detail::verify_subs(c);
      case CertKind::None: return false;
    }
  } catch (const std::exception&) {
    return false;
  }
  return false;
}

}  // namespace outaut
