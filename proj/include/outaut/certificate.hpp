#pragma once

// Machine-checkable evidence objects. The JSON layout is
//   {kind, claim, tower, form, steps[], witness[], places{}, obstruction[], ...}
// and `verify` (quadform.hpp) re-checks a certificate from its JSON alone.

#include <json.hpp>

#include <string>
#include <vector>

#include "outaut/errors.hpp"

namespace outaut {

using json = nlohmann::json;

enum class CertKind { Witness, ResidueChain, LocalTable, ReciprocityObstruction, DiscriminantMismatch, Composite, None };

inline std::string to_string(CertKind k) {
  switch (k) {
    case CertKind::Witness: return "Witness";
    case CertKind::ResidueChain: return "ResidueChain";
    case CertKind::LocalTable: return "LocalTable";
    case CertKind::ReciprocityObstruction: return "ReciprocityObstruction";
    case CertKind::DiscriminantMismatch: return "DiscriminantMismatch";
    case CertKind::Composite: return "Composite";
    case CertKind::None: return "None";
  }
  return "None";
}

inline CertKind cert_kind_from_string(const std::string& s) {
  for (auto k : {CertKind::Witness, CertKind::ResidueChain, CertKind::LocalTable, CertKind::ReciprocityObstruction,
                 CertKind::DiscriminantMismatch, CertKind::Composite, CertKind::None})
    if (to_string(k) == s) return k;
  throw ParseError("unknown certificate kind '" + s + "'", 0);
}

class Certificate {
 public:
  Certificate() : j_(json::object()) { j_["kind"] = "None"; }
  Certificate(CertKind kind, const std::string& claim) : j_(json::object()) {
    j_["kind"] = to_string(kind);
    j_["claim"] = claim;
  }
  static Certificate from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind")) throw ParseError("certificate JSON needs a kind", 0);
    cert_kind_from_string(j["kind"].get<std::string>());
    Certificate c;
    c.j_ = j;
    return c;
  }

  CertKind kind() const { return cert_kind_from_string(j_["kind"].get<std::string>()); }
  std::string claim() const { return j_.value("claim", ""); }
  bool empty() const { return kind() == CertKind::None; }

  json& operator[](const std::string& key) { return j_[key]; }
  const json& at(const std::string& key) const { return j_.at(key); }
  bool has(const std::string& key) const { return j_.contains(key); }
  const json& to_json() const { return j_; }

  void add_sub(const std::string& role, const Certificate& sub) {
    json s = sub.j_;
    s["role"] = role;
    j_["sub"].push_back(std::move(s));
  }
  std::vector<Certificate> subs() const {
    std::vector<Certificate> out;
    if (j_.contains("sub"))
      for (auto& s : j_["sub"]) out.push_back(from_json(s));
    return out;
  }

  std::string dump() const { return j_.dump(); }

 private:
  json j_;
};

}  // namespace outaut
