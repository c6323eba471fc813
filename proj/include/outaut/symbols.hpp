#pragma once

// Prescribed quaternion symbols over Q: find mu with (a_i, mu) split or
// isomorphic to a fixed division algebra Q = (qa, qb), or show that no such
// mu exists.
//
// Existence is a local question: by the classical theorem on prescribed
// Hilbert symbols (the product formula holds automatically for these
// targets), a global mu exists iff at every place some local square class
// satisfies all constraints. Emptiness certificates exhibit one place where
// every local class violates some constraint.

#include <set>
#include <string>
#include <vector>

#include "outaut/certificate.hpp"
#include "outaut/hilbert.hpp"

namespace outaut {

enum class SymbolTarget { split, equal_to_Q };

inline std::string to_string(SymbolTarget t) { return t == SymbolTarget::split ? "split" : "equal-to-Q"; }

struct SymbolConstraint {
  mpq_class a;
  SymbolTarget target;
};

struct SymbolSolverOptions {
  std::size_t aux_primes = 25;    // auxiliary primes outside S tried first
  std::size_t max_aux = 2000;     // hard cap before giving up with `unknown`
  std::size_t max_support = 16;   // capacity bound on |S|
};

enum class SymbolStatus { witness, empty, unknown };

inline std::string to_string(SymbolStatus s) {
  switch (s) {
    case SymbolStatus::witness: return "witness";
    case SymbolStatus::empty: return "empty";
    default: return "unknown";
  }
}

struct SymbolSolution {
  SymbolStatus status;
  mpq_class mu;
  Certificate cert;
};

namespace sym_detail {

inline int target_value(const SymbolConstraint& c, const mpq_class& qa, const mpq_class& qb, const local::Place& v) {
  return c.target == SymbolTarget::split ? 1 : local::hilbert_symbol(qa, qb, v);
}

inline std::vector<local::Place> support(const std::vector<SymbolConstraint>& cs, const mpq_class& qa,
                                         const mpq_class& qb, const mpq_class& mu = 1) {
  std::vector<mpq_class> xs{qa, qb, mu};
  for (auto& c : cs) xs.push_back(c.a);
  return local::relevant_places(xs);
}

// Does the local class x satisfy every constraint at v? Returns index of the first failure, or -1.
inline int first_failure(const std::vector<SymbolConstraint>& cs, const mpq_class& qa, const mpq_class& qb,
                         const mpq_class& x, const local::Place& v) {
  for (std::size_t i = 0; i < cs.size(); ++i)
    if (local::hilbert_symbol(cs[i].a, x, v) != target_value(cs[i], qa, qb, v)) return static_cast<int>(i);
  return -1;
}

}  // namespace sym_detail

inline bool verify_symbol_witness(const std::vector<SymbolConstraint>& cs, const mpq_class& qa, const mpq_class& qb,
                                  const mpq_class& mu) {
  if (mu == 0) return false;
  for (auto& v : sym_detail::support(cs, qa, qb, mu))
    if (sym_detail::first_failure(cs, qa, qb, mu, v) >= 0) return false;
  return true;
}

inline bool quaternion_split_Q(const mpq_class& a, const mpq_class& b) {
  for (auto& v : local::relevant_places({a, b}))
    if (local::hilbert_symbol(a, b, v) == -1) return false;
  return true;
}

namespace sym_detail {

inline json constraints_json(const std::vector<SymbolConstraint>& cs) {
  json arr = json::array();
  for (auto& c : cs) arr.push_back(json{{"a", c.a.get_str()}, {"target", to_string(c.target)}});
  return arr;
}

}  // namespace sym_detail

inline SymbolSolution solve_prescribed_symbols(const std::vector<SymbolConstraint>& cs, const mpq_class& qa,
                                               const mpq_class& qb, const SymbolSolverOptions& opts = {}) {
  if (qa == 0 || qb == 0) throw PreconditionError("quaternion parameters must be nonzero");
  for (auto& c : cs)
    if (c.a == 0) throw PreconditionError("constraint parameter must be nonzero");
  if (quaternion_split_Q(qa, qb)) throw PreconditionError("Q must be a division algebra");
  auto places = sym_detail::support(cs, qa, qb);
  if (places.size() > opts.max_support)
    throw CapacityError("symbol support has " + std::to_string(places.size()) + " places, bound is " +
                        std::to_string(opts.max_support));
  // local obstruction?
  for (auto& v : places) {
    json table = json::array();
    bool solvable = false;
    for (auto& x : local::local_square_classes(v)) {
      int f = sym_detail::first_failure(cs, qa, qb, x, v);
      if (f < 0) {
        solvable = true;
        break;
      }
      table.push_back(json{{"class", x.get_str()},
                           {"constraint", f},
                           {"symbol", local::hilbert_symbol(cs[static_cast<std::size_t>(f)].a, x, v)},
                           {"required", sym_detail::target_value(cs[static_cast<std::size_t>(f)], qa, qb, v)}});
    }
    if (!solvable) {
      Certificate c(CertKind::ReciprocityObstruction, "empty");
      c["Q"] = json::array({qa.get_str(), qb.get_str()});
      c["constraints"] = sym_detail::constraints_json(cs);
      c["places"] = json{{"place", v.str()}};
      c["obstruction"] = table;
      return {SymbolStatus::empty, 0, c};
    }
  }
  // witness search: sign * prod_{p in S} p^e * aux
  std::vector<mpz_class> primes;
  std::set<mpz_class> in_s;
  for (auto& v : places)
    if (!v.is_infinite()) {
      primes.push_back(v.p);
      in_s.insert(v.p);
    }
  std::vector<mpz_class> aux{1};
  mpz_class p = 2;
  auto extend_aux = [&](std::size_t count) {
    while (aux.size() < count + 1) {
      p = arith::next_prime(p);
      if (!in_s.count(p)) aux.push_back(p);
    }
  };
  std::size_t done = 0;
  std::size_t target = opts.aux_primes;
  while (true) {
    extend_aux(target);
    for (std::size_t k = done; k < aux.size(); ++k) {
      for (unsigned long mask = 0; mask < (1ul << primes.size()); ++mask) {
        for (int sign : {1, -1}) {
          mpz_class m = sign * aux[k];
          for (std::size_t b = 0; b < primes.size(); ++b)
            if (mask >> b & 1) m *= primes[b];
          mpq_class mu(m);
          if (verify_symbol_witness(cs, qa, qb, mu)) {
            Certificate c(CertKind::Witness, "witness");
            c["Q"] = json::array({qa.get_str(), qb.get_str()});
            c["constraints"] = sym_detail::constraints_json(cs);
            c["witness"] = json::array({mu.get_str()});
            json table = json::object();
            for (auto& v : sym_detail::support(cs, qa, qb, mu)) {
              json row = json::array();
              for (auto& con : cs) row.push_back(local::hilbert_symbol(con.a, mu, v));
              table[v.str()] = row;
            }
            c["places"] = table;
            return {SymbolStatus::witness, mu, c};
          }
        }
      }
    }
    done = aux.size();
    if (target >= opts.max_aux) break;
    target = std::min(opts.max_aux, target * 4);
  }
  Certificate c(CertKind::None, "unknown");
  c["reason"] = "no local obstruction but witness search exhausted the auxiliary prime cap";
  return {SymbolStatus::unknown, 0, c};
}

}  // namespace outaut
