#include <catch_amalgamated.hpp>

#include <random>
#include <set>
#include <unordered_set>

#include "outaut/quadform.hpp"
#include "outaut/symbols.hpp"
#include "outaut/verify.hpp"
#include "support.hpp"

using namespace outaut;
using local::Place;

namespace {

TowerPtr tower(const std::string& s) { return FieldTower::parse(s); }

QuadForm form(const std::string& t, const std::vector<std::string>& xs) { return QuadForm::parse(tower(t), xs); }

// Independent Hilbert symbol oracle: (a,b)_p = 1 iff z^2 = a x^2 + b y^2 has a primitive
// solution modulo p^3 (p odd) or 2^5, for square-free integers a, b.
int hilbert_oracle(long a, long b, long p) {
  long m = p == 2 ? 32 : p * p * p;
  auto md = [m](long x) { return ((x % m) + m) % m; };
  std::vector<char> sq(static_cast<std::size_t>(m), 0), unit_sq(static_cast<std::size_t>(m), 0);
  for (long z = 0; z < m; ++z) {
    sq[static_cast<std::size_t>(md(z * z))] = 1;
    if (z % p) unit_sq[static_cast<std::size_t>(md(z * z))] = 1;
  }
  for (long x = 0; x < m; ++x)
    for (long y = 0; y < m; ++y) {
      long r = md(a * x * x + b * y * y);
      bool xy_unit = (x % p) || (y % p);
      if ((xy_unit && sq[static_cast<std::size_t>(r)]) || unit_sq[static_cast<std::size_t>(r)]) return 1;
    }
  return -1;
}

long squarefree(long n) {
  long s = n < 0 ? -1 : 1;
  n = std::labs(n);
  for (long p = 2; p * p <= n; ++p)
    while (n % (p * p) == 0) n /= p * p;
  return s * n;
}


// Exhaustive isotropy search for integer forms, max-norm <= h, meet in the middle.
bool brute_isotropic(const std::vector<long>& a, long h) {
  std::size_t n = a.size();
  if (n == 1) return false;
  if (n == 2) {
    for (long x = 0; x <= h; ++x)
      for (long y = 0; y <= h; ++y)
        if ((x || y) && a[0] * x * x + a[1] * y * y == 0) return true;
    return false;
  }
  std::size_t half = n / 2;
  // right part values (any), keyed also by whether the right vector is zero
  std::unordered_set<long> right_nonzero, right_all;
  std::vector<long> v(n - half, 0);
  std::function<void(std::size_t, long, bool)> rec_r = [&](std::size_t k, long acc, bool nz) {
    if (k == n - half) {
      right_all.insert(acc);
      if (nz) right_nonzero.insert(acc);
      return;
    }
    for (long x = 0; x <= h; ++x) rec_r(k + 1, acc + a[half + k] * x * x, nz || x);
  };
  rec_r(0, 0, false);
  bool found = false;
  std::function<void(std::size_t, long, bool)> rec_l = [&](std::size_t k, long acc, bool nz) {
    if (found) return;
    if (k == half) {
      if (nz ? right_all.count(-acc) : right_nonzero.count(-acc)) found = true;
      return;
    }
    for (long x = 0; x <= h; ++x) rec_l(k + 1, acc + a[k] * x * x, nz || x);
  };
  rec_l(0, 0, false);
  return found;
}

Certificate round_trip(const Certificate& c) { return Certificate::from_json(json::parse(c.dump())); }

}  // namespace

TEST_CASE("hilbert symbol examples", "[quadforms]") {
  CHECK(local::hilbert_symbol(-1, -1, Place::infinity()) == -1);
  CHECK(local::hilbert_symbol(-1, -1, Place::prime(2)) == -1);
  CHECK(local::hilbert_symbol(2, 7, Place::prime(7)) == 1);
  CHECK(local::hilbert_symbol(-1, -1, Place::prime(3)) == 1);
  CHECK(local::hilbert_symbol(3, 5, Place::prime(5)) == -1);
  CHECK(local::hilbert_symbol(mpq_class(2, 9), 3, Place::prime(3)) == local::hilbert_symbol(2, 3, Place::prime(3)));
  CHECK_THROWS_AS(local::hilbert_symbol(0, 3, Place::prime(3)), PreconditionError);
}

TEST_CASE("hilbert symbol agrees with the congruence oracle", "[quadforms]") {
  // frozen oracle values
  CHECK(hilbert_oracle(-1, -1, 2) == -1);
  CHECK(hilbert_oracle(2, 7, 7) == 1);
  for (long a = -15; a <= 15; ++a)
    for (long b = -15; b <= 15; ++b) {
      if (!a || !b) continue;
      long sa = squarefree(a), sb = squarefree(b);
      for (long p : {2L, 3L, 5L, 7L}) {
        INFO("a=" << sa << " b=" << sb << " p=" << p);
        CHECK(local::hilbert_symbol(sa, sb, Place::prime(p)) == hilbert_oracle(sa, sb, p));
      }
    }
}

TEST_CASE("hilbert symbol laws", "[quadforms][property]") {
  std::mt19937_64 rng(101);
  for (int it = 0; it < 1000; ++it) {
    mpq_class a = test::random_nonzero_rational(rng, 10000), b = test::random_nonzero_rational(rng, 10000);
    mpq_class c = test::random_nonzero_rational(rng, 100);
    int product = 1;
    for (auto& v : local::relevant_places({a, b, c})) {
      int ab = local::hilbert_symbol(a, b, v);
      REQUIRE(ab == local::hilbert_symbol(b, a, v));
      REQUIRE(local::hilbert_symbol(a * c, b, v) == ab * local::hilbert_symbol(c, b, v));
      REQUIRE(local::hilbert_symbol(a, mpq_class(-a), v) == 1);
      if (a != 1) REQUIRE(local::hilbert_symbol(a, mpq_class(1 - a), v) == 1);
      product *= ab;
    }
    REQUIRE(product == 1);
  }
}

TEST_CASE("isotropy over Q examples", "[quadforms]") {
  auto r = is_isotropic_Q(form("Q", {"1", "-1"}));
  CHECK(r.isotropic);
  CHECK(r.witness == std::vector<mpq_class>{1, 1});
  auto d = is_isotropic_Q(form("Q", {"1", "1", "1"}));
  CHECK_FALSE(d.isotropic);
  CHECK(d.cert.at("places").at("place") == "inf");
  auto f = is_isotropic_Q(form("Q", {"1", "1", "1", "1", "-7"}));
  CHECK(f.isotropic);
  mpq_class val = 0;
  std::vector<mpq_class> a{1, 1, 1, 1, -7};
  for (std::size_t k = 0; k < 5; ++k) val += a[k] * f.witness[k] * f.witness[k];
  CHECK(val == 0);
  CHECK(verify(r.cert));
  CHECK(verify(d.cert));
  CHECK(verify(f.cert));
  // the 2-adically anisotropic norm form of (-1,-1)
  auto h = is_isotropic_Q(form("Q", {"1", "1", "1", "1"}));
  CHECK_FALSE(h.isotropic);
  auto g = is_isotropic_Q(form("Q", {"1", "1", "1", "-7"}));
  CHECK_FALSE(g.isotropic);
  CHECK(g.cert.at("places").at("place") == "2");
  CHECK(verify(g.cert));
}

TEST_CASE("springer split examples", "[quadforms]") {
  auto [e1, o1] = springer_split(form("Q[t]", {"1", "t", "-t"}), 0);
  CHECK(e1.strings() == std::vector<std::string>{"1"});
  CHECK(o1.strings() == std::vector<std::string>{"1", "-1"});
  auto [e2, o2] = springer_split(form("Q[a,t]", {"t^2*a"}), 1);
  CHECK(e2.strings() == std::vector<std::string>{"a"});
  CHECK(o2.dim() == 0);
  auto [e3, o3] = springer_split(form("Q[a1,a2]", {"1", "-a1", "-a2", "a1*a2"}), 1);
  CHECK(e3.strings() == std::vector<std::string>{"1", "-a1"});
  CHECK(o3.strings() == std::vector<std::string>{"-1", "a1"});
  CHECK_THROWS_AS(springer_split(form("Q[a1,a2]", {"a1"}), 0), PreconditionError);
}

TEST_CASE("anisotropy certification examples", "[quadforms]") {
  auto nq = form("Q[a1,a2]", {"1", "-a1", "-a2", "a1*a2"});
  auto r = certify_anisotropic(nq);
  CHECK(r.verdict == Anisotropy::anisotropic);
  CHECK(r.cert.kind() == CertKind::ResidueChain);
  CHECK(verify(r.cert));
  CHECK(verify(round_trip(r.cert)));
  CHECK(round_trip(r.cert).dump() == r.cert.dump());

  CHECK(certify_anisotropic(form("Q", {"1", "1"})).verdict == Anisotropy::anisotropic);
  auto iso = certify_anisotropic(form("Q[a1]", {"a1", "-a1"}));
  CHECK(iso.verdict == Anisotropy::isotropic);
  CHECK(verify(iso.cert));
  CHECK(iso.witness[0] * iso.witness[0] == iso.witness[1] * iso.witness[1]);

  auto gauss = certify_anisotropic(form("Q(i)[a1,a2]", {"1", "a2", "a1*a2"}));
  CHECK(gauss.verdict == Anisotropy::anisotropic);
  CHECK(verify(gauss.cert));
  // over Q(i) the form <1,1> is isotropic
  auto hyp = certify_anisotropic(form("Q(i)[a1]", {"1", "1"}));
  CHECK(hyp.verdict == Anisotropy::isotropic);
  CHECK(verify(hyp.cert));
}

TEST_CASE("representation examples", "[quadforms]") {
  auto r = represents(form("Q", {"1", "1"}), Scalar(tower("Q"), 2));
  CHECK(r.verdict == Verdict::yes);
  CHECK(verify(r.cert));

  // <-a1, a1> is a hyperbolic plane, so the form is universal
  auto t = tower("Q[a1]");
  auto u = represents(form("Q[a1]", {"-1", "-a1", "a1"}), Scalar(t, 1));
  CHECK(u.verdict == Verdict::yes);
  CHECK(verify(u.cert));

  auto n = represents(form("Q[a1]", {"1", "a1"}), Scalar(t, -1));
  CHECK(n.verdict == Verdict::no);
  CHECK(verify(n.cert));

  auto q = represents(form("Q", {"1", "1", "1"}), Scalar(tower("Q"), 7));
  CHECK(q.verdict == Verdict::no);
  CHECK(verify(q.cert));
}

TEST_CASE("pure quaternion with square a3", "[quadforms]") {
  auto t = tower("Q[a1,a2]");
  auto a1 = Scalar::var(t, "a1"), a2 = Scalar::var(t, "a2");
  Scalar a3 = a1 * ((1 - a1).pow(2) * (1 + a2).pow(2) - 4 * (1 - a1) * a2);
  // oracle: coordinates from the factorization, expanded exactly
  Scalar x = (1 - a1) * (1 + a2), y = 2 * a1, z = Scalar(t, 2);
  CHECK(a1 * x * x + a2 * y * y - a1 * a2 * z * z == a3);
  QuadForm q(t, {a1, a2, -(a1 * a2)});
  auto r = represents(q, a3, {}, {{x, y, z}});
  CHECK(r.verdict == Verdict::yes);
  CHECK(verify(r.cert));
}

TEST_CASE("generic value refutation", "[quadforms]") {
  auto t = tower("Q(i)[a1,a2]");
  auto phi = form("Q(i)[a1,a2]", {"a1", "a2", "a1*a2"});
  auto r1 = generic_value_refute(form("Q(i)[a1,a2]", {"1", "a2", "a1*a2"}), phi);
  CHECK(r1.verdict == GenericVerdict::not_represented);
  CHECK(r1.cert.kind() == CertKind::DiscriminantMismatch);
  CHECK(r1.cert.at("ratio_class") == "a1");
  CHECK(verify(r1.cert));
  auto r2 = generic_value_refute(form("Q(i)[a1,a2]", {"1", "a1", "a1*a2"}), phi);
  CHECK(r2.verdict == GenericVerdict::not_represented);
  CHECK(r2.cert.at("ratio_class") == "a2");
  CHECK(verify(r2.cert));
  CHECK(verify(round_trip(r2.cert)));
  auto same = generic_value_refute(phi, phi);
  CHECK(same.verdict == GenericVerdict::unknown);
  CHECK_THROWS_AS(generic_value_refute(form("Q(i)[a1,a2]", {"1", "1"}), form("Q(i)[a1,a2]", {"a1", "a2"})),
                  PreconditionError);

  // over the larger tower the generic value is refuted as well
  auto big = tower("Q(i)[a1,a2][r,s,t]");
  auto psi = QuadForm::parse(big, {"1", "a2", "a1*a2"});
  auto c = parse_scalar(big, "a1*r^2 + a2*s^2 + a1*a2*t^2");
  auto rep = represents(psi, c);
  CHECK(rep.verdict == Verdict::no);
  CHECK((rep.cert.kind() == CertKind::DiscriminantMismatch || rep.cert.kind() == CertKind::ResidueChain));
  CHECK(verify(rep.cert));
}

TEST_CASE("prescribed symbols examples", "[quadforms]") {
  auto one = solve_prescribed_symbols({{1, SymbolTarget::equal_to_Q}}, -1, -1);
  CHECK(one.status == SymbolStatus::empty);
  CHECK(one.cert.kind() == CertKind::ReciprocityObstruction);
  CHECK(verify(one.cert));
  for (long a : {3L, -7L, 10L, -1L}) {
    auto both = solve_prescribed_symbols({{a, SymbolTarget::split}, {a, SymbolTarget::equal_to_Q}}, -1, -1);
    CHECK(both.status == SymbolStatus::empty);
    CHECK(verify(both.cert));
  }
  auto w = solve_prescribed_symbols({{-1, SymbolTarget::equal_to_Q}}, -1, -1);
  REQUIRE(w.status == SymbolStatus::witness);
  CHECK(w.mu == -1);
  CHECK(verify(w.cert));
  CHECK(verify(round_trip(w.cert)));
  CHECK_THROWS_AS(solve_prescribed_symbols({{2, SymbolTarget::split}}, 1, 1), PreconditionError);
  SymbolSolverOptions tight;
  tight.max_support = 3;
  CHECK_THROWS_AS(solve_prescribed_symbols({{3 * 5 * 7 * 11, SymbolTarget::split}}, -1, -1, tight), CapacityError);
}

TEST_CASE("non-hyperbolic chains", "[quadforms]") {
  auto c = certify_non_hyperbolic(form("Q[x]", {"x", "x", "-1", "-1"}));
  REQUIRE(c);
  CHECK(verify(*c));
  CHECK_FALSE(certify_non_hyperbolic(form("Q[x]", {"x", "-x", "1", "-1"})));
  CHECK_FALSE(certify_non_hyperbolic(form("Q", {"2", "-2"})));
  CHECK(certify_non_hyperbolic(form("Q", {"1", "1"})));
}

TEST_CASE("tampered certificates are rejected", "[quadforms]") {
  auto r = is_isotropic_Q(form("Q", {"1", "1", "-2"}));
  REQUIRE(r.isotropic);
  json j = r.cert.to_json();
  j["witness"][0] = "5";
  CHECK_FALSE(verify(Certificate::from_json(j)));
  auto a = certify_anisotropic(form("Q[a1,a2]", {"1", "-a1", "-a2", "a1*a2"}));
  json k = a.cert.to_json();
  k["form"][0] = "-1";
  CHECK_FALSE(verify(Certificate::from_json(k)));
  auto s = solve_prescribed_symbols({{1, SymbolTarget::equal_to_Q}}, -1, -1);
  json o = s.cert.to_json();
  o["constraints"][0]["target"] = "split";
  CHECK_FALSE(verify(Certificate::from_json(o)));
  CHECK_FALSE(verify(Certificate(CertKind::None, "unknown")));
}

TEST_CASE("isotropy agrees with exhaustive search", "[quadforms][property]") {
  std::mt19937_64 rng(202);
  for (int it = 0; it < 150; ++it) {
    std::size_t n = static_cast<std::size_t>(test::uniform(rng, 2, 4));
    std::vector<long> a;
    std::vector<std::string> s;
    for (std::size_t k = 0; k < n; ++k) {
      long x = 0;
      while (!x) x = test::uniform(rng, -20, 20);
      a.push_back(x);
      s.push_back(std::to_string(x));
    }
    auto r = is_isotropic_Q(form("Q", s));
    CHECK(verify(r.cert));
    if (!r.isotropic) CHECK_FALSE(brute_isotropic(a, 40));
    if (brute_isotropic(a, 10)) CHECK(r.isotropic);
  }
}

TEST_CASE("springer split reassembles", "[quadforms][property]") {
  std::mt19937_64 rng(303);
  auto t = tower("Q[a,b]");
  auto ta = tower("Q[a]");
  auto b = Scalar::var(t, "b");
  for (int it = 0; it < 100; ++it) {
    // entries u * b^k * s^2 with u free of b
    std::vector<Scalar> es;
    for (int k = 0; k < 3; ++k) {
      Scalar u = test::random_nonzero_scalar(rng, ta, 2).embed(t);
      Scalar s = test::random_nonzero_scalar(rng, t, 1);
      es.push_back(u * b.pow(test::uniform(rng, -2, 3)) * s * s);
    }
    QuadForm q(t, es);
    auto [q1, q2] = springer_split(q, 1);
    REQUIRE(q1.dim() + q2.dim() == q.dim());
    std::multiset<std::string> original, rebuilt;
    for (auto& e : es) original.insert(to_scalar(square_class(e), t).str());
    for (auto& x : q1.entries()) rebuilt.insert(to_scalar(square_class(x.embed(t)), t).str());
    for (auto& x : q2.entries()) rebuilt.insert(to_scalar(square_class(x.embed(t) * b), t).str());
    CHECK(original == rebuilt);
  }
}

TEST_CASE("anisotropy chains and witnesses re-verify", "[quadforms][property]") {
  std::mt19937_64 rng(404);
  auto t = tower("Q[a1,a2]");
  std::vector<std::string> atoms{"1", "-1", "2", "-3", "a1", "-a1", "a2", "-a2", "a1*a2", "-a1*a2", "1-a1", "a1+a2"};
  int aniso = 0, iso = 0;
  for (int it = 0; it < 60; ++it) {
    std::size_t n = static_cast<std::size_t>(test::uniform(rng, 2, 4));
    std::vector<std::string> s;
    for (std::size_t k = 0; k < n; ++k) s.push_back(atoms[static_cast<std::size_t>(test::uniform(rng, 0, 11))]);
    auto r = certify_anisotropic(form("Q[a1,a2]", s));
    if (r.verdict == Anisotropy::unknown) continue;
    (r.verdict == Anisotropy::anisotropic ? aniso : iso)++;
    CHECK(verify(r.cert));
    CHECK(verify(round_trip(r.cert)));
  }
  CHECK(aniso > 0);
  CHECK(iso > 0);
}

TEST_CASE("prescribed symbols agree with exhaustive search", "[quadforms][property]") {
  std::mt19937_64 rng(505);
  std::vector<long> small_primes{3, 5, 7, 11, 13};
  std::vector<std::pair<long, long>> algebras{{-1, -1}, {-1, 3}, {2, 5}, {-1, 7}, {3, 5}};
  int empties = 0, witnesses = 0;
  for (int it = 0; it < 60; ++it) {
    auto [qa, qb] = algebras[static_cast<std::size_t>(test::uniform(rng, 0, 4))];
    std::vector<SymbolConstraint> cs;
    std::size_t m = static_cast<std::size_t>(test::uniform(rng, 1, 3));
    for (std::size_t k = 0; k < m; ++k) {
      long a = test::uniform(rng, 0, 1) ? -1 : 1;
      if (test::uniform(rng, 0, 1)) a *= 2;
      if (test::uniform(rng, 0, 2) == 0) a *= small_primes[static_cast<std::size_t>(test::uniform(rng, 0, 4))];
      cs.push_back({a, test::uniform(rng, 0, 1) ? SymbolTarget::split : SymbolTarget::equal_to_Q});
    }
    std::vector<mpq_class> xs{qa, qb};
    for (auto& c : cs) xs.push_back(c.a);
    auto places = local::relevant_places(xs);
    if (places.size() > 4) continue;
    auto sol = solve_prescribed_symbols(cs, qa, qb);
    REQUIRE(sol.status != SymbolStatus::unknown);
    // exhaustive: signs, subsets of S, auxiliary primes < 100
    std::vector<long> fin;
    for (auto& v : places)
      if (!v.is_infinite()) fin.push_back(v.p.get_si());
    bool exists = false;
    for (long aux = 1; aux < 100 && !exists; ++aux) {
      if (aux > 1 && !arith::is_probable_prime(aux)) continue;
      for (unsigned mask = 0; mask < (1u << fin.size()) && !exists; ++mask)
        for (long sign : {1L, -1L}) {
          long mu = sign * aux;
          for (std::size_t b = 0; b < fin.size(); ++b)
            if (mask >> b & 1) mu *= fin[b];
          if (verify_symbol_witness(cs, qa, qb, mu)) exists = true;
        }
    }
    if (sol.status == SymbolStatus::empty) {
      ++empties;
      CHECK_FALSE(exists);
      CHECK(verify(sol.cert));
    } else {
      ++witnesses;
      CHECK(exists);
      CHECK(verify_symbol_witness(cs, qa, qb, sol.mu));
      CHECK(verify(sol.cert));
    }
  }
  CHECK(empties > 0);
  CHECK(witnesses > 0);
}
