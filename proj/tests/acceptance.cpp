// One line per acceptance criterion; exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <string>

#include "outaut/corpus.hpp"
#include "outaut/descent.hpp"
#include "outaut/genericsum.hpp"
#include "outaut/hilbert.hpp"
#include "outaut/verify.hpp"
#include "support.hpp"

using namespace outaut;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

Outcome timed(double limit, const std::function<Outcome()>& f, double& secs) {
  auto t0 = Clock::now();
  Outcome o;
  try {
    o = f();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (o.pass && secs > limit) o = {false, "time limit " + std::to_string(limit) + " s exceeded"};
  return o;
}

// 1 ------------------------------------------------------------------------
Outcome identities() {
  auto t = FieldTower::parse("Q[a1,a2]");
  Scalar a1 = Scalar::var(t, "a1"), a2 = Scalar::var(t, "a2");
  Scalar a3 = a1 * ((1 - a1).pow(2) * (1 + a2).pow(2) - 4 * (1 - a1) * a2);
  auto Q = make_quat_algebra(a1, a2);
  Quat q3 = Quat::pure(Q, (1 - a1) * (1 + a2), 2 * a1, Scalar(t, 2));
  int bad = 0;
  bad += !(q3 * q3 == Quat::scalar(Q, a3));
  bad += !((1 - a1).pow(2) * (1 + a2).pow(2) - a3 / a1 == 4 * (1 - a1) * a2);
  bad += !((1 - a1).pow(2) * (1 - a2).pow(2) - a3 / a1 == 4 * a1 * (1 - a1) * a2);
  bad += !(a3 == a1 * (1 - a1) * ((1 - a2).pow(2) - a1 * (1 + a2).pow(2)));
  // the same identities after parsing the printed forms
  bad += !(parse_scalar(t, a3.str()) == a3);
  return {bad == 0, std::to_string(5 - bad) + "/5 identities exact"};
}

// 2 ------------------------------------------------------------------------
Outcome hilbert_laws() {
  std::mt19937_64 rng(1009);
  auto rq = [&] {
    for (;;) {
      mpq_class q(test::uniform(rng, -10000, 10000), test::uniform(rng, 1, 10000));
      q.canonicalize();
      if (q != 0) return q;
    }
  };
  long violations = 0, checks = 0;
  for (int it = 0; it < 1000; ++it) {
    mpq_class a = rq(), b = rq(), c = rq();
    auto places = local::relevant_places({a, b, c, mpq_class(a * c), mpq_class(-a), mpq_class(1 - a)});
    places.push_back(local::Place::infinity());
    places.push_back(local::Place::prime(2));
    int product = 1;
    for (auto& v : local::relevant_places({a, b})) product *= local::hilbert_symbol(a, b, v);
    ++checks;
    violations += product != 1;
    for (auto& v : places) {
      int ab = local::hilbert_symbol(a, b, v);
      checks += 4;
      violations += ab != local::hilbert_symbol(b, a, v);
      violations += local::hilbert_symbol(mpq_class(a * c), b, v) != ab * local::hilbert_symbol(c, b, v);
      violations += local::hilbert_symbol(a, mpq_class(-a), v) != 1;
      if (a != 1) violations += local::hilbert_symbol(a, mpq_class(1 - a), v) != 1;
    }
  }
  return {violations == 0, std::to_string(checks) + " checks, " + std::to_string(violations) + " violations"};
}

// 3 ------------------------------------------------------------------------
bool is_square_ll(long long v, long long& r) {
  if (v < 0) return false;
  r = static_cast<long long>(std::sqrt(static_cast<long double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r * r == v;
}

// Nonzero integer zero with |x_1..x_{n-1}| <= h, the last coordinate solved exactly.
bool brute_isotropic(const std::vector<long>& a, long h) {
  std::size_t n = a.size();
  std::vector<long> x(n - 1, 0);
  std::function<bool(std::size_t, long long, bool)> rec = [&](std::size_t k, long long acc, bool nz) {
    if (k == n - 1) {
      if (!nz) return false;
      long long num = -acc;
      if (num % a[n - 1]) return false;
      long long r;
      return is_square_ll(num / a[n - 1], r);
    }
    for (long v = 0; v <= h; ++v)
      if (rec(k + 1, acc + static_cast<long long>(a[k]) * v * v, nz || v != 0)) return true;
    return false;
  };
  return rec(0, 0, false);
}

Outcome isotropy_oracle() {
  std::mt19937_64 rng(31337);
  auto t = FieldTower::parse("Q");
  int disagree = 0, bad_witness = 0, iso = 0;
  for (int it = 0; it < 500; ++it) {
    std::size_t n = static_cast<std::size_t>(test::uniform(rng, 1, 4));
    std::vector<long> a;
    std::vector<Scalar> s;
    for (std::size_t k = 0; k < n; ++k) {
      long v = 0;
      while (v == 0) v = test::uniform(rng, -20, 20);
      a.push_back(v);
      s.emplace_back(t, v);
    }
    QuadForm q(t, s);
    auto r = is_isotropic_Q(q);
    bool brute = n >= 2 && brute_isotropic(a, 200);
    if (r.isotropic) {
      ++iso;
      mpq_class sum = 0;
      bool nz = false;
      for (std::size_t k = 0; k < n; ++k) {
        sum += a[k] * r.witness.at(k) * r.witness.at(k);
        nz = nz || r.witness[k] != 0;
      }
      bad_witness += sum != 0 || !nz;
    }
    disagree += r.isotropic != brute;
  }
  return {disagree == 0 && bad_witness == 0, "500 forms, " + std::to_string(iso) + " isotropic, " +
                                                 std::to_string(disagree) + " disagreements, " +
                                                 std::to_string(bad_witness) + " bad witnesses"};
}

// 4 ------------------------------------------------------------------------
Outcome similitude_contract() {
  std::mt19937_64 rng(90211);
  auto t = FieldTower::parse("Q");
  std::vector<QuatAlg> algs{parse_quat_algebra(t, "-1", "-1"), parse_quat_algebra(t, "-1", "3"),
                            parse_quat_algebra(t, "2", "5"), parse_quat_algebra(t, "-2", "-5")};
  for (auto& q : algs)
    if (is_division(q).verdict != Division::division) return {false, "test algebra not certified division"};
  int built = 0, attempts = 0, failed = 0;
  while (built < 200 && attempts < 20000) {
    ++attempts;
    auto& Q = algs[static_cast<std::size_t>(test::uniform(rng, 0, 3))];
    std::size_t n = static_cast<std::size_t>(test::uniform(rng, 1, 4));
    std::vector<Quat> es;
    std::vector<SimType> pat;
    std::size_t improper = 0;
    for (std::size_t k = 0; k < n; ++k) {
      Quat x(Q);
      while (x.is_zero())
        x = Quat::pure(Q, Scalar(t, test::uniform(rng, -3, 3)), Scalar(t, test::uniform(rng, -3, 3)),
                       Scalar(t, test::uniform(rng, -3, 3)));
      es.push_back(x);
      bool imp = test::uniform(rng, 0, 1);
      pat.push_back(imp ? SimType::improper : SimType::proper);
      improper += imp;
    }
    long m = 0;
    while (m == 0) m = test::uniform(rng, -12, 12);
    Scalar mu(t, m);
    SkewHermForm h(Q, es);
    auto r = build_diagonal_similitude(h, mu, pat);
    if (r.verdict != Verdict::yes) continue;
    ++built;
    const QuatMatrix& g = r.similitude->g;
    QuatMatrix lhs = conj_transpose(g) * h.gram() * g;
    QuatMatrix rhs = h.gram().map([&](const Quat& x) { return mu * x; });
    auto chk = verify_similitude(h, g, mu);
    Scalar mun = mu.pow(static_cast<long>(n));
    Scalar want = improper % 2 ? -mun : mun;
    if (!(lhs == rhs) || !chk.valid || !chk.nrd || !(*chk.nrd == want)) ++failed;
  }
  return {built == 200 && failed == 0, std::to_string(built) + " built, " + std::to_string(failed) + " failures"};
}

// 5 ------------------------------------------------------------------------
Outcome descent_theorem() {
  std::mt19937_64 rng(50505);
  auto t = FieldTower::parse("Q");
  int ok = 0, bad = 0;
  for (int it = 0; it < 100; ++it) {
    long d = std::array<long, 3>{2, 3, 5}[static_cast<std::size_t>(test::uniform(rng, 0, 2))];
    auto Q0 = make_quat_algebra(Scalar(t, -1), Scalar(t, -1));
    auto D = std::make_shared<const UnitaryDatum>(Q0, Scalar(t, d));
    std::size_t n = static_cast<std::size_t>(test::uniform(rng, 1, 3));
    std::vector<QuatHat> es;
    auto r6 = [&] { return Scalar(t, Coeff(test::random_rational(rng, 6))); };
    while (es.size() < n) {
      Quat f = Quat::scalar(Q0, r6()), p = Quat::pure(Q0, r6(), r6(), r6());
      if (!f.is_zero() || !p.is_zero()) es.push_back(D->combine(f, p));
    }
    UnitaryHermForm h(D, es);
    auto r = descend(h);
    // replay: theta(q) = -q, iota'(q q_i) = q q_i, ad_h = ad_{h'} (x) iota on the spanning set
    const QuatHat& q = r.q;
    QuatHat qinv = q.inverse();
    bool good = D->theta(q) == -q && r.checks.all();
    QuatHatMatrix Hp = QuatHatMatrix::diagonal(r.hprime_hat, QuatHat(D->qhat()));
    QuatHatMatrix H = h.gram();
    QuatHatMatrix Hinv = QuatHatMatrix::diagonal([&] {
      std::vector<QuatHat> v;
      for (auto& e : es) v.push_back(e.inverse());
      return v;
    }(), QuatHat(D->qhat()));
    QuatHatMatrix Hpinv = QuatHatMatrix::diagonal([&] {
      std::vector<QuatHat> v;
      for (auto& e : r.hprime_hat) v.push_back(e.inverse());
      return v;
    }(), QuatHat(D->qhat()));
    for (std::size_t i = 0; i < n; ++i) good = good && q * D->iota(q * es[i]) * qinv == q * es[i];
    // each spanning matrix has one nonzero entry x at (a, b); both adjoints land at (b, a)
    for (std::size_t a = 0; a < n && good; ++a)
      for (std::size_t b = 0; b < n && good; ++b)
        for (auto& X : descent_detail::spanning_set(*D, 1)) {
          const QuatHat& x = X(0, 0);
          if (!(Hinv(b, b) * D->theta(x) * H(a, a) == Hpinv(b, b) * (q * D->iota(x) * qinv).conj() * Hp(a, a))) {
            good = false;
            break;
          }
        }
    if (it < 10)
      for (auto& X : descent_detail::spanning_set(*D, n)) {
        QuatHatMatrix theta_t = X.map([&](const QuatHat& x) { return D->theta(x); }).transpose();
        QuatHatMatrix iota_p =
            X.map([&](const QuatHat& x) { return (q * D->iota(x) * qinv).conj(); }).transpose();
        if (!(Hinv * theta_t * H == Hpinv * iota_p * Hp)) {
          good = false;
          break;
        }
      }
    good ? ++ok : ++bad;
  }
  return {bad == 0, std::to_string(ok) + "/100 descents verified"};
}

// 6 ------------------------------------------------------------------------
Outcome d_even() {
  auto ex = d_even_example(4);
  const auto& r = ex.report;
  std::vector<std::string> errs;
  if (r.out1.status != OutStatus::holds || !verify(r.out1.cert)) errs.push_back("Out1");
  if (r.out2.status != OutStatus::fails || r.out2.paper_asserted || !verify(r.out2.cert)) errs.push_back("Out2");
  for (auto key : {"pfister_a1a3", "pfister_a2a3"}) {
    auto c = Certificate::from_json(ex.extra[key]["cert"]);
    if (ex.extra[key]["verdict"] != "not-represented" || c.kind() != CertKind::DiscriminantMismatch || !verify(c))
      errs.push_back(key);
  }
  int empty = 0;
  for (auto& c : r.out2.cert.subs())
    if (c.claim() == "pattern-empty" && verify(c)) ++empty;
  if (empty != 4) errs.push_back("patterns " + std::to_string(empty) + "/4");
  std::string d = "Out1 holds, Out2 fails, 4/4 intersections empty, 2 Pfister refutations";
  if (!errs.empty()) {
    d = "failed:";
    for (auto& e : errs) d += " " + e;
  }
  return {errs.empty(), d};
}

// 7 ------------------------------------------------------------------------
Outcome d_odd() {
  std::vector<std::string> errs;
  auto gi = d_odd_example(Base::GaussianRationals, 3);
  const auto& w = gi.report.out2.similitude;
  if (gi.report.out2.status != OutStatus::holds || !w) {
    errs.push_back("Q(i) Out2");
  } else {
    auto t = gi.form->algebra()->a().tower();
    auto chk = verify_similitude(*gi.form, w->g, w->mu);
    if (!(w->mu == Scalar::var(t, "a1")) || !chk.valid || chk.type != SimType::improper ||
        gi.report.out2.witness->at("pattern") != "+-+")
      errs.push_back("Q(i) witness");
  }
  auto gq = d_odd_example(Base::Rationals, 3);
  auto m1 = gq.report.checks["minus_one_norm"];
  auto c = Certificate::from_json(m1["cert"]);
  if (m1["verdict"] != "no" || c.kind() != CertKind::ResidueChain || !verify(c)) errs.push_back("-1 not a norm");
  for (auto* rep : {&gi.report, &gq.report})
    if (rep->out3.status != OutStatus::fails || !rep->out3.paper_asserted) errs.push_back("Out3 flag");
  if (gq.report.out2.status != OutStatus::fails || !gq.report.out2.paper_asserted) errs.push_back("Q Out2 flag");
  std::string d = "Q(i): improper witness mu = a1 (+,-,+); Q: -1 not in Nrd (residue chain); Out3 asserted";
  if (!errs.empty()) {
    d = "failed:";
    for (auto& e : errs) d += " " + e;
  }
  return {errs.empty(), d};
}

// 8 ------------------------------------------------------------------------
Outcome unitary() {
  std::vector<std::string> errs;
  auto q = verify_unitary_example(1, Base::Rationals);
  bool nonhyp = false;
  for (auto& s : q.report.out2.cert.subs()) nonhyp = nonhyp || (s.to_json()["role"] == "phi-perp-phi-non-hyperbolic" && verify(s));
  if (q.report.out2.status != OutStatus::fails || !nonhyp) errs.push_back("Q obstruction");

  auto g = verify_unitary_example(1, Base::GaussianRationals);
  if (g.report.out2.status != OutStatus::holds) errs.push_back("Q(i) Out2");
  auto ex = unitary_example_form(1, Base::GaussianRationals);
  const auto& D = *ex.datum;
  Scalar one(D.tower(), 1);
  std::vector<QuatHat> diag{D.scalar(D.lift(one))};
  for (int k = 0; k < 3; ++k) diag.push_back(D.scalar(D.lift(Scalar::imag_unit(D.tower()))));
  auto chk = unitary_similitude_check(*ex.h, QuatHatMatrix::diagonal(diag, QuatHat(D.qhat())), one);
  if (!chk.valid) errs.push_back("witness check");
  int cands = 0;
  for (auto& c : g.report.checks["order2_candidates"]) {
    ++cands;
    if (c["valid"] != true || c["order2"] != true || c["lambda_pm_mu"] != true) errs.push_back("candidate");
  }
  if (cands == 0) errs.push_back("no candidates");
  std::string d = "Q: phi perp phi non-hyperbolic; Q(i): witness valid, " + std::to_string(cands) +
                  " order-2 candidates with lambda = +-mu";
  if (!errs.empty()) {
    d = "failed:";
    for (auto& e : errs) d += " " + e;
  }
  return {errs.empty(), d};
}

// 9 ------------------------------------------------------------------------
Outcome invariants() {
  std::vector<std::string> failed;
  for (auto name : {"test_fields", "test_quadforms", "test_quaternion", "test_hermitian", "test_genericsum", "test_descent",
                    "test_cli"}) {
    std::string cmd = std::string(OUTAUT_TEST_DIR) + "/" + name + " \"[property]\" --rng-seed 1 > /dev/null 2>&1";
    if (std::system(cmd.c_str()) != 0) failed.push_back(name);
  }
  auto t0 = Clock::now();
  auto rep = verify_corpus(OUTAUT_CORPUS_PATH);
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  std::string d = "property suites " + std::to_string(7 - failed.size()) + "/7 green; corpus " +
                  std::to_string(rep.count("verified", true)) + " verified, " + std::to_string(rep.count("verified", false)) +
                  " failed, " + std::to_string(rep.asserted()) + " asserted";
  for (auto& f : failed) d += "; failed " + f;
  return {failed.empty() && rep.ok() && rep.asserted() == 2 && secs < 300, d};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> cs{{"identity suite", 1, identities},
                            {"Hilbert symbol laws", 10, hilbert_laws},
                            {"isotropy oracle agreement", 60, isotropy_oracle},
                            {"similitude contract", 30, similitude_contract},
                            {"descent at desk scale", 60, descent_theorem},
                            {"D-even counterexample", 30, d_even},
                            {"D-odd dichotomy", 30, d_odd},
                            {"unitary example", 30, unitary},
                            {"invariant suites and corpus", 300, invariants}};
  int failures = 0;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    double secs = 0;
    Outcome o = timed(cs[i].limit, cs[i].run, secs);
    failures += !o.pass;
    std::printf("%s %zu %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", i + 1, cs[i].name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures ? 1 : 0;
}
