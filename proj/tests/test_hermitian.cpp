#include <catch_amalgamated.hpp>

#include <random>

#include "outaut/hermitian.hpp"
#include "outaut/verify.hpp"
#include "support.hpp"

using namespace outaut;

namespace {

TowerPtr tower(const std::string& s) { return FieldTower::parse(s); }

// Independent reduced norm of a 1x1 or 2x2 quaternion matrix: Nrd of [[x, y], [z, w]] is
// Nrd(x) Nrd(w - z x^-1 y) when x is invertible (Dieudonne determinant).
Scalar nrd_oracle(const QuatMatrix& g) {
  if (g.rows() == 1) return g(0, 0).nrd();
  const Quat &x = g(0, 0), &y = g(0, 1), &z = g(1, 0), &w = g(1, 1);
  if (x.nrd().is_zero()) throw std::runtime_error("oracle needs invertible corner");
  return x.nrd() * (w - z * x.inverse() * y).nrd();
}

Quat small_pure(std::mt19937_64& rng, const QuatAlg& q) {
  auto t = q->a().tower();
  for (;;) {
    Quat x = Quat::pure(q, Scalar(t, test::uniform(rng, -2, 2)), Scalar(t, test::uniform(rng, -2, 2)),
                        Scalar(t, test::uniform(rng, -2, 2)));
    if (!x.is_zero() && !(x * x)[0].is_zero()) return x;
  }
}

}  // namespace

TEST_CASE("discriminants", "[hermitian]") {
  auto h = parse_quat_algebra(tower("Q"), "-1", "-1");
  auto d1 = discriminant(SkewHermForm(h, {parse_quat(h, "i")}));
  CHECK(d1.cls == square_class(Scalar(tower("Q"), -1)));
  auto d2 = discriminant(SkewHermForm(h, {parse_quat(h, "i"), parse_quat(h, "j")}));
  CHECK(d2.cls == square_class(Scalar(tower("Q"), 1)));

  auto t = tower("Q[a1,a2][t1,t2,t3]");
  Scalar a1 = Scalar::var(t, "a1"), a2 = Scalar::var(t, "a2");
  auto q = make_quat_algebra(a1, a2);
  Scalar x = (1 - a1) * (1 + a2), y = 2 * a1, z = Scalar(t, 2);
  Quat q3 = Quat::pure(q, x, y, z);
  Scalar a3 = a1 * ((1 - a1).pow(2) * (1 + a2).pow(2) - 4 * (1 - a1) * a2);
  SkewHermForm w(q, {Quat::basis(q, 1), Quat::basis(q, 2), q3}, {"t1", "t2", "t3"});
  auto d3 = discriminant(w);
  CHECK(d3.value == a1 * a2 * a3);
  CHECK(d3.cls == square_class(a1 * a2 * a3));
  CHECK(w.gram()(2, 2) == Scalar::var(t, "t3") * q3);

  CHECK_THROWS_AS(SkewHermForm(q, {Quat::basis(q, 1)}, {"zz"}), PreconditionError);
  CHECK_THROWS_AS(SkewHermForm(q, {Quat::basis(q, 1), Quat::basis(q, 2)}, {"t2", "t1"}), PreconditionError);
  CHECK_THROWS_AS(SkewHermForm(q, {parse_quat(q, "1 + i")}), PreconditionError);
}

TEST_CASE("discriminant versus reduced norms", "[hermitian][property]") {
  std::mt19937_64 rng(4242);
  for (const char* ab : {"-1 -1", "-1 3", "2 5"}) {
    std::string s(ab);
    auto q = parse_quat_algebra(tower("Q"), s.substr(0, s.find(' ')), s.substr(s.find(' ') + 1));
    for (int it = 0; it < 40; ++it) {
      std::size_t n = static_cast<std::size_t>(test::uniform(rng, 1, 5));
      std::vector<Quat> es;
      for (std::size_t k = 0; k < n; ++k) es.push_back(small_pure(rng, q));
      SkewHermForm h(q, es);
      Scalar prod_nrd(q->a().tower(), 1);
      for (auto& e : es) prod_nrd *= e.nrd();
      Scalar sign(q->a().tower(), n % 2 ? -1 : 1);
      CHECK(prod_nrd == sign * discriminant(h).value);
    }
  }
}

TEST_CASE("multiplier classes", "[hermitian]") {
  auto t = tower("Q[a,b]");
  auto q = parse_quat_algebra(t, "a", "b");
  Scalar a = q->a();
  auto one = multiplier_class(Quat::basis(q, 1), Scalar(t, 1));
  CHECK(one.cls == MultClass::plus);
  CHECK(verify(one.cert));
  CHECK(multiplier_class(Quat::basis(q, 1), -a).cls == MultClass::plus);
  CHECK(multiplier_class(Quat::basis(q, 1), q->b()).cls == MultClass::minus);

  auto h = parse_quat_algebra(tower("Q"), "-1", "-1");
  auto m = multiplier_class(Scalar(tower("Q"), -1), Scalar(tower("Q"), -1), h);
  CHECK(m.cls == MultClass::minus);
  CHECK(verify(m.cert));
  CHECK(multiplier_class(Scalar(tower("Q"), -1), Scalar(tower("Q"), 2), h).cls == MultClass::plus);
  CHECK(multiplier_class(Scalar(tower("Q"), -1), Scalar(tower("Q"), 3), h).cls == MultClass::neither);
}

TEST_CASE("diagonal similitudes", "[hermitian]") {
  auto h = parse_quat_algebra(tower("Q"), "-1", "-1");
  auto tq = tower("Q");
  SkewHermForm f(h, {parse_quat(h, "i"), parse_quat(h, "j"), parse_quat(h, "i + k")});
  auto id = build_diagonal_similitude(f, Scalar(tq, 1), {SimType::proper, SimType::proper, SimType::proper});
  REQUIRE(id.verdict == Verdict::yes);
  CHECK(id.similitude->g == QuatMatrix::identity(3, parse_quat(h, "1")));
  auto c = verify_similitude(f, id.similitude->g, Scalar(tq, 1));
  CHECK(c.valid);
  CHECK(c.type == SimType::proper);

  SkewHermForm fi(h, {parse_quat(h, "i")});
  auto imp = build_diagonal_similitude(fi, Scalar(tq, -1), {SimType::improper});
  REQUIRE(imp.verdict == Verdict::yes);
  CHECK(imp.similitude->g(0, 0) == parse_quat(h, "j"));
  CHECK(imp.similitude->type == SimType::improper);
  auto ci = verify_similitude(fi, imp.similitude->g, Scalar(tq, -1));
  CHECK(ci.valid);
  CHECK(ci.type == SimType::improper);
  CHECK(*ci.nrd == Scalar(tq, 1));

  auto bad = build_diagonal_similitude(fi, Scalar(tq, 3), {SimType::proper});
  CHECK(bad.verdict == Verdict::no);
  CHECK_FALSE(bad.similitude);
  CHECK(bad.blocks[0].verdict == Verdict::no);
  CHECK(verify(bad.blocks[0].cert));

  CHECK_FALSE(verify_similitude(fi, QuatMatrix::identity(1, parse_quat(h, "1")), Scalar(tq, 2)).valid);
  CHECK_THROWS_AS(verify_similitude(f, imp.similitude->g, Scalar(tq, 1)), PreconditionError);
}

TEST_CASE("improper similitude with multiplier a1 over Q(i)", "[hermitian]") {
  auto t = tower("Q(i)[a1,a2][t1,t2,t3]");
  Scalar a1 = Scalar::var(t, "a1"), a2 = Scalar::var(t, "a2");
  auto q = make_quat_algebra(a1, a2);
  Quat q3 = Quat::pure(q, (1 - a1) * (1 + a2), 2 * a1, Scalar(t, 2));
  SkewHermForm f(q, {Quat::basis(q, 1), Quat::basis(q, 2), q3}, {"t1", "t2", "t3"});
  Scalar p = (1 - a2) + a1 * (1 + a2);
  std::vector<std::vector<std::vector<Scalar>>> hints{{}, {}, {{2 * a1 / p, -Scalar::imag_unit(t) / p}}};
  auto r = build_diagonal_similitude(f, a1, {SimType::proper, SimType::improper, SimType::proper}, {}, hints);
  REQUIRE(r.verdict == Verdict::yes);
  CHECK(r.similitude->type == SimType::improper);
  auto c = verify_similitude(f, r.similitude->g, a1);
  CHECK(c.valid);
  CHECK(c.type == SimType::improper);
}

TEST_CASE("reduced norm of quaternion matrices", "[hermitian][property]") {
  std::mt19937_64 rng(515);
  for (const char* ab : {"-1 -1", "4 -3", "2 5", "1 7"}) {
    std::string s(ab);
    auto q = parse_quat_algebra(tower("Q"), s.substr(0, s.find(' ')), s.substr(s.find(' ') + 1));
    auto tq = q->a().tower();
    auto rq = [&] {
      auto r = [&] { return Scalar(tq, test::uniform(rng, -4, 4)); };
      return Quat(q, r(), r(), r(), r());
    };
    for (int it = 0; it < 30; ++it) {
      QuatMatrix g1(1, 1, rq());
      CHECK(reduced_norm(g1) == g1(0, 0).nrd());
      QuatMatrix g(2, 2, Quat(q)), k(2, 2, Quat(q));
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
          g(i, j) = rq();
          k(i, j) = rq();
        }
      if (!g(0, 0).nrd().is_zero()) CHECK(reduced_norm(g) == nrd_oracle(g));
      CHECK(reduced_norm(g * k) == reduced_norm(g) * reduced_norm(k));
    }
  }
}

TEST_CASE("random diagonal similitudes pass verification", "[hermitian][property]") {
  std::mt19937_64 rng(90210);
  auto tq = tower("Q");
  std::vector<QuatAlg> algs{parse_quat_algebra(tq, "-1", "-1"), parse_quat_algebra(tq, "-1", "3"),
                            parse_quat_algebra(tq, "2", "5"), parse_quat_algebra(tq, "-2", "-5")};
  for (auto& q : algs) REQUIRE(is_division(q).verdict == Division::division);
  int built = 0, attempts = 0;
  while (built < 200 && attempts < 5000) {
    ++attempts;
    auto& q = algs[static_cast<std::size_t>(test::uniform(rng, 0, 3))];
    std::size_t n = static_cast<std::size_t>(test::uniform(rng, 1, 4));
    std::vector<Quat> es;
    std::vector<SimType> pat;
    for (std::size_t k = 0; k < n; ++k) {
      es.push_back(small_pure(rng, q));
      pat.push_back(test::uniform(rng, 0, 1) ? SimType::improper : SimType::proper);
    }
    long m = 0;
    while (m == 0) m = test::uniform(rng, -12, 12);
    SkewHermForm h(q, es);
    auto r = build_diagonal_similitude(h, Scalar(tq, m), pat);
    REQUIRE(r.verdict != Verdict::unknown);
    if (r.verdict != Verdict::yes) continue;
    ++built;
    auto c = verify_similitude(h, r.similitude->g, Scalar(tq, m));
    CHECK(c.valid);
    std::size_t improper = 0;
    for (auto p : pat) improper += p == SimType::improper;
    CHECK(c.type == (improper % 2 ? SimType::improper : SimType::proper));
    CHECK(c.type == r.similitude->type);
    if (n == 1 && pat[0] == SimType::improper) {
      const Quat& g = r.similitude->g(0, 0);
      CHECK(g * g == Quat::scalar(q, Scalar(tq, m)));
    }
  }
  CHECK(built == 200);
}

TEST_CASE("unitary forms and similitudes", "[hermitian]") {
  auto t = tower("Q[d]");
  auto q0 = parse_quat_algebra(t, "-1", "-1");
  auto D = std::make_shared<const UnitaryDatum>(q0, Scalar::var(t, "d"));
  auto i = parse_quat(q0, "i"), j = parse_quat(q0, "j");
  Scalar one(t, 1);

  auto h = UnitaryHermForm::weighted(D, {one}, {i});
  auto hi = conjugate_unitary_form(h);
  CHECK(hi.entries()[0] == h.entries()[0]);
  CHECK(hi.entries()[1] == D->combine(Quat(q0), -i));
  CHECK(conjugate_unitary_form(hi).entries() == h.entries());
  auto plain = UnitaryHermForm::weighted(D, {one, Scalar(t, 3)}, {});
  CHECK(conjugate_unitary_form(plain).entries() == plain.entries());

  QuatHat e = D->scalar(D->lift(one));
  auto idc = unitary_similitude_check(plain, QuatHatMatrix::identity(2, e), one);
  CHECK(idc.valid);
  CHECK(idc.order2);
  CHECK(*idc.lambda == one);

  // g1 = 1 on <1>, g2 = j on <t i>: mu(g2) = -1 = -mu
  QuatHatMatrix g = QuatHatMatrix::diagonal({e, D->lift(j)}, QuatHat(D->qhat()));
  auto c = unitary_similitude_check(h, g, one);
  CHECK(c.valid);
  CHECK_FALSE(c.order2);

  // g1 = i, g2 = j: g g^iota = -1
  QuatHatMatrix g2 = QuatHatMatrix::diagonal({D->lift(i), D->lift(j)}, QuatHat(D->qhat()));
  auto c2 = unitary_similitude_check(h, g2, one);
  CHECK(c2.valid);
  CHECK(c2.order2);
  CHECK(*c2.lambda == -one);
  CHECK(c2.lambda_pm_mu);

  // central scaling by 1 + t multiplies mu by (1 + t)(1 - t) = 1 - d
  QuatHat l0 = D->scalar(D->lift(one) + D->t());
  QuatHatMatrix gs = g2.map([&](const QuatHat& x) { return l0 * x; });
  CHECK(unitary_similitude_check(h, gs, one - Scalar::var(t, "d")).valid);
  CHECK_FALSE(unitary_similitude_check(h, gs, one).valid);

  CHECK_THROWS_AS(UnitaryHermForm(D, {D->lift(i)}), PreconditionError);
  CHECK_THROWS_AS(UnitaryDatum(q0, Scalar(t, 4)), PreconditionError);
}
