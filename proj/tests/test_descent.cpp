#include <catch_amalgamated.hpp>

#include <random>

#include "outaut/descent.hpp"
#include "support.hpp"

using namespace outaut;

namespace {

std::shared_ptr<const UnitaryDatum> datum(long a, long b, long d) {
  auto t = FieldTower::parse("Q");
  auto q0 = make_quat_algebra(Scalar(t, a), Scalar(t, b));
  return std::make_shared<const UnitaryDatum>(q0, Scalar(t, d));
}

Scalar rat(std::mt19937_64& rng, const TowerPtr& t, long h) { return Scalar(t, Coeff(test::random_rational(rng, h))); }

// f + p t with f in F, p pure in Q0, not both zero
QuatHat random_entry(std::mt19937_64& rng, const UnitaryDatum& D) {
  const auto& t = D.tower();
  for (;;) {
    Quat f = Quat::scalar(D.q0(), rat(rng, t, 6));
    Quat p = Quat::pure(D.q0(), rat(rng, t, 6), rat(rng, t, 6), rat(rng, t, 6));
    if (!f.is_zero() || !p.is_zero()) return D.combine(f, p);
  }
}

// Independent replay of the descent postconditions in quaternion arithmetic.
void replay(const UnitaryHermForm& h, const DescentResult& r) {
  const auto& D = *h.datum();
  const QuatHat& q = r.q;
  CHECK(D.theta(q) == -q);
  QuatHat qi = q * D.iota(q);
  CHECK(qi.is_scalar());
  CHECK(qi[0].y().is_zero());
  QuatHat qinv = q.inverse();
  for (std::size_t i = 0; i < h.rank(); ++i) {
    QuatHat z = q * h.entries()[i];
    CHECK(q * D.iota(z) * qinv == z);
    CHECK(z[0].is_zero());
  }
  for (auto& b : r.basis) CHECK(q * D.iota(b) * qinv == b);
  CHECK((r.basis[1] * r.basis[2] + r.basis[2] * r.basis[1]).is_zero());
}

}  // namespace

TEST_CASE("theta-perp", "[descent]") {
  auto D = datum(-1, -1, 5);
  auto one = D->scalar(D->lift(Scalar(D->tower(), 1)));
  auto p = theta_perp({one}, *D);
  REQUIRE(p.size() == 3);
  for (auto& s : p) CHECK(s[0].is_zero());
  auto ti = D->combine(Quat(D->q0()), Quat::basis(D->q0(), 1));
  CHECK(theta_perp({ti}, *D).size() == 3);
  auto tj = D->combine(Quat(D->q0()), Quat::basis(D->q0(), 2));
  auto tk = D->combine(Quat(D->q0()), Quat::basis(D->q0(), 3));
  CHECK(theta_perp({one, ti, tj}, *D).size() == 1);
  CHECK(theta_perp({one, ti, tj, tk}, *D).empty());
}

TEST_CASE("descent of pure t-multiples", "[descent]") {
  auto D = datum(-1, -1, 5);
  Quat z(D->q0());
  auto h = UnitaryHermForm::weighted(D, {}, {Quat::basis(D->q0(), 1), Quat::basis(D->q0(), 2)});
  auto r = descend(h);
  CHECK(r.checks.all());
  replay(h, r);
  // q is a scalar multiple of t^{-1}
  CHECK(r.q.is_scalar());
  CHECK(r.q[0].x().is_zero());
  for (auto& e : r.hprime->entries()) CHECK(e.is_pure());
  CHECK_THROWS_AS(descend(UnitaryHermForm(D, {h.entries()[0], h.entries()[0], h.entries()[0], h.entries()[0]})),
                  PreconditionError);
}

TEST_CASE("descent of random rank <= 3 forms", "[descent][property]") {
  std::mt19937_64 rng(20261017);
  for (int it = 0; it < 60; ++it) {
    long d = std::array<long, 3>{2, 3, 5}[static_cast<std::size_t>(it % 3)];
    auto D = datum(-1, -1, d);
    std::size_t n = static_cast<std::size_t>(test::uniform(rng, 1, 3));
    std::vector<QuatHat> es;
    for (std::size_t i = 0; i < n; ++i) es.push_back(random_entry(rng, *D));
    UnitaryHermForm h(D, es);
    auto r = descend(h);
    CHECK(r.checks.all());
    replay(h, r);
  }
}

TEST_CASE("descent over a function field", "[descent]") {
  auto t = FieldTower::parse("Q[a,b,f,u,v,w]");
  auto q0 = make_quat_algebra(Scalar::var(t, "a"), Scalar::var(t, "b"));
  auto D = std::make_shared<const UnitaryDatum>(q0, Scalar(t, 3));
  Quat f = Quat::scalar(q0, Scalar::var(t, "f"));
  Quat p = Quat::pure(q0, Scalar::var(t, "u"), Scalar::var(t, "v"), Scalar::var(t, "w"));
  UnitaryHermForm h(D, {D->combine(f, p)});
  auto r = descend(h);
  CHECK(r.checks.all());
  replay(h, r);
}

TEST_CASE("split unitary descent", "[descent]") {
  auto t = FieldTower::parse("Q");
  auto dptr = std::make_shared<const Scalar>(Scalar(t, 3));
  auto K = [&](long x, long y) { return KScalar(dptr, Scalar(t, x), Scalar(t, y)); };
  Matrix<KScalar> id = Matrix<KScalar>::identity(3, K(1, 0));
  auto r = split_unitary_descent(id);
  CHECK(r.form.strings() == std::vector<std::string>{"1", "1", "1"});

  Matrix<KScalar> h(2, 2, K(0, 0));
  h(0, 0) = K(1, 0);
  h(0, 1) = K(0, 1);
  h(1, 0) = K(0, -1);
  h(1, 1) = K(2, 0);
  auto s = split_unitary_descent(h);
  CHECK(s.congruence_verified);
  // by hand: e2 - sqrt3 e1 gives 2 + 3 + 3 - 3 = 5
  CHECK(s.form.strings() == std::vector<std::string>{"1", "5"});
  CHECK(iota_adjoint(s.change) * h * s.change == Matrix<KScalar>::diagonal({K(1, 0), K(5, 0)}, K(0, 0)));

  Matrix<KScalar> hyp(2, 2, K(0, 0));
  hyp(0, 1) = K(1, 1);
  hyp(1, 0) = K(1, -1);
  auto y = split_unitary_descent(hyp);
  CHECK(y.form.strings().size() == 2);

  Matrix<KScalar> deg(2, 2, K(0, 0));
  CHECK_THROWS_AS(split_unitary_descent(deg), PreconditionError);
  Matrix<KScalar> bad = id;
  bad(0, 1) = K(0, 1);
  CHECK_THROWS_AS(split_unitary_descent(bad), PreconditionError);
}

TEST_CASE("semilinear automorphisms", "[descent]") {
  auto D = datum(-1, -1, 2);
  Scalar one(D->tower(), 1);
  auto Id = [&](std::size_t n, const QuatHat& x) { return QuatHatMatrix::identity(n, x); };

  // identity on a form with entries in F: phi is entrywise iota, order 2
  UnitaryHermForm h1 = UnitaryHermForm::weighted(D, {one, Scalar(D->tower(), 3)}, {});
  auto a = build_semilinear_automorphism(h1, Id(2, D->scalar(D->lift(one))));
  CHECK(a.order2);
  CHECK(a.squares_to_identity);

  // the descent's Id (x) iota is g = q Id
  auto h = UnitaryHermForm::weighted(D, {one}, {Quat::basis(D->q0(), 1) + Quat::basis(D->q0(), 3)});
  auto r = descend(h);
  auto b = build_semilinear_automorphism(h, Id(2, r.q));
  CHECK(b.order2);
  CHECK(b.commutes);

  // search for a unit g in Q0 with g g^iota outside F on <1>
  UnitaryHermForm u(D, {D->scalar(D->lift(one))});
  std::optional<SemilinearAutomorphism> found;
  for (long x = 0; x <= 2 && !found; ++x)
    for (long y = 0; y <= 2 && !found; ++y) {
      Quat g(D->q0(), Scalar(D->tower(), x), Scalar(D->tower(), y), Scalar(D->tower()), Scalar(D->tower()));
      if (g.is_zero()) continue;
      QuatHat gh = D->lift(g);
      QuatHat ggi = gh * D->iota(gh);
      if (ggi.is_scalar()) continue;
      found = build_semilinear_automorphism(u, Id(1, gh));
    }
  REQUIRE(found);
  CHECK_FALSE(found->order2);
  REQUIRE(found->witness);
  CHECK(found->apply(found->apply(*found->witness)) != *found->witness);

  QuatHat bad = D->combine(Quat::basis(D->q0(), 1), Quat::basis(D->q0(), 2));
  CHECK_THROWS_AS(build_semilinear_automorphism(u, Id(1, bad)), PreconditionError);
}
