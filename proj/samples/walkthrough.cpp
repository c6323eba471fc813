// Small tour of the library: a division test, a descent, and the three families.

#include <iostream>

#include "outaut/corpus.hpp"

using namespace outaut;

int main() {
  auto t = FieldTower::parse("Q");

  // (-1, -1) over Q is a division algebra; (1, 7) splits.
  for (auto [a, b] : {std::pair{"-1", "-1"}, std::pair{"1", "7"}}) {
    auto Q = parse_quat_algebra(t, a, b);
    auto r = is_division(Q);
    std::cout << Q->str() << ": " << to_string(r.verdict) << (verify(r.cert) ? " (certified)" : "") << "\n";
  }

  // Descend a rank 2 hermitian form over (-1, -1) (x) Q(sqrt 5) to a skew-hermitian form over Q.
  auto Q0 = parse_quat_algebra(t, "-1", "-1");
  auto D = std::make_shared<const UnitaryDatum>(Q0, parse_scalar(t, "5"));
  UnitaryHermForm h(D, {D->combine(parse_quat(Q0, "1"), parse_quat(Q0, "i")),
                        D->combine(parse_quat(Q0, "2"), parse_quat(Q0, "j+k"))});
  auto d = descend(h);
  std::cout << "descent: " << d.to_json(*D).dump() << "\n";

  auto entry = [](const OutEntry& e) { return to_string(e.status) + (e.paper_asserted ? " (asserted)" : ""); };
  auto show = [&](const std::string& name, const OutReport& r) {
    std::cout << name << ": Out1 " << entry(r.out1) << ", Out2 " << entry(r.out2) << ", Out3 " << entry(r.out3) << "\n";
  };
  show("even, n = 4", d_even_example(4).report);
  show("odd over Q(i)", d_odd_example(Base::GaussianRationals).report);
  show("odd over Q", d_odd_example(Base::Rationals).report);
  show("unitary over Q", verify_unitary_example(1, Base::Rationals).report);
}
