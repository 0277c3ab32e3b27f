#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "loopalg/errors.hpp"
#include "loopalg/scalar.hpp"

using namespace loopalg;

namespace {

Scalar q(int64_t n, int64_t d = 1) { return Scalar::rational(Rat(n, d)); }

std::vector<Scalar> sample50() {
  std::vector<Scalar> s;
  for (int64_t n : {-7, -2, -1, 1, 2, 3, 5}) s.push_back(q(n));
  for (int64_t n : {-3, 1, 2})
    for (int64_t d : {2, 3, 7}) s.push_back(q(n, d));
  Scalar i4 = Scalar::root_of_unity(4);
  for (int64_t a : {-2, 0, 1, 3})
    for (int64_t b : {-1, 1, 2}) s.push_back(q(a) + q(b) * i4);
  for (int64_t k : {1, 2, 3}) s.push_back(Scalar::root_of_unity(4, k));
  s.push_back(q(1, 2) + q(-5, 3) * i4);
  s.push_back(q(0) + q(7) * i4);
  while (s.size() < 50) s.push_back(q(static_cast<int64_t>(s.size())));
  s.resize(50);
  return s;
}

}  // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == std::vector<Int>{-1, 1});
  CHECK(cyclotomic_polynomial(2) == std::vector<Int>{1, 1});
  CHECK(cyclotomic_polynomial(3) == std::vector<Int>{1, 1, 1});
  CHECK(cyclotomic_polynomial(4) == std::vector<Int>{1, 0, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<Int>{1, -1, 1});
  CHECK(cyclotomic_polynomial(8) == std::vector<Int>{1, 0, 0, 0, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<Int>{1, 0, -1, 0, 1});
  CHECK(euler_phi(24) == 8);
}

TEST_CASE("basic identities") {
  Scalar i = Scalar::root_of_unity(4);
  CHECK(i * i == q(-1));
  CHECK(i.pow(4) == q(1));
  CHECK((q(1) + i) * (q(1) - i) == q(2));
  CHECK(i.inv() == -i);
  CHECK(i.inv() == i.pow(3));

  // zeta_N^N = 1 for a spread of conductors.
  for (int64_t n : {1, 2, 3, 4, 5, 6, 8, 12, 24})
    CHECK(Scalar::root_of_unity(n).pow(n) == q(1));

  // Reduction is idempotent: constructing from an unreduced power vector
  // equals the reduced canonical form.
  Scalar z3 = Scalar::root_of_unity(3);
  Scalar z3sq_plus = Scalar::cyclotomic(3, {Rat(0), Rat(0), Rat(1)});  // zeta^2
  CHECK(z3sq_plus == z3 * z3);
  CHECK(z3 * z3 * z3 == q(1));
  // zeta_3^2 = -1 - zeta_3
  CHECK(z3 * z3 == q(-1) - z3);
}

TEST_CASE("cross-conductor equality") {
  Scalar z6 = Scalar::root_of_unity(6);
  Scalar z3 = Scalar::root_of_unity(3);
  CHECK(z6 == -(z3 * z3));
  CHECK(z6.pow(3) == q(-1));
  Scalar z8 = Scalar::root_of_unity(8);
  CHECK(z8 * z8 == Scalar::root_of_unity(4));
  CHECK(Scalar::root_of_unity(4).promoted(8) == z8 * z8);
  // Demotion: zeta_4^2 is rational.
  CHECK((Scalar::root_of_unity(4) * Scalar::root_of_unity(4)).is_rational());
}

TEST_CASE("field axioms on the fixed 50-element sample") {
  auto s = sample50();
  for (size_t i = 0; i < s.size(); i += 7)
    for (size_t j = 0; j < s.size(); j += 5)
      for (size_t k = 0; k < s.size(); k += 11) {
        const Scalar &a = s[i], &b = s[j], &c = s[k];
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
      }
  for (const Scalar& a : s)
    for (const Scalar& b : s) {
      CHECK((a + b) - b == a);
      if (!b.is_zero()) CHECK((a * b) / b == a);
    }
  for (const Scalar& a : s)
    if (!a.is_zero()) CHECK(a * a.inv() == q(1));
}

TEST_CASE("root of unity detection") {
  CHECK(Scalar::root_of_unity(4).root_of_unity_order() == 4);
  CHECK(q(1).root_of_unity_order() == 1);
  CHECK(q(-1).root_of_unity_order() == 2);
  CHECK(!q(2).root_of_unity_order());
  CHECK(!(q(1) + Scalar::root_of_unity(4)).root_of_unity_order());
  CHECK((-Scalar::root_of_unity(3)).root_of_unity_order() == 6);
  CHECK(Scalar::root_of_unity(8, 2).root_of_unity_order() == 4);
}

TEST_CASE("division by zero throws") {
  CHECK_THROWS_AS(q(1) / q(0), Error);
  CHECK_THROWS_AS(q(0).inv(), Error);
}
