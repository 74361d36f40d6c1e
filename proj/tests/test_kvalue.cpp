#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cext/kvalue.hpp"
#include "cext/rational.hpp"

using namespace cext;

TEST_CASE("torsion residues are minimal absolute representatives") {
  KDesc K(0, {4});
  CHECK(KValue(K, {}, {3}).torsion_part[0] == -1);
  CHECK(KValue(K, {}, {2}).torsion_part[0] == 2);
  CHECK(KValue(K, {}, {-2}).torsion_part[0] == 2);
  CHECK(KValue(K, {}, {5}).torsion_part[0] == 1);

  KDesc K5(0, {5});
  CHECK(KValue(K5, {}, {3}).torsion_part[0] == -2);
  CHECK(KValue(K5, {}, {3}).norm() == 2);
}

TEST_CASE("norm is subadditive and vanishes only at zero") {
  KDesc K(2, {3, 4});
  std::mt19937_64 rng(42);
  auto rnd = [&]() {
    return KValue(K, {(long long)(rng() % 11) - 5, (long long)(rng() % 11) - 5},
                  {(long long)(rng() % 7), (long long)(rng() % 9)});
  };
  CHECK(KValue::zero(K).norm() == 0);
  for (int t = 0; t < 300; ++t) {
    KValue a = rnd(), b = rnd();
    CHECK(a.add(K, b).norm() <= a.norm() + b.norm());
    CHECK(a.sub(K, a).is_zero());
    if (a.norm() == 0) CHECK(a.is_zero());
  }
}

TEST_CASE("unit elements") {
  KDesc K(1, {2});
  CHECK(KValue::unit(K, 0).free_part[0] == 1);
  CHECK(KValue::unit(K, 1).torsion_part[0] == 1);
  CHECK(KValue::unit(K, 1).add(K, KValue::unit(K, 1)).is_zero());
}

TEST_CASE("rational arithmetic is exact") {
  Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK((a - b) == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(Rational(-7, 2).str() == "-7/2");
  CHECK(Rational(7, 2).round() == 4);
  CHECK(Rational(-7, 2).round() == -4);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(5, -10) == Rational(-1, 2));
  CHECK_THROWS_AS(Rational(1, 0), input_error);
}
