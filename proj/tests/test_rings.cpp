#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "arithfrac/error.hpp"
#include "arithfrac/rings.hpp"

using namespace arithfrac;

namespace {

const RingSpec kZ = RingSpec::integers();
const RingSpec kGauss = RingSpec::quadratic(-1);
const RingSpec kSqrtM2 = RingSpec::quadratic(-2);

RingElement z(long long x) { return RingElement(kZ, x); }

}  // namespace

TEST_CASE("ring validation") {
  CHECK_THROWS_AS(RingSpec::quadratic(0), InputError);
  CHECK_THROWS_AS(RingSpec::quadratic(3), InputError);
  CHECK_THROWS_AS(RingSpec::quadratic(-4), InputError);
  CHECK_THROWS_AS(RingSpec::quadratic(-12), InputError);
  CHECK_NOTHROW(RingSpec::quadratic(-3));
  CHECK_NOTHROW(RingSpec::quadratic(-30));
  CHECK(kGauss.d() == -1);
  CHECK(kZ.is_integers());
}

TEST_CASE("arithmetic") {
  CHECK(z(7) + z(-3) == z(4));
  RingElement one_plus_i(kGauss, 1, 1);
  CHECK(one_plus_i * one_plus_i == RingElement(kGauss, 0, 2));
  CHECK(RingElement(kSqrtM2, 1, 2) + RingElement(kSqrtM2, 0, -2) == RingElement(kSqrtM2, 1, 0));
  CHECK(RingElement(kSqrtM2, 0, 1) * RingElement(kSqrtM2, 0, 1) == RingElement(kSqrtM2, -2, 0));
  CHECK(-RingElement(kGauss, 2, -3) == RingElement(kGauss, -2, 3));
  CHECK(RingElement(kGauss, 5, 1) - RingElement(kGauss, 2, 4) == RingElement(kGauss, 3, -3));
}

TEST_CASE("mixed rings are rejected") {
  CHECK_THROWS(z(1) + RingElement(kGauss, 1));
  CHECK_THROWS(RingElement(kGauss, 1) * RingElement(kSqrtM2, 1));
  CHECK_THROWS_AS(RingElement(kZ, 1, 1), InputError);
}

TEST_CASE("norm") {
  CHECK(z(-7).norm() == 7);
  CHECK(RingElement(kGauss, 3, 4).norm() == 25);
  CHECK(RingElement(kSqrtM2, 1, 2).norm() == 9);
  CHECK(RingElement::zero(kGauss).norm() == 0);
}

TEST_CASE("norm is multiplicative") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> coord(-100000, 100000);
  for (const auto& ring : {kZ, kGauss, kSqrtM2, RingSpec::quadratic(-7)}) {
    for (int trial = 0; trial < 1000; ++trial) {
      const RingElement x(ring, coord(rng), ring.is_integers() ? 0 : coord(rng));
      const RingElement y(ring, coord(rng), ring.is_integers() ? 0 : coord(rng));
      REQUIRE((x * y).norm() == x.norm() * y.norm());
    }
  }
}

TEST_CASE("division") {
  CHECK(try_divide(z(15), z(5)) == z(3));
  CHECK_FALSE(try_divide(z(7), z(2)).has_value());
  CHECK(try_divide(z(-12), z(4)) == z(-3));
  CHECK(try_divide(RingElement(kGauss, 5, 5), RingElement(kGauss, 1, 2)) == RingElement(kGauss, 3, -1));
  CHECK((RingElement(kGauss, 3, -1) * RingElement(kGauss, 1, 2)) == RingElement(kGauss, 5, 5));
  CHECK_FALSE(try_divide(RingElement(kGauss, 1), RingElement(kGauss, 1, 1)).has_value());
  CHECK_THROWS_AS(try_divide(z(3), z(0)), InputError);
}

TEST_CASE("division round trip") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long long> coord(-5000, 5000);
  for (const auto& ring : {kZ, kGauss, kSqrtM2}) {
    for (int trial = 0; trial < 1000; ++trial) {
      const RingElement q(ring, coord(rng), ring.is_integers() ? 0 : coord(rng));
      RingElement y(ring, coord(rng), ring.is_integers() ? 0 : coord(rng));
      if (y.is_zero()) y = RingElement::one(ring);
      const auto back = try_divide(q * y, y);
      REQUIRE(back.has_value());
      REQUIRE(*back == q);
      const RingElement x = q * y + RingElement::one(ring);
      if (const auto r = try_divide(x, y)) REQUIRE(*r * y == x);
    }
  }
}

TEST_CASE("enumeration by norm") {
  const auto z3 = elements_of_norm_at_most(kZ, 3);
  REQUIRE(z3.size() == 7);
  CHECK(z3.front() == z(-3));
  CHECK(z3.back() == z(3));

  const auto g2 = elements_of_norm_at_most(kGauss, 2);
  CHECK(g2.size() == 9);
  std::set<std::pair<int, int>> expected;
  for (int u = -1; u <= 1; ++u)
    for (int v = -1; v <= 1; ++v) expected.insert({u, v});
  std::set<std::pair<int, int>> got;
  for (const auto& e : g2) got.insert({static_cast<int>(e.u()), static_cast<int>(e.v())});
  CHECK(got == expected);

  const auto g0 = elements_of_norm_at_most(kGauss, 0);
  REQUIRE(g0.size() == 1);
  CHECK(g0.front().is_zero());
  CHECK(elements_of_norm_at_most(kZ, -1).empty());
}

TEST_CASE("enumeration agrees with a lattice scan") {
  for (const auto& ring : {kGauss, kSqrtM2, RingSpec::quadratic(-5)}) {
    for (int bound : {0, 1, 5, 17, 100, 257}) {
      std::size_t scan = 0;
      const long long a = -ring.d();
      for (long long u = -bound; u <= bound; ++u)
        for (long long v = -bound; v <= bound; ++v)
          if (u * u + a * v * v <= bound) ++scan;
      const auto listed = elements_of_norm_at_most(ring, bound);
      CHECK(listed.size() == scan);
      CHECK(std::is_sorted(listed.begin(), listed.end()));
      for (const auto& e : listed) CHECK(e.norm() <= bound);
    }
  }
}

TEST_CASE("canonical order and printing") {
  CHECK(z(-2) < z(1));
  CHECK(RingElement(kGauss, 0, 5) < RingElement(kGauss, 1, -5));
  CHECK(RingElement(kGauss, 1, -1) < RingElement(kGauss, 1, 0));
  CHECK(z(-12).to_string() == "-12");
  CHECK(RingElement(kGauss, 3, -1).to_string() == "(3,-1)");
  CHECK(RingElementHash{}(RingElement(kGauss, 4, 2)) == RingElementHash{}(RingElement(kGauss, 4, 2)));
}

TEST_CASE("large operands stay exact") {
  const Integer big = parse_integer("123456789012345678901234567890");
  const RingElement x(kGauss, big, big + 1);
  const RingElement y(kGauss, big - 7, 3);
  CHECK((x * y).norm() == x.norm() * y.norm());
  CHECK(try_divide(x * y, y) == x);
}
