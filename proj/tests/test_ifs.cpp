#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "arithfrac/error.hpp"
#include "arithfrac/ifs.hpp"

using namespace arithfrac;

namespace {

const RingSpec kZ = RingSpec::integers();
const RingSpec kGauss = RingSpec::quadratic(-1);

RingElement z(long long x) { return RingElement(kZ, x); }
RingElement g(long long u, long long v) { return RingElement(kGauss, u, v); }

FractalSpec int_digits(long long base, std::vector<std::int64_t> digits) {
  return FractalSpec::integer_digits(base, digits);
}

FractalSpec gauss_digits(RingElement base, std::vector<RingElement> digits) {
  return FractalSpec::digits(base, digits);
}

// Nonnegative integers up to x whose base-b digits all lie in `digits`.
std::vector<long long> digit_filter(long long x, long long base, const std::set<long long>& digits) {
  std::vector<long long> out;
  for (long long n = 0; n <= x; ++n) {
    bool ok = true;
    for (long long m = n; m > 0 && ok; m /= base) ok = digits.count(m % base) > 0;
    if (ok && (n > 0 || digits.count(0))) out.push_back(n);
  }
  return out;
}

std::vector<long long> as_ints(const FractalSample& s) {
  std::vector<long long> out;
  for (const auto& e : s.elements) out.push_back(static_cast<long long>(e.u()));
  return out;
}

}  // namespace

TEST_CASE("map validation") {
  CHECK_THROWS_AS(SimilarityMap::affine(z(1), z(3)), InputError);
  CHECK_THROWS_AS(SimilarityMap::affine(z(-1), z(0)), InputError);
  CHECK_THROWS_AS(SimilarityMap::affine(g(0, 1), g(0, 0)), InputError);
  CHECK_THROWS_AS(SimilarityMap(kZ, {z(3)}), InputError);
  CHECK_THROWS_AS(SimilarityMap(kZ, {z(1), z(2), z(0)}), InputError);
  CHECK_THROWS_AS(SimilarityMap(kGauss, {g(0, 0), g(0, 0), g(1, 0)}), InputError);
  CHECK_NOTHROW(SimilarityMap(kZ, {z(0), z(0), z(1)}));
  CHECK_NOTHROW(SimilarityMap::affine(z(-2), z(5)));
  CHECK_THROWS_AS(FractalSpec(kZ, {}, {z(0)}), InputError);
  CHECK_THROWS_AS(FractalSpec(kZ, {SimilarityMap::affine(z(2), z(0))}, {}), InputError);
  CHECK_THROWS_AS(FractalSpec(kZ, {SimilarityMap::affine(z(2), z(0))}, {g(0, 0)}), InputError);
}

TEST_CASE("map evaluation") {
  const SimilarityMap cubic(kZ, {z(1), z(-2), z(0), z(3)});
  CHECK(cubic(z(2)) == z(21));
  CHECK(cubic.degree() == 3);
  const auto aff = SimilarityMap::affine(g(1, 1), g(0, 1));
  CHECK(aff(g(2, 3)) == g(-1, 6));
}

TEST_CASE("generate digit set {0,3,7}") {
  const auto spec = int_digits(10, {0, 3, 7});
  const auto s = generate(spec, 100);
  CHECK(as_ints(s) == std::vector<long long>{0, 3, 7, 30, 33, 37, 70, 73, 77});
  CHECK(s.exact);
  CHECK(as_ints(generate(spec, 100000)) == digit_filter(100000, 10, {0, 3, 7}));
}

TEST_CASE("generate fixed point only") {
  const auto spec = int_digits(2, {0});
  const auto s = generate(spec, 1000000);
  REQUIRE(s.elements.size() == 1);
  CHECK(s.elements[0] == z(0));
}

TEST_CASE("generate Gaussian binary") {
  const auto spec = gauss_digits(g(2, 0), {g(0, 0), g(1, 0)});
  const auto s = generate(spec, 20);
  REQUIRE(s.elements.size() == 5);
  for (int k = 0; k <= 4; ++k) CHECK(s.elements[k] == g(k, 0));
}

TEST_CASE("generate rejects a window below the base points") {
  const FractalSpec spec(kZ, {SimilarityMap::affine(z(2), z(0))}, {z(5)});
  CHECK_THROWS_AS(generate(spec, 4), InputError);
}

TEST_CASE("generate agrees with digit filters across bases") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const long long base = 2 + static_cast<long long>(rng() % 15);
    std::set<long long> digits{0};
    for (long long d = 1; d < base; ++d)
      if (rng() % 3 == 0) digits.insert(d);
    std::vector<std::int64_t> dv(digits.begin(), digits.end());
    const auto spec = int_digits(base, dv);
    CHECK(as_ints(generate(spec, 20000)) == digit_filter(20000, base, digits));
  }
}

TEST_CASE("fixed-width and wide generation agree") {
  std::vector<FractalSpec> specs;
  specs.push_back(int_digits(10, {0, 3, 7}));
  specs.push_back(int_digits(3, {0, 2}));
  specs.push_back(FractalSpec(kZ, {SimilarityMap::affine(z(-2), z(0)), SimilarityMap::affine(z(-2), z(1))}, {z(0)}));
  specs.push_back(FractalSpec(kZ, {SimilarityMap::affine(z(3), z(-2)), SimilarityMap::affine(z(3), z(5))}, {z(1)}));
  specs.push_back(gauss_digits(g(1, 1), {g(0, 0), g(1, 0)}));
  specs.push_back(gauss_digits(g(2, 1), {g(0, 0), g(1, 0), g(2, 0)}));
  specs.push_back(gauss_digits(g(2, 0), {g(0, 0), g(1, 0), g(0, 1)}));
  specs.push_back(FractalSpec::digits(RingElement(RingSpec::quadratic(-2), 1, 1),
                                      std::vector<RingElement>{RingElement(RingSpec::quadratic(-2), 0),
                                                               RingElement(RingSpec::quadratic(-2), 1)}));
  for (const auto& spec : specs) {
    for (long long window : {10LL, 1000LL, 100000LL}) {
      const auto fast = generate(spec, window);
      const auto wide = detail::generate_wide(spec, window);
      CHECK(fast.elements == wide.elements);
      CHECK(fast.exact == wide.exact);
    }
  }
}

TEST_CASE("wide windows beyond 64 bits") {
  const auto spec = int_digits(1000000, {0, 1});
  const Integer window = parse_integer("1000000000000000000000000000000");
  const auto s = generate(spec, window);
  CHECK(s.elements.size() == 33);
  Integer power = 1;
  for (int k = 0; k < 4; ++k) power *= 1000000;
  CHECK(s.contains(RingElement(kZ, power + 1)));
  CHECK(s.contains(RingElement(kZ, window)));
  CHECK_FALSE(s.contains(RingElement(kZ, 2)));

  const FractalSpec squares(kZ, {SimilarityMap(kZ, {z(0), z(0), z(1)})}, {z(2)});
  const Integer two_256 = Integer(1) << 256;
  const auto sq = generate(squares, two_256);
  REQUIRE(sq.elements.size() == 9);
  CHECK(sq.elements.back().u() == two_256);
}

TEST_CASE("samples are closed under the maps within the window") {
  std::vector<FractalSpec> specs{int_digits(10, {0, 3, 7}), int_digits(4, {1, 3}),
                                 gauss_digits(g(2, 1), {g(0, 0), g(1, 0), g(2, 0)}),
                                 FractalSpec(kZ, {SimilarityMap(kZ, {z(1), z(0), z(1)})}, {z(0)})};
  for (const auto& spec : specs) {
    const auto s = generate(spec, 50000);
    CHECK(std::is_sorted(s.elements.begin(), s.elements.end()));
    for (const auto& e : s.elements) {
      CHECK(e.norm() <= 50000);
      for (const auto& m : spec.maps()) {
        const auto y = m(e);
        if (y.norm() <= 50000) CHECK(s.contains(y));
      }
    }
  }
}

TEST_CASE("escape norm and image window bounds") {
  CHECK(escape_norm(int_digits(10, {0, 3, 7})) == 1);
  CHECK(image_window(int_digits(10, {0, 3, 7}), 1000) == 9993);
  CHECK(escape_norm(FractalSpec(kZ, {SimilarityMap(kZ, {z(-3), z(0), z(1)})}, {z(3)})) == 4);

  // Any preimage of a point inside the image window lies inside the window.
  std::vector<FractalSpec> specs{gauss_digits(g(1, 1), {g(0, 0), g(1, 0)}),
                                 gauss_digits(g(2, 1), {g(0, 0), g(1, 0), g(2, 0)}),
                                 FractalSpec(kGauss, {SimilarityMap::affine(g(3, 0), g(-4, 2))}, {g(2, -1)}),
                                 FractalSpec(kZ, {SimilarityMap(kZ, {z(-3), z(2), z(1)})}, {z(1)})};
  for (const auto& spec : specs) {
    for (long long window : {5LL, 40LL, 300LL}) {
      const Integer y = image_window(spec, window);
      const auto ball = elements_of_norm_at_most(spec.ring(), Integer(window) * 20);
      for (const auto& x : ball) {
        for (const auto& m : spec.maps()) {
          if (m(x).norm() <= y) CHECK(x.norm() <= window);
        }
      }
      // Outside the escape ball every map strictly increases the norm.
      const Integer r = escape_norm(spec);
      for (const auto& x : ball) {
        if (x.norm() <= r) continue;
        for (const auto& m : spec.maps()) CHECK(m(x).norm() > x.norm());
      }
    }
  }
}

TEST_CASE("verify digit set {0,3,7}") {
  const auto r = verify_self_similar(int_digits(10, {0, 3, 7}), 1000000);
  CHECK(r.status == VerificationStatus::verified);
  CHECK(r.overlaps.empty());
  CHECK(r.gaps.empty());
  CHECK(r.uncovered_seeds.empty());
  CHECK(r.safe_window == 1000000);
  CHECK(r.checked == 729);
  REQUIRE(r.density_sum.has_value());
  REQUIRE(r.density_sum->exact.has_value());
  CHECK(*r.density_sum->exact == Rational(3, 10));
}

TEST_CASE("verify overlapping maps") {
  const FractalSpec spec(kZ, {SimilarityMap::affine(z(2), z(0)), SimilarityMap::affine(z(3), z(0))}, {z(0)});
  const auto r = verify_self_similar(spec, 100);
  CHECK(r.status == VerificationStatus::overlap);
  REQUIRE(r.overlaps.size() == 1);
  CHECK(r.overlaps[0].element == z(0));
  CHECK(r.overlaps[0].first_map == 1);
  CHECK(r.overlaps[0].second_map == 2);
}

TEST_CASE("verify parity partition") {
  const auto r = verify_self_similar(int_digits(2, {0, 1}), 1000000);
  CHECK(r.status == VerificationStatus::verified);
  CHECK(r.checked == 1000001);
  CHECK(*r.density_sum->exact == Rational(1));
}

TEST_CASE("verify reports gaps and uncovered seeds") {
  // 3x+1 from 0 and 1: 1 is in the image of 0, but 0 is fixed by no map.
  const FractalSpec seeded(kZ, {SimilarityMap::affine(z(3), z(1))}, {z(0)});
  const auto r = verify_self_similar(seeded, 1000);
  CHECK(r.status == VerificationStatus::seed_not_covered);
  REQUIRE(r.uncovered_seeds.size() == 1);
  CHECK(r.uncovered_seeds[0] == z(0));
  CHECK(r.seed_only.size() == 1);

  // Two seeds under 2x: seed 1 is covered by nothing, 0 is fixed.
  const FractalSpec two(kZ, {SimilarityMap::affine(z(2), z(0))}, {z(0), z(1)});
  const auto r2 = verify_self_similar(two, 1000);
  CHECK(r2.status == VerificationStatus::seed_not_covered);
  CHECK(r2.uncovered_seeds == std::vector<RingElement>{z(1)});
}

TEST_CASE("windows too small are rejected") {
  const FractalSpec spec(kZ, {SimilarityMap::affine(z(2), z(7))}, {z(-7)});
  CHECK_THROWS_AS(verify_self_similar(spec, 7), InputError);
}

TEST_CASE("verification agrees with a brute-force partition check") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 40; ++trial) {
    const long long base = 2 + static_cast<long long>(rng() % 6);
    std::vector<SimilarityMap> maps;
    const int count = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < count; ++i) {
      const long long a = (rng() % 2 ? 1 : -1) * base;
      maps.push_back(SimilarityMap::affine(z(a), z(static_cast<long long>(rng() % 9) - 4)));
    }
    const FractalSpec spec(kZ, maps, {z(0)});
    const long long window = 3000;
    const auto r = verify_self_similar(spec, window);
    const auto s = generate(spec, window);
    const long long y = static_cast<long long>(r.safe_window);
    std::map<long long, std::set<std::size_t>> hits;
    for (const auto& x : s.elements)
      for (std::size_t i = 0; i < maps.size(); ++i) hits[static_cast<long long>(maps[i](x).u())].insert(i);
    bool overlap = false, uncovered = false;
    for (const auto& e : s.elements) {
      if (e.norm() > y) continue;
      const auto it = hits.find(static_cast<long long>(e.u()));
      const std::size_t n = it == hits.end() ? 0 : it->second.size();
      if (n > 1) overlap = true;
      if (n == 0) uncovered = true;
    }
    CHECK((r.status == VerificationStatus::overlap) == overlap);
    CHECK((r.status == VerificationStatus::verified) == (!overlap && !uncovered));
  }
}

TEST_CASE("membership") {
  const auto spec = int_digits(10, {0, 3, 7});
  CHECK(member(spec, z(3037)) == Membership::yes);
  CHECK(member(spec, z(12)) == Membership::no);
  CHECK(member(int_digits(2, {0, 1}), z(5)) == Membership::yes);
  CHECK(member(int_digits(2, {0, 1}), z(-5)) == Membership::no);
  const Integer huge = parse_integer("370370370370370370370370370370303");
  CHECK(member(spec, RingElement(kZ, huge)) == Membership::yes);
  CHECK(member(spec, RingElement(kZ, huge + 1)) == Membership::no);
  CHECK(member(spec, z(3037), 1) == Membership::unknown);
  const FractalSpec poly(kZ, {SimilarityMap(kZ, {z(0), z(0), z(1)})}, {z(2)});
  CHECK_THROWS_AS(member(poly, z(4)), InputError);
}

TEST_CASE("membership agrees with generation") {
  std::vector<FractalSpec> specs{int_digits(10, {0, 3, 7}), int_digits(3, {0, 2}),
                                 FractalSpec(kZ, {SimilarityMap::affine(z(-3), z(1)), SimilarityMap::affine(z(3), z(-5))}, {z(0)}),
                                 gauss_digits(g(1, 1), {g(0, 0), g(1, 0)}),
                                 gauss_digits(g(2, 1), {g(0, 0), g(1, 0), g(2, 0)})};
  for (const auto& spec : specs) {
    const MembershipOracle oracle(spec);
    const auto s = generate(spec, 5000);
    REQUIRE(s.exact);
    for (const auto& x : elements_of_norm_at_most(spec.ring(), 1500)) {
      REQUIRE(oracle(x) == (s.contains(x) ? Membership::yes : Membership::no));
    }
  }
}

TEST_CASE("count series") {
  std::vector<Integer> t;
  for (int k = 1, p = 10; k <= 8; ++k, p *= 10) t.push_back(p - 1);
  const auto c = count_series(int_digits(10, {0, 3, 7}), t);
  std::uint64_t expected = 1;
  for (std::size_t k = 0; k < t.size(); ++k) {
    expected *= 3;
    CHECK(c.counts[k] == expected);
  }

  const auto ones = count_series(int_digits(2, {0}), t);
  for (auto n : ones.counts) CHECK(n == 1);

  std::vector<Integer> fours;
  for (int k = 0; k <= 10; ++k) fours.push_back(Integer(1) << (2 * k));
  const auto gc = count_series(gauss_digits(g(2, 0), {g(0, 0), g(1, 0)}), fours);
  for (int k = 0; k <= 10; ++k) CHECK(gc.counts[k] == (1ULL << k) + 1);

  std::vector<Integer> bad{Integer(5), Integer(5)};
  CHECK_THROWS_AS(count_series(int_digits(2, {0}), bad), InputError);
  std::vector<Integer> negative{Integer(-1), Integer(5)};
  CHECK_THROWS_AS(count_series(int_digits(2, {0}), negative), InputError);
}

TEST_CASE("density sum") {
  CHECK(*density_sum(int_digits(10, {0, 3, 7})).exact == Rational(3, 10));
  CHECK(*density_sum(int_digits(2, {0, 1})).exact == Rational(1));
  CHECK(*density_sum(gauss_digits(g(2, 0), {g(0, 0), g(1, 0)})).exact == Rational(1, 2));
  const FractalSpec poly(kZ, {SimilarityMap(kZ, {z(0), z(0), z(4)})}, {z(0)});
  const auto d = density_sum(poly);
  CHECK_FALSE(d.exact.has_value());
  CHECK(d.value == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("a verified digit set can have density sum below one") {
  const auto spec = int_digits(10, {0, 3, 7});
  const auto r = verify_self_similar(spec, 1000000);
  REQUIRE(r.status == VerificationStatus::verified);
  CHECK(*r.density_sum->exact < Rational(1));
}
