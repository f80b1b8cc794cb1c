#include <doctest.h>

#include <cmath>

#include "eigenflat/errors.hpp"
#include "eigenflat/invariants.hpp"
#include "eigenflat/prototypes.hpp"
#include "reference.hpp"

using namespace eigenflat;

namespace {

const double kPi = std::acos(-1.0);

Rational R(long n, long d = 1) { return make_rational(n, d); }

}  // namespace

TEST_CASE("H(2, D) spot values") {
  CHECK(h2(5) == R(-2, 5));
  CHECK(h2(8) == R(-1));
  CHECK(h2(45) == R(-62, 5));
  CHECK(h2(12) == R(-2));
  CHECK_THROWS_AS(h2(9), ValidationError);
  CHECK_THROWS_AS(h2(7), ValidationError);
}

TEST_CASE("H(2, D) against Bernoulli L-values") {
  for (std::int64_t d = 5; d <= 400; ++d) {
    if (!is_discriminant(d)) continue;
    CAPTURE(d);
    Rational want = ref::h2(d);
    CHECK(h2(d) == want);
    CHECK(h2_cohen(Discriminant(d)) == want);
    CHECK(sgn(h2(d)) < 0);
    CHECK(5 % h2(d).get_den() == 0);
  }
}

TEST_CASE("zeta(-1) of the fundamental field") {
  CHECK(zeta_minus1(Discriminant(5)) == R(1, 30));
  CHECK(zeta_minus1(Discriminant(8)) == R(1, 12));
  CHECK(zeta_minus1(Discriminant(12)) == R(1, 6));
  CHECK_THROWS_AS(zeta_minus1(Discriminant(45)), ValidationError);
  for (std::int64_t e : {13, 17, 21, 24, 28, 29, 33, 37, 40, 41, 44, 56, 57, 60, 61}) {
    CHECK(zeta_minus1(Discriminant(e)) == R(-1, 12) * ref::l_minus1(e));
  }
}

TEST_CASE("Euler characteristic spot values") {
  for (auto f : {chi, chi_via_inversion}) {
    CHECK(f(Discriminant(5)) == R(1, 15));
    CHECK(f(Discriminant(8)) == R(1, 6));
    CHECK(f(Discriminant(45)) == R(2));
  }
  CHECK(volume(Discriminant(5)) == R(4, 15));
  CHECK(volume(Discriminant(8)) == R(2, 3));
  CHECK(volume(Discriminant(45)) == R(8));
}

TEST_CASE("Euler characteristic against an independent formula") {
  for (std::int64_t d = 5; d <= 400; ++d) {
    if (!is_discriminant(d)) continue;
    CAPTURE(d);
    Discriminant D(d);
    Rational want = ref::chi(d);
    CHECK(chi(D) == want);
    CHECK(chi_via_inversion(D) == want);
    CHECK(volume(D) == 4 * want);
    CHECK(volume_remark(D) == 4 * want);
  }
}

TEST_CASE("sum of v over prototypes") {
  CHECK(sum_v_check(Discriminant(5)).sum_v == 4);
  CHECK(sum_v_check(Discriminant(8)).sum_v == 10);
  CHECK(sum_v_check(Discriminant(45)).sum_v == 120);
  for (std::int64_t d = 5; d <= 400; ++d) {
    if (!is_discriminant(d)) continue;
    auto c = sum_v_check(Discriminant(d));
    CHECK(c.passes);
    CHECK(c.sum_v == 60 * ref::chi(d));
  }
}

TEST_CASE("identities over triples") {
  auto five = triple_identities(Discriminant(5));
  REQUIRE(five.size() == 5);
  CHECK(five[4].lhs == 2);
  CHECK(five[4].rhs == 2);
  for (std::int64_t d : {5, 8, 12, 13, 17, 45, 96, 200, 385, 400 - 1}) {
    if (!is_discriminant(d)) continue;
    for (const auto& c : triple_identities(Discriminant(d))) {
      CAPTURE(d);
      CAPTURE(c.name);
      CHECK(c.passes());
    }
  }
}

TEST_CASE("a false identity is caught") {
  // Sum of (a - c) alone is not 5 H(2, D): the sign matters.
  for (std::int64_t d : {5, 8, 13}) {
    auto ts = triple_sets(Discriminant(d));
    Rational s = 0;
    for (const auto& t : ts.s) s += t.a - t.c;
    CHECK(s != 5 * h2(d));
    CHECK(s == -5 * ref::h2(d));
  }
}

TEST_CASE("counting constants") {
  auto k = siegel_veech(Discriminant(8));
  CHECK(k.c_cyl.x == 15);
  CHECK(k.c_cyl.pi_power == -2);
  CHECK(k.c_cyl.value() == doctest::Approx(15 / (kPi * kPi)));
  CHECK(k.s1.value() == doctest::Approx(27.0 / 8));
  CHECK(k.s2.value() == doctest::Approx(5.0 / 8));
  CHECK(k.surface_cyl.value() == doctest::Approx(15 / kPi));
  CHECK(k.surface_s1.value() == doctest::Approx(27 * kPi / 8));
  CHECK(k.surface_s2.value() == doctest::Approx(5 * kPi / 8));
  CHECK(k.billiard_cyl.value(3) == doctest::Approx(15 / (2 * kPi * 3)));
  CHECK(k.billiard_s1.value(3) == doctest::Approx(27 * kPi / (16 * 3)));
  CHECK(k.billiard_s2.value(3) == doctest::Approx(5 * kPi / (16 * 3)));
  CHECK(k.surface_s1.value() / k.surface_s2.value() == doctest::Approx(27.0 / 5));
  CHECK(siegel_veech(Discriminant(397)).c_cyl == k.c_cyl);
  CHECK(siegel_veech(Discriminant(397)).billiard_s2 == k.billiard_s2);
}

TEST_CASE("excluded table constants") {
  auto k = decagon_constants();
  const double r5 = std::sqrt(5.0);
  CHECK(k.billiard_cyl.value(2) == doctest::Approx(75 / (16 * kPi * 2)));
  CHECK(k.billiard_s1.value(2) == doctest::Approx((1125 + 425 * r5) / (128 * kPi * 2)));
  CHECK(k.billiard_s2.value(2) == doctest::Approx((125 - 25 * r5) / (32 * kPi * 2)));
  CHECK(k.surface_cyl.value() == doctest::Approx(75 / (2 * kPi)));
  CHECK(k.a.to_double() == doctest::Approx((1 + r5) / 2));
  CHECK(k.b == k.a);
  CHECK(k.t.to_double() == doctest::Approx((5 - r5) / 10));
}

TEST_CASE("integral coefficients") {
  for (std::int64_t d : {5, 8, 45}) {
    auto c = sc_integral_check(Discriminant(d));
    CHECK(c.mult1_coeff == R(27, 2));
    CHECK(c.mult2_coeff == R(5, 2));
    CHECK(c.mult1_matches);
    CHECK(c.mult2_matches);
    CHECK(c.sv_consistent);
  }
}

TEST_CASE("report") {
  auto r = invariant_report(Discriminant(5));
  CHECK(r.chi == R(1, 15));
  CHECK(r.volume_coeff == R(4, 15));
  CHECK(r.sum_v == 4);
  CHECK(r.prototype_count == 1);
  CHECK(r.all_checks_pass());
  auto ds = discriminants_in_range(4, 20);
  std::vector<std::int64_t> vals;
  for (const auto& d : ds) vals.push_back(d.value());
  CHECK(vals == std::vector<std::int64_t>{5, 8, 12, 13, 17, 20});
}
