#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "eigenflat/builders.hpp"
#include "eigenflat/counting.hpp"
#include "eigenflat/errors.hpp"
#include "eigenflat/io.hpp"
#include "oracle.hpp"

using namespace eigenflat;

namespace {

const Discriminant D5(5), D8(8);
const double kPi = std::acos(-1.0);

QuadNum q(const char* s, Discriminant d) { return QuadNum::parse(s, d); }
QuadNum sq(Discriminant d, long L) { return QuadNum(d, L * L); }
Vec2 i_vec(Discriminant d) { return {QuadNum(d), QuadNum(d, 1)}; }

TranslationSurface d8_sampler() {
  return eigenform_sampler(Prototype::parse("8:1,0,-2,0"), i_vec(D8), i_vec(D8));
}

BilliardSpec criterion_table() {
  QuadNum a = q("1/2+1/2*sqrt(8)", D8);
  return {a, a, QuadNum(D8, Rational(1, 2))};
}

TranslationSurface golden_three_cyl() {
  QuadNum l = q("1/2+1/2*sqrt(5)", D5);
  return build_three_cylinder({QuadNum(D5, 1), l, l - Rational(1), i_vec(D5), i_vec(D5), i_vec(D5)});
}

void check_against_oracle(const TranslationSurface& s, long L) {
  auto scs = enumerate_saddle_connections(s, sq(s.disc(), L));
  auto cyl = enumerate_cylinders(s, scs, sq(s.disc(), L));
  auto c1 = oracle::compare_saddle_connections(scs, oracle::saddle_connections(s, double(L)));
  auto c2 = oracle::compare_cylinders(cyl, oracle::cylinders(s, double(L)));
  CHECK(c1.enumerated > 20);
  CHECK(c1.agree());
  CHECK(c2.enumerated > 5);
  CHECK(c2.agree());
}

}  // namespace

TEST_CASE("cutoff below every feature") {
  for (const auto& s : {build_decagon(), d8_sampler(), build_billiard_unfolding(criterion_table())}) {
    QuadNum tiny(s.disc(), Rational(1, 1000000));
    auto scs = enumerate_saddle_connections(s, tiny);
    CHECK(scs.empty());
    CHECK(enumerate_cylinders(s, scs, tiny).empty());
    auto sum = count_summary(s, QuadNum(s.disc(), Rational(1, 1000)), SurfaceClass::unknown);
    CHECK(sum.n_cylinders == 0);
    CHECK(sum.n_sc_mult1 == 0);
    CHECK(sum.n_sc_pairs_mult2 == 0);
  }
}

TEST_CASE("enumerator agrees with the development oracle") {
  SUBCASE("decagon") { check_against_oracle(build_decagon(), 6); }
  SUBCASE("three-cylinder, discriminant 8") { check_against_oracle(d8_sampler(), 6); }
  SUBCASE("golden three-cylinder") { check_against_oracle(golden_three_cyl(), 6); }
  SUBCASE("unfolding") { check_against_oracle(build_billiard_unfolding(criterion_table()), 8); }
}

TEST_CASE("the oracle comparison notices a missing connection") {
  auto s = build_decagon();
  auto scs = enumerate_saddle_connections(s, sq(D5, 5));
  auto ref = oracle::saddle_connections(s, 5);
  REQUIRE(!scs.empty());
  scs.pop_back();
  CHECK_FALSE(oracle::compare_saddle_connections(scs, ref).agree());
}

TEST_CASE("horizontal cylinders of a three-cylinder surface") {
  auto s = golden_three_cyl();
  QuadNum x2 = q("1/2+1/2*sqrt(5)", D5);
  auto scs = enumerate_saddle_connections(s, x2 * x2);
  auto cyl = enumerate_cylinders(s, scs, x2 * x2);
  std::vector<QuadNum> circ;
  for (const auto& c : cyl) {
    if (!c.holonomy.y.is_zero()) continue;
    circ.push_back(c.holonomy.x);
    CHECK(c.height_sq == QuadNum(D5, 1));
  }
  std::sort(circ.begin(), circ.end());
  REQUIRE(circ.size() == 3);
  CHECK(circ[0] == x2 - Rational(1));
  CHECK(circ[1] == QuadNum(D5, 1));
  CHECK(circ[2] == x2);
  // Horizontal connections: the spine has total length 2 x2 and its pieces all appear.
  QuadNum total(D5);
  for (const auto& sc : scs)
    if (sc.holonomy.y.is_zero()) total += sc.holonomy.x;
  CHECK(total == 2 * x2);
}

TEST_CASE("cylinder boundaries are parallel connections filling the circumference") {
  auto s = d8_sampler();
  auto scs = enumerate_saddle_connections(s, sq(D8, 12));
  auto cyl = enumerate_cylinders(s, scs, sq(D8, 12));
  REQUIRE(cyl.size() > 20);
  for (const auto& c : cyl) {
    for (const auto* side : {&c.bottom, &c.top}) {
      REQUIRE(!side->empty());
      for (std::size_t k : *side) {
        const auto& sc = scs[k];
        CHECK(cross(sc.holonomy, c.holonomy).is_zero());
        CHECK(sc.length_sq <= c.circumference_sq);
      }
      double sum = 0;
      for (std::size_t k : *side) sum += scs[k].length;
      CHECK(sum == doctest::Approx(c.circumference).epsilon(1e-12));
    }
    CHECK(c.area * c.area == c.height_sq * c.circumference_sq);
  }
}

TEST_CASE("multiplicity and the involution") {
  BilliardSpec t = criterion_table();
  auto u = build_billiard_unfolding(t);
  auto scs = enumerate_saddle_connections(u, sq(D8, 10));
  auto corners = unfolding_weierstrass_images(t);
  std::size_t ones = 0;
  for (std::size_t k = 0; k < scs.size(); ++k) {
    const auto& sc = scs[k];
    Vec2 img = unfolding_to_table(t, sc.midpoint.poly, sc.midpoint.p);
    bool at_corner = std::count(corners.begin(), corners.end(), img) > 0;
    CHECK((sc.multiplicity == 1) == at_corner);
    CHECK(classify_multiplicity(u, sc) == sc.multiplicity);
    if (sc.multiplicity == 1) {
      ++ones;
      CHECK(sc.partner == k);
    } else {
      REQUIRE(sc.partner);
      const auto& j = scs[*sc.partner];
      CHECK(j.partner == k);
      CHECK(j.holonomy == sc.holonomy);
      CHECK(j.multiplicity == 2);
    }
  }
  CHECK(ones > 0);
  CHECK(ones < scs.size());

  auto j = surface_to_json(build_decagon());
  j.erase("involution");
  auto bare = surface_from_json(j);
  auto bscs = enumerate_saddle_connections(bare, sq(D5, 3));
  REQUIRE(!bscs.empty());
  for (const auto& sc : bscs) {
    CHECK(sc.multiplicity == 0);
    CHECK(classify_multiplicity(bare, sc) == 0);
  }
}

TEST_CASE("J-invariant connections through the center of the decagon") {
  // The five long diagonals pass through the center, which the central
  // reflection fixes.
  auto s = build_decagon();
  auto scs = enumerate_saddle_connections(s, sq(D5, 4));
  int through = 0;
  bool horizontal = false;
  for (const auto& sc : scs) {
    if (sc.midpoint.poly != 0 || !(sc.midpoint.p == Vec2::zero(D5))) continue;
    ++through;
    CHECK(sc.multiplicity == 1);
    horizontal = horizontal || sc.holonomy == Vec2{QuadNum(D5, 2), QuadNum(D5)};
  }
  CHECK(through == 5);
  CHECK(horizontal);
}

TEST_CASE("worker count does not change the result") {
  auto s = d8_sampler();
  CountOptions one, many;
  many.workers = 4;
  auto a = enumerate_saddle_connections(s, sq(D8, 14), one);
  auto b = enumerate_saddle_connections(s, sq(D8, 14), many);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].holonomy == b[k].holonomy);
    CHECK(a[k].midpoint.poly == b[k].midpoint.poly);
    CHECK(a[k].midpoint.p == b[k].midpoint.p);
  }
}

TEST_CASE("the node budget is a hard limit") {
  CountOptions tight;
  tight.budget = 1000;
  CHECK_THROWS_AS(enumerate_saddle_connections(build_decagon(), sq(D5, 30), tight), BudgetExceeded);
}

TEST_CASE("counts grow with the cutoff") {
  auto s = d8_sampler();
  auto small = count_summary(s, QuadNum(D8, 20), SurfaceClass::generic_eigenform);
  auto large = count_summary(s, QuadNum(D8, 40), SurfaceClass::generic_eigenform);
  CHECK(small.n_cylinders <= large.n_cylinders);
  CHECK(small.n_sc_mult1 <= large.n_sc_mult1);
  CHECK(small.n_sc_pairs_mult2 <= large.n_sc_pairs_mult2);
  REQUIRE(small.n_cylinders >= 200);
  double ratio = double(large.n_cylinders) / double(small.n_cylinders);
  CHECK(ratio >= 3);
  CHECK(ratio <= 5);
}

TEST_CASE("report targets") {
  auto rows = asymptotic_report(d8_sampler(), {QuadNum(D8, 5), QuadNum(D8, 10)}, SurfaceClass::generic_eigenform);
  REQUIRE(rows.size() == 2);
  REQUIRE(rows[0].summary.targets);
  const Targets& t = *rows[0].summary.targets;
  CHECK(t.c_cyl == doctest::Approx(15 / kPi));
  CHECK(t.c_s1 / t.c_s2 == doctest::Approx(27.0 / 5));
  CHECK(rows[0].summary.n_cylinders <= rows[1].summary.n_cylinders);
  auto direct = count_summary(d8_sampler(), QuadNum(D8, 5), SurfaceClass::generic_eigenform);
  CHECK(direct.n_cylinders == rows[0].summary.n_cylinders);
  CHECK(direct.n_sc_mult1 == rows[0].summary.n_sc_mult1);

  CHECK(targets_for(SurfaceClass::decagon)->c_cyl == doctest::Approx(75 / (2 * kPi)));
  CHECK(targets_for(SurfaceClass::billiard)->c_cyl == doctest::Approx(15 / (2 * kPi)));
  CHECK(targets_for(SurfaceClass::billiard_decagon)->c_cyl == doctest::Approx(75 / (16 * kPi)));
  CHECK(!targets_for(SurfaceClass::unknown));
}

TEST_CASE("billiard counts") {
  BilliardSpec t = criterion_table();
  auto tiny = billiard_counts(t, QuadNum(D8, Rational(1, 100)));
  CHECK(tiny.table.n_cylinders == 0);
  CHECK(tiny.surface.n_cylinders == 0);

  auto c = billiard_counts(t, QuadNum(D8, 20));
  CHECK(c.family == BilliardFamily::eigenform);
  long diff = long(c.surface.n_cylinders) - 2 * long(c.table.n_cylinders);
  CHECK(std::labs(diff) <= long(c.surface.n_hv_cylinders));
  CHECK(c.table.area == billiard_table_area(t));
  CHECK(c.surface.area == 4 * billiard_table_area(t));
  REQUIRE(c.table.targets);
  CHECK(c.table.targets->c_cyl == doctest::Approx(15 / (2 * kPi)));
}
