#include <doctest.h>

#include <algorithm>
#include <random>

#include "eigenflat/builders.hpp"
#include "eigenflat/counting.hpp"
#include "eigenflat/errors.hpp"
#include "eigenflat/io.hpp"

using namespace eigenflat;

namespace {

const Discriminant D5(5), D8(8);

QuadNum q(const char* s, Discriminant d) { return QuadNum::parse(s, d); }
Vec2 v(const QuadNum& x, const QuadNum& y) { return {x, y}; }
Vec2 i_vec(Discriminant d) { return {QuadNum(d), QuadNum(d, 1)}; }

ThreeCylSpec golden_spec() {
  QuadNum l = q("1/2+1/2*sqrt(5)", D5);
  return {QuadNum(D5, 1), l, l - Rational(1), i_vec(D5), i_vec(D5), i_vec(D5)};
}

void check_genus_two(const TranslationSurface& s) {
  CHECK(s.genus() == 2);
  auto z = s.zeros();
  REQUIRE(z.size() == 2);
  CHECK(z[0].order == 1);
  CHECK(z[1].order == 1);
}

BilliardSpec criterion_table() {
  QuadNum a = q("1/2+1/2*sqrt(8)", D8);
  return {a, a, QuadNum(D8, Rational(1, 2))};
}

BilliardSpec golden_table() {
  QuadNum phi = q("1/2+1/2*sqrt(5)", D5);
  return {phi, phi, q("1/2-1/10*sqrt(5)", D5)};
}

}  // namespace

TEST_CASE("three-cylinder surface") {
  auto s = build_three_cylinder(golden_spec());
  check_genus_two(s);
  CHECK(s.area() == q("1+1*sqrt(5)", D5));
  REQUIRE(s.involution());

  auto cyl = cylinders_in_direction(s, v(QuadNum(D5, 1), QuadNum(D5)));
  REQUIRE(cyl.size() == 3);
  std::vector<QuadNum> circ;
  for (const auto& c : cyl) {
    circ.push_back(c.holonomy.x);
    CHECK(c.holonomy.y.is_zero());
    CHECK(c.height_sq == QuadNum(D5, 1));
  }
  std::sort(circ.begin(), circ.end());
  CHECK(circ[0] == q("-1/2+1/2*sqrt(5)", D5));
  CHECK(circ[1] == QuadNum(D5, 1));
  CHECK(circ[2] == q("1/2+1/2*sqrt(5)", D5));

  QuadNum r2 = QuadNum::sqrt_d(D8) * Rational(1, 2);
  ThreeCylSpec eight{QuadNum(D8, 1), r2, r2 - Rational(1), i_vec(D8), i_vec(D8), i_vec(D8)};
  check_genus_two(build_three_cylinder(eight));
}

TEST_CASE("three-cylinder validation") {
  ThreeCylSpec bad = golden_spec();
  bad.x2 = bad.x2 + Rational(1, 3);
  CHECK_THROWS_AS(build_three_cylinder(bad), ValidationError);
  bad = golden_spec();
  bad.y2.y = QuadNum(D5);
  CHECK_THROWS_AS(build_three_cylinder(bad), ValidationError);
  bad = golden_spec();
  bad.x3 = -bad.x3;
  CHECK_THROWS_AS(build_three_cylinder(bad), ValidationError);
}

TEST_CASE("eigenform sampler") {
  Prototype p5 = Prototype::parse("5:1,-1,-1,0");
  ThreeCylSpec sp = eigenform_spec(p5, i_vec(D5), i_vec(D5));
  QuadNum l = p5.lambda();
  // The imaginary part of the congruence forces Im y1 = Im(y2)/l + Im(y3)/(l-1).
  CHECK(sp.y1.y == l.inverse() + (l - Rational(1)).inverse());
  CHECK(sp.x1 == QuadNum(D5, 1));
  CHECK(sp.x2 == l);
  CHECK(check_eigenform_condition(sp, p5));
  auto s = eigenform_sampler(p5, i_vec(D5), i_vec(D5));
  check_genus_two(s);
  CHECK(prototype_of(s) == p5);

  Prototype p8 = Prototype::parse("8:1,0,-2,0");
  auto s8 = eigenform_sampler(p8, i_vec(D8), i_vec(D8));
  CHECK(s8.disc() == D8);
  CHECK(check_eigenform_condition(s8, p8));
  CHECK(prototype_of(s8) == p8);

  Vec2 flat{QuadNum(D8, 1), QuadNum(D8)};
  CHECK_THROWS_AS(eigenform_sampler(p8, flat, i_vec(D8)), ValidationError);
}

TEST_CASE("the congruence rejects perturbed data") {
  Prototype p8 = Prototype::parse("8:1,0,-2,0");
  ThreeCylSpec sp = eigenform_spec(p8, i_vec(D8), i_vec(D8));
  ThreeCylSpec moved = sp;
  moved.y1.x = moved.y1.x + Rational(1, 7);
  auto c = canonical_three_cylinder_form(moved);
  CHECK_FALSE(check_eigenform_condition(c.spec, p8));
  // A rational residue of 1/7 is an eigenform again, for the order of conductor 7.
  Prototype seven = prototype_of(build_three_cylinder(moved));
  CHECK(seven.disc() == Discriminant(8 * 49));
  CHECK(seven.g() == 7);
  // An irrational shift leaves no residue at all.
  moved = sp;
  moved.y1.x = moved.y1.x + QuadNum::sqrt_d(D8) * Rational(1, 7);
  CHECK_THROWS_AS(prototype_of(build_three_cylinder(moved)), ValidationError);
  // A shift by a whole circumference is invisible.
  moved = sp;
  moved.y1.x = moved.y1.x + Rational(1);
  CHECK(check_eigenform_condition(canonical_three_cylinder_form(moved).spec, p8));
  // Wrong modulus.
  CHECK_FALSE(check_eigenform_condition(sp, Prototype::parse("8:1,-2,-1,0")));
}

TEST_CASE("canonical form") {
  ThreeCylSpec g = golden_spec();
  ThreeCylSpec big{2 * g.x1, 2 * g.x2, 2 * g.x3, Rational(2) * g.y1, Rational(2) * g.y2, Rational(2) * g.y3};
  auto c = canonical_three_cylinder_form(big);
  CHECK_FALSE(c.normalized);
  CHECK(c.spec.x1 == g.x1);
  CHECK(c.spec.x2 == g.x2);
  CHECK(c.spec.x3 == g.x3);
  CHECK(c.spec.y2 == g.y2);

  ThreeCylSpec sw{g.x3, g.x2, g.x1, g.y3, g.y2, g.y1};
  auto cs = canonical_three_cylinder_form(sw);
  CHECK(cs.spec.x1 == g.x1);
  CHECK(cs.spec.x3 == g.x3);

  CHECK(canonical_three_cylinder_form(g).normalized);

  ThreeCylSpec rational{QuadNum(D5, 1), QuadNum(D5, 2), QuadNum(D5, 1), i_vec(D5), i_vec(D5), i_vec(D5)};
  CHECK_THROWS_AS(canonical_three_cylinder_form(rational), ValidationError);
}

TEST_CASE("sampler round trips and the area formula") {
  std::mt19937_64 rng(99);
  for (std::int64_t dv : {5, 8, 12, 13, 17, 20}) {
    Discriminant d(dv);
    auto ps = enumerate_prototypes(d);
    for (int k = 0; k < 6; ++k) {
      const Prototype& p = ps[rng() % ps.size()];
      auto rnd = [&](long lo, long hi) {
        long n = lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
        long m = 1 + static_cast<long>(rng() % 9);
        return QuadNum(d, make_rational(n, m), make_rational(static_cast<long>(rng() % 5) - 2, m));
      };
      Vec2 y2{rnd(-5, 5), QuadNum(d)}, y3{rnd(-5, 5), QuadNum(d)};
      do y2.y = rnd(1, 9); while (y2.y.sign() <= 0);
      do y3.y = rnd(1, 9); while (y3.y.sign() <= 0);
      auto s = eigenform_sampler(p, y2, y3);
      check_genus_two(s);
      CHECK(prototype_of(s) == p);
      CHECK(check_eigenform_condition(s, p));
      QuadNum want = QuadNum::sqrt_d(d) * Rational(1, p.a()) * (y2.y + y3.y);
      CHECK(s.area() == want);
    }
  }
}

TEST_CASE("billiard unfolding") {
  BilliardSpec t = criterion_table();
  auto u = build_billiard_unfolding(t);
  check_genus_two(u);
  QuadNum table = t.a + t.b - Rational(1);
  CHECK(billiard_table_area(t) == table);
  CHECK(u.area() == 4 * table);
  CHECK(classify_billiard(t) == BilliardFamily::eigenform);

  // The six fixed points of the involution sit over the six corners.
  auto w = unfolding_weierstrass_images(t);
  const QuadNum z(D8), one(D8, 1);
  std::vector<Vec2> corners = {v(z, z), v(t.a, z), v(t.a, one), v(one, one), v(one, t.b), v(z, t.b)};
  REQUIRE(w.size() == 6);
  for (const Vec2& c : corners) CHECK(std::count(w.begin(), w.end(), c) == 1);

  BilliardSpec zero_t = t;
  zero_t.t = QuadNum(D8);
  CHECK_THROWS_AS(build_billiard_unfolding(zero_t), ValidationError);
  zero_t.t = QuadNum(D8, -1);
  CHECK_THROWS_AS(zero_t.validate(), ValidationError);

  BilliardSpec g = golden_table();
  CHECK(classify_billiard(g) == BilliardFamily::decagon);
  check_genus_two(build_billiard_unfolding(g));

  BilliardSpec odd{QuadNum(D8, 3), QuadNum(D8, 2), QuadNum(D8, Rational(1, 3))};
  CHECK(classify_billiard(odd) == BilliardFamily::unverified);
}

TEST_CASE("decagon") {
  auto s = build_decagon();
  check_genus_two(s);
  CHECK(s.zeros()[0].corners.size() == 5);
  CHECK(s.zeros()[1].corners.size() == 5);
  // Shoelace over the ten vertices.
  const auto& poly = s.polygons()[0];
  QuadNum twice(D5);
  for (std::size_t k = 0; k < poly.size(); ++k) twice += cross(poly[k], poly[(k + 1) % poly.size()]);
  CHECK(s.area() == twice * Rational(1, 2));
  CHECK(s.area().sign() == 1);
}

TEST_CASE("torus fixture") {
  auto s = build_square_torus(D5);
  CHECK(s.genus() == 1);
  CHECK(s.zeros().empty());
  CHECK(s.area() == QuadNum(D5, 1));
}

TEST_CASE("diagonal action, scaling and the involution") {
  auto s = build_decagon();
  auto t = apply_diagonal(s, QuadNum(D5, Rational(5, 3)));
  CHECK(t.area() == s.area());
  check_genus_two(t);
  auto big = scale_surface(s, QuadNum(D5, 3));
  CHECK(big.area() == 9 * s.area());

  for (const auto& surf : {build_decagon(), build_billiard_unfolding(criterion_table()),
                           eigenform_sampler(Prototype::parse("8:1,0,-2,0"), i_vec(D8), i_vec(D8))}) {
    for (int poly = 0; poly < static_cast<int>(surf.polygons().size()); ++poly) {
      for (const Vec2& p : surf.polygons()[poly]) {
        int k = poly;
        Vec2 once = surf.apply_involution(k, p);
        Vec2 twice = surf.apply_involution(k, once);
        CHECK(k == poly);
        CHECK(twice == p);
      }
    }
  }
}

TEST_CASE("structural validation rejects broken gluings") {
  const QuadNum z(D5), one(D5, 1), two(D5, 2);
  std::vector<Vec2> sq = {v(z, z), v(one, z), v(one, one), v(z, one)};
  CHECK_NOTHROW(TranslationSurface(D5, {sq}, {{{0, 0}, {0, 2}}, {{0, 1}, {0, 3}}}));
  // Edges 0 and 1 are not parallel.
  CHECK_THROWS_AS(TranslationSurface(D5, {sq}, {{{0, 0}, {0, 1}}, {{0, 2}, {0, 3}}}), ValidationError);
  // Edge 3 unglued.
  CHECK_THROWS_AS(TranslationSurface(D5, {sq}, {{{0, 0}, {0, 2}}}), ValidationError);
  std::vector<Vec2> rect = {v(z, z), v(two, z), v(two, one), v(z, one)};
  // Opposite sides of different length.
  CHECK_THROWS_AS(TranslationSurface(D5, {sq, rect}, {{{0, 0}, {1, 2}}, {{1, 0}, {0, 2}},
                                                       {{0, 1}, {0, 3}}, {{1, 1}, {1, 3}}}),
                  ValidationError);
}

TEST_CASE("surface files round-trip") {
  for (const auto& s : {build_decagon(), build_billiard_unfolding(criterion_table())}) {
    auto j = surface_to_json(s);
    auto back = surface_from_json(j);
    CHECK(surface_to_json(back) == j);
    CHECK(back.area() == s.area());
    CHECK(back.genus() == 2);
  }
  CHECK_THROWS_AS(surface_from_json(nlohmann::json::parse(R"({"discriminant": 5})")), ValidationError);
}
