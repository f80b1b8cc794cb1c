#include "eigenflat/builders.hpp"

#include <algorithm>
#include <numeric>

#include "eigenflat/counting.hpp"
#include "eigenflat/errors.hpp"

namespace eigenflat {

namespace {

Vec2 horiz(const QuadNum& x) { return {x, QuadNum(x.disc())}; }

// Largest integer n with n * period <= value, for positive period.
Integer floor_div(const QuadNum& value, const QuadNum& period) { return floor(value / period); }

QuadNum reduce_into(const QuadNum& value, const QuadNum& period) {
  return value - Rational(floor_div(value, period)) * period;
}

// value reduced into [-half, half) for period 2 half.
QuadNum reduce_centered(const QuadNum& value, const QuadNum& half) {
  return reduce_into(value + half, half * Rational(2)) - half;
}

QuadNum abs(const QuadNum& q) { return q.sign() < 0 ? -q : q; }

Vec2 rebase(const Vec2& v, const Discriminant& d) { return {v.x.rebased(d), v.y.rebased(d)}; }

}  // namespace

void ThreeCylSpec::validate() const {
  const Discriminant& d = x1.disc();
  for (const QuadNum* q : {&x2, &x3, &y1.x, &y1.y, &y2.x, &y2.y, &y3.x, &y3.y}) {
    if (!(q->disc() == d)) throw ValidationError("three-cylinder data must share one discriminant");
  }
  if (x1.sign() <= 0 || x2.sign() <= 0 || x3.sign() <= 0) {
    throw ValidationError("cylinder circumferences must be positive");
  }
  if (!(x2 == x1 + x3)) throw ValidationError("three-cylinder data needs x2 = x1 + x3");
  if (y1.y.sign() <= 0 || y2.y.sign() <= 0 || y3.y.sign() <= 0) {
    throw ValidationError("cylinder heights must be positive");
  }
}

TranslationSurface build_three_cylinder(const ThreeCylSpec& spec) {
  spec.validate();
  const Discriminant d = spec.disc();
  const Vec2 X1 = horiz(spec.x1), X2 = horiz(spec.x2), X3 = horiz(spec.x3);
  const Vec2 &y1 = spec.y1, &y2 = spec.y2, &y3 = spec.y3;

  std::vector<std::vector<Vec2>> polys = {
      {y2, y2 + X1, y2 + X1 + y1, y2 + y1},
      {X1, X2, X1 + X2, y2 + X2, y2 + X1, y2},
      {X1 - y3, X2 - y3, X2, X1},
  };
  std::vector<Gluing> gl = {
      {{1, 1}, {0, 2}}, {{1, 4}, {0, 0}}, {{1, 0}, {2, 2}}, {{1, 3}, {2, 0}},
      {{1, 2}, {1, 5}}, {{0, 1}, {0, 3}}, {{2, 1}, {2, 3}},
  };
  std::vector<InvolutionEntry> inv = {
      {0, Rational(2) * y2 + X1 + y1},
      {1, X1 + X2 + y2},
      {2, X1 + X2 - y3},
  };
  std::vector<HomologyLabel> labels = {
      {"alpha1", X1}, {"alpha2", X2}, {"alpha3", X3},  {"gamma1", y1},
      {"gamma2", y2}, {"gamma3", y3}, {"beta1", y1 - y3}, {"beta2", y2 + y3},
  };
  return TranslationSurface(d, std::move(polys), std::move(gl), std::move(inv), std::move(labels));
}

ThreeCylSpec eigenform_spec(const Prototype& p, const Vec2& y2_in, const Vec2& y3_in) {
  const Discriminant d = p.disc();
  Vec2 y2 = rebase(y2_in, d), y3 = rebase(y3_in, d);
  if (y2.y.sign() <= 0 || y3.y.sign() <= 0) {
    throw ValidationError("y2 and y3 must lie in the upper half plane");
  }
  const QuadNum lam = p.lambda();
  const QuadNum one(d, 1);
  // Solve from reduced periods: when a' > 1 the congruence fixes y1 only
  // mod 1/a', so the representative of y2 and y3 matters.
  y2.x = reduce_into(y2.x, lam);
  y3.x = reduce_into(y3.x, lam - one);
  const Rational a(p.a_prime()), c(p.c_prime()), s(p.a_prime() + p.b_prime() + p.c_prime());
  // a' y1 + (c'/lam) y2 + (s'/(lam-1)) y3 = -q'
  const QuadNum k2 = -(c / a) * lam.inverse();
  const QuadNum k3 = -(s / a) * (lam - one).inverse();
  Vec2 y1{k2 * y2.x + k3 * y3.x - p.q_prime() / a, k2 * y2.y + k3 * y3.y};

  ThreeCylSpec spec{one, lam, lam - one, y1, y2, y3};
  return canonical_three_cylinder_form(spec).spec;
}

TranslationSurface eigenform_sampler(const Prototype& p, const Vec2& y2, const Vec2& y3) {
  return build_three_cylinder(eigenform_spec(p, y2, y3));
}

CanonicalForm canonical_three_cylinder_form(const ThreeCylSpec& in) {
  in.validate();
  const Rational n21 = (in.x2 / in.x1).norm();
  const Rational n23 = (in.x2 / in.x3).norm();
  ThreeCylSpec out = in;
  bool normalized = true;
  if (sgn(n21) < 0) {
    // already ordered
  } else if (sgn(n23) < 0) {
    std::swap(out.x1, out.x3);
    std::swap(out.y1, out.y3);
    normalized = false;
  } else {
    throw ValidationError("no cylinder order gives N(x2/x1) < 0; not an eigenform candidate");
  }
  const QuadNum s = out.x1;
  const QuadNum one(s.disc(), 1);
  if (!(s == one)) {
    normalized = false;
    const QuadNum inv = s.inverse();
    out.x1 = one;
    out.x2 = out.x2 * inv;
    out.x3 = out.x3 * inv;
    for (Vec2* y : {&out.y1, &out.y2, &out.y3}) *y = inv * *y;
  }
  const QuadNum* xs[3] = {&out.x1, &out.x2, &out.x3};
  Vec2* ys[3] = {&out.y1, &out.y2, &out.y3};
  for (int i = 0; i < 3; ++i) {
    QuadNum r = reduce_into(ys[i]->x, *xs[i]);
    if (!(r == ys[i]->x)) {
      normalized = false;
      ys[i]->x = r;
    }
  }
  return {out, normalized};
}

CanonicalForm canonical_three_cylinder_form(const TranslationSurface& s) {
  const Discriminant d = s.disc();
  std::vector<CylinderTrace> cyl = cylinders_in_direction(s, horiz(QuadNum(d, 1)));
  if (cyl.size() != 3) throw ValidationError("surface is not a horizontal three-cylinder surface");
  QuadNum total(d);
  for (const auto& c : cyl) total += c.area;
  if (!(total == s.area())) throw ValidationError("horizontal cylinders do not fill the surface");

  int mid = -1;
  std::vector<int> small;
  for (int i = 0; i < 3; ++i) {
    std::size_t nb = cyl[i].bottom_points.size(), nt = cyl[i].top_points.size();
    if (nb == 2 && nt == 2) {
      if (mid >= 0) throw ValidationError("unexpected horizontal cylinder pattern");
      mid = i;
    } else if (nb == 1 && nt == 1) {
      small.push_back(i);
    } else {
      throw ValidationError("unexpected horizontal cylinder pattern");
    }
  }
  if (mid < 0 || small.size() != 2) throw ValidationError("unexpected horizontal cylinder pattern");

  const CylinderTrace& c1 = cyl[small[0]];
  const CylinderTrace& c2 = cyl[mid];
  const CylinderTrace& c3 = cyl[small[1]];
  ThreeCylSpec spec{c1.holonomy.x, c2.holonomy.x, c3.holonomy.x,
                    c1.top_points[0] - c1.bottom_points[0], Vec2::zero(d),
                    c3.top_points[0] - c3.bottom_points[0]};

  // Start of the boundary segment of length x1 on each side of the middle cylinder.
  auto start_of = [&](const std::vector<Vec2>& pts) -> Vec2 {
    const QuadNum& period = c2.holonomy.x;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      QuadNum next = i + 1 < pts.size() ? pts[i + 1].x : pts[0].x + period;
      if (next - pts[i].x == spec.x1) return pts[i];
    }
    throw ValidationError("middle cylinder has no boundary segment of length x1");
  };
  spec.y2 = start_of(c2.top_points) - start_of(c2.bottom_points);
  return canonical_three_cylinder_form(spec);
}

namespace {

// a' y1 + (c'/mu) y2 + ((a'+b'+c')/(mu-1)) y3 for a primitive triple.
Vec2 congruence_value(const ThreeCylSpec& sp, const Rational& a, const Rational& b, const Rational& c) {
  const QuadNum& mu = sp.x2;
  const QuadNum one(mu.disc(), 1);
  const QuadNum k2 = c * mu.inverse();
  const QuadNum k3 = (a + b + c) * (mu - one).inverse();
  return {a * sp.y1.x + k2 * sp.y2.x + k3 * sp.y3.x, a * sp.y1.y + k2 * sp.y2.y + k3 * sp.y3.y};
}

}  // namespace

bool check_eigenform_condition(const ThreeCylSpec& sp, const Prototype& p) {
  sp.validate();
  const Discriminant d = sp.disc();
  const QuadNum one(d, 1);
  QuadNum lam = p.lambda();
  try {
    lam = lam.rebased(d);
  } catch (const ValidationError&) {
    return false;
  }
  if (!(sp.x1 == one) || !(sp.x2 == lam) || !(sp.x3 == lam - one)) return false;
  Vec2 v = congruence_value(sp, Rational(p.a_prime()), Rational(p.b_prime()), Rational(p.c_prime()));
  if (!v.y.is_zero() || !v.x.is_rational()) return false;
  Rational r = v.x.rational_part() + p.q_prime();
  return r.get_den() == 1;
}

bool check_eigenform_condition(const TranslationSurface& s, const Prototype& p) {
  return check_eigenform_condition(canonical_three_cylinder_form(s).spec, p);
}

Prototype prototype_of(const ThreeCylSpec& sp) {
  sp.validate();
  const QuadNum& mu = sp.x2;
  const QuadNum one(mu.disc(), 1);
  if (!(sp.x1 == one)) throw ValidationError("prototype_of needs a canonical form with x1 = 1");
  if (mu.is_rational()) throw ValidationError("mu is rational; not an eigenform");
  if (sgn(mu.norm()) >= 0 || mu.sign() <= 0 || (mu - one).sign() <= 0) {
    throw ValidationError("mu must exceed 1 and have negative norm");
  }
  // Minimal polynomial x^2 - tr x + N, made primitive over Z.
  Rational tr = mu.trace(), nm = mu.norm();
  Integer den;
  mpz_lcm(den.get_mpz_t(), tr.get_den_mpz_t(), nm.get_den_mpz_t());
  Integer a0 = den;
  Integer b0 = Integer(-tr * Rational(den));
  Integer c0 = Integer(nm * Rational(den));
  Integer g0;
  mpz_gcd(g0.get_mpz_t(), a0.get_mpz_t(), b0.get_mpz_t());
  mpz_gcd(g0.get_mpz_t(), g0.get_mpz_t(), c0.get_mpz_t());
  a0 /= g0;
  b0 /= g0;
  c0 /= g0;

  Vec2 v = congruence_value(sp, Rational(a0), Rational(b0), Rational(c0));
  if (!v.y.is_zero() || !v.x.is_rational()) {
    throw ValidationError("eigenform congruence has no rational residue; not an eigenform");
  }
  Rational minus = -v.x.rational_part();
  Rational frac = minus - Rational(floor(minus));
  Integer g = frac.get_den(), n = frac.get_num();
  Integer disc0 = b0 * b0 - 4 * a0 * c0;
  Integer D = g * g * disc0;
  Integer a = g * a0, b = g * b0, c = g * c0;
  for (const Integer* z : {&D, &a, &b, &c, &n}) {
    if (!z->fits_slong_p()) throw ValidationError("prototype entries too large");
  }
  return Prototype(Discriminant(D.get_si()), a.get_si(), b.get_si(), c.get_si(), n.get_si());
}

Prototype prototype_of(const TranslationSurface& s) { return prototype_of(canonical_three_cylinder_form(s).spec); }

void BilliardSpec::validate() const {
  const Discriminant& d = a.disc();
  if (!(b.disc() == d) || !(t.disc() == d)) throw ValidationError("table parameters must share a field");
  const QuadNum one(d, 1);
  if ((a - one).sign() <= 0 || (b - one).sign() <= 0) {
    throw ValidationError("table needs a > 1 and b > 1");
  }
  if (t.sign() <= 0) throw ValidationError("barrier length t must be positive");
  if ((t - one).sign() >= 0) throw ValidationError("barrier length t must be below 1");
}

BilliardFamily classify_billiard(const BilliardSpec& spec) {
  spec.validate();
  const Discriminant& d = spec.a.disc();
  if (decompose(d).fundamental == 5) {
    QuadNum golden = QuadNum::parse("1/2+1/2*sqrt(5)", d);
    QuadNum tt = QuadNum::parse("1/2-1/10*sqrt(5)", d);
    if (spec.a == golden && spec.b == golden && spec.t == tt) return BilliardFamily::decagon;
  }
  if (!spec.a.is_rational() && spec.a.sqrt_part() == spec.b.sqrt_part() &&
      spec.a.rational_part() + spec.b.rational_part() == 1) {
    return BilliardFamily::eigenform;
  }
  return BilliardFamily::unverified;
}

std::string to_string(BilliardFamily f) {
  switch (f) {
    case BilliardFamily::eigenform: return "eigenform";
    case BilliardFamily::decagon: return "decagon-curve";
    case BilliardFamily::unverified: return "unverified eigenform";
  }
  return "unknown";
}

QuadNum billiard_table_area(const BilliardSpec& spec) {
  return spec.a + spec.b - QuadNum(spec.a.disc(), 1);
}

ThreeCylSpec unfolding_spec(const BilliardSpec& spec) {
  spec.validate();
  const Discriminant d = spec.a.disc();
  const QuadNum zero(d), one(d, 1), two(d, 2);
  return ThreeCylSpec{two,
                      two * spec.a,
                      two * spec.a - two,
                      {zero, two * (spec.b - one + spec.t)},
                      {zero, two * (one - spec.t)},
                      {zero, two * spec.t}};
}

TranslationSurface build_billiard_unfolding(const BilliardSpec& spec) {
  return build_three_cylinder(unfolding_spec(spec));
}

Vec2 unfolding_to_table(const BilliardSpec& spec, int /*poly*/, const Vec2& p) {
  // The polygons sit in the plane so that a fixed shift takes them into the
  // cross made of four copies of the table, centered at the origin.
  const Discriminant d = spec.a.disc();
  const QuadNum one(d, 1);
  QuadNum X = p.x - one;
  QuadNum Y = p.y - one + spec.t;
  if ((abs(X) - one).sign() <= 0) {
    Y = reduce_centered(Y, spec.b);
  } else {
    Y = reduce_centered(Y, one);
  }
  if ((abs(Y) - one).sign() <= 0) X = reduce_centered(X, spec.a);
  return {abs(X), abs(Y)};
}

std::vector<Vec2> unfolding_weierstrass_images(const BilliardSpec& spec) {
  ThreeCylSpec u = unfolding_spec(spec);
  TranslationSurface s = build_three_cylinder(u);
  const QuadNum* xs[3] = {&u.x1, &u.x2, &u.x3};
  std::vector<Vec2> out;
  for (int i = 0; i < 3; ++i) {
    Vec2 c = Rational(1, 2) * (*s.involution())[i].center;
    out.push_back(unfolding_to_table(spec, i, c));
    out.push_back(unfolding_to_table(spec, i, c + horiz(*xs[i] * Rational(1, 2))));
  }
  return out;
}

TranslationSurface build_decagon() {
  const Discriminant d(5);
  auto q = [&](const char* t) { return QuadNum::parse(t, d); };
  const QuadNum c1 = q("1/4+1/4*sqrt(5)"), c2 = q("-1/4+1/4*sqrt(5)");
  const QuadNum phi = q("1/2+1/2*sqrt(5)"), one(d, 1), zero(d);
  const QuadNum xs[10] = {one, c1, c2, -c2, -c1, -one, -c1, -c2, c2, c1};
  const QuadNum ys[10] = {zero, one, phi, phi, one, zero, -one, -phi, -phi, -one};
  std::vector<Vec2> poly;
  for (int k = 0; k < 10; ++k) poly.push_back({xs[k], ys[k]});
  std::vector<Gluing> gl;
  for (int k = 0; k < 5; ++k) gl.push_back({{0, k}, {0, k + 5}});
  std::vector<InvolutionEntry> inv = {{0, Vec2::zero(d)}};
  return TranslationSurface(d, {poly}, gl, inv);
}

TranslationSurface build_square_torus(Discriminant d) {
  const QuadNum z(d), o(d, 1);
  std::vector<Vec2> poly = {{z, z}, {o, z}, {o, o}, {z, o}};
  std::vector<Gluing> gl = {{{0, 0}, {0, 2}}, {{0, 1}, {0, 3}}};
  std::vector<InvolutionEntry> inv = {{0, {o, o}}};
  return TranslationSurface(d, {poly}, gl, inv);
}

namespace {

template <class F>
TranslationSurface map_surface(const TranslationSurface& s, F f) {
  std::vector<std::vector<Vec2>> polys;
  for (const auto& poly : s.polygons()) {
    std::vector<Vec2> out;
    for (const Vec2& v : poly) out.push_back(f(v));
    polys.push_back(std::move(out));
  }
  std::optional<std::vector<InvolutionEntry>> inv;
  if (s.involution()) {
    inv.emplace();
    for (const auto& e : *s.involution()) inv->push_back({e.target, f(e.center)});
  }
  std::vector<HomologyLabel> labels;
  for (const auto& l : s.labels()) labels.push_back({l.name, f(l.holonomy)});
  return TranslationSurface(s.disc(), std::move(polys), s.gluings(), std::move(inv), std::move(labels));
}

}  // namespace

TranslationSurface apply_diagonal(const TranslationSurface& s, const QuadNum& factor) {
  if (factor.sign() <= 0) throw ValidationError("diagonal factor must be positive");
  const QuadNum f = factor.rebased(s.disc());
  const QuadNum fi = f.inverse();
  return map_surface(s, [&](const Vec2& v) { return Vec2{f * v.x, fi * v.y}; });
}

TranslationSurface scale_surface(const TranslationSurface& s, const QuadNum& factor) {
  if (factor.sign() <= 0) throw ValidationError("scale factor must be positive");
  const QuadNum f = factor.rebased(s.disc());
  return map_surface(s, [&](const Vec2& v) { return f * v; });
}

}  // namespace eigenflat
