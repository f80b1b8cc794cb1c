#include "kernel.hpp"

#include <cmath>
#include <cstdlib>

#include "eigenflat/errors.hpp"

namespace eigenflat::detail {

namespace {

constexpr std::int64_t kLimit = std::int64_t{1} << 50;

[[noreturn]] void out_of_range() {
  throw ValidationError("surface coordinates exceed the exact kernel range");
}

Integer to_mpz(i128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  Integer hi(static_cast<unsigned long>(u >> 64));
  Integer lo(static_cast<unsigned long>(u & 0xffffffffffffffffULL));
  Integer out = (hi << 64) + lo;
  return neg ? Integer(-out) : out;
}

int sgn128(i128 v) { return (v > 0) - (v < 0); }

}  // namespace

Kernel::Kernel(const TranslationSurface& s) : s_(&s), D_(s.disc().value()), sqrt_d_(s.disc().sqrt_approx()) {
  if (D_ >= (std::int64_t{1} << 24)) throw ValidationError("discriminant too large for the exact kernel");
  M_ = 1;
  auto absorb = [&](const QuadNum& q) {
    mpz_lcm(M_.get_mpz_t(), M_.get_mpz_t(), q.rational_part().get_den_mpz_t());
    mpz_lcm(M_.get_mpz_t(), M_.get_mpz_t(), q.sqrt_part().get_den_mpz_t());
  };
  for (const auto& poly : s.polygons()) {
    for (const Vec2& v : poly) {
      absorb(v.x);
      absorb(v.y);
    }
  }
  if (s.involution()) {
    for (const InvolutionEntry& e : *s.involution()) {
      absorb(e.center.x);
      absorb(e.center.y);
    }
  }
  if (!M_.fits_slong_p() || M_ > kLimit) out_of_range();

  for (const auto& poly : s.polygons()) {
    std::vector<P2> doubled;
    for (const Vec2& v : poly) doubled.push_back(twice(from_vec(v)));
    poly2_.push_back(std::move(doubled));
  }
  if (s.involution()) {
    for (const InvolutionEntry& e : *s.involution()) centers2_.push_back(twice(from_vec(e.center)));
  }
  for (const Triangle& t : s.triangles()) {
    Tri k;
    k.poly = t.poly;
    for (int j = 0; j < 3; ++j) {
      k.v[j] = from_vec(s.vertex(t.poly, t.vertex[j]));
      k.nbr_tri[j] = t.nbr_tri[j];
      k.nbr_edge[j] = t.nbr_edge[j];
      k.cls[j] = s.vertex_class(t.poly, t.vertex[j]);
      k.poly_edge[j] = t.poly_edge[j];
    }
    tris_.push_back(k);
  }
}

QI Kernel::from_quad(const QuadNum& q) const {
  if (q.disc().value() != D_) out_of_range();
  Rational x = q.rational_part() * Rational(M_);
  Rational y = q.sqrt_part() * Rational(M_);
  if (x.get_den() != 1 || y.get_den() != 1) throw ValidationError("value not on the kernel lattice");
  if (!x.get_num().fits_slong_p() || !y.get_num().fits_slong_p()) out_of_range();
  QI out{x.get_num().get_si(), y.get_num().get_si()};
  if (std::llabs(out.x) >= kLimit || std::llabs(out.y) >= kLimit) out_of_range();
  return out;
}

P2 Kernel::from_vec(const Vec2& v) const { return {from_quad(v.x), from_quad(v.y)}; }

QuadNum Kernel::to_quad(const QI& q) const {
  Discriminant d = s_->disc();
  return QuadNum(d, Rational(Integer(static_cast<long>(q.x)), M_),
                 Rational(Integer(static_cast<long>(q.y)), M_));
}

Vec2 Kernel::to_vec(const P2& p) const { return {to_quad(p.x), to_quad(p.y)}; }

QuadNum Kernel::to_quad(const QQ& q) const {
  Integer m2 = M_ * M_;
  return QuadNum(s_->disc(), Rational(to_mpz(q.a), m2), Rational(to_mpz(q.b), m2));
}

double Kernel::to_double(const QI& q) const {
  double m = M_.get_d();
  double x = static_cast<double>(q.x), y = static_cast<double>(q.y) * sqrt_d_;
  if ((q.x > 0 && q.y < 0) || (q.x < 0 && q.y > 0)) {
    // (x + y s) = (x^2 - D y^2) / (x - y s), computed without cancellation.
    i128 n = static_cast<i128>(q.x) * q.x - static_cast<i128>(D_) * q.y * q.y;
    return static_cast<double>(n) / (x - y) / m;
  }
  return (x + y) / m;
}

double Kernel::magnitude(const QI& q) const {
  return (std::fabs(static_cast<double>(q.x)) + std::fabs(static_cast<double>(q.y)) * sqrt_d_) /
         M_.get_d();
}

QI Kernel::add(const QI& a, const QI& b) {
  QI r{a.x + b.x, a.y + b.y};
  if (std::llabs(r.x) >= kLimit || std::llabs(r.y) >= kLimit) out_of_range();
  return r;
}

QI Kernel::sub(const QI& a, const QI& b) {
  QI r{a.x - b.x, a.y - b.y};
  if (std::llabs(r.x) >= kLimit || std::llabs(r.y) >= kLimit) out_of_range();
  return r;
}

QQ Kernel::mul(const QI& a, const QI& b) const {
  return {static_cast<i128>(a.x) * b.x + static_cast<i128>(D_) * (static_cast<i128>(a.y) * b.y),
          static_cast<i128>(a.x) * b.y + static_cast<i128>(a.y) * b.x};
}

QQ Kernel::plus(const QQ& a, const QQ& b) { return {a.a + b.a, a.b + b.b}; }
QQ Kernel::minus(const QQ& a, const QQ& b) { return {a.a - b.a, a.b - b.b}; }

int Kernel::sign(const QI& q) const {
  int sx = (q.x > 0) - (q.x < 0), sy = (q.y > 0) - (q.y < 0);
  if (sy == 0) return sx;
  if (sx == 0 || sx == sy) return sy;
  i128 lhs = static_cast<i128>(q.x) * q.x;
  i128 rhs = static_cast<i128>(D_) * q.y * q.y;
  return lhs > rhs ? sx : sy;
}

int Kernel::sign(const QQ& q) const {
  int sa = sgn128(q.a), sb = sgn128(q.b);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  double da = static_cast<double>(q.a);
  double db = static_cast<double>(q.b) * sqrt_d_;
  double v = da + db;
  double err = 1e-12 * (std::fabs(da) + std::fabs(db));
  if (v > err) return 1;
  if (v < -err) return -1;
  Integer a = to_mpz(q.a), b = to_mpz(q.b);
  int c = ::cmp(Integer(a * a), Integer(Integer(static_cast<long>(D_)) * b * b));
  if (c == 0) return 0;  // impossible for nonsquare D unless both vanish
  return c > 0 ? sa : sb;
}

bool Kernel::canonical_direction(const P2& h) const {
  int sy = sign(h.y);
  return sy > 0 || (sy == 0 && sign(h.x) > 0);
}

bool Kernel::in_closed_triangle(const P2& a2, const P2& b2, const P2& c2, const P2& q2) const {
  return sign(cross(sub(b2, a2), sub(q2, a2))) >= 0 && sign(cross(sub(c2, b2), sub(q2, b2))) >= 0 &&
         sign(cross(sub(a2, c2), sub(q2, c2))) >= 0;
}

Kernel::Location Kernel::canonical_location(int poly, const P2& p2) const {
  const auto& pv = poly2_[poly];
  const int n = static_cast<int>(pv.size());
  for (int e = 0; e < n; ++e) {
    const P2& a = pv[e];
    const P2& b = pv[(e + 1) % n];
    if (sign(cross(sub(b, a), sub(p2, a))) != 0) continue;
    if (sign(dot(sub(p2, a), sub(p2, b))) > 0) continue;
    EdgeRef here{poly, e};
    EdgeRef there = s_->partner(here);
    if (here < there) return {poly, p2};
    const auto& qv = poly2_[there.poly];
    const int m = static_cast<int>(qv.size());
    P2 shift = sub(qv[(there.edge + 1) % m], a);
    return {there.poly, add(p2, shift)};
  }
  return {poly, p2};
}

Kernel::Location Kernel::involution_image(const Location& loc) const {
  const InvolutionEntry& e = (*s_->involution())[loc.poly];
  return canonical_location(e.target, sub(centers2_[loc.poly], loc.p2));
}

}  // namespace eigenflat::detail
