#pragma once

// Exact integer kernel for the enumeration code.
//
// Every coordinate of a surface is written as (x + y sqrt D) / M for one
// common denominator M, with x and y held in 64-bit integers. Products of
// two such numbers are kept as 128-bit pairs over M^2. Signs of a + b sqrt D
// are decided with a floating filter and a GMP fallback, so every predicate
// is exact.

#include <array>
#include <cstdint>
#include <vector>

#include "eigenflat/surface.hpp"

namespace eigenflat::detail {

using i128 = __int128;

struct QI {
  std::int64_t x = 0, y = 0;
  friend bool operator==(const QI&, const QI&) = default;
  friend auto operator<=>(const QI&, const QI&) = default;
};

struct P2 {
  QI x, y;
  friend bool operator==(const P2&, const P2&) = default;
  friend auto operator<=>(const P2&, const P2&) = default;
};

struct QQ {
  i128 a = 0, b = 0;
};

class Kernel {
 public:
  struct Tri {
    std::array<P2, 3> v;
    std::array<int, 3> nbr_tri;
    std::array<int, 3> nbr_edge;
    std::array<int, 3> cls;
    std::array<int, 3> poly_edge;
    int poly;
  };

  /// Doubled position in polygon coordinates, canonical across glued edges.
  struct Location {
    int poly;
    P2 p2;
    friend bool operator==(const Location&, const Location&) = default;
    friend auto operator<=>(const Location&, const Location&) = default;
  };

  explicit Kernel(const TranslationSurface& s);

  const TranslationSurface& surface() const { return *s_; }
  const std::vector<Tri>& tris() const { return tris_; }
  std::int64_t D() const { return D_; }
  double sqrt_d() const { return sqrt_d_; }

  QI from_quad(const QuadNum& q) const;
  P2 from_vec(const Vec2& v) const;
  QuadNum to_quad(const QI& q) const;
  Vec2 to_vec(const P2& p) const;
  double to_double(const QI& q) const;
  /// Bound on the magnitude of the parts of q, used for error estimates.
  double magnitude(const QI& q) const;

  static QI add(const QI& a, const QI& b);
  static QI sub(const QI& a, const QI& b);
  static QI neg(const QI& a) { return {-a.x, -a.y}; }
  static QI twice(const QI& a) { return add(a, a); }
  static P2 add(const P2& a, const P2& b) { return {add(a.x, b.x), add(a.y, b.y)}; }
  static P2 sub(const P2& a, const P2& b) { return {sub(a.x, b.x), sub(a.y, b.y)}; }
  static P2 neg(const P2& a) { return {neg(a.x), neg(a.y)}; }
  static P2 twice(const P2& a) { return add(a, a); }

  QQ mul(const QI& a, const QI& b) const;
  static QQ plus(const QQ& a, const QQ& b);
  static QQ minus(const QQ& a, const QQ& b);
  QQ cross(const P2& a, const P2& b) const { return minus(mul(a.x, b.y), mul(a.y, b.x)); }
  QQ dot(const P2& a, const P2& b) const { return plus(mul(a.x, b.x), mul(a.y, b.y)); }

  int sign(const QI& q) const;
  int sign(const QQ& q) const;
  int cmp(const QQ& a, const QQ& b) const { return sign(minus(a, b)); }
  /// Value of a QQ divided by M^2.
  QuadNum to_quad(const QQ& q) const;

  /// Upper half plane, or positive x axis.
  bool canonical_direction(const P2& h) const;

  /// Canonical location of a doubled local point of polygon `poly`.
  Location canonical_location(int poly, const P2& p2) const;
  /// Image of a (canonical) location under the involution.
  Location involution_image(const Location& loc) const;
  bool has_involution() const { return !centers2_.empty(); }

  /// Whether the doubled point q2 lies in the closed triangle with doubled
  /// vertices a2, b2, c2 (counterclockwise).
  bool in_closed_triangle(const P2& a2, const P2& b2, const P2& c2, const P2& q2) const;

  /// Developed double coordinates of a point.
  double dx(const P2& p) const { return to_double(p.x); }
  double dy(const P2& p) const { return to_double(p.y); }

 private:
  const TranslationSurface* s_;
  std::int64_t D_;
  double sqrt_d_;
  Integer M_;
  std::vector<Tri> tris_;
  std::vector<std::vector<P2>> poly2_;  // doubled polygon vertices
  std::vector<P2> centers2_;
};

}  // namespace eigenflat::detail
