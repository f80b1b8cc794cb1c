#pragma once

// Planar vectors over Q(sqrt D).

#include <string>
#include <vector>

#include "eigenflat/exactnum.hpp"

namespace eigenflat {

struct Vec2 {
  QuadNum x;
  QuadNum y;

  static Vec2 zero(Discriminant d) { return {QuadNum(d), QuadNum(d)}; }

  Vec2 operator-() const { return {-x, -y}; }
  Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
  friend Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
  friend Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
  friend Vec2 operator*(const QuadNum& s, const Vec2& v) { return {s * v.x, s * v.y}; }
  friend Vec2 operator*(const Rational& s, const Vec2& v) { return {s * v.x, s * v.y}; }
  friend Vec2 operator/(const Vec2& v, const QuadNum& s) { return {v.x / s, v.y / s}; }
  friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }

  std::string to_string() const { return "(" + x.to_string() + ", " + y.to_string() + ")"; }
};

inline QuadNum cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline QuadNum dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline QuadNum norm_sq(const Vec2& a) { return dot(a, a); }

/// Sign of the turn a -> b -> c.
inline int orientation(const Vec2& a, const Vec2& b, const Vec2& c) {
  return cross(b - a, c - a).sign();
}

/// Twice the signed area of a polygon (positive for counterclockwise).
QuadNum twice_signed_area(const std::vector<Vec2>& poly);

/// True if p lies in the closed segment [a, b].
bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p);

}  // namespace eigenflat
