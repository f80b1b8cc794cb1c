#include "eigenflat/geometry.hpp"

#include "eigenflat/errors.hpp"

namespace eigenflat {

QuadNum twice_signed_area(const std::vector<Vec2>& poly) {
  if (poly.empty()) throw ValidationError("empty polygon");
  QuadNum total(poly.front().x.disc());
  for (std::size_t i = 0; i < poly.size(); ++i) {
    total += cross(poly[i], poly[(i + 1) % poly.size()]);
  }
  return total;
}

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
  if (cross(b - a, p - a).sign() != 0) return false;
  return dot(p - a, p - b).sign() <= 0;
}

}  // namespace eigenflat
