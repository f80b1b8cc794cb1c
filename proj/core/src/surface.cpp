#include "eigenflat/surface.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <tuple>

#include "eigenflat/errors.hpp"

namespace eigenflat {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

bool segments_cross(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  // Closed segments [a, b] and [c, d] share a point.
  int o1 = orientation(a, b, c), o2 = orientation(a, b, d);
  int o3 = orientation(c, d, a), o4 = orientation(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  return (o1 == 0 && on_segment(a, b, c)) || (o2 == 0 && on_segment(a, b, d)) ||
         (o3 == 0 && on_segment(c, d, a)) || (o4 == 0 && on_segment(c, d, b));
}

bool in_closed_triangle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& p) {
  return orientation(a, b, p) >= 0 && orientation(b, c, p) >= 0 && orientation(c, a, p) >= 0;
}

double corner_angle(const Vec2& prev, const Vec2& v, const Vec2& next) {
  double ux = (next.x - v.x).to_double(), uy = (next.y - v.y).to_double();
  double wx = (prev.x - v.x).to_double(), wy = (prev.y - v.y).to_double();
  double ang = std::atan2(ux * wy - uy * wx, ux * wx + uy * wy);
  if (ang <= 0) ang += 2 * std::numbers::pi;
  return ang;
}

}  // namespace

TranslationSurface::TranslationSurface(Discriminant d, std::vector<std::vector<Vec2>> polygons,
                                       std::vector<Gluing> gluings,
                                       std::optional<std::vector<InvolutionEntry>> involution,
                                       std::vector<HomologyLabel> labels)
    : d_(d),
      polygons_(std::move(polygons)),
      gluings_(std::move(gluings)),
      involution_(std::move(involution)),
      labels_(std::move(labels)) {
  validate_polygons();
  validate_gluings();
  compute_cone_points();
  if (involution_) validate_involution();
  triangulate();
}

void TranslationSurface::validate_polygons() {
  if (polygons_.empty()) throw ValidationError("surface has no polygons");
  for (std::size_t i = 0; i < polygons_.size(); ++i) {
    auto& poly = polygons_[i];
    const std::string where = "polygon " + std::to_string(i);
    if (poly.size() < 3) throw ValidationError(where + " has fewer than 3 vertices");
    for (Vec2& v : poly) {
      v.x = v.x.rebased(d_);
      v.y = v.y.rebased(d_);
    }
    if (twice_signed_area(poly).sign() <= 0) {
      throw ValidationError(where + " is not counterclockwise with positive area");
    }
    const std::size_t n = poly.size();
    for (std::size_t e = 0; e < n; ++e) {
      if (poly[e] == poly[(e + 1) % n]) throw ValidationError(where + " has a zero-length edge");
      for (std::size_t f = e + 1; f < n; ++f) {
        bool adjacent = (f == e + 1) || (e == 0 && f == n - 1);
        if (adjacent) continue;
        if (segments_cross(poly[e], poly[(e + 1) % n], poly[f], poly[(f + 1) % n])) {
          throw ValidationError(where + " is not simple");
        }
      }
    }
  }
}

void TranslationSurface::validate_gluings() {
  partner_.assign(polygons_.size(), {});
  for (std::size_t i = 0; i < polygons_.size(); ++i) {
    partner_[i].assign(polygons_[i].size(), EdgeRef{-1, -1});
  }
  auto check_ref = [&](const EdgeRef& r) {
    if (r.poly < 0 || r.poly >= static_cast<int>(polygons_.size()) || r.edge < 0 ||
        r.edge >= static_cast<int>(polygons_[r.poly].size())) {
      throw ValidationError("gluing refers to a missing edge");
    }
    if (partner_[r.poly][r.edge].poly != -1) {
      throw ValidationError("edge (" + std::to_string(r.poly) + "," + std::to_string(r.edge) +
                            ") is glued more than once");
    }
  };
  for (const Gluing& g : gluings_) {
    check_ref(g.a);
    partner_[g.a.poly][g.a.edge] = g.b;
    check_ref(g.b);
    partner_[g.b.poly][g.b.edge] = g.a;
    if (!(edge_vector(g.a) == -edge_vector(g.b))) {
      throw ValidationError("glued edges (" + std::to_string(g.a.poly) + "," +
                            std::to_string(g.a.edge) + ") and (" + std::to_string(g.b.poly) +
                            "," + std::to_string(g.b.edge) + ") are not translates");
    }
  }
  for (std::size_t i = 0; i < polygons_.size(); ++i) {
    for (std::size_t e = 0; e < polygons_[i].size(); ++e) {
      if (partner_[i][e].poly == -1) {
        throw ValidationError("edge (" + std::to_string(i) + "," + std::to_string(e) +
                              ") is not glued");
      }
    }
  }
}

EdgeRef TranslationSurface::partner(EdgeRef e) const { return partner_[e.poly][e.edge]; }

Vec2 TranslationSurface::edge_vector(EdgeRef e) const {
  const auto& poly = polygons_[e.poly];
  return poly[(e.edge + 1) % poly.size()] - poly[e.edge];
}

void TranslationSurface::compute_cone_points() {
  std::vector<std::size_t> base(polygons_.size() + 1, 0);
  for (std::size_t i = 0; i < polygons_.size(); ++i) base[i + 1] = base[i] + polygons_[i].size();
  UnionFind corners(base.back());
  UnionFind faces(polygons_.size());
  for (const Gluing& g : gluings_) {
    const int na = static_cast<int>(polygons_[g.a.poly].size());
    const int nb = static_cast<int>(polygons_[g.b.poly].size());
    corners.unite(base[g.a.poly] + (g.a.edge + 1) % na, base[g.b.poly] + g.b.edge);
    corners.unite(base[g.a.poly] + g.a.edge, base[g.b.poly] + (g.b.edge + 1) % nb);
    faces.unite(g.a.poly, g.b.poly);
  }
  for (std::size_t i = 0; i < polygons_.size(); ++i) {
    if (faces.find(i) != 0) throw ValidationError("surface is not connected");
  }

  std::map<std::size_t, int> class_of_root;
  corner_class_.assign(polygons_.size(), {});
  std::vector<double> angle;
  for (std::size_t i = 0; i < polygons_.size(); ++i) {
    const auto& poly = polygons_[i];
    const std::size_t n = poly.size();
    for (std::size_t v = 0; v < n; ++v) {
      std::size_t root = corners.find(base[i] + v);
      auto [it, fresh] = class_of_root.emplace(root, static_cast<int>(cone_points_.size()));
      if (fresh) {
        cone_points_.push_back(ConePoint{it->second, 0, {}});
        angle.push_back(0.0);
      }
      corner_class_[i].push_back(it->second);
      cone_points_[it->second].corners.emplace_back(static_cast<int>(i), static_cast<int>(v));
      angle[it->second] += corner_angle(poly[(v + n - 1) % n], poly[v], poly[(v + 1) % n]);
    }
  }

  int total_order = 0;
  for (ConePoint& cp : cone_points_) {
    double turns = angle[cp.id] / (2 * std::numbers::pi);
    long k = std::lround(turns);
    if (k < 1 || std::abs(turns - static_cast<double>(k)) > 1e-6) {
      throw ValidationError("cone angle at vertex class " + std::to_string(cp.id) +
                            " is not a positive multiple of 2 pi");
    }
    cp.order = static_cast<int>(k) - 1;
    total_order += cp.order;
    if (cp.order == 0) {
      warnings_.push_back("vertex class " + std::to_string(cp.id) +
                          " has angle 2 pi and is treated as a marked point");
    }
  }

  const long euler = static_cast<long>(cone_points_.size()) - static_cast<long>(gluings_.size()) +
                     static_cast<long>(polygons_.size());
  if (euler > 2 || euler % 2 != 0) throw ValidationError("impossible Euler characteristic");
  genus_ = static_cast<int>((2 - euler) / 2);
  if (total_order != 2 * genus_ - 2) {
    throw ValidationError("cone angles do not satisfy Gauss-Bonnet");
  }
}

std::vector<ConePoint> TranslationSurface::zeros() const {
  std::vector<ConePoint> out;
  for (const ConePoint& cp : cone_points_) {
    if (cp.order > 0) out.push_back(cp);
  }
  return out;
}

QuadNum TranslationSurface::area() const {
  QuadNum total(d_);
  for (const auto& poly : polygons_) total += twice_signed_area(poly);
  return total / Rational(2);
}

void TranslationSurface::validate_involution() {
  auto& inv = *involution_;
  if (inv.size() != polygons_.size()) {
    throw ValidationError("involution must list one entry per polygon");
  }
  involution_shift_.assign(polygons_.size(), 0);
  for (std::size_t i = 0; i < polygons_.size(); ++i) {
    InvolutionEntry& entry = inv[i];
    entry.center.x = entry.center.x.rebased(d_);
    entry.center.y = entry.center.y.rebased(d_);
    const std::string where = "involution on polygon " + std::to_string(i);
    if (entry.target < 0 || entry.target >= static_cast<int>(polygons_.size())) {
      throw ValidationError(where + ": bad target");
    }
    const auto& src = polygons_[i];
    const auto& dst = polygons_[entry.target];
    if (src.size() != dst.size()) throw ValidationError(where + ": vertex count mismatch");
    const Vec2 image0 = entry.center - src[0];
    int shift = -1;
    for (std::size_t s = 0; s < dst.size(); ++s) {
      if (dst[s] == image0) shift = static_cast<int>(s);
    }
    if (shift < 0) throw ValidationError(where + ": does not map vertices to vertices");
    for (std::size_t v = 0; v < src.size(); ++v) {
      if (!(dst[(v + shift) % dst.size()] == entry.center - src[v])) {
        throw ValidationError(where + ": does not map the polygon onto its target");
      }
    }
    involution_shift_[i] = shift;
  }
  for (std::size_t i = 0; i < polygons_.size(); ++i) {
    const InvolutionEntry& entry = inv[i];
    const InvolutionEntry& back = inv[entry.target];
    if (back.target != static_cast<int>(i) || !(back.center == entry.center)) {
      throw ValidationError("involution is not an involution on polygon " + std::to_string(i));
    }
  }
  auto image = [&](EdgeRef e) {
    const int n = static_cast<int>(polygons_[e.poly].size());
    return EdgeRef{inv[e.poly].target, (e.edge + involution_shift_[e.poly]) % n};
  };
  for (const Gluing& g : gluings_) {
    if (partner(image(g.a)) != image(g.b)) {
      throw ValidationError("involution does not respect the gluing");
    }
  }
}

Vec2 TranslationSurface::apply_involution(int& poly, const Vec2& p) const {
  if (!involution_) throw ValidationError("surface has no involution");
  const InvolutionEntry& entry = (*involution_)[poly];
  poly = entry.target;
  return entry.center - p;
}

void TranslationSurface::triangulate() {
  // Ear clipping per polygon with exact predicates; collinear vertices are
  // kept as vertices of the triangulation.
  struct Pending {
    int tri;
    int edge;
  };
  std::map<std::pair<int, int>, Pending> boundary;  // (poly, polygon edge) -> triangle edge
  std::map<std::tuple<int, int, int>, Pending> diagonals;  // (poly, from, to)

  for (std::size_t pi = 0; pi < polygons_.size(); ++pi) {
    const auto& poly = polygons_[pi];
    const int n = static_cast<int>(poly.size());
    std::vector<int> ring(n);
    std::iota(ring.begin(), ring.end(), 0);
    while (ring.size() >= 3) {
      const std::size_t m = ring.size();
      bool clipped = false;
      for (std::size_t k = 0; k < m && !clipped; ++k) {
        int a = ring[(k + m - 1) % m], b = ring[k], c = ring[(k + 1) % m];
        if (orientation(poly[a], poly[b], poly[c]) <= 0) continue;
        bool blocked = false;
        if (m > 3) {
          for (int other : ring) {
            if (other == a || other == b || other == c) continue;
            if (in_closed_triangle(poly[a], poly[b], poly[c], poly[other])) {
              blocked = true;
              break;
            }
          }
        }
        if (blocked) continue;
        Triangle t;
        t.poly = static_cast<int>(pi);
        t.vertex = {a, b, c};
        t.nbr_tri = {-1, -1, -1};
        t.nbr_edge = {-1, -1, -1};
        t.poly_edge = {-1, -1, -1};
        triangles_.push_back(t);
        const int ti = static_cast<int>(triangles_.size()) - 1;
        for (int j = 0; j < 3; ++j) {
          int from = t.vertex[j], to = t.vertex[(j + 1) % 3];
          if ((from + 1) % n == to) {
            triangles_[ti].poly_edge[j] = from;
            boundary[{static_cast<int>(pi), from}] = {ti, j};
          } else {
            auto rev = diagonals.find({static_cast<int>(pi), to, from});
            if (rev != diagonals.end()) {
              triangles_[ti].nbr_tri[j] = rev->second.tri;
              triangles_[ti].nbr_edge[j] = rev->second.edge;
              triangles_[rev->second.tri].nbr_tri[rev->second.edge] = ti;
              triangles_[rev->second.tri].nbr_edge[rev->second.edge] = j;
              diagonals.erase(rev);
            } else {
              diagonals[{static_cast<int>(pi), from, to}] = {ti, j};
            }
          }
        }
        ring.erase(ring.begin() + static_cast<long>(k));
        clipped = true;
      }
      if (!clipped) throw ValidationError("could not triangulate polygon " + std::to_string(pi));
    }
  }
  if (!diagonals.empty()) throw ValidationError("internal triangulation mismatch");
  for (Triangle& t : triangles_) {
    for (int j = 0; j < 3; ++j) {
      if (t.poly_edge[j] < 0) continue;
      EdgeRef other = partner(EdgeRef{t.poly, t.poly_edge[j]});
      const Pending& p = boundary.at({other.poly, other.edge});
      t.nbr_tri[j] = p.tri;
      t.nbr_edge[j] = p.edge;
    }
  }
}

}  // namespace eigenflat
