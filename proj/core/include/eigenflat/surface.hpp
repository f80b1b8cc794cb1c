#pragma once

// Translation surfaces presented as finitely many polygons with edges glued
// in pairs by translations.

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "eigenflat/geometry.hpp"

namespace eigenflat {

/// Edge `edge` of polygon `poly` runs from vertex `edge` to vertex `edge + 1`.
struct EdgeRef {
  int poly;
  int edge;
  friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

struct Gluing {
  EdgeRef a;
  EdgeRef b;
};

/// Sends a point p of polygon `source` to `center - p` in polygon `target`.
struct InvolutionEntry {
  int target;
  Vec2 center;
};

/// Name and period of a homology class (alpha_1, beta_1, ...).
struct HomologyLabel {
  std::string name;
  Vec2 holonomy;
};

/// A class of identified polygon vertices. Total angle is 2 pi (order + 1).
struct ConePoint {
  int id;
  int order;
  std::vector<std::pair<int, int>> corners;  // (poly, vertex)
};

/// A triangle of the internal triangulation, in its polygon's coordinates.
/// Edge j runs from corner j to corner j + 1; across it lies edge
/// `nbr_edge[j]` of triangle `nbr_tri[j]`.
struct Triangle {
  int poly;
  std::array<int, 3> vertex;  // polygon vertex indices, counterclockwise
  std::array<int, 3> nbr_tri;
  std::array<int, 3> nbr_edge;
  /// Polygon edge under triangle edge j, or -1 for an interior diagonal.
  std::array<int, 3> poly_edge;
};

class TranslationSurface {
 public:
  /// Validates the gluing, the cone angles and the involution; throws
  /// ValidationError on failure.
  TranslationSurface(Discriminant d, std::vector<std::vector<Vec2>> polygons,
                     std::vector<Gluing> gluings,
                     std::optional<std::vector<InvolutionEntry>> involution = std::nullopt,
                     std::vector<HomologyLabel> labels = {});

  const Discriminant& disc() const { return d_; }
  const std::vector<std::vector<Vec2>>& polygons() const { return polygons_; }
  const std::vector<Gluing>& gluings() const { return gluings_; }
  const std::optional<std::vector<InvolutionEntry>>& involution() const { return involution_; }
  const std::vector<HomologyLabel>& labels() const { return labels_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  EdgeRef partner(EdgeRef e) const;
  Vec2 edge_vector(EdgeRef e) const;
  const Vec2& vertex(int poly, int v) const { return polygons_[poly][v]; }

  int vertex_class(int poly, int v) const { return corner_class_[poly][v]; }
  const std::vector<ConePoint>& cone_points() const { return cone_points_; }
  /// Cone points of positive order.
  std::vector<ConePoint> zeros() const;
  int genus() const { return genus_; }
  QuadNum area() const;

  const std::vector<Triangle>& triangles() const { return triangles_; }

  /// Image of a point under the involution; sets `poly` to the target polygon.
  Vec2 apply_involution(int& poly, const Vec2& p) const;
  /// Edge index shift: the involution maps edge e of `poly` to edge
  /// (e + shift) of its target.
  int involution_shift(int poly) const { return involution_shift_[poly]; }

 private:
  void validate_polygons();
  void validate_gluings();
  void compute_cone_points();
  void validate_involution();
  void triangulate();

  Discriminant d_;
  std::vector<std::vector<Vec2>> polygons_;
  std::vector<Gluing> gluings_;
  std::optional<std::vector<InvolutionEntry>> involution_;
  std::vector<HomologyLabel> labels_;
  std::vector<std::string> warnings_;

  std::vector<std::vector<EdgeRef>> partner_;
  std::vector<std::vector<int>> corner_class_;
  std::vector<ConePoint> cone_points_;
  std::vector<int> involution_shift_;
  std::vector<Triangle> triangles_;
  int genus_ = 0;
};

}  // namespace eigenflat
