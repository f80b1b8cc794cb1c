#pragma once

// Constructions of explicit genus-two surfaces: three-cylinder surfaces and
// their eigenform coordinates, the unfolding of the L-shaped table with a
// barrier, and the decagon.

#include <string>
#include <vector>

#include "eigenflat/prototypes.hpp"
#include "eigenflat/surface.hpp"

namespace eigenflat {

/// Cylinder i has circumference x_i; y_i = (Re, Im) is the period of a curve
/// crossing it from its bottom zero to its top zero, meaningful mod x_i.
struct ThreeCylSpec {
  QuadNum x1, x2, x3;
  Vec2 y1, y2, y3;

  /// Throws unless x_i > 0, x2 = x1 + x3 and Im y_i > 0.
  void validate() const;
  const Discriminant& disc() const { return x1.disc(); }
};

/// Polygon 0 is cylinder 1, polygon 1 (a hexagon) is cylinder 2, polygon 2
/// is cylinder 3. The involution rotates each cylinder about its center.
TranslationSurface build_three_cylinder(const ThreeCylSpec& spec);

/// The canonical eigenform coordinates S(1, lambda, lambda - 1, y1, y2, y3)
/// with y1 solving the eigenform congruence for the given y2, y3.
ThreeCylSpec eigenform_spec(const Prototype& p, const Vec2& y2, const Vec2& y3);
TranslationSurface eigenform_sampler(const Prototype& p, const Vec2& y2, const Vec2& y3);

struct CanonicalForm {
  ThreeCylSpec spec;
  /// True when the input already had x1 = 1, the canonical cylinder order,
  /// and real parts of y_i reduced into [0, x_i).
  bool normalized;
};

/// Scales by 1 / x1, swaps cylinders 1 and 3 if needed so that N(x2 / x1) < 0,
/// and reduces Re y_i into [0, x_i).
CanonicalForm canonical_three_cylinder_form(const ThreeCylSpec& spec);
/// Reads the horizontal cylinder decomposition off the polygons first.
CanonicalForm canonical_three_cylinder_form(const TranslationSurface& s);

/// Evaluates the congruence on a canonical spec.
bool check_eigenform_condition(const ThreeCylSpec& canonical, const Prototype& p);
bool check_eigenform_condition(const TranslationSurface& s, const Prototype& p);

/// Recovers the prototype of a canonical three-cylinder eigenform.
Prototype prototype_of(const ThreeCylSpec& canonical);
Prototype prototype_of(const TranslationSurface& s);

/// L-shaped table [0,a]x[0,1] u [0,1]x[0,b] with a vertical barrier of
/// length t ending at p = (1, 1 - t).
struct BilliardSpec {
  QuadNum a, b, t;
  void validate() const;
};

enum class BilliardFamily {
  eigenform,   // a = x + z sqrt d, b = y + z sqrt d, x + y = 1
  decagon,     // the excluded golden table
  unverified,  // anything else
};

BilliardFamily classify_billiard(const BilliardSpec& spec);
std::string to_string(BilliardFamily f);
QuadNum billiard_table_area(const BilliardSpec& spec);

/// The four-copy unfolding, assembled in its horizontal three-cylinder
/// decomposition.
TranslationSurface build_billiard_unfolding(const BilliardSpec& spec);
/// The cylinder data of the unfolding, before any normalization.
ThreeCylSpec unfolding_spec(const BilliardSpec& spec);
/// Projects a point of polygon `poly` of the unfolding to the table.
Vec2 unfolding_to_table(const BilliardSpec& spec, int poly, const Vec2& p);
/// Table images of the six fixed points of the involution.
std::vector<Vec2> unfolding_weierstrass_images(const BilliardSpec& spec);

/// Opposite sides of an affinely regular decagon glued together; vertices in
/// Q(sqrt 5).
TranslationSurface build_decagon();

/// Unit square with opposite sides glued (one marked point).
TranslationSurface build_square_torus(Discriminant d);

/// Applies (x, y) -> (s x, y / s) to every polygon.
TranslationSurface apply_diagonal(const TranslationSurface& s, const QuadNum& factor);

/// Multiplies every coordinate by a positive scalar.
TranslationSurface scale_surface(const TranslationSurface& s, const QuadNum& factor);

}  // namespace eigenflat
