#pragma once

// Exact enumeration of saddle connections and maximal cylinders up to a
// length cutoff, and the counting functions built on them.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eigenflat/builders.hpp"
#include "eigenflat/surface.hpp"

namespace eigenflat {

struct CountOptions {
  int workers = 1;
  /// Maximum number of developed triangles (search nodes and trace steps).
  std::uint64_t budget = 100'000'000;
};

/// A point of a surface: polygon index and position in its coordinates.
/// Points on glued edges are stored on the lower (poly, edge) side.
struct SurfacePoint {
  int poly;
  Vec2 p;
};

struct SaddleConnection {
  /// Unoriented holonomy: upper half plane, or positive x axis.
  Vec2 holonomy;
  QuadNum length_sq;
  double length;
  /// Cone point ids (vertex classes) at the start and end of `holonomy`.
  int source_zero;
  int target_zero;
  /// Triangle where the search started and the corner of that triangle.
  int start_tri;
  int start_corner;
  /// Crossed (triangle, edge) pairs, in order.
  std::vector<std::pair<int, int>> dev_path;
  SurfacePoint midpoint;
  /// 1 if fixed by the involution, 2 if not, 0 if the surface has none.
  int multiplicity;
  /// Index of the involution image in the sorted list, when present.
  std::optional<std::size_t> partner;

  bool joins_distinct_zeros() const { return source_zero != target_zero; }
};

struct Cylinder {
  /// Holonomy of the core curve, unoriented.
  Vec2 holonomy;
  QuadNum circumference_sq;
  QuadNum height_sq;
  QuadNum area;
  double circumference;
  /// Saddle connection indices on the side to the right of `holonomy`
  /// (bottom) and to the left (top), in order along the boundary.
  std::vector<std::size_t> bottom;
  std::vector<std::size_t> top;
};

/// A cylinder found by tracing one direction, before saddle connections
/// are known. Points are in one developed chart: bottom points lie on the
/// line through the first one, ordered along the holonomy and within one
/// period; top points are reduced into the same period.
struct CylinderTrace {
  Vec2 holonomy;
  QuadNum area;
  QuadNum height_sq;
  std::vector<Vec2> bottom_points;
  std::vector<Vec2> top_points;
};

/// All saddle connections with |holonomy| <= L, sorted by squared length,
/// then angle, then midpoint. `L_sq` must be positive.
std::vector<SaddleConnection> enumerate_saddle_connections(const TranslationSurface& s,
                                                           const QuadNum& L_sq,
                                                           const CountOptions& opt = {});

/// Multiplicity of a connection: 1 if the involution fixes it, 2 otherwise,
/// 0 without an involution.
int classify_multiplicity(const TranslationSurface& s, const SaddleConnection& sc);

/// All maximal cylinders with circumference <= L, given the complete list of
/// saddle connections up to L. Sorted like the connections.
std::vector<Cylinder> enumerate_cylinders(const TranslationSurface& s,
                                          const std::vector<SaddleConnection>& scs,
                                          const QuadNum& L_sq, const CountOptions& opt = {});

/// Cylinders in a fixed direction (nonzero vector), each once.
std::vector<CylinderTrace> cylinders_in_direction(const TranslationSurface& s, const Vec2& direction);

/// Which asymptotic constants a surface should be compared against.
enum class SurfaceClass {
  generic_eigenform,
  decagon,
  billiard,
  billiard_decagon,
  unknown,
};

std::string to_string(SurfaceClass c);

struct Targets {
  double c_cyl;
  double c_s1;
  double c_s2;
};

std::optional<Targets> targets_for(SurfaceClass c);

struct CountSummary {
  QuadNum L;
  std::string L_text;
  std::size_t n_cylinders = 0;
  std::size_t n_sc_mult1 = 0;
  std::size_t n_sc_pairs_mult2 = 0;
  /// All connections, same-zero connections included.
  std::size_t n_saddle_connections = 0;
  /// Cylinders whose core curve is horizontal or vertical.
  std::size_t n_hv_cylinders = 0;
  QuadNum area;
  /// N * area / L^2 for the three counts.
  double c_cyl_est = 0;
  double c_s1_est = 0;
  double c_s2_est = 0;
  std::optional<Targets> targets;
};

struct CountResult {
  CountSummary summary;
  std::vector<SaddleConnection> saddle_connections;
  std::vector<Cylinder> cylinders;
};

/// `L` must be positive and lie in the surface's field.
CountResult count_surface(const TranslationSurface& s, const QuadNum& L, SurfaceClass cls,
                          const CountOptions& opt = {});
CountSummary count_summary(const TranslationSurface& s, const QuadNum& L, SurfaceClass cls,
                           const CountOptions& opt = {});

struct ReportRow {
  CountSummary summary;
  double rel_err_cyl = 0;
  double rel_err_s1 = 0;
  double rel_err_s2 = 0;
};

/// One row per cutoff of an increasing grid. The enumeration runs once at
/// the largest cutoff and is filtered for the others.
std::vector<ReportRow> asymptotic_report(const TranslationSurface& s, const std::vector<QuadNum>& L_grid,
                                         SurfaceClass cls, const CountOptions& opt = {});

struct BilliardCounts {
  CountSummary table;    // counts on the table, estimates use the table area
  CountSummary surface;  // counts on the unfolding
  BilliardFamily family;
};

/// Counts on the table P are obtained from the unfolding by identifying
/// objects with the same image in P.
std::vector<BilliardCounts> billiard_report(const BilliardSpec& spec, const std::vector<QuadNum>& L_grid,
                                            const CountOptions& opt = {});
BilliardCounts billiard_counts(const BilliardSpec& spec, const QuadNum& L, const CountOptions& opt = {});

/// Relative error |est - target| / target.
double relative_error(double est, double target);

}  // namespace eigenflat
