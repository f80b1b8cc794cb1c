#pragma once

// Straight-line flow traces used to detect cylinders, shared by the counting
// code and the canonical-form extraction.

#include <atomic>
#include <optional>
#include <utility>
#include <vector>

#include "kernel.hpp"

namespace eigenflat::detail {

/// Identity of an unoriented saddle connection: canonical holonomy plus the
/// canonical location of its midpoint.
struct ScKey {
  P2 h;
  Kernel::Location mid;
  friend bool operator==(const ScKey&, const ScKey&) = default;
  friend auto operator<=>(const ScKey&, const ScKey&) = default;
};

/// Developed triangle: index and offset so that developed = local + offset.
struct DevTri {
  int tri;
  P2 offset;
};

/// The leaf just to the left of direction h from a corner, followed until it
/// closes up. Coordinates are developed with the starting vertex at 0.
struct RawTrace {
  P2 m;                     // core curve holonomy
  QQ area;                  // cross(m, top point), times M^2
  std::vector<P2> bottom;   // on the line through 0, in [0, m), increasing
  std::vector<P2> top;      // reduced into the same period, increasing
  std::vector<DevTri> path; // crossed triangles, the start triangle first
};

class StepCounter {
 public:
  StepCounter(std::atomic<std::uint64_t>& used, std::uint64_t budget) : used_(used), budget_(budget) {}
  /// Throws BudgetExceeded once the shared budget runs out.
  void take(std::uint64_t n = 1);
  void flush();
  ~StepCounter() { used_.fetch_add(local_); }

 private:
  std::atomic<std::uint64_t>& used_;
  std::uint64_t budget_;
  std::uint64_t local_ = 0;
};

/// Traces from corner k0 of triangle t0. The direction h must lie in the
/// half-open angle [v1 - v0, v2 - v0) of that corner. Gives up once the leaf
/// has advanced more than max_len along h without closing.
std::optional<RawTrace> trace_left(const Kernel& K, int t0, int k0, const P2& h, double max_len,
                                   StepCounter& steps);

/// Locates a doubled developed point in one of the developed triangles.
std::optional<Kernel::Location> locate(const Kernel& K, const std::vector<DevTri>& path, const P2& p2);

/// Keys of the boundary saddle connections on one side of a traced cylinder,
/// in order along the boundary. Throws CrossCheckFailure if a midpoint
/// cannot be placed.
std::vector<ScKey> boundary_keys(const Kernel& K, const RawTrace& tr, bool top);

/// Whether h lies in the half-open corner angle [a, b) (a, b spanning less
/// than pi).
bool in_corner(const Kernel& K, const P2& a, const P2& b, const P2& h);

}  // namespace eigenflat::detail
