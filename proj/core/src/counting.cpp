#include "eigenflat/counting.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "eigenflat/errors.hpp"
#include "eigenflat/invariants.hpp"
#include "trace.hpp"

namespace eigenflat {

using detail::DevTri;
using detail::Kernel;
using detail::P2;
using detail::QQ;
using detail::ScKey;

namespace {

struct RawSc {
  ScKey key;
  QQ len2;
  int src, tgt, tri, corner;
  std::vector<std::pair<int, int>> path;
  int mult = 0;
};

struct Frame {
  int tri;
  int edge;
  P2 A, B;  // developed endpoints of the edge being crossed (right, left)
  P2 r, l;  // visibility cone
  int depth;
};

class CornerSearch {
 public:
  CornerSearch(const Kernel& K, const QuadNum& L_sq, detail::StepCounter& steps)
      : K_(K), L_sq_(L_sq), steps_(steps) {
    L2_ = std::max(0.0, L_sq.to_double());
    L_ = std::sqrt(L2_);
  }

  void run(int t, int k, std::vector<RawSc>& out) {
    const auto& T = K_.tris();
    const auto& tri = T[t];
    const P2 O = tri.v[k];
    const int src = tri.cls[k];
    path_.clear();
    path_.push_back({t, Kernel::neg(O)});
    edges_.clear();
    edges_.push_back({t, -1});

    P2 A = Kernel::sub(tri.v[(k + 1) % 3], O);
    P2 B = Kernel::sub(tri.v[(k + 2) % 3], O);
    if (K_.canonical_direction(A) && within(A)) emit(A, src, tri.cls[(k + 1) % 3], t, k, 0, out);

    std::vector<Frame> stack;
    stack.push_back({t, (k + 1) % 3, A, B, A, B, 0});
    while (!stack.empty()) {
      Frame f = stack.back();
      stack.pop_back();
      steps_.take();
      if (beyond_reach(f)) continue;

      path_.resize(f.depth + 1);
      edges_.resize(f.depth + 1);
      const auto& cur = T[f.tri];
      const int t2 = cur.nbr_tri[f.edge], j2 = cur.nbr_edge[f.edge];
      const auto& nx = T[t2];
      const P2 off2 = Kernel::sub(f.B, nx.v[j2]);
      path_.push_back({t2, off2});
      edges_.push_back({f.tri, f.edge});
      const int jc = (j2 + 2) % 3;
      const P2 C = Kernel::add(nx.v[jc], off2);
      const int sr = K_.sign(K_.cross(f.r, C));
      const int sl = K_.sign(K_.cross(C, f.l));
      const int d = f.depth + 1;
      if (sr > 0 && sl > 0) {
        if (K_.canonical_direction(C) && within(C)) emit(C, src, nx.cls[jc], t, k, d, out);
        stack.push_back({t2, jc, C, f.B, C, f.l, d});
        stack.push_back({t2, (j2 + 1) % 3, f.A, C, f.r, C, d});
      } else if (sr <= 0) {
        stack.push_back({t2, jc, C, f.B, f.r, f.l, d});
      } else {
        stack.push_back({t2, (j2 + 1) % 3, f.A, C, f.r, f.l, d});
      }
    }
  }

 private:
  bool within(const P2& c) const {
    double x = K_.dx(c), y = K_.dy(c);
    double n2 = x * x + y * y;
    if (n2 < L2_ * (1 - 1e-9)) return true;
    if (n2 > L2_ * (1 + 1e-9)) return false;
    return K_.to_quad(K_.dot(c, c)) <= L_sq_;
  }

  // Lower bound on the distance to any point beyond the edge inside the cone,
  // compared against L with a relative margin.
  bool beyond_reach(const Frame& f) const {
    const double ax = K_.dx(f.A), ay = K_.dy(f.A), bx = K_.dx(f.B), by = K_.dy(f.B);
    double dist = segment_distance(ax, ay, bx, by);
    const double ex = bx - ax, ey = by - ay;
    const double en = std::hypot(ex, ey);
    const double num = ax * ey - ay * ex;  // cross(A, B - A)
    auto hit = [&](const P2& d, double& px, double& py) {
      double dx = K_.dx(d), dy = K_.dy(d);
      double den = dx * ey - dy * ex;
      if (std::fabs(den) < 1e-6 * std::hypot(dx, dy) * en) return false;
      double s = num / den;
      px = s * dx;
      py = s * dy;
      return true;
    };
    double rx, ry, lx, ly;
    if (hit(f.r, rx, ry) && hit(f.l, lx, ly)) dist = std::max(dist, segment_distance(rx, ry, lx, ly));
    return dist > L_ * (1 + 1e-7) + 1e-12;
  }

  static double segment_distance(double ax, double ay, double bx, double by) {
    const double ex = bx - ax, ey = by - ay;
    const double len2 = ex * ex + ey * ey;
    double u = len2 > 0 ? -(ax * ex + ay * ey) / len2 : 0;
    u = std::clamp(u, 0.0, 1.0);
    return std::hypot(ax + u * ex, ay + u * ey);
  }

  void emit(const P2& c, int src, int tgt, int t, int k, int depth, std::vector<RawSc>& out) {
    std::vector<DevTri> chain(path_.begin(), path_.begin() + depth + 1);
    auto mid = detail::locate(K_, chain, c);
    if (!mid) throw CrossCheckFailure("saddle connection midpoint not found on its path");
    RawSc sc;
    sc.key = {c, *mid};
    sc.len2 = K_.dot(c, c);
    sc.src = src;
    sc.tgt = tgt;
    sc.tri = t;
    sc.corner = k;
    for (int i = 1; i <= depth; ++i) sc.path.push_back(edges_[i]);
    if (K_.has_involution()) sc.mult = K_.involution_image(*mid) == *mid ? 1 : 2;
    out.push_back(std::move(sc));
  }

  const Kernel& K_;
  QuadNum L_sq_;
  double L2_, L_;
  detail::StepCounter& steps_;
  std::vector<DevTri> path_;
  std::vector<std::pair<int, int>> edges_;  // (triangle, edge) crossed to reach path_[i]
};

QuadNum in_field(const QuadNum& q, const Discriminant& d) { return q.rebased(d); }


}  // namespace

std::vector<SaddleConnection> enumerate_saddle_connections(const TranslationSurface& s, const QuadNum& L_sq_in,
                                                           const CountOptions& opt) {
  const QuadNum L_sq = in_field(L_sq_in, s.disc());
  if (L_sq.sign() <= 0) throw ValidationError("length cutoff must be positive");
  Kernel K(s);
  const auto& T = K.tris();
  std::vector<std::pair<int, int>> corners;
  for (int t = 0; t < static_cast<int>(T.size()); ++t) {
    for (int k = 0; k < 3; ++k) corners.push_back({t, k});
  }

  std::atomic<std::uint64_t> used{0};
  std::atomic<std::size_t> next{0};
  const int workers = std::max(1, std::min<int>(opt.workers, static_cast<int>(corners.size())));
  std::vector<std::vector<RawSc>> found(workers);
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](int w) {
    try {
      detail::StepCounter steps(used, opt.budget);
      CornerSearch search(K, L_sq, steps);
      for (std::size_t i = next++; i < corners.size(); i = next++) {
        search.run(corners[i].first, corners[i].second, found[w]);
      }
      steps.flush();
    } catch (...) {
      errors[w] = std::current_exception();
      next = corners.size();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<RawSc> all;
  for (auto& v : found) {
    for (auto& sc : v) all.push_back(std::move(sc));
  }
  std::sort(all.begin(), all.end(), [&](const RawSc& a, const RawSc& b) {
    int c = K.cmp(a.len2, b.len2);
    if (c != 0) return c < 0;
    int turn = K.sign(K.cross(a.key.h, b.key.h));
    if (turn != 0) return turn > 0;
    return a.key < b.key;
  });
  for (std::size_t i = 1; i < all.size(); ++i) {
    if (all[i].key == all[i - 1].key) throw CrossCheckFailure("saddle connection enumerated twice");
  }

  std::map<ScKey, std::size_t> index;
  for (std::size_t i = 0; i < all.size(); ++i) index.emplace(all[i].key, i);

  std::vector<SaddleConnection> out;
  out.reserve(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    RawSc& r = all[i];
    SaddleConnection sc{K.to_vec(r.key.h),
                        K.to_quad(r.len2),
                        0.0,
                        r.src,
                        r.tgt,
                        r.tri,
                        r.corner,
                        std::move(r.path),
                        {r.key.mid.poly, Rational(1, 2) * K.to_vec(r.key.mid.p2)},
                        r.mult,
                        std::nullopt};
    sc.length = std::sqrt(sc.length_sq.to_double());
    if (r.mult == 2) {
      auto it = index.find(ScKey{r.key.h, K.involution_image(r.key.mid)});
      if (it == index.end()) throw CrossCheckFailure("involution image of a saddle connection is missing");
      sc.partner = it->second;
    } else if (r.mult == 1) {
      sc.partner = i;
    }
    out.push_back(std::move(sc));
  }
  return out;
}

int classify_multiplicity(const TranslationSurface& s, const SaddleConnection& sc) {
  if (!s.involution()) return 0;
  Kernel K(s);
  Kernel::Location loc = K.canonical_location(sc.midpoint.poly, K.from_vec(Rational(2) * sc.midpoint.p));
  return K.involution_image(loc) == loc ? 1 : 2;
}

std::string to_string(SurfaceClass c) {
  switch (c) {
    case SurfaceClass::generic_eigenform: return "generic-eigenform";
    case SurfaceClass::decagon: return "decagon-curve";
    case SurfaceClass::billiard: return "billiard";
    case SurfaceClass::billiard_decagon: return "billiard-decagon-curve";
    case SurfaceClass::unknown: return "unknown";
  }
  return "unknown";
}

std::optional<Targets> targets_for(SurfaceClass c) {
  switch (c) {
    case SurfaceClass::generic_eigenform: {
      auto k = siegel_veech(Discriminant(5));
      return Targets{k.surface_cyl.value(), k.surface_s1.value(), k.surface_s2.value()};
    }
    case SurfaceClass::decagon: {
      auto k = decagon_constants();
      return Targets{k.surface_cyl.value(), k.surface_s1.value(), k.surface_s2.value()};
    }
    case SurfaceClass::billiard: {
      auto k = siegel_veech(Discriminant(5));
      return Targets{k.billiard_cyl.value(1.0), k.billiard_s1.value(1.0), k.billiard_s2.value(1.0)};
    }
    case SurfaceClass::billiard_decagon: {
      auto k = decagon_constants();
      return Targets{k.billiard_cyl.value(1.0), k.billiard_s1.value(1.0), k.billiard_s2.value(1.0)};
    }
    case SurfaceClass::unknown: return std::nullopt;
  }
  return std::nullopt;
}

double relative_error(double est, double target) { return std::fabs(est - target) / std::fabs(target); }

namespace {

bool is_hv(const Vec2& v) { return v.x.is_zero() || v.y.is_zero(); }

void fill_estimates(CountSummary& s) {
  const double L = s.L.to_double();
  const double k = s.area.to_double() / (L * L);
  s.c_cyl_est = static_cast<double>(s.n_cylinders) * k;
  s.c_s1_est = static_cast<double>(s.n_sc_mult1) * k;
  s.c_s2_est = static_cast<double>(s.n_sc_pairs_mult2) * k;
}

CountSummary summarize(const TranslationSurface& s, const CountResult& r, const QuadNum& L, SurfaceClass cls) {
  const QuadNum L_sq = L * L;
  CountSummary out{L, L.to_string(), 0, 0, 0, 0, 0, s.area(), 0, 0, 0, std::nullopt};
  std::size_t mult2 = 0;
  for (const auto& sc : r.saddle_connections) {
    if (sc.length_sq > L_sq) break;
    ++out.n_saddle_connections;
    if (!sc.joins_distinct_zeros()) continue;
    if (sc.multiplicity == 1) ++out.n_sc_mult1;
    if (sc.multiplicity == 2) ++mult2;
  }
  if (mult2 % 2 != 0) throw CrossCheckFailure("multiplicity-two connections do not pair up");
  out.n_sc_pairs_mult2 = mult2 / 2;
  for (const auto& c : r.cylinders) {
    if (c.circumference_sq > L_sq) break;
    ++out.n_cylinders;
    if (is_hv(c.holonomy)) ++out.n_hv_cylinders;
  }
  fill_estimates(out);
  out.targets = targets_for(cls);
  return out;
}

QuadNum positive_cutoff(const QuadNum& L, const Discriminant& d) {
  QuadNum q = L.rebased(d);
  if (q.sign() <= 0) throw ValidationError("length cutoff must be positive");
  return q;
}

}  // namespace

CountResult count_surface(const TranslationSurface& s, const QuadNum& L_in, SurfaceClass cls,
                          const CountOptions& opt) {
  const QuadNum L = positive_cutoff(L_in, s.disc());
  const QuadNum L_sq = L * L;
  auto scs = enumerate_saddle_connections(s, L_sq, opt);
  auto cyls = enumerate_cylinders(s, scs, L_sq, opt);
  CountResult r{CountSummary{L, L.to_string(), 0, 0, 0, 0, 0, s.area(), 0, 0, 0, std::nullopt}, std::move(scs), std::move(cyls)};
  r.summary = summarize(s, r, L, cls);
  return r;
}

CountSummary count_summary(const TranslationSurface& s, const QuadNum& L, SurfaceClass cls,
                           const CountOptions& opt) {
  return count_surface(s, L, cls, opt).summary;
}

namespace {

std::vector<QuadNum> checked_grid(const std::vector<QuadNum>& grid, const Discriminant& d) {
  if (grid.empty()) throw ValidationError("empty length grid");
  std::vector<QuadNum> out;
  for (const auto& L : grid) out.push_back(positive_cutoff(L, d));
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (!(out[i - 1] < out[i])) throw ValidationError("length grid must be increasing");
  }
  return out;
}

void fill_errors(ReportRow& row) {
  if (!row.summary.targets) return;
  row.rel_err_cyl = relative_error(row.summary.c_cyl_est, row.summary.targets->c_cyl);
  row.rel_err_s1 = relative_error(row.summary.c_s1_est, row.summary.targets->c_s1);
  row.rel_err_s2 = relative_error(row.summary.c_s2_est, row.summary.targets->c_s2);
}

}  // namespace

std::vector<ReportRow> asymptotic_report(const TranslationSurface& s, const std::vector<QuadNum>& L_grid,
                                         SurfaceClass cls, const CountOptions& opt) {
  const auto grid = checked_grid(L_grid, s.disc());
  CountResult full = count_surface(s, grid.back(), cls, opt);
  std::vector<ReportRow> rows;
  for (const auto& L : grid) {
    ReportRow row{summarize(s, full, L, cls)};
    fill_errors(row);
    rows.push_back(row);
  }
  return rows;
}

namespace {

std::string point_key(const Vec2& p) { return p.x.to_string() + "," + p.y.to_string(); }

std::string direction_key(const Vec2& h) {
  QuadNum x = h.x.sign() < 0 ? -h.x : h.x;
  QuadNum y = h.y.sign() < 0 ? -h.y : h.y;
  return point_key({x, y});
}

CountSummary table_summary(const BilliardSpec& spec, const CountResult& r, const QuadNum& L, SurfaceClass cls) {
  const QuadNum L_sq = L * L;
  CountSummary out{L, L.to_string(), 0, 0, 0, 0, 0, billiard_table_area(spec), 0, 0, 0, std::nullopt};
  auto image = [&](const SurfacePoint& m) { return point_key(unfolding_to_table(spec, m.poly, m.p)); };

  std::set<std::string> m1, m2, all;
  for (const auto& sc : r.saddle_connections) {
    if (sc.length_sq > L_sq) break;
    std::string key = direction_key(sc.holonomy) + "|" + image(sc.midpoint);
    all.insert(key);
    if (!sc.joins_distinct_zeros()) continue;
    (sc.multiplicity == 1 ? m1 : m2).insert(key);
  }
  std::set<std::string> cyl;
  std::set<std::string> hv;
  for (const auto& c : r.cylinders) {
    if (c.circumference_sq > L_sq) break;
    std::vector<std::string> parts;
    for (std::size_t i : c.bottom) parts.push_back(image(r.saddle_connections[i].midpoint));
    for (std::size_t i : c.top) parts.push_back(image(r.saddle_connections[i].midpoint));
    std::sort(parts.begin(), parts.end());
    std::string key = direction_key(c.holonomy);
    for (const auto& p : parts) key += "|" + p;
    cyl.insert(key);
    if (is_hv(c.holonomy)) hv.insert(key);
  }
  out.n_cylinders = cyl.size();
  out.n_hv_cylinders = hv.size();
  out.n_sc_mult1 = m1.size();
  out.n_sc_pairs_mult2 = m2.size();
  out.n_saddle_connections = all.size();
  fill_estimates(out);
  out.targets = targets_for(cls);
  return out;
}

}  // namespace

std::vector<BilliardCounts> billiard_report(const BilliardSpec& spec, const std::vector<QuadNum>& L_grid,
                                            const CountOptions& opt) {
  const BilliardFamily family = classify_billiard(spec);
  const TranslationSurface U = build_billiard_unfolding(spec);
  const auto grid = checked_grid(L_grid, U.disc());
  SurfaceClass surface_cls = SurfaceClass::unknown, table_cls = SurfaceClass::unknown;
  if (family == BilliardFamily::eigenform) {
    surface_cls = SurfaceClass::generic_eigenform;
    table_cls = SurfaceClass::billiard;
  } else if (family == BilliardFamily::decagon) {
    surface_cls = SurfaceClass::decagon;
    table_cls = SurfaceClass::billiard_decagon;
  }
  CountResult full = count_surface(U, grid.back(), surface_cls, opt);
  std::vector<BilliardCounts> out;
  for (const auto& L : grid) {
    out.push_back({table_summary(spec, full, L, table_cls), summarize(U, full, L, surface_cls), family});
  }
  return out;
}

BilliardCounts billiard_counts(const BilliardSpec& spec, const QuadNum& L, const CountOptions& opt) {
  return billiard_report(spec, {L}, opt).front();
}

}  // namespace eigenflat
