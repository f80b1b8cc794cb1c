#include <algorithm>
#include <cmath>
#include <map>

#include "eigenflat/counting.hpp"
#include "eigenflat/errors.hpp"
#include "trace.hpp"

namespace eigenflat {

namespace detail {

void StepCounter::take(std::uint64_t n) {
  local_ += n;
  if (local_ >= 4096) flush();
}

void StepCounter::flush() {
  std::uint64_t total = used_.fetch_add(local_) + local_;
  local_ = 0;
  if (total > budget_) {
    throw BudgetExceeded("node budget of " + std::to_string(budget_) + " exhausted");
  }
}

namespace {

P2 scaled(const P2& p, std::int64_t n) {
  // Exact small multiples; n is bounded by the trace length.
  P2 out{{0, 0}, {0, 0}};
  P2 base = n < 0 ? Kernel::neg(p) : p;
  for (std::int64_t k = std::llabs(n); k > 0; --k) out = Kernel::add(out, base);
  return out;
}

}  // namespace

bool in_corner(const Kernel& K, const P2& a, const P2& b, const P2& h) {
  int ca = K.sign(K.cross(a, h));
  if (ca == 0) return K.sign(K.dot(a, h)) > 0;
  return ca > 0 && K.sign(K.cross(h, b)) > 0;
}

std::optional<Kernel::Location> locate(const Kernel& K, const std::vector<DevTri>& path, const P2& p2) {
  const auto& T = K.tris();
  for (const DevTri& d : path) {
    const auto& t = T[d.tri];
    P2 local = Kernel::sub(p2, Kernel::twice(d.offset));
    if (K.in_closed_triangle(Kernel::twice(t.v[0]), Kernel::twice(t.v[1]), Kernel::twice(t.v[2]), local)) {
      return K.canonical_location(t.poly, local);
    }
  }
  return std::nullopt;
}

std::optional<RawTrace> trace_left(const Kernel& K, int t0, int k0, const P2& h, double max_len,
                                   StepCounter& steps) {
  const auto& T = K.tris();
  const double hx = K.dx(h), hy = K.dy(h);
  const double hn = std::hypot(hx, hy);

  RawTrace tr;
  std::vector<P2> on_line;   // right endpoints on the starting line
  std::vector<P2> left_pts;  // left endpoints of crossed edges

  int t = t0, j = (k0 + 1) % 3;
  P2 off = Kernel::neg(T[t0].v[k0]);
  tr.path.push_back({t, off});

  auto note_edge = [&](int ti, int ji, const P2& o) {
    P2 a = Kernel::add(T[ti].v[ji], o);
    P2 b = Kernel::add(T[ti].v[(ji + 1) % 3], o);
    int ua = K.sign(K.cross(h, a));
    if (ua > 0) throw CrossCheckFailure("trace crossed an edge from the wrong side");
    if (ua == 0) on_line.push_back(a);
    left_pts.push_back(b);
    return a;
  };
  note_edge(t, j, off);

  while (true) {
    steps.take();
    const auto& cur = T[t];
    int t2 = cur.nbr_tri[j], j2 = cur.nbr_edge[j];
    const auto& nx = T[t2];
    P2 B = Kernel::add(cur.v[(j + 1) % 3], off);
    P2 off2 = Kernel::sub(B, nx.v[j2]);
    if (t2 == t0 && j2 == (k0 + 2) % 3) {
      P2 o = Kernel::add(nx.v[k0], off2);
      if (K.sign(K.cross(h, o)) == 0) {
        tr.m = o;
        break;
      }
    }
    P2 C = Kernel::add(nx.v[(j2 + 2) % 3], off2);
    j = K.sign(K.cross(h, C)) > 0 ? (j2 + 1) % 3 : (j2 + 2) % 3;
    t = t2;
    off = off2;
    tr.path.push_back({t, off});
    P2 a = note_edge(t, j, off);
    if ((K.dx(a) * hx + K.dy(a) * hy) / hn > max_len) return std::nullopt;
  }

  const P2& m = tr.m;
  if (K.sign(K.dot(h, m)) <= 0) throw CrossCheckFailure("trace closed up backwards");

  // Height: the nearest left endpoint.
  QQ best = K.cross(h, left_pts[0]);
  for (const P2& p : left_pts) {
    QQ u = K.cross(h, p);
    if (K.cmp(u, best) < 0) best = u;
  }
  const QQ hm = K.dot(h, m);
  std::vector<P2> top;
  for (const P2& p : left_pts) {
    if (K.cmp(K.cross(h, p), best) != 0) continue;
    QuadNum ratio = K.to_quad(K.dot(h, p)) / K.to_quad(hm);
    Integer n = floor(ratio);
    if (!n.fits_slong_p()) throw CrossCheckFailure("trace reduction out of range");
    top.push_back(Kernel::sub(p, scaled(m, n.get_si())));
  }
  tr.area = K.cross(m, top[0]);

  auto by_position = [&](const P2& a, const P2& b) { return K.cmp(K.dot(h, a), K.dot(h, b)) < 0; };
  on_line.push_back(P2{{0, 0}, {0, 0}});
  for (const P2& p : on_line) {
    QQ s = K.dot(h, p);
    if (K.sign(s) >= 0 && K.cmp(s, hm) < 0) tr.bottom.push_back(p);
  }
  std::sort(tr.bottom.begin(), tr.bottom.end(), by_position);
  tr.bottom.erase(std::unique(tr.bottom.begin(), tr.bottom.end()), tr.bottom.end());
  std::sort(top.begin(), top.end(), by_position);
  top.erase(std::unique(top.begin(), top.end()), top.end());
  tr.top = std::move(top);
  return tr;
}

std::vector<ScKey> boundary_keys(const Kernel& K, const RawTrace& tr, bool top) {
  const std::vector<P2>& pts = top ? tr.top : tr.bottom;
  std::vector<ScKey> keys;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const P2& a = pts[i];
    P2 b = i + 1 < pts.size() ? pts[i + 1] : Kernel::add(pts[0], tr.m);
    P2 mid2 = Kernel::add(a, b);
    std::optional<Kernel::Location> loc;
    for (int s : {0, 1, -1, 2, -2}) {
      loc = locate(K, tr.path, Kernel::add(mid2, scaled(tr.m, 2 * s)));
      if (loc) break;
    }
    if (!loc) throw CrossCheckFailure("cylinder boundary midpoint not found on the trace");
    keys.push_back({Kernel::sub(b, a), *loc});
  }
  return keys;
}

}  // namespace detail

using detail::Kernel;
using detail::P2;

namespace {

double max_edge_length(const Kernel& K) {
  double best = 0;
  for (const auto& t : K.tris()) {
    for (int j = 0; j < 3; ++j) {
      P2 e = Kernel::sub(t.v[(j + 1) % 3], t.v[j]);
      best = std::max(best, std::hypot(K.dx(e), K.dy(e)));
    }
  }
  return best;
}

detail::ScKey key_of(const Kernel& K, const SaddleConnection& sc) {
  return {K.from_vec(sc.holonomy),
          Kernel::Location{sc.midpoint.poly, K.from_vec(Rational(2) * sc.midpoint.p)}};
}

}  // namespace

std::vector<Cylinder> enumerate_cylinders(const TranslationSurface& s, const std::vector<SaddleConnection>& scs,
                                          const QuadNum& L_sq, const CountOptions& opt) {
  Kernel K(s);
  std::map<detail::ScKey, std::size_t> index;
  for (std::size_t i = 0; i < scs.size(); ++i) index.emplace(key_of(K, scs[i]), i);

  const double L = std::sqrt(std::max(0.0, L_sq.to_double()));
  const double reach = L * (1 + 1e-9) + 2 * max_edge_length(K) + 1e-9;
  std::atomic<std::uint64_t> used{0};
  detail::StepCounter steps(used, opt.budget);

  std::vector<char> done(scs.size(), 0);
  std::vector<Cylinder> out;
  for (std::size_t i = 0; i < scs.size(); ++i) {
    if (done[i]) continue;
    const SaddleConnection& sc = scs[i];
    P2 h = K.from_vec(sc.holonomy);
    auto tr = detail::trace_left(K, sc.start_tri, sc.start_corner, h, reach, steps);
    if (!tr) continue;
    const bool short_enough = K.to_quad(K.dot(tr->m, tr->m)) <= L_sq;
    std::vector<std::size_t> bottom, top;
    bool self_seen = false;
    for (const auto& key : detail::boundary_keys(K, *tr, false)) {
      auto it = index.find(key);
      if (it == index.end()) {
        if (short_enough) throw CrossCheckFailure("cylinder boundary connection missing from the list");
        continue;
      }
      done[it->second] = 1;
      self_seen = self_seen || it->second == i;
      bottom.push_back(it->second);
    }
    if (!self_seen) throw CrossCheckFailure("traced cylinder does not contain its starting connection");
    if (!short_enough) continue;
    for (const auto& key : detail::boundary_keys(K, *tr, true)) {
      auto it = index.find(key);
      if (it == index.end()) throw CrossCheckFailure("cylinder boundary connection missing from the list");
      top.push_back(it->second);
    }
    QuadNum circ_sq = K.to_quad(K.dot(tr->m, tr->m));
    QuadNum area = K.to_quad(tr->area);
    QuadNum height_sq = area * area / circ_sq;
    const double circ = std::sqrt(circ_sq.to_double());
    out.push_back({K.to_vec(tr->m), circ_sq, height_sq, area, circ, std::move(bottom), std::move(top)});
  }
  std::sort(out.begin(), out.end(), [](const Cylinder& a, const Cylinder& b) {
    if (auto c = a.circumference_sq <=> b.circumference_sq; c != 0) return c < 0;
    int turn = cross(a.holonomy, b.holonomy).sign();
    if (turn != 0) return turn > 0;
    return a.bottom < b.bottom;
  });
  return out;
}

std::vector<CylinderTrace> cylinders_in_direction(const TranslationSurface& s, const Vec2& direction) {
  Kernel K(s);
  P2 h = K.from_vec(direction);
  if (K.sign(h.x) == 0 && K.sign(h.y) == 0) throw ValidationError("direction must be nonzero");
  if (!K.canonical_direction(h)) h = Kernel::neg(h);

  double perimeter = 0;
  for (const auto& poly : s.polygons()) {
    for (std::size_t i = 0; i < poly.size(); ++i) {
      Vec2 e = poly[(i + 1) % poly.size()] - poly[i];
      perimeter += std::hypot(e.x.to_double(), e.y.to_double());
    }
  }
  const double reach = 64 * perimeter + 2 * max_edge_length(K);
  std::atomic<std::uint64_t> used{0};
  detail::StepCounter steps(used, 100'000'000);

  std::vector<std::vector<detail::ScKey>> seen;
  std::vector<CylinderTrace> out;
  const auto& T = K.tris();
  for (int t = 0; t < static_cast<int>(T.size()); ++t) {
    for (int k = 0; k < 3; ++k) {
      P2 a = Kernel::sub(T[t].v[(k + 1) % 3], T[t].v[k]);
      P2 b = Kernel::sub(T[t].v[(k + 2) % 3], T[t].v[k]);
      if (!detail::in_corner(K, a, b, h)) continue;
      auto tr = detail::trace_left(K, t, k, h, reach, steps);
      if (!tr) continue;
      auto keys = detail::boundary_keys(K, *tr, false);
      std::sort(keys.begin(), keys.end());
      if (std::find(seen.begin(), seen.end(), keys) != seen.end()) continue;
      seen.push_back(keys);
      QuadNum area = K.to_quad(tr->area);
      CylinderTrace c{K.to_vec(tr->m), area, area * area / K.to_quad(K.dot(tr->m, tr->m)), {}, {}};
      for (const P2& p : tr->bottom) c.bottom_points.push_back(K.to_vec(p));
      for (const P2& p : tr->top) c.top_points.push_back(K.to_vec(p));
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace eigenflat
