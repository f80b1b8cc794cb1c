#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "eigenflat/errors.hpp"

namespace eigenflat::oracle {

namespace {

struct D2 {
  double x, y;
  D2 operator+(D2 o) const { return {x + o.x, y + o.y}; }
  D2 operator-(D2 o) const { return {x - o.x, y - o.y}; }
  D2 operator*(double s) const { return {x * s, y * s}; }
};
double dcross(D2 a, D2 b) { return a.x * b.y - a.y * b.x; }
double ddot(D2 a, D2 b) { return a.x * b.x + a.y * b.y; }
double dnorm(D2 a) { return std::hypot(a.x, a.y); }
D2 to_d(const Vec2& v) { return {v.x.to_double(), v.y.to_double()}; }

double seg_dist(D2 a, D2 b) {
  D2 e = b - a;
  double len2 = ddot(e, e);
  double t = len2 > 0 ? std::clamp(-ddot(a, e) / len2, 0.0, 1.0) : 0.0;
  return dnorm(a + e * t);
}

bool canonical(const Vec2& w) { return w.y.sign() > 0 || (w.y.sign() == 0 && w.x.sign() > 0); }

class Surface {
 public:
  explicit Surface(const TranslationSurface& s) : s_(s) {
    for (const auto& poly : s.polygons()) {
      std::vector<D2> pd;
      for (const Vec2& v : poly) pd.push_back(to_d(v));
      polys_d_.push_back(pd);
      const std::size_t n = poly.size();
      for (std::size_t k = 0; k < n; ++k) {
        Vec2 e1 = poly[(k + 1) % n] - poly[k];
        Vec2 e2 = poly[(k + 2) % n] - poly[(k + 1) % n];
        if (cross(e1, e2).sign() < 0) throw ValidationError("reference search needs convex polygons");
      }
    }
  }

  const TranslationSurface& s() const { return s_; }
  int n(int p) const { return static_cast<int>(s_.polygons()[p].size()); }
  const Vec2& V(int p, int k) const { return s_.polygons()[p][((k % n(p)) + n(p)) % n(p)]; }
  D2 Vd(int p, int k) const { return polys_d_[p][((k % n(p)) + n(p)) % n(p)]; }

  // Crossing edge k of p: coordinates in the partner are coordinates in p
  // plus this shift.
  Vec2 shift(int p, int k, EdgeRef& to) const {
    to = s_.partner({p, k});
    return V(to.poly, to.edge + 1) - V(p, k);
  }
  D2 shift_d(int p, int k, EdgeRef& to) const {
    to = s_.partner({p, k});
    return Vd(to.poly, to.edge + 1) - Vd(p, k);
  }

 private:
  const TranslationSurface& s_;
  std::vector<std::vector<D2>> polys_d_;
};

// A point of the surface written on the smallest (poly, edge) side when it
// lies on a glued edge.
std::string point_key(const Surface& S, int p, const Vec2& q) {
  int best_poly = p, best_edge = S.n(p);
  Vec2 best = q;
  for (int k = 0; k < S.n(p); ++k) {
    const Vec2 a = S.V(p, k), b = S.V(p, k + 1);
    if (cross(b - a, q - a).sign() != 0) continue;
    if (dot(q - a, b - a).sign() < 0 || dot(q - b, a - b).sign() < 0) continue;
    EdgeRef to;
    Vec2 moved = q + S.shift(p, k, to);
    auto here = std::pair(p, k), there = std::pair(to.poly, to.edge);
    auto cand = std::min(here, there);
    if (cand < std::pair(best_poly, best_edge)) {
      best_poly = cand.first;
      best_edge = cand.second;
      best = cand == here ? q : moved;
    }
  }
  return std::to_string(best_poly) + ":" + best.to_string();
}

// Walks the segment from corner (p, v) to w exactly. Returns the midpoint
// key if the segment is a saddle connection ending at w.
std::optional<std::string> certify(const Surface& S, int p, int v, const Vec2& w) {
  const Discriminant d = S.s().disc();
  const QuadNum ww = norm_sq(w);
  const QuadNum half = QuadNum(d, Rational(1, 2)) * ww;
  Vec2 off = -S.V(p, v);
  QuadNum s_in(d);  // parameter scaled by |w|^2
  std::optional<std::string> mid;
  for (int guard = 0; guard < 1'000'000; ++guard) {
    const int n = S.n(p);
    std::vector<Vec2> D;
    std::vector<int> o;
    for (int k = 0; k < n; ++k) {
      D.push_back(S.V(p, k) + off);
      o.push_back(cross(w, D.back()).sign());
    }
    std::optional<QuadNum> hit_t;
    int hit_k = -1;
    for (int k = 0; k < n; ++k) {
      if (o[k] != 0) continue;
      QuadNum t = dot(w, D[k]);
      if (!(t > s_in)) continue;
      if (!hit_t || t < *hit_t) {
        hit_t = t;
        hit_k = k;
      }
    }
    std::optional<QuadNum> exit_t;
    int exit_k = -1;
    for (int k = 0; k < n; ++k) {
      int k1 = (k + 1) % n;
      if (o[k] == 0 || o[k1] == 0 || o[k] == o[k1]) continue;
      Vec2 e = D[k1] - D[k];
      QuadNum t = cross(D[k], e) / cross(w, e) * ww;
      if (!(t > s_in)) continue;
      if (!exit_t || t < *exit_t) {
        exit_t = t;
        exit_k = k;
      }
    }
    const bool vertex_next = hit_t && (!exit_t || *hit_t <= *exit_t);
    const QuadNum& next = vertex_next ? *hit_t : (exit_t ? *exit_t : s_in);
    if (!vertex_next && !exit_t) return std::nullopt;
    if (!mid && s_in <= half && half <= next) {
      mid = point_key(S, p, Rational(1, 2) * w - off);
    }
    if (vertex_next) {
      if (!(D[hit_k] == w)) return std::nullopt;
      return mid;
    }
    if (*exit_t >= ww) return std::nullopt;
    EdgeRef to;
    off = off - S.shift(p, exit_k, to);
    p = to.poly;
    s_in = *exit_t;
  }
  throw CrossCheckFailure("reference walk did not terminate");
}

struct Node {
  int poly;
  Vec2 off;
  D2 offd;
  double lo, hi;
  int entered;  // edge of `poly` we came through, or -1 at the start
};

}  // namespace

std::vector<Vec2> saddle_connections(const TranslationSurface& s, double L) {
  Surface S(s);
  const double Lr = L * (1 + 1e-9) + 1e-9;
  const double slack = 1e-9;

  std::map<std::string, Vec2> found;
  for (int p0 = 0; p0 < static_cast<int>(s.polygons().size()); ++p0) {
    for (int v0 = 0; v0 < S.n(p0); ++v0) {
      const D2 a = S.Vd(p0, v0 + 1) - S.Vd(p0, v0);
      const D2 b = S.Vd(p0, v0 - 1) - S.Vd(p0, v0);
      const double theta = std::atan2(dcross(a, b), ddot(a, b));
      const double phi = std::atan2(a.y, a.x) + theta / 2;
      const D2 bis{std::cos(phi), std::sin(phi)};
      auto ang = [&](D2 w) { return std::atan2(dcross(bis, w), ddot(bis, w)); };

      std::map<std::string, Vec2> candidates;
      std::vector<Node> stack{{p0, -S.V(p0, v0), D2{0, 0} - S.Vd(p0, v0), -theta / 2, theta / 2, -1}};
      while (!stack.empty()) {
        Node nd = stack.back();
        stack.pop_back();
        const int n = S.n(nd.poly);
        const bool start = nd.entered < 0;
        std::vector<D2> Dd;
        for (int k = 0; k < n; ++k) Dd.push_back(S.Vd(nd.poly, k) + nd.offd);
        for (int k = 0; k < n; ++k) {
          if (start && k == v0) continue;
          const double r = dnorm(Dd[k]);
          if (r > Lr || r < 1e-12) continue;
          const double t = ang(Dd[k]);
          if (t < nd.lo - slack || t > nd.hi + slack) continue;
          Vec2 w = S.V(nd.poly, k) + nd.off;
          candidates.emplace(w.to_string(), w);
        }
        for (int k = 0; k < n; ++k) {
          if (k == nd.entered) continue;
          if (start && (k == v0 || (k + 1) % n == v0)) continue;
          const D2 P = Dd[k], Q = Dd[(k + 1) % n];
          // Exit edges have the origin on their inner side.
          if (dcross(Q - P, D2{0, 0} - P) <= 0) continue;
          if (seg_dist(P, Q) > Lr) continue;
          double t1 = ang(P), t2 = ang(Q);
          double lo = std::max(nd.lo, std::min(t1, t2)), hi = std::min(nd.hi, std::max(t1, t2));
          if (lo > hi + slack) continue;
          if (lo > hi) lo = hi = (lo + hi) / 2;
          EdgeRef to;
          Vec2 sh = S.shift(nd.poly, k, to);
          D2 shd = S.shift_d(nd.poly, k, to);
          stack.push_back({to.poly, nd.off - sh, nd.offd - shd, lo, hi, to.edge});
        }
      }
      for (const auto& [key, w] : candidates) {
        if (!canonical(w)) continue;
        auto mid = certify(S, p0, v0, w);
        if (mid) found.emplace(key + "|" + *mid, w);
      }
    }
  }
  std::vector<Vec2> out;
  for (const auto& [key, w] : found) out.push_back(w);
  std::sort(out.begin(), out.end(), [](const Vec2& a, const Vec2& b) {
    if (auto c = norm_sq(a) <=> norm_sq(b); c != 0) return c < 0;
    return cross(a, b).sign() > 0;
  });
  return out;
}

namespace {

struct Leaf {
  std::vector<std::tuple<int, D2, D2>> pieces;
  double length = 0;
  bool closed = false;
};

// Moves a point along a direction inside the surface.
struct Flow {
  const Surface& S;

  // Exit of the ray from q in direction u (unit) out of convex polygon p.
  // Collinear edges tie on the parameter; the exit point picks between them.
  std::pair<double, int> exit(int p, D2 q, D2 u) const {
    std::vector<std::pair<double, int>> hits;
    double best = INFINITY;
    for (int k = 0; k < S.n(p); ++k) {
      D2 a = S.Vd(p, k), b = S.Vd(p, k + 1);
      D2 e = b - a;
      D2 out{e.y, -e.x};
      double den = ddot(u, out);
      if (den <= 0) continue;
      double t = std::max(ddot(a - q, out) / den, 0.0);
      hits.emplace_back(t, k);
      best = std::min(best, t);
    }
    int edge = -1;
    double closest = INFINITY;
    for (auto [t, k] : hits) {
      if (t > best + 1e-12 * (1 + best)) continue;
      double dist = seg_dist(S.Vd(p, k) - (q + u * t), S.Vd(p, k + 1) - (q + u * t));
      if (dist < closest) {
        closest = dist;
        edge = k;
      }
    }
    return {best, edge};
  }

  std::pair<int, D2> move(int p, D2 q, D2 u, double dist) const {
    for (int guard = 0; guard < 100000; ++guard) {
      auto [t, k] = exit(p, q, u);
      if (k < 0) throw CrossCheckFailure("reference flow left the surface");
      if (t >= dist) return {p, q + u * dist};
      dist -= t;
      EdgeRef to;
      D2 sh = S.shift_d(p, k, to);
      q = q + u * t + sh;
      p = to.poly;
    }
    throw CrossCheckFailure("reference flow did not terminate");
  }

  Leaf leaf(int p0, D2 q0, D2 u, double max_len, double tol) const {
    Leaf lf;
    int p = p0;
    D2 q = q0;
    double travelled = 0;
    for (int guard = 0; guard < 100000 && travelled <= max_len; ++guard) {
      auto [t, k] = exit(p, q, u);
      if (k < 0) throw CrossCheckFailure("reference flow left the surface");
      D2 end = q + u * t;
      lf.pieces.emplace_back(p, q, end);
      if (p == p0 && travelled > 0) {
        D2 rel = q0 - q;
        double along = ddot(rel, u);
        if (std::abs(dcross(u, rel)) < tol && along >= -tol && along <= t + tol) {
          lf.length = travelled + along;
          lf.closed = lf.length <= max_len;
          return lf;
        }
      }
      travelled += t;
      EdgeRef to;
      D2 sh = S.shift_d(p, k, to);
      q = end + sh;
      p = to.poly;
    }
    return lf;
  }
};

}  // namespace

std::vector<OracleCylinder> cylinders(const TranslationSurface& s, double L) {
  Surface S(s);
  Flow F{S};
  const double area = s.area().to_double();
  const double max_len = L * (1 + 1e-9) + 1e-9;
  const double tol = 1e-10 * (1 + L);

  // Starting data for each connection: corner, holonomy.
  struct Start {
    int p, v;
    Vec2 w;
  };
  std::vector<Start> starts;
  {
    // Repeat the corner search so that the corner of each connection is known.
    std::set<std::string> seen;
    for (const Vec2& w : saddle_connections(s, L)) {
      const std::string wk = w.to_string();
      for (int p = 0; p < static_cast<int>(s.polygons().size()); ++p) {
        for (int v = 0; v < S.n(p); ++v) {
          auto mid = certify(S, p, v, w);
          if (!mid || !seen.insert(wk + "|" + *mid).second) continue;
          starts.push_back({p, v, w});
        }
      }
    }
  }

  struct Found {
    D2 u;
    Leaf leaf;
  };
  std::vector<Found> found;
  std::vector<OracleCylinder> out;
  for (const Start& st : starts) {
    const D2 wd = to_d(st.w);
    const double len = dnorm(wd);
    const D2 u = wd * (1 / len);
    const D2 nrm{-u.y, u.x};
    // Walk from the corner to the midpoint, then a little to the left.
    auto [pm, qm] = F.move(st.p, S.Vd(st.p, st.v), u, len / 2);
    const double eps0 = 1e-8 * area / L;
    auto [p0, q0] = F.move(pm, qm, nrm, eps0);
    Leaf ref = F.leaf(p0, q0, u, max_len, tol);
    if (!ref.closed) continue;
    bool dup = false;
    for (const Found& f : found) {
      if (std::abs(dcross(f.u, u)) > 1e-12 || ddot(f.u, u) < 0) continue;
      for (const auto& [pp, a, b] : f.leaf.pieces) {
        if (pp != p0) continue;
        D2 e = b - a, rel = q0 - a;
        double el = dnorm(e);
        if (el == 0) continue;
        double along = ddot(rel, e) / el;
        if (std::abs(dcross(e, rel)) / el < 1e-9 && along >= -1e-9 && along <= el + 1e-9) dup = true;
      }
      if (dup) break;
    }
    if (dup) continue;

    // Raising the leaf moves each of its chords parallel to itself; the
    // first polygon vertex met is a cone point on the top boundary.
    double rise = INFINITY;
    for (const auto& [pp, a, b] : ref.pieces) {
      for (int k = 0; k < S.n(pp); ++k) {
        double dv = dcross(u, S.Vd(pp, k) - a);
        if (dv > 0) rise = std::min(rise, dv);
      }
    }
    double h = eps0 + rise;
    double cx = u.x * ref.length, cy = u.y * ref.length;
    out.push_back({cx, cy, ref.length, ref.length * h});
    found.push_back({u, std::move(ref)});
  }
  std::sort(out.begin(), out.end(), [](const OracleCylinder& a, const OracleCylinder& b) {
    if (a.circumference != b.circumference) return a.circumference < b.circumference;
    return std::atan2(a.hy, a.hx) < std::atan2(b.hy, b.hx);
  });
  return out;
}

Comparison compare_saddle_connections(const std::vector<SaddleConnection>& scs, const std::vector<Vec2>& ref) {
  Comparison c;
  c.enumerated = scs.size();
  c.reference = ref.size();
  std::multiset<std::string> a, b;
  for (const auto& sc : scs) a.insert(sc.holonomy.to_string());
  for (const Vec2& w : ref) b.insert(w.to_string());
  std::vector<std::string> diff;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
  c.mismatches = diff.size();
  return c;
}

Comparison compare_cylinders(const std::vector<Cylinder>& cyl, const std::vector<OracleCylinder>& ref) {
  Comparison c;
  c.enumerated = cyl.size();
  c.reference = ref.size();
  std::vector<char> used(ref.size(), 0);
  for (const Cylinder& cy : cyl) {
    const double hx = cy.holonomy.x.to_double(), hy = cy.holonomy.y.to_double();
    const double ar = cy.area.to_double();
    const double scale = 1 + cy.circumference;
    bool ok = false;
    for (std::size_t i = 0; i < ref.size() && !ok; ++i) {
      if (used[i]) continue;
      const OracleCylinder& r = ref[i];
      if (std::abs(r.hx - hx) > 1e-8 * scale || std::abs(r.hy - hy) > 1e-8 * scale) continue;
      if (std::abs(r.area - ar) > 1e-6 * ar) continue;
      used[i] = 1;
      ok = true;
    }
    if (!ok) ++c.mismatches;
  }
  c.mismatches += static_cast<std::size_t>(std::count(used.begin(), used.end(), 0));
  return c;
}

}  // namespace eigenflat::oracle
