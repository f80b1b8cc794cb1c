#include "verify.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "eigenflat/builders.hpp"
#include "eigenflat/errors.hpp"
#include "eigenflat/invariants.hpp"
#include "eigenflat/prototypes.hpp"
#include "oracle.hpp"

namespace eigenflat::verify {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const Discriminant kD8(8);

Vec2 i_vec(const Discriminant& d) { return {QuadNum(d), QuadNum(d, 1)}; }

TranslationSurface d8_sampler() {
  return eigenform_sampler(Prototype::parse("8:1,0,-2,0"), i_vec(kD8), i_vec(kD8));
}

BilliardSpec criterion_table() {
  const QuadNum a = QuadNum::parse("1/2+1*sqrt(2)", kD8);
  return {a, a, QuadNum(kD8, Rational(1, 2))};
}

BilliardSpec golden_table() {
  const Discriminant five(5);
  const QuadNum phi = QuadNum::parse("1/2+1/2*sqrt(5)", five);
  return {phi, phi, QuadNum::parse("1/2-1/10*sqrt(5)", five)};
}

std::vector<QuadNum> grid(const Discriminant& d, std::initializer_list<long> values) {
  std::vector<QuadNum> out;
  for (long v : values) out.emplace_back(d, v);
  return out;
}

bool same_spec(const ThreeCylSpec& a, const ThreeCylSpec& b) {
  return a.x1 == b.x1 && a.x2 == b.x2 && a.x3 == b.x3 && a.y1 == b.y1 && a.y2 == b.y2 && a.y3 == b.y3;
}

bool genus_two_two_zeros(const TranslationSurface& s) {
  auto z = s.zeros();
  return s.genus() == 2 && z.size() == 2 && z[0].order == 1 && z[1].order == 1;
}

}  // namespace

CriterionResult identity_suite(std::int64_t max_d) {
  CriterionResult r{1, "exact identity suite for every discriminant up to " + std::to_string(max_d), true, {}};
  std::size_t n_d = 0, n_p = 0;
  for (const Discriminant& d : discriminants_in_range(4, max_d)) {
    ++n_d;
    std::vector<std::string> bad;
    if (!sum_v_check(d).passes) bad.push_back("sum of v");
    if (chi_via_inversion(d) != chi(d)) bad.push_back("chi by inversion");
    PrototypeLawCheck laws = prototype_law_check(d);
    n_p += laws.prototypes;
    if (laws.next_prev_failures) bad.push_back("next/prev inverse");
    if (laws.involution_failures) bad.push_back("t and s involutions");
    if (laws.w_failures) bad.push_back("w closed form");
    for (const IdentityCheck& c : triple_identities(d)) {
      if (!c.passes()) bad.push_back(c.name);
    }
    for (const auto& b : bad) r.details.push_back("D=" + std::to_string(d.value()) + " fails " + b);
    r.pass = r.pass && bad.empty();
  }
  r.details.insert(r.details.begin(),
                   std::to_string(n_d) + " discriminants, " + std::to_string(n_p) + " prototypes");
  return r;
}

CriterionResult spot_values() {
  CriterionResult r{2, "spot values agree across two routes", true, {}};
  auto check = [&](const std::string& name, const Rational& a, const Rational& b, const Rational& expected) {
    bool ok = a == b && a == expected;
    r.details.push_back(name + " = " + to_string(a) + " / " + to_string(b) + (ok ? "" : " (expected " + to_string(expected) + ")"));
    r.pass = r.pass && ok;
  };
  const Discriminant d5(5), d45(45);
  check("chi(5)", chi(d5), chi_via_inversion(d5), Rational(1, 15));
  check("vol(5)/pi", volume(d5), volume_remark(d5), Rational(4, 15));
  check("chi(8)", chi(kD8), chi_via_inversion(kD8), Rational(1, 6));
  check("chi(45)", chi(d45), chi_via_inversion(d45), Rational(2));
  check("H(2,5)", h2(5), h2_cohen(d5), Rational(-2, 5));
  check("H(2,8)", h2(8), h2_cohen(kD8), Rational(-1));
  return r;
}

CriterionResult structural_suite(int draws_per_d) {
  CriterionResult r{3, "builders validate and the sampler inverts prototype recovery", true, {}};
  std::size_t built = 0;
  auto build = [&](const std::string& name, auto&& make, bool genus_two) {
    try {
      TranslationSurface s = make();
      ++built;
      if (genus_two && !genus_two_two_zeros(s)) {
        r.pass = false;
        r.details.push_back(name + ": wrong genus or zeros");
      }
    } catch (const ValidationError& e) {
      r.pass = false;
      r.details.push_back(name + ": " + e.what());
    }
  };
  build("decagon", [] { return build_decagon(); }, true);
  build("torus", [] { return build_square_torus(Discriminant(5)); }, false);
  build("unfolding", [] { return build_billiard_unfolding(criterion_table()); }, true);
  build("golden unfolding", [] { return build_billiard_unfolding(golden_table()); }, true);
  build("stretched decagon", [] { return apply_diagonal(build_decagon(), QuadNum(Discriminant(5), 3)); }, true);

  std::mt19937_64 rng(20240521);
  auto small = [&](long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1)); };
  std::size_t trips = 0;
  for (long dv : {5, 8, 12, 13, 17}) {
    const Discriminant d(dv);
    const auto protos = enumerate_prototypes(d);
    for (const Prototype& p : protos) {
      build(p.to_string(), [&] { return eigenform_sampler(p, i_vec(d), i_vec(d)); }, true);
    }
    int ok = 0;
    for (int k = 0; k < draws_per_d; ++k) {
      const Prototype& p = protos[rng() % protos.size()];
      auto coord = [&](long lo) {
        const long num = small(lo, 20);
        const long den = small(1, 9);
        const long root = small(-2, 2);
        return QuadNum(d, make_rational(num, den), make_rational(root, 3));
      };
      auto upper = [&] {
        QuadNum v = coord(1);
        return v.sign() > 0 ? v : QuadNum(d, v.rational_part());
      };
      const Vec2 y2{coord(-20), upper()};
      const Vec2 y3{coord(-20), upper()};
      std::string what;
      try {
        const ThreeCylSpec spec = eigenform_spec(p, y2, y3);
        const TranslationSurface s = build_three_cylinder(spec);
        const CanonicalForm cf = canonical_three_cylinder_form(s);
        const Prototype back = prototype_of(s);
        if (!(back == p)) what = "prototype_of gave " + back.to_string();
        else if (!check_eigenform_condition(s, p)) what = "congruence fails";
        else if (!same_spec(cf.spec, spec)) what = "canonical form differs from the sampler's";
        else if (!same_spec(eigenform_spec(back, cf.spec.y2, cf.spec.y3), cf.spec)) what = "resampling differs";
      } catch (const std::exception& e) {
        what = e.what();
      }
      ++trips;
      if (what.empty()) {
        ++ok;
      } else {
        r.pass = false;
        r.details.push_back(p.to_string() + " y2=" + y2.to_string() + " y3=" + y3.to_string() + ": " + what);
      }
    }
    r.details.push_back("D=" + std::to_string(dv) + ": " + std::to_string(protos.size()) + " prototypes, " +
                        std::to_string(ok) + "/" + std::to_string(draws_per_d) + " round trips");
  }
  r.details.push_back(std::to_string(built) + " surfaces built, " + std::to_string(trips) + " round trips");
  return r;
}

CriterionResult oracle_equivalence(const CountOptions& opt) {
  CriterionResult r{4, "enumerator agrees with the reference search", true, {}};
  struct Case {
    std::string name;
    TranslationSurface s;
    long L;
  };
  std::vector<Case> cases;
  cases.push_back({"decagon", build_decagon(), 9});
  cases.push_back({"three-cyl 8:1,0,-2,0", d8_sampler(), 9});
  cases.push_back({"unfolding", build_billiard_unfolding(criterion_table()), 13});
  for (const Case& c : cases) {
    const CountResult res = count_surface(c.s, QuadNum(c.s.disc(), c.L), SurfaceClass::unknown, opt);
    const auto sc = oracle::compare_saddle_connections(res.saddle_connections,
                                                        oracle::saddle_connections(c.s, static_cast<double>(c.L)));
    const auto cy = oracle::compare_cylinders(res.cylinders, oracle::cylinders(c.s, static_cast<double>(c.L)));
    const bool sized = sc.enumerated >= 50 && sc.enumerated <= 500 && cy.enumerated >= 50 && cy.enumerated <= 500;
    const bool ok = sc.agree() && cy.agree() && sized;
    r.pass = r.pass && ok;
    r.details.push_back(c.name + " L=" + std::to_string(c.L) + ": connections " + std::to_string(sc.enumerated) + "/" +
                        std::to_string(sc.reference) + ", cylinders " + std::to_string(cy.enumerated) + "/" +
                        std::to_string(cy.reference) + ", mismatches " + std::to_string(sc.mismatches + cy.mismatches) +
                        (sized ? "" : " (size outside 50..500)"));
  }
  return r;
}

CriterionResult generic_convergence(const CountOptions& opt) {
  CriterionResult r{5, "generic eigenform constants on the D=8 sampler", true, {}};
  const auto rows = asymptotic_report(d8_sampler(), grid(kD8, {20, 40, 60}), SurfaceClass::generic_eigenform, opt);
  for (const ReportRow& row : rows) {
    const auto& s = row.summary;
    r.details.push_back("L=" + s.L_text + " cylinders=" + std::to_string(s.n_cylinders) + " c=" + fmt(s.c_cyl_est) +
                        " s1=" + fmt(s.c_s1_est) + " s2=" + fmt(s.c_s2_est) + " errors " + fmt(row.rel_err_cyl) +
                        " " + fmt(row.rel_err_s1) + " " + fmt(row.rel_err_s2));
  }
  const ReportRow& first = rows.front();
  const ReportRow& last = rows.back();
  const bool enough = last.summary.n_cylinders >= 2000;
  const bool close = last.rel_err_cyl <= 0.20 && last.rel_err_s1 <= 0.25 && last.rel_err_s2 <= 0.25;
  const bool trend = last.rel_err_cyl <= first.rel_err_cyl && last.rel_err_s1 <= first.rel_err_s1 &&
                     last.rel_err_s2 <= first.rel_err_s2;
  r.pass = enough && close && trend;
  r.details.push_back(std::string("targets c=") + fmt(last.summary.targets->c_cyl) + " s1=" +
                      fmt(last.summary.targets->c_s1) + " s2=" + fmt(last.summary.targets->c_s2) +
                      (enough ? "" : "; too few cylinders") + (close ? "" : "; outside tolerance") +
                      (trend ? "" : "; error grew"));
  return r;
}

CriterionResult decagon_discrimination(const CountOptions& opt) {
  CriterionResult r{6, "decagon cylinder constant", true, {}};
  const TranslationSurface s = build_decagon();
  const auto rows = asymptotic_report(s, grid(Discriminant(5), {20, 40, 60}), SurfaceClass::decagon, opt);
  for (const ReportRow& row : rows) {
    r.details.push_back("L=" + row.summary.L_text + " cylinders=" + std::to_string(row.summary.n_cylinders) +
                        " c=" + fmt(row.summary.c_cyl_est));
  }
  const double est = rows.back().summary.c_cyl_est;
  const double target = rows.back().summary.targets->c_cyl;
  const double generic = 15 / std::numbers::pi;
  const bool close = relative_error(est, target) <= 0.20;
  const bool nearer = std::abs(est - target) < std::abs(est - generic);
  r.pass = close && nearer;
  r.details.push_back("target " + fmt(target) + " (relative error " + fmt(relative_error(est, target)) +
                      "), generic " + fmt(generic) + " (relative error " + fmt(relative_error(est, generic)) + ")");
  return r;
}

CriterionResult billiard_relation(const CountOptions& opt) {
  CriterionResult r{7, "billiard table against its unfolding", true, {}};
  const BilliardSpec spec = criterion_table();
  const auto rows = billiard_report(spec, grid(kD8, {20, 40, 80}), opt);
  bool relation = true;
  for (const BilliardCounts& b : rows) {
    const long diff = static_cast<long>(b.surface.n_cylinders) - 2 * static_cast<long>(b.table.n_cylinders);
    const bool ok = std::labs(diff) <= static_cast<long>(b.table.n_hv_cylinders);
    relation = relation && ok;
    r.details.push_back("L=" + b.table.L_text + " unfolding=" + std::to_string(b.surface.n_cylinders) +
                        " table=" + std::to_string(b.table.n_cylinders) + " hv=" +
                        std::to_string(b.table.n_hv_cylinders) + " c=" + fmt(b.table.c_cyl_est));
  }
  const CountSummary& last = rows.back().table;
  const double err = relative_error(last.c_cyl_est, last.targets->c_cyl);
  const bool close = err <= 0.20;
  r.pass = relation && close;
  r.details.push_back("family " + to_string(rows.back().family) + ", table area " + last.area.to_string() +
                      ", target " + fmt(last.targets->c_cyl) + " (relative error " + fmt(err) + ")" +
                      (relation ? "" : "; lift count off"));
  return r;
}

std::vector<CriterionResult> run_all(const CountOptions& opt) {
  return {identity_suite(),         spot_values(),           structural_suite(),     oracle_equivalence(opt),
          generic_convergence(opt), decagon_discrimination(opt), billiard_relation(opt)};
}

std::string format_report(const std::vector<CriterionResult>& results) {
  std::ostringstream os;
  for (const CriterionResult& r : results) {
    os << "criterion " << r.id << ": " << (r.pass ? "PASS" : "FAIL") << " " << r.title << "\n";
    for (const auto& d : r.details) os << "  " << d << "\n";
  }
  return os.str();
}

}  // namespace eigenflat::verify
