#include "cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "eigenflat/builders.hpp"
#include "eigenflat/counting.hpp"
#include "eigenflat/errors.hpp"
#include "eigenflat/invariants.hpp"
#include "eigenflat/io.hpp"
#include "eigenflat/prototypes.hpp"
#include "verify.hpp"

namespace eigenflat::cli {

namespace {

using nlohmann::json;

struct Common {
  std::string format = "csv";
  int workers = 1;
  std::uint64_t budget = 100'000'000;

  CountOptions count() const {
    if (workers < 1) throw ValidationError("--workers must be at least 1");
    if (budget == 0) throw ValidationError("--budget must be positive");
    return {workers, budget};
  }
  bool as_json() const { return format == "json"; }
};

std::int64_t parse_int(const std::string& text) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    throw ValidationError("not an integer: " + text);
  }
  if (used != text.size()) throw ValidationError("not an integer: " + text);
  return v;
}

std::vector<Discriminant> parse_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) return {Discriminant(parse_int(text))};
  const std::int64_t lo = parse_int(text.substr(0, dots)), hi = parse_int(text.substr(dots + 2));
  if (lo > hi) throw ValidationError("empty range " + text);
  if (hi - lo > 1'000'000) throw ValidationError("range too large: " + text);
  return discriminants_in_range(lo, hi);
}

// "i", or "re,im" with each part a number in the field.
Vec2 parse_period(const std::string& text, const Discriminant& d) {
  if (text == "i") return {QuadNum(d), QuadNum(d, 1)};
  auto comma = text.find(',');
  if (comma == std::string::npos) throw ValidationError("period must be \"i\" or \"re,im\": " + text);
  return {parse_length(text.substr(0, comma), d), parse_length(text.substr(comma + 1), d)};
}

QuadNum parse_param(const std::string& text, const Discriminant& d) { return parse_length(text, d); }

// The field of a set of billiard parameters: the first one with a square root.
Discriminant billiard_field(const std::vector<std::string>& texts) {
  for (const auto& t : texts) {
    if (t.find("sqrt") != std::string::npos) return QuadNum::parse(t).disc();
  }
  throw ValidationError("table parameters must involve a square root");
}

BilliardSpec parse_billiard(const std::string& a, const std::string& b, const std::string& t) {
  const Discriminant d = billiard_field({a, b, t});
  BilliardSpec spec{parse_param(a, d), parse_param(b, d), parse_param(t, d)};
  spec.validate();
  return spec;
}

void emit_counts(std::ostream& out, const Common& c, const json& header, const std::vector<CountSummary>& rows) {
  if (c.as_json()) {
    json j = header;
    j["rows"] = json::array();
    for (const auto& r : rows) j["rows"].push_back(to_json(r));
    out << j.dump(2) << "\n";
    return;
  }
  out << count_csv_header() << "\n";
  for (const auto& r : rows) out << to_csv_row(r) << "\n";
}

int cmd_invariants(std::ostream& out, const Common& c, const std::string& range) {
  const bool single = range.find("..") == std::string::npos;
  const auto ds = parse_range(range);
  bool ok = true;
  std::vector<InvariantReport> reports;
  for (const auto& d : ds) {
    reports.push_back(invariant_report(d));
    ok = ok && reports.back().all_checks_pass();
  }
  if (c.as_json()) {
    if (single) {
      out << to_json(reports.front()).dump(2) << "\n";
    } else {
      json arr = json::array();
      for (const auto& r : reports) arr.push_back(to_json(r));
      out << arr.dump(2) << "\n";
    }
  } else {
    out << invariants_csv_header() << "\n";
    for (const auto& r : reports) out << to_csv_row(r) << "\n";
  }
  return ok ? 0 : 4;
}

int cmd_prototypes(std::ostream& out, const Common& c, const std::string& dtext, bool verify) {
  const Discriminant d(parse_int(dtext));
  const auto protos = enumerate_prototypes(d);
  std::vector<IdentityCheck> ids;
  PrototypeLawCheck laws;
  if (verify) {
    ids = triple_identities(d);
    laws = prototype_law_check(d);
  }
  bool ok = laws.passes();
  for (const auto& i : ids) ok = ok && i.passes();

  if (c.as_json()) {
    json j = {{"D", d.value()}, {"prototypes", json::array()}};
    for (const auto& p : protos) {
      j["prototypes"].push_back({{"prototype", p.to_string()},
                                 {"a", p.a()},
                                 {"b", p.b()},
                                 {"c", p.c()},
                                 {"q", p.q()},
                                 {"lambda", p.lambda().to_string()},
                                 {"v", v_of(p).to_string()}});
    }
    if (verify) {
      j["identities"] = json::array();
      for (const auto& i : ids) {
        j["identities"].push_back(
            {{"identity", i.name}, {"lhs", to_string(i.lhs)}, {"rhs", to_string(i.rhs)}, {"pass", i.passes()}});
      }
      j["laws"] = {{"prototypes", laws.prototypes},
                   {"next_prev_failures", laws.next_prev_failures},
                   {"involution_failures", laws.involution_failures},
                   {"w_failures", laws.w_failures},
                   {"pass", laws.passes()}};
    }
    out << j.dump(2) << "\n";
  } else {
    out << "prototype,a,b,c,q,lambda,v\n";
    for (const auto& p : protos) {
      out << p.to_string() << ',' << p.a() << ',' << p.b() << ',' << p.c() << ',' << p.q() << ','
          << p.lambda().to_string() << ',' << v_of(p).to_string() << "\n";
    }
    if (verify) {
      out << "\nidentity,lhs,rhs,result\n";
      for (const auto& i : ids) {
        out << '"' << i.name << "\"," << to_string(i.lhs) << ',' << to_string(i.rhs) << ','
            << (i.passes() ? "pass" : "fail") << "\n";
      }
      out << "\"prototype laws (" << laws.prototypes << " prototypes)\",,," << (laws.passes() ? "pass" : "fail")
          << "\n";
    }
  }
  return ok ? 0 : 4;
}

struct CountArgs {
  std::string builtin, file, prototype = "8:1,0,-2,0", y2 = "i", y3 = "i";
  std::string a = "1/2+1*sqrt(2)", b = "1/2+1*sqrt(2)", t = "1/2";
  std::string L, L_grid;
};

int cmd_count(std::ostream& out, std::ostream& err, const Common& c, const CountArgs& args) {
  const CountOptions opt = c.count();
  if (args.builtin.empty() == args.file.empty()) throw ValidationError("give exactly one of --builtin and --file");
  if (args.L.empty() == args.L_grid.empty()) throw ValidationError("give exactly one of --L and --L-grid");

  std::optional<TranslationSurface> s;
  SurfaceClass cls = SurfaceClass::unknown;
  std::string name;
  if (args.builtin == "decagon") {
    s = build_decagon();
    cls = SurfaceClass::decagon;
    name = "decagon";
  } else if (args.builtin == "three-cyl") {
    const Prototype p = Prototype::parse(args.prototype);
    s = eigenform_sampler(p, parse_period(args.y2, p.disc()), parse_period(args.y3, p.disc()));
    cls = p.disc().value() == 5 ? SurfaceClass::unknown : SurfaceClass::generic_eigenform;
    name = "three-cyl " + p.to_string();
  } else if (args.builtin == "unfolding") {
    const BilliardSpec spec = parse_billiard(args.a, args.b, args.t);
    s = build_billiard_unfolding(spec);
    const BilliardFamily f = classify_billiard(spec);
    cls = f == BilliardFamily::eigenform ? SurfaceClass::generic_eigenform
          : f == BilliardFamily::decagon ? SurfaceClass::decagon
                                         : SurfaceClass::unknown;
    name = "unfolding";
  } else if (!args.builtin.empty()) {
    throw ValidationError("unknown builtin surface: " + args.builtin);
  } else {
    s = load_surface(args.file);
    name = args.file;
    try {
      if (s->genus() == 2 && s->disc().value() != 5) {
        prototype_of(*s);
        cls = SurfaceClass::generic_eigenform;
      }
    } catch (const ValidationError&) {
      cls = SurfaceClass::unknown;
    }
  }
  for (const auto& w : s->warnings()) err << "warning: " << w << "\n";
  if (cls == SurfaceClass::decagon) {
    err << "warning: surface lies on the decagon curve; targets are the exceptional constants\n";
  } else if (cls == SurfaceClass::unknown) {
    err << "warning: no asymptotic targets for this surface\n";
  }
  if (s->disc().value() == 5 && cls == SurfaceClass::unknown && args.builtin == "three-cyl") {
    err << "warning: discriminant 5 eigenforms include the decagon curve; targets omitted\n";
  }

  std::vector<QuadNum> grid =
      args.L.empty() ? parse_length_list(args.L_grid, s->disc()) : std::vector<QuadNum>{parse_length(args.L, s->disc())};
  std::vector<CountSummary> rows;
  for (const auto& row : asymptotic_report(*s, grid, cls, opt)) rows.push_back(row.summary);
  json header = {{"surface", name}, {"class", to_string(cls)}, {"decagon_curve", cls == SurfaceClass::decagon}};
  emit_counts(out, c, header, rows);
  return 0;
}

struct BilliardArgs {
  std::string a, b, t, L, L_grid;
};

int cmd_billiard(std::ostream& out, std::ostream& err, const Common& c, const BilliardArgs& args) {
  const CountOptions opt = c.count();
  if (args.L.empty() == args.L_grid.empty()) throw ValidationError("give exactly one of --L and --L-grid");
  const BilliardSpec spec = parse_billiard(args.a, args.b, args.t);
  const BilliardFamily family = classify_billiard(spec);
  if (family == BilliardFamily::decagon) {
    err << "warning: the unfolding lies on the decagon curve; targets are the exceptional constants\n";
  } else if (family == BilliardFamily::unverified) {
    err << "warning: parameters are not of the form x + z sqrt(d), y + z sqrt(d) with x + y = 1; no targets\n";
  }
  const Discriminant d = spec.a.disc();
  std::vector<QuadNum> grid =
      args.L.empty() ? parse_length_list(args.L_grid, d) : std::vector<QuadNum>{parse_length(args.L, d)};
  const auto rows = billiard_report(spec, grid, opt);
  if (c.as_json()) {
    json j = {{"a", spec.a.to_string()},
              {"b", spec.b.to_string()},
              {"t", spec.t.to_string()},
              {"family", to_string(family)},
              {"table_area", billiard_table_area(spec).to_string()},
              {"rows", json::array()}};
    for (const auto& r : rows) j["rows"].push_back({{"table", to_json(r.table)}, {"unfolding", to_json(r.surface)}});
    out << j.dump(2) << "\n";
  } else {
    out << count_csv_header() << ",n_cylinders_unfolding,n_hv_families\n";
    for (const auto& r : rows) {
      out << to_csv_row(r.table) << ',' << r.surface.n_cylinders << ',' << r.table.n_hv_cylinders << "\n";
    }
  }
  return 0;
}

int cmd_verify(std::ostream& out, const Common& c) {
  const auto results = verify::run_all(c.count());
  out << verify::format_report(results);
  for (const auto& r : results) {
    if (!r.pass) return 4;
  }
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Counting on genus-two eigenforms: invariants, prototypes, saddle connections and cylinders"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub, bool counting) {
    sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    if (counting) {
      sub->add_option("--workers", common.workers, "Worker threads for the search");
      sub->add_option("--budget", common.budget, "Maximum number of search steps");
    }
  };

  std::string range;
  auto* inv = app.add_subcommand("invariants", "Arithmetic invariants for D or a range lo..hi");
  inv->add_option("D", range, "Discriminant or range")->required();
  add_common(inv, false);

  std::string dtext;
  bool verify_flag = false;
  auto* pro = app.add_subcommand("prototypes", "Prototypes of discriminant D");
  pro->add_option("D", dtext, "Discriminant")->required();
  pro->add_flag("--verify", verify_flag, "Check the identities over the triples of D");
  add_common(pro, false);

  CountArgs cargs;
  auto* cnt = app.add_subcommand("count", "Count cylinders and saddle connections");
  cnt->add_option("--builtin", cargs.builtin, "decagon, three-cyl or unfolding");
  cnt->add_option("--file", cargs.file, "Surface JSON file");
  cnt->add_option("--prototype", cargs.prototype, "Prototype D:a,b,c,q for three-cyl");
  cnt->add_option("--y2", cargs.y2, "Period y2 as \"i\" or \"re,im\"");
  cnt->add_option("--y3", cargs.y3, "Period y3 as \"i\" or \"re,im\"");
  cnt->add_option("--a", cargs.a, "Table width for unfolding");
  cnt->add_option("--b", cargs.b, "Table height for unfolding");
  cnt->add_option("--t", cargs.t, "Barrier length for unfolding");
  cnt->add_option("--L", cargs.L, "Length cutoff");
  cnt->add_option("--L-grid", cargs.L_grid, "Comma-separated increasing cutoffs");
  add_common(cnt, true);

  BilliardArgs bargs;
  auto* bil = app.add_subcommand("billiard", "Counts on the L-shaped table with a barrier");
  bil->add_option("--a", bargs.a, "Table width")->required();
  bil->add_option("--b", bargs.b, "Table height")->required();
  bil->add_option("--t", bargs.t, "Barrier length")->required();
  bil->add_option("--L", bargs.L, "Length cutoff");
  bil->add_option("--L-grid", bargs.L_grid, "Comma-separated increasing cutoffs");
  add_common(bil, true);

  auto* ver = app.add_subcommand("verify", "Run the acceptance suite");
  add_common(ver, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (inv->parsed()) return cmd_invariants(out, common, range);
    if (pro->parsed()) return cmd_prototypes(out, common, dtext, verify_flag);
    if (cnt->parsed()) return cmd_count(out, err, common, cargs);
    if (bil->parsed()) return cmd_billiard(out, err, common, bargs);
    if (ver->parsed()) return cmd_verify(out, common);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const CrossCheckFailure& e) {
    err << "error: internal check failed: " << e.what() << "\n";
    return 4;
  }
  return 2;
}

}  // namespace eigenflat::cli
