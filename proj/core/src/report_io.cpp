#include <cstdio>
#include <sstream>

#include "eigenflat/io.hpp"

namespace eigenflat {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json to_json(const ExactConstant& c) { return c.to_string(); }

json to_json(const InvariantReport& r) {
  const auto& k = r.constants;
  return {
      {"D", r.d.value()},
      {"conductor", r.conductor},
      {"fundamental", r.fundamental},
      {"h2", to_string(r.h2)},
      {"zeta_minus1", to_string(r.zeta_minus1)},
      {"chi", to_string(r.chi)},
      {"volume_coeff", to_string(r.volume_coeff)},
      {"volume", to_string(r.volume_coeff) + "*pi"},
      {"sv_constants", {{"c_cyl", to_json(k.c_cyl)}, {"s1", to_json(k.s1)}, {"s2", to_json(k.s2)}}},
      {"surface_coefficients",
       {{"cyl", to_json(k.surface_cyl)}, {"s1", to_json(k.surface_s1)}, {"s2", to_json(k.surface_s2)}}},
      {"billiard_coefficients",
       {{"cyl", to_json(k.billiard_cyl)}, {"s1", to_json(k.billiard_s1)}, {"s2", to_json(k.billiard_s2)}}},
      {"prototype_count", r.prototype_count},
      {"sum_v", to_string(r.sum_v)},
      {"checks", {{"chi_inversion", r.chi_inversion_ok}, {"sum_v", r.sum_v_ok}, {"volume", r.volume_ok}}},
  };
}

std::string invariants_csv_header() {
  return "D,conductor,fundamental,h2,zeta_minus1,chi,volume_coeff,prototype_count,sum_v,checks_pass";
}

std::string to_csv_row(const InvariantReport& r) {
  std::ostringstream os;
  os << r.d.value() << ',' << r.conductor << ',' << r.fundamental << ',' << to_string(r.h2) << ','
     << to_string(r.zeta_minus1) << ',' << to_string(r.chi) << ',' << to_string(r.volume_coeff) << ','
     << r.prototype_count << ',' << to_string(r.sum_v) << ',' << (r.all_checks_pass() ? "true" : "false");
  return os.str();
}

json to_json(const CountSummary& s) {
  json j = {
      {"L", s.L_text},
      {"n_cylinders", s.n_cylinders},
      {"n_sc_mult1", s.n_sc_mult1},
      {"n_sc_pairs_mult2", s.n_sc_pairs_mult2},
      {"n_saddle_connections", s.n_saddle_connections},
      {"n_hv_cylinders", s.n_hv_cylinders},
      {"area", s.area.to_string()},
      {"c_cyl_est", format_double(s.c_cyl_est)},
      {"c_s1_est", format_double(s.c_s1_est)},
      {"c_s2_est", format_double(s.c_s2_est)},
  };
  if (s.targets) {
    j["c_cyl_target"] = format_double(s.targets->c_cyl);
    j["c_s1_target"] = format_double(s.targets->c_s1);
    j["c_s2_target"] = format_double(s.targets->c_s2);
  } else {
    j["c_cyl_target"] = nullptr;
    j["c_s1_target"] = nullptr;
    j["c_s2_target"] = nullptr;
  }
  return j;
}

std::string count_csv_header() {
  return "L,n_cylinders,n_sc_mult1,n_sc_pairs_mult2,area,c_cyl_est,c_s1_est,c_s2_est,c_cyl_target,c_s1_target,"
         "c_s2_target";
}

std::string to_csv_row(const CountSummary& s) {
  std::ostringstream os;
  os << s.L_text << ',' << s.n_cylinders << ',' << s.n_sc_mult1 << ',' << s.n_sc_pairs_mult2 << ','
     << s.area.to_string() << ',' << format_double(s.c_cyl_est) << ',' << format_double(s.c_s1_est) << ','
     << format_double(s.c_s2_est);
  if (s.targets) {
    os << ',' << format_double(s.targets->c_cyl) << ',' << format_double(s.targets->c_s1) << ','
       << format_double(s.targets->c_s2);
  } else {
    os << ",,,";
  }
  return os.str();
}

}  // namespace eigenflat
