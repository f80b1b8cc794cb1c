#pragma once

// Arithmetic invariants of the eigenform loci: H(2, D), zeta(-1), the Euler
// characteristic chi, volumes, and the Siegel-Veech counting constants.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eigenflat/exactnum.hpp"

namespace eigenflat {

/// An exact constant (x + y sqrt(radicand)) * pi^pi_power * Area^area_power.
struct ExactConstant {
  Rational x;
  Rational y = 0;
  std::int64_t radicand = 0;
  int pi_power = 0;
  int area_power = 0;

  /// Numeric value for a given area (area is ignored when area_power is 0).
  double value(double area = 1.0) const;
  /// e.g. "15/2*pi^-1*Area^-1"
  std::string to_string() const;
  friend bool operator==(const ExactConstant&, const ExactConstant&) = default;
};

Rational h2(std::int64_t d);
Rational zeta_minus1(const Discriminant& fundamental);
Rational chi(const Discriminant& d);
Rational chi_via_inversion(const Discriminant& d);
/// Cohen's closed form for H(2, f^2 E) in terms of zeta_E(-1).
Rational h2_cohen(const Discriminant& d);
/// Volume coefficient of pi: 4 chi.
Rational volume(const Discriminant& d);
/// The f^3 form of the volume coefficient, computed independently of chi().
Rational volume_remark(const Discriminant& d);

struct CountingConstants {
  ExactConstant c_cyl, s1, s2;                        // Siegel-Veech constants
  ExactConstant surface_cyl, surface_s1, surface_s2;  // unit-area L^2 coefficients
  ExactConstant billiard_cyl, billiard_s1, billiard_s2;
};

/// Constants for a generic eigenform locus (independent of D).
CountingConstants siegel_veech(const Discriminant& d);

struct DecagonConstants {
  ExactConstant billiard_cyl, billiard_s1, billiard_s2;
  ExactConstant surface_cyl, surface_s1, surface_s2;
  QuadNum a, b, t;  // the excluded table
};

DecagonConstants decagon_constants();

struct SumVCheck {
  Rational sum_v;
  bool passes;
};

SumVCheck sum_v_check(const Discriminant& d);

struct ScIntegralCheck {
  Rational mult1_coeff;  // coefficient of pi^2 L^2 chi
  Rational mult2_coeff;
  bool mult1_matches;
  bool mult2_matches;
  bool sv_consistent;  // coefficients divided by the volume reproduce s1, s2 and c
};

ScIntegralCheck sc_integral_check(const Discriminant& d);

struct InvariantReport {
  Discriminant d;
  std::int64_t conductor;
  std::int64_t fundamental;
  Rational h2;
  Rational zeta_minus1;
  Rational chi;
  Rational volume_coeff;
  CountingConstants constants;
  std::int64_t prototype_count;
  Rational sum_v;
  bool chi_inversion_ok;
  bool sum_v_ok;
  bool volume_ok;

  bool all_checks_pass() const { return chi_inversion_ok && sum_v_ok && volume_ok; }
};

InvariantReport invariant_report(const Discriminant& d);

/// One exact identity over the triples of S_D.
struct IdentityCheck {
  std::string name;
  Rational lhs;
  Rational rhs;
  bool passes() const { return lhs == rhs; }
};

/// The five sums over S_D relating a, b, c to each other and to H(2, D).
std::vector<IdentityCheck> triple_identities(const Discriminant& d);

/// Laws of the prototype maps over all prototypes of D: next and prev are
/// inverse, t and s are involutions, and w matches its closed form.
struct PrototypeLawCheck {
  std::size_t prototypes = 0;
  std::size_t next_prev_failures = 0;
  std::size_t involution_failures = 0;
  std::size_t w_failures = 0;
  bool passes() const { return next_prev_failures == 0 && involution_failures == 0 && w_failures == 0; }
};

PrototypeLawCheck prototype_law_check(const Discriminant& d);

/// Every nonsquare discriminant in [lo, hi].
std::vector<Discriminant> discriminants_in_range(std::int64_t lo, std::int64_t hi);

}  // namespace eigenflat
