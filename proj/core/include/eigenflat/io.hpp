#pragma once

// JSON and CSV forms of surfaces, invariant reports and counting reports.

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>
#include <vector>

#include "eigenflat/counting.hpp"
#include "eigenflat/invariants.hpp"
#include "eigenflat/surface.hpp"

namespace eigenflat {

/// {"discriminant": D, "polygons": [[["x","y"], ...], ...],
///  "gluings": [[[poly, edge], [poly, edge]], ...],
///  "involution": [[target, "cx", "cy"], ...]}   (involution optional)
nlohmann::json surface_to_json(const TranslationSurface& s);
TranslationSurface surface_from_json(const nlohmann::json& j);
TranslationSurface load_surface(const std::string& path);

/// Decimal ("0.001", "-2.5e3") or fraction ("3/7") text as an exact rational.
Rational parse_decimal(std::string_view text);
/// A length: a QuadNum string over `d`, or a decimal.
QuadNum parse_length(std::string_view text, const Discriminant& d);
std::vector<QuadNum> parse_length_list(std::string_view text, const Discriminant& d);

/// 17 significant digits.
std::string format_double(double v);

nlohmann::json to_json(const ExactConstant& c);
nlohmann::json to_json(const InvariantReport& r);
std::string invariants_csv_header();
std::string to_csv_row(const InvariantReport& r);

nlohmann::json to_json(const CountSummary& s);
std::string count_csv_header();
std::string to_csv_row(const CountSummary& s);

}  // namespace eigenflat
