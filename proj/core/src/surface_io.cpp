#include <cctype>
#include <fstream>

#include "eigenflat/errors.hpp"
#include "eigenflat/io.hpp"

namespace eigenflat {

using nlohmann::json;

json surface_to_json(const TranslationSurface& s) {
  json polys = json::array();
  for (const auto& poly : s.polygons()) {
    json p = json::array();
    for (const Vec2& v : poly) p.push_back({v.x.to_string(), v.y.to_string()});
    polys.push_back(p);
  }
  json glue = json::array();
  for (const auto& g : s.gluings()) glue.push_back({{g.a.poly, g.a.edge}, {g.b.poly, g.b.edge}});
  json out = {{"discriminant", s.disc().value()}, {"polygons", polys}, {"gluings", glue}};
  if (s.involution()) {
    json inv = json::array();
    for (const auto& e : *s.involution()) inv.push_back({e.target, e.center.x.to_string(), e.center.y.to_string()});
    out["involution"] = inv;
  }
  return out;
}

TranslationSurface surface_from_json(const json& j) {
  try {
    const Discriminant d(j.at("discriminant").get<std::int64_t>());
    auto num = [&](const json& v) { return QuadNum::parse(v.get<std::string>(), d); };
    std::vector<std::vector<Vec2>> polys;
    for (const auto& p : j.at("polygons")) {
      std::vector<Vec2> poly;
      for (const auto& v : p) {
        if (v.size() != 2) throw ValidationError("vertex must be a pair of strings");
        poly.push_back({num(v[0]), num(v[1])});
      }
      polys.push_back(std::move(poly));
    }
    std::vector<Gluing> gl;
    for (const auto& g : j.at("gluings")) {
      if (g.size() != 2 || g[0].size() != 2 || g[1].size() != 2) throw ValidationError("malformed gluing");
      gl.push_back({{g[0][0].get<int>(), g[0][1].get<int>()}, {g[1][0].get<int>(), g[1][1].get<int>()}});
    }
    std::optional<std::vector<InvolutionEntry>> inv;
    if (j.contains("involution") && !j["involution"].is_null()) {
      inv.emplace();
      for (const auto& e : j["involution"]) {
        if (e.size() != 3) throw ValidationError("malformed involution entry");
        inv->push_back({e[0].get<int>(), {num(e[1]), num(e[2])}});
      }
    }
    return TranslationSurface(d, std::move(polys), std::move(gl), std::move(inv));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("surface file: ") + e.what());
  }
}

TranslationSurface load_surface(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("surface file " + path + ": " + e.what());
  }
  return surface_from_json(j);
}

Rational parse_decimal(std::string_view text) {
  if (text.find('/') != std::string_view::npos) return parse_rational(text);
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) neg = text[i++] == '-';
  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false, any = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      any = true;
      if (seen_dot) ++frac_digits;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  long exp10 = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    std::string e(text.substr(i));
    if (e.empty()) throw ValidationError("bad number: " + std::string(text));
    std::size_t used = 0;
    try {
      exp10 = std::stol(e, &used);
    } catch (const std::exception&) {
      throw ValidationError("bad number: " + std::string(text));
    }
    if (used != e.size()) throw ValidationError("bad number: " + std::string(text));
    i = text.size();
  }
  if (!any || i != text.size()) throw ValidationError("bad number: " + std::string(text));
  if (exp10 > 100 || exp10 < -100) throw ValidationError("exponent out of range: " + std::string(text));
  Integer num(digits);
  exp10 -= frac_digits;
  Integer ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
  Rational r = exp10 >= 0 ? Rational(num * ten_pow) : Rational(num, ten_pow);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

QuadNum parse_length(std::string_view text, const Discriminant& d) {
  if (text.find("sqrt") != std::string_view::npos) return QuadNum::parse(text, d);
  return QuadNum(d, parse_decimal(text));
}

std::vector<QuadNum> parse_length_list(std::string_view text, const Discriminant& d) {
  std::vector<QuadNum> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view part = text.substr(start, end - start);
    if (part.empty()) throw ValidationError("empty entry in list: " + std::string(text));
    out.push_back(parse_length(part, d));
    start = end + 1;
  }
  return out;
}

}  // namespace eigenflat
