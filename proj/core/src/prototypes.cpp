#include "eigenflat/prototypes.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "eigenflat/errors.hpp"

namespace eigenflat {

namespace {

std::int64_t gcd3(std::int64_t a, std::int64_t b, std::int64_t c) {
  return std::gcd(std::gcd(a, b), c);
}

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValidationError("malformed integer '" + std::string(s) + "'");
  }
  return v;
}

// The branch values below vanish only when D is a square.
std::int64_t nonzero_branch(std::int64_t v) {
  if (v == 0) throw CrossCheckFailure("prototype branch value is zero");
  return v;
}

}  // namespace

Prototype::Prototype(Discriminant d, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t q)
    : d_(d), a_(a), b_(b), c_(c), q_(q) {
  auto bad = [&](const char* why) {
    throw ValidationError("invalid prototype " + to_string() + ": " + why);
  };
  g_ = gcd3(a, b, c);
  if (b * b - 4 * a * c != d.value()) bad("b^2 - 4ac != D");
  if (a <= 0) bad("a <= 0");
  if (c >= 0) bad("c >= 0");
  if (a + b + c >= 0) bad("a + b + c >= 0");
  if (q < 0 || q >= g_) bad("q outside [0, gcd(a,b,c))");
  if (std::gcd(g_, q) != 1) bad("gcd(a, b, c, q) != 1");
}

QuadNum Prototype::lambda() const {
  return QuadNum(d_, Rational(-b_, 2 * a_), Rational(1, 2 * a_));
}

std::string Prototype::to_string() const {
  return std::to_string(d_.value()) + ":" + std::to_string(a_) + "," + std::to_string(b_) + "," +
         std::to_string(c_) + "," + std::to_string(q_);
}

Prototype Prototype::parse(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ValidationError("prototype must look like D:a,b,c,q");
  Discriminant d(parse_int(text.substr(0, colon)));
  std::vector<std::int64_t> parts;
  std::string_view rest = text.substr(colon + 1);
  while (true) {
    auto comma = rest.find(',');
    parts.push_back(parse_int(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  if (parts.size() == 3) parts.push_back(0);
  if (parts.size() != 4) throw ValidationError("prototype must look like D:a,b,c,q");
  return Prototype(d, parts[0], parts[1], parts[2], parts[3]);
}

std::vector<Prototype> enumerate_prototypes(const Discriminant& d) {
  std::vector<Prototype> out;
  for (const Triple& t : triple_sets(d).s) {
    std::int64_t g = gcd3(t.a, t.b, t.c);
    for (std::int64_t q = 0; q < g; ++q) {
      if (std::gcd(g, q) == 1) out.emplace_back(d, t.a, t.b, t.c, q);
    }
  }
  return out;  // triples are already sorted, residues ascend within each
}

TripleSets triple_sets(const Discriminant& d) {
  const std::int64_t D = d.value();
  TripleSets out;
  std::int64_t bmax = 0;
  while ((bmax + 1) * (bmax + 1) < D) ++bmax;
  for (std::int64_t b = -bmax; b <= bmax; ++b) {
    if (((D - b * b) % 4) != 0) continue;
    std::int64_t n = (D - b * b) / 4;  // = a * (-c) > 0
    for (std::int64_t a = 1; a <= n; ++a) {
      if (n % a != 0) continue;
      Triple t{a, b, -n / a};
      out.s_prime.push_back(t);
      if (t.a + t.b + t.c < 0) out.s.push_back(t);
    }
  }
  std::sort(out.s.begin(), out.s.end());
  std::sort(out.s_prime.begin(), out.s_prime.end());
  return out;
}

Prototype next_prototype(const Prototype& p) {
  const std::int64_t a = p.a(), b = p.b(), c = p.c();
  if (nonzero_branch(4 * a + 2 * b + c) < 0) {
    return Prototype(p.disc(), a, 2 * a + b, a + b + c, p.q());
  }
  return Prototype(p.disc(), -a - b - c, -2 * a - b, -a, p.q());
}

Prototype prev_prototype(const Prototype& p) {
  const std::int64_t a = p.a(), b = p.b(), c = p.c();
  if (nonzero_branch(a - b + c) < 0) {
    return Prototype(p.disc(), a, -2 * a + b, a - b + c, p.q());
  }
  return Prototype(p.disc(), -c, -b + 2 * c, -a + b - c, p.q());
}

Prototype invol_t(const Prototype& p) {
  const std::int64_t a = p.a(), b = p.b(), c = p.c();
  if (nonzero_branch(a - b + c) < 0) return Prototype(p.disc(), a, -b, c, p.q());
  return Prototype(p.disc(), -c, b, -a, p.q());
}

Prototype invol_s(const Prototype& p) {
  return Prototype(p.disc(), p.a(), -2 * p.a() - p.b(), p.a() + p.b() + p.c(), p.q());
}

namespace {

QuadNum v_with_leading(const Prototype& p, std::int64_t lead) {
  const QuadNum lam = p.lambda();
  const QuadNum lm1 = lam - Rational(1);
  const Rational one(1);
  QuadNum bracket = one + (lam * lam).inverse() + (lm1 * lm1).inverse();
  return Rational(lead) * lam * lm1 * bracket;
}

}  // namespace

QuadNum v_of(const Prototype& p) { return v_with_leading(p, p.a_prime()); }

QuadNum v_prime(const Prototype& p) { return v_with_leading(p, p.a()); }

QuadNum w_of(const Prototype& p) { return v_prime(p) + v_prime(invol_s(p)); }

Rational w_closed_form(const Triple& t) {
  const Rational a(t.a), b(t.b), c(t.c);
  if (sgn(a) == 0 || sgn(c) == 0 || sgn(a + b + c) == 0) {
    throw ValidationError("w closed form needs a, c, a+b+c nonzero");
  }
  return 4 * a + b + b * b / a + a * b / c - 2 * c - a * (2 * a + b) / (a + b + c);
}

}  // namespace eigenflat
