#pragma once

// Prototypes (a, b, c, q) of discriminant D: the combinatorial data indexing
// three-cylinder eigenforms, with their successor maps, involutions and the
// v / w quantities.

#include <cstdint>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "eigenflat/exactnum.hpp"

namespace eigenflat {

struct Triple {
  std::int64_t a, b, c;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

class Prototype {
 public:
  /// Validates b^2 - 4ac = D, a > 0, c < 0, a + b + c < 0, q in [0, gcd(a,b,c))
  /// and gcd(a, b, c, q) = 1.
  Prototype(Discriminant d, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t q);

  const Discriminant& disc() const { return d_; }
  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }
  std::int64_t c() const { return c_; }
  std::int64_t q() const { return q_; }
  Triple triple() const { return {a_, b_, c_}; }

  /// gcd(a, b, c)
  std::int64_t g() const { return g_; }
  std::int64_t a_prime() const { return a_ / g_; }
  std::int64_t b_prime() const { return b_ / g_; }
  std::int64_t c_prime() const { return c_ / g_; }
  /// q / gcd(a, b, c), a residue mod 1.
  Rational q_prime() const { return make_rational(q_, g_); }

  /// The root (-b + sqrt D) / 2a, which exceeds 1.
  QuadNum lambda() const;

  /// "D:a,b,c,q"
  std::string to_string() const;
  static Prototype parse(std::string_view text);

  friend bool operator==(const Prototype& x, const Prototype& y) {
    return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.q_ == y.q_;
  }
  friend auto operator<=>(const Prototype& x, const Prototype& y) {
    if (auto cmp = x.d_ <=> y.d_; cmp != 0) return cmp;
    return std::tie(x.a_, x.b_, x.c_, x.q_) <=> std::tie(y.a_, y.b_, y.c_, y.q_);
  }

 private:
  Discriminant d_;
  std::int64_t a_, b_, c_, q_, g_;
};

/// All prototypes of discriminant D, ordered lexicographically by (a, b, c, q).
std::vector<Prototype> enumerate_prototypes(const Discriminant& d);

Prototype next_prototype(const Prototype& p);
Prototype prev_prototype(const Prototype& p);
Prototype invol_t(const Prototype& p);
Prototype invol_s(const Prototype& p);

QuadNum v_of(const Prototype& p);
QuadNum v_prime(const Prototype& p);
/// v'(P) + v'(s(P)), from the definition.
QuadNum w_of(const Prototype& p);
/// The rational closed form of w on a triple of S_D.
Rational w_closed_form(const Triple& t);

struct TripleSets {
  std::vector<Triple> s;        // a > 0, c < 0, a + b + c < 0
  std::vector<Triple> s_prime;  // a > 0, c < 0
};

TripleSets triple_sets(const Discriminant& d);

/// (a, b, c) -> (-c, -b, -a)
inline Triple sigma(const Triple& t) { return {-t.c, -t.b, -t.a}; }

}  // namespace eigenflat
