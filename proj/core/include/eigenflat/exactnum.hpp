#pragma once

// Exact arithmetic in real quadratic fields Q(sqrt D) plus the elementary
// arithmetic functions used by the invariant computations.
//
// Integers and rationals are GMP-backed (mpz_class / mpq_class): there is no
// fixed-width overflow anywhere in the exact layer. Rationals are always kept
// canonical (lowest terms, positive denominator), so equality is structural.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace eigenflat {

using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

/// "p" for integers, "p/q" otherwise. Always lowest terms.
std::string to_string(const Rational& r);

/// Parses "p" or "p/q" with an optional leading sign.
Rational parse_rational(std::string_view text);

/// floor of a rational as an integer.
Integer floor(const Rational& r);

/// Exact integer square root test; returns the root if n is a perfect square.
std::optional<std::int64_t> exact_isqrt(std::int64_t n);

bool is_discriminant(std::int64_t value);
bool is_fundamental_discriminant(std::int64_t value);

/// A positive nonsquare integer congruent to 0 or 1 mod 4.
class Discriminant {
 public:
  explicit Discriminant(std::int64_t value);

  std::int64_t value() const { return value_; }
  double sqrt_approx() const { return sqrt_; }
  bool is_fundamental() const { return is_fundamental_discriminant(value_); }

  friend bool operator==(const Discriminant& a, const Discriminant& b) {
    return a.value_ == b.value_;
  }
  friend auto operator<=>(const Discriminant& a, const Discriminant& b) {
    return a.value_ <=> b.value_;
  }

 private:
  std::int64_t value_;
  double sqrt_;
};

struct DiscriminantParts {
  std::int64_t conductor;    // f
  std::int64_t fundamental;  // E, so that D = f^2 E
};

/// D = f^2 E with E fundamental and f maximal.
DiscriminantParts decompose(const Discriminant& d);

/// x + y sqrt(D), evaluated under the embedding sending sqrt(D) to the
/// positive real root.
class QuadNum {
 public:
  explicit QuadNum(Discriminant d, Rational x = 0, Rational y = 0);
  QuadNum(Discriminant d, long x) : QuadNum(d, Rational(x)) {}

  static QuadNum sqrt_d(Discriminant d) { return QuadNum(d, 0, 1); }

  const Discriminant& disc() const { return d_; }
  const Rational& rational_part() const { return x_; }
  const Rational& sqrt_part() const { return y_; }

  bool is_zero() const { return sgn(x_) == 0 && sgn(y_) == 0; }
  bool is_rational() const { return sgn(y_) == 0; }

  /// Sign under the first embedding, decided without floating point.
  int sign() const;
  QuadNum conj() const { return QuadNum(d_, x_, -y_); }
  Rational norm() const { return x_ * x_ - Rational(d_.value()) * y_ * y_; }
  Rational trace() const { return 2 * x_; }
  QuadNum inverse() const;

  /// Nearest double; avoids cancellation when the two parts have opposite sign.
  double to_double() const;

  /// Canonical text form: "p/q", "p/q+r/s*sqrt(D)", "r/s*sqrt(D)".
  std::string to_string() const;

  /// Parses the canonical grammar. "sqrt(n)" for n that is not itself a
  /// discriminant is rewritten over 4n; a purely rational string needs
  /// `context` to know its field. When `context` is given the result is
  /// expressed over it (the fields must agree).
  static QuadNum parse(std::string_view text,
                       std::optional<Discriminant> context = std::nullopt);

  /// Same number written over another discriminant of the same field.
  QuadNum rebased(Discriminant target) const;

  QuadNum operator-() const { return QuadNum(d_, -x_, -y_); }
  QuadNum& operator+=(const QuadNum& o);
  QuadNum& operator-=(const QuadNum& o);
  QuadNum& operator*=(const QuadNum& o);
  QuadNum& operator/=(const QuadNum& o);
  QuadNum& operator+=(const Rational& r) { x_ += r; return *this; }
  QuadNum& operator-=(const Rational& r) { x_ -= r; return *this; }
  QuadNum& operator*=(const Rational& r) { x_ *= r; y_ *= r; return *this; }
  QuadNum& operator/=(const Rational& r);

  friend QuadNum operator+(QuadNum a, const QuadNum& b) { return a += b; }
  friend QuadNum operator-(QuadNum a, const QuadNum& b) { return a -= b; }
  friend QuadNum operator*(QuadNum a, const QuadNum& b) { return a *= b; }
  friend QuadNum operator/(QuadNum a, const QuadNum& b) { return a /= b; }
  friend QuadNum operator+(QuadNum a, const Rational& b) { return a += b; }
  friend QuadNum operator-(QuadNum a, const Rational& b) { return a -= b; }
  friend QuadNum operator*(QuadNum a, const Rational& b) { return a *= b; }
  friend QuadNum operator/(QuadNum a, const Rational& b) { return a /= b; }
  friend QuadNum operator+(const Rational& a, QuadNum b) { return b += a; }
  friend QuadNum operator-(const Rational& a, const QuadNum& b) { return -b + a; }
  friend QuadNum operator*(const Rational& a, QuadNum b) { return b *= a; }

  friend bool operator==(const QuadNum& a, const QuadNum& b);
  friend std::strong_ordering operator<=>(const QuadNum& a, const QuadNum& b);

 private:
  void require_same_field(const QuadNum& o) const;

  Discriminant d_;
  Rational x_;
  Rational y_;
};

std::ostream& operator<<(std::ostream& os, const QuadNum& q);

inline int sign_of(const QuadNum& q) { return q.sign(); }
inline QuadNum galois_conj(const QuadNum& q) { return q.conj(); }
inline Rational norm(const QuadNum& q) { return q.norm(); }

/// Largest integer <= q.
Integer floor(const QuadNum& q);

/// Sum of m-th powers of the positive divisors of n (n >= 1).
Integer sigma_m(unsigned m, std::int64_t n);

/// Moebius function (n >= 1).
int moebius(std::int64_t n);

/// Kronecker symbol (D / r) for r >= 1.
int kronecker(std::int64_t d, std::int64_t r);

}  // namespace eigenflat
