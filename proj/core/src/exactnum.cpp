#include "eigenflat/exactnum.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <vector>

#include "eigenflat/errors.hpp"

namespace eigenflat {

namespace {

// Trial-division factorization; inputs here are small (discriminants,
// divisor-sum arguments), so this is never a bottleneck.
std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool squarefree(std::int64_t n) {
  for (auto [p, e] : factor(n)) {
    if (e > 1) return false;
  }
  return true;
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

int legendre(std::int64_t a, std::int64_t p) {
  a = mod(a, p);
  if (a == 0) return 0;
  // Euler's criterion with 128-bit intermediate products.
  unsigned __int128 result = 1, base = static_cast<unsigned __int128>(a);
  std::int64_t e = (p - 1) / 2;
  while (e > 0) {
    if (e & 1) result = result * base % static_cast<unsigned __int128>(p);
    base = base * base % static_cast<unsigned __int128>(p);
    e >>= 1;
  }
  return result == 1 ? 1 : -1;
}

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}
  bool done() const { return i_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[i_]; }
  bool accept(char c) {
    if (peek() != c) return false;
    ++i_;
    return true;
  }
  bool accept(std::string_view word) {
    if (s_.substr(i_, word.size()) != word) return false;
    i_ += word.size();
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail();
  }
  std::string digits() {
    std::size_t start = i_;
    while (!done() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail();
    return std::string(s_.substr(start, i_ - start));
  }
  [[noreturn]] void fail() const {
    throw ValidationError("malformed number '" + std::string(s_) + "'");
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

// Unsigned "p" or "p/q".
Rational read_unsigned_rational(Cursor& cur) {
  Integer num(cur.digits());
  Integer den = 1;
  if (cur.accept('/')) {
    den = Integer(cur.digits());
    if (den == 0) throw ValidationError("zero denominator");
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw ValidationError("integer out of range");
  return z.get_si();
}

}  // namespace

Rational make_rational(long num, long den) {
  if (den == 0) throw ValidationError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  Cursor cur(text);
  bool neg = cur.accept('-');
  if (!neg) cur.accept('+');
  Rational r = read_unsigned_rational(cur);
  if (!cur.done()) cur.fail();
  return neg ? Rational(-r) : r;
}

Integer floor(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

std::optional<std::int64_t> exact_isqrt(std::int64_t n) {
  if (n < 0) return std::nullopt;
  Integer z(static_cast<long>(n)), root;
  if (!mpz_perfect_square_p(z.get_mpz_t())) return std::nullopt;
  mpz_sqrt(root.get_mpz_t(), z.get_mpz_t());
  return root.get_si();
}

bool is_discriminant(std::int64_t value) {
  if (value <= 0) return false;
  if (mod(value, 4) > 1) return false;
  return !exact_isqrt(value).has_value();
}

bool is_fundamental_discriminant(std::int64_t value) {
  if (!is_discriminant(value)) return false;
  if (mod(value, 4) == 1) return squarefree(value);
  std::int64_t m = value / 4;
  std::int64_t r = mod(m, 4);
  return (r == 2 || r == 3) && squarefree(m);
}

Discriminant::Discriminant(std::int64_t value) : value_(value) {
  if (value <= 0) throw ValidationError("discriminant must be positive: " + std::to_string(value));
  if (mod(value, 4) > 1) {
    throw ValidationError("discriminant must be 0 or 1 mod 4: " + std::to_string(value));
  }
  if (exact_isqrt(value)) throw ValidationError("square discriminant: " + std::to_string(value));
  sqrt_ = std::sqrt(static_cast<double>(value));
}

DiscriminantParts decompose(const Discriminant& d) {
  const std::int64_t value = d.value();
  std::int64_t best = 1;
  for (std::int64_t f = 1; f * f <= value; ++f) {
    if (value % (f * f) == 0 && is_fundamental_discriminant(value / (f * f))) best = f;
  }
  return {best, value / (best * best)};
}

QuadNum::QuadNum(Discriminant d, Rational x, Rational y)
    : d_(d), x_(std::move(x)), y_(std::move(y)) {
  x_.canonicalize();
  y_.canonicalize();
}

void QuadNum::require_same_field(const QuadNum& o) const {
  if (!(d_ == o.d_)) {
    throw ValidationError("mixed discriminants " + std::to_string(d_.value()) + " and " +
                          std::to_string(o.d_.value()));
  }
}

int QuadNum::sign() const {
  int sx = sgn(x_), sy = sgn(y_);
  if (sy == 0) return sx;
  if (sx == 0) return sy;
  if (sx == sy) return sx;
  // Opposite signs: the part of larger magnitude wins.
  int cmp_sq = cmp(x_ * x_, Rational(d_.value()) * y_ * y_);
  return cmp_sq > 0 ? sx : sy;
}

QuadNum QuadNum::inverse() const {
  if (is_zero()) throw ValidationError("division by zero");
  Rational n = norm();
  return QuadNum(d_, x_ / n, -y_ / n);
}

double QuadNum::to_double() const {
  double s = d_.sqrt_approx();
  double x = x_.get_d(), y = y_.get_d();
  if (sgn(x_) * sgn(y_) < 0) {
    // x + y s = norm / (x - y s), and x - y s has no cancellation here.
    return norm().get_d() / (x - y * s);
  }
  return x + y * s;
}

std::string QuadNum::to_string() const {
  const std::string radical = "*sqrt(" + std::to_string(d_.value()) + ")";
  if (sgn(y_) == 0) return eigenflat::to_string(x_);
  if (sgn(x_) == 0) return eigenflat::to_string(y_) + radical;
  std::string out = eigenflat::to_string(x_);
  if (sgn(y_) > 0) out += "+";
  return out + eigenflat::to_string(y_) + radical;
}

QuadNum QuadNum::parse(std::string_view text, std::optional<Discriminant> context) {
  Cursor cur(text);
  Rational x = 0, y = 0;
  std::optional<std::int64_t> radicand;

  // term := [sign] (rat ['*' 'sqrt(' n ')'] | 'sqrt(' n ')')
  auto read_term = [&](bool first) {
    int sgn_term = 1;
    if (cur.accept('-')) {
      sgn_term = -1;
    } else if (!cur.accept('+') && !first) {
      cur.fail();
    }
    Rational coeff = 1;
    bool has_coeff = false;
    if (cur.peek() != 's') {
      coeff = read_unsigned_rational(cur);
      has_coeff = true;
    }
    bool radical = false;
    if (!has_coeff || cur.accept('*')) {
      if (!cur.accept("sqrt(")) cur.fail();
      std::int64_t n = to_int64(Integer(cur.digits()));
      cur.expect(')');
      if (radicand && *radicand != n) cur.fail();
      radicand = n;
      radical = true;
    }
    coeff *= sgn_term;
    if (radical) {
      if (sgn(y) != 0) cur.fail();
      y = coeff;
    } else {
      if (sgn(x) != 0 || sgn(y) != 0) cur.fail();
      x = coeff;
    }
  };

  read_term(true);
  if (!cur.done()) read_term(false);
  if (!cur.done()) cur.fail();

  if (!radicand) {
    if (!context) throw ValidationError("rational value '" + std::string(text) + "' needs a field");
    return QuadNum(*context, x);
  }
  std::int64_t n = *radicand;
  if (auto root = exact_isqrt(n)) {
    Rational val = x + y * Rational(*root);
    if (!context) {
      throw ValidationError("'" + std::string(text) + "' is rational and needs a field");
    }
    return QuadNum(*context, val);
  }
  QuadNum q = is_discriminant(n) ? QuadNum(Discriminant(n), x, y)
                                 : QuadNum(Discriminant(4 * n), x, y / 2);
  return context ? q.rebased(*context) : q;
}

QuadNum QuadNum::rebased(Discriminant target) const {
  if (target == d_) return *this;
  if (is_rational()) return QuadNum(target, x_);
  // sqrt(D) = k sqrt(D') with k^2 = D / D' a rational square.
  Rational ratio(Integer(static_cast<long>(d_.value())), Integer(static_cast<long>(target.value())));
  ratio.canonicalize();
  Integer rn, rd;
  if (!mpz_perfect_square_p(ratio.get_num_mpz_t()) || !mpz_perfect_square_p(ratio.get_den_mpz_t())) {
    throw ValidationError("Q(sqrt(" + std::to_string(d_.value()) + ")) is not Q(sqrt(" +
                          std::to_string(target.value()) + "))");
  }
  mpz_sqrt(rn.get_mpz_t(), ratio.get_num_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), ratio.get_den_mpz_t());
  return QuadNum(target, x_, y_ * Rational(rn, rd));
}

QuadNum& QuadNum::operator+=(const QuadNum& o) {
  require_same_field(o);
  x_ += o.x_;
  y_ += o.y_;
  return *this;
}

QuadNum& QuadNum::operator-=(const QuadNum& o) {
  require_same_field(o);
  x_ -= o.x_;
  y_ -= o.y_;
  return *this;
}

QuadNum& QuadNum::operator*=(const QuadNum& o) {
  require_same_field(o);
  Rational nx = x_ * o.x_ + Rational(d_.value()) * y_ * o.y_;
  Rational ny = x_ * o.y_ + y_ * o.x_;
  x_ = std::move(nx);
  y_ = std::move(ny);
  return *this;
}

QuadNum& QuadNum::operator/=(const QuadNum& o) {
  require_same_field(o);
  return *this *= o.inverse();
}

QuadNum& QuadNum::operator/=(const Rational& r) {
  if (sgn(r) == 0) throw ValidationError("division by zero");
  x_ /= r;
  y_ /= r;
  return *this;
}

bool operator==(const QuadNum& a, const QuadNum& b) {
  a.require_same_field(b);
  return a.x_ == b.x_ && a.y_ == b.y_;
}

std::strong_ordering operator<=>(const QuadNum& a, const QuadNum& b) {
  int s = (a - b).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const QuadNum& q) { return os << q.to_string(); }

Integer floor(const QuadNum& q) {
  // Start from the float estimate and correct exactly.
  Integer n(std::floor(q.to_double()));
  while ((q - Rational(n)).sign() < 0) n -= 1;
  while ((q - Rational(n + 1)).sign() >= 0) n += 1;
  return n;
}

Integer sigma_m(unsigned m, std::int64_t n) {
  if (n <= 0) throw ValidationError("sigma_m requires n >= 1");
  Integer total = 0;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d), m);
    total += p;
    std::int64_t e = n / d;
    if (e != d) {
      mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(e), m);
      total += p;
    }
  }
  return total;
}

int moebius(std::int64_t n) {
  if (n <= 0) throw ValidationError("moebius requires n >= 1");
  int result = 1;
  for (auto [p, e] : factor(n)) {
    if (e > 1) return 0;
    result = -result;
  }
  return result;
}

int kronecker(std::int64_t d, std::int64_t r) {
  if (r <= 0) throw ValidationError("kronecker requires r >= 1");
  int result = 1;
  for (auto [p, e] : factor(r)) {
    int chi;
    if (p == 2) {
      std::int64_t m = mod(d, 8);
      chi = (m % 2 == 0) ? 0 : (m == 1 || m == 7) ? 1 : -1;
    } else {
      chi = legendre(d, p);
    }
    for (int i = 0; i < e; ++i) result *= chi;
  }
  return result;
}

}  // namespace eigenflat
