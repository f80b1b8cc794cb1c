#include <doctest.h>

#include <random>
#include <sstream>

#include "eigenflat/errors.hpp"
#include "eigenflat/exactnum.hpp"
#include "reference.hpp"

using namespace eigenflat;

namespace {

const Discriminant D5(5), D8(8);

QuadNum q(const char* s, Discriminant d) { return QuadNum::parse(s, d); }

}  // namespace

TEST_CASE("discriminant validation") {
  CHECK_THROWS_AS(Discriminant(4), ValidationError);
  CHECK_THROWS_AS(Discriminant(9), ValidationError);
  CHECK_THROWS_AS(Discriminant(7), ValidationError);
  CHECK_THROWS_AS(Discriminant(0), ValidationError);
  CHECK_THROWS_AS(Discriminant(-3), ValidationError);
  CHECK_NOTHROW(Discriminant(5));
  CHECK_NOTHROW(Discriminant(12));
  CHECK(Discriminant(8).is_fundamental());
  CHECK_FALSE(Discriminant(45).is_fundamental());
}

TEST_CASE("decompose against a brute-force split") {
  CHECK(decompose(Discriminant(5)).conductor == 1);
  CHECK(decompose(Discriminant(45)).conductor == 3);
  CHECK(decompose(Discriminant(45)).fundamental == 5);
  CHECK(decompose(Discriminant(8)).fundamental == 8);
  for (std::int64_t n = 5; n <= 2000; ++n) {
    if (!is_discriminant(n)) continue;
    auto parts = decompose(Discriminant(n));
    auto [f, e] = ref::split(n);
    CHECK(parts.conductor == f);
    CHECK(parts.fundamental == e);
    CHECK(is_fundamental_discriminant(n) == ref::fundamental(n));
  }
}

TEST_CASE("field arithmetic") {
  QuadNum phi = q("1/2+1/2*sqrt(5)", D5);
  QuadNum psi = q("-1/2+1/2*sqrt(5)", D5);
  CHECK(phi * psi == QuadNum(D5, 1));
  CHECK((phi * psi).to_string() == "1");
  CHECK(QuadNum::sqrt_d(D8) * QuadNum::sqrt_d(D8) == QuadNum(D8, 8));
  CHECK(QuadNum(D5, Rational(3, 7)) + QuadNum(D5) == QuadNum(D5, Rational(3, 7)));
  CHECK(phi * phi == phi + Rational(1));
  CHECK(phi.inverse() == psi);
  CHECK(phi / phi == QuadNum(D5, 1));
  CHECK_THROWS_AS(phi / QuadNum(D5), ValidationError);
  CHECK_THROWS_AS(phi + QuadNum::sqrt_d(D8), ValidationError);
}

TEST_CASE("exact sign") {
  CHECK(q("1-1*sqrt(5)", D5).sign() == -1);
  CHECK(q("3-1*sqrt(8)", D8).sign() == 1);
  CHECK(QuadNum(D8).sign() == 0);
  // A unit power close to zero: (3 - sqrt 8)^12 is about 6e-10.
  QuadNum u = q("3-1*sqrt(8)", D8), p(D8, 1);
  for (int i = 0; i < 12; ++i) p *= u;
  CHECK(p.sign() == 1);
  CHECK((-p).sign() == -1);
}

TEST_CASE("sign agrees with a 256-bit evaluation") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 1000);
  const std::int64_t ds[] = {5, 8, 12, 13, 17, 45, 201, 397};
  int checked = 0;
  for (int i = 0; i < 10000; ++i) {
    Discriminant d(ds[i % 8]);
    Rational x(num(rng), den(rng)), y(num(rng), den(rng));
    x.canonicalize();
    y.canonicalize();
    // Every fourth value is pushed next to zero.
    if (i % 4 == 0) {
      mpf_class r(0, 256);
      r = mpf_class(d.value(), 256);
      r = sqrt(r);
      mpf_class t(y, 256);
      t *= r;
      mpz_class n(t * 1000);
      x = Rational(-n, 1000);
      x.canonicalize();
    }
    QuadNum v(d, x, y);
    mpf_class s(0, 256), root(d.value(), 256);
    root = sqrt(root);
    s = mpf_class(x, 256) + mpf_class(y, 256) * root;
    int expect = sgn(s);
    CHECK(v.sign() == expect);
    CHECK((v.to_double() > 0) - (v.to_double() < 0) == expect);
    ++checked;
  }
  CHECK(checked == 10000);
}

TEST_CASE("conjugate and norm") {
  QuadNum phi = q("1/2+1/2*sqrt(5)", D5);
  CHECK(phi.conj() == q("1/2-1/2*sqrt(5)", D5));
  CHECK(phi.norm() == -1);
  CHECK(phi * phi.conj() == QuadNum(D5, phi.norm()));
  QuadNum r(D5, Rational(2, 3));
  CHECK(r.conj() == r);
}

TEST_CASE("string form round-trips") {
  for (const char* s : {"0", "-3/7", "1/2+1/2*sqrt(5)", "-1/4*sqrt(5)", "7-2/3*sqrt(5)"}) {
    CHECK(QuadNum::parse(s, D5).to_string() == s);
  }
  CHECK(QuadNum::parse("1/2+1*sqrt(2)").disc() == D8);
  CHECK(QuadNum::parse("1/2+1*sqrt(2)").to_string() == "1/2+1/2*sqrt(8)");
  CHECK_THROWS_AS(QuadNum::parse("1/2+"), ValidationError);
  CHECK_THROWS_AS(QuadNum::parse("1/0", D5), ValidationError);
  CHECK_THROWS_AS(QuadNum::parse("3/4"), ValidationError);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> n(-99999, 99999), m(1, 999);
  for (int i = 0; i < 500; ++i) {
    Rational x(n(rng), m(rng)), y(n(rng), m(rng));
    x.canonicalize();
    y.canonicalize();
    QuadNum v(Discriminant(13), x, y);
    CHECK(QuadNum::parse(v.to_string(), Discriminant(13)) == v);
  }
}

TEST_CASE("arithmetic functions") {
  CHECK(sigma_m(1, 1) == 1);
  CHECK(sigma_m(1, 6) == 12);
  CHECK(sigma_m(3, 2) == 9);
  CHECK(moebius(1) == 1);
  CHECK(moebius(12) == 0);
  CHECK(moebius(30) == -1);
  CHECK(kronecker(5, 1) == 1);
  CHECK(kronecker(5, 3) == -1);
  CHECK(kronecker(8, 2) == 0);
  for (std::int64_t n = 1; n <= 300; ++n) {
    CHECK(sigma_m(1, n) == ref::sigma(1, n));
    CHECK(sigma_m(3, n) == ref::sigma(3, n));
    CHECK(moebius(n) == ref::mu(n));
  }
}

TEST_CASE("moebius sums over divisors") {
  for (std::int64_t n = 1; n <= 10000; ++n) {
    int s = 0;
    for (std::int64_t d = 1; d * d <= n; ++d) {
      if (n % d) continue;
      s += moebius(d);
      if (d * d != n) s += moebius(n / d);
    }
    CHECK(s == (n == 1 ? 1 : 0));
  }
}

TEST_CASE("kronecker symbol is multiplicative and matches Euler's criterion") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> r(1, 5000);
  const std::int64_t ds[] = {5, 8, 12, 13, 21, 28, 45, 60, 301};
  for (std::int64_t d : ds) {
    for (int i = 0; i < 200; ++i) {
      std::int64_t a = r(rng), b = r(rng);
      CHECK(kronecker(d, a * b) == kronecker(d, a) * kronecker(d, b));
      CHECK(kronecker(d, a) == ref::kronecker(d, a));
    }
  }
}

TEST_CASE("floor") {
  CHECK(floor(q("1/2+1/2*sqrt(5)", D5)) == 1);
  CHECK(floor(q("-1/2-1/2*sqrt(5)", D5)) == -2);
  CHECK(floor(QuadNum(D5, 3)) == 3);
  CHECK(floor(Rational(-7, 2)) == -4);
}
