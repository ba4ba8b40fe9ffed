#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <sstream>

#include "redtensor/cyclotomic.hpp"
#include "redtensor/linalg.hpp"

using rtp::Cyc;
using rtp::Rat;

namespace {

// independent oracle: arithmetic in Z[x]/(x^4+1) for conductor-8 expressions
struct Mod8Poly {
  long c[4] = {0, 0, 0, 0};  // coefficients of 1, x, x^2, x^3 with x = E(8)
  static Mod8Poly unit_power(int k) {
    Mod8Poly p;
    k %= 8;
    if (k < 0) k += 8;
    int sign = 1;
    if (k >= 4) {
      k -= 4;
      sign = -1;
    }
    p.c[k] = sign;
    return p;
  }
  Mod8Poly mul(const Mod8Poly& o) const {
    long raw[7] = {0};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) raw[i + j] += c[i] * o.c[j];
    Mod8Poly r;
    for (int i = 0; i < 4; ++i) r.c[i] = raw[i];
    for (int i = 4; i < 7; ++i) r.c[i - 4] -= raw[i];  // x^4 = -1
    return r;
  }
  Mod8Poly sub(const Mod8Poly& o) const {
    Mod8Poly r;
    for (int i = 0; i < 4; ++i) r.c[i] = c[i] - o.c[i];
    return r;
  }
};

}  // namespace

TEST_CASE("roots of unity basics") {
  Cyc e8 = Cyc::root_of_unity(8);
  CHECK(e8.conductor() == 8);
  CHECK((e8 * e8.inv()).is_one());              // E(8)*E(8)^-1 = 1
  CHECK(e8.pow(8).is_one());
  CHECK(e8.pow(4) == Cyc(-1));
  Cyc e4 = Cyc::root_of_unity(4);
  CHECK((e4 + e4.pow(3)).is_zero());            // E(4)+E(4)^3 = 0
  CHECK(Cyc::root_of_unity(2) == Cyc(-1));
  CHECK(Cyc::root_of_unity(6).conductor() == 3);  // conductor 6 is rewritten at 3
}

TEST_CASE("sqrt2 squared is 2, matching the independent mod-8 oracle") {
  // oracle: (x - x^3)^2 in Z[x]/(x^4+1)
  Mod8Poly x = Mod8Poly::unit_power(1), x3 = Mod8Poly::unit_power(3);
  Mod8Poly sq = x.sub(x3).mul(x.sub(x3));
  CHECK(sq.c[0] == 2);
  CHECK(sq.c[1] == 0);
  CHECK(sq.c[2] == 0);
  CHECK(sq.c[3] == 0);

  Cyc s = Cyc::root_of_unity(8) - Cyc::root_of_unity(8).pow(3);
  CHECK(s * s == Cyc(2));
  CHECK(s.is_real_positive());
}

TEST_CASE("canonicalization finds minimal conductors") {
  // E(8)^2 = i lives at conductor 4
  Cyc i = Cyc::root_of_unity(8).pow(2);
  CHECK(i.canonical().conductor() == 4);
  CHECK(i == Cyc::root_of_unity(4));
  // E(3) + E(3)^2 = -1 is rational
  Cyc m1 = Cyc::root_of_unity(3) + Cyc::root_of_unity(3).pow(2);
  CHECK(m1 == Cyc(-1));
  CHECK(m1.canonical().conductor() == 1);
  CHECK(m1.as_rational().value() == Rat(-1));
  // canonicalize is idempotent
  Cyc z = (Cyc::root_of_unity(16) + Cyc(Rat(1, 2))) * Cyc::root_of_unity(16).pow(15);
  CHECK(z.canonical().canonical() == z.canonical());
}

TEST_CASE("field operations close after conductor lifting") {
  Cyc a = Cyc::root_of_unity(3), b = Cyc::root_of_unity(4);
  Cyc p = a * b;
  CHECK(p.conductor() == 12);
  CHECK(p == Cyc::root_of_unity(12, 7));  // E(3)E(4) = E(12)^{4+3}
  Cyc s = a + b;
  CHECK((s - b) == a);
  CHECK((s * s.inv()).is_one());
  CHECK(s.conj().conj() == s);
  // conj is complex conjugation under the canonical embedding
  auto z = s.to_complex();
  auto zc = s.conj().to_complex();
  CHECK(std::abs(z - std::conj(zc)) < 1e-12);
}

TEST_CASE("associativity of multiplication on mixed-conductor triples") {
  std::vector<Cyc> xs = {
      Cyc(Rat(3, 7)),
      Cyc::root_of_unity(8) - Cyc(2),
      Cyc::root_of_unity(3) + Cyc::root_of_unity(5),
      Cyc::root_of_unity(16).pow(5) * Cyc(Rat(-2, 3)) + Cyc(1),
  };
  for (const Cyc& x : xs)
    for (const Cyc& y : xs)
      for (const Cyc& z : xs) {
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
      }
}

TEST_CASE("root-of-unity detection") {
  auto r = Cyc::root_of_unity(16, 3).as_root_of_unity();
  REQUIRE(r.has_value());
  CHECK(r->first == 16);
  CHECK(r->second == 3);
  auto m = Cyc(-1).as_root_of_unity();
  REQUIRE(m.has_value());
  CHECK(m->first == 2);
  CHECK(m->second == 1);
  CHECK(Cyc(1).as_root_of_unity()->first == 1);
  CHECK(!Cyc(2).as_root_of_unity().has_value());
  CHECK(!(Cyc(1) + Cyc::root_of_unity(4)).as_root_of_unity().has_value());
}

TEST_CASE("exact square roots") {
  CHECK(Cyc::sqrt_rational(Rat(2)) * Cyc::sqrt_rational(Rat(2)) == Cyc(2));
  CHECK(Cyc::sqrt_rational(Rat(3)) * Cyc::sqrt_rational(Rat(3)) == Cyc(3));
  CHECK(Cyc::sqrt_rational(Rat(6)) * Cyc::sqrt_rational(Rat(6)) == Cyc(6));
  CHECK(Cyc::sqrt_rational(Rat(1, 2)) * Cyc::sqrt_rational(Rat(1, 2)) == Cyc(Rat(1, 2)));
  CHECK(Cyc::sqrt_rational(Rat(-1)) == Cyc::root_of_unity(4));
  CHECK(Cyc::sqrt_rational(Rat(2)).is_real_positive());
  CHECK(Cyc::sqrt_rational(Rat(5)).is_real_positive());

  Cyc x = Cyc(2) * Cyc::root_of_unity(3);
  auto s = x.sqrt();
  REQUIRE(s.has_value());
  CHECK((*s) * (*s) == x);
  auto e6 = (Cyc(1) + Cyc::root_of_unity(3)).sqrt();  // 1+E(3) = E(6)
  REQUIRE(e6.has_value());
  CHECK((*e6) * (*e6) == Cyc(1) + Cyc::root_of_unity(3));
  auto none = (Cyc(1) + Cyc::root_of_unity(4)).sqrt();
  CHECK(!none.has_value());  // |1+i| = sqrt(2) is irrational
}

TEST_CASE("printing and parsing round-trip") {
  std::vector<Cyc> xs = {
      Cyc(0),
      Cyc(Rat(-3, 4)),
      Cyc::root_of_unity(8) - Cyc::root_of_unity(8).pow(3),
      Cyc(Rat(1, 2)) * Cyc::root_of_unity(16).pow(9) + Cyc(5),
      Cyc::root_of_unity(7, 3) - Cyc(Rat(2, 9)),
  };
  for (const Cyc& x : xs) {
    CHECK(Cyc::parse(x.str()) == x);
  }
  CHECK(Cyc::parse("E(16)^-1") == Cyc::root_of_unity(16).inv());
  CHECK(Cyc::parse("(E(8)-E(8)^3)/2 * (E(8)-E(8)^3)") == Cyc(1));
  CHECK(Cyc::parse("1/2 - 1/2") == Cyc(0));
  CHECK_THROWS_AS(Cyc::parse("E(8"), rtp::ScalarParseError);
  CHECK_THROWS_AS(Cyc::parse("1 + "), rtp::ScalarParseError);
}

TEST_CASE("matrix solve, nullspace, inverse over Cyc") {
  using M = rtp::Matrix<Cyc>;
  M a(2, 2);
  a.at(0, 0) = Cyc(1);
  a.at(0, 1) = Cyc::root_of_unity(4);
  a.at(1, 0) = Cyc(2);
  a.at(1, 1) = Cyc(-1);
  auto inv = a.inverse();
  REQUIRE(inv.has_value());
  CHECK((a * *inv) == M::identity(2));
  CHECK((*inv * a) == M::identity(2));

  M sing(2, 2);
  sing.at(0, 0) = Cyc(1);
  sing.at(0, 1) = Cyc(2);
  sing.at(1, 0) = Cyc(3);
  sing.at(1, 1) = Cyc(6);
  CHECK(sing.rank() == 1);
  auto ker = sing.nullspace();
  CHECK(ker.cols() == 1);
  CHECK((sing * ker).is_zero());
  CHECK(sing.det().is_zero());
}

TEST_CASE("minimal polynomial and extended gcd") {
  using M = rtp::Matrix<Cyc>;
  using P = rtp::Poly<Cyc>;
  M d(3, 3);
  d.at(0, 0) = Cyc(1);
  d.at(1, 1) = Cyc(1);
  d.at(2, 2) = Cyc(-1);
  P mp = rtp::minimal_polynomial(d);
  CHECK(mp.degree() == 2);  // (t-1)(t+1)
  CHECK(mp.eval(Cyc(1)).is_zero());
  CHECK(mp.eval(Cyc(-1)).is_zero());

  P f(std::vector<Cyc>{Cyc(-1), Cyc(0), Cyc(1)});  // t^2 - 1
  P g(std::vector<Cyc>{Cyc(1), Cyc(1)});           // t + 1
  P gcd, u, v;
  P::ext_gcd(f, g, gcd, u, v);
  CHECK(gcd.degree() == 1);
  CHECK((u * f + v * g - gcd).is_zero());
}

TEST_CASE("durand-kerner finds roots numerically") {
  // (t-1)(t-i)(t+2) = t^3 + (1-i) t^2 + (-2 - ... ) -- just check recovered set
  std::vector<std::complex<double>> roots = {{1, 0}, {0, 1}, {-2, 0}};
  std::vector<std::complex<double>> monic = {1};
  for (auto r : roots) {
    std::vector<std::complex<double>> next(monic.size() + 1, 0.0);
    for (std::size_t i = 0; i < monic.size(); ++i) {
      next[i + 1] += monic[i];
      next[i] -= monic[i] * r;
    }
    monic = next;
  }
  auto found = rtp::durand_kerner(monic);  // coefficients are ascending already
  REQUIRE(found.size() == 3);
  for (auto r : roots) {
    bool ok = false;
    for (auto f : found) ok = ok || std::abs(f - r) < 1e-9;
    CHECK(ok);
  }
}
