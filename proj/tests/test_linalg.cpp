#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "redtensor/linalg.hpp"

using namespace rtp;
using M = Matrix<Cyc>;
using P = Poly<Cyc>;

TEST_CASE("kron and trace") {
  M a = M::identity(2);
  a.at(0, 1) = Cyc(3);
  M b(1, 1);
  b.at(0, 0) = Cyc(-2);
  M k = a.kron(b);
  CHECK(k.rows() == 2);
  CHECK(k.at(0, 1) == Cyc(-6));
  CHECK(a.trace() == Cyc(2));
}

TEST_CASE("solve handles inconsistent systems") {
  M a(2, 1);
  a.at(0, 0) = Cyc(1);
  a.at(1, 0) = Cyc(1);
  M b(2, 1);
  b.at(0, 0) = Cyc(1);
  b.at(1, 0) = Cyc(2);
  CHECK(!a.solve(b).has_value());
  b.at(1, 0) = Cyc(1);
  auto x = a.solve(b);
  REQUIRE(x.has_value());
  CHECK(x->at(0, 0) == Cyc(1));
}

TEST_CASE("polynomial division, gcd, squarefree part") {
  // p = (t-1)^2 (t+2)
  P t1(std::vector<Cyc>{Cyc(-1), Cyc(1)});
  P t2(std::vector<Cyc>{Cyc(2), Cyc(1)});
  P p = t1 * t1 * t2;
  P sf = p.squarefree_part();
  CHECK(sf.degree() == 2);
  CHECK(sf.eval(Cyc(1)).is_zero());
  CHECK(sf.eval(Cyc(-2)).is_zero());
  auto [q, r] = p.divmod(t1);
  CHECK(r.is_zero());
  CHECK(q.degree() == 2);
}

TEST_CASE("minimal polynomial of nilpotent and projection") {
  M nil(2, 2);
  nil.at(0, 1) = Cyc(1);
  P mp = minimal_polynomial(nil);
  CHECK(mp.degree() == 2);  // t^2
  CHECK(mp.eval(Cyc(0)).is_zero());

  M proj(2, 2);
  proj.at(0, 0) = Cyc(1);
  P mp2 = minimal_polynomial(proj);
  CHECK(mp2.degree() == 2);  // t(t-1)
  CHECK(mp2.eval(Cyc(0)).is_zero());
  CHECK(mp2.eval(Cyc(1)).is_zero());
}

TEST_CASE("numeric field matches exact results on a small solve") {
  Matrix<NumF> a(2, 2);
  a.at(0, 0) = NumF(2.0);
  a.at(0, 1) = NumF(1.0);
  a.at(1, 0) = NumF(1.0);
  a.at(1, 1) = NumF(1.0);
  auto inv = a.inverse();
  REQUIRE(inv.has_value());
  CHECK((a * *inv) == Matrix<NumF>::identity(2));
}
