#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "billiards/projective.hpp"
#include "billiards/sample.hpp"

using namespace billiards;

TEST_CASE("polar duality is the coordinate identity and an involution") {
  HomPoint p(Scalar(0), Scalar(0), Scalar(1));
  ProjLine l = polar_dual(p);
  CHECK(l == ProjLine(Scalar(0), Scalar(0), Scalar(1)));  // the line x3 = 0
  // tangent covector of {wt = z^2} at (z0, z0^2): (-2 z0, 1, z0^2)
  Scalar z0(3);
  HomPoint q = polar_dual(ProjLine(Scalar(-2) * z0, Scalar(1), z0 * z0));
  CHECK(q == HomPoint(Scalar(-6), Scalar(1), Scalar(9)));
  HomPoint r(Scalar(3), Scalar(5), Scalar(7));
  CHECK(polar_dual(polar_dual(r)) == r);
}

TEST_CASE("line through points") {
  ProjLine l = line_through(HomPoint(Scalar(1), Scalar(0), Scalar(1)),
                            HomPoint(Scalar(0), Scalar(1), Scalar(1)));
  CHECK(l == ProjLine(Scalar(-1), Scalar(-1), Scalar(1)));
  ProjLine axis = line_through(HomPoint(Scalar(0), Scalar(0), Scalar(1)),
                               HomPoint(Scalar(1), Scalar(0), Scalar(1)));
  CHECK(axis == ProjLine(Scalar(0), Scalar(1), Scalar(0)));  // {x2 = 0}
  CHECK_THROWS_AS(line_through(HomPoint(Scalar(1), Scalar(2), Scalar(1)),
                               HomPoint(Scalar(2), Scalar(4), Scalar(2))),
                  Error);
}

TEST_CASE("the dual of a line through P never coincides with P off the absolute") {
  SampleGen gen(3);
  int checked = 0;
  for (int k = 0; k < 400 && checked < 100; ++k) {
    HomPoint p(Scalar(gen.rational(50)), Scalar(gen.rational(50)),
               Scalar(gen.rational(50, true)));
    HomPoint q(Scalar(gen.rational(50)), Scalar(gen.rational(50)),
               Scalar(gen.rational(50, true)));
    if (p == q) continue;
    Scalar pp = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
    if (pp.is_zero()) continue;
    ++checked;
    HomPoint dual = polar_dual(line_through(p, q));
    CHECK(!(p == dual));
    CHECK(polar_dual(p).incident(p) == false);
  }
  CHECK(checked == 100);
}

TEST_CASE("eta family") {
  // eta_0: zeta -> 2 - zeta
  MobiusMap e0 = eta(Scalar(0));
  CHECK(e0.apply(ChartValue(Scalar(5))) == ChartValue(Scalar(-3)));
  // eta_1 = 1/zeta
  MobiusMap e1 = eta(Scalar(1));
  CHECK(e1.apply(ChartValue(Scalar(4))) == ChartValue(Scalar(1, 4)));
  // eta_2: zeta/(2 zeta - 1), swaps infinity and 1/2
  MobiusMap e2 = eta(Scalar(2));
  CHECK(e2.apply(ChartValue::infinity()) == ChartValue(Scalar(1, 2)));
  CHECK(e2.apply(ChartValue(Scalar(1, 2))) == ChartValue::infinity());
  SampleGen gen(17);
  for (int k = 0; k < 50; ++k) {
    Scalar rho(gen.rational(60));
    MobiusMap e = eta(rho);
    CHECK(e.is_involution());
    CHECK(e.apply(ChartValue(Scalar(1))) == ChartValue(Scalar(1)));
    CHECK(e.apply(ChartValue::infinity()) == theta_of(rho));
  }
}

TEST_CASE("mobius from three pairs") {
  MobiusMap neg = mobius_from_three_pairs(
      {ChartValue(Scalar(0)), ChartValue(Scalar(1)), ChartValue::infinity()},
      {ChartValue(Scalar(0)), ChartValue(Scalar(-1)), ChartValue::infinity()});
  CHECK(neg.apply(ChartValue(Scalar(7))) == ChartValue(Scalar(-7)));
  MobiusMap inv = mobius_from_three_pairs(
      {ChartValue(Scalar(1)), ChartValue(Scalar(0)), ChartValue::infinity()},
      {ChartValue(Scalar(1)), ChartValue::infinity(), ChartValue(Scalar(0))});
  CHECK(inv.proportional_to(eta(Scalar(1))));
  MobiusMap e2 = mobius_from_three_pairs(
      {ChartValue(Scalar(1)), ChartValue(Scalar(1, 2)), ChartValue::infinity()},
      {ChartValue(Scalar(1)), ChartValue::infinity(), ChartValue(Scalar(1, 2))});
  CHECK(e2.proportional_to(eta(Scalar(2))));
  // reproduces eta(rho) from (1 -> 1, inf -> theta, theta -> inf)
  SampleGen gen(23);
  for (int k = 0; k < 50; ++k) {
    Scalar rho(gen.rational(40, true));
    ChartValue theta = theta_of(rho);
    if (theta == ChartValue(Scalar(1))) continue;
    MobiusMap m = mobius_from_three_pairs(
        {ChartValue(Scalar(1)), ChartValue::infinity(), theta},
        {ChartValue(Scalar(1)), theta, ChartValue::infinity()});
    CHECK(m.proportional_to(eta(rho)));
  }
}

TEST_CASE("chart transport") {
  SampleGen gen(31);
  for (int k = 0; k < 25; ++k) {
    Scalar rho(gen.rational(30));
    // eta_rho in y = 1/(zeta - 1): y -> -y - rho
    MobiusMap in_y = chart_transport(eta(rho), Chart::y());
    MobiusMap expect_y(Scalar(-1), -rho, Scalar(0), Scalar(1), Chart::y());
    CHECK(in_y.proportional_to(expect_y));
    // eta_rho in u = zeta - 1: u -> -u / (1 + rho u)
    MobiusMap in_u = chart_transport(eta(rho), Chart::u());
    MobiusMap expect_u(Scalar(-1), Scalar(0), rho, Scalar(1), Chart::u());
    CHECK(in_u.proportional_to(expect_u));
  }
  // identity is chart-invariant
  MobiusMap id(Scalar(1), Scalar(0), Scalar(0), Scalar(1), Chart::zeta());
  CHECK(chart_transport(id, Chart::y()).is_identity());
  // functoriality: zeta -> u -> y equals zeta -> y
  MobiusMap m = eta(Scalar(5, 3));
  MobiusMap via_u = chart_transport(chart_transport(m, Chart::u()), Chart::y());
  MobiusMap direct = chart_transport(m, Chart::y());
  CHECK(via_u.proportional_to(direct));
}
