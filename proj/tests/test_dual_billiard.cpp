#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "billiards/dual_billiard.hpp"
#include "billiards/sample.hpp"

using namespace billiards;

namespace {

Pencil four_point_pencil() {
  Pencil p;
  p.B = Conic::standard_parabola();
  p.A = Conic::from_upper(
      {Scalar(0), Scalar(0), Scalar(0), Scalar(1), Scalar(-5, 2), Scalar(4)});
  return p;
}

}  // namespace

TEST_CASE("f functions of the catalog") {
  // b1: (5z-3)/(2z(z-1))
  RationalFn1 fb1 = f_function(BilliardSpec::named(NamedKind::B1));
  CHECK(fb1.eval(Scalar(2)) == Scalar(7, 4));
  // d: 4/(3z) + 1/(z-1) = (7z-4)/(3z(z-1))
  RationalFn1 fd = f_function(BilliardSpec::named(NamedKind::D));
  CHECK(fd.eval(Scalar(2)) == Scalar(4, 6) + Scalar(1));
  CHECK(fd.num == UniPoly{Scalar(-4), Scalar(7)});
  // c1 at z=2: 16/7
  RationalFn1 fc1 = f_function(BilliardSpec::named(NamedKind::C1));
  CHECK(fc1.eval(Scalar(2)) == Scalar(16, 7));
  // b2: 3z/(z^2+1)
  RationalFn1 fb2 = f_function(BilliardSpec::named(NamedKind::B2));
  CHECK(fb2.eval(Scalar(1)) == Scalar(3, 2));
  // exotic a: rho/z
  RationalFn1 fa = f_function(BilliardSpec::exotic_a(ExoticASpec::odd(1)));
  CHECK(fa.eval(Scalar(2)) == Scalar(2, 3));  // rho = 4/3 at z = 2
  CHECK_THROWS_AS(f_function(BilliardSpec::pencil(four_point_pencil())), Error);
}

TEST_CASE("sigma_at worked instances") {
  // B1 at P = (2,4), u = 4: u' = -1/2, i.e. (6, 20) -> (3/2, 2)
  MobiusMap s = sigma_at(BilliardSpec::named(NamedKind::B1),
                         HomPoint::affine(Scalar(2), Scalar(4)));
  CHECK(s.chart().tag == Chart::Tag::U);
  CHECK(s.apply(ChartValue(Scalar(4))) == ChartValue(Scalar(-1, 2)));
  // C1 at P = (2,4), u = 7: u' = -7/17
  MobiusMap sc = sigma_at(BilliardSpec::named(NamedKind::C1),
                          HomPoint::affine(Scalar(2), Scalar(4)));
  CHECK(sc.apply(ChartValue(Scalar(7))) == ChartValue(Scalar(-7, 17)));
  // any spec fixes u = 0
  CHECK(sc.apply(ChartValue(Scalar(0))) == ChartValue(Scalar(0)));
  // singular points rejected
  CHECK_THROWS_AS(sigma_at(BilliardSpec::named(NamedKind::B1),
                           HomPoint::affine(Scalar(0), Scalar(0))),
                  Error);
  CHECK_THROWS_AS(sigma_at(BilliardSpec::named(NamedKind::B1),
                           HomPoint(Scalar(0), Scalar(1), Scalar(0))),
                  Error);
}

TEST_CASE("sigma_at is an involution fixing u = 0 on sampled points") {
  SampleGen gen(3);
  for (const BilliardSpec& spec : catalog_specs(3)) {
    RationalFn1 f = f_function(spec);
    int done = 0;
    for (int k = 0; k < 300 && done < 100; ++k) {
      Scalar z0(gen.rational(100));
      if (f.den.eval(z0).is_zero()) continue;
      ++done;
      MobiusMap s = sigma_at(spec, HomPoint::affine(z0, z0 * z0));
      CHECK(s.is_involution());
      CHECK(s.apply(ChartValue(Scalar(0))) == ChartValue(Scalar(0)));
    }
    CHECK(done == 100);
  }
}

TEST_CASE("exotic sigma transported to the zeta chart is eta(rho)") {
  SampleGen gen(9);
  for (int n = 1; n <= 3; ++n) {
    for (const ExoticASpec& a : {ExoticASpec::odd(n), ExoticASpec::even(n)}) {
      for (int k = 0; k < 10; ++k) {
        Scalar z0(gen.rational(50, true));
        MobiusMap s = sigma_at(BilliardSpec::exotic_a(a), HomPoint::affine(z0, z0 * z0));
        MobiusMap zeta = chart_transport(s, Chart::zeta(z0));
        CHECK(zeta.proportional_to(eta(Scalar(a.rho))));
      }
    }
  }
}

TEST_CASE("residue reports of the catalog") {
  // B1: poles {0: 3/2, 1: 1}, infinity 3/2, total 4
  ResidueReport b1 = residue_report(BilliardSpec::named(NamedKind::B1));
  REQUIRE(b1.finite_poles.size() == 2);
  CHECK(b1.finite_poles[0].first == Scalar(0));
  CHECK(b1.finite_poles[0].second == Scalar(3, 2));
  CHECK(b1.finite_poles[1].first == Scalar(1));
  CHECK(b1.finite_poles[1].second == Scalar(1));
  CHECK(b1.infinity_residue == Scalar(3, 2));
  CHECK(b1.total == Scalar(4));
  // C1: three cube roots of unity, each 4/3, infinity regular
  ResidueReport c1 = residue_report(BilliardSpec::named(NamedKind::C1));
  REQUIRE(c1.finite_poles.size() == 3);
  for (const auto& [loc, res] : c1.finite_poles) {
    CHECK(res == Scalar(4, 3));
    CHECK((loc.pow(3)) == Scalar(1));
  }
  CHECK(c1.infinity_residue == Scalar(0));
  CHECK(c1.total == Scalar(4));
  // D: {0: 4/3, 1: 1}, infinity 5/3
  ResidueReport d = residue_report(BilliardSpec::named(NamedKind::D));
  CHECK(d.finite_poles[0].second == Scalar(4, 3));
  CHECK(d.finite_poles[1].second == Scalar(1));
  CHECK(d.infinity_residue == Scalar(5, 3));
  CHECK(d.total == Scalar(4));
  // B2: +-i with residue 3/2 each, infinity 1
  ResidueReport b2 = residue_report(BilliardSpec::named(NamedKind::B2));
  for (const auto& [loc, res] : b2.finite_poles) {
    CHECK(res == Scalar(3, 2));
    CHECK(loc * loc == Scalar(-1));
  }
  CHECK(b2.infinity_residue == Scalar(1));
  CHECK(b2.total == Scalar(4));
  // every catalog total is exactly 4
  for (const BilliardSpec& spec : catalog_specs(5))
    CHECK(residue_report(spec).total == Scalar(4));
}

TEST_CASE("exotic residue reports are (rho, 4 - rho)") {
  for (int n = 1; n <= 5; ++n) {
    for (const ExoticASpec& a : {ExoticASpec::odd(n), ExoticASpec::even(n)}) {
      ResidueReport rep = residue_report(BilliardSpec::exotic_a(a));
      REQUIRE(rep.finite_poles.size() == 1);
      CHECK(rep.finite_poles[0].first == Scalar(0));
      CHECK(rep.finite_poles[0].second == Scalar(a.rho));
      CHECK(rep.infinity_residue == Scalar(BigRat(4) - a.rho));
    }
  }
}

TEST_CASE("pencil residues are the base point contact orders") {
  ResidueReport rep = residue_report(BilliardSpec::pencil(four_point_pencil()));
  REQUIRE(rep.finite_poles.size() == 4);
  for (const auto& [loc, res] : rep.finite_poles) {
    CHECK(res == Scalar(1));
    CHECK((loc == Scalar(1) || loc == Scalar(-1) || loc == Scalar(2) ||
           loc == Scalar(-2)));
  }
  CHECK(rep.infinity_residue == Scalar(0));
  CHECK(rep.total == Scalar(4));

  // a tangent pencil: members wt + 8 z^2 touch gamma at the origin and at
  // infinity with contact 2 -> residue configuration (2, 2)
  Pencil tangent;
  tangent.B = Conic::standard_parabola();
  tangent.A = Conic::from_upper(
      {Scalar(8), Scalar(0), Scalar(0), Scalar(0), Scalar(1, 2), Scalar(0)});
  ResidueReport rep2 = residue_report(BilliardSpec::pencil(tangent));
  REQUIRE(rep2.finite_poles.size() == 1);
  CHECK(rep2.finite_poles[0].first == Scalar(0));
  CHECK(rep2.finite_poles[0].second == Scalar(2));
  CHECK(rep2.infinity_residue == Scalar(2));
  CHECK(rep2.total == Scalar(4));
}

TEST_CASE("pencil sigma agrees with the conic module involution") {
  Pencil p = four_point_pencil();
  SampleGen gen(21);
  for (int k = 0; k < 10; ++k) {
    Scalar z0(gen.rational(25));
    if ((z0 * z0 - Scalar(1)).is_zero() || (z0 * z0 - Scalar(4)).is_zero()) continue;
    HomPoint P = HomPoint::affine(z0, z0 * z0);
    MobiusMap via_f = sigma_at(BilliardSpec::pencil(p), P);
    MobiusMap via_conic = pencil_involution(p, P);
    MobiusMap transported = chart_transport(
        MobiusMap(via_conic.a(), via_conic.b(), via_conic.c(), via_conic.d(),
                  Chart::z()),
        Chart::u(z0));
    CHECK(via_f.proportional_to(transported));
  }
}

TEST_CASE("spec_from_residues round trips and reconstructs") {
  // {0: 3/2, 1: 1}, inf 3/2 -> B1
  BilliardSpec b1 = spec_from_residues({{Scalar(0), Scalar(3, 2)}, {Scalar(1), Scalar(1)}},
                                       Scalar(3, 2));
  CHECK(b1.is_named());
  CHECK(b1.name() == "b1");
  // {0: 4/3, 1: 1}, inf 5/3 -> D
  BilliardSpec d = spec_from_residues({{Scalar(0), Scalar(4, 3)}, {Scalar(1), Scalar(1)}},
                                      Scalar(5, 3));
  CHECK(d.name() == "d");
  // {0: 2}, inf 2 -> the eta_2 member of the exotic family
  BilliardSpec a2 = spec_from_residues({{Scalar(0), Scalar(2)}}, Scalar(2));
  CHECK(a2.is_exotic_a());
  CHECK(std::get<ExoticASpec>(a2.v).rho == BigRat(2));
  // round-trip across the catalog
  for (const BilliardSpec& spec : catalog_specs(4)) {
    if (spec.is_pencil()) continue;
    ResidueReport rep = residue_report(spec);
    BilliardSpec back = spec_from_residues(rep.finite_poles, rep.infinity_residue);
    CHECK(back.name() == spec.name());
  }
  // errors
  CHECK_THROWS_AS(spec_from_residues({{Scalar(0), Scalar(1)}}, Scalar(1)), Error);
  CHECK_THROWS_AS(
      spec_from_residues({{Scalar(0), Scalar(2)}, {Scalar(0), Scalar(1)}}, Scalar(1)),
      Error);
  // an unknown configuration lands in a custom spec, unverified
  BilliardSpec custom = spec_from_residues(
      {{Scalar(5), Scalar(3, 2)}, {Scalar(7), Scalar(1)}}, Scalar(3, 2));
  CHECK(custom.is_custom());
  CHECK(!std::get<CustomSpec>(custom.v).integrability_verified);
  ResidueReport crep = residue_report(custom);
  CHECK(crep.total == Scalar(4));
  CHECK(crep.finite_poles[0].second == Scalar(3, 2));
}

TEST_CASE("coinciding poles are rejected") {
  CustomSpec c;
  c.poles = {{Scalar(0), Scalar(2)}, {Scalar(0), Scalar(2)}};
  c.infinity_residue = Scalar(0);
  // duplicate location slips past spec_from_residues only via direct construction
  CHECK_THROWS_AS(residue_report(BilliardSpec::custom(c)), Error);
}
