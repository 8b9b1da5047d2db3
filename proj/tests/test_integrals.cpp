#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "billiards/integrals.hpp"
#include "billiards/quasihomog.hpp"

using namespace billiards;

namespace {

std::vector<BigRat> admissible_rhos(int kmax) {
  std::vector<BigRat> out{0, 1, 2, 3, 4};
  for (int k = 3; k <= kmax; ++k) {
    out.push_back(BigRat(2) - BigRat(2, k));
    out.push_back(BigRat(2) + BigRat(2, k));
  }
  return out;
}

}  // namespace

TEST_CASE("family constants") {
  CHECK(odd_family_constants(1) == std::vector<BigRat>{BigRat(-8)});
  CHECK(even_family_constants(1) == std::vector<BigRat>{BigRat(-3)});
  CHECK(odd_family_constants(2) == std::vector<BigRat>{BigRat(-16, 9), BigRat(-24)});
}

TEST_CASE("classification table integrals") {
  // R_0 = w - z^2 (homogenized over t^2)
  HomRational r0 = classpqr_integral(BigRat(0));
  CHECK(r0.eval_affine(Scalar(2), Scalar(5)).scalar() == Scalar(1));
  // R_2 = (w - z^2)/w
  HomRational r2 = classpqr_integral(BigRat(2));
  CHECK(r2.eval_affine(Scalar(1), Scalar(3)).scalar() == Scalar(2, 3));
  // R_4 = (w - z^2)/w^2
  HomRational r4 = classpqr_integral(BigRat(4));
  CHECK(r4.eval_affine(Scalar(1), Scalar(3)).scalar() == Scalar(2, 9));
  // rho = 4/3: (w - z^2)^3 / (w + 8z^2)^2
  HomRational ra = classpqr_integral(BigRat(4, 3));
  CHECK(ra.eval_affine(Scalar(0), Scalar(1)).scalar() == Scalar(1));
  CHECK(ra.eval_affine(Scalar(1), Scalar(2)).scalar() == Scalar(1, 100));
  // rho = 2 + 2/3: (w - z^2)^3 / (w^2 (w + 8z^2)^2)
  HomRational rb = classpqr_integral(BigRat(8, 3));
  CHECK(rb.eval_affine(Scalar(1), Scalar(2)).scalar() == Scalar(1, 400));
  CHECK_THROWS_AS(classpqr_integral(BigRat(5, 7)), Error);
}

TEST_CASE("catalog integral worked values") {
  HomRational rb1 = catalog_integral(BilliardSpec::named(NamedKind::B1));
  CHECK(rb1.eval_affine(Scalar(6), Scalar(20)).scalar() == Scalar(-1, 35));
  CHECK(rb1.eval_affine(Scalar(3, 2), Scalar(2)).scalar() == Scalar(-1, 35));
  HomRational rc1 = catalog_integral(BilliardSpec::named(NamedKind::C1));
  Scalar expected = Scalar(-117649) / (Scalar(32193) * Scalar(32193));
  CHECK(rc1.eval_affine(Scalar(9), Scalar(32)).scalar() == expected);
  CHECK(rc1.eval_affine(Scalar(27, 17), Scalar(40, 17)).scalar() == expected);
  // exotic odd N=1 equals the table entry at rho = 4/3
  HomRational ra = catalog_integral(BilliardSpec::exotic_a(ExoticASpec::odd(1)));
  CHECK(ra.equals(classpqr_integral(BigRat(4, 3))));
  // exotic even N=1: (w-z^2)^2 / (z (w+3z^2))
  HomRational re = catalog_integral(BilliardSpec::exotic_a(ExoticASpec::even(1)));
  CHECK(re.equals(classpqr_integral(BigRat(3, 2))));
  CHECK(re.eval_affine(Scalar(1), Scalar(2)).scalar() == Scalar(1, 5));
}

TEST_CASE("numerator and denominator degrees agree") {
  for (const BilliardSpec& spec : catalog_specs(5)) {
    if (spec.is_pencil()) continue;
    HomRational r = catalog_integral(spec);
    CHECK(r.num().is_homogeneous());
    CHECK(r.den().is_homogeneous());
    CHECK(r.num().total_degree() == r.den().total_degree());
  }
}

TEST_CASE("exact invariance for the full catalog") {
  VerifyPlan plan;
  plan.point_samples = 12;
  plan.chart_samples = 4;
  plan.height_bound = 50;
  plan.seed = 7;
  for (const BilliardSpec& spec : catalog_specs(2)) {
    HomRational r = catalog_integral(spec);
    VerifyReport rep = verify_invariance(r, spec, plan);
    INFO(spec.name());
    CHECK(rep.pass());
    CHECK(rep.failures.empty());
  }
}

TEST_CASE("invariance fails for the wrong integral") {
  HomRational rb1 = catalog_integral(BilliardSpec::named(NamedKind::B1));
  VerifyPlan plan;
  plan.point_samples = 6;
  plan.chart_samples = 4;
  plan.height_bound = 20;
  VerifyReport rep = verify_invariance(rb1, BilliardSpec::named(NamedKind::D), plan);
  CHECK(!rep.failures.empty());
}

TEST_CASE("restriction to the tangent line at (1,1)") {
  // R_2 |_L = -(z-1)^2 / (2z-1)
  RationalFn1 r2 = restrict_to_line(classpqr_integral(BigRat(2)), tangent_line_at_11());
  RationalFn1 expect{UniPoly{Scalar(-1), Scalar(2), Scalar(-1)},
                     UniPoly{Scalar(-1), Scalar(2)}};
  CHECK(r2.equals(expect));
  CHECK(r2.num == expect.num);
  CHECK(r2.den == expect.den);
  // R_1 |_L = -(z-1)^2 / z
  RationalFn1 r1 = restrict_to_line(classpqr_integral(BigRat(1)), tangent_line_at_11());
  CHECK(r1.equals(RationalFn1{UniPoly{Scalar(-1), Scalar(2), Scalar(-1)},
                              UniPoly{Scalar(0), Scalar(1)}}));
  // w - z^2 |_L = -(z-1)^2
  RationalFn1 r0 = restrict_to_line(classpqr_integral(BigRat(0)), tangent_line_at_11());
  CHECK(r0.equals(RationalFn1{UniPoly{Scalar(-1), Scalar(2), Scalar(-1)},
                              UniPoly{Scalar(1)}}));
}

TEST_CASE("lines inside a locus are rejected") {
  // the numerator (wt - z^2)^2 vanishes on the tangent line to gamma at no
  // line entirely, but a ratio with the line itself in the zero locus does
  HomRational r(Poly::variable(1) - Poly::variable(0) * Scalar(2) + Poly::variable(2),
                Poly::variable(2));
  // w = 2z - 1 is exactly the zero locus of the numerator
  CHECK_THROWS_AS(restrict_to_line(r, tangent_line_at_11()), Error);
  // vertical lines have no w-chart
  HomRational r2 = classpqr_integral(BigRat(2));
  CHECK_THROWS_AS(restrict_to_line(r2, ProjLine(Scalar(1), Scalar(0), Scalar(-1))),
                  Error);
}

TEST_CASE("eta invariance of restrictions for all admissible rho up to k = 15") {
  for (const BigRat& rho : admissible_rhos(15)) {
    RationalFn1 rest = restrict_to_line(classpqr_integral(rho), tangent_line_at_11());
    MobiusMap e = eta(Scalar(rho));
    INFO(rho.str());
    CHECK(rest.invariant_under_mobius(e.a(), e.b(), e.c(), e.d()));
    // and not invariant under a wrong eta
    MobiusMap wrong = eta(Scalar(rho) + Scalar(1, 2));
    CHECK(!rest.invariant_under_mobius(wrong.a(), wrong.b(), wrong.c(), wrong.d()));
  }
}

TEST_CASE("swap identity for all admissible rho up to k = 15") {
  for (const BigRat& rho : admissible_rhos(15)) {
    INFO(rho.str());
    CHECK(swap_check(rho));
  }
}

TEST_CASE("catalog residues lie in the admissible set") {
  for (const BilliardSpec& spec : catalog_specs(5)) {
    ResidueReport rep = residue_report(spec);
    for (const auto& [loc, res] : rep.finite_poles) {
      REQUIRE(res.is_rational());
      CHECK(classify_rho(res.rat()).in_M);
      CHECK(!res.is_zero());
    }
    if (!rep.infinity_residue.is_zero())
      CHECK(classify_rho(rep.infinity_residue.rat()).in_M);
  }
}

TEST_CASE("pencil integral invariance") {
  Pencil p;
  p.B = Conic::standard_parabola();
  p.A = Conic::from_upper(
      {Scalar(0), Scalar(0), Scalar(0), Scalar(1), Scalar(-5, 2), Scalar(4)});
  BilliardSpec spec = BilliardSpec::pencil(p);
  HomRational r = catalog_integral(spec);
  VerifyPlan plan;
  plan.point_samples = 16;
  plan.chart_samples = 4;
  plan.height_bound = 40;
  VerifyReport rep = verify_invariance(r, spec, plan);
  CHECK(rep.pass());
  // the ratio of two other distinct members works equally well
  auto form = [&](const Scalar& lambda) {
    Conic m = p.member(lambda);
    Poly out;
    std::array<Poly, 3> x{Poly::variable(0), Poly::variable(1), Poly::variable(2)};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out = out + x[i] * x[j] * m.matrix().m[i][j];
    return out;
  };
  HomRational other(form(Scalar(1)), form(Scalar(3)));
  VerifyReport rep2 = verify_invariance(other, spec, plan);
  CHECK(rep2.pass());
}

TEST_CASE("equivalence pullback case c") {
  EquivalenceReport rep = equivalence_pullback_check(EquivalenceCase::C);
  CHECK(rep.q1_identity);
  CHECK(rep.q2_identity);
  CHECK(rep.integral_match);
  CHECK(rep.points_checked >= 20);
  CHECK(rep.constant == Scalar(-3));
  CHECK(rep.pass());
}

TEST_CASE("equivalence pullback case b") {
  EquivalenceReport rep = equivalence_pullback_check(EquivalenceCase::B);
  CHECK(rep.integral_match);
  CHECK(rep.points_checked >= 20);
  CHECK(rep.constant == Scalar(1));
  CHECK(rep.pass());
}

TEST_CASE("verification is deterministic in the seed") {
  VerifyPlan plan;
  plan.point_samples = 4;
  plan.chart_samples = 2;
  plan.height_bound = 30;
  plan.seed = 99;
  BilliardSpec spec = BilliardSpec::named(NamedKind::D);
  HomRational r = catalog_integral(spec);
  VerifyReport a = verify_invariance(r, spec, plan);
  VerifyReport b = verify_invariance(r, spec, plan);
  CHECK(a.checked == b.checked);
  CHECK(a.skipped == b.skipped);
}
