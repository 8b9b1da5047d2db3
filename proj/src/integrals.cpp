#include "billiards/integrals.hpp"

namespace billiards {

namespace {

Poly zvar() { return Poly::variable(0); }
Poly wvar() { return Poly::variable(1); }
Poly tvar() { return Poly::variable(2); }

// lhs == k * rhs for some scalar k; returns k.
std::optional<Scalar> proportionality_constant(const Poly& lhs, const Poly& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return std::nullopt;
  const auto& [e0, c0] = *lhs.terms().begin();
  Scalar rc = rhs.coeff(e0);
  if (rc.is_zero()) return std::nullopt;
  Scalar k = c0 / rc;
  if (!(lhs == rhs * k)) return std::nullopt;
  return k;
}

// wt - z^2
Poly conic_poly() { return wvar() * tvar() - zvar() * zvar(); }

// wt - c z^2
Poly member_poly(const Scalar& c) { return wvar() * tvar() - zvar() * zvar() * c; }

Poly affine(long cz, long cw, long ct) {
  return zvar() * Scalar(cz) + wvar() * Scalar(cw) + tvar() * Scalar(ct);
}

}  // namespace

std::vector<BigRat> odd_family_constants(int N) {
  std::vector<BigRat> out;
  for (int j = 1; j <= N; ++j)
    out.push_back(BigRat(-4 * j * (2 * N + 1 - j)) /
                  BigRat((2 * N + 1 - 2 * j) * (2 * N + 1 - 2 * j)));
  return out;
}

std::vector<BigRat> even_family_constants(int N) {
  std::vector<BigRat> out;
  for (int j = 1; j <= N; ++j)
    out.push_back(BigRat(-j * (2 * N + 2 - j)) / BigRat((N + 1 - j) * (N + 1 - j)));
  return out;
}

HomRational classpqr_integral(const BigRat& rho) {
  using boost::multiprecision::abs;
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  Poly top = conic_poly();
  if (rho == 0) return HomRational(top, Poly::constant(Scalar(1)));
  if (rho == 1) return HomRational(top, zvar());
  if (rho == 2) return HomRational(top, wvar());
  if (rho == 3) return HomRational(top, zvar() * wvar());
  if (rho == 4) return HomRational(top, wvar() * wvar());
  BigRat gap = rho - 2;
  BigRat minv = 2 / gap;
  require(denominator(minv) == 1 && abs(minv) >= 3, "RhoNotInM",
          "rho = " + rho.str() + " is not in the admissible set");
  long m = numerator(minv).convert_to<long>();
  bool above = m > 0;  // rho > 2
  long M = above ? m : -m;
  int N = static_cast<int>((M - 1) / 2);
  bool odd = (M % 2 == 1);
  std::vector<BigRat> cj =
      odd ? odd_family_constants(N) : even_family_constants(static_cast<int>(M / 2 - 1));
  Poly num = conic_poly().pow(odd ? 2 * N + 1 : static_cast<int>(M / 2));
  Poly den = Poly::constant(Scalar(1));
  int f_pow = odd ? 2 : 1;
  for (const BigRat& c : cj) den = den * member_poly(Scalar(c)).pow(f_pow);
  if (odd) {
    den = den * (above ? wvar() * wvar() : tvar() * tvar());
  } else {
    den = den * (above ? zvar() * wvar() : zvar() * tvar());
  }
  return HomRational(num, den);
}

HomRational catalog_integral(const BilliardSpec& spec) {
  if (spec.is_named()) {
    Poly c2 = conic_poly() * conic_poly();
    Poly c3 = c2 * conic_poly();
    switch (std::get<NamedKind>(spec.v)) {
      case NamedKind::B1:
        // (wt-z^2)^2 / ((wt+3z^2)(z-t)(z-w))
        return HomRational(c2, member_poly(Scalar(-3)) * affine(1, 0, -1) *
                                   affine(1, -1, 0));
      case NamedKind::B2: {
        // (wt-z^2)^2 / ((z^2+w^2+wt+t^2)(z^2+t^2))
        Poly d1 = zvar() * zvar() + wvar() * wvar() + wvar() * tvar() + tvar() * tvar();
        Poly d2 = zvar() * zvar() + tvar() * tvar();
        return HomRational(c2, d1 * d2);
      }
      case NamedKind::C1: {
        // (wt-z^2)^3 / (t^3+w^3-2zwt)^2
        Poly d = tvar().pow(3) + wvar().pow(3) -
                 zvar() * wvar() * tvar() * Scalar(2);
        return HomRational(c3, d * d);
      }
      case NamedKind::C2: {
        // (wt-z^2)^3 / (8z^3-8z^2w-8z^2t-w^2t-wt^2+10zwt)^2
        Poly d = zvar().pow(3) * Scalar(8) - zvar() * zvar() * wvar() * Scalar(8) -
                 zvar() * zvar() * tvar() * Scalar(8) - wvar() * wvar() * tvar() -
                 wvar() * tvar() * tvar() + zvar() * wvar() * tvar() * Scalar(10);
        return HomRational(c3, d * d);
      }
      case NamedKind::D: {
        // (wt-z^2)^3 / ((wt+8z^2)(z-t) K), K the cubic of the d-structure
        Poly K = wvar() * tvar() * tvar() + zvar() * zvar() * tvar() * Scalar(8) +
                 wvar() * wvar() * tvar() * Scalar(4) +
                 wvar() * zvar() * zvar() * Scalar(5) -
                 zvar() * wvar() * tvar() * Scalar(14) - zvar().pow(3) * Scalar(4);
        return HomRational(c3, member_poly(Scalar(-8)) * affine(1, 0, -1) * K);
      }
    }
  }
  if (spec.is_exotic_a())
    return classpqr_integral(std::get<ExoticASpec>(spec.v).rho);
  if (spec.is_pencil()) {
    const Pencil& p = std::get<PencilSpec>(spec.v).pencil;
    auto form = [](const Matrix3& M) {
      Poly out;
      std::array<Poly, 3> x{Poly::variable(0), Poly::variable(1), Poly::variable(2)};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out = out + x[i] * x[j] * M.m[i][j];
      return out;
    };
    // Ratio of two distinct members: B and A.
    return HomRational(form(p.B.matrix()), form(p.A.matrix()));
  }
  fail("UnknownSpec", "no catalog integral for spec " + spec.name());
}

ProjLine tangent_line_at_11() { return ProjLine(Scalar(-2), Scalar(1), Scalar(1)); }

RationalFn1 restrict_to_line(const HomRational& R, const ProjLine& l) {
  // Solve the line for w: l0 z + l1 w + l2 t = 0, t = 1.
  require(!l[1].is_zero(), "LineInLocus",
          "restriction chart needs a line solvable for w");
  Scalar a = -l[0] / l[1];
  Scalar b = -l[2] / l[1];
  RationalFn1 out = R.restrict_affine_line(a, b);
  require(!out.den.is_zero(), "LineInLocus", "line lies in the polar locus");
  require(!out.num.is_zero(), "LineInLocus", "line lies in the zero locus");
  return out;
}

VerifyReport verify_invariance(const HomRational& R, const BilliardSpec& spec,
                               const VerifyPlan& plan) {
  VerifyReport rep;
  SampleGen gen(plan.seed);
  RationalFn1 f = spec.is_pencil()
                      ? pencil_f_function(std::get<PencilSpec>(spec.v).pencil)
                      : f_function(spec);
  long height = std::max<long>(4, static_cast<long>(plan.height_bound));
  int points = 0;
  int guard = 0;
  while (points < plan.point_samples && guard < plan.point_samples * 50) {
    ++guard;
    Scalar z0(gen.rational(height));
    if (f.den.eval(z0).is_zero()) continue;  // singular point of the structure
    Scalar fz = f.num.eval(z0) / f.den.eval(z0);
    int charts = 0;
    int inner_guard = 0;
    while (charts < plan.chart_samples && inner_guard < plan.chart_samples * 50) {
      ++inner_guard;
      Scalar u(gen.rational(height, /*nonzero=*/true));
      Scalar denom = Scalar(1) + fz * u;
      if (denom.is_zero()) {
        ++rep.skipped;
        continue;
      }
      Scalar u2 = -u / denom;
      // Points on L_P: (z0 + u, z0^2 + 2 z0 u).
      auto on_line = [&](const Scalar& uu) {
        return std::pair<Scalar, Scalar>(z0 + uu, z0 * z0 + Scalar(2) * z0 * uu);
      };
      auto [x1, y1] = on_line(u);
      auto [x2, y2] = on_line(u2);
      HomRational::Value v1 = R.eval_affine(x1, y1);
      HomRational::Value v2 = R.eval_affine(x2, y2);
      if (v1.is_indeterminate() || v2.is_indeterminate() || v1.den.is_zero() ||
          v2.den.is_zero()) {
        ++rep.skipped;
        continue;
      }
      ++charts;
      ++rep.checked;
      if (!v1.equals(v2)) {
        rep.failures.push_back(
            {z0, u,
             "R(x)=" + v1.num.str() + "/" + v1.den.str() + " vs R(sigma x)=" +
                 v2.num.str() + "/" + v2.den.str()});
      }
    }
    if (charts > 0) ++points;
  }
  return rep;
}

bool swap_check(const BigRat& rho) {
  HomRational r1 = classpqr_integral(rho);
  HomRational r2 = classpqr_integral(4 - rho);
  // (z~, w~) = (z/w, 1/w): in homogeneous coordinates [z : w : t] -> [z : t : w].
  HomRational swapped(r1.num().swap_vars(1, 2), r1.den().swap_vars(1, 2));
  return swapped.equals(r2);
}

bool EquivalenceReport::pass() const {
  return q1_identity && q2_identity && integral_match && points_checked >= 20;
}

EquivalenceReport equivalence_pullback_check(EquivalenceCase which) {
  EquivalenceReport rep;
  if (which == EquivalenceCase::C) {
    // epsilon = e^{-2 pi i / 3} = (-1 - sqrt(-3))/2 in Q(sqrt(-3)).
    Scalar eps = Scalar::quad(BigRat(-1, 2), BigRat(-1, 2), -3);
    Scalar epsbar = eps.conjugate();
    Scalar half(1, 2);
    std::array<std::array<Scalar, 3>, 3> M{{{Scalar(-1, 2), half, half},
                                            {Scalar(1), epsbar * half, eps * half},
                                            {Scalar(1), eps * half, epsbar * half}}};
    Poly q1 = wvar() * tvar() - zvar() * zvar();
    Poly q2 = tvar().pow(3) + wvar().pow(3) - zvar() * wvar() * tvar() * Scalar(2);
    Poly q1m = q1.substitute_linear(M);
    rep.q1_identity = (q1m == q1 * Scalar(-3, 4));
    Poly rhs = zvar().pow(3) * Scalar(8) - zvar() * zvar() * wvar() * Scalar(8) -
               zvar() * zvar() * tvar() * Scalar(8) - wvar() * wvar() * tvar() -
               wvar() * tvar() * tvar() + zvar() * wvar() * tvar() * Scalar(10);
    Poly q2m = q2.substitute_linear(M);
    rep.q2_identity = (q2m * Scalar(8) == rhs * Scalar(3));

    // Composite: R_c1 o M = constant * R_c2 as rational functions.
    HomRational rc1 = catalog_integral(BilliardSpec::named(NamedKind::C1));
    HomRational rc2 = catalog_integral(BilliardSpec::named(NamedKind::C2));
    HomRational pulled = rc1.substitute_linear(M);
    auto k = proportionality_constant(pulled.num() * rc2.den(), pulled.den() * rc2.num());
    rep.integral_match = k.has_value();
    if (k) rep.constant = *k;
    SampleGen gen(11);
    for (int i = 0; i < 20 && rep.integral_match; ++i) {
      Scalar z(gen.rational(50)), w(gen.rational(50)), t(gen.rational(50, true));
      auto a = pulled.eval(z, w, t);
      auto b = rc2.eval(z, w, t);
      if (a.den.is_zero() || b.den.is_zero()) {
        --i;
        continue;
      }
      if (!(a.num * b.den - *k * b.num * a.den).is_zero()) rep.integral_match = false;
      ++rep.points_checked;
    }
    return rep;
  }
  // Case b over Q(i): the (fmatr) inverse matrix substitution carries R_b1
  // to R_b2; the constant factor is computed, not assumed.
  Scalar i_unit = Scalar::quad(BigRat(0), BigRat(1), -1);
  Scalar half(1, 2);
  std::array<std::array<Scalar, 3>, 3> Minv{{{Scalar(0), half, half},
                                             {-i_unit, half, -half},
                                             {i_unit, half, -half}}};
  HomRational rb1 = catalog_integral(BilliardSpec::named(NamedKind::B1));
  HomRational rb2 = catalog_integral(BilliardSpec::named(NamedKind::B2));
  HomRational pulled = rb1.substitute_linear(Minv);
  rep.q1_identity = rep.q2_identity = true;  // not applicable in case b
  auto k = proportionality_constant(pulled.num() * rb2.den(), pulled.den() * rb2.num());
  rep.integral_match = k.has_value();
  if (k) {
    rep.constant = *k;
    SampleGen gen(12);
    for (int i = 0; i < 20 && rep.integral_match; ++i) {
      Scalar z(gen.rational(50)), w(gen.rational(50)), t(gen.rational(50, true));
      auto a = pulled.eval(z, w, t);
      auto b = rb2.eval(z, w, t);
      if (a.den.is_zero() || b.den.is_zero() || b.num.is_zero()) {
        --i;
        continue;
      }
      if (!(a.num * b.den - *k * b.num * a.den).is_zero()) rep.integral_match = false;
      ++rep.points_checked;
    }
  }
  return rep;
}

}  // namespace billiards
