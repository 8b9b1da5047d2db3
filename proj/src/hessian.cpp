#include "billiards/hessian.hpp"

#include <algorithm>

#include "billiards/integrals.hpp"
#include "billiards/quasihomog.hpp"

namespace billiards {

namespace {

using boost::multiprecision::abs;
using boost::multiprecision::pow;

BigFloat bf(const BigRat& q) { return to_bigfloat(q); }

bool rel_close(const BigFloat& a, const BigFloat& b, const BigFloat& tol) {
  BigFloat mag = std::max(abs(a), abs(b));
  if (mag == 0) return true;
  return abs(a - b) / mag <= tol;
}

BigFloat tol_exp10(int e) { return pow(BigFloat(10), e); }

struct FactorClass {
  // Exponents of z and w, the quadratic factors (c_j, mu_j), and the curve
  // data (p, q) taken from the leading w^q - z^p factor.
  BigRat alpha{0}, beta{0};
  std::vector<std::pair<BigRat, BigRat>> quads;  // (c_j, mu_j), c_j != 1
  int p = 0, q = 0;
  size_t lead_index = 0;
};

FactorClass classify(const FactoredG& g) {
  FactorClass out;
  bool lead_found = false;
  for (size_t i = 0; i < g.factors.size(); ++i) {
    const auto& [poly, e] = g.factors[i];
    require(!poly.is_zero() && e != 0, "InvalidArgument", "trivial factor");
    const auto& terms = poly.terms();
    if (terms.size() == 1) {
      const auto& [exp, coeff] = *terms.begin();
      require(exp[2] == 0, "InvalidArgument", "factors live in (z, w)");
      if (exp[0] == 1 && exp[1] == 0) {
        out.alpha += e;
        continue;
      }
      if (exp[0] == 0 && exp[1] == 1) {
        out.beta += e;
        continue;
      }
      fail("InvalidArgument", "monomial factor must be z or w");
    }
    require(terms.size() == 2, "InvalidArgument",
            "factors must be z, w or w^q - c z^p");
    auto it = terms.begin();
    Exp3 e1 = it->first;
    Scalar c1 = it->second;
    ++it;
    Exp3 e2 = it->first;
    Scalar c2 = it->second;
    // order so that e1 is the z^p term and e2 the w^q term
    if (e1[0] == 0) {
      std::swap(e1, e2);
      std::swap(c1, c2);
    }
    require(e1[1] == 0 && e2[0] == 0 && e1[2] == 0 && e2[2] == 0, "InvalidArgument",
            "two-term factor must be w^q - c z^p");
    int fp = e1[0], fq = e2[1];
    Scalar c = -(c1 / c2);
    require(c.is_rational(), "InvalidArgument", "factor constants must be rational");
    if (c.rat() == 1) {
      require(!lead_found, "InvalidArgument", "duplicate w^q - z^p factor");
      require(e == 1, "InvalidArgument",
              "the w^q - z^p factor must carry exponent 1");
      lead_found = true;
      out.p = fp;
      out.q = fq;
      out.lead_index = i;
      continue;
    }
    out.quads.emplace_back(c.rat(), e);
  }
  require(lead_found, "InvalidArgument", "the w^q - z^p factor is required");
  require(out.p > out.q && out.q >= 1, "InvalidArgument", "need 1 <= q < p");
  // all quadratic factors must match (p, q)
  for (const auto& [poly, e] : g.factors) {
    if (poly.terms().size() != 2) continue;
    int dp = poly.degree_in(0), dq = poly.degree_in(1);
    if (dp == 0 || dq == 0) continue;
    require(dp == out.p && dq == out.q, "InvalidArgument",
            "quadratic factors must share (p, q)");
  }
  return out;
}

bool integer(const BigRat& x) { return boost::multiprecision::denominator(x) == 1; }

struct PartialValues {
  Scalar v, z, w, zz, zw, ww;
};

PartialValues partials_at(const Poly& p, const Scalar& z, const Scalar& w) {
  PartialValues out;
  Poly pz = p.derivative(0), pw = p.derivative(1);
  out.v = p.eval(z, w, Scalar(1));
  out.z = pz.eval(z, w, Scalar(1));
  out.w = pw.eval(z, w, Scalar(1));
  out.zz = pz.derivative(0).eval(z, w, Scalar(1));
  out.zw = pz.derivative(1).eval(z, w, Scalar(1));
  out.ww = pw.derivative(1).eval(z, w, Scalar(1));
  return out;
}

// Honest numeric evaluation of H(G) at an on-curve point, assembling the
// second derivatives by the Leibniz rule with fractional powers only entering
// through the nonvanishing part g.
BigFloat hessian_numeric_at(const FactoredG& g, size_t lead, const BigRat& t,
                            int p, int q) {
  Scalar z = Scalar(t).pow(q);
  Scalar w = Scalar(t).pow(p);
  PartialValues f = partials_at(g.factors[lead].first, z, w);
  // Logarithmic derivatives of the nonvanishing part, exact.
  Scalar Az(0), Aw(0), Azz(0), Azw(0), Aww(0);
  BigFloat gval(1);
  for (size_t i = 0; i < g.factors.size(); ++i) {
    if (i == lead) continue;
    const BigRat& e = g.factors[i].second;
    PartialValues pv = partials_at(g.factors[i].first, z, w);
    require(pv.v.is_rational(), "BranchAmbiguity", "factor value must be rational");
    require(pv.v.sign() > 0, "BranchAmbiguity",
            "factor value is not positive on the sample path");
    Scalar ee(e);
    Scalar v2 = pv.v * pv.v;
    Az += ee * pv.z / pv.v;
    Aw += ee * pv.w / pv.v;
    Azz += ee * (pv.zz * pv.v - pv.z * pv.z) / v2;
    Azw += ee * (pv.zw * pv.v - pv.z * pv.w) / v2;
    Aww += ee * (pv.ww * pv.v - pv.w * pv.w) / v2;
    gval *= pow(bf(pv.v.rat()), bf(e));
  }
  auto F = [&](const Scalar& s) { return bf(s.rat()); };
  BigFloat gz = gval * F(Az), gw = gval * F(Aw);
  BigFloat gzz = gval * F(Az * Az + Azz);
  BigFloat gzw = gval * F(Az * Aw + Azw);
  BigFloat gww = gval * F(Aw * Aw + Aww);
  BigFloat Gz = F(f.z) * gval + F(f.v) * gz;
  BigFloat Gw = F(f.w) * gval + F(f.v) * gw;
  BigFloat Gzz = F(f.zz) * gval + 2 * F(f.z) * gz + F(f.v) * gzz;
  BigFloat Gzw = F(f.zw) * gval + F(f.z) * gw + F(f.w) * gz + F(f.v) * gzw;
  BigFloat Gww = F(f.ww) * gval + 2 * F(f.w) * gw + F(f.v) * gww;
  return Gzz * Gw * Gw - 2 * Gzw * Gz * Gw + Gww * Gz * Gz;
}

}  // namespace

Poly hessian_poly(const Poly& g) {
  require(g.total_degree() >= 1, "InvalidArgument", "Hessian of a constant");
  Poly gz = g.derivative(0), gw = g.derivative(1);
  Poly gzz = gz.derivative(0), gzw = gz.derivative(1), gww = gw.derivative(1);
  return gzz * gw * gw - gzw * gz * gw * Scalar(2) + gww * gz * gz;
}

bool hess3_check(const Poly& f, const Poly& g,
                 const std::vector<std::pair<Scalar, Scalar>>& samples) {
  Poly lhs = hessian_poly(f * g);
  Poly rhs = g.pow(3) * hessian_poly(f);
  for (const auto& [z, w] : samples) {
    require(f.eval(z, w, Scalar(1)).is_zero(), "SampleOffCurve",
            "hess3 samples must satisfy f = 0 exactly");
    if (!(lhs.eval(z, w, Scalar(1)) - rhs.eval(z, w, Scalar(1))).is_zero())
      return false;
  }
  return true;
}

HessianOnCurve hessian_on_curve(const FactoredG& g) {
  FactorClass fc = classify(g);
  HessianOnCurve out;
  BigRat r(fc.p, fc.q);
  BigRat rho0 = BigRat(2) * (r + 1) / 3;
  BigRat N(1);
  for (const auto& [c, mu] : fc.quads) N += mu;
  out.d = 3 * (fc.p * N + fc.alpha + fc.beta * r - rho0);

  bool all_integer = integer(fc.alpha) && fc.alpha >= 0 && integer(fc.beta) &&
                     fc.beta >= 0;
  for (const auto& [c, mu] : fc.quads)
    all_integer = all_integer && integer(mu) && mu > 0;

  // The proof-weighted constant and the literal one.
  {
    Scalar w_exact(BigRat(fc.q * fc.p * (fc.q - fc.p)));
    Scalar lit = w_exact;
    bool weighted_exact = true;
    BigFloat w_num = bf(BigRat(fc.q * fc.p * (fc.q - fc.p)));
    Scalar prod(1);
    for (const auto& [c, mu] : fc.quads) {
      Scalar base(BigRat(1) - c);
      prod *= base;
      if (integer(3 * mu)) {
        w_exact *= base.pow((3 * mu).convert_to<long>());
      } else {
        weighted_exact = false;
        require(base.sign() > 0, "BranchAmbiguity",
                "weighted constant needs positive 1 - c_j");
      }
      w_num *= pow(bf(BigRat(1) - c), bf(3 * mu));
    }
    out.c_literal = lit * prod.pow(3);
    out.c_weighted = weighted_exact ? w_exact : Scalar::approx(w_num);
  }

  if (all_integer) {
    Poly G = Poly::constant(Scalar(1));
    for (const auto& [poly, e] : g.factors) G = G * poly.pow(e.convert_to<int>());
    UniPoly rest = hessian_poly(G).restrict_curve(fc.p, fc.q);
    require(!rest.is_zero(), "FitFailure", "Hessian vanished along the curve");
    int lead = rest.degree();
    for (int k = 0; k < lead; ++k)
      require(rest.coeff(k).is_zero(), "FitFailure",
              "on-curve Hessian is not a monomial");
    require(BigRat(lead) == fc.q * out.d, "FitFailure",
            "exact exponent disagrees with the closed form");
    out.c = rest.coeff(lead);
    out.exact = true;
  } else {
    const std::vector<BigRat> ts{BigRat(1, 2), BigRat(1, 3), BigRat(1, 5),
                                 BigRat(1, 7)};
    std::vector<BigFloat> cs;
    for (const BigRat& t : ts) {
      BigFloat h = hessian_numeric_at(g, fc.lead_index, t, fc.p, fc.q);
      BigFloat scale = pow(bf(t), bf(fc.q * out.d));
      cs.push_back(h / scale);
    }
    for (size_t i = 1; i < cs.size(); ++i)
      require(rel_close(cs[i], cs[0], tol_exp10(-20)), "FitFailure",
              "fitted constant varies across samples");
    out.c = Scalar::approx(cs[0]);
    out.exact = false;
  }

  auto close = [&](const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) return a == b;
    Scalar aa = a.is_approx() ? a : a.to_approx();
    Scalar bb = b.is_approx() ? b : b.to_approx();
    return rel_close(aa.approx_value().re, bb.approx_value().re, tol_exp10(-18)) &&
           rel_close(aa.approx_value().im, bb.approx_value().im, tol_exp10(-18));
  };
  out.matches_weighted = close(out.c, out.c_weighted);
  out.matches_literal = close(out.c, out.c_literal);
  return out;
}

BigRat residue_from_hessian(const HessianOnCurve& h) { return -h.d / 3; }

FactoredG origin_germ(const BilliardSpec& spec) {
  HomRational R = catalog_integral(spec);
  Poly num = R.num().dehomogenized();
  Poly den = R.den().dehomogenized();
  int m1 = num.total_degree() / 2;
  require((Poly::variable(1) - Poly::variable(0).pow(2)).pow(m1) == num,
          "InvalidArgument", "numerator is not a power of w - z^2");
  QHPoly low = lower_part(den, 2, 1);
  QHFactors f = qh_factors(low);
  FactoredG g;
  g.factors.emplace_back(Poly::variable(1) - Poly::variable(0).pow(2), BigRat(1));
  BigRat inv(-1, m1);
  if (f.alpha > 0) g.factors.emplace_back(Poly::variable(0), inv * f.alpha);
  if (f.beta > 0) g.factors.emplace_back(Poly::variable(1), inv * f.beta);
  for (const auto& [c, mu] : f.quadratic) {
    require(c.is_rational(), "InvalidArgument", "origin germ needs rational factors");
    g.factors.emplace_back(Poly::variable(1) - Poly::variable(0).pow(2) * c,
                           inv * mu);
  }
  return g;
}

OdeReport ode_check(const BilliardSpec& spec, int samples) {
  HomRational R = catalog_integral(spec);
  Poly num = R.num().dehomogenized();
  Poly den = R.den().dehomogenized();
  int m1 = num.total_degree() / 2;
  require((Poly::variable(1) - Poly::variable(0).pow(2)).pow(m1) == num,
          "InvalidArgument", "numerator is not a power of w - z^2");
  RationalFn1 f = f_function(spec);
  // q(z) = den |_{w = z^2}; H(z) = -2 q(z)^(-3/m1) on the positive branch.
  UniPoly qz;
  {
    UniPoly zvar = UniPoly::variable();
    UniPoly acc;
    for (const auto& [e, c] : den.terms())
      acc = acc + zvar.pow(e[0] + 2 * e[1]) * c;
    qz = acc;
  }
  BigRat expo(-3, m1);
  auto eval_q = [&](const BigFloat& z) {
    BigFloat acc(0);
    for (int k = qz.degree(); k >= 0; --k) {
      require(qz.coeff(k).is_rational(), "InvalidArgument", "rational q expected");
      acc = acc * z + bf(qz.coeff(k).rat());
    }
    return acc;
  };
  auto Hval = [&](const BigFloat& z) { return BigFloat(-2) * pow(eval_q(z), bf(expo)); };

  OdeReport rep;
  rep.max_rel_error = 0;
  BigFloat h = tol_exp10(-8);
  long candidate = 2;
  int collected = 0;
  int tried = 0;
  while (collected < samples && tried < 400) {
    ++tried;
    long mag = 2 + (candidate - 2) / 2;
    long sign = (candidate % 2 == 0) ? 1 : -1;
    ++candidate;
    Scalar z0(sign * mag);
    if (f.den.eval(z0).is_zero()) continue;
    Scalar qv = qz.eval(z0);
    if (!qv.is_rational() || qv.sign() <= 0) continue;
    BigFloat z = bf(z0.rat());
    BigFloat lhs = (Hval(z + h) - Hval(z - h)) / (2 * h);
    Scalar fz = f.num.eval(z0) / f.den.eval(z0);
    BigFloat rhs = BigFloat(-3) * bf(fz.rat()) * Hval(z);
    BigFloat denom = std::max(abs(lhs), abs(rhs));
    BigFloat rel = denom == 0 ? BigFloat(0) : abs(lhs - rhs) / denom;
    rep.samples.push_back({z0, lhs, rhs, rel});
    rep.max_rel_error = std::max(rep.max_rel_error, rel);
    ++collected;
  }
  require(collected == samples, "SingularSample",
          "could not collect enough admissible sample points");
  rep.pass = rep.max_rel_error <= tol_exp10(-6);
  return rep;
}

}  // namespace billiards
