#include "billiards/quasihomog.hpp"

#include <numeric>
#include <sstream>

namespace billiards {

namespace {

Scalar rat(const BigRat& q) { return Scalar(q); }

ChartValue eta_image(const BigRat& rho, const ChartValue& x) {
  return eta(rat(rho)).apply(x);
}

}  // namespace

QHPoly QHPoly::make(const Poly& poly, int p, int q) {
  require(p >= 1 && q >= 1 && std::gcd(p, q) == 1, "InvalidArgument",
          "(p, q) must be positive and coprime");
  require(!poly.is_zero(), "ZeroPoly", "quasihomogeneous polynomial must be nonzero");
  QHPoly out;
  out.poly = poly;
  out.p = p;
  out.q = q;
  int deg = -1;
  for (const auto& [e, c] : poly.terms()) {
    require(e[2] == 0, "InvalidArgument", "quasihomogeneous polynomials live in (z, w)");
    int d = e[0] * q + e[1] * p;
    if (deg < 0) deg = d;
    require(d == deg, "InvalidArgument", "polynomial is not (p,q)-quasihomogeneous");
  }
  out.qh_degree = deg;
  return out;
}

void RootDivisor::add(const ChartValue& v, int mult) {
  std::string key = v.is_infinity() ? "inf" : v.finite().str();
  auto [it, fresh] = roots.emplace(key, std::make_pair(v, mult));
  if (!fresh) it->second.second += mult;
  if (it->second.second == 0) roots.erase(it);
}

int RootDivisor::multiplicity(const ChartValue& v) const {
  std::string key = v.is_infinity() ? "inf" : v.finite().str();
  auto it = roots.find(key);
  return it == roots.end() ? 0 : it->second.second;
}

int RootDivisor::total() const {
  int t = 0;
  for (const auto& [k, v] : roots) t += v.second;
  return t;
}

bool RootDivisor::operator==(const RootDivisor& o) const {
  if (roots.size() != o.roots.size()) return false;
  for (const auto& [k, v] : roots) {
    auto it = o.roots.find(k);
    if (it == o.roots.end() || it->second.second != v.second) return false;
  }
  return true;
}

std::string RootDivisor::str() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [k, v] : roots) {
    if (!first) os << ", ";
    first = false;
    os << k;
    if (v.second > 1) os << "^" << v.second;
  }
  os << "}";
  return os.str();
}

QHPoly lower_part(const Poly& f, int p, int q) {
  require(!f.is_zero(), "ZeroPoly", "lower part of the zero polynomial");
  int best = -1;
  for (const auto& [e, c] : f.terms()) {
    require(e[2] == 0, "InvalidArgument", "lower_part expects a polynomial in (z, w)");
    int d = e[0] * q + e[1] * p;
    if (best < 0 || d < best) best = d;
  }
  Poly out;
  for (const auto& [e, c] : f.terms())
    if (e[0] * q + e[1] * p == best) out.set_coeff(e, c);
  return QHPoly::make(out, p, q);
}

UniPoly w_on_tangent_line(int p, int q) {
  // q * (1 - r + r z) = (q - p) + p z
  return UniPoly{Scalar(q - p), Scalar(p)};
}

UniPoly restriction_R(int p, int q, const Scalar& c) {
  UniPoly lin = w_on_tangent_line(p, q);
  UniPoly zp;
  {
    UniPoly z = UniPoly::variable();
    zp = z.pow(p);
  }
  return lin.pow(q) - zp * (c * Scalar(q).pow(q));
}

namespace {

UniPoly restrict_to_L(const QHPoly& P) {
  // w -> 1 - r + r z with r = p/q, exactly.
  Scalar r = Scalar(BigRat(P.p, P.q));
  return P.poly.restrict_affine_line(r, Scalar(1) - r);
}

}  // namespace

RootDivisor root_divisor(const QHPoly& P) {
  UniPoly rest = restrict_to_L(P);
  require(!rest.is_zero(), "ZeroPoly", "restriction vanished");
  RootDivisor out;
  if (rest.degree() == 0) return out;
  for (const auto& [root, mult] : find_roots(rest)) out.add(ChartValue(root), mult);
  return out;
}

bool is_eta_quasi_invariant(const QHPoly& P, const Scalar& rho) {
  require(rho.is_rational(), "InvalidArgument", "rho must be rational");
  RootDivisor chi = root_divisor(P);
  ChartValue theta = theta_of(rho);
  if (chi.multiplicity(theta) > 0) chi.add(theta, -1);
  RootDivisor image;
  for (const auto& [k, v] : chi.roots)
    image.add(eta_image(rho.rat(), v.first), v.second);
  return image == chi;
}

RhoClass classify_rho(const BigRat& rho) {
  using boost::multiprecision::abs;
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  RhoClass out;
  BigRat gap = rho - 2;
  if (gap == 0) {
    out.in_M = true;
    return out;
  }
  BigRat minv = 2 / gap;
  if (denominator(minv) == 1) {
    out.m = numerator(minv).convert_to<long>();
    out.in_M = abs(minv) >= 3 || rho == 0 || rho == 1 || rho == 3 || rho == 4;
  }
  return out;
}

RhoClass classify_rho_orbit(const BigRat& rho, long max_steps) {
  RhoClass out;
  BigRat step = rho - 2;
  if (step == 0) {
    out.in_M = true;  // T is the identity
    return out;
  }
  // y(1/2) = -2 must reach y(inf) = 0 under y -> y + step in integer steps.
  for (int dir = -1; dir <= 1; dir += 2) {
    BigRat y(-2);
    for (long j = 1; j <= max_steps; ++j) {
      y += dir > 0 ? step : -step;
      if (y == 0) {
        out.in_M = true;
        out.m = dir * j;
        return out;
      }
    }
  }
  return out;
}

Primitive build_primitive(const BigRat& rho) {
  RhoClass cls = classify_rho(rho);
  require(cls.in_M, "RhoNotInM", "rho = " + rho.str() + " not in the admissible set");
  require(cls.m.has_value() && std::abs(*cls.m) >= 3, "RhoInteger",
          "primitive construction needs non-integer rho");
  long m = *cls.m;
  long M = std::labs(m);
  Primitive out;
  out.has_w_factor = rho > 2;
  out.has_z_factor = (M % 2 == 0);
  Poly acc = Poly::constant(Scalar(1));
  for (long j = 1; j <= (M - 1) / 2; ++j) {
    BigRat cj = BigRat(-4 * j * (M - j)) / BigRat((M - 2 * j) * (M - 2 * j));
    out.cj.push_back(cj);
    // w - c_j z^2
    acc = acc * (Poly::variable(1) - Poly::variable(0).pow(2) * Scalar(cj));
  }
  if (out.has_w_factor) acc = acc * Poly::variable(1);
  if (out.has_z_factor) acc = acc * Poly::variable(0);
  out.poly = QHPoly::make(acc, 2, 1);
  // Orbit points zeta_j = (2j - m)/(2(j - m)); chi is j = 0..m-1 for rho > 2
  // and j = m+1..-1 for rho < 2.
  long lo = m > 0 ? 0 : m + 1;
  long hi = m > 0 ? m - 1 : -1;
  for (long j = lo; j <= hi; ++j)
    out.orbit.emplace_back(Scalar(2 * j - m) / Scalar(2 * (j - m)));
  return out;
}

QHFactors qh_factors(const QHPoly& P) {
  require(P.p == 2 && P.q == 1, "InvalidArgument",
          "factor extraction is implemented for (p, q) = (2, 1)");
  QHFactors out;
  out.alpha = P.poly.min_degree_in(0);
  out.beta = P.poly.min_degree_in(1);
  // Strip z^alpha w^beta, then read off u(x) = sum coeff(z^{2s} w^{B-s}) x^s
  // whose roots are 1/c_j.
  Poly stripped;
  for (const auto& [e, c] : P.poly.terms())
    stripped.set_coeff({e[0] - out.alpha, e[1] - out.beta, 0}, c);
  int B = stripped.degree_in(1);
  UniPoly u;
  {
    std::vector<Scalar> cs(B + 1, Scalar(0));
    for (const auto& [e, c] : stripped.terms()) {
      int s = B - e[1];
      require(e[0] == 2 * s, "InvalidArgument", "not a (2,1)-quasihomogeneous shape");
      cs[s] = c;
    }
    UniPoly acc;
    for (int s = B; s >= 0; --s) acc = acc * UniPoly::variable() + UniPoly::constant(cs[s]);
    u = acc;
  }
  if (u.degree() >= 1) {
    require(!u.coeff(0).is_zero(), "InvalidArgument", "unexpected shape after stripping");
    for (const auto& [root, mult] : find_roots(u)) {
      require(!root.is_zero(), "InvalidArgument", "spurious zero root");
      out.quadratic.emplace_back(root.inverse(), mult);
    }
  }
  return out;
}

CrosscheckReport formula_crosscheck(const QHPoly& P1, const QHPoly& P2, long m1,
                                    long m2, const BigRat& rho) {
  require(m1 > 0 && m2 > 0, "InvalidArgument", "powers must be positive");
  require(P1.p == P2.p && P1.q == P2.q, "InvalidArgument",
          "both polynomials must share (p, q)");
  BigRat r(P1.p, P1.q);
  BigRat rho0 = BigRat(2) * (r + 1) / 3;

  QHFactors f1 = qh_factors(P1);
  QHFactors f2 = qh_factors(P2);
  // Primitivity: distinct simple prime factors, alpha/beta in {0,1}.
  auto primitive_ok = [](const QHFactors& f) {
    if (f.alpha > 1 || f.beta > 1) return false;
    for (const auto& [c, mu] : f.quadratic)
      if (mu != 1) return false;
    return true;
  };
  require(primitive_ok(f1) && primitive_ok(f2), "NotPrimitive",
          "inputs must be primitive quasi-invariant polynomials");
  require(is_eta_quasi_invariant(P1, Scalar(rho)) &&
              is_eta_quasi_invariant(P2, Scalar(rho)),
          "NotPrimitive", "inputs must be eta_rho-quasi-invariant");
  bool p1_on_curve = false;
  for (const auto& [c, mu] : f1.quadratic)
    if (c == Scalar(1)) p1_on_curve = true;
  require(p1_on_curve, "InvalidArgument", "P1 must vanish on the curve w^q = z^p");

  ChartValue theta_rho = theta_of(Scalar(rho));
  ChartValue theta_r(Scalar(r - 1) / Scalar(r));
  RootDivisor chi1 = root_divisor(P1);
  RootDivisor chi2 = root_divisor(P2);
  bool t_in_1 = chi1.multiplicity(theta_rho) > 0;
  bool t_in_2 = chi2.multiplicity(theta_rho) > 0;
  require(!(t_in_1 && t_in_2), "InvalidArgument",
          "theta_rho cannot lie in both root divisors");

  CrosscheckReport rep;
  if (theta_rho == theta_r && t_in_1)
    fail("AmbiguousCase",
         "theta_rho = theta_r in chi(P1): the degree convention is not pinned "
         "by any worked case");

  long N1 = static_cast<long>(f1.quadratic.size());
  long N2 = static_cast<long>(f2.quadratic.size());
  BigRat d1 = BigRat(N1 * P1.p + f1.alpha + f1.beta);
  BigRat d2 = BigRat(N2 * P2.p + f2.alpha + f2.beta);

  // Degree relation from the theta_rho bookkeeping.
  BigRat lhs = t_in_1 ? BigRat((d1 + 1) * m1) : BigRat(d1 * m1);
  BigRat rhs = t_in_2 ? BigRat((d2 + 1) * m2) : BigRat(d2 * m2);
  rep.relation_holds = (lhs == rhs);
  require(rep.relation_holds, "RelationViolated",
          "the m1/m2 degree relation does not hold for this pair");

  // First formula (raw Hessian-exponent form; no theta_rho corrections).
  BigRat nu(m2, m1);
  rep.first_formula_rho =
      rho0 - (d1 - nu * d2) - (r - 1) * (BigRat(f1.beta) - nu * BigRat(f2.beta));
  rep.first_matches = (rep.first_formula_rho == rho);

  // Second formula applied to P1.
  BigRat dhat = d1 + (t_in_1 ? 1 : 0);
  BigRat rhs2 = 2 * (BigRat(N1 * P1.p + f1.alpha) + BigRat(f1.beta) * r - rho0);
  if (dhat == 2) {
    rep.second_degenerate = true;
    rep.second_matches = (rhs2 == 0);
  } else {
    rep.second_formula_rho = rhs2 / (dhat - 2);
    rep.second_matches = (*rep.second_formula_rho == rho);
  }
  return rep;
}

}  // namespace billiards
