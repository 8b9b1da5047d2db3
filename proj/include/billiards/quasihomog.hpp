#pragma once
// The (p,q;rho)-billiard toolkit: quasihomogeneous degrees and lower parts,
// restrictions to the tangent line at (1,1), root divisors, eta_rho
// quasi-invariance, the orbit criterion for the admissible residue set M,
// primitive-polynomial construction, and the two residue formulas.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "billiards/poly.hpp"
#include "billiards/projective.hpp"

namespace billiards {

// A (p,q)-quasihomogeneous polynomial in (z, w): every monomial z^k w^m has
// k q + m p equal to qh_degree.
struct QHPoly {
  Poly poly;  // t-degree 0
  int p = 2;
  int q = 1;
  int qh_degree = 0;

  static QHPoly make(const Poly& poly, int p, int q);  // validates
};

// Multiset of roots of the restriction to L_{(1,1)}; infinity is a possible
// element.
struct RootDivisor {
  std::map<std::string, std::pair<ChartValue, int>> roots;  // key -> (value, mult)

  void add(const ChartValue& v, int mult = 1);
  int multiplicity(const ChartValue& v) const;
  int total() const;
  bool operator==(const RootDivisor& o) const;
  std::string str() const;
};

// Sum of the monomials of minimal (p,q)-degree.
QHPoly lower_part(const Poly& f, int p, int q);

// R_{p,q,c}(zeta) = (1-r+r zeta)^q - c zeta^p with r = p/q, cleared of
// denominators (multiplied by q^q).
UniPoly restriction_R(int p, int q, const Scalar& c);

// w restricted to L_{(1,1)}: (1 - r + r z) cleared by q.
UniPoly w_on_tangent_line(int p, int q);

RootDivisor root_divisor(const QHPoly& P);

// theta_rho = (rho-1)/rho removed once (if present); the rest must map to
// itself under eta_rho.
bool is_eta_quasi_invariant(const QHPoly& P, const Scalar& rho);

struct RhoClass {
  bool in_M = false;
  std::optional<long> m;  // 2/(rho-2) when it is a nonzero integer
};

// Closed-form membership in M = {0,1,2,3,4} U {2 +- 2/k : k >= 3}.
RhoClass classify_rho(const BigRat& rho);
// Independent implementation: walk the translation T: y -> y + rho - 2 from
// y(1/2) = -2 and look for y(inf) = 0 within the step bound.
RhoClass classify_rho_orbit(const BigRat& rho, long max_steps = 256);

struct Primitive {
  QHPoly poly;                 // the primitive eta_rho-quasi-invariant polynomial
  std::vector<BigRat> cj;      // constants of the quadratic factors
  std::vector<ChartValue> orbit;  // the orbit points zeta_j, for audit
  bool has_w_factor = false;
  bool has_z_factor = false;
};

// Builds the primitive quasi-invariant polynomial for non-integer rho in M:
// prod (w - c_j z^2), times w iff rho > 2, times z iff m is even.
Primitive build_primitive(const BigRat& rho);

// Factor data of a (2,1)-quasihomogeneous polynomial z^alpha w^beta
// prod (w - c_j z^2)^mu_j.
struct QHFactors {
  int alpha = 0;
  int beta = 0;
  std::vector<std::pair<Scalar, int>> quadratic;  // (c_j, mu_j)
};
QHFactors qh_factors(const QHPoly& P);

struct CrosscheckReport {
  BigRat first_formula_rho;       // from the Hessian-based formula
  bool first_matches = false;
  bool second_degenerate = false;  // d-hat == 2: both sides must vanish
  std::optional<BigRat> second_formula_rho;
  bool second_matches = false;
  bool relation_holds = false;  // the m1/m2 degree relation
  bool pass() const { return first_matches && second_matches && relation_holds; }
};

// Evaluates the two residue formulas for the primitive pair (P1, P2) with
// integral P1^m1 / P2^m2 and compares both against rho.
CrosscheckReport formula_crosscheck(const QHPoly& P1, const QHPoly& P2, long m1,
                                    long m2, const BigRat& rho);

}  // namespace billiards
