#pragma once
// Sparse exact multivariate polynomials in (z, w, t) and dense univariate
// polynomials, both over Scalar coefficients, plus the homogeneous rational
// functions built from them.

#include <array>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "billiards/scalar.hpp"

namespace billiards {

struct UniPolyDivMod;

class UniPoly {
 public:
  UniPoly() = default;
  UniPoly(std::initializer_list<Scalar> coeffs_low_to_high);
  static UniPoly constant(const Scalar& c);
  static UniPoly variable();  // z

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for 0
  const Scalar& coeff(int k) const;                               // 0 beyond degree
  Scalar leading() const;

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly operator-() const;
  UniPoly operator*(const Scalar& s) const;
  bool operator==(const UniPoly& o) const { return c_ == o.c_; }

  UniPoly pow(int e) const;
  UniPoly derivative() const;
  Scalar eval(const Scalar& x) const;

  // Division with remainder over the coefficient field.
  UniPolyDivMod divmod(const UniPoly& divisor) const;
  UniPoly gcd(const UniPoly& o) const;  // monic

  // P(x) -> sum_k p_k (a x + b)^k (c x + d)^(m - k); m >= degree.
  UniPoly mobius_numerator(const Scalar& a, const Scalar& b, const Scalar& c,
                           const Scalar& d, int m) const;

  // Synthetic division by (x - r); ok() false when r is not a root.
  std::optional<UniPoly> deflate_root(const Scalar& r) const;

  std::string str(const std::string& var = "z") const;

 private:
  std::vector<Scalar> c_;  // low to high, no trailing zeros
  void trim();
};

struct UniPolyDivMod {
  UniPoly quotient, remainder;
};

// Univariate rational function num/den.
struct RationalFn1 {
  UniPoly num, den;

  Scalar eval(const Scalar& x) const;  // throws PoleEvaluation at a pole
  bool defined_at(const Scalar& x) const { return !den.eval(x).is_zero(); }
  RationalFn1 derivative() const;
  bool equals(const RationalFn1& o) const;  // cross-multiplied identity
  // f(eta(x)) == f(x) as an exact identity for a Mobius map eta?
  bool invariant_under_mobius(const Scalar& a, const Scalar& b, const Scalar& c,
                              const Scalar& d) const;
  std::string str(const std::string& var = "z") const;
};

// Exponent triple for (z, w, t).
using Exp3 = std::array<int, 3>;

class Poly {
 public:
  Poly() = default;
  static Poly constant(const Scalar& c);
  static Poly monomial(const Scalar& c, int ez, int ew, int et);
  static Poly variable(int idx);  // 0: z, 1: w, 2: t

  bool is_zero() const { return m_.empty(); }
  const std::map<Exp3, Scalar>& terms() const { return m_; }
  void set_coeff(const Exp3& e, const Scalar& c);
  Scalar coeff(const Exp3& e) const;
  int total_degree() const;  // -1 for zero
  int degree_in(int idx) const;
  int min_degree_in(int idx) const;
  bool is_homogeneous() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Scalar& s) const;
  bool operator==(const Poly& o) const { return m_ == o.m_; }

  Poly pow(int e) const;
  Poly derivative(int idx) const;
  Scalar eval(const Scalar& z, const Scalar& w, const Scalar& t) const;

  // Homogenize with t (idx 2) up to `deg`; throws if any term exceeds deg.
  Poly homogenized(int deg) const;
  Poly dehomogenized() const;  // t := 1

  // Substitute each variable by a linear form: var_i -> sum_j M[i][j] var_j.
  Poly substitute_linear(const std::array<std::array<Scalar, 3>, 3>& M) const;
  Poly swap_vars(int i, int j) const;

  // Restriction to the affine line w = a z + b, t = 1.
  UniPoly restrict_affine_line(const Scalar& a, const Scalar& b) const;
  // Restriction along the parametrized curve z = T^q, w = T^p (t := 1).
  UniPoly restrict_curve(int p, int q) const;

  std::string str(const std::array<std::string, 3>& vars = {"z", "w", "t"}) const;

 private:
  std::map<Exp3, Scalar> m_;  // no zero coefficients stored
  void add_term(const Exp3& e, const Scalar& c);
};

// All roots of a univariate polynomial with multiplicity, over Q or a single
// quadratic extension. Rational roots are found by a bounded divisor search
// (certified exactly); an irreducible quadratic remainder yields Q(sqrt d)
// roots; anything harder throws IrreduciblePrimeOverField.
std::vector<std::pair<Scalar, int>> find_roots(const UniPoly& p);

// Ratio of two homogeneous polynomials of equal degree.
class HomRational {
 public:
  HomRational() = default;
  // Homogenizes both sides to a common degree with powers of t.
  HomRational(const Poly& num, const Poly& den);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  int degree() const { return num_.total_degree(); }

  // Projective value (num(x), den(x)); equality is cross-multiplication.
  struct Value {
    Scalar num, den;
    bool is_pole() const { return den.is_zero() && !num.is_zero(); }
    bool is_indeterminate() const { return den.is_zero() && num.is_zero(); }
    Scalar scalar() const;  // throws PoleEvaluation on a pole
    bool equals(const Value& o) const { return (num * o.den - o.num * den).is_zero(); }
    Value normalized() const;  // (v, 1) when finite, (1, 0) at a pole
  };
  Value eval(const Scalar& z, const Scalar& w, const Scalar& t) const;
  Value eval_affine(const Scalar& z, const Scalar& w) const;

  bool equals(const HomRational& o) const;  // num*o.den == o.num*den
  HomRational substitute_linear(const std::array<std::array<Scalar, 3>, 3>& M) const;
  RationalFn1 restrict_affine_line(const Scalar& a, const Scalar& b) const;

  std::string str(const std::array<std::string, 3>& vars = {"z", "w", "t"}) const;

 private:
  Poly num_, den_;
};

}  // namespace billiards
