#pragma once
// The Hessian H(G) = G_zz G_w^2 - 2 G_zw G_z G_w + G_ww G_z^2: exact symbolic
// form, the product rule on zero loci, restriction to the curve w^q = z^p
// with asymptotic exponent extraction, and the flow of the structure along
// the conic (dH/dz = -3 f H).

#include <optional>
#include <utility>
#include <vector>

#include "billiards/dual_billiard.hpp"
#include "billiards/poly.hpp"

namespace billiards {

// Exact symbolic Hessian of a polynomial in (z, w).
Poly hessian_poly(const Poly& g);

// H(fg) = g^3 H(f) at every sample on {f = 0}, exactly.
bool hess3_check(const Poly& f, const Poly& g,
                 const std::vector<std::pair<Scalar, Scalar>>& samples);

// G = prod factors_i ^ e_i with rational exponents; primes restricted to
// {z, w, w^q - c z^p} for the on-curve analysis, with the w^q - z^p factor
// carrying exponent exactly 1.
struct FactoredG {
  std::vector<std::pair<Poly, BigRat>> factors;
};

struct HessianOnCurve {
  BigRat d;               // asymptotic exponent: H(G)|curve = c z^d
  Scalar c;               // exact on the integer-exponent path, approx otherwise
  bool exact = false;     // whether c/d came from the exact path
  Scalar c_weighted;      // qp(q-p) prod (1-c_j)^(3 mu_j)   (approx or exact)
  Scalar c_literal;       // qp(q-p) (prod (1-c_j))^3
  bool matches_weighted = false;
  bool matches_literal = false;
};

// Restriction of H(G) along (t^q, t^p); d from the closed form
// 3(pN + alpha + beta r - rho0), c fitted on samples t in {1/2,1/3,1/5,1/7}
// (numeric path) or read off exactly (all exponents nonnegative integers).
HessianOnCurve hessian_on_curve(const FactoredG& g);

// rho = -d/3.
BigRat residue_from_hessian(const HessianOnCurve& h);

struct OdeSample {
  Scalar z0;
  BigFloat lhs, rhs, rel_error;
};

struct OdeReport {
  std::vector<OdeSample> samples;
  BigFloat max_rel_error;
  bool pass = false;
};

// Checks dH/dz = -3 f(z) H along {w = z^2} by central finite differences at
// 16 admissible sample points; relative tolerance 1e-6.
OdeReport ode_check(const BilliardSpec& spec, int samples = 16);

// The germ of catalog_integral(spec)^(1/m1) at the origin as a factored
// product (w - z^2) * (lower part of the denominator)^(-mu): used to tie the
// Hessian exponent to the residue at the origin.
FactoredG origin_germ(const BilliardSpec& spec);

}  // namespace billiards
