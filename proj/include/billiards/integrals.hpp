#pragma once
// The integral catalog and its verification: catalog and classification-table
// integrals, exact invariance checking, restriction to tangent lines, the
// rho <-> 4-rho swap, and the complex-equivalence pullback identities.

#include <optional>
#include <string>
#include <vector>

#include "billiards/dual_billiard.hpp"
#include "billiards/poly.hpp"
#include "billiards/sample.hpp"

namespace billiards {

// c_j = -4j(2N+1-j)/(2N+1-2j)^2 (odd family) and
// c_j = -j(2N+2-j)/(N+1-j)^2 (even family).
std::vector<BigRat> odd_family_constants(int N);
std::vector<BigRat> even_family_constants(int N);

// The rational first integral of a catalog spec, homogenized in [z:w:t].
HomRational catalog_integral(const BilliardSpec& spec);

// Classification-table integral for rho in M (homogenized).
HomRational classpqr_integral(const BigRat& rho);

// Exact invariance verification R(sigma_P(x)) = R(x) on sampled tangent lines.
struct VerifyPlan {
  int point_samples = 32;
  int chart_samples = 8;
  long height_bound = 1000000;
  unsigned long long seed = 1;
};

struct Counterexample {
  Scalar z0;
  Scalar u;
  std::string detail;
};

struct VerifyReport {
  long checked = 0;
  long skipped = 0;  // samples that hit poles or singular data
  std::vector<Counterexample> failures;
  bool pass() const { return !failures.empty() ? false : checked > 0; }
};

VerifyReport verify_invariance(const HomRational& R, const BilliardSpec& spec,
                               const VerifyPlan& plan = {});

// Restriction of R to the line {l0 z + l1 w + l2 t = 0} in the z chart.
RationalFn1 restrict_to_line(const HomRational& R, const ProjLine& l);

// Tangent line to {w = z^2} at (1,1): w = 2z - 1.
ProjLine tangent_line_at_11();

// True iff R_rho(z/w, 1/w) = R_{4-rho}(z, w) exactly.
bool swap_check(const BigRat& rho);

// Complex projective equivalences between the paired catalog structures.
struct EquivalenceReport {
  bool q1_identity = false;        // case c: Q1 o M = -(3/4)(wt - z^2)
  bool q2_identity = false;        // case c: 8 Q2 o M = 3 (...)
  bool integral_match = false;     // R_{g1} pullback proportional to R_{g2}
  Scalar constant;                 // the global constant factor
  long points_checked = 0;         // pointwise constancy samples
  bool pass() const;
};

enum class EquivalenceCase { B, C };
EquivalenceReport equivalence_pullback_check(EquivalenceCase which);

}  // namespace billiards
