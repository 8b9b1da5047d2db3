#pragma once
// Conics as symmetric 3x3 matrices: tangency, line-conic intersection over
// quadratic extensions, pencils and their dual billiard involutions,
// space-form transversals, tangents from a point, caustic reflection test.

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "billiards/projective.hpp"
#include "billiards/scalar.hpp"

namespace billiards {

struct Matrix3 {
  std::array<std::array<Scalar, 3>, 3> m;

  static Matrix3 diag(const Scalar& a, const Scalar& b, const Scalar& c);
  std::array<Scalar, 3> mul(const std::array<Scalar, 3>& v) const;
  Matrix3 adjugate() const;
  Scalar det() const;
  bool is_symmetric() const;
};

class Conic {
 public:
  Conic() = default;
  explicit Conic(const Matrix3& m);
  // Upper triangle (m00, m01, m02, m11, m12, m22).
  static Conic from_upper(const std::array<Scalar, 6>& u);
  // The parabola w = z^2, i.e. wt - z^2 = 0.
  static Conic standard_parabola();
  // a z^2 + b w^2 + c t^2 = 0 diagonal conic.
  static Conic diagonal(const Scalar& a, const Scalar& b, const Scalar& c);

  const Matrix3& matrix() const { return m_; }
  std::array<Scalar, 6> upper() const;

  Scalar eval(const HomPoint& p) const;  // <Mx, x>
  bool contains(const HomPoint& p) const { return eval(p).is_zero(); }
  bool is_regular() const { return !m_.det().is_zero(); }

 private:
  Matrix3 m_;
};

// The pencil {B - lambda A}; the underlying curve of the induced dual
// billiard is gamma = {<Bx, x> = 0}.
struct Pencil {
  Conic A;
  Conic B;

  Conic member(const Scalar& lambda) const;  // B - lambda A
  // Member polynomial <(B - lambda A)x, x> evaluated at a point.
  Scalar member_eval(const Scalar& lambda, const HomPoint& p) const;
};

// The base set of the pencil: the common points of all members, over Q or a
// single quadratic extension when the curve is the standard parabola
// (NotRepresentable otherwise).
std::vector<HomPoint> base_points(const Pencil& p);

// Tangent line of a regular point of a conic (covector M P).
ProjLine tangent_line(const Conic& c, const HomPoint& p);

// The two intersection points of L with C, over Q(sqrt d) if needed.
// Tangency returns a doubled point.
std::pair<HomPoint, HomPoint> line_conic_points(const Conic& c, const ProjLine& l);

// Quadratic restriction of a conic to a line in the line's z-chart (t = 1,
// line solved for w); coefficients (a, b, c) of a z^2 + b z + c.
struct LineChart {
  // Parametrization X(x) of the line by the chart coordinate x.
  // X(x) = x * dir + base (projectively), so x = inf is 'dir'.
  std::array<Scalar, 3> base;
  std::array<Scalar, 3> dir;
  // Chart coordinate of a point on the line.
  Scalar coordinate(const HomPoint& p) const;
  HomPoint point_at(const ChartValue& x) const;
};
LineChart line_chart(const ProjLine& l);

std::array<Scalar, 3> conic_on_line_quadratic(const Conic& c, const LineChart& chart);

// The dual billiard involution sigma_P at a point P of B, acting in the
// z-chart of the tangent line. Built from one non-tangent member and
// validated against a second one.
MobiusMap pencil_involution(const Pencil& p, const HomPoint& P);

// The two tangent lines to C through an exterior point Q, over Q(sqrt d).
std::pair<ProjLine, ProjLine> tangents_from_point(const Conic& c, const HomPoint& q);

// Space-form transversal line at Q on C for a space form matrix A:
// A = diag(1,1,0) gives the Euclidean normal; regular A gives the line
// through Q and the projection of A^{-1}(r x tau).
ProjLine space_form_transversal(const Matrix3& A, const Conic& c, const HomPoint& q);

// True iff the projective-billiard reflection at Q (tangent fixed,
// transversal negated) swaps the two tangent lines from Q to S.
bool caustic_reflection_check(const Conic& table, const ProjLine& transversal,
                              const Conic& s, const HomPoint& q);

}  // namespace billiards
