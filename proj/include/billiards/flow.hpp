#pragma once
// The dual side: transversal line fields on the parabola {x2 = x1^2}, the
// projective reflection law, flow simulation with per-bounce conserved
// quantities, moment vectors, the Psi catalog, and the duality bridge.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "billiards/conic.hpp"
#include "billiards/dual_billiard.hpp"
#include "billiards/integrals.hpp"
#include "billiards/poly.hpp"

namespace billiards {

struct FieldA {
  BigRat rho;  // in M; direction (rho, 2(rho-2) x1)
};
struct FieldSpaceForm {
  Matrix3 A;
  Conic table;
};
struct FieldPencilDual {
  Pencil pencil;  // dual billiard pencil on {wt = z^2}
};

struct TransversalField {
  std::variant<FieldA, NamedKind, FieldSpaceForm, FieldPencilDual> v;

  static TransversalField a(const BigRat& rho) { return {FieldA{rho}}; }
  static TransversalField named(NamedKind k) { return {k}; }
  static TransversalField space_form(Matrix3 A, Conic table) {
    return {FieldSpaceForm{std::move(A), std::move(table)}};
  }
  static TransversalField pencil_dual(Pencil p) {
    return {FieldPencilDual{std::move(p)}};
  }
  std::string name() const;
};

struct Vec2 {
  Scalar x, y;
  bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
};

struct FlowState {
  Vec2 pos;
  Vec2 vel;
};

struct MomentVector {
  Scalar m1, m2, m3;  // (-v2, v1, x1 v2 - x2 v1)
  bool operator==(const MomentVector& o) const {
    return m1 == o.m1 && m2 == o.m2 && m3 == o.m3;
  }
};

MomentVector moment(const Vec2& x, const Vec2& v);

// The table of the field (the standard parabola for catalog fields).
Conic field_table(const TransversalField& f);

// Direction of the transversal line at a point Q of the table.
Vec2 field_at(const TransversalField& f, const Vec2& q);

// Reflection: fixes tangent_dir, negates transversal_dir.
Vec2 reflect(const Vec2& tangent_dir, const Vec2& transversal_dir, const Vec2& v);

// One flow step: advance to the first boundary hit, reflect there.
FlowState flow_step(const Conic& table, const TransversalField& field,
                    const FlowState& s);

// Psi as a 0-homogeneous rational function of (v1, v2, Delta).
HomRational psi_catalog(const TransversalField& f);

// R(z, w, t) -> R(v2, -2 Delta, -2 v1), reading (v1, v2, Delta) as the
// variable triple of the output.
HomRational integral_from_dual(const HomRational& R);

// The dual billiard spec whose structure the field realizes, and back.
BilliardSpec field_to_spec(const TransversalField& f);
TransversalField spec_to_field(const BilliardSpec& s);

// Psi evaluated at a state, as a projective value.
HomRational::Value psi_value(const HomRational& psi, const Vec2& x, const Vec2& v);

struct BounceRecord {
  int step;
  Vec2 hit;
  Vec2 v_in, v_out;
  HomRational::Value psi_in, psi_out;
  bool exact;  // whether the arithmetic stayed exact through this bounce
};

struct Trajectory {
  std::vector<BounceRecord> bounces;
  FlowState final_state;
  bool demoted_to_approx = false;
};

Trajectory simulate(const Conic& table, const TransversalField& field,
                    const FlowState& s0, int steps);

}  // namespace billiards
