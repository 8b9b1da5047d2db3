#pragma once
// The catalog of dual billiard structures on the conic {w = z^2}: f-functions,
// the involutions sigma_P in the u = z - z0 chart, residue reports, and
// reconstruction of a structure from prescribed residues.

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "billiards/conic.hpp"
#include "billiards/poly.hpp"
#include "billiards/projective.hpp"

namespace billiards {

enum class NamedKind { B1, B2, C1, C2, D };

std::string kind_name(NamedKind k);

// The eta_rho family members: sigma_P = eta_rho in the zeta chart for every P.
// Canonical catalog members have rho = 2 - 2/(2N+1) (odd) or 2 - 1/(N+1)
// (even); the type also carries the rho = 2 member and the rho > 2 mirrors.
struct ExoticASpec {
  BigRat rho;

  enum class Parity { Odd, Even, None };
  Parity parity() const;
  std::optional<int> N() const;

  static ExoticASpec odd(int N);   // rho = 2 - 2/(2N+1)
  static ExoticASpec even(int N);  // rho = 2 - 1/(N+1)
};

struct PencilSpec {
  Pencil pencil;
};

// A structure defined only by its pole configuration (Prop.-style existence);
// integrability is not asserted.
struct CustomSpec {
  std::vector<std::pair<Scalar, Scalar>> poles;  // (z-location, residue)
  Scalar infinity_residue;
  bool integrability_verified = false;
};

struct BilliardSpec {
  std::variant<NamedKind, ExoticASpec, PencilSpec, CustomSpec> v;

  bool is_pencil() const { return std::holds_alternative<PencilSpec>(v); }
  bool is_named() const { return std::holds_alternative<NamedKind>(v); }
  bool is_exotic_a() const { return std::holds_alternative<ExoticASpec>(v); }
  bool is_custom() const { return std::holds_alternative<CustomSpec>(v); }

  static BilliardSpec named(NamedKind k) { return {k}; }
  static BilliardSpec exotic_a(ExoticASpec a) { return {std::move(a)}; }
  static BilliardSpec pencil(Pencil p) { return {PencilSpec{std::move(p)}}; }
  static BilliardSpec custom(CustomSpec c) { return {std::move(c)}; }

  std::string name() const;
};

// f(z) with sigma_P : u -> -u / (1 + f(z0) u). Pencil specs are served by
// the conic module; requesting their f here is an error (PencilSpec).
RationalFn1 f_function(const BilliardSpec& spec);

// The same for a pencil whose curve is the standard parabola:
// f = q'/q with q(z) = <A (z, z^2, 1), (z, z^2, 1)>.
RationalFn1 pencil_f_function(const Pencil& p);

// sigma_P in the chart u = z - z0 on the tangent line at P = (z0, z0^2).
MobiusMap sigma_at(const BilliardSpec& spec, const HomPoint& P);

struct ResidueReport {
  std::vector<std::pair<Scalar, Scalar>> finite_poles;  // (z-location, residue)
  Scalar infinity_residue;                               // 0 when regular there
  Scalar total;
};

ResidueReport residue_report(const BilliardSpec& spec);

// Reconstruction from residues. Returns the catalog entry when the
// configuration matches one (in the frozen normalization), otherwise a
// CustomSpec with integrability_verified = false.
BilliardSpec spec_from_residues(const std::vector<std::pair<Scalar, Scalar>>& finite,
                                const Scalar& infinity_residue);

// All catalog specs (B1, B2, C1, C2, D and the ExoticA families up to maxN).
std::vector<BilliardSpec> catalog_specs(int maxN = 5);

// Singular z-locations of the structure (finite ones; infinity reported
// separately by residue_report).
std::vector<Scalar> singular_z_values(const BilliardSpec& spec);

}  // namespace billiards
