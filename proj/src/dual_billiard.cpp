#include "billiards/dual_billiard.hpp"

#include <algorithm>

namespace billiards {

namespace {

UniPoly linear(const Scalar& a, const Scalar& b) { return UniPoly{b, a}; }  // a z + b

const Scalar kOne(1);

}  // namespace

std::string kind_name(NamedKind k) {
  switch (k) {
    case NamedKind::B1: return "b1";
    case NamedKind::B2: return "b2";
    case NamedKind::C1: return "c1";
    case NamedKind::C2: return "c2";
    case NamedKind::D: return "d";
  }
  return "?";
}

ExoticASpec::Parity ExoticASpec::parity() const {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  BigRat gap = 2 - rho;
  if (gap == 0) return Parity::None;
  if (numerator(gap) == 2 || numerator(gap) == -2) {
    BigInt k = denominator(gap) * (numerator(gap) > 0 ? 1 : -1);
    if (k >= 3 && k % 2 == 1) return Parity::Odd;
  }
  if (numerator(gap) == 1 || numerator(gap) == -1) return Parity::Even;
  return Parity::None;
}

std::optional<int> ExoticASpec::N() const {
  using boost::multiprecision::denominator;
  BigRat gap = 2 - rho;
  switch (parity()) {
    case Parity::Odd:
      return ((denominator(gap) - 1) / 2).convert_to<int>();
    case Parity::Even:
      return (denominator(gap) - 1).convert_to<int>();
    case Parity::None:
      return std::nullopt;
  }
  return std::nullopt;
}

ExoticASpec ExoticASpec::odd(int N) {
  require(N >= 1, "InvalidArgument", "ExoticA odd needs N >= 1");
  return {BigRat(2) - BigRat(2, 2 * N + 1)};
}

ExoticASpec ExoticASpec::even(int N) {
  require(N >= 1, "InvalidArgument", "ExoticA even needs N >= 1");
  return {BigRat(2) - BigRat(1, N + 1)};
}

std::string BilliardSpec::name() const {
  if (is_named()) return kind_name(std::get<NamedKind>(v));
  if (is_exotic_a()) {
    const auto& a = std::get<ExoticASpec>(v);
    std::string p = a.parity() == ExoticASpec::Parity::Odd
                        ? "odd"
                        : (a.parity() == ExoticASpec::Parity::Even ? "even" : "rho");
    std::string n = a.N() ? std::to_string(*a.N()) : BigRat(a.rho).str();
    return "a(" + p + "," + n + ")";
  }
  if (is_pencil()) return "pencil";
  return "custom";
}

RationalFn1 f_function(const BilliardSpec& spec) {
  require(!spec.is_pencil(), "PencilSpec",
          "pencil involutions come from the conic module");
  if (spec.is_named()) {
    switch (std::get<NamedKind>(spec.v)) {
      case NamedKind::B1:  // (5z - 3) / (2z(z-1))
        return {linear(Scalar(5), Scalar(-3)),
                linear(Scalar(2), Scalar(0)) * linear(kOne, Scalar(-1))};
      case NamedKind::B2:  // 3z / (z^2 + 1)
        return {linear(Scalar(3), Scalar(0)), UniPoly{kOne, Scalar(0), kOne}};
      case NamedKind::C1:  // 4z^2 / (z^3 - 1)
        return {UniPoly{Scalar(0), Scalar(0), Scalar(4)},
                UniPoly{Scalar(-1), Scalar(0), Scalar(0), kOne}};
      case NamedKind::C2:  // (8z - 4) / (3z(z-1))
        return {linear(Scalar(8), Scalar(-4)),
                linear(Scalar(3), Scalar(0)) * linear(kOne, Scalar(-1))};
      case NamedKind::D:  // (7z - 4) / (3z(z-1))
        return {linear(Scalar(7), Scalar(-4)),
                linear(Scalar(3), Scalar(0)) * linear(kOne, Scalar(-1))};
    }
  }
  if (spec.is_exotic_a()) {
    const auto& a = std::get<ExoticASpec>(spec.v);
    return {UniPoly::constant(Scalar(a.rho)), UniPoly::variable()};
  }
  const auto& c = std::get<CustomSpec>(spec.v);
  for (size_t i = 0; i < c.poles.size(); ++i)
    for (size_t j = i + 1; j < c.poles.size(); ++j)
      require(!(c.poles[i].first == c.poles[j].first), "DuplicateLocation",
              "coinciding poles would form a higher-order pole");
  // f = sum lambda_j / (z - a_j), assembled over the common denominator.
  UniPoly den = UniPoly::constant(kOne);
  for (const auto& [loc, res] : c.poles) den = den * linear(kOne, -loc);
  UniPoly num;
  for (size_t i = 0; i < c.poles.size(); ++i) {
    UniPoly term = UniPoly::constant(c.poles[i].second);
    for (size_t j = 0; j < c.poles.size(); ++j)
      if (j != i) term = term * linear(kOne, -c.poles[j].first);
    num = num + term;
  }
  return {num, den};
}

RationalFn1 pencil_f_function(const Pencil& p) {
  // The formula below parametrizes gamma as (z, z^2, 1): B must be the
  // standard parabola wt - z^2 (up to scale).
  const Matrix3& pb = p.B.matrix();
  const Matrix3 std_pb = Conic::standard_parabola().matrix();
  bool prop = true;
  for (int i = 0; i < 3 && prop; ++i)
    for (int j = 0; j < 3 && prop; ++j)
      for (int k = 0; k < 3 && prop; ++k)
        for (int l = 0; l < 3 && prop; ++l)
          prop = (pb.m[i][j] * std_pb.m[k][l] - pb.m[k][l] * std_pb.m[i][j]).is_zero();
  require(prop, "InvalidArgument",
          "pencil f-function needs gamma = {wt = z^2} normalization");
  // q(z) = <A r(z), r(z)>, r(z) = (z, z^2, 1); f = q' / q.
  const Matrix3& A = p.A.matrix();
  UniPoly z = UniPoly::variable();
  UniPoly z2 = z * z;
  UniPoly one = UniPoly::constant(kOne);
  std::array<UniPoly, 3> r{z, z2, one};
  UniPoly q;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) q = q + r[i] * r[j] * A.m[i][j];
  require(!q.is_zero(), "DegenerateMember", "pencil member vanishes on the curve");
  return {q.derivative(), q};
}

MobiusMap sigma_at(const BilliardSpec& spec, const HomPoint& P) {
  require(!P[2].is_zero(), "InfinitePoint", "sigma_at needs an affine point of the curve");
  Scalar z0 = P[0] / P[2];
  Scalar w0 = P[1] / P[2];
  require(w0 == z0 * z0, "PointNotOnConic", "P must satisfy w = z^2");
  RationalFn1 f = spec.is_pencil()
                      ? pencil_f_function(std::get<PencilSpec>(spec.v).pencil)
                      : f_function(spec);
  Scalar dv = f.den.eval(z0);
  require(!dv.is_zero(), "SingularPoint", "P is a singular point of the structure");
  Scalar fz = f.num.eval(z0) / dv;
  // u -> -u / (1 + f(z0) u)
  return MobiusMap(Scalar(-1), Scalar(0), fz, kOne, Chart::u(z0));
}

namespace {

// Partial-fraction residues of f at its simple poles; also checks that all
// poles of f are simple. Pole locations must be supplied (exact roots).
std::vector<std::pair<Scalar, Scalar>> residues_at(const RationalFn1& f,
                                                   const std::vector<Scalar>& poles) {
  UniPoly dden = f.den.derivative();
  std::vector<std::pair<Scalar, Scalar>> out;
  for (const Scalar& a : poles) {
    require(f.den.eval(a).is_zero(), "InvalidArgument",
            "claimed pole is not a root of the denominator");
    Scalar dp = dden.eval(a);
    require(!dp.is_zero(), "HigherOrderPole", "structure has a pole of order >= 2");
    out.emplace_back(a, f.num.eval(a) / dp);
  }
  return out;
}

}  // namespace

std::vector<Scalar> singular_z_values(const BilliardSpec& spec) {
  if (spec.is_named()) {
    switch (std::get<NamedKind>(spec.v)) {
      case NamedKind::B1:
      case NamedKind::C2:
      case NamedKind::D:
        return {Scalar(0), Scalar(1)};
      case NamedKind::B2:
        return {Scalar::quad(BigRat(0), BigRat(1), -1),
                Scalar::quad(BigRat(0), BigRat(-1), -1)};
      case NamedKind::C1:
        return {Scalar(1), Scalar::quad(BigRat(-1, 2), BigRat(1, 2), -3),
                Scalar::quad(BigRat(-1, 2), BigRat(-1, 2), -3)};
    }
  }
  if (spec.is_exotic_a()) return {Scalar(0)};
  if (spec.is_custom()) {
    std::vector<Scalar> out;
    for (const auto& [loc, res] : std::get<CustomSpec>(spec.v).poles) out.push_back(loc);
    return out;
  }
  // Pencil: the base points, i.e. roots of q = A|gamma.
  RationalFn1 f = pencil_f_function(std::get<PencilSpec>(spec.v).pencil);
  std::vector<Scalar> out;
  for (const auto& [root, mult] : find_roots(f.den)) out.push_back(root);
  return out;
}

ResidueReport residue_report(const BilliardSpec& spec) {
  RationalFn1 f = spec.is_pencil()
                      ? pencil_f_function(std::get<PencilSpec>(spec.v).pencil)
                      : f_function(spec);
  // Normalize away any common factor brought in by construction.
  UniPoly g = f.num.gcd(f.den);
  if (g.degree() > 0) {
    f.num = f.num.divmod(g).quotient;
    f.den = f.den.divmod(g).quotient;
  }
  ResidueReport rep;
  std::vector<Scalar> poles;
  if (spec.is_pencil()) {
    // f = q'/q reduced: poles are the distinct roots of q; the residue at
    // each comes out as the root multiplicity of q, i.e. the contact order
    // of the pencil members with gamma there.
    for (const auto& [root, mult] : find_roots(f.den)) poles.push_back(root);
  } else {
    poles = singular_z_values(spec);
  }
  int fn = f.num.degree(), fd = f.den.degree();
  require(fn < fd, "InvalidArgument", "f must vanish at infinity");
  Scalar lambda = fn == fd - 1 ? f.num.leading() / f.den.leading() : Scalar(0);
  rep.infinity_residue = Scalar(4) - lambda;
  rep.finite_poles = residues_at(f, poles);
  rep.total = rep.infinity_residue;
  for (const auto& [a, r] : rep.finite_poles) rep.total += r;
  return rep;
}

namespace {

bool matches_poles(const std::vector<std::pair<Scalar, Scalar>>& got,
                   const std::vector<std::pair<Scalar, Scalar>>& want) {
  if (got.size() != want.size()) return false;
  std::vector<bool> used(want.size(), false);
  for (const auto& g : got) {
    bool hit = false;
    for (size_t i = 0; i < want.size(); ++i) {
      if (used[i]) continue;
      if (g.first == want[i].first && g.second == want[i].second) {
        used[i] = true;
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

}  // namespace

BilliardSpec spec_from_residues(const std::vector<std::pair<Scalar, Scalar>>& finite,
                                const Scalar& infinity_residue) {
  Scalar total = infinity_residue;
  for (const auto& [loc, res] : finite) {
    require(!res.is_zero(), "InvalidArgument", "residues must be nonzero");
    total += res;
  }
  require(total == Scalar(4), "ResidueSumNotFour",
          "residues must sum to 4, got " + total.str());
  for (size_t i = 0; i < finite.size(); ++i)
    for (size_t j = i + 1; j < finite.size(); ++j)
      require(finite[i].first != finite[j].first, "DuplicateLocation",
              "pole locations must be distinct");

  // Catalog normalizations.
  for (NamedKind k : {NamedKind::B1, NamedKind::B2, NamedKind::C1, NamedKind::C2,
                      NamedKind::D}) {
    BilliardSpec cand = BilliardSpec::named(k);
    ResidueReport rep = residue_report(cand);
    if (rep.infinity_residue == infinity_residue &&
        matches_poles(finite, rep.finite_poles))
      return cand;
  }
  // ExoticA normalization: single finite pole at 0 with residue rho in M.
  if (finite.size() == 1 && finite[0].first == Scalar(0) &&
      finite[0].second.is_rational()) {
    BigRat rho = finite[0].second.rat();
    BigRat gap = rho - 2;
    bool in_family = rho == 1 || rho == 2 || rho == 3;
    if (!in_family && gap != 0) {
      BigRat m = 2 / gap;
      using boost::multiprecision::denominator;
      in_family = denominator(m) == 1 && boost::multiprecision::abs(m) >= 3;
    }
    if (in_family && infinity_residue == Scalar(BigRat(4) - rho))
      return BilliardSpec::exotic_a(ExoticASpec{rho});
  }
  CustomSpec c;
  c.poles = finite;
  c.infinity_residue = infinity_residue;
  c.integrability_verified = false;
  return BilliardSpec::custom(std::move(c));
}

std::vector<BilliardSpec> catalog_specs(int maxN) {
  std::vector<BilliardSpec> out;
  for (NamedKind k : {NamedKind::B1, NamedKind::B2, NamedKind::C1, NamedKind::C2,
                      NamedKind::D})
    out.push_back(BilliardSpec::named(k));
  for (int n = 1; n <= maxN; ++n) {
    out.push_back(BilliardSpec::exotic_a(ExoticASpec::odd(n)));
    out.push_back(BilliardSpec::exotic_a(ExoticASpec::even(n)));
  }
  return out;
}

}  // namespace billiards
