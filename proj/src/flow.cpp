#include "billiards/flow.hpp"

#include <algorithm>

namespace billiards {

namespace {

Poly v1() { return Poly::variable(0); }
Poly v2() { return Poly::variable(1); }
Poly dl() { return Poly::variable(2); }

// 4 v1 Delta - c v2^2
Poly psi_member(const Scalar& c) {
  return v1() * dl() * Scalar(4) - v2() * v2() * c;
}

Scalar promote_if(const Scalar& s, bool approx) { return approx ? s.to_approx() : s; }

}  // namespace

std::string TransversalField::name() const {
  if (std::holds_alternative<NamedKind>(v)) return kind_name(std::get<NamedKind>(v));
  if (std::holds_alternative<FieldA>(v))
    return "a(rho=" + std::get<FieldA>(v).rho.str() + ")";
  if (std::holds_alternative<FieldSpaceForm>(v)) return "spaceform";
  return "pencil-dual";
}

MomentVector moment(const Vec2& x, const Vec2& v) {
  return {-v.y, v.x, x.x * v.y - x.y * v.x};
}

Conic field_table(const TransversalField& f) {
  if (std::holds_alternative<FieldSpaceForm>(f.v))
    return std::get<FieldSpaceForm>(f.v).table;
  return Conic::standard_parabola();
}

Vec2 field_at(const TransversalField& f, const Vec2& q) {
  const Scalar& x1 = q.x;
  const Scalar& x2 = q.y;
  bool ap = x1.is_approx() || x2.is_approx();
  auto C = [&](long n) { return ap ? Scalar(n).to_approx() : Scalar(n); };
  Vec2 dir;
  if (std::holds_alternative<FieldA>(f.v)) {
    Scalar rho = promote_if(Scalar(std::get<FieldA>(f.v).rho), ap);
    dir = {rho, C(2) * (rho - C(2)) * x1};
  } else if (std::holds_alternative<NamedKind>(f.v)) {
    switch (std::get<NamedKind>(f.v)) {
      case NamedKind::B1:
        dir = {C(5) * x1 + C(3), C(2) * (x2 - x1)};
        break;
      case NamedKind::B2:
        dir = {C(3) * x1, C(2) * x2 - C(4)};
        break;
      case NamedKind::C1:
        dir = {x2, x1 * x2 - C(1)};
        break;
      case NamedKind::C2:
        dir = {C(2) * x1 + C(1), x2 - x1};
        break;
      case NamedKind::D:
        dir = {C(7) * x1 + C(4), C(2) * x2 - C(4) * x1};
        break;
    }
  } else if (std::holds_alternative<FieldSpaceForm>(f.v)) {
    const auto& sf = std::get<FieldSpaceForm>(f.v);
    ProjLine l = space_form_transversal(sf.A, sf.table, HomPoint(x1, x2, C(1)));
    dir = {l[1], -l[0]};
  } else {
    // Pencil dual: the transversal at Q is the line dual to the second fixed
    // point of sigma_P, z(P~) = z0 - 2/f(z0) at z0 = -x1.
    const auto& pd = std::get<FieldPencilDual>(f.v);
    RationalFn1 f0 = pencil_f_function(pd.pencil);
    Scalar z0 = -x1;
    Scalar den = f0.den.eval(z0);
    require(!den.is_zero(), "SingularFieldPoint", "field undefined over a base point");
    Scalar fz = f0.num.eval(z0) / den;
    require(!fz.is_zero(), "SingularFieldPoint", "sigma_P has no second fixed point");
    Scalar zstar = z0 - C(2) / fz;
    dir = {C(1), C(-2) * zstar};
  }
  require(!(dir.x.is_zero() && dir.y.is_zero()), "SingularFieldPoint",
          "field vanishes at the point");
  if (!std::holds_alternative<FieldSpaceForm>(f.v)) {
    // Transversality on the parabola: direction not parallel to (1, 2 x1).
    Scalar det = dir.y - C(2) * x1 * dir.x;
    require(!det.is_zero(), "SingularFieldPoint",
            "field is tangent to the table at the point");
  }
  return dir;
}

Vec2 reflect(const Vec2& tangent_dir, const Vec2& transversal_dir, const Vec2& v) {
  Scalar det = tangent_dir.x * transversal_dir.y - tangent_dir.y * transversal_dir.x;
  require(!det.is_zero(), "DegenerateFrame",
          "tangent and transversal directions are parallel");
  Scalar a = (v.x * transversal_dir.y - v.y * transversal_dir.x) / det;
  Scalar b = (tangent_dir.x * v.y - tangent_dir.y * v.x) / det;
  return {a * tangent_dir.x - b * transversal_dir.x,
          a * tangent_dir.y - b * transversal_dir.y};
}

namespace {

struct HitResult {
  Scalar s;
  bool demoted = false;
};

// Smallest positive root of a s^2 + b s + c = 0, exact where possible.
std::optional<HitResult> smallest_positive_root(Scalar a, Scalar b, Scalar c) {
  bool approx = a.is_approx() || b.is_approx() || c.is_approx();
  bool demoted = false;
  auto positive = [&](const Scalar& s) {
    if (s.is_approx()) return s.approx_value().re > approx_epsilon();
    return s.sign() > 0;
  };
  for (;;) {
    if (approx) {
      a = a.to_approx();
      b = b.to_approx();
      c = c.to_approx();
    }
    Scalar four = promote_if(Scalar(4), approx);
    Scalar two = promote_if(Scalar(2), approx);
    if (a.is_zero()) {
      if (b.is_zero()) return std::nullopt;
      Scalar s = -c / b;
      if (positive(s)) return HitResult{s, demoted};
      return std::nullopt;
    }
    Scalar disc = b * b - four * a * c;
    if (!approx && disc.is_exact()) {
      try {
        if (disc.sign() < 0) return std::nullopt;  // no real intersection
        Scalar root = sqrt_exact(disc);
        Scalar twoa = two * a;
        Scalar s1 = (-b + root) / twoa;
        Scalar s2 = (-b - root) / twoa;
        std::optional<Scalar> best;
        for (const Scalar& s : {s1, s2})
          if (positive(s) && (!best || s < *best)) best = s;
        if (!best) return std::nullopt;
        return HitResult{*best, demoted};
      } catch (const Error&) {
        // leaves the working field (tower or uncertifiable sqrt): demote
        approx = demoted = true;
        continue;
      }
    }
    // numeric path
    const Approx& da = disc.to_approx().approx_value();
    if (da.re < 0) return std::nullopt;
    Scalar root = sqrt_exact(disc.to_approx());
    Scalar twoa = two * a;
    Scalar s1 = (-b + root) / twoa;
    Scalar s2 = (-b - root) / twoa;
    std::optional<Scalar> best;
    for (const Scalar& s : {s1, s2}) {
      if (!positive(s)) continue;
      if (!best || s.approx_value().re < best->approx_value().re) best = s;
    }
    if (!best) return std::nullopt;
    return HitResult{*best, true};
  }
}

}  // namespace

FlowState flow_step(const Conic& table, const TransversalField& field,
                    const FlowState& s) {
  require(!(s.vel.x.is_zero() && s.vel.y.is_zero()), "ZeroInput",
          "flow needs a nonzero velocity");
  bool approx = s.pos.x.is_approx() || s.vel.x.is_approx();
  std::array<Scalar, 3> r0{promote_if(s.pos.x, approx), promote_if(s.pos.y, approx),
                           promote_if(Scalar(1), approx)};
  std::array<Scalar, 3> rv{promote_if(s.vel.x, approx), promote_if(s.vel.y, approx),
                           promote_if(Scalar(0), approx)};
  auto quad_form = [&](const std::array<Scalar, 3>& u, const std::array<Scalar, 3>& w) {
    Scalar acc = promote_if(Scalar(0), approx);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        acc += promote_if(table.matrix().m[i][j], approx) * u[i] * w[j];
    return acc;
  };
  Scalar a = quad_form(rv, rv);
  Scalar b = promote_if(Scalar(2), approx) * quad_form(r0, rv);
  Scalar c = quad_form(r0, r0);
  auto hit = smallest_positive_root(a, b, c);
  require(hit.has_value(), "NoHit", "forward ray does not meet the table");
  bool demote = hit->demoted;
  Vec2 h{promote_if(s.pos.x, demote) + hit->s * promote_if(s.vel.x, demote),
         promote_if(s.pos.y, demote) + hit->s * promote_if(s.vel.y, demote)};
  Vec2 vin{promote_if(s.vel.x, demote), promote_if(s.vel.y, demote)};
  // Tangent direction at the hit.
  std::array<Scalar, 3> rh{h.x, h.y, promote_if(Scalar(1), demote)};
  std::array<Scalar, 3> lh;
  {
    Scalar acc;
    for (int i = 0; i < 3; ++i) {
      acc = promote_if(Scalar(0), demote);
      for (int j = 0; j < 3; ++j) acc += promote_if(table.matrix().m[i][j], demote) * rh[j];
      lh[i] = acc;
    }
  }
  Vec2 tangent{lh[1], -lh[0]};
  Vec2 trans;
  try {
    trans = field_at(field, h);
  } catch (const Error& e) {
    fail("SingularHit", std::string("hit a singular field point: ") + e.what());
  }
  if (demote) {
    trans.x = trans.x.to_approx();
    trans.y = trans.y.to_approx();
  }
  Vec2 vout = reflect(tangent, trans, vin);
  return {h, vout};
}

HomRational psi_catalog(const TransversalField& f) {
  Poly base = psi_member(Scalar(1));  // 4 v1 Delta - v2^2
  if (std::holds_alternative<FieldA>(f.v)) {
    ExoticASpec a{std::get<FieldA>(f.v).rho};
    auto N = a.N();
    require(N.has_value(), "NoCatalogPsi",
            "Psi catalog covers the odd/even exotic families");
    if (a.parity() == ExoticASpec::Parity::Odd) {
      Poly den = v1() * v1();
      for (const BigRat& c : odd_family_constants(*N))
        den = den * psi_member(Scalar(c)).pow(2);
      return HomRational(base.pow(2 * *N + 1), den);
    }
    Poly den = v1() * v2();
    for (const BigRat& c : even_family_constants(*N))
      den = den * psi_member(Scalar(c));
    return HomRational(base.pow(*N + 1), den);
  }
  if (std::holds_alternative<NamedKind>(f.v)) {
    switch (std::get<NamedKind>(f.v)) {
      case NamedKind::B1:
        return HomRational(base.pow(2),
                           psi_member(Scalar(-3)) *
                               (v1() * Scalar(2) + v2()) * (dl() * Scalar(2) + v2()));
      case NamedKind::B2: {
        Poly d1 = v2() * v2() + dl() * dl() * Scalar(4) + v1() * dl() * Scalar(4) +
                  v1() * v1() * Scalar(4);
        Poly d2 = v2() * v2() + v1() * v1() * Scalar(4);
        return HomRational(base.pow(2), d1 * d2);
      }
      case NamedKind::C1: {
        Poly d = v1().pow(3) + dl().pow(3) + v1() * v2() * dl();
        return HomRational(base.pow(3), d * d);
      }
      case NamedKind::C2: {
        Poly d = v2().pow(3) + v2() * v2() * v1() * Scalar(2) +
                 (v1() * v1() + v2() * v2() * Scalar(2) + v1() * v2() * Scalar(5)) * dl() +
                 v1() * dl() * dl();
        return HomRational(base.pow(3), d * d);
      }
      case NamedKind::D: {
        Poly d3 = v1() * v2() * v2() * Scalar(8) + v2().pow(3) * Scalar(2) +
                  (v1() * v1() * Scalar(4) + v2() * v2() * Scalar(5) +
                   v1() * v2() * Scalar(28)) *
                      dl() +
                  v1() * dl() * dl() * Scalar(16);
        return HomRational(base.pow(3),
                           (v1() * dl() + v2() * v2() * Scalar(2)) *
                               (v1() * Scalar(2) + v2()) * d3);
      }
    }
  }
  if (std::holds_alternative<FieldPencilDual>(f.v)) {
    const Pencil& p = std::get<FieldPencilDual>(f.v).pencil;
    return integral_from_dual(
        catalog_integral(BilliardSpec::pencil(p)));
  }
  fail("NoCatalogPsi", "space-form fields need an explicit pencil member pair");
}

HomRational integral_from_dual(const HomRational& R) {
  // (z, w, t) -> (v2, -2 Delta, -2 v1) with output variables (v1, v2, Delta).
  std::array<std::array<Scalar, 3>, 3> M{{{Scalar(0), Scalar(1), Scalar(0)},
                                          {Scalar(0), Scalar(0), Scalar(-2)},
                                          {Scalar(-2), Scalar(0), Scalar(0)}}};
  return R.substitute_linear(M);
}

BilliardSpec field_to_spec(const TransversalField& f) {
  if (std::holds_alternative<FieldA>(f.v))
    return BilliardSpec::exotic_a(ExoticASpec{std::get<FieldA>(f.v).rho});
  if (std::holds_alternative<NamedKind>(f.v))
    return BilliardSpec::named(std::get<NamedKind>(f.v));
  if (std::holds_alternative<FieldPencilDual>(f.v))
    return BilliardSpec::pencil(std::get<FieldPencilDual>(f.v).pencil);
  fail("NoCatalogPsi", "space-form fields dualize through an explicit pencil");
}

TransversalField spec_to_field(const BilliardSpec& s) {
  if (s.is_named()) return TransversalField::named(std::get<NamedKind>(s.v));
  if (s.is_exotic_a())
    return TransversalField::a(std::get<ExoticASpec>(s.v).rho);
  if (s.is_pencil())
    return TransversalField::pencil_dual(std::get<PencilSpec>(s.v).pencil);
  fail("UnknownSpec", "custom specs have no catalog field");
}

HomRational::Value psi_value(const HomRational& psi, const Vec2& x, const Vec2& v) {
  Scalar delta = x.x * v.y - x.y * v.x;
  return psi.eval(v.x, v.y, delta);
}

Trajectory simulate(const Conic& table, const TransversalField& field,
                    const FlowState& s0, int steps) {
  require(steps >= 1, "InvalidArgument", "simulate needs at least one step");
  HomRational psi = psi_catalog(field);
  Trajectory out;
  FlowState cur = s0;
  for (int k = 0; k < steps; ++k) {
    FlowState next = flow_step(table, field, cur);
    bool exact = next.pos.x.is_exact() && next.vel.x.is_exact();
    if (!exact) out.demoted_to_approx = true;
    BounceRecord rec;
    rec.step = k;
    rec.hit = next.pos;
    Vec2 vin = cur.vel;
    if (!exact) vin = {vin.x.to_approx(), vin.y.to_approx()};
    rec.v_in = vin;
    rec.v_out = next.vel;
    rec.psi_in = psi_value(psi, rec.hit, rec.v_in);
    rec.psi_out = psi_value(psi, rec.hit, rec.v_out);
    rec.exact = exact;
    out.bounces.push_back(rec);
    cur = next;
  }
  out.final_state = cur;
  return out;
}

}  // namespace billiards
