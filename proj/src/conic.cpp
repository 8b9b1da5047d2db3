#include "billiards/conic.hpp"

#include "billiards/poly.hpp"

namespace billiards {

namespace {

Scalar dot(const std::array<Scalar, 3>& a, const std::array<Scalar, 3>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

std::array<Scalar, 3> cross(const std::array<Scalar, 3>& a,
                            const std::array<Scalar, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

}  // namespace

Matrix3 Matrix3::diag(const Scalar& a, const Scalar& b, const Scalar& c) {
  Matrix3 r;
  for (auto& row : r.m)
    for (auto& x : row) x = Scalar(0);
  r.m[0][0] = a;
  r.m[1][1] = b;
  r.m[2][2] = c;
  return r;
}

std::array<Scalar, 3> Matrix3::mul(const std::array<Scalar, 3>& v) const {
  return {dot(m[0], v), dot(m[1], v), dot(m[2], v)};
}

Matrix3 Matrix3::adjugate() const {
  Matrix3 r;
  auto minor = [&](int i, int j) {
    int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
    int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
    return m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
  };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[j][i] = minor(i, j);
  return r;
}

Scalar Matrix3::det() const {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

bool Matrix3::is_symmetric() const {
  return m[0][1] == m[1][0] && m[0][2] == m[2][0] && m[1][2] == m[2][1];
}

Conic::Conic(const Matrix3& m) : m_(m) {
  require(m_.is_symmetric(), "InvalidConic", "conic matrix must be symmetric");
}

Conic Conic::from_upper(const std::array<Scalar, 6>& u) {
  Matrix3 m;
  m.m[0] = {u[0], u[1], u[2]};
  m.m[1] = {u[1], u[3], u[4]};
  m.m[2] = {u[2], u[4], u[5]};
  return Conic(m);
}

Conic Conic::standard_parabola() {
  // w t - z^2 = 0
  return from_upper({Scalar(-1), Scalar(0), Scalar(0), Scalar(0), Scalar(1, 2), Scalar(0)});
}

Conic Conic::diagonal(const Scalar& a, const Scalar& b, const Scalar& c) {
  return Conic(Matrix3::diag(a, b, c));
}

std::array<Scalar, 6> Conic::upper() const {
  return {m_.m[0][0], m_.m[0][1], m_.m[0][2], m_.m[1][1], m_.m[1][2], m_.m[2][2]};
}

Scalar Conic::eval(const HomPoint& p) const {
  return dot(m_.mul(p.coords()), p.coords());
}

Conic Pencil::member(const Scalar& lambda) const {
  Matrix3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r.m[i][j] = B.matrix().m[i][j] - lambda * A.matrix().m[i][j];
  return Conic(r);
}

Scalar Pencil::member_eval(const Scalar& lambda, const HomPoint& p) const {
  return B.eval(p) - lambda * A.eval(p);
}

std::vector<HomPoint> base_points(const Pencil& p) {
  // Only the parabola normalization admits the rational parametrization
  // (z, z^2, 1) that keeps base points inside one quadratic extension.
  const Matrix3& pb = p.B.matrix();
  const Matrix3 std_pb = Conic::standard_parabola().matrix();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          require((pb.m[i][j] * std_pb.m[k][l] - pb.m[k][l] * std_pb.m[i][j]).is_zero(),
                  "NotRepresentable",
                  "base points are computed for gamma = {wt = z^2} pencils");
  // q(z) = <A (z, z^2, 1), (z, z^2, 1)>; base points are its roots, plus the
  // parabola's infinite point when the degree drops below 4.
  UniPoly z = UniPoly::variable();
  UniPoly q;
  {
    std::array<UniPoly, 3> r{z, z * z, UniPoly::constant(Scalar(1))};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) q = q + r[i] * r[j] * p.A.matrix().m[i][j];
  }
  require(!q.is_zero(), "NotRepresentable", "pencil members coincide on the curve");
  std::vector<HomPoint> out;
  std::int64_t d = 1;
  try {
    for (const auto& [root, mult] : find_roots(q)) {
      if (root.is_quad()) {
        std::int64_t rd = root.quad_value().d;
        require(d == 1 || d == rd, "NotRepresentable",
                "base points span more than one quadratic extension");
        d = rd;
      }
      out.push_back(HomPoint(root, root * root, Scalar(1)));
    }
  } catch (const Error& e) {
    if (e.code() == "NotRepresentable") throw;
    fail("NotRepresentable",
         std::string("base points are not representable: ") + e.what());
  }
  if (q.degree() < 4) out.push_back(HomPoint(Scalar(0), Scalar(1), Scalar(0)));
  return out;
}

ProjLine tangent_line(const Conic& c, const HomPoint& p) {
  require(c.contains(p), "PointNotOnConic", "tangent line needs a point of the conic");
  auto mp = c.matrix().mul(p.coords());
  require(!(mp[0].is_zero() && mp[1].is_zero() && mp[2].is_zero()), "SingularPoint",
          "conic is singular at the point");
  return ProjLine(mp[0], mp[1], mp[2]);
}

LineChart line_chart(const ProjLine& l) {
  LineChart ch;
  const auto& c = l.covector();
  if (!c[1].is_zero()) {
    // Chart coordinate is z/t; w solved from the line equation.
    ch.dir = {c[1], -c[0], Scalar(0)};
    ch.base = {Scalar(0), -c[2], c[1]};
  } else if (!c[0].is_zero()) {
    // Vertical line; chart coordinate is w/t.
    ch.dir = {Scalar(0), c[0], Scalar(0)};
    ch.base = {-c[2], Scalar(0), c[0]};
  } else {
    // The infinity line; chart coordinate is z/w.
    ch.dir = {c[2], Scalar(0), Scalar(0)};
    ch.base = {Scalar(0), c[2], Scalar(0)};
  }
  return ch;
}

Scalar LineChart::coordinate(const HomPoint& p) const {
  // Solve p ~ x*dir + y*base; returns x/y (throws at the line's infinity).
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      Scalar det = dir[i] * base[j] - dir[j] * base[i];
      if (det.is_zero()) continue;
      Scalar xl = p[i] * base[j] - p[j] * base[i];
      Scalar yl = dir[i] * p[j] - dir[j] * p[i];
      require(!yl.is_zero(), "InfiniteValue",
              "point is the chart's infinity on this line");
      return xl / yl;
    }
  }
  fail("ZeroInput", "degenerate line chart");
}

HomPoint LineChart::point_at(const ChartValue& x) const {
  return HomPoint(x.num() * dir[0] + x.den() * base[0],
                  x.num() * dir[1] + x.den() * base[1],
                  x.num() * dir[2] + x.den() * base[2]);
}

std::array<Scalar, 3> conic_on_line_quadratic(const Conic& c, const LineChart& chart) {
  auto md = c.matrix().mul(chart.dir);
  auto mb = c.matrix().mul(chart.base);
  return {dot(md, chart.dir), dot(md, chart.base) * Scalar(2), dot(mb, chart.base)};
}

std::pair<HomPoint, HomPoint> line_conic_points(const Conic& c, const ProjLine& l) {
  LineChart ch = line_chart(l);
  auto [a, b, c0] = conic_on_line_quadratic(c, ch);
  if (a.is_zero() && b.is_zero() && c0.is_zero())
    fail("LineOnConic", "line is contained in the conic");
  if (a.is_zero()) {
    HomPoint at_inf = ch.point_at(ChartValue::infinity());
    if (b.is_zero()) return {at_inf, at_inf};  // doubled point at infinity
    return {at_inf, ch.point_at(ChartValue(-c0 / b))};
  }
  Scalar disc = b * b - Scalar(4) * a * c0;
  Scalar root = sqrt_exact(disc);
  Scalar twoa = Scalar(2) * a;
  return {ch.point_at(ChartValue((-b + root) / twoa)),
          ch.point_at(ChartValue((-b - root) / twoa))};
}

namespace {

// Involution in the line chart fixing x0 and swapping the roots of
// a x^2 + b x + c (via the rational symmetric functions s, pi).
struct SymConstruction {
  Scalar a, bb, c;  // the member's restriction
  bool usable = false;
  MobiusMap mob{Scalar(1), Scalar(0), Scalar(0), Scalar(1)};
};

SymConstruction build_from_member(const std::array<Scalar, 3>& quad, const Scalar& x0) {
  SymConstruction out;
  out.a = quad[0];
  out.bb = quad[1];
  out.c = quad[2];
  if (quad[0].is_zero()) return out;  // member through the chart's infinity
  Scalar s = -quad[1] / quad[0];
  Scalar pi = quad[2] / quad[0];
  Scalar ma = pi - x0 * x0;
  Scalar mc = s - Scalar(2) * x0;
  if (ma.is_zero() && mc.is_zero()) return out;  // member tangent to L at P
  Scalar mb = mc * pi - ma * s;
  out.mob = MobiusMap(ma, mb, mc, -ma, Chart::z());
  out.usable = true;
  return out;
}

// sigma pulls the quadratic back to a proportional quadratic iff it permutes
// (or fixes) its roots.
bool permutes_roots(const MobiusMap& sigma, const std::array<Scalar, 3>& quad) {
  const Scalar &al = sigma.a(), &be = sigma.b(), &ga = sigma.c(), &de = sigma.d();
  Scalar p2 = quad[0] * al * al + quad[1] * al * ga + quad[2] * ga * ga;
  Scalar p1 = Scalar(2) * quad[0] * al * be + quad[1] * (al * de + be * ga) +
              Scalar(2) * quad[2] * ga * de;
  Scalar p0 = quad[0] * be * be + quad[1] * be * de + quad[2] * de * de;
  return (p2 * quad[1] - p1 * quad[0]).is_zero() &&
         (p2 * quad[2] - p0 * quad[0]).is_zero() &&
         (p1 * quad[2] - p0 * quad[1]).is_zero();
}

}  // namespace

MobiusMap pencil_involution(const Pencil& p, const HomPoint& P) {
  require(p.B.contains(P), "PointNotOnConic", "P must lie on the pencil's curve");
  require(!p.A.eval(P).is_zero(), "BasePoint", "P lies in the base set of the pencil");
  ProjLine L = tangent_line(p.B, P);
  LineChart ch = line_chart(L);
  Scalar x0 = ch.coordinate(P);

  std::optional<MobiusMap> built;
  // Construct from the first usable member among A, B-A, B-2A, B-3A.
  std::vector<Conic> members{p.A, p.member(Scalar(1)), p.member(Scalar(2)),
                             p.member(Scalar(3))};
  size_t used = members.size();
  for (size_t i = 0; i < members.size(); ++i) {
    SymConstruction sc = build_from_member(conic_on_line_quadratic(members[i], ch), x0);
    if (sc.usable) {
      built = sc.mob;
      used = i;
      break;
    }
  }
  require(built.has_value(), "DegenerateMember",
          "no pencil member induces a nondegenerate involution at P");

  // Validate against two further members.
  int validated = 0;
  for (size_t i = 0; i < members.size() + 2 && validated < 2; ++i) {
    Scalar lambda(static_cast<long>(i + 1));
    Conic m2 = i < members.size() ? members[i] : p.member(lambda * Scalar(7));
    if (i == used) continue;
    auto q2 = conic_on_line_quadratic(m2, ch);
    if (q2[0].is_zero() && q2[1].is_zero() && q2[2].is_zero()) continue;
    require(permutes_roots(*built, q2), "DegenerateMember",
            "pencil involution failed validation against a second member");
    ++validated;
  }
  require(validated >= 2, "DegenerateMember", "could not validate pencil involution");
  return *built;
}

std::pair<ProjLine, ProjLine> tangents_from_point(const Conic& c, const HomPoint& q) {
  require(c.is_regular(), "SingularConic", "tangents from a point need a regular conic");
  require(!c.contains(q), "PointOnConic", "point lies on the conic");
  Matrix3 adj = c.matrix().adjugate();
  // Two independent lines through q.
  int piv = 0;
  while (q[piv].is_zero()) ++piv;
  std::array<Scalar, 3> e1{}, e2{};
  for (int i = 0; i < 3; ++i) e1[i] = e2[i] = Scalar(0);
  e1[(piv + 1) % 3] = Scalar(1);
  e2[(piv + 2) % 3] = Scalar(1);
  auto l1 = cross(q.coords(), e1);
  auto l2 = cross(q.coords(), e2);
  auto al1 = adj.mul(l1);
  auto al2 = adj.mul(l2);
  Scalar a = dot(al2, l2);
  Scalar b = Scalar(2) * dot(al1, l2);
  Scalar c0 = dot(al1, l1);
  auto line_at = [&](const Scalar& mu, const Scalar& nu) {
    return ProjLine(mu * l1[0] + nu * l2[0], mu * l1[1] + nu * l2[1],
                    mu * l1[2] + nu * l2[2]);
  };
  // mu l1 + nu l2 tangent iff a nu^2 + b mu nu + c0 mu^2 = 0.
  if (a.is_zero()) {
    if (b.is_zero()) fail("SingularConic", "degenerate tangent pencil");
    return {line_at(Scalar(0), Scalar(1)), line_at(-b, c0)};
  }
  Scalar disc = b * b - Scalar(4) * a * c0;
  Scalar root = sqrt_exact(disc);
  Scalar twoa = Scalar(2) * a;
  return {line_at(twoa, -b + root), line_at(twoa, -b - root)};
}

ProjLine space_form_transversal(const Matrix3& A, const Conic& c, const HomPoint& q) {
  require(A.is_symmetric(), "InvalidSpaceForm", "space form matrix must be symmetric");
  require(!q[2].is_zero(), "InfinitePoint", "space-form transversal needs an affine point");
  ProjLine tl = tangent_line(c, q);
  bool flat = A.det().is_zero();
  if (flat) {
    Matrix3 euclid = Matrix3::diag(Scalar(1), Scalar(1), Scalar(0));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        require(A.m[i][j] == euclid.m[i][j], "InvalidSpaceForm",
                "degenerate space form matrix must be diag(1,1,0)");
    // Euclidean normal: direction is the tangent covector's gradient part.
    HomPoint n(tl[0], tl[1], Scalar(0));
    return line_through(q, n);
  }
  // tau: affine direction of the tangent line.
  std::array<Scalar, 3> tau{tl[1], -tl[0], Scalar(0)};
  auto rxt = cross(q.coords(), tau);
  auto m = A.adjugate().mul(rxt);  // A^{-1}(r x tau) up to det A
  HomPoint mp(m[0], m[1], m[2]);
  require(mp != q, "SingularA", "transversal undefined: A^{-1}(r x tau) ~ r");
  return line_through(q, mp);
}

bool caustic_reflection_check(const Conic& table, const ProjLine& transversal,
                              const Conic& s, const HomPoint& q) {
  require(transversal.incident(q), "DegenerateFrame",
          "transversal line must pass through Q");
  require(!s.eval(q).is_zero(), "PointOnConic", "Q must lie outside the caustic");
  ProjLine t = tangent_line(table, q);
  require(t != transversal, "DegenerateFrame", "tangent and transversal coincide");
  // Lines through q: L(s) = s*T + N. Reflection is s -> -s; it permutes the
  // tangents to S iff the pencil restriction has no odd term.
  Matrix3 adj = s.matrix().adjugate();
  auto at = adj.mul(t.covector());
  Scalar mixed = dot(at, transversal.covector());
  Scalar a = dot(at, t.covector());
  if (a.is_zero() && mixed.is_zero()) return false;  // T tangent: degenerate pencil
  return mixed.is_zero();
}

}  // namespace billiards
