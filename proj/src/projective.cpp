#include "billiards/projective.hpp"

#include <sstream>

namespace billiards {

HomPoint::HomPoint(Scalar x1, Scalar x2, Scalar x3)
    : c_{std::move(x1), std::move(x2), std::move(x3)} {
  require(!(c_[0].is_zero() && c_[1].is_zero() && c_[2].is_zero()), "ZeroInput",
          "homogeneous point needs a nonzero coordinate");
}

bool HomPoint::operator==(const HomPoint& o) const {
  // Proportionality: all 2x2 minors vanish.
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (!(c_[i] * o.c_[j] - c_[j] * o.c_[i]).is_zero()) return false;
  return true;
}

HomPoint HomPoint::canonical() const {
  for (int i = 0; i < 3; ++i) {
    if (!c_[i].is_zero()) {
      Scalar inv = c_[i].inverse();
      return HomPoint(c_[0] * inv, c_[1] * inv, c_[2] * inv);
    }
  }
  fail("ZeroInput", "zero point");
}

std::string HomPoint::key() const {
  HomPoint c = canonical();
  return c.c_[0].str() + "|" + c.c_[1].str() + "|" + c.c_[2].str();
}

std::string HomPoint::str() const {
  return "[" + c_[0].str() + " : " + c_[1].str() + " : " + c_[2].str() + "]";
}

ProjLine::ProjLine(Scalar l0, Scalar l1, Scalar l2)
    : c_{std::move(l0), std::move(l1), std::move(l2)} {
  require(!(c_[0].is_zero() && c_[1].is_zero() && c_[2].is_zero()), "ZeroInput",
          "line needs a nonzero covector");
}

Scalar ProjLine::pairing(const HomPoint& p) const {
  return c_[0] * p[0] + c_[1] * p[1] + c_[2] * p[2];
}

bool ProjLine::operator==(const ProjLine& o) const {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (!(c_[i] * o.c_[j] - c_[j] * o.c_[i]).is_zero()) return false;
  return true;
}

std::string ProjLine::str() const {
  return "{" + c_[0].str() + " : " + c_[1].str() + " : " + c_[2].str() + "}";
}

ProjLine polar_dual(const HomPoint& p) { return ProjLine(p[0], p[1], p[2]); }
HomPoint polar_dual(const ProjLine& l) { return HomPoint(l[0], l[1], l[2]); }

namespace {
std::array<Scalar, 3> cross(const std::array<Scalar, 3>& a,
                            const std::array<Scalar, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}
}  // namespace

ProjLine line_through(const HomPoint& p, const HomPoint& q) {
  require(p != q, "CoincidentPoints", "line through coincident points");
  auto c = cross(p.coords(), q.coords());
  return ProjLine(c[0], c[1], c[2]);
}

HomPoint line_intersection(const ProjLine& a, const ProjLine& b) {
  require(a != b, "CoincidentLines", "intersection of coincident lines");
  auto c = cross(a.covector(), b.covector());
  return HomPoint(c[0], c[1], c[2]);
}

ChartValue::ChartValue(Scalar num, Scalar den)
    : num_(std::move(num)), den_(std::move(den)) {
  require(!(num_.is_zero() && den_.is_zero()), "ZeroInput",
          "chart value needs a nonzero pair");
}

Scalar ChartValue::finite() const {
  require(!is_infinity(), "InfiniteValue", "finite chart value expected");
  return num_ / den_;
}

std::string ChartValue::str() const {
  if (is_infinity()) return "inf";
  return finite().str();
}

std::string Chart::name() const {
  switch (tag) {
    case Tag::Z: return "z";
    case Tag::Zeta: return "zeta";
    case Tag::U: return "u";
    case Tag::Y: return "y";
  }
  return "?";
}

MobiusMap::MobiusMap(Scalar a, Scalar b, Scalar c, Scalar d, Chart chart)
    : m_{std::move(a), std::move(b), std::move(c), std::move(d)},
      chart_(std::move(chart)) {
  require(!determinant().is_zero(), "DegenerateMap",
          "Mobius map needs a nonzero determinant");
}

ChartValue MobiusMap::apply(const ChartValue& x) const {
  Scalar n = m_[0] * x.num() + m_[1] * x.den();
  Scalar d = m_[2] * x.num() + m_[3] * x.den();
  return ChartValue(n, d);
}

MobiusMap MobiusMap::compose(const MobiusMap& o) const {
  require(chart_ == o.chart_, "ChartMismatch", "composition across charts");
  return MobiusMap(m_[0] * o.m_[0] + m_[1] * o.m_[2], m_[0] * o.m_[1] + m_[1] * o.m_[3],
                   m_[2] * o.m_[0] + m_[3] * o.m_[2], m_[2] * o.m_[1] + m_[3] * o.m_[3],
                   chart_);
}

MobiusMap MobiusMap::inverse() const {
  return MobiusMap(m_[3], -m_[1], -m_[2], m_[0], chart_);
}

bool MobiusMap::proportional_to(const MobiusMap& o) const {
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (!(m_[i] * o.m_[j] - m_[j] * o.m_[i]).is_zero()) return false;
  return true;
}

bool MobiusMap::is_involution() const {
  MobiusMap sq = compose(*this);
  return (sq.m_[1].is_zero() && sq.m_[2].is_zero() && sq.m_[0] == sq.m_[3]);
}

bool MobiusMap::is_identity() const {
  return m_[1].is_zero() && m_[2].is_zero() && m_[0] == m_[3];
}

std::string MobiusMap::str() const {
  std::ostringstream os;
  os << "[[" << m_[0] << ", " << m_[1] << "], [" << m_[2] << ", " << m_[3]
     << "]] @" << chart_.name();
  return os.str();
}

MobiusMap eta(const Scalar& rho) {
  return MobiusMap(rho - Scalar(1), -(rho - Scalar(2)), rho, -(rho - Scalar(1)),
                   Chart::zeta());
}

ChartValue theta_of(const Scalar& rho) {
  return ChartValue(rho - Scalar(1), rho);
}

MobiusMap mobius_from_three_pairs(const std::array<ChartValue, 3>& src,
                                  const std::array<ChartValue, 3>& dst,
                                  Chart chart) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      require(src[i] != src[j] && dst[i] != dst[j], "DegeneratePairs",
              "three-pair interpolation needs distinct sources and targets");
  // Standard map sending (p0, p1, p2) -> (0, 1, inf) in projective pairs:
  //   x -> ((x - p0)(p1 - p2)) / ((x - p2)(p1 - p0))
  auto to_standard = [](const std::array<ChartValue, 3>& p) {
    const Scalar &a0 = p[0].num(), &b0 = p[0].den();
    const Scalar &a1 = p[1].num(), &b1 = p[1].den();
    const Scalar &a2 = p[2].num(), &b2 = p[2].den();
    Scalar k12 = a1 * b2 - a2 * b1;
    Scalar k10 = a1 * b0 - a0 * b1;
    // rows of the matrix of x -> (x b0 - a0) k12 : (x b2 - a2) k10
    return MobiusMap(b0 * k12, -a0 * k12, b2 * k10, -a2 * k10);
  };
  MobiusMap s = to_standard(src);
  MobiusMap t = to_standard(dst);
  MobiusMap m = t.inverse().compose(s);
  return MobiusMap(m.a(), m.b(), m.c(), m.d(), chart);
}

namespace {

// Matrix taking the base coordinate z to the chart coordinate.
MobiusMap chart_from_z(const Chart& c) {
  switch (c.tag) {
    case Chart::Tag::Z:
      return MobiusMap(Scalar(1), Scalar(0), Scalar(0), Scalar(1));
    case Chart::Tag::Zeta:
      return MobiusMap(Scalar(1), Scalar(0), Scalar(0), c.z0);
    case Chart::Tag::U:
      return MobiusMap(Scalar(1), -c.z0, Scalar(0), Scalar(1));
    case Chart::Tag::Y:
      return MobiusMap(Scalar(0), Scalar(1), Scalar(1), Scalar(-1));
  }
  fail("ChartMismatch", "unknown chart");
}

}  // namespace

MobiusMap chart_transport(const MobiusMap& m, const Chart& to_chart) {
  if (m.chart() == to_chart) return m;
  MobiusMap from = chart_from_z(m.chart());
  MobiusMap to = chart_from_z(to_chart);
  MobiusMap t = to.compose(from.inverse());  // to <- from
  MobiusMap r = t.compose(MobiusMap(m.a(), m.b(), m.c(), m.d())).compose(t.inverse());
  return MobiusMap(r.a(), r.b(), r.c(), r.d(), to_chart);
}

}  // namespace billiards
