#pragma once
// Projective points and lines in homogeneous coordinates, and Mobius maps on
// affine charts of projective lines (the eta_rho family and friends).

#include <array>
#include <optional>
#include <string>

#include "billiards/scalar.hpp"

namespace billiards {

class ProjLine;

class HomPoint {
 public:
  HomPoint() : c_{Scalar(0), Scalar(0), Scalar(1)} {}
  HomPoint(Scalar x1, Scalar x2, Scalar x3);
  static HomPoint affine(const Scalar& z, const Scalar& w) {
    return HomPoint(z, w, Scalar(1));
  }

  const Scalar& operator[](int i) const { return c_[i]; }
  const std::array<Scalar, 3>& coords() const { return c_; }

  bool operator==(const HomPoint& o) const;  // up to nonzero scalar factor
  bool operator!=(const HomPoint& o) const { return !(*this == o); }

  // First nonzero coordinate scaled to 1; used for hashing keys.
  HomPoint canonical() const;
  std::string key() const;

  std::string str() const;

 private:
  std::array<Scalar, 3> c_;
};

class ProjLine {
 public:
  ProjLine() : c_{Scalar(0), Scalar(0), Scalar(1)} {}
  ProjLine(Scalar l0, Scalar l1, Scalar l2);

  const Scalar& operator[](int i) const { return c_[i]; }
  const std::array<Scalar, 3>& covector() const { return c_; }

  Scalar pairing(const HomPoint& p) const;  // <covector, point>
  bool incident(const HomPoint& p) const { return pairing(p).is_zero(); }

  bool operator==(const ProjLine& o) const;
  bool operator!=(const ProjLine& o) const { return !(*this == o); }

  std::string str() const;

 private:
  std::array<Scalar, 3> c_;
};

// Orthogonal polarity: coordinate-identity between point and covector triples.
ProjLine polar_dual(const HomPoint& p);
HomPoint polar_dual(const ProjLine& l);

ProjLine line_through(const HomPoint& p, const HomPoint& q);
HomPoint line_intersection(const ProjLine& a, const ProjLine& b);

// A value in an affine chart of a projective line; infinity is (1 : 0).
class ChartValue {
 public:
  ChartValue() : num_(0), den_(1) {}
  ChartValue(Scalar v) : num_(std::move(v)), den_(1) {}  // NOLINT
  ChartValue(Scalar num, Scalar den);
  static ChartValue infinity() { return ChartValue(Scalar(1), Scalar(0)); }

  bool is_infinity() const { return den_.is_zero(); }
  Scalar finite() const;  // throws on infinity
  const Scalar& num() const { return num_; }
  const Scalar& den() const { return den_; }

  bool operator==(const ChartValue& o) const {
    return (num_ * o.den_ - o.num_ * den_).is_zero();
  }
  bool operator!=(const ChartValue& o) const { return !(*this == o); }

  std::string str() const;

 private:
  Scalar num_, den_;
};

// Affine charts on a projective line, all expressed over a base coordinate z:
//   Z: the base coordinate itself
//   Zeta: zeta = z / z0
//   U: u = z - z0
//   Y: y = 1 / (z - 1)
// With z0 = 1 these are the natural charts around the fixed point of eta_rho.
struct Chart {
  enum class Tag { Z, Zeta, U, Y } tag = Tag::Z;
  Scalar z0 = Scalar(1);

  static Chart z() { return {Tag::Z, Scalar(1)}; }
  static Chart zeta(const Scalar& z0 = Scalar(1)) { return {Tag::Zeta, z0}; }
  static Chart u(const Scalar& z0 = Scalar(1)) { return {Tag::U, z0}; }
  static Chart y() { return {Tag::Y, Scalar(1)}; }

  bool operator==(const Chart& o) const { return tag == o.tag && z0 == o.z0; }
  std::string name() const;
};

class MobiusMap {
 public:
  MobiusMap() : m_{Scalar(1), Scalar(0), Scalar(0), Scalar(1)} {}
  MobiusMap(Scalar a, Scalar b, Scalar c, Scalar d, Chart chart = Chart::z());

  const Scalar& a() const { return m_[0]; }
  const Scalar& b() const { return m_[1]; }
  const Scalar& c() const { return m_[2]; }
  const Scalar& d() const { return m_[3]; }
  const Chart& chart() const { return chart_; }

  Scalar determinant() const { return m_[0] * m_[3] - m_[1] * m_[2]; }

  ChartValue apply(const ChartValue& x) const;
  MobiusMap compose(const MobiusMap& o) const;  // this after o
  MobiusMap inverse() const;

  // PSL2 semantics: equality is matrix proportionality.
  bool proportional_to(const MobiusMap& o) const;
  bool is_involution() const;  // matrix^2 is a scalar multiple of identity
  bool is_identity() const;

  std::string str() const;

 private:
  std::array<Scalar, 4> m_;
  Chart chart_;
};

// eta_rho(zeta) = ((rho-1) zeta - (rho-2)) / (rho zeta - (rho-1)); chart Zeta.
MobiusMap eta(const Scalar& rho);

// theta_rho = (rho-1)/rho = eta_rho(infinity).
ChartValue theta_of(const Scalar& rho);

// The unique Mobius map sending three pairwise-distinct sources to three
// pairwise-distinct targets.
MobiusMap mobius_from_three_pairs(const std::array<ChartValue, 3>& src,
                                  const std::array<ChartValue, 3>& dst,
                                  Chart chart = Chart::z());

// Conjugates m from its chart into to_chart (same underlying line).
MobiusMap chart_transport(const MobiusMap& m, const Chart& to_chart);

}  // namespace billiards
