#pragma once
// Exact scalars: rationals, quadratic extensions Q(sqrt(d)), and an explicit
// high-precision complex floating fallback. The exact variants never degrade
// silently; promotion to approx is one-way and spelled out at the call site.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>

#include "billiards/errors.hpp"

namespace billiards {

using BigInt =
    boost::multiprecision::number<boost::multiprecision::gmp_int,
                                  boost::multiprecision::et_off>;
using BigRat =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;
using BigFloat =
    boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                  boost::multiprecision::et_off>;

// Default 128 bits; BILLIARD_PRECISION_BITS and the CLI override it.
void set_approx_precision_bits(unsigned bits);
unsigned approx_precision_bits();

// Comparison tolerance for approx values, default 1e-30.
BigFloat approx_epsilon();
void set_approx_epsilon_exp10(int exp10);

// a + b*sqrt(d), b != 0 in normalized form; d squarefree, d != 0, 1.
struct Quad {
  BigRat a;
  BigRat b;
  std::int64_t d = 0;
};

struct Approx {
  BigFloat re;
  BigFloat im;
};

class Scalar {
 public:
  Scalar() : v_(BigRat(0)) {}
  Scalar(long n) : v_(BigRat(n)) {}  // NOLINT: implicit by design
  Scalar(const BigInt& n) : v_(BigRat(n)) {}
  Scalar(const BigRat& q) : v_(q) {}
  Scalar(long num, long den);

  static Scalar quad(const BigRat& a, const BigRat& b, std::int64_t d);
  static Scalar approx(const BigFloat& re, const BigFloat& im = BigFloat(0));

  bool is_rational() const { return std::holds_alternative<BigRat>(v_); }
  bool is_quad() const { return std::holds_alternative<Quad>(v_); }
  bool is_approx() const { return std::holds_alternative<Approx>(v_); }
  bool is_exact() const { return !is_approx(); }

  // Throws unless the value is exactly rational.
  const BigRat& rat() const;
  const Quad& quad_value() const;
  const Approx& approx_value() const;

  // The d of this value's field: 1 for rationals. Throws on approx.
  std::int64_t field_d() const;

  bool is_zero() const;
  bool is_one() const { return *this == Scalar(1); }

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar conjugate() const;  // a + b*sqrt(d) -> a - b*sqrt(d)
  Scalar inverse() const;
  Scalar pow(long e) const;

  // Sign of a real value (rational or quad with d > 0). Throws otherwise.
  int sign() const;
  bool operator<(const Scalar& o) const { return (*this - o).sign() < 0; }
  bool operator>(const Scalar& o) const { return o < *this; }
  bool operator<=(const Scalar& o) const { return !(o < *this); }
  bool operator>=(const Scalar& o) const { return !(*this < o); }

  // Explicit, one-way promotion.
  Scalar to_approx() const;

  // sqrt of a nonnegative-or-any rational value, as rational or quad.
  // Throws NotRepresentable if the squarefree part cannot be certified.
  static Scalar sqrt_rational(const BigRat& x);

  // Canonical text form: "3/2", "-1/2+1/2*sqrt(-3)", "approx(...)".
  std::string str() const;

 private:
  std::variant<BigRat, Quad, Approx> v_;

  static Scalar make(const BigRat& a, const BigRat& b, std::int64_t d);
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

// x = scale^2 * d with d squarefree (d = 1 for perfect squares, sign kept).
// Throws NotRepresentable when the factorization cannot be certified.
struct SqrtDecomposition {
  BigRat scale;
  std::int64_t d;
};
SqrtDecomposition decompose_square(const BigRat& x);

// Exact square root of an exact scalar: rationals go to Q or Q(sqrt d);
// quads only when the root stays in the same field. Approx values get the
// principal complex square root. Throws NotRepresentable otherwise.
Scalar sqrt_exact(const Scalar& x);

bool is_squarefree_certified(std::int64_t d);

BigFloat to_bigfloat(const BigRat& q);
bool approx_equal(const Scalar& a, const Scalar& b);

}  // namespace billiards
