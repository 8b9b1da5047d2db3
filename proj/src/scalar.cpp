#include "billiards/scalar.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>
#include <sstream>

namespace billiards {

namespace {

unsigned g_precision_bits = 128;
int g_epsilon_exp10 = -30;

unsigned digits10_for_bits(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30103)) + 2;
}

struct PrecisionInit {
  PrecisionInit() {
    if (const char* env = std::getenv("BILLIARD_PRECISION_BITS")) {
      long v = std::strtol(env, nullptr, 10);
      if (v >= 32 && v <= 65536) g_precision_bits = static_cast<unsigned>(v);
    }
    BigFloat::default_precision(digits10_for_bits(g_precision_bits));
  }
} g_precision_init;

}  // namespace

void set_approx_precision_bits(unsigned bits) {
  g_precision_bits = bits;
  BigFloat::default_precision(digits10_for_bits(bits));
}

unsigned approx_precision_bits() { return g_precision_bits; }

BigFloat approx_epsilon() {
  return boost::multiprecision::pow(BigFloat(10), g_epsilon_exp10);
}

void set_approx_epsilon_exp10(int exp10) { g_epsilon_exp10 = exp10; }

bool is_squarefree_certified(std::int64_t d) {
  if (d == 0 || d == 1) return false;
  std::int64_t n = d < 0 ? -d : d;
  for (std::int64_t p = 2; p * p <= n && p < 100000; ++p) {
    std::int64_t c = 0;
    while (n % p == 0) {
      n /= p;
      ++c;
    }
    if (c >= 2) return false;
  }
  // n is now 1, prime, or has only factors > 1e5; a square factor would
  // exceed 1e10 which decompose_square never emits below its cap.
  return true;
}

SqrtDecomposition decompose_square(const BigRat& x) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (x == 0) return {BigRat(0), 1};
  const int sgn = x < 0 ? -1 : 1;
  BigInt n = numerator(x) * denominator(x);
  if (n < 0) n = -n;
  BigInt s = 1;
  for (std::int64_t p = 2; p < 100000 && BigInt(p) * p <= n; ++p) {
    while (n % (BigInt(p) * p) == 0) {
      n /= BigInt(p) * p;
      s *= p;
    }
  }
  BigInt root = boost::multiprecision::sqrt(n);
  if (root * root == n) {
    s *= root;
    n = 1;
  }
  if (n > BigInt(1000000000000000LL))
    fail("NotRepresentable",
         "cannot certify squarefree part of " + x.str() + " (cofactor " + n.str() + ")");
  SqrtDecomposition out;
  out.scale = BigRat(s, denominator(x));
  out.d = sgn * n.convert_to<std::int64_t>();
  if (out.d == 0) out.d = sgn;  // n == 1 path keeps the sign in d
  return out;
}

Scalar::Scalar(long num, long den) {
  require(den != 0, "DivisionByZero", "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  v_ = BigRat(num, den);
}

Scalar Scalar::make(const BigRat& a, const BigRat& b, std::int64_t d) {
  if (b == 0) return Scalar(a);
  Quad q;
  q.a = a;
  q.b = b;
  q.d = d;
  Scalar s;
  s.v_ = q;
  return s;
}

Scalar Scalar::quad(const BigRat& a, const BigRat& b, std::int64_t d) {
  require(d != 0 && d != 1, "InvalidField", "sqrt(d) needs d != 0, 1");
  require(is_squarefree_certified(d), "InvalidField",
          "d = " + std::to_string(d) + " is not squarefree");
  return make(a, b, d);
}

Scalar Scalar::approx(const BigFloat& re, const BigFloat& im) {
  Scalar s;
  s.v_ = Approx{re, im};
  return s;
}

const BigRat& Scalar::rat() const {
  const BigRat* p = std::get_if<BigRat>(&v_);
  if (p == nullptr) fail("NotRational", "exact rational expected");
  return *p;
}

const Quad& Scalar::quad_value() const {
  const Quad* p = std::get_if<Quad>(&v_);
  require(p != nullptr, "NotQuad", "quadratic-extension value expected");
  return *p;
}

const Approx& Scalar::approx_value() const {
  const Approx* p = std::get_if<Approx>(&v_);
  require(p != nullptr, "NotApprox", "approx value expected");
  return *p;
}

std::int64_t Scalar::field_d() const {
  if (is_rational()) return 1;
  if (is_quad()) return std::get<Quad>(v_).d;
  fail("ApproxNotSupported", "approx values carry no field tag");
}

bool Scalar::is_zero() const {
  if (is_rational()) return std::get<BigRat>(v_) == 0;
  if (is_quad()) return false;  // normalized quads have b != 0, hence irrational
  const Approx& x = std::get<Approx>(v_);
  return boost::multiprecision::abs(x.re) < approx_epsilon() &&
         boost::multiprecision::abs(x.im) < approx_epsilon();
}

namespace {

// Binary op dispatch: both exact (with compatible d) or both approx.
template <typename RatOp, typename QuadOp, typename ApproxOp>
Scalar binop(const Scalar& lhs, const Scalar& rhs, RatOp rop, QuadOp qop, ApproxOp aop) {
  if (lhs.is_approx() || rhs.is_approx()) {
    require(lhs.is_approx() && rhs.is_approx(), "MixedField",
            "approx and exact values do not mix implicitly; promote with to_approx()");
    return aop(lhs.approx_value(), rhs.approx_value());
  }
  if (lhs.is_rational() && rhs.is_rational())
    return rop(lhs.rat(), rhs.rat());
  std::int64_t d = lhs.is_quad() ? lhs.quad_value().d : rhs.quad_value().d;
  if (lhs.is_quad() && rhs.is_quad())
    require(lhs.quad_value().d == rhs.quad_value().d, "MixedField",
            "values live in different quadratic fields");
  Quad a = lhs.is_quad() ? lhs.quad_value() : Quad{lhs.rat(), BigRat(0), d};
  Quad b = rhs.is_quad() ? rhs.quad_value() : Quad{rhs.rat(), BigRat(0), d};
  return qop(a, b, d);
}

}  // namespace

Scalar Scalar::operator-() const {
  if (is_rational()) return Scalar(-rat());
  if (is_quad()) {
    const Quad& q = quad_value();
    return make(-q.a, -q.b, q.d);
  }
  const Approx& x = approx_value();
  return approx(-x.re, -x.im);
}

Scalar Scalar::operator+(const Scalar& o) const {
  return binop(
      *this, o, [](const BigRat& a, const BigRat& b) { return Scalar(a + b); },
      [](const Quad& a, const Quad& b, std::int64_t d) {
        return Scalar::make(a.a + b.a, a.b + b.b, d);
      },
      [](const Approx& a, const Approx& b) {
        return Scalar::approx(a.re + b.re, a.im + b.im);
      });
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  return binop(
      *this, o, [](const BigRat& a, const BigRat& b) { return Scalar(a * b); },
      [](const Quad& a, const Quad& b, std::int64_t d) {
        return Scalar::make(a.a * b.a + a.b * b.b * d, a.a * b.b + a.b * b.a, d);
      },
      [](const Approx& a, const Approx& b) {
        return Scalar::approx(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
      });
}

Scalar Scalar::inverse() const {
  if (is_rational()) {
    require(rat() != 0, "DivisionByZero", "inverse of zero");
    return Scalar(1 / rat());
  }
  if (is_quad()) {
    const Quad& q = quad_value();
    BigRat norm = q.a * q.a - q.b * q.b * q.d;
    // norm == 0 with b != 0 would force d to be a rational square.
    require(norm != 0, "DivisionByZero", "inverse of zero");
    return make(q.a / norm, -q.b / norm, q.d);
  }
  const Approx& x = approx_value();
  BigFloat n = x.re * x.re + x.im * x.im;
  require(n != 0, "DivisionByZero", "inverse of zero");
  return approx(x.re / n, -x.im / n);
}

Scalar Scalar::operator/(const Scalar& o) const {
  require(!o.is_zero(), "DivisionByZero", "division by zero");
  return *this * o.inverse();
}

bool Scalar::operator==(const Scalar& o) const {
  if (is_approx() || o.is_approx()) {
    require(is_approx() && o.is_approx(), "MixedField",
            "approx and exact values do not compare implicitly");
    const Approx& a = approx_value();
    const Approx& b = o.approx_value();
    return a.re == b.re && a.im == b.im;
  }
  if (is_rational() != o.is_rational()) return false;  // normalized quads are irrational
  if (is_rational()) return rat() == o.rat();
  const Quad& a = quad_value();
  const Quad& b = o.quad_value();
  return a.d == b.d && a.a == b.a && a.b == b.b;
}

Scalar Scalar::conjugate() const {
  if (is_rational()) return *this;
  if (is_quad()) {
    const Quad& q = quad_value();
    return make(q.a, -q.b, q.d);
  }
  fail("ApproxNotSupported", "conjugate is an exact-field operation");
}

Scalar Scalar::pow(long e) const {
  if (e == 0) return is_approx() ? Scalar(1).to_approx() : Scalar(1);
  if (e < 0) return inverse().pow(-e);
  Scalar base = *this;
  Scalar acc = is_approx() ? Scalar(1).to_approx() : Scalar(1);
  long k = e;
  while (k > 0) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

int Scalar::sign() const {
  if (is_rational()) {
    const BigRat& q = rat();
    return q < 0 ? -1 : (q > 0 ? 1 : 0);
  }
  if (is_quad()) {
    const Quad& q = quad_value();
    require(q.d > 0, "NotOrdered", "sign of a complex quadratic value");
    // sign(a + b sqrt d), b != 0
    int sa = q.a < 0 ? -1 : (q.a > 0 ? 1 : 0);
    int sb = q.b < 0 ? -1 : 1;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    BigRat lhs = q.a * q.a;
    BigRat rhs = q.b * q.b * q.d;
    if (lhs == rhs) return 0;  // impossible for squarefree d, kept for safety
    return lhs > rhs ? sa : sb;
  }
  fail("NotOrdered", "sign of an approx value; compare with approx_equal");
}

Scalar Scalar::to_approx() const {
  if (is_approx()) return *this;
  if (is_rational()) return approx(to_bigfloat(rat()));
  const Quad& q = quad_value();
  BigFloat rt = boost::multiprecision::sqrt(BigFloat(std::abs(q.d)));
  if (q.d > 0) return approx(to_bigfloat(q.a) + to_bigfloat(q.b) * rt);
  return approx(to_bigfloat(q.a), to_bigfloat(q.b) * rt);
}

Scalar Scalar::sqrt_rational(const BigRat& x) {
  SqrtDecomposition dec = decompose_square(x);
  if (dec.d == 1) return Scalar(dec.scale);
  require(dec.d != 0, "NotRepresentable", "sqrt decomposition failed");
  if (x < 0 && dec.d > 0) dec.d = -dec.d;
  return Scalar::quad(BigRat(0), dec.scale, dec.d);
}

std::string Scalar::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  if (s.is_rational()) {
    os << s.rat();
    return os;
  }
  if (s.is_quad()) {
    const Quad& q = s.quad_value();
    if (q.a != 0) os << q.a;
    if (q.b == 1) {
      if (q.a != 0) os << "+";
    } else if (q.b == -1) {
      os << "-";
    } else {
      if (q.a != 0 && q.b > 0) os << "+";
      os << q.b << "*";
    }
    os << "sqrt(" << q.d << ")";
    return os;
  }
  const Approx& x = s.approx_value();
  os << "approx(" << x.re.str(30) << "," << x.im.str(30) << ")";
  return os;
}

Scalar sqrt_exact(const Scalar& x) {
  if (x.is_rational()) return Scalar::sqrt_rational(x.rat());
  if (x.is_quad()) {
    // (u + v sqrt d)^2 = a + b sqrt d  =>  u^2 + v^2 d = a, 2uv = b.
    const Quad& q = x.quad_value();
    BigRat norm = q.a * q.a - q.b * q.b * q.d;
    Scalar s = Scalar::sqrt_rational(norm);
    if (!s.is_rational()) fail("NotRepresentable", "sqrt leaves the quadratic field");
    for (int sign = 0; sign < 2; ++sign) {
      BigRat t = (q.a + (sign ? -s.rat() : s.rat())) / 2;
      Scalar u = Scalar::sqrt_rational(t);
      if (!u.is_rational() || u.rat() == 0) continue;
      BigRat v = q.b / (2 * u.rat());
      Scalar cand = Scalar::quad(u.rat(), v, q.d);
      if (cand * cand == x) return cand;
    }
    fail("NotRepresentable", "sqrt leaves the quadratic field");
  }
  const Approx& a = x.approx_value();
  BigFloat r = boost::multiprecision::sqrt(a.re * a.re + a.im * a.im);
  BigFloat u = boost::multiprecision::sqrt((r + a.re) / 2);
  BigFloat v = boost::multiprecision::sqrt((r - a.re) / 2);
  if (a.im < 0) v = -v;
  return Scalar::approx(u, v);
}

BigFloat to_bigfloat(const BigRat& q) { return q.convert_to<BigFloat>(); }

bool approx_equal(const Scalar& a, const Scalar& b) {
  Scalar da = a.is_approx() ? a : a.to_approx();
  Scalar db = b.is_approx() ? b : b.to_approx();
  const Approx& x = da.approx_value();
  const Approx& y = db.approx_value();
  BigFloat diff = boost::multiprecision::sqrt((x.re - y.re) * (x.re - y.re) +
                                              (x.im - y.im) * (x.im - y.im));
  BigFloat mag = boost::multiprecision::sqrt(x.re * x.re + x.im * x.im) +
                 boost::multiprecision::sqrt(y.re * y.re + y.im * y.im);
  if (mag < 1) mag = 1;
  return diff <= approx_epsilon() * mag;
}

}  // namespace billiards
