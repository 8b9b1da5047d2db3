#include "billiards/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace billiards {

namespace {
const Scalar kZero(0);
}

// ---------------------------------------------------------------- UniPoly

UniPoly::UniPoly(std::initializer_list<Scalar> coeffs) : c_(coeffs) { trim(); }

UniPoly UniPoly::constant(const Scalar& c) { return UniPoly{c}; }

UniPoly UniPoly::variable() { return UniPoly{Scalar(0), Scalar(1)}; }

void UniPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const Scalar& UniPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return kZero;
  return c_[k];
}

Scalar UniPoly::leading() const {
  require(!is_zero(), "ZeroPoly", "leading coefficient of zero polynomial");
  return c_.back();
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  UniPoly r;
  r.c_.resize(std::max(c_.size(), o.c_.size()), Scalar(0));
  for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = coeff(i) + o.coeff(i);
  r.trim();
  return r;
}

UniPoly UniPoly::operator-() const {
  UniPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + (-o); }

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  UniPoly r;
  r.c_.assign(c_.size() + o.c_.size() - 1, Scalar(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
  r.trim();
  return r;
}

UniPoly UniPoly::operator*(const Scalar& s) const {
  UniPoly r = *this;
  for (auto& c : r.c_) c = c * s;
  r.trim();
  return r;
}

UniPoly UniPoly::pow(int e) const {
  require(e >= 0, "InvalidArgument", "negative polynomial power");
  UniPoly acc = constant(Scalar(1));
  UniPoly base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

UniPoly UniPoly::derivative() const {
  UniPoly r;
  if (c_.size() <= 1) return r;
  r.c_.resize(c_.size() - 1, Scalar(0));
  for (size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = c_[i] * Scalar(static_cast<long>(i));
  r.trim();
  return r;
}

Scalar UniPoly::eval(const Scalar& x) const {
  bool ap = x.is_approx();
  Scalar acc = ap ? Scalar(0).to_approx() : Scalar(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it)
    acc = acc * x + (ap ? it->to_approx() : *it);
  return acc;
}

UniPolyDivMod UniPoly::divmod(const UniPoly& divisor) const {
  require(!divisor.is_zero(), "DivisionByZero", "polynomial division by zero");
  UniPoly rem = *this;
  UniPoly quot;
  int dd = divisor.degree();
  Scalar lead = divisor.leading();
  while (!rem.is_zero() && rem.degree() >= dd) {
    int k = rem.degree() - dd;
    Scalar f = rem.leading() / lead;
    UniPoly shift;
    shift.c_.assign(k + 1, Scalar(0));
    shift.c_[k] = f;
    quot = quot + shift;
    rem = rem - divisor * shift;
  }
  return {quot, rem};
}

UniPoly UniPoly::gcd(const UniPoly& o) const {
  UniPoly a = *this, b = o;
  while (!b.is_zero()) {
    UniPoly r = a.divmod(b).remainder;
    a = b;
    b = r;
  }
  if (a.is_zero()) return a;
  return a * a.leading().inverse();  // monic
}

UniPoly UniPoly::mobius_numerator(const Scalar& a, const Scalar& b, const Scalar& c,
                                  const Scalar& d, int m) const {
  require(m >= degree(), "InvalidArgument", "mobius_numerator degree too small");
  UniPoly up{b, a};    // a x + b
  UniPoly down{d, c};  // c x + d
  UniPoly acc;
  for (int k = 0; k <= degree(); ++k) {
    if (coeff(k).is_zero()) continue;
    acc = acc + up.pow(k) * down.pow(m - k) * coeff(k);
  }
  return acc;
}

std::optional<UniPoly> UniPoly::deflate_root(const Scalar& r) const {
  if (is_zero()) return std::nullopt;
  // Horner: quotient coefficients top-down, remainder last.
  std::vector<Scalar> q(c_.size() - 1, Scalar(0));
  Scalar carry = c_.back();
  for (int i = static_cast<int>(c_.size()) - 2; i >= 0; --i) {
    q[i] = carry;
    carry = carry * r + c_[i];
  }
  if (!carry.is_zero()) return std::nullopt;
  UniPoly out;
  out.c_ = std::move(q);
  out.trim();
  return out;
}

std::string UniPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    if (coeff(k).is_zero()) continue;
    std::string cs = coeff(k).str();
    if (!first) os << (cs.size() && cs[0] == '-' ? " - " : " + ");
    if (!first && cs.size() && cs[0] == '-') cs = cs.substr(1);
    first = false;
    if (k > 0 && cs == "-1") {
      os << "-";
    } else if (k == 0 || cs != "1") {
      bool composite = cs.find_first_of("+-", 1) != std::string::npos;
      if (k > 0 && composite)
        os << "(" << cs << ")";
      else
        os << cs;
      if (k > 0) os << "*";
    }
    if (k > 0) {
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

// ------------------------------------------------------------- RationalFn1

Scalar RationalFn1::eval(const Scalar& x) const {
  Scalar d = den.eval(x);
  require(!d.is_zero(), "PoleEvaluation", "rational function evaluated at a pole");
  return num.eval(x) / d;
}

RationalFn1 RationalFn1::derivative() const {
  return {num.derivative() * den - num * den.derivative(), den * den};
}

bool RationalFn1::equals(const RationalFn1& o) const {
  return (num * o.den - o.num * den).is_zero();
}

bool RationalFn1::invariant_under_mobius(const Scalar& a, const Scalar& b,
                                         const Scalar& c, const Scalar& d) const {
  int m = std::max(num.degree(), den.degree());
  UniPoly tn = num.mobius_numerator(a, b, c, d, m);
  UniPoly td = den.mobius_numerator(a, b, c, d, m);
  // (tn/td)(x) == (num/den)(x)  <=>  tn*den == td*num
  return (tn * den - td * num).is_zero();
}

std::string RationalFn1::str(const std::string& var) const {
  return "(" + num.str(var) + ") / (" + den.str(var) + ")";
}

// ------------------------------------------------------------------- Poly

Poly Poly::constant(const Scalar& c) { return monomial(c, 0, 0, 0); }

Poly Poly::monomial(const Scalar& c, int ez, int ew, int et) {
  Poly p;
  p.add_term({ez, ew, et}, c);
  return p;
}

Poly Poly::variable(int idx) {
  Exp3 e{0, 0, 0};
  e[idx] = 1;
  Poly p;
  p.add_term(e, Scalar(1));
  return p;
}

void Poly::add_term(const Exp3& e, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = m_.find(e);
  if (it == m_.end()) {
    m_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) m_.erase(it);
}

void Poly::set_coeff(const Exp3& e, const Scalar& c) {
  m_.erase(e);
  if (!c.is_zero()) m_.emplace(e, c);
}

Scalar Poly::coeff(const Exp3& e) const {
  auto it = m_.find(e);
  return it == m_.end() ? Scalar(0) : it->second;
}

int Poly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : m_) d = std::max(d, e[0] + e[1] + e[2]);
  return d;
}

int Poly::degree_in(int idx) const {
  int d = -1;
  for (const auto& [e, c] : m_) d = std::max(d, e[idx]);
  return d;
}

int Poly::min_degree_in(int idx) const {
  int d = -1;
  for (const auto& [e, c] : m_) d = d < 0 ? e[idx] : std::min(d, e[idx]);
  return d;
}

bool Poly::is_homogeneous() const {
  int d = -1;
  for (const auto& [e, c] : m_) {
    int s = e[0] + e[1] + e[2];
    if (d < 0) d = s;
    if (s != d) return false;
  }
  return true;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  for (const auto& [e, c] : o.m_) r.add_term(e, c);
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [e, c] : r.m_) c = -c;
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  for (const auto& [e1, c1] : m_)
    for (const auto& [e2, c2] : o.m_)
      r.add_term({e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]}, c1 * c2);
  return r;
}

Poly Poly::operator*(const Scalar& s) const {
  if (s.is_zero()) return {};
  Poly r = *this;
  for (auto& [e, c] : r.m_) c = c * s;
  return r;
}

Poly Poly::pow(int e) const {
  require(e >= 0, "InvalidArgument", "negative polynomial power");
  Poly acc = constant(Scalar(1));
  Poly base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

Poly Poly::derivative(int idx) const {
  Poly r;
  for (const auto& [e, c] : m_) {
    if (e[idx] == 0) continue;
    Exp3 e2 = e;
    e2[idx] -= 1;
    r.add_term(e2, c * Scalar(e[idx]));
  }
  return r;
}

Scalar Poly::eval(const Scalar& z, const Scalar& w, const Scalar& t) const {
  bool ap = z.is_approx() || w.is_approx() || t.is_approx();
  Scalar zz = ap ? z.to_approx() : z;
  Scalar ww = ap ? w.to_approx() : w;
  Scalar tt = ap ? t.to_approx() : t;
  Scalar acc = ap ? Scalar(0).to_approx() : Scalar(0);
  for (const auto& [e, c] : m_)
    acc += (ap ? c.to_approx() : c) * zz.pow(e[0]) * ww.pow(e[1]) * tt.pow(e[2]);
  return acc;
}

Poly Poly::homogenized(int deg) const {
  Poly r;
  for (const auto& [e, c] : m_) {
    int s = e[0] + e[1] + e[2];
    require(s <= deg, "InvalidArgument", "homogenization degree too small");
    r.add_term({e[0], e[1], e[2] + (deg - s)}, c);
  }
  return r;
}

Poly Poly::dehomogenized() const {
  Poly r;
  for (const auto& [e, c] : m_) r.add_term({e[0], e[1], 0}, c);
  return r;
}

Poly Poly::substitute_linear(const std::array<std::array<Scalar, 3>, 3>& M) const {
  std::array<Poly, 3> forms;
  for (int i = 0; i < 3; ++i) {
    Poly f;
    for (int j = 0; j < 3; ++j) f = f + Poly::variable(j) * M[i][j];
    forms[i] = f;
  }
  // Cache powers as needed.
  std::array<std::vector<Poly>, 3> powers;
  for (int i = 0; i < 3; ++i) powers[i].push_back(Poly::constant(Scalar(1)));
  auto power = [&](int i, int e) -> const Poly& {
    while (static_cast<int>(powers[i].size()) <= e)
      powers[i].push_back(powers[i].back() * forms[i]);
    return powers[i][e];
  };
  Poly r;
  for (const auto& [e, c] : m_)
    r = r + power(0, e[0]) * power(1, e[1]) * power(2, e[2]) * c;
  return r;
}

Poly Poly::swap_vars(int i, int j) const {
  Poly r;
  for (const auto& [e, c] : m_) {
    Exp3 e2 = e;
    std::swap(e2[i], e2[j]);
    r.add_term(e2, c);
  }
  return r;
}

UniPoly Poly::restrict_affine_line(const Scalar& a, const Scalar& b) const {
  UniPoly zvar = UniPoly::variable();
  UniPoly wline{b, a};  // a z + b
  UniPoly acc;
  for (const auto& [e, c] : m_)
    acc = acc + zvar.pow(e[0]) * wline.pow(e[1]) * c;
  return acc;
}

UniPoly Poly::restrict_curve(int p, int q) const {
  UniPoly acc;
  UniPoly tvar = UniPoly::variable();
  for (const auto& [e, c] : m_)
    acc = acc + tvar.pow(e[0] * q + e[1] * p) * c;
  return acc;
}

std::string Poly::str(const std::array<std::string, 3>& vars) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest total degree first, then lexicographic by exponents.
  std::vector<std::pair<Exp3, Scalar>> ts(m_.begin(), m_.end());
  std::sort(ts.begin(), ts.end(), [](const auto& x, const auto& y) {
    int sx = x.first[0] + x.first[1] + x.first[2];
    int sy = y.first[0] + y.first[1] + y.first[2];
    if (sx != sy) return sx > sy;
    return x.first > y.first;
  });
  for (const auto& [e, c] : ts) {
    std::string cs = c.str();
    if (!first) os << (!cs.empty() && cs[0] == '-' ? " - " : " + ");
    if (!first && !cs.empty() && cs[0] == '-') cs = cs.substr(1);
    first = false;
    bool any_var = e[0] || e[1] || e[2];
    bool need_star = false;
    if (any_var && cs == "-1") {
      os << "-";
    } else if (!any_var || cs != "1") {
      bool composite = cs.find_first_of("+-", 1) != std::string::npos;
      if (any_var && composite)
        os << "(" << cs << ")";
      else
        os << cs;
      need_star = any_var;
    }
    for (int i = 0; i < 3; ++i) {
      if (!e[i]) continue;
      if (need_star) os << "*";
      os << vars[i];
      if (e[i] > 1) os << "^" << e[i];
      need_star = true;
    }
  }
  return os.str();
}

// -------------------------------------------------------------- find_roots

namespace {

// Rational roots of an integer-coefficient polynomial with |num|, den
// bounded by kRootBound, found by divisor search + modular filter.
constexpr long kRootBound = 4000;

std::vector<long> small_divisors(const BigInt& n) {
  std::vector<long> out;
  BigInt a = n < 0 ? BigInt(-n) : n;
  for (long d = 1; d <= kRootBound; ++d)
    if (a % d == 0) out.push_back(d);
  return out;
}

std::optional<Scalar> rational_root_search(const UniPoly& p) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  int n = p.degree();
  BigInt common = 1;
  for (int k = 0; k <= n; ++k) {
    if (!p.coeff(k).is_rational()) return std::nullopt;
    common = boost::multiprecision::lcm(common, denominator(p.coeff(k).rat()));
  }
  std::vector<BigInt> a(n + 1);
  for (int k = 0; k <= n; ++k) {
    BigRat c = p.coeff(k).rat() * BigRat(common);
    a[k] = numerator(c);
  }
  // trailing coefficient is nonzero here (zero roots stripped by caller)
  std::vector<long> ps = small_divisors(a[0]);
  std::vector<long> qs = small_divisors(a[n]);
  const unsigned long long m1 = 0xFFFFFFFFFFFFFFC5ull;  // large 64-bit prime
  std::vector<unsigned long long> am(n + 1);
  for (int k = 0; k <= n; ++k) {
    BigInt r = a[k] % BigInt(m1);
    if (r < 0) r += BigInt(m1);
    am[k] = r.convert_to<unsigned long long>();
  }
  auto mulmod = [&](unsigned long long x, unsigned long long y) {
    return static_cast<unsigned long long>(
        (static_cast<unsigned __int128>(x) * y) % m1);
  };
  for (long q : qs) {
    for (long pp : ps) {
      if (std::gcd(pp, q) != 1) continue;
      for (int sign = 0; sign < 2; ++sign) {
        long num = sign ? -pp : pp;
        // sum a_k num^k q^(n-k) mod m1
        unsigned long long nm = num >= 0 ? static_cast<unsigned long long>(num)
                                         : m1 - static_cast<unsigned long long>(-num);
        unsigned long long qm = static_cast<unsigned long long>(q);
        unsigned long long acc = 0, npow = 1;
        std::vector<unsigned long long> qpow(n + 1);
        qpow[0] = 1;
        for (int k = 1; k <= n; ++k) qpow[k] = mulmod(qpow[k - 1], qm);
        for (int k = 0; k <= n; ++k) {
          acc = static_cast<unsigned long long>(
              (static_cast<unsigned __int128>(acc) +
               mulmod(am[k], mulmod(npow, qpow[n - k]))) %
              m1);
          npow = mulmod(npow, nm);
        }
        if (acc != 0) continue;
        Scalar cand(BigRat(num, q));
        if (p.deflate_root(cand)) return cand;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<std::pair<Scalar, int>> find_roots(const UniPoly& p) {
  require(!p.is_zero(), "ZeroPoly", "roots of the zero polynomial");
  std::map<std::string, std::pair<Scalar, int>> found;
  auto record = [&](const Scalar& r) {
    auto [it, fresh] = found.emplace(r.str(), std::make_pair(r, 1));
    if (!fresh) it->second.second += 1;
  };
  UniPoly cur = p;
  while (cur.degree() >= 1) {
    if (cur.degree() == 1) {
      record(-cur.coeff(0) / cur.coeff(1));
      break;
    }
    if (cur.coeff(0).is_zero()) {
      record(Scalar(0));
      auto next = cur.deflate_root(Scalar(0));
      cur = *next;
      continue;
    }
    if (cur.degree() == 2) {
      Scalar a = cur.coeff(2), b = cur.coeff(1), c = cur.coeff(0);
      Scalar disc = b * b - Scalar(4) * a * c;
      Scalar root;
      try {
        root = sqrt_exact(disc);
      } catch (const Error& e) {
        fail("IrreduciblePrimeOverField",
             "quadratic factor needs an unsupported extension: " + std::string(e.what()));
      }
      Scalar twoa = Scalar(2) * a;
      record((-b + root) / twoa);
      record((-b - root) / twoa);
      break;
    }
    std::optional<Scalar> r = rational_root_search(cur);
    if (!r) {
      // Even polynomials split through y = z^2 (covers symmetric pencils).
      bool even = true;
      for (int k = 1; k <= cur.degree(); k += 2) even = even && cur.coeff(k).is_zero();
      if (even) {
        UniPoly half;
        for (int k = 0; k <= cur.degree() / 2; ++k)
          half = half + UniPoly::constant(cur.coeff(2 * k)) * UniPoly::variable().pow(k);
        for (const auto& [y, mult] : find_roots(half)) {
          Scalar root;
          try {
            root = sqrt_exact(y);
          } catch (const Error&) {
            fail("IrreduciblePrimeOverField",
                 "roots leave the supported quadratic extensions");
          }
          if (root.is_zero()) {
            for (int i = 0; i < 2 * mult; ++i) record(root);
          } else {
            for (int i = 0; i < mult; ++i) {
              record(root);
              record(-root);
            }
          }
        }
        break;
      }
      fail("IrreduciblePrimeOverField",
           "no rational root of degree-" + std::to_string(cur.degree()) + " factor");
    }
    record(*r);
    cur = *cur.deflate_root(*r);
  }
  std::vector<std::pair<Scalar, int>> out;
  for (const auto& [k, v] : found) out.push_back(v);
  return out;
}

// -------------------------------------------------------------- HomRational

HomRational::HomRational(const Poly& num, const Poly& den) {
  require(!den.is_zero(), "DivisionByZero", "zero denominator");
  int dn = num.total_degree();
  int dd = den.total_degree();
  int deg = std::max(dn, dd);
  num_ = num.homogenized(deg);
  den_ = den.homogenized(deg);
}

Scalar HomRational::Value::scalar() const {
  require(!den.is_zero(), "PoleEvaluation", "projective value is a pole");
  return num / den;
}

HomRational::Value HomRational::Value::normalized() const {
  if (den.is_zero()) {
    if (num.is_zero()) return *this;
    Scalar one = num.is_approx() ? Scalar(1).to_approx() : Scalar(1);
    Scalar zero = num.is_approx() ? Scalar(0).to_approx() : Scalar(0);
    return {one, zero};
  }
  Scalar one = den.is_approx() ? Scalar(1).to_approx() : Scalar(1);
  return {num / den, one};
}

HomRational::Value HomRational::eval(const Scalar& z, const Scalar& w,
                                     const Scalar& t) const {
  return {num_.eval(z, w, t), den_.eval(z, w, t)};
}

HomRational::Value HomRational::eval_affine(const Scalar& z, const Scalar& w) const {
  return eval(z, w, Scalar(1));
}

bool HomRational::equals(const HomRational& o) const {
  return (num_ * o.den_ - o.num_ * den_).is_zero();
}

HomRational HomRational::substitute_linear(
    const std::array<std::array<Scalar, 3>, 3>& M) const {
  HomRational r;
  r.num_ = num_.substitute_linear(M);
  r.den_ = den_.substitute_linear(M);
  require(!r.den_.is_zero(), "DivisionByZero", "substitution collapsed denominator");
  return r;
}

RationalFn1 HomRational::restrict_affine_line(const Scalar& a, const Scalar& b) const {
  return {num_.restrict_affine_line(a, b), den_.restrict_affine_line(a, b)};
}

std::string HomRational::str(const std::array<std::string, 3>& vars) const {
  return "(" + num_.str(vars) + ") / (" + den_.str(vars) + ")";
}

}  // namespace billiards
