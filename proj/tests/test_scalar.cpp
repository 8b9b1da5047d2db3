#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "billiards/sample.hpp"
#include "billiards/scalar.hpp"

using namespace billiards;

TEST_CASE("rational arithmetic canonical form") {
  Scalar a(1, 2), b(1, 3);
  CHECK((a + b) == Scalar(5, 6));
  CHECK((a - b) == Scalar(1, 6));
  CHECK((a * b) == Scalar(1, 6));
  CHECK((a / b) == Scalar(3, 2));
  CHECK_THROWS_AS(a / Scalar(0), Error);
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  Scalar c = Scalar(4, -8) + Scalar(0);
  CHECK(denominator(c.rat()) == 2);
  CHECK(numerator(c.rat()) == -1);
}

TEST_CASE("eisenstein unit norm and minimal polynomial") {
  // (1+sqrt(-3))/2 * (1-sqrt(-3))/2 = 1
  Scalar u = Scalar::quad(BigRat(1, 2), BigRat(1, 2), -3);
  CHECK(u * u.conjugate() == Scalar(1));
  // eps = (-1+sqrt(-3))/2 is a primitive cube root: eps^2 + eps + 1 = 0
  Scalar eps = Scalar::quad(BigRat(-1, 2), BigRat(1, 2), -3);
  CHECK((eps * eps + eps + Scalar(1)).is_zero());
  CHECK(eps * eps.conjugate() == Scalar(1));
  CHECK(eps.pow(3) == Scalar(1));
}

TEST_CASE("conjugation fixes rationals") {
  Scalar i = Scalar::quad(BigRat(2), BigRat(3), -1);
  CHECK(i.conjugate() == Scalar::quad(BigRat(2), BigRat(-3), -1));
  CHECK(Scalar(5, 7).conjugate() == Scalar(5, 7));
  CHECK_THROWS_AS(Scalar::approx(BigFloat(1)).conjugate(), Error);
}

TEST_CASE("quad with b = 0 collapses to the rational") {
  Scalar x = Scalar::quad(BigRat(2), BigRat(1), 5) - Scalar::quad(BigRat(0), BigRat(1), 5);
  CHECK(x.is_rational());
  CHECK(x == Scalar(2));
}

TEST_CASE("mixed fields are rejected") {
  Scalar a = Scalar::quad(BigRat(0), BigRat(1), -1);
  Scalar b = Scalar::quad(BigRat(0), BigRat(1), -3);
  CHECK_THROWS_AS(a + b, Error);
  CHECK(!(a == b));  // values in different fields are simply unequal
}

TEST_CASE("field axioms on seeded rationals") {
  SampleGen gen(42);
  for (int k = 0; k < 200; ++k) {
    Scalar a(gen.rational(1000)), b(gen.rational(1000)), c(gen.rational(1000));
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    if (!a.is_zero()) CHECK(a * a.inverse() == Scalar(1));
  }
}

TEST_CASE("quad embedding is a ring homomorphism") {
  SampleGen gen(7);
  for (int k = 0; k < 100; ++k) {
    BigRat a = gen.rational(100), b = gen.rational(100);
    Scalar qa = Scalar(a) + Scalar::quad(BigRat(0), BigRat(0) + 1, 5) * Scalar(0);
    CHECK(Scalar(a) + Scalar(b) == Scalar(a + b));
    CHECK(Scalar(a) * Scalar(b) == Scalar(a * b));
    // rational ops commute with promotion into Q(sqrt 5)
    Scalar root5 = Scalar::quad(BigRat(0), BigRat(1), 5);
    Scalar pa = Scalar(a) + root5 - root5;
    CHECK(pa == Scalar(a));
    (void)qa;
  }
}

TEST_CASE("ordering of real quadratic values") {
  Scalar root2 = Scalar::quad(BigRat(0), BigRat(1), 2);
  CHECK(root2.sign() == 1);
  CHECK((root2 - Scalar(3, 2)).sign() < 0);   // sqrt2 < 1.5
  CHECK((root2 - Scalar(7, 5)).sign() > 0);   // sqrt2 > 1.4
  CHECK((Scalar(1) - root2).sign() < 0);
  CHECK_THROWS_AS(Scalar::quad(BigRat(0), BigRat(1), -1).sign(), Error);
}

TEST_CASE("sqrt decomposition and exact square roots") {
  CHECK(Scalar::sqrt_rational(BigRat(4)) == Scalar(2));
  CHECK(Scalar::sqrt_rational(BigRat(9, 16)) == Scalar(3, 4));
  Scalar r12 = Scalar::sqrt_rational(BigRat(12));
  CHECK(r12 == Scalar::quad(BigRat(0), BigRat(2), 3));
  Scalar rm4 = Scalar::sqrt_rational(BigRat(-4));
  CHECK(rm4 == Scalar::quad(BigRat(0), BigRat(2), -1));
  CHECK(r12 * r12 == Scalar(12));
  CHECK(rm4 * rm4 == Scalar(-4));
  // sqrt inside the same field: sqrt(3 + 2 sqrt 2) = 1 + sqrt 2
  Scalar v = Scalar::quad(BigRat(3), BigRat(2), 2);
  Scalar s = sqrt_exact(v);
  CHECK(s * s == v);
}

TEST_CASE("approx promotion is explicit and one-way") {
  Scalar half(1, 2);
  Scalar ha = half.to_approx();
  CHECK(ha.is_approx());
  CHECK_THROWS_AS(ha + half, Error);
  CHECK(approx_equal(ha + half.to_approx(), Scalar(1).to_approx()));
  // complex promotion of sqrt(-3)
  Scalar e = Scalar::quad(BigRat(-1, 2), BigRat(1, 2), -3).to_approx();
  CHECK(e.approx_value().im > 0);
}

TEST_CASE("normalizing twice equals normalizing once") {
  // canonical-form idempotence via a round of arithmetic identities
  Scalar x = Scalar(6, 4);
  Scalar y = x + Scalar(0);
  CHECK(x == y);
  CHECK(x.str() == y.str());
  CHECK(x.str() == "3/2");
}
