#include "nilmat/poly.hpp"

#include <doctest.h>

#include <random>

using namespace nilmat;

namespace {

Polynomial X(int i, int j) { return Polynomial::var(Variable::matrix(i, j)); }
Polynomial A(int r) { return Polynomial::var(Variable::param(r)); }

Polynomial random_poly(std::mt19937_64& rng, int m, int n, int max_xdeg,
                       bool with_params = false) {
  std::uniform_int_distribution<int> coeff(-4, 4);
  std::uniform_int_distribution<int> nterms(0, 5);
  std::uniform_int_distribution<int> deg(0, max_xdeg);
  std::uniform_int_distribution<int> row(1, m), col(1, n), par(1, 3);
  Polynomial p;
  int t = nterms(rng);
  for (int k = 0; k < t; ++k) {
    Monomial mono;
    int d = deg(rng);
    for (int e = 0; e < d; ++e)
      mono = mono.times(Monomial::var(Variable::matrix(row(rng), col(rng))));
    if (with_params && deg(rng) > 1)
      mono = mono.times(Monomial::var(Variable::param(par(rng))));
    p.add_term(mono, coeff(rng));
  }
  return p;
}

} // namespace

TEST_CASE("polynomial arithmetic examples") {
  CHECK((X(1, 1) + X(2, 2)) + (-X(1, 1)) == X(2, 2));
  CHECK((X(1, 1) + X(1, 2)) * (X(1, 1) - X(1, 2)) ==
        X(1, 1) * X(1, 1) - X(1, 2) * X(1, 2));
  CHECK((A(1) * X(1, 1)).scaled(Rational(1, 2)) ==
        Polynomial::constant(Rational(1, 2)) * A(1) * X(1, 1));
  CHECK(Polynomial::zero().is_zero());
  CHECK((X(1, 1) - X(1, 1)).is_zero());
}

TEST_CASE("graded pieces") {
  Polynomial p = Polynomial::constant(1) + X(1, 1) + X(1, 1) * X(2, 2);
  CHECK(p.graded_piece(2) == X(1, 1) * X(2, 2));
  CHECK(p.graded_piece(0) == Polynomial::constant(1));
  // params contribute 0 to the X-degree
  Polynomial q = A(1) * X(1, 1) + A(1) * A(1);
  CHECK(q.graded_piece(1) == A(1) * X(1, 1));
  CHECK(q.graded_piece(0) == A(1) * A(1));
  CHECK(Polynomial::zero().graded_piece(3).is_zero());
}

TEST_CASE("graded_piece is a projection and sums back") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 500; ++t) {
    Polynomial p = random_poly(rng, 3, 3, 3, true);
    Polynomial sum;
    for (int d = 0; d <= p.xdegree(); ++d) {
      Polynomial piece = p.graded_piece(d);
      CHECK(piece.graded_piece(d) == piece);
      sum += piece;
    }
    CHECK(sum == p);
  }
}

TEST_CASE("Cauchy rule for graded pieces of a product") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    Polynomial p = random_poly(rng, 2, 2, 2);
    Polynomial q = random_poly(rng, 2, 2, 2);
    Polynomial prod = p * q;
    for (int d = 0; d <= 4; ++d) {
      Polynomial expect;
      for (int d1 = 0; d1 <= d; ++d1)
        expect += p.graded_piece(d1) * q.graded_piece(d - d1);
      CHECK(prod.graded_piece(d) == expect);
    }
  }
}

TEST_CASE("monomials_of_xdegree counts") {
  CHECK(monomials_of_xdegree(2, 2, 1).size() == 4);
  auto deg0 = monomials_of_xdegree(2, 2, 0);
  REQUIRE(deg0.size() == 1);
  CHECK(deg0[0].is_one());
  CHECK(monomials_of_xdegree(2, 2, 2).size() == 10); // C(5,2)
  // stars-and-bars formula against enumeration on a sweep
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n)
      for (int d = 0; d <= 3; ++d)
        CHECK(Integer(monomials_of_xdegree(m, n, d).size()) ==
              binomial(m * n + d - 1, d));
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 1000; ++t) {
    Polynomial p = random_poly(rng, 2, 3, 3, true);
    Polynomial q = random_poly(rng, 2, 3, 3, true);
    Polynomial r = random_poly(rng, 2, 3, 3, true);
    CHECK((p + q) + r == p + (q + r));
    CHECK(p + q == q + p);
    CHECK((p * q) * r == p * (q * r));
    CHECK(p * q == q * p);
    CHECK(p * (q + r) == p * q + p * r);
    CHECK((p + (-p)).is_zero());
    CHECK(p * Polynomial::constant(1) == p);
  }
}

TEST_CASE("parse examples") {
  CHECK(parse_polynomial("X12*X21") == X(1, 2) * X(2, 1));
  CHECK(parse_polynomial("-X11*X22") == -(X(1, 1) * X(2, 2)));
  CHECK(parse_polynomial("3/4") == Polynomial::constant(Rational(3, 4)));
  CHECK(parse_polynomial("a1*X11^2") == A(1) * X(1, 1) * X(1, 1));
  CHECK(parse_polynomial("X{1,2}") == X(1, 2));
  CHECK(parse_polynomial("5 + 2*X11*X22") ==
        Polynomial::constant(5) + Polynomial::constant(2) * X(1, 1) * X(2, 2));
  CHECK(parse_polynomial("u1 + u2^2") ==
        Polynomial::var(Variable::input(1)) +
            Polynomial::var(Variable::input(2)) * Polynomial::var(Variable::input(2)));
  CHECK_THROWS_AS((void)parse_polynomial("X11 +"), Error);
  CHECK_THROWS_AS((void)parse_polynomial("b2"), Error);
}

TEST_CASE("print/parse round trip is the identity") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 500; ++t) {
    Polynomial p = random_poly(rng, 3, 3, 3, true);
    CHECK(parse_polynomial(p.str()) == p);
  }
}
