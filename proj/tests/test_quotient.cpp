#include "nilmat/quotient.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace nilmat;

namespace {

Polynomial X(int i, int j) { return Polynomial::var(Variable::matrix(i, j)); }

Polynomial random_poly(std::mt19937_64& rng, int m, int n, int max_xdeg) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> nterms(0, 4);
  std::uniform_int_distribution<int> deg(0, max_xdeg);
  std::uniform_int_distribution<int> row(1, m), col(1, n);
  Polynomial p;
  int t = nterms(rng);
  for (int k = 0; k < t; ++k) {
    Monomial mono;
    int d = deg(rng);
    for (int e = 0; e < d; ++e)
      mono = mono.times(Monomial::var(Variable::matrix(row(rng), col(rng))));
    p.add_term(mono, coeff(rng));
  }
  return p;
}

// Random element of the ideal with X-degree <= 3.
Polynomial random_ideal_element(std::mt19937_64& rng, const IdealSpec& ideal) {
  auto gens = ideal.generators();
  std::uniform_int_distribution<int> pick(0, static_cast<int>(gens.size()) - 1);
  std::uniform_int_distribution<int> coeff(-2, 2);
  std::uniform_int_distribution<int> extra(0, 1);
  std::uniform_int_distribution<int> row(1, ideal.m), col(1, ideal.n);
  Polynomial p = gens[pick(rng)].scaled(coeff(rng));
  if (extra(rng))
    p = p * X(row(rng), col(rng));
  return p;
}

} // namespace

TEST_CASE("normal form rewriting examples") {
  CHECK(normal_form_poly(X(1, 2) * X(2, 1), 2, 2) == -(X(1, 1) * X(2, 2)));
  CHECK(normal_form_poly(X(1, 1) * X(1, 2), 2, 2).is_zero());
  CHECK(normal_form_poly(X(1, 1) * X(1, 1), 2, 2).is_zero());
  Polynomial diag3 = X(1, 1) * X(2, 2) * X(3, 3);
  CHECK(normal_form_poly(diag3, 3, 3) == diag3);
  // column permutation parity: X13 X21 X32 has column sequence (3,1,2)
  CHECK(normal_form_poly(X(1, 3) * X(2, 1) * X(3, 2), 3, 3) == diag3);
  CHECK_THROWS_AS((void)normal_form_poly(X(3, 1), 2, 2), Error);
}

TEST_CASE("normal form is idempotent and a ring homomorphism") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 1000; ++t) {
    Polynomial p = random_poly(rng, 3, 3, 3);
    Polynomial q = random_poly(rng, 3, 3, 3);
    Polynomial np = normal_form_poly(p, 3, 3);
    CHECK(normal_form_poly(np, 3, 3) == np);
    CHECK(normal_form_poly(p + q, 3, 3) == normal_form_poly(np + normal_form_poly(q, 3, 3), 3, 3));
    CHECK(normal_form_poly(p * q, 3, 3) ==
          normal_form_poly(np * normal_form_poly(q, 3, 3), 3, 3));
  }
}

TEST_CASE("ideal generators") {
  // SpecialOnly(n) keeps one generator per row pair and column pair
  CHECK(IdealSpec::special_only(2).generators().size() == 1);
  CHECK(IdealSpec::special_only(3).generators().size() == 9);
}

TEST_CASE("membership oracle examples") {
  CHECK(membership_oracle(X(1, 1) * X(2, 2) + X(1, 2) * X(2, 1),
                          IdealSpec::full_dtilde(2, 2)));
  CHECK_FALSE(membership_oracle(X(1, 1) * X(1, 2), IdealSpec::special_only(2)));
  CHECK(membership_oracle(X(1, 1) * X(1, 1), IdealSpec::full_dtilde(2, 2)));
  CHECK_FALSE(membership_oracle(X(1, 1) * X(1, 1), IdealSpec::special_only(2)));
  // params pass through as coefficients
  Polynomial withParam =
      Polynomial::var(Variable::param(1)) * (X(1, 1) * X(2, 2) + X(1, 2) * X(2, 1));
  CHECK(membership_oracle(withParam, IdealSpec::full_dtilde(2, 2)));
  CHECK(membership_oracle(Polynomial::zero(), IdealSpec::special_only(2)));
  CHECK_FALSE(membership_oracle(Polynomial::constant(1), IdealSpec::full_dtilde(2, 2)));
  OracleCaps tight;
  tight.max_xdegree = 1;
  CHECK_THROWS_AS((void)membership_oracle(X(1, 1) * X(1, 1), IdealSpec::full_dtilde(2, 2), tight),
                  Error);
}

TEST_CASE("confluence: NF equality agrees with oracle membership") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 1000; ++t) {
    int m = 1 + static_cast<int>(rng() % 3);
    int n = 1 + static_cast<int>(rng() % 3);
    Polynomial p = random_poly(rng, m, n, 3);
    Polynomial q = rng() % 2 ? random_poly(rng, m, n, 3)
                             : p + random_ideal_element(rng, IdealSpec::full_dtilde(m, n));
    bool nf_equal = normal_form_poly(p, m, n) == normal_form_poly(q, m, n);
    bool in_ideal = membership_oracle(p - q, IdealSpec::full_dtilde(m, n));
    CHECK(nf_equal == in_ideal);
  }
}

TEST_CASE("algebra dimension and basis") {
  auto b22 = algebra_dimension(2, 2);
  CHECK(b22.dimension == 6);
  std::set<std::string> labels;
  for (const auto& l : b22.labels) labels.insert(l.str());
  CHECK(labels == std::set<std::string>{"det{|}", "det{1|1}", "det{1|2}",
                                        "det{2|1}", "det{2|2}", "det{1,2|1,2}"});
  CHECK(algebra_dimension(1, 4).dimension == 5); // D(n) algebra: 1, x1..xn
  CHECK(algebra_dimension(2, 3).dimension == 10);
  CHECK(algebra_dimension(3, 3).dimension == 20);
  CHECK_THROWS_AS((void)algebra_dimension(6, 2), Error);
  // each basis label's diagonal monomial is fixed by the rewriting system
  for (const auto& l : b22.labels) {
    Polynomial rep = Polynomial::term(l.monomial(), 1);
    CHECK(normal_form_poly(rep, 2, 2) == rep);
  }
}

TEST_CASE("dimension identity: rewriting vs oracle rank") {
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n)
      CHECK(quotient_dimension_by_oracle(IdealSpec::full_dtilde(m, n)) ==
            algebra_dimension(m, n).dimension);
}

TEST_CASE("nilpotency: products beyond min(m,n) classes vanish") {
  std::mt19937_64 rng(29);
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n) {
      int len = std::min(m, n) + 1;
      for (int t = 0; t < 50; ++t) {
        Polynomial prod = Polynomial::constant(1);
        for (int k = 0; k < len; ++k)
          prod *= X(1 + static_cast<int>(rng() % m), 1 + static_cast<int>(rng() % n));
        CHECK(normal_form_poly(prod, m, n).is_zero());
      }
    }
}
